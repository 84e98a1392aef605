//! Nelder–Mead simplex minimizer.
//!
//! Uses the dimension-adaptive coefficients of Gao & Han (2012) for two or
//! more dimensions and the classic (1, 2, 1/2, 1/2) set in one dimension.
//! Non-finite objective values are treated as `+∞`, so infeasible points
//! simply lose every comparison.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub max_iters: usize,
    /// Relative spread of objective values across the simplex.
    pub rel_tol: f64,
    /// Relative size of the simplex, per coordinate.
    pub x_tol: f64,
    /// Initial edge length as a fraction of each starting coordinate.
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            max_iters: 2000,
            rel_tol: 1e-8,
            x_tol: 1e-8,
            initial_step: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOutcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub iters: usize,
    pub evals: usize,
    pub converged: bool,
}

struct Coefficients {
    reflect: f64,
    expand: f64,
    contract: f64,
    shrink: f64,
}

impl Coefficients {
    fn for_dim(n: usize) -> Self {
        if n < 2 {
            Self {
                reflect: 1.0,
                expand: 2.0,
                contract: 0.5,
                shrink: 0.5,
            }
        } else {
            let n = n as f64;
            Self {
                reflect: 1.0,
                expand: 1.0 + 2.0 / n,
                contract: 0.75 - 0.5 / n,
                shrink: 1.0 - 1.0 / n,
            }
        }
    }
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() || v == f64::NEG_INFINITY {
        f64::INFINITY
    } else {
        v
    }
}

pub fn minimize(f: impl Fn(&[f64]) -> f64, x0: &[f64], opts: &SimplexOptions) -> SimplexOutcome {
    let n = x0.len();
    let coef = Coefficients::for_dim(n);
    let mut evals = 0usize;
    let mut eval = |x: &[f64]| {
        evals += 1;
        sanitize(f(x))
    };

    let mut verts: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    verts.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        let step = if x0[i] != 0.0 {
            opts.initial_step * x0[i].abs()
        } else {
            opts.initial_step
        };
        v[i] += step;
        verts.push(v);
    }
    let mut vals: Vec<f64> = verts.iter().map(|v| eval(v)).collect();

    let mut iters = 0usize;
    let mut converged = false;
    let mut order: Vec<usize> = (0..=n).collect();
    loop {
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b)));
        let (best, worst) = (order[0], order[n]);
        let second_worst = order[n.saturating_sub(1)];

        if vals[best] == f64::INFINITY {
            break;
        }
        if vals[best].is_finite()
            && vals[worst] - vals[best] <= opts.rel_tol * (vals[best].abs() + opts.rel_tol)
            && simplex_is_small(&verts, best, opts.x_tol)
        {
            converged = true;
            break;
        }
        if iters >= opts.max_iters {
            break;
        }
        iters += 1;

        let mut centroid = vec![0.0; n];
        for &i in &order[..n] {
            for (c, x) in centroid.iter_mut().zip(&verts[i]) {
                *c += x / n as f64;
            }
        }
        let toward = |t: f64, from: &[f64]| -> Vec<f64> {
            centroid
                .iter()
                .zip(from)
                .map(|(c, x)| c + t * (x - c))
                .collect()
        };

        let xr = toward(-coef.reflect, &verts[worst]);
        let fr = eval(&xr);
        if fr < vals[best] {
            let xe = toward(-coef.reflect * coef.expand, &verts[worst]);
            let fe = eval(&xe);
            if fe < fr {
                verts[worst] = xe;
                vals[worst] = fe;
            } else {
                verts[worst] = xr;
                vals[worst] = fr;
            }
            continue;
        }
        if fr < vals[second_worst] {
            verts[worst] = xr;
            vals[worst] = fr;
            continue;
        }
        let (xc, fc, accept) = if fr < vals[worst] {
            let xc = toward(-coef.reflect * coef.contract, &verts[worst]);
            let fc = eval(&xc);
            (xc, fc, fc <= fr)
        } else {
            let xc = toward(coef.contract, &verts[worst]);
            let fc = eval(&xc);
            (xc, fc, fc < vals[worst])
        };
        if accept {
            verts[worst] = xc;
            vals[worst] = fc;
            continue;
        }
        let anchor = verts[best].clone();
        for &i in &order[1..] {
            let v: Vec<f64> = anchor
                .iter()
                .zip(&verts[i])
                .map(|(a, x)| a + coef.shrink * (x - a))
                .collect();
            vals[i] = eval(&v);
            verts[i] = v;
        }
    }

    let best = order
        .iter()
        .copied()
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b)))
        .unwrap_or(0);
    SimplexOutcome {
        x: verts[best].clone(),
        f: vals[best],
        iters,
        evals,
        converged,
    }
}

fn simplex_is_small(verts: &[Vec<f64>], best: usize, x_tol: f64) -> bool {
    let anchor = &verts[best];
    verts.iter().all(|v| {
        v.iter()
            .zip(anchor)
            .all(|(x, a)| (x - a).abs() <= x_tol * (a.abs() + x_tol))
    })
}
