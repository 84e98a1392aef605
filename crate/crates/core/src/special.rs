//! Thin numerical helpers on top of `statrs::function` and `libm`.

use libm::erfc;
use statrs::function::erf::erfc_inv;

pub use statrs::function::gamma::{digamma, ln_gamma};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Regularized lower incomplete gamma P(a, x), total on `x ∈ [-∞, ∞]`.
pub fn gamma_lr(a: f64, x: f64) -> f64 {
    if x.is_nan() {
        f64::NAN
    } else if x <= 0.0 {
        0.0
    } else if x == f64::INFINITY {
        1.0
    } else {
        statrs::function::gamma::gamma_lr(a, x)
    }
}

/// Regularized upper incomplete gamma Q(a, x), total on `x ∈ [-∞, ∞]`.
pub fn gamma_ur(a: f64, x: f64) -> f64 {
    if x.is_nan() {
        f64::NAN
    } else if x <= 0.0 {
        1.0
    } else if x == f64::INFINITY {
        0.0
    } else {
        statrs::function::gamma::gamma_ur(a, x)
    }
}

/// Standard normal cdf.
pub fn norm_cdf(z: f64) -> f64 {
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}

/// Standard normal survival function.
pub fn norm_sf(z: f64) -> f64 {
    0.5 * erfc(z * FRAC_1_SQRT_2)
}

/// log Φ(z), finite far into the lower tail where Φ underflows.
pub fn ln_norm_cdf(z: f64) -> f64 {
    if z > -30.0 {
        norm_cdf(z).ln()
    } else {
        // Mills-ratio asymptotic series
        let z2 = z * z;
        let series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
        -0.5 * z2 - (-z).ln() - LN_SQRT_2PI + series.ln()
    }
}

/// Standard normal quantile.
pub fn norm_quantile(p: f64) -> f64 {
    let z = -std::f64::consts::SQRT_2 * erfc_inv(2.0 * p);
    if !z.is_finite() {
        return z;
    }
    // one Newton step on whichever tail keeps p representable
    let (err, pdf) = if z < 0.0 {
        (norm_cdf(z) - p, (-0.5 * z * z - LN_SQRT_2PI).exp())
    } else {
        ((1.0 - p) - norm_sf(z), (-0.5 * z * z - LN_SQRT_2PI).exp())
    };
    if pdf > 0.0 {
        z - err / pdf
    } else {
        z
    }
}

/// `log(1 - exp(-x))` for `x > 0`, accurate at both ends.
pub fn ln_one_minus_exp_neg(x: f64) -> f64 {
    if x > std::f64::consts::LN_2 {
        (-(-x).exp()).ln_1p()
    } else {
        (-(-x).exp_m1()).ln()
    }
}

/// `log(1 - p)` choosing whichever of `p` or `1 - p` is the accurate input.
pub fn ln_complement(p: f64, complement: f64) -> f64 {
    if p < 0.5 {
        (-p).ln_1p()
    } else {
        complement.ln()
    }
}
