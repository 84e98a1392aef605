use std::cell::Cell;

use super::{DistError, Family, ParamVector, ShiftedFamily};
use crate::quadrature::adaptive_simpson;

const TAIL: f64 = 1e-10;
const TOLERANCE: f64 = 1e-8;

/// The model whose log-density is averaged.
#[derive(Debug, Clone, Copy)]
pub enum Candidate<'a> {
    Plain(&'a Family),
    Shifted(&'a ShiftedFamily),
}

impl<'a> From<&'a Family> for Candidate<'a> {
    fn from(f: &'a Family) -> Self {
        Candidate::Plain(f)
    }
}

impl<'a> From<&'a ShiftedFamily> for Candidate<'a> {
    fn from(f: &'a ShiftedFamily) -> Self {
        Candidate::Shifted(f)
    }
}

/// E[log f_Y(X | θ₂, c)] for X ~ truth(θ₁).
///
/// Integrates over the truth's probability scale, u ∈ [1e-10, 1 - 1e-10],
/// so that x = F⁻¹(u) covers the truth's central range on a bounded domain.
/// Returns `-∞` when the candidate density vanishes somewhere the truth has
/// mass.
pub fn expected_log_likelihood<'a>(
    candidate: impl Into<Candidate<'a>>,
    theta2: &ParamVector,
    truth: &Family,
    theta1: &ParamVector,
) -> Result<f64, DistError> {
    let (base, shift, piecewise) = match candidate.into() {
        Candidate::Plain(f) => (f, 0.0, false),
        Candidate::Shifted(s) => (&s.base, s.c, true),
    };
    let cand = base.density(theta2)?;
    let truth = truth.density(theta1)?;

    let diverged = Cell::new(false);
    let integrand = |u: f64| {
        let x = truth.quantile(u);
        let v = if piecewise && x < shift {
            f64::NEG_INFINITY
        } else {
            cand.log_pdf(x - shift)
        };
        if v == f64::NEG_INFINITY {
            diverged.set(true);
        }
        v
    };
    let value = adaptive_simpson(integrand, TAIL, 1.0 - TAIL, TOLERANCE, 60);
    if diverged.get() {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(value)
}
