//! Small descriptive statistics used by the aggregators.

/// Two-sided 99% standard-normal critical value.
pub const Z99: f64 = 2.575_829_303_548_901;
/// Two-sided 95% standard-normal critical value.
pub const Z95: f64 = 1.959_963_984_540_054;
/// One-sided 95% standard-normal critical value.
pub const Z95_ONE_SIDED: f64 = 1.644_853_626_951_472_2;

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Bessel-corrected variance; NaN below two observations.
pub fn variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return f64::NAN;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64
}

pub fn sd(xs: &[f64]) -> f64 {
    variance(xs).sqrt()
}

/// Confidence half-width `z · sd / √n` of the mean.
pub fn half_width(xs: &[f64], z: f64) -> f64 {
    z * sd(xs) / (xs.len() as f64).sqrt()
}

/// Linear-interpolation quantile (Hyndman–Fan type 7).
pub fn quantile(xs: &[f64], p: f64) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let h = (v.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    v[lo] + (h - lo as f64) * (v[hi] - v[lo])
}
