use super::{DistError, Family, ParamVector};

/// A family translated to start at `c`: f(y|θ,c) = f(y - c|θ) for y ≥ c, 0 below.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedFamily {
    pub base: Family,
    pub c: f64,
}

impl ShiftedFamily {
    pub fn new(base: Family, c: f64) -> Self {
        Self { base, c }
    }

    pub fn log_pdf(&self, theta: &ParamVector, y: f64) -> Result<f64, DistError> {
        let d = self.base.density(theta)?;
        Ok(if y < self.c {
            f64::NEG_INFINITY
        } else {
            d.log_pdf(y - self.c)
        })
    }

    pub fn cdf(&self, theta: &ParamVector, y: f64) -> Result<f64, DistError> {
        let d = self.base.density(theta)?;
        Ok(if y < self.c { 0.0 } else { d.cdf(y - self.c) })
    }

    pub fn log_likelihood(&self, theta: &ParamVector, ys: &[f64]) -> Result<f64, DistError> {
        let d = self.base.density(theta)?;
        Ok(ys
            .iter()
            .map(|&y| {
                if y < self.c {
                    f64::NEG_INFINITY
                } else {
                    d.log_pdf(y - self.c)
                }
            })
            .sum())
    }
}

/// The base family conditioned on X ≥ c and re-origined at c:
/// f(y|θ) = f_X(y + c|θ) / (1 - F_X(c|θ)) for y ≥ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedFamily {
    pub base: Family,
    pub c: f64,
}

pub fn truncate_family(base: Family, c: f64) -> TruncatedFamily {
    TruncatedFamily { base, c }
}

impl TruncatedFamily {
    /// log λ where λ = 1 / (1 - F_X(c|θ)).
    pub fn log_lambda(&self, theta: &ParamVector) -> Result<f64, DistError> {
        let d = self.base.density(theta)?;
        let cdf = d.cdf(self.c);
        let sf = d.sf(self.c);
        if sf <= 0.0 || cdf >= 1.0 {
            return Err(DistError::DegenerateTruncation { c: self.c });
        }
        Ok(-crate::special::ln_complement(cdf, sf))
    }

    pub fn log_pdf(&self, theta: &ParamVector, y: f64) -> Result<f64, DistError> {
        let log_lambda = self.log_lambda(theta)?;
        if y < 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        Ok(self.base.density(theta)?.log_pdf(y + self.c) + log_lambda)
    }

    pub fn pdf(&self, theta: &ParamVector, y: f64) -> Result<f64, DistError> {
        Ok(self.log_pdf(theta, y)?.exp())
    }

    pub fn cdf(&self, theta: &ParamVector, y: f64) -> Result<f64, DistError> {
        let log_lambda = self.log_lambda(theta)?;
        if y <= 0.0 {
            return Ok(0.0);
        }
        let d = self.base.density(theta)?;
        // 1 - sf(y + c) / sf(c)
        Ok((1.0 - d.sf(y + self.c) * log_lambda.exp()).clamp(0.0, 1.0))
    }

    /// Log-likelihood over observations already re-origined at c.
    pub fn log_likelihood(&self, theta: &ParamVector, ys: &[f64]) -> Result<f64, DistError> {
        let log_lambda = self.log_lambda(theta)?;
        let d = self.base.density(theta)?;
        let body: f64 = ys
            .iter()
            .map(|&y| {
                if y < 0.0 {
                    f64::NEG_INFINITY
                } else {
                    d.log_pdf(y + self.c)
                }
            })
            .sum();
        Ok(body + ys.len() as f64 * log_lambda)
    }
}
