use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SampleError {
    #[error("sample is empty")]
    Empty,
    #[error("non-finite observation {value} at index {index}")]
    NonFinite { index: usize, value: f64 },
}

/// An immutable batch of finite observations with cached summary statistics.
///
/// Insertion order is preserved. `sd` is the Bessel-corrected sample standard
/// deviation and is defined as `0` for a single observation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Sample {
    values: Vec<f64>,
    min: f64,
    mean: f64,
    sd: f64,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self, SampleError> {
        if values.is_empty() {
            return Err(SampleError::Empty);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(SampleError::NonFinite { index, value });
        }
        let n = values.len() as f64;
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let mean = values.iter().sum::<f64>() / n;
        // two-pass with compensation term keeps the variance accurate for
        // large-location, small-spread data
        let (ss, comp) = values.iter().fold((0.0, 0.0), |(ss, comp), &v| {
            let d = v - mean;
            (ss + d * d, comp + d)
        });
        let sd = if values.len() > 1 {
            ((ss - comp * comp / n) / (n - 1.0)).max(0.0).sqrt()
        } else {
            0.0
        };
        // the mean of a constant sample can round away from the common value
        let mean = if sd == 0.0 { min } else { mean.max(min) };
        Ok(Self {
            values,
            min,
            mean,
            sd,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn sd(&self) -> f64 {
        self.sd
    }

    /// Returns a new sample with `shift` subtracted from every observation.
    pub fn shifted(&self, shift: f64) -> Result<Self, SampleError> {
        Self::new(self.values.iter().map(|v| v - shift).collect())
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl TryFrom<Vec<f64>> for Sample {
    type Error = SampleError;

    fn try_from(values: Vec<f64>) -> Result<Self, Self::Error> {
        Self::new(values)
    }
}

impl From<Sample> for Vec<f64> {
    fn from(sample: Sample) -> Self {
        sample.values
    }
}
