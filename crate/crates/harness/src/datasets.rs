//! Materializing the datasets named in a spec.

use minshift_core::rng::{derive_seed, open_unit, rng_from_seed};
use minshift_core::{Family, FamilyKind, ParamVector, Sample};

use crate::error::Result;
use crate::io::{load_column, parse_text, Column};
use crate::spec::DatasetSpec;

/// The alcohol column of the red wine quality data (1599 rows).
pub const WINE_ALCOHOL_CSV: &str = include_str!("../data/wine_alcohol.csv");

const MIXTURE_TAG: u64 = 0x6d69_7874;

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub sample: Sample,
}

pub fn wine_alcohol() -> Sample {
    parse_text(WINE_ALCOHOL_CSV, &Column::Index(0)).expect("bundled data parses")
}

pub fn load(specs: &[DatasetSpec], seed: u64) -> Result<Vec<Dataset>> {
    let mut out = Vec::new();
    for spec in specs {
        match spec {
            DatasetSpec::File { name, path, column } => out.push(Dataset {
                name: name.clone().unwrap_or_else(|| {
                    path.file_stem()
                        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
                }),
                sample: load_column(path, column)?,
            }),
            DatasetSpec::Wine => out.push(Dataset {
                name: "wine-alcohol".into(),
                sample: wine_alcohol(),
            }),
            DatasetSpec::Mixtures { count, size } => {
                out.extend(mixtures(*count, *size, seed)?);
            }
            DatasetSpec::Values { name, values } => out.push(Dataset {
                name: name.clone(),
                sample: Sample::new(values.clone())?,
            }),
        }
    }
    Ok(out)
}

/// `count` datasets of `size` draws, each `L + s·Y` with location `L`
/// log-uniform on [1, 1e4], scale `s = v·L` for `v` log-uniform on
/// [0.01, 0.5], and `Y` a two- or three-component gamma mixture with offset
/// components. Dataset `i` depends only on `(seed, i)`.
pub fn mixtures(count: usize, size: usize, seed: u64) -> Result<Vec<Dataset>> {
    let gamma = Family::of(FamilyKind::Gamma);
    (0..count)
        .map(|i| {
            let mut rng = rng_from_seed(derive_seed(seed, &[MIXTURE_TAG, i as u64]));
            let location = 10f64.powf(4.0 * open_unit(&mut rng));
            let spread = (0.01f64.ln() + open_unit(&mut rng) * 50f64.ln()).exp();
            let components = 2 + usize::from(open_unit(&mut rng) < 0.5);
            let mut values = Vec::with_capacity(size);
            for j in 0..components {
                let share = if j + 1 == components {
                    size - values.len()
                } else {
                    ((size as f64) * (0.2 + 0.5 * open_unit(&mut rng)) / (components - j) as f64) as usize
                };
                let shape = 1.0 + 5.0 * open_unit(&mut rng);
                let offset = 3.0 * open_unit(&mut rng);
                if share == 0 {
                    continue;
                }
                let draws = gamma.sample(
                    &ParamVector::from([shape, 1.0]),
                    share,
                    derive_seed(seed, &[MIXTURE_TAG, i as u64, j as u64 + 1]),
                )?;
                values.extend(draws.values().iter().map(|y| location + spread * location * (y + offset)));
            }
            Ok(Dataset {
                name: format!("mixture-{i:02}"),
                sample: Sample::new(values)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wine_has_expected_statistics() {
        let s = wine_alcohol();
        assert_eq!(s.n(), 1599);
        assert_eq!(s.min(), 8.4);
        assert!((s.mean() - 10.422983).abs() < 1e-6);
        assert!((s.sd() - 1.065668).abs() < 1e-6);
    }

    #[test]
    fn mixtures_are_reproducible_and_far_from_origin() {
        let a = mixtures(5, 50, 11).unwrap();
        let b = mixtures(5, 50, 11).unwrap();
        assert_eq!(a, b);
        for d in &a {
            assert_eq!(d.sample.n(), 50);
            assert!(d.sample.min() >= 1.0);
        }
        let c = mixtures(5, 50, 12).unwrap();
        assert_ne!(a[0], c[0]);
    }

    #[test]
    fn prefix_is_stable_when_count_grows() {
        let short = mixtures(3, 40, 5).unwrap();
        let long = mixtures(6, 40, 5).unwrap();
        assert_eq!(short[..], long[..3]);
    }
}
