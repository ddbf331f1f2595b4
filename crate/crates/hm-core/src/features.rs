//! Per-segment feature extraction.
//!
//! Each 6-axis sample is reduced to two magnitudes, the Euclidean norms of
//! the acceleration and rotation-rate vectors. A segment is then summarized
//! by the mean and standard deviation of each magnitude series, giving a
//! 4-dimensional feature vector per (participant, emotion).

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::session::{EmotionState, LabeledSession, Vec3};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FeatureError {
    #[error("cannot compute moments of an empty series")]
    EmptySeries,
    #[error("fewer than 2 samples for emotion {0}")]
    InsufficientSamples(EmotionState),
}

/// Which standard-deviation denominator to use. Population (n) is the
/// default; Sample (n-1) is available behind a flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StdMode {
    #[default]
    Population,
    Sample,
}

/// The 4 features of one segment: magnitude moments per sensor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub acc_mag_mean: f64,
    pub acc_mag_std: f64,
    pub gyro_mag_mean: f64,
    pub gyro_mag_std: f64,
}

impl FeatureVector {
    pub fn as_array(&self) -> [f64; 4] {
        [
            self.acc_mag_mean,
            self.acc_mag_std,
            self.gyro_mag_mean,
            self.gyro_mag_std,
        ]
    }

    pub const NAMES: [&'static str; 4] =
        ["acc_mag_mean", "acc_mag_std", "gyro_mag_mean", "gyro_mag_std"];
}

/// Euclidean norm of a 3-axis reading.
pub fn magnitude(v: &Vec3) -> f64 {
    (v.x * v.x + v.y * v.y + v.z * v.z).sqrt()
}

/// Arithmetic mean and population standard deviation of a series.
pub fn moments(series: &[f64]) -> Result<(f64, f64), FeatureError> {
    moments_with(series, StdMode::Population)
}

/// Mean and standard deviation with an explicit denominator mode.
pub fn moments_with(series: &[f64], mode: StdMode) -> Result<(f64, f64), FeatureError> {
    if series.is_empty() {
        return Err(FeatureError::EmptySeries);
    }
    let n = series.len() as f64;
    let mean = series.iter().sum::<f64>() / n;
    let ss: f64 = series.iter().map(|x| (x - mean) * (x - mean)).sum();
    let denom = match mode {
        StdMode::Population => n,
        StdMode::Sample => {
            if series.len() < 2 {
                return Err(FeatureError::EmptySeries);
            }
            n - 1.0
        }
    };
    Ok((mean, (ss / denom).sqrt()))
}

/// Builds one [`FeatureVector`] per emotion present in the session.
pub fn featurize(
    session: &LabeledSession,
) -> Result<BTreeMap<EmotionState, FeatureVector>, FeatureError> {
    featurize_with(session, StdMode::Population)
}

/// [`featurize`] with an explicit standard-deviation mode. Every emotion
/// present must have at least 2 samples so the deviation is defined.
pub fn featurize_with(
    session: &LabeledSession,
    mode: StdMode,
) -> Result<BTreeMap<EmotionState, FeatureVector>, FeatureError> {
    let mut acc_series: BTreeMap<EmotionState, Vec<f64>> = BTreeMap::new();
    let mut gyro_series: BTreeMap<EmotionState, Vec<f64>> = BTreeMap::new();
    for (sample, emotion) in &session.labeled {
        acc_series
            .entry(*emotion)
            .or_default()
            .push(magnitude(&sample.acc));
        gyro_series
            .entry(*emotion)
            .or_default()
            .push(magnitude(&sample.gyro));
    }

    let mut out = BTreeMap::new();
    for (emotion, acc_mags) in &acc_series {
        if acc_mags.len() < 2 {
            return Err(FeatureError::InsufficientSamples(*emotion));
        }
        let (acc_mean, acc_std) = moments_with(acc_mags, mode)?;
        let (gyro_mean, gyro_std) = moments_with(&gyro_series[emotion], mode)?;
        out.insert(
            *emotion,
            FeatureVector {
                acc_mag_mean: acc_mean,
                acc_mag_std: acc_std,
                gyro_mag_mean: gyro_mean,
                gyro_mag_std: gyro_std,
            },
        );
    }
    Ok(out)
}

/// One row of the features CSV emitted by `hm featurize`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRow {
    pub participant_id: String,
    pub emotion: EmotionState,
    pub acc_mag_mean: f64,
    pub acc_mag_std: f64,
    pub gyro_mag_mean: f64,
    pub gyro_mag_std: f64,
}

impl FeatureRow {
    pub fn new(participant_id: &str, emotion: EmotionState, fv: &FeatureVector) -> Self {
        FeatureRow {
            participant_id: participant_id.to_string(),
            emotion,
            acc_mag_mean: fv.acc_mag_mean,
            acc_mag_std: fv.acc_mag_std,
            gyro_mag_mean: fv.gyro_mag_mean,
            gyro_mag_std: fv.gyro_mag_std,
        }
    }

    pub fn features(&self) -> FeatureVector {
        FeatureVector {
            acc_mag_mean: self.acc_mag_mean,
            acc_mag_std: self.acc_mag_std,
            gyro_mag_mean: self.gyro_mag_mean,
            gyro_mag_std: self.gyro_mag_std,
        }
    }
}

/// Writes the `participant_id,emotion,acc_mag_mean,...` CSV.
pub fn write_features_csv(rows: &[FeatureRow], path: &Path) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a features CSV written by [`write_features_csv`].
pub fn read_features_csv(path: &Path) -> Result<Vec<FeatureRow>, csv::Error> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::ImuSample;
    use proptest::prelude::*;

    #[test]
    fn magnitude_known_values() {
        assert_eq!(magnitude(&Vec3::new(3.0, 4.0, 0.0)), 5.0);
        assert_eq!(magnitude(&Vec3::zero()), 0.0);
        assert_eq!(magnitude(&Vec3::new(1.0, 2.0, 2.0)), 3.0);
    }

    #[test]
    fn moments_known_values() {
        assert_eq!(moments(&[2.0, 2.0, 2.0]).unwrap(), (2.0, 0.0));
        assert_eq!(moments(&[1.0, 3.0]).unwrap(), (2.0, 1.0));
        assert_eq!(moments(&[0.0, 0.0, 3.0, 3.0]).unwrap(), (1.5, 1.5));
    }

    #[test]
    fn moments_rejects_empty() {
        assert_eq!(moments(&[]), Err(FeatureError::EmptySeries));
    }

    #[test]
    fn sample_std_uses_n_minus_one() {
        let (_, s) = moments_with(&[1.0, 3.0], StdMode::Sample).unwrap();
        assert!((s - 2.0f64.sqrt()).abs() < 1e-15);
    }

    fn labeled(
        rows: &[(u32, Vec3, Vec3, EmotionState)],
    ) -> LabeledSession {
        LabeledSession {
            participant_id: "P001".to_string(),
            labeled: rows
                .iter()
                .map(|(t, acc, gyro, e)| {
                    (
                        ImuSample {
                            t_ms: *t,
                            acc: *acc,
                            gyro: *gyro,
                        },
                        *e,
                    )
                })
                .collect(),
        }
    }

    #[test]
    fn featurize_zero_motion() {
        let session = labeled(&[
            (0, Vec3::zero(), Vec3::zero(), EmotionState::Happy),
            (1000, Vec3::zero(), Vec3::zero(), EmotionState::Happy),
        ]);
        let map = featurize(&session).unwrap();
        let fv = map[&EmotionState::Happy];
        assert_eq!(fv.as_array(), [0.0; 4]);
    }

    #[test]
    fn featurize_mixed_magnitudes() {
        // acc magnitudes {5, 0} -> mean 2.5, population std 2.5
        let session = labeled(&[
            (0, Vec3::new(3.0, 4.0, 0.0), Vec3::zero(), EmotionState::Happy),
            (1000, Vec3::zero(), Vec3::zero(), EmotionState::Happy),
        ]);
        let fv = featurize(&session).unwrap()[&EmotionState::Happy];
        assert!((fv.acc_mag_mean - 2.5).abs() < 1e-15);
        assert!((fv.acc_mag_std - 2.5).abs() < 1e-15);
    }

    #[test]
    fn featurize_covers_present_emotions() {
        let mut rows = Vec::new();
        for (i, e) in EmotionState::ALL.iter().enumerate() {
            rows.push((i as u32 * 10, Vec3::new(1.0, 0.0, 0.0), Vec3::zero(), *e));
            rows.push((i as u32 * 10 + 5, Vec3::new(0.0, 1.0, 0.0), Vec3::zero(), *e));
        }
        let map = featurize(&labeled(&rows)).unwrap();
        assert_eq!(map.len(), 5);
        for e in EmotionState::ALL {
            assert!(map.contains_key(&e));
        }
    }

    #[test]
    fn featurize_rejects_single_sample_segment() {
        let session = labeled(&[
            (0, Vec3::zero(), Vec3::zero(), EmotionState::Happy),
            (1000, Vec3::zero(), Vec3::zero(), EmotionState::Sad),
            (2000, Vec3::zero(), Vec3::zero(), EmotionState::Sad),
        ]);
        assert_eq!(
            featurize(&session),
            Err(FeatureError::InsufficientSamples(EmotionState::Happy))
        );
    }

    proptest! {
        #[test]
        fn magnitude_absolutely_homogeneous(
            x in -10.0f64..10.0, y in -10.0f64..10.0, z in -10.0f64..10.0,
            c in -8.0f64..8.0,
        ) {
            let v = Vec3::new(x, y, z);
            let scaled = Vec3::new(c * x, c * y, c * z);
            prop_assert!((magnitude(&scaled) - c.abs() * magnitude(&v)).abs() < 1e-9);
        }

        #[test]
        fn moments_of_constant_series(v in -100.0f64..100.0, n in 1usize..50) {
            let series = vec![v; n];
            let (mean, std) = moments(&series).unwrap();
            prop_assert!((mean - v).abs() < 1e-9);
            prop_assert!(std.abs() < 1e-9);
        }

        #[test]
        fn moments_permutation_invariant(mut series in proptest::collection::vec(-5.0f64..5.0, 2..40)) {
            let (m1, s1) = moments(&series).unwrap();
            series.reverse();
            let (m2, s2) = moments(&series).unwrap();
            prop_assert!((m1 - m2).abs() < 1e-12);
            prop_assert!((s1 - s2).abs() < 1e-12);
        }
    }
}
