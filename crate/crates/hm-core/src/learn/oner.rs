//! One-rule classifier: discretize a single feature into equal-width bins
//! and predict each bin's majority label. The feature whose rule scores the
//! best training accuracy wins; ties go to the lower feature index.

use serde::{Deserialize, Serialize};

use super::Encoded;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub(crate) struct OneRModel {
    feature: usize,
    min: f64,
    width: f64,
    bin_labels: Vec<usize>,
}

pub(crate) fn fit(enc: &Encoded, bins: usize) -> OneRModel {
    let overall = majority(&class_counts(&enc.y, enc.n_classes));

    let mut best: Option<(usize, OneRModel)> = None;
    for feature in 0..4 {
        let values: Vec<f64> = enc.x.iter().map(|row| row[feature]).collect();
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let width = if max > min { (max - min) / bins as f64 } else { 0.0 };

        let mut counts = vec![vec![0u64; enc.n_classes]; bins];
        for (value, &label) in values.iter().zip(&enc.y) {
            counts[bin_index(*value, min, width, bins)][label] += 1;
        }
        let bin_labels: Vec<usize> = counts
            .iter()
            .map(|c| if c.iter().all(|&x| x == 0) { overall } else { majority(c) })
            .collect();

        let candidate = OneRModel {
            feature,
            min,
            width,
            bin_labels,
        };
        let correct = values
            .iter()
            .zip(&enc.y)
            .filter(|(v, &label)| candidate.predict_feature(**v) == label)
            .count();
        if best.as_ref().is_none_or(|(c, _)| correct > *c) {
            best = Some((correct, candidate));
        }
    }
    best.expect("at least one feature").1
}

impl OneRModel {
    fn predict_feature(&self, value: f64) -> usize {
        self.bin_labels[bin_index(value, self.min, self.width, self.bin_labels.len())]
    }

    pub(crate) fn predict(&self, row: &[f64; 4]) -> usize {
        self.predict_feature(row[self.feature])
    }
}

fn bin_index(value: f64, min: f64, width: f64, bins: usize) -> usize {
    if width == 0.0 {
        return 0;
    }
    let idx = ((value - min) / width).floor();
    if idx < 0.0 {
        0
    } else {
        (idx as usize).min(bins - 1)
    }
}

pub(super) fn class_counts(y: &[usize], n_classes: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n_classes];
    for &label in y {
        counts[label] += 1;
    }
    counts
}

/// Index of the largest count; ties go to the lower label index.
pub(super) fn majority(counts: &[u64]) -> usize {
    let mut best = 0;
    for (i, &count) in counts.iter().enumerate() {
        if count > counts[best] {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::super::tests::fv;
    use super::super::{fit, resubstitution, ClassifierSpec, Dataset, Fraction};

    #[test]
    fn thresholds_the_separating_feature() {
        // acc_mag_mean >= 0.5 iff "yes"; values avoid straddling a bin edge.
        let mut rows = Vec::new();
        for v in [0.1, 0.2, 0.3, 0.4] {
            rows.push((fv(v, 9.0, 9.0, 9.0), "no".to_string()));
        }
        for v in [0.6, 0.7, 0.8, 0.9] {
            rows.push((fv(v, 9.0, 9.0, 9.0), "yes".to_string()));
        }
        let data = Dataset::new(rows);
        let model = fit(&ClassifierSpec::OneR { bins: 8 }, &data).unwrap();
        assert_eq!(resubstitution(&model, &data), Fraction::new(8, 8));
        assert_eq!(model.predict(&fv(0.15, 0.0, 0.0, 0.0)), "no");
        assert_eq!(model.predict(&fv(0.85, 0.0, 0.0, 0.0)), "yes");
    }

    #[test]
    fn out_of_range_values_clamp_to_edge_bins() {
        let data = Dataset::new(vec![
            (fv(0.0, 0.0, 0.0, 0.0), "no".to_string()),
            (fv(0.1, 0.0, 0.0, 0.0), "no".to_string()),
            (fv(0.9, 0.0, 0.0, 0.0), "yes".to_string()),
            (fv(1.0, 0.0, 0.0, 0.0), "yes".to_string()),
        ]);
        let model = fit(&ClassifierSpec::OneR { bins: 4 }, &data).unwrap();
        assert_eq!(model.predict(&fv(-5.0, 0.0, 0.0, 0.0)), "no");
        assert_eq!(model.predict(&fv(5.0, 0.0, 0.0, 0.0)), "yes");
    }
}
