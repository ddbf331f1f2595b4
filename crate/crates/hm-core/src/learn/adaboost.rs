//! Boosted decision stumps (multiclass SAMME). Each round fits the stump
//! with the lowest weighted error; rounds stop early once a stump is perfect
//! or no stump beats chance.

use serde::{Deserialize, Serialize};

use super::Encoded;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub(crate) struct Stump {
    feature: usize,
    threshold: f64,
    left: usize,
    right: usize,
}

impl Stump {
    fn predict(&self, row: &[f64; 4]) -> usize {
        if row[self.feature] < self.threshold {
            self.left
        } else {
            self.right
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub(crate) struct AdaBoostModel {
    stumps: Vec<(Stump, f64)>,
    n_classes: usize,
}

pub(crate) fn fit(enc: &Encoded, rounds: usize) -> AdaBoostModel {
    let n = enc.x.len();
    let k = enc.n_classes as f64;
    let chance = 1.0 - 1.0 / k;
    let mut weights = vec![1.0 / n as f64; n];
    let mut stumps = Vec::new();

    for _ in 0..rounds {
        let stump = best_stump(enc, &weights);
        let err: f64 = enc
            .x
            .iter()
            .zip(&enc.y)
            .zip(&weights)
            .filter(|((row, &label), _)| stump.predict(row) != label)
            .map(|(_, &w)| w)
            .sum();

        if err <= 0.0 {
            // Perfect stump: give it a large, finite say and stop boosting.
            let eps = 1e-12;
            stumps.push((stump, ((1.0 - eps) / eps).ln() + (k - 1.0).ln()));
            break;
        }
        if err >= chance {
            break; // no stump beats chance on the current weights
        }
        let alpha = ((1.0 - err) / err).ln() + (k - 1.0).ln();
        for ((row, &label), w) in enc.x.iter().zip(&enc.y).zip(weights.iter_mut()) {
            if stump.predict(row) != label {
                *w *= alpha.exp();
            }
        }
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        stumps.push((stump, alpha));
    }

    if stumps.is_empty() {
        // Chance-level data: fall back to a constant majority stump.
        stumps.push((majority_stump(enc, &weights), 1.0));
    }
    AdaBoostModel {
        stumps,
        n_classes: enc.n_classes,
    }
}

/// Lowest weighted-error stump; scan order (feature asc, threshold asc) and
/// strict improvement keep the choice deterministic.
fn best_stump(enc: &Encoded, weights: &[f64]) -> Stump {
    let n = enc.x.len();
    let mut best: Option<(f64, Stump)> = None;

    for feature in 0..4 {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            enc.x[a][feature]
                .partial_cmp(&enc.x[b][feature])
                .unwrap()
                .then(a.cmp(&b))
        });

        let total = weighted_counts(enc, weights, order.iter().copied());
        let total_sum: f64 = total.iter().sum();
        let mut left = vec![0.0f64; enc.n_classes];

        for pos in 1..n {
            let moved = order[pos - 1];
            left[enc.y[moved]] += weights[moved];
            let prev = enc.x[order[pos - 1]][feature];
            let next = enc.x[order[pos]][feature];
            if prev == next {
                continue;
            }
            let left_sum: f64 = left.iter().sum();
            let (left_label, left_hit) = weighted_majority(&left);
            let right: Vec<f64> = total.iter().zip(&left).map(|(t, l)| t - l).collect();
            let (right_label, right_hit) = weighted_majority(&right);
            let err = (left_sum - left_hit) + ((total_sum - left_sum) - right_hit);
            let candidate = Stump {
                feature,
                threshold: 0.5 * (prev + next),
                left: left_label,
                right: right_label,
            };
            if best.as_ref().is_none_or(|(e, _)| err < *e) {
                best = Some((err, candidate));
            }
        }
    }
    best.map(|(_, stump)| stump)
        .unwrap_or_else(|| majority_stump(enc, weights))
}

/// Constant stump predicting the weighted-majority label everywhere, for
/// inputs where no feature has two distinct values.
fn majority_stump(enc: &Encoded, weights: &[f64]) -> Stump {
    let counts = weighted_counts(enc, weights, 0..enc.x.len());
    let (label, _) = weighted_majority(&counts);
    Stump {
        feature: 0,
        threshold: f64::NEG_INFINITY,
        left: label,
        right: label,
    }
}

fn weighted_counts(
    enc: &Encoded,
    weights: &[f64],
    rows: impl Iterator<Item = usize>,
) -> Vec<f64> {
    let mut counts = vec![0.0f64; enc.n_classes];
    for i in rows {
        counts[enc.y[i]] += weights[i];
    }
    counts
}

/// (label, weight) of the heaviest class; ties go to the lower label index.
fn weighted_majority(counts: &[f64]) -> (usize, f64) {
    let mut best = 0;
    for (i, &w) in counts.iter().enumerate() {
        if w > counts[best] {
            best = i;
        }
    }
    (best, counts[best])
}

impl AdaBoostModel {
    pub(crate) fn predict(&self, row: &[f64; 4]) -> usize {
        let mut scores = vec![0.0f64; self.n_classes];
        for (stump, alpha) in &self.stumps {
            scores[stump.predict(row)] += alpha;
        }
        let mut best = 0;
        for (i, &s) in scores.iter().enumerate() {
            if s > scores[best] {
                best = i;
            }
        }
        best
    }
}
