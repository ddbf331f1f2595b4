//! Multinomial logistic regression trained by full-batch gradient descent
//! on z-scored features. Zero initialization and a fixed epoch count keep
//! training deterministic.

use serde::{Deserialize, Serialize};

use super::{Encoded, Scaler};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub(crate) struct LogisticModel {
    scaler: Scaler,
    /// Per class: 4 feature weights then the bias.
    weights: Vec<[f64; 5]>,
}

pub(crate) fn fit(enc: &Encoded, epochs: usize, learning_rate: f64, l2: f64) -> LogisticModel {
    let scaler = Scaler::fit(&enc.x);
    let x: Vec<[f64; 4]> = enc.x.iter().map(|row| scaler.transform(row)).collect();
    let n = x.len() as f64;
    let k = enc.n_classes;
    let mut weights = vec![[0.0f64; 5]; k];

    for _ in 0..epochs {
        let mut grad = vec![[0.0f64; 5]; k];
        for (row, &label) in x.iter().zip(&enc.y) {
            let p = softmax(&logits(&weights, row));
            for (c, g) in grad.iter_mut().enumerate() {
                let err = p[c] - if c == label { 1.0 } else { 0.0 };
                for i in 0..4 {
                    g[i] += err * row[i];
                }
                g[4] += err;
            }
        }
        for (w, g) in weights.iter_mut().zip(&grad) {
            for i in 0..4 {
                w[i] -= learning_rate * (g[i] / n + l2 * w[i]);
            }
            w[4] -= learning_rate * g[4] / n; // bias unregularized
        }
    }
    LogisticModel { scaler, weights }
}

fn logits(weights: &[[f64; 5]], row: &[f64; 4]) -> Vec<f64> {
    weights
        .iter()
        .map(|w| w[4] + w[..4].iter().zip(row).map(|(a, b)| a * b).sum::<f64>())
        .collect()
}

fn softmax(z: &[f64]) -> Vec<f64> {
    let max = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exp: Vec<f64> = z.iter().map(|v| (v - max).exp()).collect();
    let sum: f64 = exp.iter().sum();
    exp.iter().map(|v| v / sum).collect()
}

impl LogisticModel {
    pub(crate) fn predict(&self, row: &[f64; 4]) -> usize {
        let z = logits(&self.weights, &self.scaler.transform(row));
        let mut best = 0;
        for (i, &v) in z.iter().enumerate() {
            if v > z[best] {
                best = i;
            }
        }
        best
    }
}
