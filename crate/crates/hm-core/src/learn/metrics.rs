//! Confusion matrices and weighted-average classification metrics.
//!
//! Metrics follow the WEKA convention: per class, one-vs-rest TP rate,
//! FP rate, precision, recall, and F-measure, averaged with class-support
//! weights. Precision of a class nobody predicts is undefined; an undefined
//! per-class precision makes the weighted precision and F-measure undefined,
//! which renders as the string `"NAN"`.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::{Dataset, Fraction, LearnError, Model};

/// Square count matrix indexed by (actual, predicted) over a label domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    labels: Vec<String>,
    counts: Vec<Vec<u64>>,
}

impl ConfusionMatrix {
    pub fn new(labels: Vec<String>) -> Self {
        let n = labels.len();
        ConfusionMatrix {
            labels,
            counts: vec![vec![0; n]; n],
        }
    }

    /// Builds a matrix straight from counts; must be square and match labels.
    pub fn from_counts(labels: Vec<String>, counts: Vec<Vec<u64>>) -> Result<Self, LearnError> {
        let n = labels.len();
        if counts.len() != n || counts.iter().any(|row| row.len() != n) {
            return Err(LearnError::LabelDomainMismatch);
        }
        Ok(ConfusionMatrix { labels, counts })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn record(&mut self, actual: usize, predicted: usize) {
        self.counts[actual][predicted] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..self.labels.len()).map(|i| self.counts[i][i]).sum()
    }

    /// Accuracy as the exact fraction trace/total.
    pub fn accuracy(&self) -> Fraction {
        Fraction {
            correct: self.trace(),
            total: self.total(),
        }
    }

    fn support(&self, class: usize) -> u64 {
        self.counts[class].iter().sum()
    }

    fn predicted(&self, class: usize) -> u64 {
        self.counts.iter().map(|row| row[class]).sum()
    }
}

/// Counts (actual, predicted) pairs for every row of `data`.
///
/// The matrix is indexed over the model's label domain, which must contain
/// every label the dataset uses.
pub fn confusion(model: &Model, data: &Dataset) -> Result<ConfusionMatrix, LearnError> {
    let domain = model.label_domain();
    for label in data.label_domain() {
        if !domain.contains(label) {
            return Err(LearnError::LabelDomainMismatch);
        }
    }
    let index = |label: &str| domain.iter().position(|l| l == label).unwrap();
    let mut cm = ConfusionMatrix::new(domain.to_vec());
    for (features, label) in data.rows() {
        let predicted = model.predict(features);
        cm.record(index(label), index(predicted));
    }
    Ok(cm)
}

/// A weighted metric that may be undefined; undefined renders as `"NAN"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricValue(pub Option<f64>);

impl MetricValue {
    pub fn defined(v: f64) -> Self {
        MetricValue(Some(v))
    }

    pub const NAN: MetricValue = MetricValue(None);

    pub fn value(&self) -> Option<f64> {
        self.0
    }
}

impl fmt::Display for MetricValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("NAN"),
        }
    }
}

impl Serialize for MetricValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Some(v) => serializer.serialize_f64(v),
            None => serializer.serialize_str("NAN"),
        }
    }
}

impl<'de> Deserialize<'de> for MetricValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(v) => Ok(MetricValue(Some(v))),
            Raw::Text(s) if s == "NAN" => Ok(MetricValue(None)),
            Raw::Text(s) => Err(de::Error::custom(format!("expected number or \"NAN\", got {s:?}"))),
        }
    }
}

/// Weighted-average metrics of one confusion matrix, all in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub accuracy: f64,
    pub tp_rate: f64,
    pub fp_rate: f64,
    pub precision: MetricValue,
    pub recall: f64,
    pub f1: MetricValue,
}

/// Computes support-weighted one-vs-rest metrics from a confusion matrix.
pub fn weighted_metrics(cm: &ConfusionMatrix) -> Result<MetricsReport, LearnError> {
    let total = cm.total();
    if total == 0 {
        return Err(LearnError::EmptyMatrix);
    }
    let n = total as f64;
    let k = cm.labels().len();

    let mut tp_rate = 0.0;
    let mut fp_rate = 0.0;
    let mut recall = 0.0;
    let mut precision = Some(0.0);
    let mut f1 = Some(0.0);

    for c in 0..k {
        let support = cm.support(c);
        if support == 0 {
            continue; // weight zero: the class never occurs as an actual
        }
        let weight = support as f64 / n;
        let tp = cm.counts[c][c] as f64;
        let predicted = cm.predicted(c);
        let fp = predicted as f64 - tp;

        let tpr = tp / support as f64;
        tp_rate += weight * tpr;
        recall += weight * tpr;

        let negatives = n - support as f64;
        if negatives > 0.0 {
            fp_rate += weight * (fp / negatives);
        }

        if predicted == 0 {
            precision = None;
            f1 = None;
        } else {
            let prec = tp / predicted as f64;
            if let Some(p) = precision.as_mut() {
                *p += weight * prec;
            }
            if let Some(f) = f1.as_mut() {
                let class_f1 = if prec + tpr > 0.0 {
                    2.0 * prec * tpr / (prec + tpr)
                } else {
                    0.0
                };
                *f += weight * class_f1;
            }
        }
    }

    Ok(MetricsReport {
        accuracy: cm.trace() as f64 / n,
        tp_rate,
        fp_rate,
        precision: MetricValue(precision),
        recall,
        f1: MetricValue(f1),
    })
}
