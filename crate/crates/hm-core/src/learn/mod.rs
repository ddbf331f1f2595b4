//! Native classifier pool, stratified k-fold cross-validation, and
//! best-success-rate model selection.
//!
//! The pool holds six classifiers spanning the usual families: a one-rule
//! discretizer, k-nearest neighbors, a CART-style decision tree, a random
//! forest, multinomial logistic regression, and boosted decision stumps.
//! Selection evaluates every pool member with the same seeded stratified
//! folds and keeps the one with the highest success rate; ties go to the
//! earliest pool entry. Accuracies are carried as exact fractions so their
//! granularity stays auditable.

mod adaboost;
mod forest;
mod knn;
mod logistic;
pub mod metrics;
mod oner;
mod tree;

use std::cmp::Ordering;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::FeatureVector;

pub use metrics::{confusion, weighted_metrics, ConfusionMatrix, MetricValue, MetricsReport};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LearnError {
    #[error("dataset has fewer than 2 distinct labels")]
    DegenerateDataset,
    #[error("invalid hyperparameters: {0}")]
    InvalidHyperparameters(String),
    #[error("too few rows for the requested evaluation")]
    TooFewRows,
    #[error("label domains do not match")]
    LabelDomainMismatch,
    #[error("confusion matrix has no counts")]
    EmptyMatrix,
}

/// An exact count ratio, e.g. 39/40. Keeps selection and reporting auditable
/// at the granularity the row counts allow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub correct: u64,
    pub total: u64,
}

impl Fraction {
    pub fn new(correct: u64, total: u64) -> Self {
        Fraction { correct, total }
    }

    pub fn rate(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.correct as f64 / self.total as f64
        }
    }

    /// Exact rate comparison via cross multiplication.
    pub fn cmp_rate(&self, other: &Fraction) -> Ordering {
        let lhs = u128::from(self.correct) * u128::from(other.total);
        let rhs = u128::from(other.correct) * u128::from(self.total);
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.correct, self.total)
    }
}

/// Labeled feature rows plus the ordered set of distinct labels.
///
/// The label domain is sorted lexicographically so it never depends on row
/// order. A dataset built over a wider domain than its rows use is legal:
/// cross-validation folds inherit the parent domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    rows: Vec<(FeatureVector, String)>,
    label_domain: Vec<String>,
}

impl Dataset {
    /// Derives the label domain from the rows.
    pub fn new(rows: Vec<(FeatureVector, String)>) -> Self {
        let mut domain: Vec<String> = rows.iter().map(|(_, l)| l.clone()).collect();
        domain.sort();
        domain.dedup();
        Dataset {
            rows,
            label_domain: domain,
        }
    }

    /// Uses an explicit label domain; every row label must be in it.
    pub fn with_domain(
        rows: Vec<(FeatureVector, String)>,
        label_domain: Vec<String>,
    ) -> Result<Self, LearnError> {
        for (_, label) in &rows {
            if !label_domain.contains(label) {
                return Err(LearnError::LabelDomainMismatch);
            }
        }
        Ok(Dataset { rows, label_domain })
    }

    pub fn rows(&self) -> &[(FeatureVector, String)] {
        &self.rows
    }

    pub fn label_domain(&self) -> &[String] {
        &self.label_domain
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn label_index(&self, label: &str) -> usize {
        self.label_domain
            .iter()
            .position(|l| l == label)
            .expect("row label outside domain")
    }

    pub(crate) fn encode(&self) -> Encoded {
        Encoded {
            x: self.rows.iter().map(|(f, _)| f.as_array()).collect(),
            y: self.rows.iter().map(|(_, l)| self.label_index(l)).collect(),
            n_classes: self.label_domain.len(),
        }
    }
}

/// Numeric view of a dataset: feature rows and label indices.
pub(crate) struct Encoded {
    pub x: Vec<[f64; 4]>,
    pub y: Vec<usize>,
    pub n_classes: usize,
}

/// Per-feature z-score scaler, fit on training rows only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub(crate) struct Scaler {
    mean: [f64; 4],
    std: [f64; 4],
}

impl Scaler {
    pub(crate) fn fit(x: &[[f64; 4]]) -> Scaler {
        let n = x.len().max(1) as f64;
        let mut mean = [0.0; 4];
        for row in x {
            for (m, v) in mean.iter_mut().zip(row) {
                *m += v;
            }
        }
        for m in &mut mean {
            *m /= n;
        }
        let mut std = [0.0; 4];
        for row in x {
            for i in 0..4 {
                std[i] += (row[i] - mean[i]) * (row[i] - mean[i]);
            }
        }
        for s in &mut std {
            *s = (*s / n).sqrt();
            if *s == 0.0 {
                *s = 1.0; // constant feature: leave it centered, not exploded
            }
        }
        Scaler { mean, std }
    }

    pub(crate) fn transform(&self, row: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for i in 0..4 {
            out[i] = (row[i] - self.mean[i]) / self.std[i];
        }
        out
    }
}

/// One candidate of the classifier pool with its hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ClassifierSpec {
    OneR { bins: usize },
    Knn { k: usize },
    DecisionTree { max_depth: usize, min_leaf: usize },
    RandomForest {
        n_trees: usize,
        max_depth: usize,
        feature_subsample: usize,
        seed: u64,
    },
    Logistic {
        epochs: usize,
        learning_rate: f64,
        l2: f64,
    },
    AdaBoostStumps { rounds: usize },
}

impl ClassifierSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ClassifierSpec::OneR { .. } => "OneR",
            ClassifierSpec::Knn { .. } => "KNN",
            ClassifierSpec::DecisionTree { .. } => "DecisionTree",
            ClassifierSpec::RandomForest { .. } => "RandomForest",
            ClassifierSpec::Logistic { .. } => "Logistic",
            ClassifierSpec::AdaBoostStumps { .. } => "AdaBoostStumps",
        }
    }

    /// The fixed pool, in tie-break order.
    pub fn default_pool() -> Vec<ClassifierSpec> {
        vec![
            ClassifierSpec::OneR { bins: 8 },
            ClassifierSpec::Knn { k: 5 },
            ClassifierSpec::DecisionTree {
                max_depth: 8,
                min_leaf: 2,
            },
            ClassifierSpec::RandomForest {
                n_trees: 50,
                max_depth: 10,
                feature_subsample: 2,
                seed: 0xDA7A,
            },
            ClassifierSpec::Logistic {
                epochs: 400,
                learning_rate: 0.3,
                l2: 1e-4,
            },
            ClassifierSpec::AdaBoostStumps { rounds: 40 },
        ]
    }

    /// Looks a pool member up by its `name()`, with default hyperparameters.
    pub fn by_name(name: &str) -> Option<ClassifierSpec> {
        ClassifierSpec::default_pool()
            .into_iter()
            .find(|spec| spec.name().eq_ignore_ascii_case(name))
    }

    pub fn validate(&self) -> Result<(), LearnError> {
        let bad = |msg: &str| Err(LearnError::InvalidHyperparameters(msg.to_string()));
        match self {
            ClassifierSpec::OneR { bins } if *bins < 2 => bad("OneR bins must be >= 2"),
            ClassifierSpec::Knn { k } if *k == 0 => bad("KNN k must be >= 1"),
            ClassifierSpec::DecisionTree { max_depth, min_leaf }
                if *max_depth == 0 || *min_leaf == 0 =>
            {
                bad("tree max_depth and min_leaf must be >= 1")
            }
            ClassifierSpec::RandomForest {
                n_trees,
                max_depth,
                feature_subsample,
                ..
            } if *n_trees == 0 || *max_depth == 0 || !(1..=4).contains(feature_subsample) => {
                bad("forest needs n_trees/max_depth >= 1 and feature_subsample in 1..=4")
            }
            ClassifierSpec::Logistic {
                epochs,
                learning_rate,
                l2,
            } if *epochs == 0 || *learning_rate <= 0.0 || *l2 < 0.0 => {
                bad("logistic needs epochs >= 1, learning_rate > 0, l2 >= 0")
            }
            ClassifierSpec::AdaBoostStumps { rounds } if *rounds == 0 => {
                bad("AdaBoost rounds must be >= 1")
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
enum Learned {
    OneR(oner::OneRModel),
    Knn(knn::KnnModel),
    Tree(tree::TreeModel),
    Forest(forest::ForestModel),
    Logistic(logistic::LogisticModel),
    AdaBoost(adaboost::AdaBoostModel),
}

/// A trained predictor: spec, learned parameters, and its label domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Model {
    pub spec: ClassifierSpec,
    label_domain: Vec<String>,
    learned: Learned,
}

impl Model {
    pub fn label_domain(&self) -> &[String] {
        &self.label_domain
    }

    /// Predicts a label from the model's domain. Deterministic.
    pub fn predict(&self, x: &FeatureVector) -> &str {
        let row = x.as_array();
        let idx = match &self.learned {
            Learned::OneR(m) => m.predict(&row),
            Learned::Knn(m) => m.predict(&row),
            Learned::Tree(m) => m.predict(&row),
            Learned::Forest(m) => m.predict(&row),
            Learned::Logistic(m) => m.predict(&row),
            Learned::AdaBoost(m) => m.predict(&row),
        };
        &self.label_domain[idx]
    }
}

/// Trains `spec` on `data`. Deterministic given (spec, data, embedded seeds).
pub fn fit(spec: &ClassifierSpec, data: &Dataset) -> Result<Model, LearnError> {
    spec.validate()?;
    if data.label_domain().len() < 2 {
        return Err(LearnError::DegenerateDataset);
    }
    if data.is_empty() {
        return Err(LearnError::TooFewRows);
    }
    let enc = data.encode();
    let learned = match spec {
        ClassifierSpec::OneR { bins } => Learned::OneR(oner::fit(&enc, *bins)),
        ClassifierSpec::Knn { k } => Learned::Knn(knn::fit(&enc, *k)),
        ClassifierSpec::DecisionTree { max_depth, min_leaf } => {
            Learned::Tree(tree::fit(&enc, *max_depth, *min_leaf))
        }
        ClassifierSpec::RandomForest {
            n_trees,
            max_depth,
            feature_subsample,
            seed,
        } => Learned::Forest(forest::fit(&enc, *n_trees, *max_depth, *feature_subsample, *seed)),
        ClassifierSpec::Logistic {
            epochs,
            learning_rate,
            l2,
        } => Learned::Logistic(logistic::fit(&enc, *epochs, *learning_rate, *l2)),
        ClassifierSpec::AdaBoostStumps { rounds } => {
            Learned::AdaBoost(adaboost::fit(&enc, *rounds))
        }
    };
    Ok(Model {
        spec: spec.clone(),
        label_domain: data.label_domain().to_vec(),
        learned,
    })
}

/// Resubstitution accuracy: the model scored on its own training rows.
pub fn resubstitution(model: &Model, data: &Dataset) -> Fraction {
    let correct = data
        .rows()
        .iter()
        .filter(|(features, label)| model.predict(features) == label)
        .count() as u64;
    Fraction::new(correct, data.len() as u64)
}

/// Test-row indices per fold: stratified by label, shuffled by `seed`.
fn stratified_folds(y: &[usize], n_classes: usize, k: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); n_classes];
    for (i, &label) in y.iter().enumerate() {
        by_class[label].push(i);
    }
    let mut folds = vec![Vec::new(); k];
    let mut cursor = 0usize; // carried across classes so fold sizes stay even
    for group in &mut by_class {
        group.shuffle(&mut rng);
        for &idx in group.iter() {
            folds[cursor % k].push(idx);
            cursor += 1;
        }
    }
    folds
}

/// Stratified k-fold cross-validation success rate, pooled over folds.
///
/// `k` is lowered to the smallest class count when classes are scarce, but
/// never below 2. Deterministic given (spec, data, k, seed).
pub fn k_fold_cv(
    spec: &ClassifierSpec,
    data: &Dataset,
    k: usize,
    seed: u64,
) -> Result<Fraction, LearnError> {
    if k < 2 {
        return Err(LearnError::InvalidHyperparameters(
            "k must be >= 2".to_string(),
        ));
    }
    if data.len() < 2 {
        return Err(LearnError::TooFewRows);
    }
    if data.label_domain().len() < 2 {
        return Err(LearnError::DegenerateDataset);
    }
    let enc = data.encode();
    let min_class = (0..enc.n_classes)
        .map(|c| enc.y.iter().filter(|&&y| y == c).count())
        .filter(|&count| count > 0)
        .min()
        .unwrap_or(0);
    let k_eff = k.min(min_class).max(2);

    let folds = stratified_folds(&enc.y, enc.n_classes, k_eff, seed);
    let mut correct = 0u64;
    for test_idx in &folds {
        if test_idx.is_empty() {
            continue;
        }
        let in_test: Vec<bool> = {
            let mut mask = vec![false; data.len()];
            for &i in test_idx {
                mask[i] = true;
            }
            mask
        };
        let train_rows: Vec<(FeatureVector, String)> = data
            .rows()
            .iter()
            .enumerate()
            .filter(|(i, _)| !in_test[*i])
            .map(|(_, row)| row.clone())
            .collect();
        if train_rows.is_empty() {
            return Err(LearnError::TooFewRows);
        }
        let train = Dataset::with_domain(train_rows, data.label_domain().to_vec())?;
        let model = fit(spec, &train)?;
        for &i in test_idx {
            let (features, label) = &data.rows()[i];
            if model.predict(features) == label {
                correct += 1;
            }
        }
    }
    Ok(Fraction::new(correct, data.len() as u64))
}

/// One pool member's cross-validation score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateScore {
    pub spec: ClassifierSpec,
    pub cv: Fraction,
}

/// Outcome of best-success-rate selection over a pool.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    pub best_spec: ClassifierSpec,
    pub best_model: Model,
    pub cv_success: Fraction,
    pub resubstitution: Fraction,
    pub candidates: Vec<CandidateScore>,
}

impl SelectionResult {
    pub fn cv_success_rate(&self) -> f64 {
        self.cv_success.rate()
    }

    pub fn resubstitution_accuracy(&self) -> f64 {
        self.resubstitution.rate()
    }
}

/// Evaluates every pool member with the same folds and keeps the best
/// success rate; ties go to the earliest pool entry. The winner is then
/// retrained on all rows and its resubstitution accuracy recorded.
pub fn select_best(
    data: &Dataset,
    pool: &[ClassifierSpec],
    k: usize,
    seed: u64,
) -> Result<SelectionResult, LearnError> {
    if pool.is_empty() {
        return Err(LearnError::InvalidHyperparameters(
            "classifier pool is empty".to_string(),
        ));
    }
    let mut candidates = Vec::with_capacity(pool.len());
    let mut best: Option<usize> = None;
    for (i, spec) in pool.iter().enumerate() {
        let cv = k_fold_cv(spec, data, k, seed)?;
        candidates.push(CandidateScore {
            spec: spec.clone(),
            cv,
        });
        let better = match best {
            None => true,
            Some(b) => cv.cmp_rate(&candidates[b].cv) == Ordering::Greater,
        };
        if better {
            best = Some(i);
        }
    }
    let best = best.expect("non-empty pool");
    let best_spec = pool[best].clone();
    let best_model = fit(&best_spec, data)?;
    let resub = resubstitution(&best_model, data);
    Ok(SelectionResult {
        best_spec,
        best_model,
        cv_success: candidates[best].cv,
        resubstitution: resub,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fv(a: f64, b: f64, c: f64, d: f64) -> FeatureVector {
        FeatureVector {
            acc_mag_mean: a,
            acc_mag_std: b,
            gyro_mag_mean: c,
            gyro_mag_std: d,
        }
    }

    /// Two well-separated classes along acc_mag_mean.
    pub(crate) fn separable(n_per_class: usize) -> Dataset {
        let mut rows = Vec::new();
        for i in 0..n_per_class {
            let jitter = i as f64 * 0.01;
            rows.push((fv(0.1 + jitter, 0.2, 1.0 + jitter, 0.5), "no".to_string()));
            rows.push((fv(0.9 + jitter, 0.2, 5.0 + jitter, 0.5), "yes".to_string()));
        }
        Dataset::new(rows)
    }

    #[test]
    fn dataset_sorts_label_domain() {
        let data = Dataset::new(vec![
            (fv(1.0, 0.0, 0.0, 0.0), "yes".to_string()),
            (fv(0.0, 0.0, 0.0, 0.0), "no".to_string()),
        ]);
        assert_eq!(data.label_domain(), ["no", "yes"]);
    }

    #[test]
    fn fit_rejects_single_label() {
        let data = Dataset::new(vec![
            (fv(1.0, 0.0, 0.0, 0.0), "no".to_string()),
            (fv(0.0, 0.0, 0.0, 0.0), "no".to_string()),
        ]);
        for spec in ClassifierSpec::default_pool() {
            assert_eq!(fit(&spec, &data), Err(LearnError::DegenerateDataset));
        }
    }

    #[test]
    fn fit_rejects_invalid_hyperparameters() {
        let data = separable(5);
        assert!(matches!(
            fit(&ClassifierSpec::Knn { k: 0 }, &data),
            Err(LearnError::InvalidHyperparameters(_))
        ));
        assert!(matches!(
            fit(&ClassifierSpec::OneR { bins: 1 }, &data),
            Err(LearnError::InvalidHyperparameters(_))
        ));
    }

    #[test]
    fn knn1_resubstitution_is_perfect() {
        let data = separable(10);
        let model = fit(&ClassifierSpec::Knn { k: 1 }, &data).unwrap();
        assert_eq!(resubstitution(&model, &data), Fraction::new(20, 20));
    }

    #[test]
    fn pool_members_predict_within_domain() {
        let data = separable(8);
        for spec in ClassifierSpec::default_pool() {
            let model = fit(&spec, &data).unwrap();
            for (features, _) in data.rows() {
                let label = model.predict(features);
                assert!(data.label_domain().contains(&label.to_string()), "{label}");
            }
        }
    }

    #[test]
    fn predictions_are_deterministic() {
        let data = separable(8);
        for spec in ClassifierSpec::default_pool() {
            let a = fit(&spec, &data).unwrap();
            let b = fit(&spec, &data).unwrap();
            assert_eq!(a, b, "{} fit not deterministic", spec.name());
            let x = fv(0.5, 0.2, 3.0, 0.5);
            assert_eq!(a.predict(&x), b.predict(&x));
        }
    }

    #[test]
    fn cv_two_rows_knn_fails_both_folds() {
        let data = Dataset::new(vec![
            (fv(0.0, 0.0, 0.0, 0.0), "no".to_string()),
            (fv(1.0, 1.0, 1.0, 1.0), "yes".to_string()),
        ]);
        let rate = k_fold_cv(&ClassifierSpec::Knn { k: 1 }, &data, 2, 7).unwrap();
        assert_eq!(rate, Fraction::new(0, 2));
    }

    #[test]
    fn cv_rejects_k_below_two() {
        let data = separable(5);
        assert!(matches!(
            k_fold_cv(&ClassifierSpec::Knn { k: 1 }, &data, 1, 7),
            Err(LearnError::InvalidHyperparameters(_))
        ));
    }

    #[test]
    fn cv_rejects_single_row() {
        let data = Dataset::new(vec![(fv(0.0, 0.0, 0.0, 0.0), "no".to_string())]);
        assert_eq!(
            k_fold_cv(&ClassifierSpec::Knn { k: 1 }, &data, 2, 7),
            Err(LearnError::TooFewRows)
        );
    }

    #[test]
    fn cv_separates_planted_signal() {
        let data = separable(20);
        for spec in ClassifierSpec::default_pool() {
            let rate = k_fold_cv(&spec, &data, 5, 42).unwrap();
            assert!(
                rate.rate() >= 0.95,
                "{} got {} on separable data",
                spec.name(),
                rate
            );
        }
    }

    #[test]
    fn cv_is_deterministic() {
        let data = separable(10);
        let spec = ClassifierSpec::RandomForest {
            n_trees: 20,
            max_depth: 6,
            feature_subsample: 2,
            seed: 1,
        };
        assert_eq!(
            k_fold_cv(&spec, &data, 5, 99).unwrap(),
            k_fold_cv(&spec, &data, 5, 99).unwrap()
        );
    }

    #[test]
    fn folds_partition_rows() {
        let y = vec![0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0];
        let folds = stratified_folds(&y, 2, 3, 11);
        let mut seen: Vec<usize> = folds.iter().flatten().copied().collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..12).collect::<Vec<_>>());
        for fold in &folds {
            assert!(!fold.is_empty());
        }
    }

    #[test]
    fn select_best_single_spec_pool() {
        let data = separable(10);
        let pool = vec![ClassifierSpec::Knn { k: 3 }];
        let result = select_best(&data, &pool, 5, 7).unwrap();
        assert_eq!(result.best_spec, pool[0]);
        assert_eq!(result.candidates.len(), 1);
    }

    #[test]
    fn select_best_tie_prefers_earlier_entry() {
        // Both KNN variants are perfect on strongly separable data, so the
        // earlier pool entry must win the tie.
        let data = separable(10);
        let pool = vec![ClassifierSpec::Knn { k: 3 }, ClassifierSpec::Knn { k: 1 }];
        let result = select_best(&data, &pool, 5, 7).unwrap();
        assert_eq!(
            result.candidates[0].cv.cmp_rate(&result.candidates[1].cv),
            Ordering::Equal
        );
        assert_eq!(result.best_spec, pool[0]);
    }

    #[test]
    fn select_best_winner_attains_max() {
        let data = separable(10);
        let result = select_best(&data, &ClassifierSpec::default_pool(), 5, 7).unwrap();
        for candidate in &result.candidates {
            assert_ne!(
                candidate.cv.cmp_rate(&result.cv_success),
                Ordering::Greater
            );
        }
        assert!(result.cv_success_rate() >= 0.9);
    }

    #[test]
    fn permutation_null_stays_near_chance() {
        // 20 label-shuffled balanced 40-row datasets: the mean best-of-pool
        // cv rate must stay at chance plus selection optimism.
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut sum = 0.0;
        let runs = 20;
        for _ in 0..runs {
            let mut rows = Vec::new();
            let mut labels: Vec<&str> = Vec::new();
            for i in 0..40 {
                labels.push(if i < 20 { "yes" } else { "no" });
            }
            labels.shuffle(&mut rng);
            for label in labels {
                use rand::Rng;
                rows.push((
                    fv(
                        rng.random_range(0.0..1.0),
                        rng.random_range(0.0..1.0),
                        rng.random_range(0.0..1.0),
                        rng.random_range(0.0..1.0),
                    ),
                    label.to_string(),
                ));
            }
            let data = Dataset::new(rows);
            let result = select_best(&data, &ClassifierSpec::default_pool(), 5, 13).unwrap();
            sum += result.cv_success_rate();
        }
        let mean = sum / runs as f64;
        assert!(mean <= 0.65, "null mean best-cv rate {mean} above bound");
    }

    #[test]
    fn fraction_display_and_cmp() {
        let a = Fraction::new(39, 40);
        let b = Fraction::new(38, 40);
        assert_eq!(a.to_string(), "39/40");
        assert_eq!(a.cmp_rate(&b), Ordering::Greater);
        assert_eq!(
            Fraction::new(1, 2).cmp_rate(&Fraction::new(20, 40)),
            Ordering::Equal
        );
    }
}
