//! Random forest: bootstrap-sampled CART trees with per-split feature
//! subsampling, majority vote over trees. Fully seeded, so training is a
//! deterministic function of (data, hyperparameters, seed).

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::oner::majority;
use super::tree::{grow, TreeModel};
use super::Encoded;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub(crate) struct ForestModel {
    trees: Vec<TreeModel>,
    n_classes: usize,
}

pub(crate) fn fit(
    enc: &Encoded,
    n_trees: usize,
    max_depth: usize,
    feature_subsample: usize,
    seed: u64,
) -> ForestModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = enc.x.len();
    let mut trees = Vec::with_capacity(n_trees);
    for _ in 0..n_trees {
        let bootstrap: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
        let mut picker = || {
            let mut picked: Vec<usize> = sample(&mut rng, 4, feature_subsample).into_vec();
            picked.sort_unstable();
            picked
        };
        trees.push(grow(enc, &bootstrap, max_depth, 1, &mut picker));
    }
    ForestModel {
        trees,
        n_classes: enc.n_classes,
    }
}

impl ForestModel {
    pub(crate) fn predict(&self, row: &[f64; 4]) -> usize {
        let mut votes = vec![0u64; self.n_classes];
        for tree in &self.trees {
            votes[tree.predict(row)] += 1;
        }
        majority(&votes)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{fv, separable};
    use super::super::{fit, resubstitution, ClassifierSpec};

    #[test]
    fn same_seed_same_model() {
        let data = separable(10);
        let spec = ClassifierSpec::RandomForest {
            n_trees: 25,
            max_depth: 8,
            feature_subsample: 2,
            seed: 404,
        };
        let a = fit(&spec, &data).unwrap();
        let b = fit(&spec, &data).unwrap();
        assert_eq!(a, b);
        let x = fv(0.4, 0.2, 2.0, 0.5);
        assert_eq!(a.predict(&x), b.predict(&x));
    }

    #[test]
    fn learns_separable_data() {
        let data = separable(12);
        let spec = ClassifierSpec::RandomForest {
            n_trees: 30,
            max_depth: 8,
            feature_subsample: 2,
            seed: 7,
        };
        let model = fit(&spec, &data).unwrap();
        assert!(resubstitution(&model, &data).rate() >= 0.95);
    }
}
