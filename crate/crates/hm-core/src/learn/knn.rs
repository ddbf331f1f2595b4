//! k-nearest-neighbors over z-scored features with majority vote.
//! Distance ties break by training-row order, vote ties by label index.

use serde::{Deserialize, Serialize};

use super::{Encoded, Scaler};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub(crate) struct KnnModel {
    k: usize,
    scaler: Scaler,
    points: Vec<[f64; 4]>,
    labels: Vec<usize>,
    n_classes: usize,
}

pub(crate) fn fit(enc: &Encoded, k: usize) -> KnnModel {
    let scaler = Scaler::fit(&enc.x);
    KnnModel {
        k,
        points: enc.x.iter().map(|row| scaler.transform(row)).collect(),
        labels: enc.y.clone(),
        scaler,
        n_classes: enc.n_classes,
    }
}

impl KnnModel {
    pub(crate) fn predict(&self, row: &[f64; 4]) -> usize {
        let q = self.scaler.transform(row);
        let mut dist: Vec<(f64, usize)> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let d2: f64 = p.iter().zip(&q).map(|(a, b)| (a - b) * (a - b)).sum();
                (d2, i)
            })
            .collect();
        dist.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));

        let k = self.k.min(self.points.len());
        let mut votes = vec![0usize; self.n_classes];
        for &(_, i) in dist.iter().take(k) {
            votes[self.labels[i]] += 1;
        }
        super::oner::majority(&votes.iter().map(|&v| v as u64).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{fv, separable};
    use super::super::{fit, ClassifierSpec};

    #[test]
    fn nearest_neighbor_of_training_point_is_itself() {
        let data = separable(6);
        let model = fit(&ClassifierSpec::Knn { k: 1 }, &data).unwrap();
        for (features, label) in data.rows() {
            assert_eq!(model.predict(features), label);
        }
    }

    #[test]
    fn k_larger_than_training_set_is_clamped() {
        let data = separable(2);
        let model = fit(&ClassifierSpec::Knn { k: 50 }, &data).unwrap();
        // With k clamped to all 4 rows the vote is 2-2; the tie goes to the
        // lexicographically first label.
        assert_eq!(model.predict(&fv(0.5, 0.2, 3.0, 0.5)), "no");
    }
}
