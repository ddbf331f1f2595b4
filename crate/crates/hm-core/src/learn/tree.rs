//! CART-style decision tree with Gini impurity and midpoint thresholds.
//!
//! Split search is deterministic: features are scanned in ascending order,
//! candidate thresholds in ascending value order, and only a strictly lower
//! impurity replaces the current best.

use serde::{Deserialize, Serialize};

use super::oner::{class_counts, majority};
use super::Encoded;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub(crate) enum Node {
    Leaf { label: usize },
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub(crate) struct TreeModel {
    nodes: Vec<Node>,
}

pub(crate) fn fit(enc: &Encoded, max_depth: usize, min_leaf: usize) -> TreeModel {
    let idx: Vec<usize> = (0..enc.x.len()).collect();
    let mut all_features = || vec![0usize, 1, 2, 3];
    grow(enc, &idx, max_depth, min_leaf, &mut all_features)
}

/// Grows a tree over the rows in `idx`. `feature_picker` supplies the
/// candidate feature set per split, which lets the forest subsample.
pub(crate) fn grow(
    enc: &Encoded,
    idx: &[usize],
    max_depth: usize,
    min_leaf: usize,
    feature_picker: &mut dyn FnMut() -> Vec<usize>,
) -> TreeModel {
    let mut nodes = Vec::new();
    build(enc, idx, 0, max_depth, min_leaf, feature_picker, &mut nodes);
    TreeModel { nodes }
}

#[allow(clippy::too_many_arguments)]
fn build(
    enc: &Encoded,
    idx: &[usize],
    depth: usize,
    max_depth: usize,
    min_leaf: usize,
    feature_picker: &mut dyn FnMut() -> Vec<usize>,
    nodes: &mut Vec<Node>,
) -> usize {
    let labels: Vec<usize> = idx.iter().map(|&i| enc.y[i]).collect();
    let counts = class_counts(&labels, enc.n_classes);
    let node_id = nodes.len();
    nodes.push(Node::Leaf {
        label: majority(&counts),
    });

    let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
    if pure || depth >= max_depth || idx.len() < 2 * min_leaf {
        return node_id;
    }

    let Some((feature, threshold)) = best_split(enc, idx, min_leaf, &feature_picker())
    else {
        return node_id;
    };

    let (left_idx, right_idx): (Vec<usize>, Vec<usize>) = idx
        .iter()
        .partition(|&&i| enc.x[i][feature] < threshold);
    let left = build(enc, &left_idx, depth + 1, max_depth, min_leaf, feature_picker, nodes);
    let right = build(enc, &right_idx, depth + 1, max_depth, min_leaf, feature_picker, nodes);
    nodes[node_id] = Node::Split {
        feature,
        threshold,
        left,
        right,
    };
    node_id
}

/// Lowest weighted-Gini split over the candidate features, or `None` when no
/// threshold respects `min_leaf` on both sides.
fn best_split(
    enc: &Encoded,
    idx: &[usize],
    min_leaf: usize,
    features: &[usize],
) -> Option<(usize, f64)> {
    let n = idx.len();
    let mut best: Option<(f64, usize, f64)> = None;

    for &feature in features {
        let mut order: Vec<usize> = idx.to_vec();
        order.sort_by(|&a, &b| {
            enc.x[a][feature]
                .partial_cmp(&enc.x[b][feature])
                .unwrap()
                .then(a.cmp(&b))
        });

        let mut left_counts = vec![0u64; enc.n_classes];
        let mut right_counts = class_counts(
            &order.iter().map(|&i| enc.y[i]).collect::<Vec<_>>(),
            enc.n_classes,
        );

        for pos in 1..n {
            let moved = order[pos - 1];
            left_counts[enc.y[moved]] += 1;
            right_counts[enc.y[moved]] -= 1;

            let prev = enc.x[order[pos - 1]][feature];
            let next = enc.x[order[pos]][feature];
            if prev == next {
                continue; // threshold must sit between distinct values
            }
            if pos < min_leaf || n - pos < min_leaf {
                continue;
            }
            let score = pos as f64 * gini(&left_counts, pos as u64)
                + (n - pos) as f64 * gini(&right_counts, (n - pos) as u64);
            if best.as_ref().is_none_or(|(s, _, _)| score < *s) {
                best = Some((score, feature, 0.5 * (prev + next)));
            }
        }
    }
    best.map(|(_, feature, threshold)| (feature, threshold))
}

fn gini(counts: &[u64], total: u64) -> f64 {
    let t = total as f64;
    1.0 - counts
        .iter()
        .map(|&c| {
            let p = c as f64 / t;
            p * p
        })
        .sum::<f64>()
}

impl TreeModel {
    pub(crate) fn predict(&self, row: &[f64; 4]) -> usize {
        let mut node = 0usize;
        loop {
            match &self.nodes[node] {
                Node::Leaf { label } => return *label,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    node = if row[*feature] < *threshold { *left } else { *right };
                }
            }
        }
    }
}
