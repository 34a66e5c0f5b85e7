use std::collections::BTreeMap;

use super::{Model, TreeNode};
use crate::splitter::{info_gain, ClassCounts};

/// Share of the total row-weighted gain contributed by each split column,
/// sorted by descending weight. Each internal node contributes
/// `node_rows / trained_rows * gain`; the weights sum to 1. A leaf-only model
/// has no entries.
pub fn feature_importance(model: &Model) -> Vec<(String, f64)> {
    let mut raw: BTreeMap<String, f64> = BTreeMap::new();
    let total = model.root.counts().total().max(1) as f64;
    accumulate(&model.root, total, &mut raw);

    let sum: f64 = raw.values().sum();
    if sum <= 0.0 {
        return Vec::new();
    }
    let mut out: Vec<(String, f64)> = raw.into_iter().map(|(k, v)| (k, v / sum)).collect();
    out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    out
}

fn accumulate(node: &TreeNode, total: f64, raw: &mut BTreeMap<String, f64>) -> ClassCounts {
    match node {
        TreeNode::Leaf(leaf) => leaf.counts,
        TreeNode::Internal {
            question,
            true_branch,
            false_branch,
        } => {
            let t = accumulate(true_branch, total, raw);
            let f = accumulate(false_branch, total, raw);
            let here = t + f;
            let weight = here.total() as f64 / total * info_gain(here, t, f);
            *raw.entry(question.col_name.clone()).or_insert(0.0) += weight;
            here
        }
    }
}
