//! Depth-limited recursive tree construction and classification.

mod format;
mod importance;
mod print;

use crate::dataset::{ColumnKind, Dataset, Label, LabeledDataset, Value};
use crate::error::{Error, Result};
use crate::splitter::{best_split, class_counts, gini, ClassCounts, Question};

pub use self::format::{deserialize, serialize, FORMAT_HEADER};
pub use self::importance::feature_importance;
pub use self::print::print_tree;

/// Depth used when none is given.
pub const DEFAULT_MAX_DEPTH: usize = 9;

#[derive(Debug, Clone, PartialEq)]
pub struct Leaf {
    pub counts: ClassCounts,
    pub gini: f64,
    pub p_success: f64,
}

impl Leaf {
    pub fn new(counts: ClassCounts) -> Leaf {
        Leaf {
            counts,
            gini: gini(counts),
            p_success: counts.p_success(),
        }
    }

    pub fn prediction(&self) -> Label {
        predict(self.p_success)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode {
    Internal {
        question: Question,
        true_branch: Box<TreeNode>,
        false_branch: Box<TreeNode>,
    },
    Leaf(Leaf),
}

impl TreeNode {
    /// Class counts summed over every leaf below this node.
    pub fn counts(&self) -> ClassCounts {
        match self {
            TreeNode::Leaf(leaf) => leaf.counts,
            TreeNode::Internal {
                true_branch,
                false_branch,
                ..
            } => true_branch.counts() + false_branch.counts(),
        }
    }

    /// Longest root-to-leaf path, in edges.
    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf(_) => 0,
            TreeNode::Internal {
                true_branch,
                false_branch,
                ..
            } => 1 + true_branch.depth().max(false_branch.depth()),
        }
    }

    pub fn n_leaves(&self) -> usize {
        match self {
            TreeNode::Leaf(_) => 1,
            TreeNode::Internal {
                true_branch,
                false_branch,
                ..
            } => true_branch.n_leaves() + false_branch.n_leaves(),
        }
    }

    pub fn leaves(&self) -> Vec<&Leaf> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            match node {
                TreeNode::Leaf(leaf) => out.push(leaf),
                TreeNode::Internal {
                    true_branch,
                    false_branch,
                    ..
                } => {
                    stack.push(false_branch);
                    stack.push(true_branch);
                }
            }
        }
        out
    }
}

/// Grow a tree over `rows`. A node becomes a leaf once `depth` reaches
/// `max_depth` or no question has positive gain.
pub fn build_tree(
    rows: &[usize],
    labeled: &LabeledDataset,
    depth: usize,
    max_depth: usize,
) -> TreeNode {
    assert!(!rows.is_empty(), "cannot build a tree over zero rows");
    if depth >= max_depth {
        return TreeNode::Leaf(Leaf::new(class_counts(rows, labeled)));
    }
    match best_split(rows, labeled) {
        None => TreeNode::Leaf(Leaf::new(class_counts(rows, labeled))),
        Some(split) => {
            let true_branch = build_tree(&split.true_rows, labeled, depth + 1, max_depth);
            let false_branch = build_tree(&split.false_rows, labeled, depth + 1, max_depth);
            TreeNode::Internal {
                question: split.question,
                true_branch: Box::new(true_branch),
                false_branch: Box::new(false_branch),
            }
        }
    }
}

/// `successful` only when strictly more than half of the leaf succeeded.
pub fn predict(p_success: f64) -> Label {
    if p_success > 0.5 {
        Label::Successful
    } else {
        Label::Unsuccessful
    }
}

/// A feature column the model was trained on.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSpec {
    pub index: usize,
    pub kind: ColumnKind,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub root: TreeNode,
    pub features: Vec<FeatureSpec>,
    pub max_depth: usize,
    /// Mean score used to derive the labels, when they were derived.
    pub label_mean: Option<f64>,
    pub trained_rows: usize,
}

impl Model {
    pub fn fit(labeled: &LabeledDataset, rows: &[usize], max_depth: usize) -> Result<Model> {
        if rows.is_empty() {
            return Err(Error::Argument("cannot train on zero rows".into()));
        }
        let root = build_tree(rows, labeled, 0, max_depth);
        let features = labeled
            .schema()
            .features()
            .map(|(index, spec)| FeatureSpec {
                index,
                kind: spec.kind,
                name: spec.name.clone(),
            })
            .collect();
        Ok(Model {
            root,
            features,
            max_depth,
            label_mean: labeled.label_mean(),
            trained_rows: rows.len(),
        })
    }

    pub fn feature(&self, index: usize) -> Option<&FeatureSpec> {
        self.features.iter().find(|f| f.index == index)
    }

    /// Walk from the root to a leaf, reading cells through `value_of`, which
    /// maps a training column index to the record's value.
    pub fn classify<'v, F>(&self, value_of: F) -> &Leaf
    where
        F: Fn(usize) -> &'v Value,
    {
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf(leaf) => return leaf,
                TreeNode::Internal {
                    question,
                    true_branch,
                    false_branch,
                } => {
                    node = if question.matches_value(value_of(question.col)) {
                        true_branch
                    } else {
                        false_branch
                    };
                }
            }
        }
    }

    /// Resolve every feature column of the model by name in `d`.
    pub fn bind(&self, d: &Dataset) -> Result<Binding> {
        let width = self.features.iter().map(|f| f.index + 1).max().unwrap_or(0);
        let mut columns = vec![usize::MAX; width];
        for f in &self.features {
            columns[f.index] = d.find_column(&f.name).map_err(|_| {
                Error::SchemaMismatch(format!("data has no column {:?} required by the model", f.name))
            })?;
        }
        Ok(Binding { columns })
    }

    pub fn classify_row<'m>(&'m self, d: &Dataset, row: usize, binding: &Binding) -> &'m Leaf {
        self.classify(|col| d.cell(row, binding.columns[col]))
    }
}

/// Model column index → data column index, produced by [`Model::bind`].
#[derive(Debug, Clone)]
pub struct Binding {
    columns: Vec<usize>,
}
