use std::fmt::Write;

use super::{Leaf, Model, TreeNode};

const GREEN: &str = "\x1b[32m";
const RED: &str = "\x1b[31m";
const RESET: &str = "\x1b[0m";

/// Indented text rendering of the tree, one node per line.
///
/// With `color`, leaves predicting success are green and the rest red.
pub fn print_tree(model: &Model, color: bool) -> String {
    let mut out = String::new();
    write_node(&mut out, &model.root, 0, "", color);
    out
}

fn write_node(out: &mut String, node: &TreeNode, indent: usize, prefix: &str, color: bool) {
    for _ in 0..indent {
        out.push_str("  ");
    }
    out.push_str(prefix);
    match node {
        TreeNode::Leaf(leaf) => {
            if color {
                let code = if leaf.p_success > 0.5 { GREEN } else { RED };
                let _ = writeln!(out, "{code}{}{RESET}", leaf_text(leaf));
            } else {
                let _ = writeln!(out, "{}", leaf_text(leaf));
            }
        }
        TreeNode::Internal {
            question,
            true_branch,
            false_branch,
        } => {
            let _ = writeln!(out, "{question}");
            write_node(out, true_branch, indent + 1, "True: ", color);
            write_node(out, false_branch, indent + 1, "False: ", color);
        }
    }
}

fn leaf_text(leaf: &Leaf) -> String {
    format!(
        "Leaf p={:.1}% gini={:.4} counts={}",
        leaf.p_success * 100.0,
        leaf.gini,
        leaf.counts
    )
}
