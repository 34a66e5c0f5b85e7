//! Shared fixtures for the integration suites: random small datasets, random
//! models, and a brute-force split enumerator that shares no code with the
//! library's search.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use saberpro_cart::dataset::ColumnKind;
use saberpro_cart::tree::FeatureSpec;
use saberpro_cart::{ClassCounts, Dataset, Label, LabeledDataset, Leaf, Model, Predicate, Question, TreeNode, Value};

pub const TOKENS: [&str; 4] = ["a", "b", "c", "d e"];

/// Up to `max_rows` rows and `max_features` mixed-kind feature columns, plus a
/// trailing `y` label column. Cells are missing with probability 0.15.
pub fn random_dataset<R: Rng>(rng: &mut R, max_rows: usize, max_features: usize) -> LabeledDataset {
    let n_rows = rng.gen_range(1..=max_rows);
    let n_features = rng.gen_range(1..=max_features);
    let numeric: Vec<bool> = (0..n_features).map(|_| rng.gen_bool(0.5)).collect();
    let mut d = Dataset::create(n_rows, n_features + 1).unwrap();
    let mut header: Vec<String> = (0..n_features).map(|j| format!("f{j}")).collect();
    header.push("y".into());
    d.set_header(header).unwrap();
    for i in 0..n_rows {
        let mut row = Vec::new();
        for &is_num in &numeric {
            row.push(if rng.gen_bool(0.15) {
                Value::Missing
            } else if is_num {
                Value::Numeric(rng.gen_range(0..=5) as f64)
            } else {
                Value::categorical(*TOKENS.choose(rng).unwrap())
            });
        }
        let label = if rng.gen_bool(0.5) { "successful" } else { "unsuccessful" };
        row.push(Value::categorical(label));
        d.set_row(i, row).unwrap();
    }
    LabeledDataset::from_label_column(&d, "y").unwrap()
}

fn oracle_gini(s: usize, u: usize) -> f64 {
    let total = s + u;
    if total == 0 {
        return 0.0;
    }
    let t = total as f64;
    let ps = s as f64 / t;
    let pu = u as f64 / t;
    1.0 - (ps * ps + pu * pu)
}

fn oracle_token(v: &Value) -> String {
    match v {
        Value::Numeric(x) => format!("{x}"),
        Value::Categorical(t) => t.clone(),
        Value::Missing => "?".into(),
    }
}

fn oracle_answer(v: &Value, p: &Predicate) -> bool {
    match p {
        Predicate::AtLeast(t) => matches!(v, Value::Numeric(x) if *x >= *t),
        Predicate::Equals(tok) => oracle_token(v) == *tok,
    }
}

pub struct OracleSplit {
    pub gain: f64,
    pub col: usize,
    pub predicate: Predicate,
    pub true_rows: Vec<usize>,
    pub false_rows: Vec<usize>,
}

/// Evaluate every question by partitioning and counting from scratch; keep
/// the first maximum in (column, candidate) order.
pub fn brute_force_best_split(rows: &[usize], labeled: &LabeledDataset) -> Option<OracleSplit> {
    let d = labeled.dataset();
    let count = |rs: &[usize]| {
        let s = rs.iter().filter(|&&i| labeled.label(i) == Label::Successful).count();
        (s, rs.len() - s)
    };
    let (ps, pu) = count(rows);
    let n = rows.len() as f64;
    let mut best: Option<OracleSplit> = None;

    for (col, spec) in labeled.schema().features() {
        let mut candidates: Vec<Predicate> = Vec::new();
        match spec.kind {
            ColumnKind::Numeric => {
                let mut vals: Vec<f64> = Vec::new();
                for &i in rows {
                    if let Value::Numeric(x) = d.get(i, col).unwrap() {
                        if !vals.contains(x) {
                            vals.push(*x);
                        }
                    }
                }
                vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
                candidates.extend(vals.into_iter().map(Predicate::AtLeast));
            }
            ColumnKind::Categorical => {
                let mut toks: Vec<String> = Vec::new();
                for &i in rows {
                    let t = oracle_token(d.get(i, col).unwrap());
                    if !toks.contains(&t) {
                        toks.push(t);
                    }
                }
                candidates.extend(toks.into_iter().map(Predicate::Equals));
            }
        }
        for predicate in candidates {
            let (t_rows, f_rows): (Vec<usize>, Vec<usize>) = rows
                .iter()
                .partition(|&&i| oracle_answer(d.get(i, col).unwrap(), &predicate));
            let (ts, tu) = count(&t_rows);
            let (fs, fu) = count(&f_rows);
            let gain = oracle_gini(ps, pu)
                - (t_rows.len() as f64 / n) * oracle_gini(ts, tu)
                - (f_rows.len() as f64 / n) * oracle_gini(fs, fu);
            if best.as_ref().is_none_or(|b| gain > b.gain) {
                best = Some(OracleSplit {
                    gain,
                    col,
                    predicate,
                    true_rows: t_rows,
                    false_rows: f_rows,
                });
            }
        }
    }
    best.filter(|b| b.gain > 1e-12)
}

const NAMES: [&str; 6] = ["punt_sociales", "estu genero", "q\"uote", "back\\slash", "ñandú", "(paren)"];
const VALUE_TOKENS: [&str; 7] = ["F", "Estrato 2", "", "?", "(leaf", "tab\there", "12"];

/// A structurally valid model with arbitrary names, tokens and thresholds.
pub fn random_model<R: Rng>(rng: &mut R) -> Model {
    let n_features = rng.gen_range(1..=5);
    let mut indices: Vec<usize> = (0..12).collect();
    indices.shuffle(rng);
    let features: Vec<FeatureSpec> = indices[..n_features]
        .iter()
        .enumerate()
        .map(|(k, &index)| FeatureSpec {
            index,
            kind: if rng.gen_bool(0.5) {
                ColumnKind::Numeric
            } else {
                ColumnKind::Categorical
            },
            name: format!("{}{k}", NAMES.choose(rng).unwrap()),
        })
        .collect();
    let depth_budget = rng.gen_range(0..=6);
    let root = random_node(rng, &features, depth_budget);
    let depth = root.depth();
    let trained_rows = root.counts().total();
    Model {
        root,
        features,
        max_depth: depth + rng.gen_range(0..=3),
        label_mean: if rng.gen_bool(0.7) {
            Some(rng.gen_range(-1e3..1e3))
        } else {
            None
        },
        trained_rows,
    }
}

fn random_node<R: Rng>(rng: &mut R, features: &[FeatureSpec], budget: usize) -> TreeNode {
    if budget == 0 || rng.gen_bool(0.3) {
        let s = rng.gen_range(0..30);
        let u = rng.gen_range(if s == 0 { 1 } else { 0 }..30);
        return TreeNode::Leaf(Leaf::new(ClassCounts::new(s, u)));
    }
    let f = features.choose(rng).unwrap();
    let predicate = match f.kind {
        ColumnKind::Numeric => Predicate::AtLeast(match rng.gen_range(0..3) {
            0 => rng.gen_range(0..=100) as f64,
            1 => rng.gen_range(-1e9..1e9),
            _ => 0.1 + 0.2,
        }),
        ColumnKind::Categorical => Predicate::Equals(VALUE_TOKENS.choose(rng).unwrap().to_string()),
    };
    TreeNode::Internal {
        question: Question {
            col: f.index,
            col_name: f.name.clone(),
            predicate,
        },
        true_branch: Box::new(random_node(rng, features, budget - 1)),
        false_branch: Box::new(random_node(rng, features, budget - 1)),
    }
}

/// Route `rows` through the tree and check, at every node, that the rows
/// reaching it equal the counts stored below it. Returns the deepest path.
pub fn check_conservation(
    node: &TreeNode,
    rows: &[usize],
    labeled: &LabeledDataset,
    depth: usize,
) -> Result<usize, String> {
    let mut reached = ClassCounts::default();
    for &i in rows {
        reached.record(labeled.label(i));
    }
    if node.counts() != reached {
        return Err(format!(
            "node at depth {depth}: stored {} but {} rows reach it",
            node.counts(),
            reached
        ));
    }
    match node {
        TreeNode::Leaf(_) => Ok(depth),
        TreeNode::Internal {
            question,
            true_branch,
            false_branch,
        } => {
            let (t, f): (Vec<usize>, Vec<usize>) =
                rows.iter().partition(|&&i| question.matches(i, labeled));
            let a = check_conservation(true_branch, &t, labeled, depth + 1)?;
            let b = check_conservation(false_branch, &f, labeled, depth + 1)?;
            Ok(a.max(b))
        }
    }
}
