//! CART classification trees for tabular exam records.
//!
//! Records are loaded into a fixed-shape [`Dataset`], a numeric score column
//! is binarized against its mean into `successful` / `unsuccessful`, and a
//! depth-limited binary tree is grown by exhaustive Gini-gain search.
//!
//! ```
//! use saberpro_cart::{parse_csv, CsvOptions, LabeledDataset, Model};
//!
//! let csv = "punt_sociales,punt_global\n60,80\n55,75\n40,30\n30,20\n";
//! let data = parse_csv(csv.as_bytes(), &CsvOptions::default()).unwrap();
//! let labeled = LabeledDataset::derive(&data, "punt_global").unwrap();
//! let model = Model::fit(&labeled, &labeled.all_rows(), 3).unwrap();
//! assert_eq!(model.root.n_leaves(), 2);
//! ```

pub mod cli;
pub mod dataset;
pub mod error;
pub mod eval;
pub mod splitter;
pub mod tree;

pub use dataset::{
    infer_schema, load_csv, parse_csv, write_csv, ColumnKind, ColumnSpec, CsvOptions, Dataset, Label,
    LabeledDataset, Role, Schema, Value,
};
pub use error::{Error, Result};
pub use eval::{bench, evaluate, holdout, synth_generate, train_test_split, BenchReport, EvalReport};
pub use splitter::{best_split, class_counts, gini, info_gain, ClassCounts, Predicate, Question, SplitResult};
pub use tree::{
    build_tree, deserialize, feature_importance, predict, print_tree, serialize, Leaf, Model, TreeNode,
};
