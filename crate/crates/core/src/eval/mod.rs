//! Hold-out evaluation, timing benchmarks and synthetic data.

mod bench;
mod synth;

use std::fmt;
use web_time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::{Label, LabeledDataset};
use crate::error::{Error, Result};
use crate::tree::Model;

pub use self::bench::{bench, bench_sizes, BenchParameter, BenchReport, BenchRow};
pub use self::synth::{synth_generate, PlantedTree, SynthData, SYNTH_LABEL};

pub const DEFAULT_TEST_FRACTION: f64 = 0.3;
pub const DEFAULT_SEED: u64 = 42;

/// Seeded random hold-out split into `(train, test)` row indices, each sorted
/// ascending. The test side has `round(n * fraction)` rows, clamped to
/// `[1, n - 1]`.
pub fn train_test_split(
    labeled: &LabeledDataset,
    test_fraction: f64,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::Argument(format!(
            "test fraction must be in (0, 1), got {test_fraction}"
        )));
    }
    let n = labeled.n_rows();
    if n < 2 {
        return Err(Error::TooSmall(format!(
            "need at least 2 rows to split, have {n}"
        )));
    }
    let n_test = ((n as f64 * test_fraction).round() as usize).clamp(1, n - 1);
    let mut order = labeled.all_rows();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut test = order[..n_test].to_vec();
    let mut train = order[n_test..].to_vec();
    test.sort_unstable();
    train.sort_unstable();
    Ok((train, test))
}

/// Confusion matrix with `successful` as the positive class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Confusion {
    pub true_successful: usize,
    pub false_successful: usize,
    pub true_unsuccessful: usize,
    pub false_unsuccessful: usize,
}

impl Confusion {
    pub fn record(&mut self, predicted: Label, actual: Label) {
        match (predicted, actual) {
            (Label::Successful, Label::Successful) => self.true_successful += 1,
            (Label::Successful, Label::Unsuccessful) => self.false_successful += 1,
            (Label::Unsuccessful, Label::Unsuccessful) => self.true_unsuccessful += 1,
            (Label::Unsuccessful, Label::Successful) => self.false_unsuccessful += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.true_successful + self.false_successful + self.true_unsuccessful + self.false_unsuccessful
    }

    pub fn correct(&self) -> usize {
        self.true_successful + self.true_unsuccessful
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub accuracy: f64,
    pub confusion: Confusion,
    pub n_test: usize,
    pub train_seconds: f64,
    pub test_seconds: f64,
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.confusion;
        writeln!(f, "accuracy      {:.4} ({} / {})", self.accuracy, c.correct(), self.n_test)?;
        writeln!(f, "                      actual successful  actual unsuccessful")?;
        writeln!(
            f,
            "pred successful       {:>17}  {:>19}",
            c.true_successful, c.false_successful
        )?;
        writeln!(
            f,
            "pred unsuccessful     {:>17}  {:>19}",
            c.false_unsuccessful, c.true_unsuccessful
        )?;
        writeln!(f, "train_seconds {:.6}", self.train_seconds)?;
        write!(f, "test_seconds  {:.6}", self.test_seconds)
    }
}

/// Classify every test row and tally the confusion matrix. `train_seconds`
/// is left at zero; [`holdout`] fills it.
pub fn evaluate(model: &Model, test_rows: &[usize], labeled: &LabeledDataset) -> Result<EvalReport> {
    if test_rows.is_empty() {
        return Err(Error::Argument("test set is empty".into()));
    }
    let binding = model.bind(labeled.dataset())?;
    let start = Instant::now();
    let mut confusion = Confusion::default();
    for &i in test_rows {
        let leaf = model.classify_row(labeled.dataset(), i, &binding);
        confusion.record(leaf.prediction(), labeled.label(i));
    }
    let test_seconds = start.elapsed().as_secs_f64();
    Ok(EvalReport {
        accuracy: confusion.correct() as f64 / test_rows.len() as f64,
        confusion,
        n_test: test_rows.len(),
        train_seconds: 0.0,
        test_seconds,
    })
}

/// Split, train on the training side, evaluate on the test side.
pub fn holdout(
    labeled: &LabeledDataset,
    test_fraction: f64,
    seed: u64,
    max_depth: usize,
) -> Result<(Model, EvalReport)> {
    let (train, test) = train_test_split(labeled, test_fraction, seed)?;
    let start = Instant::now();
    let model = Model::fit(labeled, &train, max_depth)?;
    let train_seconds = start.elapsed().as_secs_f64();
    let mut report = evaluate(&model, &test, labeled)?;
    report.train_seconds = train_seconds;
    Ok((model, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{parse_csv, CsvOptions};

    fn labeled(labels: &[&str]) -> LabeledDataset {
        let mut text = String::from("x,y\n");
        for (i, y) in labels.iter().enumerate() {
            text.push_str(&format!("{i},{y}\n"));
        }
        let d = parse_csv(text.as_bytes(), &CsvOptions::default()).unwrap();
        LabeledDataset::from_label_column(&d, "y").unwrap()
    }

    #[test]
    fn split_is_a_partition() {
        let l = labeled(&["successful"; 10]);
        let (train, test) = train_test_split(&l, 0.2, 42).unwrap();
        assert_eq!((train.len(), test.len()), (8, 2));
        let mut all: Vec<_> = train.iter().chain(&test).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..10).collect::<Vec<_>>());
        assert_eq!(train_test_split(&l, 0.2, 42).unwrap(), (train, test));
    }

    #[test]
    fn split_arguments() {
        let l = labeled(&["successful"; 10]);
        assert!(matches!(train_test_split(&l, 1.0, 1), Err(Error::Argument(_))));
        assert!(matches!(train_test_split(&l, 0.0, 1), Err(Error::Argument(_))));
        assert!(matches!(train_test_split(&l, f64::NAN, 1), Err(Error::Argument(_))));
        let one = labeled(&["successful"]);
        assert!(matches!(train_test_split(&one, 0.5, 1), Err(Error::TooSmall(_))));
        // clamped to leave one training row
        let two = labeled(&["successful", "unsuccessful"]);
        let (train, test) = train_test_split(&two, 0.99, 1).unwrap();
        assert_eq!((train.len(), test.len()), (1, 1));
    }

    #[test]
    fn accuracy_counts() {
        let l = labeled(&[
            "successful", "successful", "successful", "successful", "successful",
            "unsuccessful", "unsuccessful", "unsuccessful", "unsuccessful", "unsuccessful",
        ]);
        let rows = l.all_rows();
        // x >= 5 separates perfectly
        let m = Model::fit(&l, &rows, 3).unwrap();
        assert_eq!(evaluate(&m, &rows, &l).unwrap().accuracy, 1.0);

        // a stump predicts unsuccessful on a 50/50 set (tie goes unsuccessful)
        let stump = Model::fit(&l, &rows, 0).unwrap();
        let r = evaluate(&stump, &rows, &l).unwrap();
        assert_eq!(r.accuracy, 0.5);
        assert_eq!(r.confusion.total(), 10);
        assert_eq!(r.confusion.true_unsuccessful, 5);
        assert_eq!(r.confusion.false_unsuccessful, 5);

        assert!(evaluate(&m, &[], &l).is_err());
    }

    #[test]
    fn eight_of_ten() {
        // stump trained on 8 successful / 2 unsuccessful predicts successful
        let mut labels = vec!["successful"; 8];
        labels.extend(["unsuccessful"; 2]);
        let l = labeled(&labels);
        let stump = Model::fit(&l, &l.all_rows(), 0).unwrap();
        let r = evaluate(&stump, &l.all_rows(), &l).unwrap();
        assert_eq!(r.accuracy, 0.8);
        assert_eq!(r.confusion.true_successful, 8);
        assert_eq!(r.confusion.false_successful, 2);
    }
}
