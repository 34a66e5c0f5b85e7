use std::fmt::Write;
use web_time::Instant;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::tree::{serialize, Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchParameter {
    Depth,
    Rows,
}

impl BenchParameter {
    pub fn as_str(self) -> &'static str {
        match self {
            BenchParameter::Depth => "depth",
            BenchParameter::Rows => "rows",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub value: usize,
    pub train_seconds: f64,
    pub test_seconds: f64,
    /// Size of the serialized model, standing in for memory use.
    pub model_bytes: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub parameter: BenchParameter,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "{},train_seconds,test_seconds,model_bytes\n",
            self.parameter.as_str()
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{:.6},{:.6},{}",
                r.value, r.train_seconds, r.test_seconds, r.model_bytes
            );
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:>8} | {:>13} | {:>12} | {:>11}\n",
            self.parameter.as_str(),
            "train_seconds",
            "test_seconds",
            "model_bytes"
        );
        out.push_str(&format!("{:-<9}+{:-<15}+{:-<14}+{:-<12}\n", "", "", "", ""));
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>8} | {:>13.4} | {:>12.4} | {:>11}",
                r.value, r.train_seconds, r.test_seconds, r.model_bytes
            );
        }
        out
    }
}

/// Train on all rows, then re-classify all rows. Only the training and
/// classification calls are timed.
fn run_point(labeled: &LabeledDataset, rows: &[usize], max_depth: usize, value: usize) -> Result<BenchRow> {
    let start = Instant::now();
    let model = Model::fit(labeled, rows, max_depth)?;
    let train_seconds = start.elapsed().as_secs_f64();

    let binding = model.bind(labeled.dataset())?;
    let start = Instant::now();
    let mut successes = 0usize;
    for &i in rows {
        successes += model.classify_row(labeled.dataset(), i, &binding).p_success.round() as usize;
    }
    let test_seconds = start.elapsed().as_secs_f64();
    std::hint::black_box(successes);

    Ok(BenchRow {
        value,
        train_seconds,
        test_seconds,
        model_bytes: serialize(&model).len(),
    })
}

/// One report row per requested depth, in request order.
pub fn bench(labeled: &LabeledDataset, depths: &[usize]) -> Result<BenchReport> {
    if depths.is_empty() {
        return Err(Error::Argument("no depths requested".into()));
    }
    let rows = labeled.all_rows();
    let points = depths
        .iter()
        .map(|&d| run_point(labeled, &rows, d, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(BenchReport {
        parameter: BenchParameter::Depth,
        rows: points,
    })
}

/// One report row per requested prefix size (the first `n` rows), at a fixed
/// depth.
pub fn bench_sizes(labeled: &LabeledDataset, sizes: &[usize], max_depth: usize) -> Result<BenchReport> {
    if sizes.is_empty() {
        return Err(Error::Argument("no sizes requested".into()));
    }
    let points = sizes
        .iter()
        .map(|&n| {
            if n == 0 || n > labeled.n_rows() {
                return Err(Error::Argument(format!(
                    "size {n} outside 1..={}",
                    labeled.n_rows()
                )));
            }
            let rows: Vec<usize> = (0..n).collect();
            run_point(labeled, &rows, max_depth, n)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BenchReport {
        parameter: BenchParameter::Rows,
        rows: points,
    })
}
