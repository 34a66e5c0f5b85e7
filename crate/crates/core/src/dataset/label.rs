use std::fmt;
use std::str::FromStr;

use super::{infer_schema, Dataset, Schema, Value};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Successful,
    Unsuccessful,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Successful => "successful",
            Label::Unsuccessful => "unsuccessful",
        }
    }

    pub fn flipped(self) -> Label {
        match self {
            Label::Successful => Label::Unsuccessful,
            Label::Unsuccessful => Label::Successful,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Label> {
        match s {
            "successful" => Ok(Label::Successful),
            "unsuccessful" => Ok(Label::Unsuccessful),
            other => Err(Error::LabelDerivation(format!(
                "{other:?} is not a class label"
            ))),
        }
    }
}

/// A dataset whose label column holds `successful` / `unsuccessful` in every
/// row. The labels are also cached as a [`Label`] vector for counting.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    dataset: Dataset,
    schema: Schema,
    labels: Vec<Label>,
    label_mean: Option<f64>,
    dropped: usize,
}

impl LabeledDataset {
    /// Binarize a numeric score column against its mean: strictly above the
    /// mean is `successful`. The score column is overwritten with the label
    /// tokens and rows with a missing score are dropped.
    pub fn derive(d: &Dataset, score_column: &str) -> Result<LabeledDataset> {
        let col = d.find_column(score_column)?;
        let mut kept = Vec::with_capacity(d.n_rows());
        let mut sum = 0.0;
        for i in 0..d.n_rows() {
            match d.cell(i, col) {
                Value::Numeric(x) => {
                    sum += x;
                    kept.push(i);
                }
                Value::Missing => {}
                Value::Categorical(t) => {
                    return Err(Error::LabelDerivation(format!(
                        "score column {score_column:?} has non-numeric value {t:?} in row {i}"
                    )))
                }
            }
        }
        if kept.is_empty() {
            return Err(Error::LabelDerivation(format!(
                "score column {score_column:?} has no values"
            )));
        }
        let mean = sum / kept.len() as f64;

        let mut out = d.select_rows(&kept)?;
        let mut labels = Vec::with_capacity(kept.len());
        for k in 0..out.n_rows() {
            let score = out.cell(k, col).as_f64().expect("kept rows are numeric");
            let label = if score > mean {
                Label::Successful
            } else {
                Label::Unsuccessful
            };
            out.set_cell(k, col, Value::categorical(label.as_str()));
            labels.push(label);
        }
        let schema = infer_schema(&out, score_column)?;
        Ok(LabeledDataset {
            dataset: out,
            schema,
            labels,
            label_mean: Some(mean),
            dropped: d.n_rows() - kept.len(),
        })
    }

    /// Use a column that already holds class tokens.
    pub fn from_label_column(d: &Dataset, label_column: &str) -> Result<LabeledDataset> {
        let col = d.find_column(label_column)?;
        let labels = (0..d.n_rows())
            .map(|i| match d.cell(i, col) {
                Value::Categorical(t) => t.parse(),
                other => Err(Error::LabelDerivation(format!(
                    "row {i} of {label_column:?} holds {other:?}, not a class label"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LabeledDataset {
            dataset: d.clone(),
            schema: infer_schema(d, label_column)?,
            labels,
            label_mean: None,
            dropped: 0,
        })
    }

    /// Derive labels from a numeric score column, or read them directly if
    /// the column already holds class tokens.
    pub fn prepare(d: &Dataset, column: &str) -> Result<LabeledDataset> {
        let col = d.find_column(column)?;
        let has_text = (0..d.n_rows()).any(|i| matches!(d.cell(i, col), Value::Categorical(_)));
        if has_text {
            LabeledDataset::from_label_column(d, column)
        } else {
            LabeledDataset::derive(d, column)
        }
    }

    pub fn dataset(&self) -> &Dataset {
        &self.dataset
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, row: usize) -> Label {
        self.labels[row]
    }

    /// Mean score used for binarization; `None` when labels were given.
    pub fn label_mean(&self) -> Option<f64> {
        self.label_mean
    }

    /// Rows removed because their score was missing.
    pub fn dropped(&self) -> usize {
        self.dropped
    }

    pub fn all_rows(&self) -> Vec<usize> {
        (0..self.n_rows()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{parse_csv, ColumnKind, CsvOptions, Role};

    fn ds(text: &str) -> Dataset {
        parse_csv(text.as_bytes(), &CsvOptions::default()).unwrap()
    }

    #[test]
    fn mean_threshold_is_strict() {
        let l = LabeledDataset::derive(&ds("x,score\n1,10\n2,20\n3,30\n"), "score").unwrap();
        assert_eq!(l.label_mean(), Some(20.0));
        assert_eq!(
            l.labels(),
            &[Label::Unsuccessful, Label::Unsuccessful, Label::Successful]
        );
        assert_eq!(l.dataset().get(2, 1).unwrap(), &Value::categorical("successful"));
        let spec = l.schema().column(1);
        assert_eq!((spec.kind, spec.role), (ColumnKind::Categorical, Role::Label));
    }

    #[test]
    fn two_point_mean() {
        let l = LabeledDataset::derive(&ds("x,score\n1,0\n2,100\n"), "score").unwrap();
        assert_eq!(l.label_mean(), Some(50.0));
        assert_eq!(l.labels(), &[Label::Unsuccessful, Label::Successful]);
    }

    #[test]
    fn all_equal_scores_are_unsuccessful() {
        let l = LabeledDataset::derive(&ds("x,score\n1,7\n2,7\n3,7\n"), "score").unwrap();
        assert!(l.labels().iter().all(|&y| y == Label::Unsuccessful));
    }

    #[test]
    fn missing_scores_are_dropped() {
        let l = LabeledDataset::derive(&ds("x,score\n1,10\n2,\n3,30\n4,NA\n"), "score").unwrap();
        assert_eq!(l.n_rows(), 2);
        assert_eq!(l.dropped(), 2);
        assert_eq!(l.label_mean(), Some(20.0));
        assert_eq!(l.dataset().get(1, 0).unwrap(), &Value::Numeric(3.0));
    }

    #[test]
    fn derivation_errors() {
        assert!(matches!(
            LabeledDataset::derive(&ds("x,score\n1,F\n2,3\n"), "score"),
            Err(Error::LabelDerivation(_))
        ));
        assert!(matches!(
            LabeledDataset::derive(&ds("x,score\n1,\n2,NA\n"), "score"),
            Err(Error::LabelDerivation(_))
        ));
        assert!(matches!(
            LabeledDataset::derive(&ds("x,score\n1,2\n"), "nope"),
            Err(Error::ColumnNotFound(_))
        ));
    }

    #[test]
    fn prepare_accepts_class_tokens() {
        let l = LabeledDataset::prepare(&ds("x,y\n1,successful\n2,unsuccessful\n"), "y").unwrap();
        assert_eq!(l.labels(), &[Label::Successful, Label::Unsuccessful]);
        assert_eq!(l.label_mean(), None);
        assert!(LabeledDataset::prepare(&ds("x,y\n1,maybe\n"), "y").is_err());
    }
}
