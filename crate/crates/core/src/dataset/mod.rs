//! Row-major matrix of people × attributes, plus CSV ingestion, schema
//! inference and label derivation.
//!
//! The matrix is allocated once at its final size and then filled row by row,
//! so loading never grows a buffer incrementally. The header is kept apart
//! from the cells: data rows are indexed from 0.

mod csv_io;
mod label;
mod schema;

use std::borrow::Cow;
use std::collections::BTreeSet;
use std::fmt;

pub use self::csv_io::{load_csv, parse_csv, write_csv, CsvOptions};
pub use self::label::{Label, LabeledDataset};
pub use self::schema::{infer_schema, ColumnKind, ColumnSpec, Role, Schema};

use crate::error::{Error, Result};

/// Token that stands for a missing value in categorical comparisons.
pub const MISSING_TOKEN: &str = "?";

/// A single cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    /// Always finite.
    Numeric(f64),
    /// Always non-empty.
    Categorical(String),
    Missing,
}

impl Value {
    /// Build a numeric value, rejecting NaN and infinities.
    pub fn numeric(x: f64) -> Option<Value> {
        x.is_finite().then_some(Value::Numeric(x))
    }

    /// Build a categorical value; the empty string becomes `Missing`.
    pub fn categorical(token: impl Into<String>) -> Value {
        let token = token.into();
        if token.is_empty() {
            Value::Missing
        } else {
            Value::Categorical(token)
        }
    }

    /// Classify a raw text field: empty and `NA` are missing, finite reals
    /// are numeric, everything else is categorical.
    pub fn parse(field: &str) -> Value {
        let field = field.trim();
        if field.is_empty() || field == "NA" {
            return Value::Missing;
        }
        match field.parse::<f64>() {
            Ok(x) if x.is_finite() => Value::Numeric(x),
            _ => Value::Categorical(field.to_string()),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Numeric(x) => Some(*x),
            _ => None,
        }
    }

    pub fn is_missing(&self) -> bool {
        matches!(self, Value::Missing)
    }

    /// The token used when this value is compared against a categorical
    /// question. Missing values compare as [`MISSING_TOKEN`].
    pub fn token(&self) -> Cow<'_, str> {
        match self {
            Value::Numeric(x) => Cow::Owned(x.to_string()),
            Value::Categorical(t) => Cow::Borrowed(t),
            Value::Missing => Cow::Borrowed(MISSING_TOKEN),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Numeric(x) => write!(f, "{x}"),
            Value::Categorical(t) => f.write_str(t),
            Value::Missing => f.write_str("NA"),
        }
    }
}

/// Fixed-shape grid of [`Value`]s with a named header.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    n_rows: usize,
    n_cols: usize,
    header: Vec<String>,
    cells: Vec<Value>,
    ignored: BTreeSet<usize>,
}

impl Dataset {
    /// Allocate an `n_rows × n_cols` matrix filled with numeric zero.
    pub fn create(n_rows: usize, n_cols: usize) -> Result<Dataset> {
        if n_cols == 0 {
            return Err(Error::InvalidShape(
                "a dataset needs at least one column".into(),
            ));
        }
        let len = n_rows
            .checked_mul(n_cols)
            .ok_or_else(|| Error::InvalidShape(format!("{n_rows}x{n_cols} overflows")))?;
        Ok(Dataset {
            n_rows,
            n_cols,
            header: (0..n_cols).map(|j| format!("col{j}")).collect(),
            cells: vec![Value::Numeric(0.0); len],
            ignored: BTreeSet::new(),
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    /// Replace the placeholder header. Names must be unique and non-empty.
    pub fn set_header<S: Into<String>>(&mut self, names: Vec<S>) -> Result<()> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != self.n_cols {
            return Err(Error::RowLength {
                got: names.len(),
                expected: self.n_cols,
            });
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if name.is_empty() {
                return Err(Error::Schema("empty column name in header".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::Schema(format!("duplicate column name {name:?}")));
            }
        }
        self.header = names;
        Ok(())
    }

    /// Overwrite row `i` in place.
    pub fn set_row(&mut self, i: usize, row: Vec<Value>) -> Result<()> {
        if i >= self.n_rows {
            return Err(self.out_of_bounds(i, 0));
        }
        if row.len() != self.n_cols {
            return Err(Error::RowLength {
                got: row.len(),
                expected: self.n_cols,
            });
        }
        let start = i * self.n_cols;
        for (slot, value) in self.cells[start..start + self.n_cols].iter_mut().zip(row) {
            *slot = value;
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Result<&Value> {
        if i >= self.n_rows || j >= self.n_cols {
            return Err(self.out_of_bounds(i, j));
        }
        Ok(&self.cells[i * self.n_cols + j])
    }

    /// Unchecked-by-`Result` access for hot loops; panics when out of range.
    #[inline]
    pub fn cell(&self, i: usize, j: usize) -> &Value {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        &self.cells[i * self.n_cols + j]
    }

    /// All cells of one person.
    pub fn row(&self, i: usize) -> Result<&[Value]> {
        if i >= self.n_rows {
            return Err(self.out_of_bounds(i, 0));
        }
        let start = i * self.n_cols;
        Ok(&self.cells[start..start + self.n_cols])
    }

    pub(crate) fn set_cell(&mut self, i: usize, j: usize, value: Value) {
        self.cells[i * self.n_cols + j] = value;
    }

    /// Index of the first header entry equal to `name` (case-sensitive).
    pub fn find_column(&self, name: &str) -> Result<usize> {
        self.header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::ColumnNotFound(name.to_string()))
    }

    /// Mark a column so schema inference gives it the `ignored` role.
    pub fn ignore_column(&mut self, name: &str) -> Result<()> {
        let j = self.find_column(name)?;
        self.ignored.insert(j);
        Ok(())
    }

    pub fn is_ignored(&self, j: usize) -> bool {
        self.ignored.contains(&j)
    }

    /// Copy of the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Dataset> {
        let mut out = Dataset::create(rows.len(), self.n_cols)?;
        out.header = self.header.clone();
        out.ignored = self.ignored.clone();
        for (k, &i) in rows.iter().enumerate() {
            out.set_row(k, self.row(i)?.to_vec())?;
        }
        Ok(out)
    }

    fn out_of_bounds(&self, row: usize, col: usize) -> Error {
        Error::OutOfBounds {
            row,
            col,
            n_rows: self.n_rows,
            n_cols: self.n_cols,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(s: &str) -> Value {
        Value::categorical(s)
    }

    #[test]
    fn create_fills_with_zero() {
        let d = Dataset::create(3, 2).unwrap();
        assert_eq!((d.n_rows(), d.n_cols()), (3, 2));
        for i in 0..3 {
            for j in 0..2 {
                assert_eq!(d.get(i, j).unwrap(), &Value::Numeric(0.0));
            }
        }
        assert_eq!(d.header(), &["col0", "col1"]);
    }

    #[test]
    fn create_empty_and_zero_columns() {
        let d = Dataset::create(0, 5).unwrap();
        assert_eq!((d.n_rows(), d.n_cols()), (0, 5));
        assert!(matches!(Dataset::create(3, 0), Err(Error::InvalidShape(_))));
        assert_eq!(Dataset::create(2, 2).unwrap().get(1, 1).unwrap(), &Value::Numeric(0.0));
    }

    #[test]
    fn set_row_then_get() {
        let mut d = Dataset::create(2, 2).unwrap();
        d.set_row(0, vec![Value::Numeric(52.0), cat("F")]).unwrap();
        assert_eq!(d.get(0, 0).unwrap(), &Value::Numeric(52.0));
        assert_eq!(d.get(0, 1).unwrap(), &cat("F"));
        assert_eq!(d.get(1, 0).unwrap(), &Value::Numeric(0.0));
    }

    #[test]
    fn set_row_errors() {
        let mut d = Dataset::create(3, 2).unwrap();
        assert!(matches!(
            d.set_row(5, vec![Value::Missing, Value::Missing]),
            Err(Error::OutOfBounds { row: 5, .. })
        ));
        assert!(matches!(
            d.set_row(0, vec![Value::Missing]),
            Err(Error::RowLength { got: 1, expected: 2 })
        ));
        assert!(matches!(d.get(3, 0), Err(Error::OutOfBounds { .. })));
        assert!(matches!(d.get(0, 2), Err(Error::OutOfBounds { .. })));
    }

    #[test]
    fn find_column_scans_header() {
        let mut d = Dataset::create(1, 2).unwrap();
        d.set_header(vec!["nombre", "punt_matematicas"]).unwrap();
        assert_eq!(d.find_column("punt_matematicas").unwrap(), 1);
        assert_eq!(d.find_column("nombre").unwrap(), 0);
        match d.find_column("edad") {
            Err(Error::ColumnNotFound(name)) => assert_eq!(name, "edad"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn header_must_be_unique_and_non_empty() {
        let mut d = Dataset::create(1, 2).unwrap();
        assert!(matches!(d.set_header(vec!["a", "a"]), Err(Error::Schema(_))));
        assert!(matches!(d.set_header(vec!["a", ""]), Err(Error::Schema(_))));
    }

    #[test]
    fn value_parse_rules() {
        assert_eq!(Value::parse("52"), Value::Numeric(52.0));
        assert_eq!(Value::parse(" 4.5 "), Value::Numeric(4.5));
        assert_eq!(Value::parse(""), Value::Missing);
        assert_eq!(Value::parse("NA"), Value::Missing);
        assert_eq!(Value::parse("F"), cat("F"));
        // non-finite reals are text, never numbers
        assert_eq!(Value::parse("NaN"), cat("NaN"));
        assert_eq!(Value::parse("inf"), cat("inf"));
        assert_eq!(Value::numeric(f64::NAN), None);
        assert_eq!(Value::categorical(""), Value::Missing);
    }

    #[test]
    fn tokens() {
        assert_eq!(Value::Numeric(5.0).token(), "5");
        assert_eq!(cat("Estrato 2").token(), "Estrato 2");
        assert_eq!(Value::Missing.token(), MISSING_TOKEN);
    }
}
