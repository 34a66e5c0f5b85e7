use std::fmt;

use super::{Dataset, Value};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Numeric,
    Categorical,
}

impl ColumnKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ColumnKind::Numeric => "numeric",
            ColumnKind::Categorical => "categorical",
        }
    }
}

impl fmt::Display for ColumnKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Feature,
    Label,
    Ignored,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnSpec {
    pub name: String,
    pub kind: ColumnKind,
    pub role: Role,
}

/// One [`ColumnSpec`] per dataset column, in column order.
#[derive(Debug, Clone, PartialEq)]
pub struct Schema {
    columns: Vec<ColumnSpec>,
    label: usize,
}

impl Schema {
    pub fn new(columns: Vec<ColumnSpec>) -> Result<Schema> {
        let labels: Vec<usize> = columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.role == Role::Label)
            .map(|(j, _)| j)
            .collect();
        match labels.as_slice() {
            [label] => {
                if columns[*label].kind != ColumnKind::Categorical {
                    return Err(Error::Schema("label column must be categorical".into()));
                }
                Ok(Schema {
                    label: *label,
                    columns,
                })
            }
            _ => Err(Error::Schema(format!(
                "expected exactly one label column, found {}",
                labels.len()
            ))),
        }
    }

    pub fn columns(&self) -> &[ColumnSpec] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &ColumnSpec {
        &self.columns[j]
    }

    pub fn label_index(&self) -> usize {
        self.label
    }

    /// Feature columns as `(column index, spec)`, ascending by index.
    pub fn features(&self) -> impl Iterator<Item = (usize, &ColumnSpec)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.role == Role::Feature)
    }
}

/// Decide each column's kind and role.
///
/// A column is numeric when every present cell is numeric and it has at least
/// two distinct values; all-missing columns and columns marked with
/// [`Dataset::ignore_column`] are ignored.
pub fn infer_schema(d: &Dataset, label_column: &str) -> Result<Schema> {
    let label = d.find_column(label_column)?;
    let columns = (0..d.n_cols())
        .map(|j| {
            let name = d.header()[j].clone();
            if j == label {
                return ColumnSpec {
                    name,
                    kind: ColumnKind::Categorical,
                    role: Role::Label,
                };
            }
            let (kind, all_missing) = column_kind(d, j);
            let role = if all_missing || d.is_ignored(j) {
                Role::Ignored
            } else {
                Role::Feature
            };
            ColumnSpec { name, kind, role }
        })
        .collect();
    Schema::new(columns)
}

fn column_kind(d: &Dataset, j: usize) -> (ColumnKind, bool) {
    let mut first: Option<f64> = None;
    let mut distinct = false;
    let mut all_numeric = true;
    let mut all_missing = true;
    for i in 0..d.n_rows() {
        match d.cell(i, j) {
            Value::Missing => {}
            Value::Numeric(x) => {
                all_missing = false;
                match first {
                    None => first = Some(*x),
                    Some(f) if f != *x => distinct = true,
                    Some(_) => {}
                }
            }
            Value::Categorical(_) => {
                all_missing = false;
                all_numeric = false;
            }
        }
    }
    let kind = if all_numeric && distinct {
        ColumnKind::Numeric
    } else {
        ColumnKind::Categorical
    };
    (kind, all_missing)
}
