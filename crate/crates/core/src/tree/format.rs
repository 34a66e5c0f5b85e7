//! Plain-text model files.
//!
//! ```text
//! saberpro-cart v1
//! meta max_depth=9 label_mean=51.2 trained_rows=4
//! col 0 numeric "punt_sociales"
//! col 3 categorical "estu_genero"
//! (split 0 >= 55 (leaf 2 0) (split 3 == F (leaf 1 0) (leaf 0 1)))
//! ```
//!
//! Leaf gini and success probability are recomputed from the counts on load.

use std::fmt::Write;

use super::{FeatureSpec, Leaf, Model, TreeNode};
use crate::dataset::ColumnKind;
use crate::error::{Error, Result};
use crate::splitter::{ClassCounts, Predicate, Question};

pub const FORMAT_HEADER: &str = "saberpro-cart v1";
const MAGIC: &str = "saberpro-cart";
const VERSION: &str = "v1";

pub fn serialize(model: &Model) -> String {
    let mut out = String::new();
    out.push_str(FORMAT_HEADER);
    out.push('\n');
    let mean = match model.label_mean {
        Some(m) => m.to_string(),
        None => "none".to_string(),
    };
    let _ = writeln!(
        out,
        "meta max_depth={} label_mean={} trained_rows={}",
        model.max_depth, mean, model.trained_rows
    );
    for f in &model.features {
        let _ = writeln!(out, "col {} {} {}", f.index, f.kind, quote(&f.name));
    }
    write_node(&mut out, &model.root);
    out.push('\n');
    out
}

fn write_node(out: &mut String, node: &TreeNode) {
    match node {
        TreeNode::Leaf(leaf) => {
            let _ = write!(
                out,
                "(leaf {} {})",
                leaf.counts.successful, leaf.counts.unsuccessful
            );
        }
        TreeNode::Internal {
            question,
            true_branch,
            false_branch,
        } => {
            let _ = write!(out, "(split {} ", question.col);
            match &question.predicate {
                Predicate::AtLeast(t) => {
                    let _ = write!(out, ">= {t}");
                }
                Predicate::Equals(tok) => {
                    out.push_str("== ");
                    out.push_str(&token(tok));
                }
            }
            out.push(' ');
            write_node(out, true_branch);
            out.push(' ');
            write_node(out, false_branch);
            out.push(')');
        }
    }
}

fn needs_quotes(s: &str) -> bool {
    s.is_empty()
        || s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | '"' | '\\'))
}

fn token(s: &str) -> String {
    if needs_quotes(s) {
        quote(s)
    } else {
        s.to_string()
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn deserialize(text: &str) -> Result<Model> {
    let mut p = Parser { text, pos: 0 };

    // header line
    let magic = p.word()?;
    if magic.text != MAGIC {
        return Err(magic.error(format!("expected {MAGIC:?}")));
    }
    let version = p.word()?;
    if version.text != VERSION {
        return Err(Error::Version {
            found: version.text,
            expected: VERSION.into(),
        });
    }
    p.end_of_line()?;

    // meta line
    p.keyword("meta")?;
    let max_depth = p.field("max_depth")?;
    let max_depth: usize = max_depth.parse_with(|s| s.parse().ok())?;
    let label_mean = p.field("label_mean")?;
    let label_mean = if label_mean.text == "none" {
        None
    } else {
        Some(label_mean.parse_with(|s| s.parse::<f64>().ok().filter(|x| x.is_finite()))?)
    };
    let trained_rows = p.field("trained_rows")?;
    let trained_rows: usize = trained_rows.parse_with(|s| s.parse().ok())?;
    p.end_of_line()?;

    // schema lines
    let mut features: Vec<FeatureSpec> = Vec::new();
    while p.peek_char() != Some('(') {
        p.keyword("col")?;
        let index = p.word()?;
        let index: usize = index.parse_with(|s| s.parse().ok())?;
        let kind = p.word()?;
        let kind = match kind.text.as_str() {
            "numeric" => ColumnKind::Numeric,
            "categorical" => ColumnKind::Categorical,
            _ => return Err(kind.error("expected numeric or categorical")),
        };
        let start = p.pos;
        let name = p.word()?;
        if !name.quoted {
            return Err(p.error_at(start, "column name must be quoted"));
        }
        if features.iter().any(|f| f.index == index) {
            return Err(p.error_at(start, format!("column {index} declared twice")));
        }
        features.push(FeatureSpec {
            index,
            kind,
            name: name.text,
        });
        p.end_of_line()?;
    }

    let root = p.tree(&features)?;
    p.skip_space();
    if p.pos != text.len() {
        return Err(p.error_at(p.pos, "trailing input after tree"));
    }

    let total = root.counts().total();
    if total != trained_rows {
        return Err(p.error_at(
            p.pos,
            format!("leaf counts sum to {total}, meta says trained_rows={trained_rows}"),
        ));
    }
    if root.depth() > max_depth {
        return Err(p.error_at(p.pos, format!("tree is deeper than max_depth={max_depth}")));
    }

    Ok(Model {
        root,
        features,
        max_depth,
        label_mean,
        trained_rows,
    })
}

struct Word {
    text: String,
    quoted: bool,
    start: usize,
}

impl Word {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::ModelParse {
            position: self.start,
            message: format!("{} (found {:?})", message.into(), self.text),
        }
    }

    fn parse_with<T>(&self, f: impl FnOnce(&str) -> Option<T>) -> Result<T> {
        f(&self.text).ok_or_else(|| self.error("invalid value"))
    }
}

struct PendingSplit {
    question: Question,
    true_branch: Option<TreeNode>,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn peek_char(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn error_at(&self, position: usize, message: impl Into<String>) -> Error {
        Error::ModelParse {
            position,
            message: message.into(),
        }
    }

    /// Skip spaces and tabs, but not newlines.
    fn skip_inline_space(&mut self) {
        let trimmed = self.rest().trim_start_matches([' ', '\t']);
        self.pos = self.text.len() - trimmed.len();
    }

    fn skip_space(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn end_of_line(&mut self) -> Result<()> {
        self.skip_inline_space();
        let rest = self.rest();
        if let Some(r) = rest.strip_prefix("\r\n") {
            self.pos = self.text.len() - r.len();
        } else if let Some(r) = rest.strip_prefix('\n') {
            self.pos = self.text.len() - r.len();
        } else {
            return Err(self.error_at(self.pos, "expected end of line"));
        }
        Ok(())
    }

    /// A bare or quoted token on the current line.
    fn word(&mut self) -> Result<Word> {
        self.skip_inline_space();
        let start = self.pos;
        let rest = self.rest();
        if rest.starts_with('"') {
            let mut text = String::new();
            let mut chars = rest.char_indices().skip(1);
            while let Some((i, c)) = chars.next() {
                match c {
                    '"' => {
                        self.pos = start + i + 1;
                        return Ok(Word {
                            text,
                            quoted: true,
                            start,
                        });
                    }
                    '\\' => match chars.next() {
                        Some((_, '"')) => text.push('"'),
                        Some((_, '\\')) => text.push('\\'),
                        Some((_, 'n')) => text.push('\n'),
                        Some((_, 't')) => text.push('\t'),
                        Some((_, 'r')) => text.push('\r'),
                        _ => return Err(self.error_at(start + i, "invalid escape")),
                    },
                    c => text.push(c),
                }
            }
            return Err(self.error_at(start, "unterminated string"));
        }
        let len = rest
            .find(|c: char| c.is_whitespace() || c == '(' || c == ')' || c == '"')
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error_at(start, "expected a token"));
        }
        self.pos += len;
        Ok(Word {
            text: rest[..len].to_string(),
            quoted: false,
            start,
        })
    }

    fn keyword(&mut self, expected: &str) -> Result<()> {
        let w = self.word()?;
        if w.quoted || w.text != expected {
            return Err(w.error(format!("expected {expected:?}")));
        }
        Ok(())
    }

    /// `key=value`, returning the value.
    fn field(&mut self, key: &str) -> Result<Word> {
        let w = self.word()?;
        match w.text.strip_prefix(key).and_then(|r| r.strip_prefix('=')) {
            Some(value) if !w.quoted => Ok(Word {
                text: value.to_string(),
                quoted: false,
                start: w.start + key.len() + 1,
            }),
            _ => Err(w.error(format!("expected {key}=..."))),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_space();
        if self.peek_char() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error_at(self.pos, format!("expected {c:?}")))
        }
    }

    fn count(&mut self) -> Result<usize> {
        self.skip_space();
        let w = self.word()?;
        w.parse_with(|s| s.parse().ok())
    }

    /// Parse the s-expression tree without recursion, so hostile nesting
    /// depth cannot exhaust the stack.
    fn tree(&mut self, features: &[FeatureSpec]) -> Result<TreeNode> {
        let mut stack: Vec<PendingSplit> = Vec::new();
        loop {
            self.expect('(')?;
            self.skip_space();
            let head = self.word()?;
            let mut node = match (head.quoted, head.text.as_str()) {
                (false, "leaf") => {
                    let counts = ClassCounts::new(self.count()?, self.count()?);
                    if counts.total() == 0 {
                        return Err(head.error("leaf with no rows"));
                    }
                    self.expect(')')?;
                    TreeNode::Leaf(Leaf::new(counts))
                }
                (false, "split") => {
                    let question = self.question(features)?;
                    stack.push(PendingSplit {
                        question,
                        true_branch: None,
                    });
                    continue;
                }
                _ => return Err(head.error("expected leaf or split")),
            };
            loop {
                match stack.last_mut() {
                    None => return Ok(node),
                    Some(top) if top.true_branch.is_none() => {
                        top.true_branch = Some(node);
                        break;
                    }
                    Some(_) => {
                        self.expect(')')?;
                        let done = stack.pop().expect("non-empty stack");
                        node = TreeNode::Internal {
                            question: done.question,
                            true_branch: Box::new(done.true_branch.expect("true branch set")),
                            false_branch: Box::new(node),
                        };
                    }
                }
            }
        }
    }

    fn question(&mut self, features: &[FeatureSpec]) -> Result<Question> {
        self.skip_space();
        let col = self.word()?;
        let index: usize = col.parse_with(|s| s.parse().ok())?;
        let spec = features
            .iter()
            .find(|f| f.index == index)
            .ok_or_else(|| col.error("split on a column missing from the schema"))?;
        self.skip_space();
        let op = self.word()?;
        self.skip_space();
        let value = self.word()?;
        let predicate = match (op.text.as_str(), spec.kind) {
            (">=", ColumnKind::Numeric) if !value.quoted => Predicate::AtLeast(
                value.parse_with(|s| s.parse::<f64>().ok().filter(|x| x.is_finite()))?,
            ),
            ("==", ColumnKind::Categorical) => Predicate::Equals(value.text),
            _ => return Err(op.error(format!("operator does not fit a {} column", spec.kind))),
        };
        Ok(Question {
            col: index,
            col_name: spec.name.clone(),
            predicate,
        })
    }
}
