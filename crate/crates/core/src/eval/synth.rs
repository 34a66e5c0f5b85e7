use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::{Dataset, Label, LabeledDataset, Value};
use crate::splitter::Question;

const NUMERIC: [&str; 6] = [
    "punt_sociales",
    "punt_matematicas",
    "punt_lectura",
    "punt_ingles",
    "punt_quimica",
    "punt_biologia",
];

const CATEGORICAL: [(&str, &[&str]); 5] = [
    ("estu_genero", &["F", "M"]),
    ("cole_area_ubicacion", &["URBANO", "RURAL"]),
    (
        "fami_educacion_padre",
        &[
            "Ninguno",
            "Primaria incompleta",
            "Secundaria completa",
            "Tecnica",
            "Profesional",
            "Postgrado",
        ],
    ),
    (
        "fami_estrato",
        &["Estrato 1", "Estrato 2", "Estrato 3", "Estrato 4", "Estrato 5", "Estrato 6"],
    ),
    ("fami_tieneinternet", &["Si", "No"]),
];

/// Name of the label column in generated data.
pub const SYNTH_LABEL: &str = "exito";

/// Per-column probability of a missing cell, by column name.
const MISSING_RATE: [(&str, f64); 2] = [("punt_ingles", 0.03), ("fami_educacion_padre", 0.05)];

/// Ground-truth tree used to label synthetic rows.
#[derive(Debug, Clone, PartialEq)]
pub enum PlantedTree {
    Split {
        question: Question,
        yes: Box<PlantedTree>,
        no: Box<PlantedTree>,
    },
    Leaf(Label),
}

impl PlantedTree {
    pub fn label_of(&self, d: &Dataset, row: usize) -> Label {
        let mut node = self;
        loop {
            match node {
                PlantedTree::Leaf(label) => return *label,
                PlantedTree::Split { question, yes, no } => {
                    node = if question.matches_value(d.cell(row, question.col)) {
                        yes
                    } else {
                        no
                    };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            PlantedTree::Leaf(_) => 0,
            PlantedTree::Split { yes, no, .. } => 1 + yes.depth().max(no.depth()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SynthData {
    pub labeled: LabeledDataset,
    pub planted: PlantedTree,
    /// Labels before noise was applied.
    pub clean_labels: Vec<Label>,
}

/// Exam-like records labeled by a random depth-`planted_depth` tree, with
/// each label flipped with probability `noise`. Deterministic in `seed`.
///
/// Numeric scores are integers in `[0, 100]`; categorical columns draw
/// uniformly from small socioeconomic vocabularies.
pub fn synth_generate(n_rows: usize, planted_depth: usize, noise: f64, seed: u64) -> SynthData {
    assert!((0.0..0.5).contains(&noise), "noise must be in [0, 0.5)");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_features = NUMERIC.len() + CATEGORICAL.len();

    let mut d = Dataset::create(n_rows, n_features + 1).expect("non-zero width");
    let header: Vec<&str> = NUMERIC
        .iter()
        .copied()
        .chain(CATEGORICAL.iter().map(|(name, _)| *name))
        .chain([SYNTH_LABEL])
        .collect();
    d.set_header(header.clone()).expect("unique header");
    let missing_rate: Vec<f64> = header
        .iter()
        .map(|h| {
            MISSING_RATE
                .iter()
                .find(|(name, _)| name == h)
                .map_or(0.0, |(_, p)| *p)
        })
        .collect();

    for i in 0..n_rows {
        let mut row = Vec::with_capacity(n_features + 1);
        for &rate in &missing_rate[..NUMERIC.len()] {
            let score = rng.gen_range(0..=100) as f64;
            row.push(if rng.gen_bool(rate) {
                Value::Missing
            } else {
                Value::Numeric(score)
            });
        }
        for (k, (_, vocab)) in CATEGORICAL.iter().enumerate() {
            let token = vocab.choose(&mut rng).expect("non-empty vocabulary");
            row.push(if rng.gen_bool(missing_rate[NUMERIC.len() + k]) {
                Value::Missing
            } else {
                Value::categorical(*token)
            });
        }
        row.push(Value::Missing);
        d.set_row(i, row).expect("row width");
    }

    let planted = plant(&mut rng, planted_depth, &header);
    let label_col = n_features;
    let mut clean_labels = Vec::with_capacity(n_rows);
    for i in 0..n_rows {
        let clean = planted.label_of(&d, i);
        clean_labels.push(clean);
        let label = if noise > 0.0 && rng.gen_bool(noise) {
            clean.flipped()
        } else {
            clean
        };
        d.set_cell(i, label_col, Value::categorical(label.as_str()));
    }

    let labeled = LabeledDataset::from_label_column(&d, SYNTH_LABEL).expect("labels are class tokens");
    SynthData {
        labeled,
        planted,
        clean_labels,
    }
}

fn plant(rng: &mut ChaCha8Rng, depth: usize, header: &[&str]) -> PlantedTree {
    if depth == 0 {
        return PlantedTree::Leaf(if rng.gen_bool(0.5) {
            Label::Successful
        } else {
            Label::Unsuccessful
        });
    }
    let col = rng.gen_range(0..NUMERIC.len() + CATEGORICAL.len());
    let question = if col < NUMERIC.len() {
        Question::at_least(col, header[col], rng.gen_range(20..=80) as f64)
    } else {
        let vocab = CATEGORICAL[col - NUMERIC.len()].1;
        Question::equals(col, header[col], *vocab.choose(rng).expect("non-empty vocabulary"))
    };
    let (yes, no) = if depth == 1 {
        // sibling leaves disagree so every bottom split matters
        let a = match plant(rng, 0, header) {
            PlantedTree::Leaf(label) => label,
            PlantedTree::Split { .. } => unreachable!(),
        };
        (PlantedTree::Leaf(a), PlantedTree::Leaf(a.flipped()))
    } else {
        (plant(rng, depth - 1, header), plant(rng, depth - 1, header))
    };
    PlantedTree::Split {
        question,
        yes: Box::new(yes),
        no: Box::new(no),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{ColumnKind, Role};

    #[test]
    fn deterministic_in_seed() {
        let a = synth_generate(500, 3, 0.1, 7);
        let b = synth_generate(500, 3, 0.1, 7);
        assert_eq!(a.labeled, b.labeled);
        assert_eq!(a.planted, b.planted);
        let c = synth_generate(500, 3, 0.1, 8);
        assert_ne!(a.labeled, c.labeled);
    }

    #[test]
    fn shape_and_schema() {
        let s = synth_generate(1000, 4, 0.0, 1);
        let d = s.labeled.dataset();
        assert_eq!((d.n_rows(), d.n_cols()), (1000, 12));
        assert_eq!(s.planted.depth(), 4);
        let schema = s.labeled.schema();
        assert_eq!(schema.column(0).kind, ColumnKind::Numeric);
        assert_eq!(schema.column(9).kind, ColumnKind::Categorical);
        assert_eq!(schema.column(11).role, Role::Label);
        for i in 0..d.n_rows() {
            if let Value::Numeric(x) = d.cell(i, 0) {
                assert!((0.0..=100.0).contains(x));
            }
        }
        assert!((0..d.n_rows()).any(|i| d.cell(i, 3).is_missing()));
    }

    #[test]
    fn noise_free_labels_follow_the_planted_tree() {
        let s = synth_generate(400, 3, 0.0, 3);
        for i in 0..400 {
            assert_eq!(s.labeled.label(i), s.planted.label_of(s.labeled.dataset(), i));
        }
        assert_eq!(s.labeled.labels(), s.clean_labels.as_slice());
    }

    #[test]
    fn noise_rate_is_roughly_right() {
        let s = synth_generate(20_000, 2, 0.1, 11);
        let flipped = s
            .labeled
            .labels()
            .iter()
            .zip(&s.clean_labels)
            .filter(|(a, b)| a != b)
            .count();
        let rate = flipped as f64 / 20_000.0;
        assert!((0.09..0.11).contains(&rate), "flip rate {rate}");
    }
}
