//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Every exported function returns a JSON string; the page parses it and
//! draws the tree, the importance bars and the accuracy-vs-depth curve.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use saberpro_cart::eval::{evaluate, synth_generate, train_test_split, SynthData};
use saberpro_cart::{
    feature_importance, parse_csv, print_tree, serialize, CsvOptions, LabeledDataset, Model, Result,
};

/// Upper bound on generated rows so the page stays responsive.
pub const MAX_ROWS: usize = 50_000;
const TEST_FRACTION: f64 = 0.3;

#[derive(Debug, Serialize)]
pub struct FitReport {
    pub tree: String,
    pub model: String,
    pub depth: usize,
    pub leaves: usize,
    pub train_rows: usize,
    pub test_rows: usize,
    pub train_accuracy: f64,
    pub test_accuracy: f64,
    /// Accuracy of the generating tree on the same test rows, when known.
    pub planted_test_accuracy: Option<f64>,
    pub importance: Vec<(String, f64)>,
}

#[derive(Debug, Serialize)]
pub struct CurvePoint {
    pub depth: usize,
    pub leaves: usize,
    pub train_accuracy: f64,
    pub test_accuracy: f64,
}

fn fit(labeled: &LabeledDataset, max_depth: usize, seed: u64, planted: Option<&SynthData>) -> Result<FitReport> {
    let (train, test) = train_test_split(labeled, TEST_FRACTION, seed)?;
    let model = Model::fit(labeled, &train, max_depth)?;
    let train_accuracy = evaluate(&model, &train, labeled)?.accuracy;
    let test_accuracy = evaluate(&model, &test, labeled)?.accuracy;
    let planted_test_accuracy = planted.map(|s| {
        let d = s.labeled.dataset();
        let hits = test
            .iter()
            .filter(|&&i| s.planted.label_of(d, i) == labeled.label(i))
            .count();
        hits as f64 / test.len() as f64
    });
    Ok(FitReport {
        tree: print_tree(&model, false),
        model: serialize(&model),
        depth: model.root.depth(),
        leaves: model.root.n_leaves(),
        train_rows: train.len(),
        test_rows: test.len(),
        train_accuracy,
        test_accuracy,
        planted_test_accuracy,
        importance: feature_importance(&model),
    })
}

pub fn fit_synthetic_report(
    rows: usize,
    planted_depth: usize,
    noise: f64,
    max_depth: usize,
    seed: u64,
) -> Result<FitReport> {
    let data = synth_generate(rows.clamp(2, MAX_ROWS), planted_depth, noise.clamp(0.0, 0.49), seed);
    fit(&data.labeled, max_depth, seed, Some(&data))
}

pub fn depth_curve_points(
    rows: usize,
    planted_depth: usize,
    noise: f64,
    seed: u64,
    max_depth: usize,
) -> Result<Vec<CurvePoint>> {
    let data = synth_generate(rows.clamp(2, MAX_ROWS), planted_depth, noise.clamp(0.0, 0.49), seed);
    let labeled = &data.labeled;
    let (train, test) = train_test_split(labeled, TEST_FRACTION, seed)?;
    (0..=max_depth)
        .map(|depth| {
            let model = Model::fit(labeled, &train, depth)?;
            Ok(CurvePoint {
                depth,
                leaves: model.root.n_leaves(),
                train_accuracy: evaluate(&model, &train, labeled)?.accuracy,
                test_accuracy: evaluate(&model, &test, labeled)?.accuracy,
            })
        })
        .collect()
}

pub fn fit_csv_report(
    csv: &str,
    label_column: &str,
    max_depth: usize,
    seed: u64,
) -> Result<FitReport> {
    let data = parse_csv(csv.as_bytes(), &CsvOptions::default())?;
    let labeled = LabeledDataset::prepare(&data, label_column)?;
    fit(&labeled, max_depth, seed, None)
}

fn to_json<T: Serialize>(value: Result<T>) -> std::result::Result<String, JsError> {
    let value = value.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

/// Generate planted-tree data, fit on 70% and report on the held-out 30%.
#[wasm_bindgen]
pub fn fit_synthetic(
    rows: u32,
    planted_depth: u32,
    noise: f64,
    max_depth: u32,
    seed: u32,
) -> std::result::Result<String, JsError> {
    to_json(fit_synthetic_report(
        rows as usize,
        planted_depth as usize,
        noise,
        max_depth as usize,
        seed as u64,
    ))
}

/// Train and held-out accuracy for every depth from 0 to `max_depth`.
#[wasm_bindgen]
pub fn depth_curve(
    rows: u32,
    planted_depth: u32,
    noise: f64,
    seed: u32,
    max_depth: u32,
) -> std::result::Result<String, JsError> {
    to_json(depth_curve_points(
        rows as usize,
        planted_depth as usize,
        noise,
        seed as u64,
        max_depth as usize,
    ))
}

/// Fit pasted CSV text; `label_column` is a numeric score or a class column.
#[wasm_bindgen]
pub fn fit_csv(
    csv: &str,
    label_column: &str,
    max_depth: u32,
    seed: u32,
) -> std::result::Result<String, JsError> {
    to_json(fit_csv_report(csv, label_column, max_depth as usize, seed as u64))
}
