//! Browser bindings for the `www/` demo page.
//!
//! Three operations are exposed, each taking plain values and returning a
//! JSON string: a statistics table, one ladder-operator step on a state, and
//! the inner product of two level words together with its delta matrix.
//! The logic lives in ordinary functions so it can be tested natively; the
//! `#[wasm_bindgen]` wrappers only convert errors.

use num_complex::Complex64;
use qspace::fock::{basis_inner, inner, is_null_norm, norm, StateFile};
use qspace::labeled::oracle_inner;
use qspace::statistics::{equiprobability_table, format_ratio, Microstate, StatisticsKind};
use qspace::{FockSpace, FockVector, LevelBasis, OccupationMap, ParticleKind};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest table the page will render.
const TABLE_CAP: u64 = 4096;

#[derive(Serialize)]
struct StatsRow {
    label: String,
    values: Vec<u64>,
}

#[derive(Serialize)]
struct StatsView {
    kind: StatisticsKind,
    count: u64,
    probability: Option<String>,
    rows: Vec<StatsRow>,
}

pub fn stats_table_json(kind: &str, particles: u32, levels: u32) -> Result<String, String> {
    let kind: StatisticsKind = kind.parse().map_err(|e| format!("{e}"))?;
    let table = equiprobability_table(kind, particles, levels, TABLE_CAP).map_err(|e| e.to_string())?;
    let probability = table.first().map(|(_, p)| format_ratio(p));
    let rows = table
        .iter()
        .map(|(state, _)| StatsRow { label: state.to_string(), values: state_values(state) })
        .collect();
    let view = StatsView { kind, count: table.len() as u64, probability, rows };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

fn state_values(state: &Microstate) -> Vec<u64> {
    state.values()
}

#[derive(Serialize)]
struct LadderView {
    state: StateFile,
    display: String,
    norm: f64,
    null_norm: bool,
}

/// Applies `op` (`"create"` or `"annihilate"`) at `level` to the state in
/// `state_json` (the FockVector file schema). An empty string means the
/// vacuum of the given kind.
pub fn ladder_step_json(kind: &str, state_json: &str, op: &str, level: usize, levels: usize) -> Result<String, String> {
    let kind: ParticleKind = kind.parse().map_err(|e| format!("{e}"))?;
    let v = if state_json.trim().is_empty() {
        FockVector::vacuum()
    } else {
        let file: StateFile = serde_json::from_str(state_json).map_err(|e| e.to_string())?;
        file.vector()
    };
    let space = FockSpace::new(kind, LevelBasis::uniform(levels));
    let out = match op {
        "create" => space.create(level, &v),
        "annihilate" => space.annihilate(level, &v),
        other => return Err(format!("unknown operation {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    let view = LadderView {
        display: out.to_string(),
        norm: norm(kind, &out).map_err(|e| e.to_string())?,
        null_norm: is_null_norm(kind, &out),
        state: StateFile::new(kind, &out),
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct InnerView {
    left: Vec<usize>,
    right: Vec<usize>,
    delta: Vec<Vec<u8>>,
    value: [f64; 2],
    basis_value: i64,
    oracle: i64,
}

/// Inner product of the kets of two level words, e.g. `"0 0 1"`. Fermionic
/// words keep their order, so reversing two levels flips the sign.
pub fn inner_product_json(kind: &str, left: &str, right: &str) -> Result<String, String> {
    let kind: ParticleKind = kind.parse().map_err(|e| format!("{e}"))?;
    let left = parse_word(left)?;
    let right = parse_word(right)?;
    let a = FockVector::from_word(kind, &left);
    let b = FockVector::from_word(kind, &right);
    let value: Complex64 = inner(kind, &a, &b);
    let (occ_a, occ_b) = (OccupationMap::from_word(&left), OccupationMap::from_word(&right));
    let mut sorted_a = left.clone();
    sorted_a.sort_unstable();
    let mut sorted_b = right.clone();
    sorted_b.sort_unstable();
    let delta = if sorted_a.len() == sorted_b.len() {
        sorted_a.iter().map(|x| sorted_b.iter().map(|y| u8::from(x == y)).collect()).collect()
    } else {
        Vec::new()
    };
    let view = InnerView {
        left,
        right,
        delta,
        value: [value.re, value.im],
        basis_value: basis_inner(kind, &occ_a, &occ_b) as i64,
        oracle: oracle_inner(kind, &occ_a, &occ_b) as i64,
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

fn parse_word(text: &str) -> Result<Vec<usize>, String> {
    let word: Vec<usize> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| format!("bad level {s:?}")))
        .collect::<Result<_, _>>()?;
    if word.len() > 8 {
        return Err("words longer than 8 levels are not shown".into());
    }
    Ok(word)
}

#[wasm_bindgen]
pub fn stats_table(kind: &str, particles: u32, levels: u32) -> Result<String, JsError> {
    stats_table_json(kind, particles, levels).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn ladder_step(kind: &str, state_json: &str, op: &str, level: usize, levels: usize) -> Result<String, JsError> {
    ladder_step_json(kind, state_json, op, level, levels).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn inner_product(kind: &str, left: &str, right: &str) -> Result<String, JsError> {
    inner_product_json(kind, left, right).map_err(|e| JsError::new(&e))
}
