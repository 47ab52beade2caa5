//! Browser bindings. Every export takes and returns JSON text so the page
//! needs no glue beyond `JSON.parse`.

use runway_core::bench::{generate_instance, GenSpec, TaskMix};
use runway_core::io::{instance_to_json, parse_instance, parse_model, solution_to_json};
use runway_core::model::validate_separation_model;
use runway_core::{SeparationModel, SolverConfig};
use wasm_bindgen::prelude::*;

/// Smaller search budgets keep the page responsive.
fn browser_config(prune: bool) -> SolverConfig {
    SolverConfig { prune, search_budget: 400_000, step_budget: 40_000, catalog_max_len: 5, ..SolverConfig::default() }
}

pub fn solve_text(instance: &str, prune: bool) -> Result<String, String> {
    let inst = parse_instance(instance, &SeparationModel::default()).map_err(|e| e.to_string())?;
    let sol = runway_core::solve(&inst, &browser_config(prune)).map_err(|e| e.to_string())?;
    Ok(solution_to_json(&inst, &sol))
}

/// Report for `model`, or for the bundled model when `model` is blank.
pub fn validate_text(model: &str) -> Result<String, String> {
    let m = if model.trim().is_empty() { SeparationModel::default() } else { parse_model(model).map_err(|e| e.to_string())? };
    Ok(validate_separation_model(&m).render())
}

pub fn generate_text(count: usize, mix: &str, t_e_min: u32, t_w_min: u32, seed: u64) -> Result<String, String> {
    let mix = match mix {
        "takeoff_only" => TaskMix::TakeoffOnly,
        "landing_only" => TaskMix::LandingOnly,
        "mixed" => TaskMix::Mixed,
        "dual" => TaskMix::Dual,
        other => return Err(format!("unknown mix {other:?}")),
    };
    let inst = generate_instance(&GenSpec::new(count, mix, t_e_min, t_w_min, seed)).map_err(|e| e.to_string())?;
    Ok(instance_to_json(&inst))
}

#[wasm_bindgen]
pub fn solve(instance: &str, prune: bool) -> Result<String, JsValue> {
    solve_text(instance, prune).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = validateModel)]
pub fn validate_model(model: &str) -> Result<String, JsValue> {
    validate_text(model).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn generate(count: usize, mix: &str, t_e_min: u32, t_w_min: u32, seed: u64) -> Result<String, JsValue> {
    generate_text(count, mix, t_e_min, t_w_min, seed).map_err(|e| JsValue::from_str(&e))
}
