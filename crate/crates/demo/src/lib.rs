//! Browser bindings. Each exported function returns a JSON string; the
//! plain `*_json` functions hold the logic and are tested natively.

use serde_json::json;
use wasm_bindgen::prelude::*;

use tjl_core::adelic::{Factorizer, HeckeOperator, HeckeReport, SearchBounds};
use tjl_core::census::IrrepsReport;
use tjl_core::finite_field::parse_poly;
use tjl_core::group::GroupParams;
use tjl_core::quaternion::AlgebraParams;
use tjl_core::spectral::{SpectralContext, SpectralReport};
use tjl_core::tame::TameReport;

/// Keeps the page responsive: the demo only offers small groups.
const MAX_DEMO_ORDER: usize = 512;

fn small_group(q: u32, n: u32, level: u32) -> Result<GroupParams, String> {
    let g = GroupParams::new(q, n, level).map_err(|e| e.to_string())?;
    if g.order() > MAX_DEMO_ORDER {
        return Err(format!("group order {} is above the demo limit {MAX_DEMO_ORDER}", g.order()));
    }
    Ok(g)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports serialize")
}

pub fn irreps_json(q: u32, n: u32, level: u32) -> Result<String, String> {
    let g = small_group(q, n, level)?;
    IrrepsReport::compute(&g).map(|r| to_json(&r)).map_err(|e| e.to_string())
}

pub fn tame_json(q: u32, n: u32, level: u32) -> Result<String, String> {
    let g = small_group(q, n, level)?;
    TameReport::compute(&g).map(|r| to_json(&r)).map_err(|e| e.to_string())
}

/// Hecke matrix at `place` and the spectral check for every representation.
pub fn verify_json(q: u32, level: u32, place: &str) -> Result<String, String> {
    let err = |e: tjl_core::Error| e.to_string();
    small_group(q, 2, level)?;
    let alg = AlgebraParams::new(q, level).map_err(err)?;
    let place = parse_poly(place, &alg.fq).map_err(err)?;
    let bounds = SearchBounds::default();
    let op = HeckeOperator::compute(&Factorizer::new(alg.clone()), &place, &bounds).map_err(err)?;
    let hecke = HeckeReport::new(&alg, &op);
    let matrix = op.matrix(&alg);
    let ctx = SpectralContext::new(alg, Some(vec![place]), bounds).map_err(err)?;
    let spectral = SpectralReport::compute(&ctx, None, false).map_err(err)?;
    Ok(to_json(&json!({
        "hecke": hecke,
        "matrix": matrix,
        "spectral": spectral,
    })))
}

#[wasm_bindgen]
pub fn irreps(q: u32, n: u32, level: u32) -> Result<String, JsError> {
    irreps_json(q, n, level).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn tame(q: u32, n: u32, level: u32) -> Result<String, JsError> {
    tame_json(q, n, level).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify(q: u32, level: u32, place: &str) -> Result<String, JsError> {
    verify_json(q, level, place).map_err(|e| JsError::new(&e))
}
