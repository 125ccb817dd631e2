//! Browser bindings for the tileprove demo page (`www/index.html`).
//!
//! Every export returns a JSON string; the plain functions in [`api`] carry the logic so they
//! can be tested off the browser.

use wasm_bindgen::prelude::*;

pub mod api {
    use serde_json::{json, Value};
    use tileprove::constructions::{self, generate, verify};
    use tileprove::number_theory::forms_of;
    use tileprove::search_equilateral::search;
    use tileprove::tile_models::Gamma;
    use tileprove::verdict::{verdict, Evidence};
    use tileprove::Error;

    /// Largest N the page offers for a verdict; the 3α + 2β search grows quickly and runs on one thread here.
    pub const MAX_VERDICT_N: u32 = 40;
    /// Largest tile count rendered.
    pub const MAX_TILES: usize = 600;

    pub fn verdict_summary(n: u32) -> Result<Value, String> {
        if !(3..=MAX_VERDICT_N).contains(&n) {
            return Err(format!("N must be between 3 and {MAX_VERDICT_N}"));
        }
        let cert = verdict(n).map_err(|e| e.to_string())?;
        let forms: Vec<String> = forms_of(n as u64).iter().map(|f| f.to_string()).collect();
        let cases: Vec<Value> = cert
            .cases
            .iter()
            .map(|c| {
                let evidence: Vec<String> = c
                    .evidence
                    .iter()
                    .map(|e| match e {
                        Evidence::Citation { rule, .. } => format!("rule {rule}"),
                        Evidence::Transcript { search, hits, complete, .. } => {
                            format!("{search}: {hits} hit(s){}", if *complete { "" } else { ", stopped at first" })
                        }
                        Evidence::Construction { family, params, tiles, verified } => {
                            format!("{family} {params}: {tiles} tiles, verified {verified}")
                        }
                        Evidence::Forms { forms } => format!("{} form(s)", forms.len()),
                    })
                    .collect();
                json!({ "case": format!("{:?}", c.case), "status": format!("{:?}", c.status), "evidence": evidence })
            })
            .collect();
        Ok(json!({ "n": n, "overall": cert.overall.to_string(), "forms": forms, "cases": cases }))
    }

    pub fn equilateral_candidates(n: u32) -> Result<Value, String> {
        let mut rows = Vec::new();
        for gamma in [Gamma::PiOver3, Gamma::TwoPiOver3] {
            let report = search(n, gamma).map_err(|e| e.to_string())?;
            for c in report.candidates {
                rows.push(json!({
                    "gamma": gamma.label(),
                    "tile": [c.tile.0, c.tile.1, c.tile.2],
                    "s": c.s.to_string(),
                    "pqr": [c.p, c.q, c.r],
                    "branch": format!("{:?}", c.branch),
                }));
            }
        }
        Ok(json!({ "n": n, "candidates": rows }))
    }

    pub fn tiling(family: &str, params: &str, colored: bool) -> Result<Value, String> {
        let t = generate(family, params).map_err(|e| e.to_string())?;
        if t.n() > MAX_TILES {
            return Err(format!(
                "{} tiles is more than this page draws ({MAX_TILES})",
                t.n()
            ));
        }
        let report = verify(&t).map_err(|e| e.to_string())?;
        let (colors, coloring) = if colored {
            match constructions::coloring_number(&t) {
                Ok(c) => (
                    Some(c.colors.clone()),
                    format!("M = {}, identity {:?}", c.m, c.identity_holds),
                ),
                Err(Error::NotColorable(v)) => (
                    None,
                    format!("not colorable: {}", constructions::describe(&v)),
                ),
                Err(e) => return Err(e.to_string()),
            }
        } else {
            (None, String::new())
        };
        Ok(json!({
            "tiles": report.n,
            "congruent": report.congruent,
            "disjoint": report.disjoint,
            "covers": report.covers,
            "coloring": coloring,
            "svg": constructions::to_svg(&t, colors.as_deref()),
        }))
    }
}

fn to_js(r: Result<serde_json::Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verdict_summary(n: u32) -> Result<String, JsError> {
    to_js(api::verdict_summary(n))
}

#[wasm_bindgen]
pub fn equilateral_candidates(n: u32) -> Result<String, JsError> {
    to_js(api::equilateral_candidates(n))
}

#[wasm_bindgen]
pub fn tiling(family: &str, params: &str, colored: bool) -> Result<String, JsError> {
    to_js(api::tiling(family, params, colored))
}
