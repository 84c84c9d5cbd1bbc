//! WebAssembly bindings for the predegree calculator.
//!
//! Each exported function takes plain strings or numbers and returns a JSON
//! document. The `*_json` functions hold the logic and run natively too.

use quadric_predegree::json::{integer, rational};
use quadric_predegree::predegree::{deg_so, predegree_coefficient};
use quadric_predegree::quadric::{table1_row, Coefficient};
use quadric_predegree::segre::{ambient_dim, segre_class_pushforward};
use quadric_predegree::{ProductSpace, Rational};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Keeps the page responsive; `P^1 x P^7` lives in `P^15`.
pub const MAX_AMBIENT: usize = 40;
pub const MAX_GROUP_DIM: u32 = 12;

fn parse_factors(text: &str) -> Result<ProductSpace, String> {
    let dims = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("not a dimension: {:?}", s.trim()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let p = ProductSpace::new(dims).map_err(|e| e.to_string())?;
    if p.num_factors() < 2 {
        return Err("give at least two factors".into());
    }
    let m = ambient_dim(&p);
    if m > MAX_AMBIENT {
        return Err(format!("ambient P^{m} is larger than P^{MAX_AMBIENT}"));
    }
    Ok(p)
}

/// Segre class of the Segre image, as coefficients of `H^0 ..= H^m`.
pub fn segre_class_json(factors: &str) -> Result<String, String> {
    let p = parse_factors(factors)?;
    let s = segre_class_pushforward(&p).map_err(|e| e.to_string())?;
    let coeffs = s.power_coeffs().map_err(|e| e.to_string())?;
    Ok(json!({
        "ambient_dim": ambient_dim(&p),
        "class": s.to_string(),
        "coefficients": coeffs.iter().map(rational).collect::<Vec<_>>(),
    })
    .to_string())
}

/// Raw `e_i` for `S = multiplier * s(Segre image)` and degree `d` forms, `i <= dim_orb`.
///
/// Values are returned even when negative, so the page can show where a
/// candidate class stops describing an honest base locus.
pub fn predegree_json(factors: &str, d: i64, multiplier: i64, dim_orb: usize) -> Result<String, String> {
    let p = parse_factors(factors)?;
    let n = ambient_dim(&p);
    if dim_orb > n {
        return Err(format!("orbit dimension {dim_orb} exceeds {n}"));
    }
    let s = segre_class_pushforward(&p)
        .map_err(|e| e.to_string())?
        .scale(&Rational::from_integer(multiplier.into()));
    let coeffs = (0..=dim_orb)
        .map(|i| predegree_coefficient(n, d, &s, i).map(|v| integer(&v)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    Ok(json!({ "ambient_dim": n, "coefficients": coeffs }).to_string())
}

/// `deg SO(m)` for `m = 2 ..= max_m`.
pub fn deg_so_json(max_m: u32) -> Result<String, String> {
    if !(2..=MAX_GROUP_DIM).contains(&max_m) {
        return Err(format!("m must lie in 2..={MAX_GROUP_DIM}"));
    }
    let rows = (2..=max_m)
        .map(|m| deg_so(m).map(|d| json!({ "m": m, "degree": integer(&d) })))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    Ok(Value::Array(rows).to_string())
}

/// One quadric table row; unknown coefficients are `null`.
pub fn quadric_row_json(n: u32) -> Result<String, String> {
    if !(1..=4).contains(&n) {
        return Err("n must lie in 1..=4".into());
    }
    let row = table1_row(n).map_err(|e| e.to_string())?;
    let coeffs: Vec<Value> = row
        .coefficients
        .iter()
        .map(|c| match c {
            Coefficient::Known(v) => integer(v),
            Coefficient::Unknown => Value::Null,
        })
        .collect();
    Ok(json!({
        "n": n,
        "dim_forms": row.dim_forms,
        "dim_component": row.dim_component,
        "coefficients": coeffs,
        "polynomial": row.polynomial_string(),
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = segreClass)]
pub fn segre_class(factors: &str) -> Result<String, JsValue> {
    js(segre_class_json(factors))
}

#[wasm_bindgen(js_name = predegree)]
pub fn predegree(factors: &str, d: i32, multiplier: i32, dim_orb: u32) -> Result<String, JsValue> {
    js(predegree_json(factors, d.into(), multiplier.into(), dim_orb as usize))
}

#[wasm_bindgen(js_name = degSo)]
pub fn deg_so_table(max_m: u32) -> Result<String, JsValue> {
    js(deg_so_json(max_m))
}

#[wasm_bindgen(js_name = quadricRow)]
pub fn quadric_row(n: u32) -> Result<String, JsValue> {
    js(quadric_row_json(n))
}
