//! Browser bindings: a root/weight diagram, single-vector matrices, and
//! invariant-closure traces, each returned as a JSON string.
//!
//! The `*_json` functions are plain Rust so they can be tested natively; the
//! `#[wasm_bindgen]` wrappers only convert errors.

use serde::Serialize;
use sopq::eigen::{satisfies_eigen_identity, SpaceSystem};
use sopq::irreducibility::invariant_closure_labeled;
use sopq::roots::full_root_system;
use sopq::so_pq::{abelian_a, LinearForm};
use sopq::weights::{complement_basis, full_weight_system};
use sopq::{Matrix, Signature};
use wasm_bindgen::prelude::*;

/// Largest `d` the page will compute; exact arithmetic in the browser is slow beyond this.
pub const MAX_D: usize = 12;

#[derive(Serialize)]
struct Point {
    coeffs: Vec<i64>,
    label: String,
    multiplicity: usize,
}

#[derive(Serialize)]
struct Diagram {
    signature: Signature,
    dim_so: usize,
    dim_s: usize,
    roots: Vec<Point>,
    weights: Vec<Point>,
    verified: bool,
    seeds: Vec<String>,
}

#[derive(Serialize)]
struct VectorView {
    signature: Signature,
    kind: String,
    form: Vec<i64>,
    label: String,
    index: usize,
    multiplicity: usize,
    rows: Matrix,
    eigen_identity: bool,
}

fn signature(p: usize, q: usize) -> Result<Signature, String> {
    let sig = Signature::new(p, q).map_err(|e| e.to_string())?;
    if sig.d() > MAX_D {
        return Err(format!("d = {} is above the demo limit {MAX_D}; use the decomp CLI", sig.d()));
    }
    Ok(sig)
}

fn points(sys: &SpaceSystem) -> Vec<Point> {
    sys.spaces
        .iter()
        .map(|s| Point { coeffs: s.form.coeffs.clone(), label: s.form.to_string(), multiplicity: s.dim() })
        .collect()
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Roots of so(p,q) and weights of `s` with multiplicities, plus the labels of the `s` basis.
pub fn diagram_json(p: usize, q: usize) -> Result<String, String> {
    let sig = signature(p, q)?;
    let roots = full_root_system(&sig);
    let weights = full_weight_system(&sig);
    Ok(to_json(&Diagram {
        signature: sig,
        dim_so: sig.dim_so(),
        dim_s: sig.dim_s(),
        roots: points(&roots),
        weights: points(&weights),
        verified: roots.is_verified() && weights.is_verified(),
        seeds: complement_basis(&sig).basis.into_iter().map(|n| n.label).collect(),
    }))
}

fn parse_form(text: &str, q: usize) -> Result<LinearForm, String> {
    let coeffs: Vec<i64> = if text.trim().is_empty() {
        Vec::new()
    } else {
        text.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad coefficient {t:?}")))
            .collect::<Result<_, _>>()?
    };
    if coeffs.len() != q {
        return Err(format!("expected {q} coefficients, got {}", coeffs.len()));
    }
    Ok(LinearForm::new(coeffs))
}

/// The `index`-th (one-based) basis vector of a root (`kind = "root"`) or weight
/// (`kind = "weight"`) space; `form` is comma-separated coefficients over `f_i`.
pub fn vector_json(p: usize, q: usize, kind: &str, form: &str, index: usize) -> Result<String, String> {
    let sig = signature(p, q)?;
    let form = parse_form(form, sig.q())?;
    let sys = match kind {
        "root" => full_root_system(&sig),
        "weight" => full_weight_system(&sig),
        other => return Err(format!("kind must be \"root\" or \"weight\", got {other:?}")),
    };
    let space = sys.space(&form).ok_or_else(|| format!("{form} is not a {kind} of so{sig}"))?;
    let named = index
        .checked_sub(1)
        .and_then(|k| space.basis.get(k))
        .ok_or_else(|| format!("index must be in 1..={}", space.dim()))?;
    Ok(to_json(&VectorView {
        signature: sig,
        kind: kind.to_string(),
        form: form.coeffs.clone(),
        label: named.label.clone(),
        index,
        multiplicity: space.dim(),
        eigen_identity: satisfies_eigen_identity(&abelian_a(&sig).generators, &form, &named.matrix),
        rows: named.matrix.clone(),
    }))
}

/// Growth of the invariant closure from the `seed`-th (one-based) `s` basis element.
pub fn closure_json(p: usize, q: usize, seed: usize) -> Result<String, String> {
    let sig = signature(p, q)?;
    let basis = complement_basis(&sig).basis;
    let named =
        seed.checked_sub(1).and_then(|k| basis.get(k)).ok_or_else(|| format!("seed must be in 1..={}", basis.len()))?;
    let trace = invariant_closure_labeled(&sig, &named.label, &named.matrix).map_err(|e| e.to_string())?;
    Ok(to_json(&trace))
}

#[wasm_bindgen]
pub fn diagram(p: usize, q: usize) -> Result<String, JsError> {
    diagram_json(p, q).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn vector(p: usize, q: usize, kind: &str, form: &str, index: usize) -> Result<String, JsError> {
    vector_json(p, q, kind, form, index).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn closure(p: usize, q: usize, seed: usize) -> Result<String, JsError> {
    closure_json(p, q, seed).map_err(|e| JsError::new(&e))
}
