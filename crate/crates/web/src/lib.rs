//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes relations in the text format of [`linrel::io`] (or a
//! matrix as rows separated by `;`) and returns a JSON string.

use linrel::io::RelationFile;
use linrel::{anti_diagonal_block, CMat, LinearRelation, Tolerance, C64};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

type Result<T> = std::result::Result<T, String>;

fn load(label: &str, text: &str) -> Result<LinearRelation> {
    let text = text.trim();
    if text.starts_with("linrel") {
        return RelationFile::parse(text)
            .and_then(|f| f.to_relation())
            .map_err(|e| format!("{label}: {e}"));
    }
    let a = parse_matrix(text).map_err(|e| format!("{label}: {e}"))?;
    LinearRelation::from_operator_matrix(&a, None, Tolerance::default()).map_err(|e| format!("{label}: {e}"))
}

/// `"1 2; 3 4"`, entries real or `re+imi` / `re-imi`.
fn parse_matrix(text: &str) -> Result<CMat> {
    let rows: Vec<Vec<C64>> = text
        .split([';', '\n'])
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| r.split([' ', ',', '\t']).filter(|t| !t.is_empty()).map(parse_entry).collect())
        .collect::<Result<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || cols == 0 {
        return Err("empty matrix".into());
    }
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(format!("row {} has {} entries, expected {cols}", i + 1, rows[i].len()));
    }
    Ok(CMat::from_fn(rows.len(), cols, |i, j| rows[i][j]))
}

fn parse_entry(t: &str) -> Result<C64> {
    let bad = || format!("bad entry `{t}`");
    let z = match t.strip_suffix('i') {
        None => C64::new(t.parse().map_err(|_| bad())?, 0.0),
        Some(body) => {
            // split at the last sign that is not an exponent sign
            let cut = body
                .char_indices()
                .rev()
                .find(|&(i, ch)| i > 0 && (ch == '+' || ch == '-') && !body[..i].ends_with(['e', 'E']))
                .map(|(i, _)| i);
            let (re, im) = match cut {
                Some(i) => (&body[..i], &body[i..]),
                None => ("0", body),
            };
            let im = match im {
                "" | "+" => "1",
                "-" => "-1",
                s => s,
            };
            C64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?)
        }
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

fn number(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!("inf")
    }
}

fn complex(z: C64) -> Value {
    json!([z.re, z.im])
}

fn rows(m: &CMat) -> Value {
    Value::Array(m.row_iter().map(|r| Value::Array(r.iter().map(|&z| complex(z)).collect())).collect())
}

fn parts(t: &LinearRelation) -> Value {
    let p = t.parts();
    json!({
        "domain": p.domain.dim(),
        "range": p.range.dim(),
        "kernel": p.kernel.dim(),
        "multivalued": p.multivalued.dim(),
    })
}

/// `T†` with its matrix and the relation in file form.
pub fn pseudoinverse_json(text: &str) -> Result<String> {
    let t = load("T", text)?;
    let (dagger, view) = t.moore_penrose().map_err(|e| e.to_string())?;
    Ok(json!({
        "dim_h": t.dim_h(),
        "dim_k": t.dim_k(),
        "parts": parts(&t),
        "matrix": rows(&view.matrix),
        "relation": RelationFile::from_relation(&dagger, Some("T†")).to_text(),
    })
    .to_string())
}

/// `γ(T)`, `‖T†‖` and their product (`null` on the `∞ · 0` path).
pub fn gamma_norm_json(text: &str) -> Result<String> {
    let t = load("T", text)?;
    let gamma = t.gamma().map_err(|e| e.to_string())?;
    let norm = t.mp().and_then(|d| d.operator_norm()).map_err(|e| e.to_string())?;
    let product = (gamma.is_finite() && norm > 0.0).then(|| gamma * norm);
    Ok(json!({
        "gamma": number(gamma),
        "norm": number(norm),
        "product": product,
        "degenerate": gamma.is_infinite() && norm == 0.0,
    })
    .to_string())
}

/// Spectrum of `[[0, A], [B, 0]]` next to `±√μ` for `μ ∈ σ(AB) ∪ σ(BA)`.
pub fn block_spectrum_json(a_text: &str, b_text: &str) -> Result<String> {
    let a = load("A", a_text)?;
    let b = load("B", b_text)?;
    let block = anti_diagonal_block(&a, &b).map_err(|e| e.to_string())?;
    let ab = a.compose(&b).map_err(|e| e.to_string())?;
    let ba = b.compose(&a).map_err(|e| e.to_string())?;
    let spectrum = |t: &LinearRelation| t.point_spectrum().map_err(|e| e.to_string());
    let (sb, sab, sba) = (spectrum(&block)?, spectrum(&ab)?, spectrum(&ba)?);
    let mut roots: Vec<C64> = Vec::new();
    for &mu in sab.eigenvalues.iter().chain(&sba.eigenvalues) {
        let r = mu.sqrt();
        for z in [r, -r] {
            if roots.iter().all(|w| (w - z).norm() > 1e-9 * z.norm().max(1.0)) {
                roots.push(z);
            }
        }
    }
    roots.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(json!({
        "block": sb.eigenvalues.iter().map(|&z| complex(z)).collect::<Vec<_>>(),
        "block_whole_plane": sb.whole_plane,
        "roots": roots.into_iter().map(complex).collect::<Vec<_>>(),
        "ab_whole_plane": sab.whole_plane,
        "ba_whole_plane": sba.whole_plane,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn pseudoinverse(text: &str) -> std::result::Result<String, JsError> {
    pseudoinverse_json(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn gamma_norm(text: &str) -> std::result::Result<String, JsError> {
    gamma_norm_json(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn block_spectrum(a: &str, b: &str) -> std::result::Result<String, JsError> {
    block_spectrum_json(a, b).map_err(|e| JsError::new(&e))
}
