//! WebAssembly entry points for the static page in `www/`.
//!
//! Each export takes plain numbers or JSON text and returns JSON or SVG
//! text; the inner functions are ordinary Rust so they are tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use suprematrix::channel::{transpose_artificial_qubit_map, Channel};
use suprematrix::geometry::{qutrit_triadas, render_triadas_svg, SvgOptions, TriadaGeometry};
use suprematrix::qubit::{qubit_ball_check, qubit_eigenvalues_probability_form};
use suprematrix::qutrit::{purity, quantumness_report};
use suprematrix::{QubitProbabilities, QutritProbabilities};

fn to_json(v: Value) -> String {
    v.to_string()
}

fn parse_pi(pi_json: &str) -> Result<QutritProbabilities, String> {
    let pi: [f64; 8] =
        serde_json::from_str(pi_json).map_err(|e| format!("expected 8 probabilities: {e}"))?;
    QutritProbabilities::new(pi).map_err(|e| e.to_string())
}

fn qutrit_summary(q: &QutritProbabilities, scale: f64) -> Result<Value, String> {
    let triadas = qutrit_triadas(q).map_err(|e| e.to_string())?;
    let options = SvgOptions {
        scale,
        ..SvgOptions::default()
    };
    let report = quantumness_report(q);
    Ok(json!({
        "probabilities": q.as_array(),
        "svg": render_triadas_svg(&triadas, &options),
        "report": serde_json::to_value(report).map_err(|e| e.to_string())?,
        "purity": purity(q),
        "area_sums": triadas.triadas.map(|t| t.area_sum),
    }))
}

/// SVG of the three triadas plus the quantumness report of `pi`.
pub fn qutrit_view_inner(pi_json: &str, scale: f64) -> Result<String, String> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(format!("scale must be positive, got {scale}"));
    }
    Ok(to_json(qutrit_summary(&parse_pi(pi_json)?, scale)?))
}

/// Ball test, eigenvalues, triangle sides and area sum of one qubit.
pub fn qubit_view_inner(p1: f64, p2: f64, p3: f64) -> Result<String, String> {
    let p = QubitProbabilities::new(p1, p2, p3).map_err(|e| e.to_string())?;
    let ball = qubit_ball_check(&p);
    let (high, low) = qubit_eigenvalues_probability_form(&p);
    let t = TriadaGeometry::new(&p).map_err(|e| e.to_string())?;
    Ok(to_json(json!({
        "radius_squared": ball.radius_squared,
        "slack": ball.slack,
        "valid": ball.valid,
        "eigenvalues": [high, low],
        "sides": t.sides,
        "area_sum": t.area_sum,
        "triangle_area": t.triangle_area.value(),
    })))
}

/// Applies `dephasing` or `transpose1..3` to `pi` and returns the new view.
pub fn apply_channel_inner(pi_json: &str, channel: &str, scale: f64) -> Result<String, String> {
    let q = parse_pi(pi_json)?;
    let ch = match channel {
        "dephasing" => Channel::dephasing(),
        "transpose1" | "transpose2" | "transpose3" => {
            let which = channel[9..].parse().expect("suffix is a digit");
            Channel::Transpose(transpose_artificial_qubit_map(which).map_err(|e| e.to_string())?)
        }
        other => return Err(format!("unknown channel `{other}`")),
    };
    let out = ch.apply(&q).map_err(|e| e.to_string())?;
    let mut view = qutrit_summary(&out.probabilities, scale)?;
    view["input_psd"] = out.input_psd.into();
    view["output_psd"] = out.output_psd.into();
    Ok(to_json(view))
}

#[wasm_bindgen]
pub fn qutrit_view(pi_json: &str, scale: f64) -> Result<String, JsValue> {
    qutrit_view_inner(pi_json, scale).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn qubit_view(p1: f64, p2: f64, p3: f64) -> Result<String, JsValue> {
    qubit_view_inner(p1, p2, p3).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn apply_channel(pi_json: &str, channel: &str, scale: f64) -> Result<String, JsValue> {
    apply_channel_inner(pi_json, channel, scale).map_err(|e| JsValue::from_str(&e))
}
