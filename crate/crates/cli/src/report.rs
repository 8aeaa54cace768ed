//! JSON report envelope, payload builders, and numeric formatting.
//!
//! All numeric JSON fields are rounded to 12 significant digits before
//! serialization, keys are emitted in sorted order, and the envelope carries
//! a content digest of the input, so identical inputs and flags produce
//! byte-identical output.

use serde_json::{json, Map, Value};
use sgcurv::batch::SweepRow;
use sgcurv::bounds::{Applicability, BoundReport, DynamicsReport};
use sgcurv::curvature::CurvatureReport;
use sgcurv::repelling::{ConsensusIndex, ConsensusValue, RepellingAnalysis};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "sgcurv.report.v1";

/// Rounds to 12 significant digits; zero and non-finite values pass through.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("scientific round-trip")
}

/// Short human formatting used in messages (six significant digits, trimmed).
pub fn sig6_string(x: f64) -> String {
    let s = format!("{:.6e}", x);
    let v: f64 = s.parse().expect("scientific round-trip");
    let mut out = format!("{v}");
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if n.is_f64() {
                    if let Some(rounded) = serde_json::Number::from_f64(sig12(f)) {
                        *v = Value::Number(rounded);
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

pub fn digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let mut out = String::from("sha256:");
    for byte in hasher.finalize() {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

/// Wraps a payload in the versioned envelope and rounds every float.
pub fn envelope(command: String, input_digest: Option<String>, payload: Value) -> Value {
    let mut value = json!({
        "schema": SCHEMA,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "input_digest": input_digest,
        "payload": payload,
    });
    round_value(&mut value);
    value
}

fn matrix_rows(m: &sgcurv::SymMatrix) -> Value {
    let n = m.dim();
    Value::Array(
        (0..n)
            .map(|i| Value::Array((0..n).map(|j| json!(m.get(i, j))).collect()))
            .collect(),
    )
}

pub fn consensus_value(v: ConsensusValue) -> Value {
    match v {
        ConsensusValue::Finite(x) => json!(x),
        ConsensusValue::Infinite => json!("infinity"),
    }
}

pub fn consensus_payload(idx: &ConsensusIndex) -> Value {
    json!({
        "value": consensus_value(idx.value),
        "bracket": idx.bracket.map(|(lo, hi)| json!([lo, hi])),
        "lambda2_samples": idx.lambda2_samples.iter().map(|&(e, l)| json!([e, l])).collect::<Vec<_>>(),
        "doubling_capped": idx.doubling_capped,
    })
}

pub fn analysis_payload(analysis: &RepellingAnalysis, consensus: &ConsensusIndex) -> Value {
    let simplex = analysis.simplex.as_ref().map(|s| {
        json!({
            "vertex_matrix": s
                .vertex_matrix
                .rows()
                .into_iter()
                .map(|r| r.iter().copied().collect::<Vec<f64>>())
                .collect::<Vec<_>>(),
            "circumradius": s.circumradius,
            "barycentric_circumcenter": s.barycentric_circumcenter.to_vec(),
            "altitudes": s.altitudes,
        })
    });
    json!({
        "epsilon": analysis.epsilon,
        "lambda": analysis.spectrum.eigenvalues,
        "omega": matrix_rows(&analysis.omega),
        "W": analysis.w_eps,
        "consensus_index": consensus_value(consensus.value),
        "simplex": simplex,
    })
}

pub fn curvature_payload(report: &CurvatureReport) -> Value {
    let edge_values = |items: &[sgcurv::curvature::EdgeValue]| {
        items
            .iter()
            .map(|e| json!({"u": e.u, "v": e.v, "value": e.value}))
            .collect::<Vec<_>>()
    };
    json!({
        "tau": report.tau,
        "phi": report.phi,
        "lambda": edge_values(&report.lambda),
        "theta": edge_values(&report.theta),
        "theta_heat": edge_values(&report.theta_heat),
        "kappa_lly": edge_values(&report.kappa_lly),
        "X": report.x_eps,
        "N": report.n_eps,
        "x_bound_ok": report.x_bound_ok,
        "n_bound_ok": report.n_bound_ok,
        "comparisons": report
            .comparisons
            .iter()
            .map(|c| json!({
                "u": c.u,
                "v": c.v,
                "lly_dominates_theta": c.lly_dominates_theta,
                "lly_dominates_theta_heat": c.lly_dominates_theta_heat,
            }))
            .collect::<Vec<_>>(),
    })
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn bound_payload(report: &BoundReport) -> Value {
    let applicability = match &report.applicability {
        Applicability::Ok => json!("ok"),
        Applicability::HypothesisUnmet(reason) => json!({"hypothesis-unmet": reason}),
    };
    json!({
        "name": report.name,
        "lhs": finite_or_null(report.lhs),
        "rhs": finite_or_null(report.rhs),
        "holds": report.holds,
        "slack": finite_or_null(report.slack),
        "applicability": applicability,
    })
}

pub fn dynamics_payload(report: &DynamicsReport) -> Value {
    json!({
        "disagreement": report.disagreement,
        "fitted_rate": report.fitted_rate,
        "predicted_rate": report.predicted_rate,
        "contracting_regime": report.contracting_regime,
    })
}

pub fn sweep_rows_payload(rows: &[SweepRow], nondecreasing: bool) -> Value {
    json!({
        "rows": rows
            .iter()
            .map(|r| json!({
                "epsilon": r.epsilon,
                "lambda2": r.lambda2,
                "W": r.w_resistance,
                "tau_min": r.tau_min,
                "tau_max": r.tau_max,
                "theta_min": r.theta_min,
                "theta_max": r.theta_max,
            }))
            .collect::<Vec<_>>(),
        "monotonic_nondecreasing": nondecreasing,
    })
}

pub fn sweep_csv(rows: &[SweepRow], nondecreasing: bool) -> String {
    let mut out = String::from("epsilon,lambda2,W,tau_min,tau_max,theta_min,theta_max\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            sig12(r.epsilon),
            sig12(r.lambda2),
            sig12(r.w_resistance),
            sig12(r.tau_min),
            sig12(r.tau_max),
            sig12(r.theta_min),
            sig12(r.theta_max),
        ));
    }
    out.push_str(&format!("# monotonic_nondecreasing={nondecreasing}\n"));
    out
}

/// Serializes with sorted keys (serde_json's default map is ordered) and a
/// trailing newline.
pub fn to_json_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// Flattens an object into the envelope payload.
pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}
