//! Browser bindings: small exact computations returned as JSON strings.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use qhopf::cohomology::{check_cocycle, hps_cocycle, is_coboundary};
use qhopf::families::{build_aq, classify_hps, AqParams, HpsParams, QrClass};
use qhopf::twist::check_c_periodicity;
use qhopf::CycloNum;

#[derive(Serialize)]
struct HpsSummary {
    p: u32,
    s: u32,
    class: QrClass,
    cocycle_identity: bool,
    non_trivial: bool,
    /// `table[(i·p + j)·p + k]` is the exponent of `ζ_p` in `Φ(i, j, k)`.
    table: Vec<u32>,
}

#[derive(Serialize)]
struct AxiomLine {
    axiom: String,
    status: String,
    timing_ms: f64,
}

#[derive(Serialize)]
struct AqSummary {
    p: u32,
    q_exponent: i64,
    dim: usize,
    rank: String,
    axioms: Vec<AxiomLine>,
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("summaries serialize")
}

pub fn hps_summary_json(p: u32, s: u32) -> Result<String, String> {
    let params = HpsParams::new(p, s).map_err(|e| e.to_string())?;
    let w = hps_cocycle(p, s).map_err(|e| e.to_string())?;
    let rescaled = w.rescale(p).map_err(|e| e.to_string())?;
    Ok(json(&HpsSummary {
        p,
        s,
        class: classify_hps(params),
        cocycle_identity: check_cocycle(&w).map_err(|e| e.to_string())?.passed(),
        non_trivial: !is_coboundary(&w).map_err(|e| e.to_string())?.is_trivial(),
        table: rescaled.table().to_vec(),
    }))
}

pub fn aq_verify_json(p: u32, q_exponent: i64) -> Result<String, String> {
    let a = build_aq(AqParams::new(p, q_exponent).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let axioms = a
        .verify_all()
        .entries
        .into_iter()
        .map(|e| AxiomLine {
            axiom: e.axiom,
            status: format!("{:?}", e.status).to_lowercase(),
            timing_ms: e.timing_ms,
        })
        .collect();
    Ok(json(&AqSummary {
        p,
        q_exponent,
        dim: a.base().dim(),
        rank: a.rank_degree_one().map_err(|e| e.to_string())?.to_string(),
        axioms,
    }))
}

pub fn periodicity_json(n: u32, q_exponent: i64) -> Result<String, String> {
    if !(2..=7).contains(&n) {
        return Err("n must be between 2 and 7".into());
    }
    let q = CycloNum::root_of_unity(n * n, q_exponent);
    let outcome = check_c_periodicity(&q, n).map_err(|e| e.to_string())?;
    Ok(serde_json::json!({
        "n": n,
        "q_exponent": q_exponent,
        "periodic": outcome.passed(),
        "witness": match outcome {
            qhopf::CheckOutcome::Fail(w) => Some(w),
            qhopf::CheckOutcome::Pass => None,
        },
    })
    .to_string())
}

/// Cocycle table, QR class and non-triviality of `H(p, s)`.
#[wasm_bindgen]
pub fn hps_summary(p: u32, s: u32) -> Result<String, JsError> {
    hps_summary_json(p, s).map_err(|e| JsError::new(&e))
}

/// Runs every axiom check on `A(q)`, `q = ζ_{p²}^k`.
#[wasm_bindgen]
pub fn aq_verify(p: u32, q_exponent: i64) -> Result<String, JsError> {
    aq_verify_json(p, q_exponent).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn periodicity(n: u32, q_exponent: i64) -> Result<String, JsError> {
    periodicity_json(n, q_exponent).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn hps_summary_reports_class() {
        let v: Value = serde_json::from_str(&hps_summary_json(5, 2).unwrap()).unwrap();
        assert_eq!(v["class"], "Minus");
        assert_eq!(v["non_trivial"], true);
        assert_eq!(v["cocycle_identity"], true);
        assert_eq!(v["table"].as_array().unwrap().len(), 125);
        assert!(hps_summary_json(4, 1).is_err());
    }

    #[test]
    fn aq_summary_passes() {
        let v: Value = serde_json::from_str(&aq_verify_json(3, 1).unwrap()).unwrap();
        assert_eq!(v["dim"], 27);
        assert_eq!(v["rank"], "1");
        assert!(v["axioms"].as_array().unwrap().iter().all(|a| a["status"] == "pass"));
    }

    #[test]
    fn periodicity_summary() {
        let v: Value = serde_json::from_str(&periodicity_json(3, 1).unwrap()).unwrap();
        assert_eq!(v["periodic"], true);
        assert!(periodicity_json(9, 1).is_err());
    }
}
