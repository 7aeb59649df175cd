use qhopf::families::{build_aq, build_hps, AqParams, HpsParams, SkewPrimitiveDatum};
use qhopf::serial::{AlgebraFile, Provenance};
use qhopf::twist::{build_j_cyclic, twist_quasi_hopf, Direction, TwistConstruction};
use qhopf::QuasiHopf;
use serde_json::json;

fn round_trips(h: &QuasiHopf, degree: Option<&[u32]>) {
    let prov = Provenance {
        family: "fixture".into(),
        parameters: json!({"name": h.name()}),
    };
    let f = AlgebraFile::from_quasi_hopf(h, degree, prov.clone()).unwrap();
    let text = f.to_json();
    let loaded = AlgebraFile::from_json(&text).unwrap().load().unwrap();
    let again = AlgebraFile::from_quasi_hopf(&loaded.hopf, loaded.degree.as_deref(), prov).unwrap();
    assert_eq!(again.to_json(), text, "{}", h.name());
}

#[test]
fn hps_fixtures() {
    for p in [3u32, 5, 7] {
        for s in 1..p {
            round_trips(&build_hps(HpsParams::new(p, s).unwrap()).unwrap(), None);
        }
    }
}

#[test]
fn aq_fixtures() {
    for k in [1i64, 2, 4, 5, 7, 8] {
        let a = build_aq(AqParams::new(3, k).unwrap()).unwrap();
        round_trips(a.base(), Some(a.degrees()));
    }
}

#[test]
fn twisted_fixtures() {
    let (h, j) = build_j_cyclic(3, 1).unwrap();
    round_trips(&twist_quasi_hopf(&h, &j, Direction::Forward).unwrap(), None);
    let a = TwistConstruction::from_datum(&SkewPrimitiveDatum::sl2(3))
        .unwrap()
        .extract_subalgebra()
        .unwrap();
    round_trips(a.base(), Some(a.degrees()));
}

#[test]
fn loaded_algebra_still_verifies() {
    let a = build_aq(AqParams::new(3, 4).unwrap()).unwrap();
    let f = AlgebraFile::from_graded(&a, Provenance { family: "aq".into(), parameters: json!({}) }).unwrap();
    let g = f.load().unwrap().graded().unwrap();
    assert!(g.verify_all().all_pass());
}

#[test]
fn datum_files_round_trip() {
    for d in [SkewPrimitiveDatum::sl2(3), SkewPrimitiveDatum::sl3(3), SkewPrimitiveDatum::rank_one(5, 2, 2)] {
        let s = serde_json::to_string_pretty(&d).unwrap();
        let back: SkewPrimitiveDatum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
