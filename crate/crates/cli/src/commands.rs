use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use qhopf::acceptance::{steps, Fixtures};
use qhopf::algebra::CheckOutcome;
use qhopf::classify::{
    check_p3_contradiction, check_product_is_4, eigenspace_decomposition, finite_type_filter, FiniteType,
};
use qhopf::cohomology::{
    check_cocycle, cocycle_from_phi, hps_automorphism_orbits, is_coboundary, not_twist_equivalent_certificate,
    orbits_match_qr, restrict_to_cyclic, Certificate, Cocycle3, Triviality,
};
use qhopf::families::{build_aq, build_hps, build_skew_primitive_hopf, classify_hps, AqParams, HpsParams, QrClass};
use qhopf::qhopf::{Status, VerifyReport, AXIOMS};
use qhopf::serial::{AlgebraFile, CheckEntry, Provenance, ReportFile};
use qhopf::twist::TwistConstruction;

use crate::io::{read_algebra, read_datum, write_json, CliError};
use crate::{CocycleAction, Family};

/// Files `repro` expects in its fixtures directory.
pub const FIXTURES: [&str; 3] = ["sl2_n3.json", "hps_3_1.json", "trivial_3.json"];

fn exit(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for family {family}")))
}

fn entry(name: &str, f: impl FnOnce() -> qhopf::Result<CheckOutcome>) -> CheckEntry {
    let start = Instant::now();
    let (status, witness) = match f() {
        Ok(CheckOutcome::Pass) => (Status::Pass, None),
        Ok(CheckOutcome::Fail(w)) => (Status::Fail, Some(w)),
        Err(qhopf::Error::SizeLimit(m)) => (Status::Skipped, Some(m)),
        Err(e) => (Status::Fail, Some(e.to_string())),
    };
    CheckEntry {
        name: name.to_string(),
        status,
        witness,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

pub fn build(
    family: Family,
    p: Option<u32>,
    s: Option<u32>,
    q_exp: Option<i64>,
    datum: Option<&Path>,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let file = match family {
        Family::Hps => {
            let (p, s) = (need(p, "p", "hps")?, need(s, "s", "hps")?);
            let h = build_hps(HpsParams::new(p, s)?)?;
            let prov = Provenance {
                family: "hps".into(),
                parameters: json!({"p": p, "s": s}),
            };
            AlgebraFile::from_quasi_hopf(&h, None, prov)?
        }
        Family::Aq => {
            let (p, k) = (need(p, "p", "aq")?, need(q_exp, "q-exp", "aq")?);
            let a = build_aq(AqParams::new(p, k)?)?;
            let prov = Provenance {
                family: "aq".into(),
                parameters: json!({"p": p, "q_exponent": k}),
            };
            AlgebraFile::from_graded(&a, prov)?
        }
        Family::SkewHopf | Family::TwistA => {
            let path = need(datum, "datum", "skew-hopf and twist-A")?;
            let d = read_datum(path)?;
            let prov = |name: &str| Provenance {
                family: name.into(),
                parameters: serde_json::to_value(&d).expect("datum serializes"),
            };
            if family == Family::SkewHopf {
                let h = build_skew_primitive_hopf(&d)?;
                AlgebraFile::from_graded(&h.hopf, prov("skew-hopf"))?
            } else {
                let a = TwistConstruction::from_datum(&d)?.extract_subalgebra()?;
                AlgebraFile::from_graded(&a, prov("twist-A"))?
            }
        }
    };
    eprintln!("built {} (dim {})", file.name, file.dim);
    write_json(&file, out)?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(input: &Path, axioms: &str, report: Option<&Path>) -> Result<ExitCode, CliError> {
    let loaded = read_algebra(input)?;
    let h = &loaded.hopf;
    let r = if axioms == "all" {
        match &loaded.degree {
            Some(_) => loaded.graded()?.verify_all(),
            None => h.verify_all(),
        }
    } else {
        let names: Vec<&str> = axioms.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let mut entries = Vec::new();
        for name in names {
            if name == "grading" {
                entries.push(loaded.graded()?.check_grading().report);
            } else if AXIOMS.contains(&name) {
                entries.extend(h.verify(&[name]).entries);
            } else {
                return Err(CliError::Usage(format!(
                    "unknown axiom {name:?}; expected one of {}, grading",
                    AXIOMS.join(", ")
                )));
            }
        }
        VerifyReport { entries }
    };
    let file = ReportFile::from_verify(h.name(), &r);
    for c in &file.checks {
        eprintln!("{:<22} {:?}{}", c.name, c.status, c.witness.as_ref().map(|w| format!(": {w}")).unwrap_or_default());
    }
    write_json(&file, report)?;
    Ok(exit(file.status == Status::Pass))
}

#[derive(Serialize)]
struct CocycleCheck {
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    cocycle: Cocycle3,
}

pub fn cocycle(input: &Path, action: CocycleAction, axis: Option<usize>, out: Option<&Path>) -> Result<ExitCode, CliError> {
    let loaded = read_algebra(input)?;
    let w = cocycle_from_phi(&loaded.hopf)?;
    match action {
        CocycleAction::Check => {
            let (status, witness) = match check_cocycle(&w)? {
                CheckOutcome::Pass => (Status::Pass, None),
                CheckOutcome::Fail(m) => (Status::Fail, Some(m)),
            };
            eprintln!("cocycle identity: {status:?}");
            write_json(&CocycleCheck { status, witness, cocycle: w }, out)?;
            Ok(exit(status == Status::Pass))
        }
        CocycleAction::Triviality => {
            let t = is_coboundary(&w)?;
            eprintln!("{}", if t.is_trivial() { "trivial" } else { "non-trivial" });
            write_json(&t, out)?;
            Ok(exit(matches!(t, Triviality::Trivial { .. })))
        }
        CocycleAction::Restrict => {
            let axis = axis.ok_or_else(|| CliError::Usage("restrict needs --axis".into()))?;
            let rank = w.group().rank();
            if axis >= rank {
                return Err(CliError::Usage(format!("axis {axis} out of range for a rank-{rank} group")));
            }
            let mut e = vec![0i64; rank];
            e[axis] = 1;
            let r = restrict_to_cyclic(&w, w.group().index_of(&e))?;
            eprintln!("restricted to Z_{}", r.group().size());
            write_json(&r, out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[derive(Serialize)]
struct TwistReport {
    report: ReportFile,
    certificate: Certificate,
}

pub fn twist(datum: &Path, out: Option<&Path>, report: Option<&Path>) -> Result<ExitCode, CliError> {
    let d = read_datum(datum)?;
    let t = TwistConstruction::from_datum(&d)?;
    let mut checks = vec![
        entry("coproduct_closure", || t.check_coproduct_closure()),
        entry("associator_closed_form", || t.check_associator_closed_form()),
    ];
    let a = t.extract_subalgebra()?;
    checks.push(entry("twisted_antipode", || t.check_twisted_antipode(&a)));
    for e in a.verify_all().entries {
        checks.push(CheckEntry {
            name: e.axiom,
            status: e.status,
            witness: e.witness,
            timing_ms: e.timing_ms,
        });
    }
    let certificate = not_twist_equivalent_certificate(&a, &d)?;
    let file = ReportFile::new(a.base().name(), checks);
    for c in &file.checks {
        eprintln!("{:<24} {:?}", c.name, c.status);
    }
    eprintln!("twist equivalent to a Hopf algebra: {}", if certificate.non_trivial { "no" } else { "not excluded" });
    let prov = Provenance {
        family: "twist-A".into(),
        parameters: serde_json::to_value(&d).expect("datum serializes"),
    };
    write_json(&AlgebraFile::from_graded(&a, prov)?, out)?;
    if let Some(path) = report {
        write_json(&TwistReport { report: file.clone(), certificate }, Some(path))?;
    }
    Ok(exit(file.status == Status::Pass))
}

#[derive(Serialize)]
struct ClassifyTable {
    product_is_4: BTreeMap<u32, Status>,
    p3_contradiction: Status,
    finite_types: Vec<FiniteTypeRow>,
    hps_classes: BTreeMap<u32, Vec<HpsRow>>,
    orbits: BTreeMap<u32, Vec<Vec<u32>>>,
    orbits_match_qr: BTreeMap<u32, bool>,
    aq_eigenspaces: BTreeMap<i64, BTreeMap<u32, usize>>,
}

#[derive(Serialize)]
struct FiniteTypeRow {
    a12: i64,
    a21: i64,
    finite_type: FiniteType,
}

#[derive(Serialize)]
struct HpsRow {
    s: u32,
    class: QrClass,
}

fn status(o: CheckOutcome) -> Status {
    if o.passed() {
        Status::Pass
    } else {
        Status::Fail
    }
}

pub fn classify(primes: &[u32], out: Option<&Path>) -> Result<ExitCode, CliError> {
    let mut table = ClassifyTable {
        product_is_4: BTreeMap::new(),
        p3_contradiction: status(check_p3_contradiction()),
        finite_types: [(0, 0), (-1, -1), (-1, -2), (-1, -3), (-2, -2), (-1, -4)]
            .into_iter()
            .map(|(a12, a21)| FiniteTypeRow {
                a12,
                a21,
                finite_type: finite_type_filter(a12, a21),
            })
            .collect(),
        hps_classes: BTreeMap::new(),
        orbits: BTreeMap::new(),
        orbits_match_qr: BTreeMap::new(),
        aq_eigenspaces: BTreeMap::new(),
    };
    for &p in primes {
        table.product_is_4.insert(p, status(check_product_is_4(p)?));
        let rows = (1..p)
            .map(|s| Ok(HpsRow { s, class: classify_hps(HpsParams::new(p, s)?) }))
            .collect::<qhopf::Result<Vec<_>>>()?;
        table.hps_classes.insert(p, rows);
        let orbits = hps_automorphism_orbits(p)?;
        table.orbits_match_qr.insert(p, orbits_match_qr(p, &orbits)?);
        table.orbits.insert(p, orbits);
    }
    for k in [1i64, 2, 4, 5, 7, 8] {
        table.aq_eigenspaces.insert(k, eigenspace_decomposition(&build_aq(AqParams::new(3, k)?)?)?);
    }
    let pass = table.product_is_4.values().all(|s| *s == Status::Pass)
        && table.p3_contradiction == Status::Pass
        && table.orbits_match_qr.values().all(|&b| b);
    write_json(&table, out)?;
    Ok(exit(pass))
}

pub fn default_fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn repro(only: Option<&str>, fixtures: Option<PathBuf>) -> Result<ExitCode, CliError> {
    let dir = fixtures.unwrap_or_else(default_fixtures_dir);
    for name in FIXTURES {
        if !dir.join(name).is_file() {
            return Err(CliError::Usage(format!("missing fixture {}", dir.join(name).display())));
        }
    }
    let loaded = Fixtures {
        sl2: read_datum(&dir.join("sl2_n3.json"))?,
    };
    read_algebra(&dir.join("hps_3_1.json"))?;
    read_algebra(&dir.join("trivial_3.json"))?;

    let selected: Vec<_> = steps().into_iter().filter(|s| only.is_none_or(|f| s.matches(f))).collect();
    if selected.is_empty() {
        return Err(CliError::Usage(format!("no step matches {:?}", only.unwrap_or_default())));
    }
    let start = Instant::now();
    let mut passed = 0;
    for step in &selected {
        let r = step.run(&loaded);
        passed += usize::from(r.status == Status::Pass);
        println!("{}", r.line());
    }
    println!(
        "{passed} of {} steps passed in {:.2}s",
        selected.len(),
        start.elapsed().as_secs_f64()
    );
    Ok(exit(passed == selected.len()))
}
