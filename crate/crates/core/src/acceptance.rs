//! The reproduction suite: every end-to-end claim the crate checks, as
//! named, independently runnable steps.

use std::sync::OnceLock;
use std::time::Instant;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::CheckOutcome;
use crate::classify::{census_entry, check_p3_contradiction, check_product_is_4, finite_type_filter, FiniteType};
use crate::cohomology::{
    check_cocycle, cocycle_from_phi, hps_automorphism_orbits, is_coboundary, not_twist_equivalent_certificate,
    orbits_match_qr, Cochain2,
};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::families::{
    build_aq, build_hps, build_skew_primitive_hopf, check_group_projection, AqParams, HpsParams,
    SkewPrimitiveDatum,
};
use crate::qhopf::{GradedQuasiHopf, QuasiHopf, Status};
use crate::twist::{build_j_cyclic, check_c_periodicity, check_cyclic_twist_associator, twist_quasi_hopf, Direction, TwistConstruction};

/// Inputs read from fixture files by callers that have them.
#[derive(Debug, Clone)]
pub struct Fixtures {
    pub sl2: SkewPrimitiveDatum,
}

impl Default for Fixtures {
    fn default() -> Self {
        Fixtures {
            sl2: SkewPrimitiveDatum::sl2(3),
        }
    }
}

pub struct Step {
    pub criterion: u8,
    pub key: &'static str,
    pub title: &'static str,
    run: fn(&Fixtures) -> Result<CheckOutcome>,
}

#[derive(Debug, Clone)]
pub struct StepResult {
    pub criterion: u8,
    pub key: &'static str,
    pub title: &'static str,
    pub status: Status,
    pub detail: Option<String>,
    pub seconds: f64,
}

impl Step {
    pub fn run(&self, fixtures: &Fixtures) -> StepResult {
        let start = Instant::now();
        let (status, detail) = match (self.run)(fixtures) {
            Ok(CheckOutcome::Pass) => (Status::Pass, None),
            Ok(CheckOutcome::Fail(w)) => (Status::Fail, Some(w)),
            Err(Error::SizeLimit(m)) => (Status::Skipped, Some(m)),
            Err(e) => (Status::Fail, Some(e.to_string())),
        };
        StepResult {
            criterion: self.criterion,
            key: self.key,
            title: self.title,
            status,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        }
    }

    /// Whether `filter` names this step by key or criterion number.
    pub fn matches(&self, filter: &str) -> bool {
        filter == self.key || filter.parse::<u8>().is_ok_and(|c| c == self.criterion)
    }
}

impl StepResult {
    pub fn line(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let mut s = format!("[{status}] {:>2} {:<18} {} ({:.2}s)", self.criterion, self.key, self.title, self.seconds);
        if let Some(d) = &self.detail {
            s.push_str(&format!(": {d}"));
        }
        s
    }
}

pub fn steps() -> Vec<Step> {
    vec![
        Step { criterion: 1, key: "hps", title: "H(p,s) axioms, p in {3,5,7}", run: hps_axioms },
        Step { criterion: 2, key: "aq", title: "A(q) for the six primitive 9th roots", run: aq_family },
        Step { criterion: 3, key: "dj", title: "cyclic twist associator is Phi_s, p in {3,5}", run: dj_is_phi_s },
        Step { criterion: 4, key: "periodicity", title: "twist coefficients are p-periodic", run: periodicity },
        Step { criterion: 5, key: "sl2-build", title: "u_q(b) for sl2, n = 3", run: sl2_build },
        Step { criterion: 5, key: "lemma41", title: "twisted coproduct closes on A", run: lemma41 },
        Step { criterion: 5, key: "lemma42", title: "twisted associator matches closed form", run: lemma42 },
        Step { criterion: 5, key: "sl2-subalgebra", title: "A has dim 27 and verifies", run: sl2_subalgebra },
        Step { criterion: 6, key: "certificate", title: "A is not twist equivalent to a Hopf algebra", run: certificate },
        Step { criterion: 7, key: "qr", title: "automorphism orbits are the QR classes", run: qr_orbits },
        Step { criterion: 8, key: "arithmetic", title: "Cartan arithmetic and finite types", run: arithmetic },
        Step { criterion: 9, key: "cross-validation", title: "pentagon vs cocycle, coboundary round trips", run: cross_validation },
        Step { criterion: 10, key: "census", title: "fixture census: rank <= 1, dim in {p, p^3}", run: census },
    ]
}

fn fail(msg: impl Into<String>) -> Result<CheckOutcome> {
    Ok(CheckOutcome::Fail(msg.into()))
}

fn verified(name: &str, h: &QuasiHopf) -> Result<Option<String>> {
    let r = h.verify_all();
    Ok(r.failures().first().map(|f| {
        format!("{name}: {} {:?} {}", f.axiom, f.status, f.witness.clone().unwrap_or_default())
    }))
}

fn primitive_exponents(order: u32) -> impl Iterator<Item = i64> {
    (1..order as i64).filter(move |k| k.gcd(&(order as i64)) == 1)
}

fn hps_axioms(_: &Fixtures) -> Result<CheckOutcome> {
    for p in [3u32, 5, 7] {
        for s in 1..p {
            let h = build_hps(HpsParams::new(p, s)?)?;
            if let Some(w) = verified(&format!("H({p},{s})"), &h)? {
                return fail(w);
            }
        }
    }
    Ok(CheckOutcome::Pass)
}

fn aq_family(_: &Fixtures) -> Result<CheckOutcome> {
    for k in primitive_exponents(9) {
        let a = build_aq(AqParams::new(3, k)?)?;
        if a.base().dim() != 27 {
            return fail(format!("A(q^{k}) has dim {}", a.base().dim()));
        }
        let r = a.verify_all();
        if let Some(f) = r.failures().first() {
            return fail(format!("A(q^{k}): {} {}", f.axiom, f.witness.clone().unwrap_or_default()));
        }
        let rank = a.rank_degree_one()?;
        if rank != 1.into() {
            return fail(format!("A(q^{k}) has rank {rank}"));
        }
    }
    Ok(CheckOutcome::Pass)
}

fn dj_is_phi_s(_: &Fixtures) -> Result<CheckOutcome> {
    for p in [3u32, 5] {
        for k in primitive_exponents(p * p) {
            if let CheckOutcome::Fail(w) = check_cyclic_twist_associator(p, k, Direction::Forward)? {
                return fail(format!("p={p} k={k}: {w}"));
            }
        }
    }
    Ok(CheckOutcome::Pass)
}

fn periodicity(_: &Fixtures) -> Result<CheckOutcome> {
    for n in [3u32, 5] {
        for k in primitive_exponents(n * n) {
            if let CheckOutcome::Fail(w) = check_c_periodicity(&CycloNum::root_of_unity(n * n, k), n)? {
                return fail(format!("n={n} k={k}: {w}"));
            }
        }
    }
    Ok(CheckOutcome::Pass)
}

// Built once per process from the first fixtures seen.
fn sl2_construction(f: &Fixtures) -> Result<&'static TwistConstruction> {
    static CELL: OnceLock<Result<TwistConstruction>> = OnceLock::new();
    CELL.get_or_init(|| TwistConstruction::from_datum(&f.sl2)).as_ref().map_err(Clone::clone)
}

fn sl2_algebra(f: &Fixtures) -> Result<&'static GradedQuasiHopf> {
    static CELL: OnceLock<Result<GradedQuasiHopf>> = OnceLock::new();
    CELL.get_or_init(|| sl2_construction(f)?.extract_subalgebra())
        .as_ref()
        .map_err(Clone::clone)
}

fn sl2_build(f: &Fixtures) -> Result<CheckOutcome> {
    let h = build_skew_primitive_hopf(&f.sl2)?;
    if h.algebra().dim() != 81 {
        return fail(format!("u_q(b) has dim {}", h.algebra().dim()));
    }
    check_group_projection(&h)
}

fn lemma41(f: &Fixtures) -> Result<CheckOutcome> {
    sl2_construction(f)?.check_coproduct_closure()
}

fn lemma42(f: &Fixtures) -> Result<CheckOutcome> {
    sl2_construction(f)?.check_associator_closed_form()
}

fn sl2_subalgebra(f: &Fixtures) -> Result<CheckOutcome> {
    let a = sl2_algebra(f)?;
    if a.base().dim() != 27 {
        return fail(format!("A has dim {}", a.base().dim()));
    }
    match a.verify_all().failures().first() {
        Some(e) => fail(format!("A: {} {}", e.axiom, e.witness.clone().unwrap_or_default())),
        None => Ok(CheckOutcome::Pass),
    }
}

fn certificate(f: &Fixtures) -> Result<CheckOutcome> {
    let cert = not_twist_equivalent_certificate(sl2_algebra(f)?, &f.sl2)?;
    if !cert.non_trivial {
        return fail("no axis restriction is non-trivial");
    }
    for axis in &cert.axes {
        if is_coboundary(&axis.restricted)?.is_trivial() {
            return fail(format!("restriction to axis {} is a coboundary", axis.axis));
        }
    }
    Ok(CheckOutcome::Pass)
}

fn qr_orbits(_: &Fixtures) -> Result<CheckOutcome> {
    for p in [3u32, 5, 7] {
        let orbits = hps_automorphism_orbits(p)?;
        if orbits.len() != 2 || !orbits_match_qr(p, &orbits)? {
            return fail(format!("p={p}: orbits {orbits:?}"));
        }
    }
    Ok(CheckOutcome::Pass)
}

fn arithmetic(_: &Fixtures) -> Result<CheckOutcome> {
    for p in [3u32, 5, 7] {
        if let CheckOutcome::Fail(w) = check_product_is_4(p)? {
            return fail(format!("p={p}: {w}"));
        }
    }
    if let CheckOutcome::Fail(w) = check_p3_contradiction() {
        return Ok(CheckOutcome::Fail(w));
    }
    let expected = [
        ((0, 0), FiniteType::A1xA1),
        ((-1, -1), FiniteType::A2),
        ((-1, -2), FiniteType::B2),
        ((-1, -3), FiniteType::G2),
        ((-2, -2), FiniteType::NotFiniteType),
        ((-1, -4), FiniteType::NotFiniteType),
    ];
    for ((a12, a21), t) in expected {
        if finite_type_filter(a12, a21) != t {
            return fail(format!("({a12}, {a21}) is not {t:?}"));
        }
    }
    Ok(CheckOutcome::Pass)
}

/// Every fixture whose associator is diagonal over its group part.
fn diagonal_fixtures(f: &Fixtures) -> Result<Vec<QuasiHopf>> {
    let mut out = Vec::new();
    for p in [3u32, 5, 7] {
        for s in 1..p {
            out.push(build_hps(HpsParams::new(p, s)?)?);
        }
    }
    for k in primitive_exponents(9) {
        out.push(build_aq(AqParams::new(3, k)?)?.into_base());
    }
    for k in primitive_exponents(9) {
        let (h, j) = build_j_cyclic(3, k)?;
        out.push(twist_quasi_hopf(&h, &j, Direction::Forward)?);
    }
    out.push(sl2_algebra(f)?.base().clone());
    Ok(out)
}

fn cross_validation(f: &Fixtures) -> Result<CheckOutcome> {
    for h in diagonal_fixtures(f)? {
        let pentagon = h.check_pentagon()?.passed();
        let cocycle = check_cocycle(&cocycle_from_phi(&h)?)?.passed();
        if !(pentagon && cocycle) {
            return fail(format!("{}: pentagon {pentagon}, cocycle {cocycle}", h.name()));
        }
    }
    // Corrupting one value must break both checks together.
    let h = build_hps(HpsParams::new(3, 2)?)?;
    let gp = h.group_part().expect("H(p,s) has a group part").clone();
    let base = cocycle_from_phi(&h)?;
    for bump in 0..27usize {
        let exp = |b: &[usize], sign: i64| {
            let idx = (b[0] * 3 + b[1]) * 3 + b[2];
            let e = base.table()[idx] as i64 * 3 / base.value_order() as i64 + i64::from(idx == bump);
            CycloNum::root_of_unity(3, sign * e)
        };
        let bad = h.with_parts(|parts| {
            parts.phi = gp.diagonal(3, |b| exp(b, 1)).expect("diagonal over the group part");
            parts.phi_inv = gp.diagonal(3, |b| exp(b, -1)).expect("diagonal over the group part");
        })?;
        let pentagon = bad.check_pentagon()?.passed();
        let cocycle = check_cocycle(&cocycle_from_phi(&bad)?)?.passed();
        if pentagon != cocycle {
            return fail(format!("bump {bump}: pentagon {pentagon}, cocycle {cocycle}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (orders, value_order) in [(vec![3u32], 9u32), (vec![5], 25), (vec![3, 3], 3)] {
        let n: usize = orders.iter().map(|&d| d as usize).product();
        for trial in 0..100 {
            let mu = Cochain2 {
                orders: orders.clone(),
                value_order,
                table: (0..n * n).map(|_| rng.gen_range(0..value_order)).collect(),
            };
            if !is_coboundary(&mu.coboundary()?)?.is_trivial() {
                return fail(format!("orders {orders:?} trial {trial}: dμ not recognised as a coboundary"));
            }
        }
    }
    Ok(CheckOutcome::Pass)
}

fn census(f: &Fixtures) -> Result<CheckOutcome> {
    let mut rows = Vec::new();
    for p in [3u32, 5, 7] {
        for s in 1..p {
            let h = build_hps(HpsParams::new(p, s)?)?;
            rows.push(census_entry(&GradedQuasiHopf::new(h, vec![0; p as usize])?)?);
        }
    }
    for k in primitive_exponents(9) {
        rows.push(census_entry(&build_aq(AqParams::new(3, k)?)?)?);
    }
    rows.push(census_entry(sl2_algebra(f)?)?);
    if !rows.iter().any(|r| r.nontrivial_associator && r.prime_codimension) {
        return fail("no fixture falls under the census hypothesis");
    }
    match rows.iter().find(|r| !r.consistent) {
        Some(r) => fail(format!("{}: dim {}, rank {}/{}", r.name, r.dim, r.rank_num, r.rank_den)),
        None => Ok(CheckOutcome::Pass),
    }
}
