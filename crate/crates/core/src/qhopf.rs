//! Quasi-Hopf structures on finite-dimensional algebras and the exact
//! verifier for their axioms.
//!
//! Conventions (Drinfeld):
//!
//! * `Φ (Δ⊗id)Δ(h) Φ⁻¹ = (id⊗Δ)Δ(h)`
//! * `(id⊗id⊗Δ)(Φ) (Δ⊗id⊗id)(Φ) = (1⊗Φ) (id⊗Δ⊗id)(Φ) (Φ⊗1)`
//! * `(ε⊗id⊗id)(Φ) = (id⊗ε⊗id)(Φ) = (id⊗id⊗ε)(Φ) = 1⊗1`
//! * `S(h₁) α h₂ = ε(h) α`, `h₁ β S(h₂) = ε(h) β`,
//!   `Φ¹ β S(Φ²) α Φ³ = 1`, `S(Φ̄¹) α Φ̄² β S(Φ̄³) = 1`

use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::algebra::{check_associativity, size_limit, tensor_map, AlgElement, CheckOutcome, FinAlgebra, GroupPart, LinMap};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};

/// Above this dimension, multiplicative checks run on generators.
const EXHAUSTIVE_DIM: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one axiom check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    pub timing_ms: f64,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub entries: Vec<AxiomReport>,
}

impl VerifyReport {
    /// True iff every entry passed (skipped entries count as not passed).
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(AxiomReport::passed)
    }

    pub fn any_fail(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomReport> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn failures(&self) -> Vec<&AxiomReport> {
        self.entries.iter().filter(|e| !e.passed()).collect()
    }
}

/// The axioms run by [`QuasiHopf::verify_all`], in order.
pub const AXIOMS: [&str; 8] = [
    "associativity",
    "hom",
    "counit",
    "phi_inverse",
    "quasi_coassociativity",
    "pentagon",
    "counit_phi",
    "antipode",
];

pub(crate) struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    pub(crate) fn start() -> Self {
        Stopwatch {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    pub(crate) fn ms(&self) -> f64 {
        #[cfg(not(target_arch = "wasm32"))]
        {
            self.start.elapsed().as_secs_f64() * 1000.0
        }
        #[cfg(target_arch = "wasm32")]
        {
            0.0
        }
    }
}

fn timed(axiom: &str, f: impl FnOnce() -> Result<CheckOutcome>) -> AxiomReport {
    let sw = Stopwatch::start();
    let (status, witness) = match f() {
        Ok(CheckOutcome::Pass) => (Status::Pass, None),
        Ok(CheckOutcome::Fail(w)) => (Status::Fail, Some(w)),
        Err(Error::SizeLimit(m)) => (Status::Skipped, Some(m)),
        Err(e) => (Status::Fail, Some(e.to_string())),
    };
    AxiomReport {
        axiom: axiom.to_string(),
        status,
        witness,
        timing_ms: sw.ms(),
    }
}

fn outcome(fail: Option<String>) -> CheckOutcome {
    match fail {
        Some(w) => CheckOutcome::Fail(w),
        None => CheckOutcome::Pass,
    }
}

/// An algebra with coproduct, counit, associator and antipode data.
#[derive(Debug, Clone)]
pub struct QuasiHopf {
    name: String,
    alg: Arc<FinAlgebra>,
    delta: LinMap,
    counit: LinMap,
    antipode: LinMap,
    alpha: AlgElement,
    beta: AlgElement,
    phi: AlgElement,
    phi_inv: AlgElement,
    group_part: Option<GroupPart>,
}

pub struct QuasiHopfParts {
    pub delta: LinMap,
    pub counit: LinMap,
    pub antipode: LinMap,
    pub alpha: AlgElement,
    pub beta: AlgElement,
    pub phi: AlgElement,
    pub phi_inv: AlgElement,
    pub group_part: Option<GroupPart>,
}

impl QuasiHopf {
    pub fn new(name: impl Into<String>, alg: &Arc<FinAlgebra>, parts: QuasiHopfParts) -> Result<Self> {
        let want_map = |m: &LinMap, cod: u32, what: &str| -> Result<()> {
            if m.domain().id() != alg.id() || m.codomain().id() != alg.id() || m.dom_degree() != 1 || m.cod_degree() != cod {
                return Err(Error::AlgebraMismatch(format!("{what} has the wrong shape")));
            }
            Ok(())
        };
        want_map(&parts.delta, 2, "coproduct")?;
        want_map(&parts.counit, 0, "counit")?;
        want_map(&parts.antipode, 1, "antipode")?;
        let want_elem = |u: &AlgElement, deg: u32, what: &str| -> Result<()> {
            if u.algebra().id() != alg.id() || u.degree() != deg {
                return Err(Error::AlgebraMismatch(format!("{what} has the wrong shape")));
            }
            Ok(())
        };
        want_elem(&parts.alpha, 1, "alpha")?;
        want_elem(&parts.beta, 1, "beta")?;
        want_elem(&parts.phi, 3, "associator")?;
        want_elem(&parts.phi_inv, 3, "inverse associator")?;
        if let Some(gp) = &parts.group_part {
            if gp.algebra().id() != alg.id() {
                return Err(Error::AlgebraMismatch("group part of another algebra".into()));
            }
        }
        Ok(QuasiHopf {
            name: name.into(),
            alg: alg.clone(),
            delta: parts.delta,
            counit: parts.counit,
            antipode: parts.antipode,
            alpha: parts.alpha,
            beta: parts.beta,
            phi: parts.phi,
            phi_inv: parts.phi_inv,
            group_part: parts.group_part,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<FinAlgebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn delta(&self) -> &LinMap {
        &self.delta
    }

    pub fn counit(&self) -> &LinMap {
        &self.counit
    }

    pub fn antipode(&self) -> &LinMap {
        &self.antipode
    }

    pub fn alpha(&self) -> &AlgElement {
        &self.alpha
    }

    pub fn beta(&self) -> &AlgElement {
        &self.beta
    }

    pub fn phi(&self) -> &AlgElement {
        &self.phi
    }

    pub fn phi_inv(&self) -> &AlgElement {
        &self.phi_inv
    }

    pub fn group_part(&self) -> Option<&GroupPart> {
        self.group_part.as_ref()
    }

    pub fn into_parts(self) -> QuasiHopfParts {
        QuasiHopfParts {
            delta: self.delta,
            counit: self.counit,
            antipode: self.antipode,
            alpha: self.alpha,
            beta: self.beta,
            phi: self.phi,
            phi_inv: self.phi_inv,
            group_part: self.group_part,
        }
    }

    pub fn parts(&self) -> QuasiHopfParts {
        self.clone().into_parts()
    }

    /// A copy with some structure replaced; shapes are re-validated.
    pub fn with_parts(&self, f: impl FnOnce(&mut QuasiHopfParts)) -> Result<Self> {
        let mut parts = self.parts();
        f(&mut parts);
        Self::new(self.name.clone(), &self.alg, parts)
    }

    pub fn coproduct(&self, h: &AlgElement) -> Result<AlgElement> {
        self.delta.apply(h)
    }

    pub fn counit_of(&self, h: &AlgElement) -> Result<CycloNum> {
        Ok(self.counit.apply(h)?.scalar_value())
    }

    fn basis(&self, i: usize) -> AlgElement {
        AlgElement::basis(&self.alg, i)
    }

    fn label(&self, i: usize) -> &str {
        &self.alg.labels()[i]
    }

    fn guard(&self, work: u64, what: &str) -> Result<()> {
        if work > size_limit() {
            return Err(Error::SizeLimit(format!("{what} on {} needs ~{work} operations", self.name)));
        }
        Ok(())
    }

    /// Basis indices of the monomial generators, provided every basis
    /// element is a nonzero multiple of a generator times a shorter basis
    /// monomial. `None` when the algebra is small or this cannot be confirmed.
    fn generator_indices(&self) -> Option<Vec<usize>> {
        if self.dim() <= EXHAUSTIVE_DIM {
            return None;
        }
        let m = self.alg.monomials()?;
        let index = m.index_map();
        let mut gens: Vec<Option<usize>> = vec![None; m.generators.len()];
        for (t, g) in gens.iter_mut().enumerate() {
            let mut e = vec![0; m.generators.len()];
            e[t] = 1;
            *g = index.get(&e).copied();
        }
        for (b, ex) in m.exponents.iter().enumerate() {
            let Some(t) = ex.iter().position(|&k| k > 0) else {
                match self.alg.unit_terms() {
                    [(u, c)] if *u == b && c.is_one() => continue,
                    _ => return None,
                }
            };
            let mut shorter = ex.clone();
            shorter[t] -= 1;
            let rest = *index.get(&shorter)?;
            match &*self.alg.basis_product(gens[t]?, rest) {
                [(k, c)] if *k as usize == b && !c.is_zero() => {}
                _ => return None,
            }
        }
        Some(gens.into_iter().flatten().collect())
    }

    /// Δ and ε are unital algebra maps. Large algebras with a monomial basis
    /// are checked on (generator, basis) pairs, which implies all pairs.
    pub fn check_hom(&self) -> Result<CheckOutcome> {
        let d = self.dim();
        let left: Vec<usize> = self.generator_indices().unwrap_or_else(|| (0..d).collect());
        self.guard((left.len() * d) as u64, "homomorphism check")?;
        let one = AlgElement::unit(&self.alg, 1);
        if self.delta.apply(&one)? != AlgElement::unit(&self.alg, 2) {
            return Ok(CheckOutcome::Fail("Δ(1) != 1⊗1".into()));
        }
        if !self.counit_of(&one)?.is_one() {
            return Ok(CheckOutcome::Fail("ε(1) != 1".into()));
        }
        let deltas: Vec<AlgElement> = crate::par::try_map_indexed(d, |i| self.delta.apply(&self.basis(i)))?;
        let counits: Vec<CycloNum> = crate::par::try_map_indexed(d, |i| self.counit_of(&self.basis(i)))?;
        let fail = crate::par::find_first(left.len() * d, |ij| {
            let (i, j) = (left[ij / d], ij % d);
            let prod = self.basis(i).mul(&self.basis(j)).ok()?;
            let lhs = self.delta.apply(&prod).ok()?;
            let rhs = deltas[i].mul(&deltas[j]).ok()?;
            if lhs != rhs {
                return Some(format!("Δ({} · {})", self.label(i), self.label(j)));
            }
            let e = self.counit_of(&prod).ok()?;
            (e != &counits[i] * &counits[j]).then(|| format!("ε({} · {})", self.label(i), self.label(j)))
        });
        Ok(outcome(fail))
    }

    /// `(ε⊗id)Δ = id = (id⊗ε)Δ` on every basis element.
    pub fn check_counit(&self) -> Result<CheckOutcome> {
        let id = LinMap::identity(&self.alg, 1);
        let left = tensor_map(&[self.counit.clone(), id.clone()])?;
        let right = tensor_map(&[id, self.counit.clone()])?;
        let fail = crate::par::find_first(self.dim(), |i| {
            let h = self.basis(i);
            let dh = self.delta.apply(&h).ok()?;
            let ok = left.apply(&dh).ok()? == h && right.apply(&dh).ok()? == h;
            (!ok).then(|| format!("h = {}", self.label(i)))
        });
        Ok(outcome(fail))
    }

    /// `Φ Φ⁻¹ = Φ⁻¹ Φ = 1⊗1⊗1`.
    pub fn check_phi_inverse(&self) -> Result<CheckOutcome> {
        let one = AlgElement::unit(&self.alg, 3);
        if self.phi.mul(&self.phi_inv)? != one {
            return Ok(CheckOutcome::Fail("Φ Φ⁻¹ != 1".into()));
        }
        if self.phi_inv.mul(&self.phi)? != one {
            return Ok(CheckOutcome::Fail("Φ⁻¹ Φ != 1".into()));
        }
        Ok(CheckOutcome::Pass)
    }

    /// `Φ (Δ⊗id)Δ(h) = (id⊗Δ)Δ(h) Φ` for every basis element, which is the
    /// stated axiom multiplied on the right by `Φ`. When Δ is multiplicative
    /// both sides are multiplicative in `h`, so large algebras with a
    /// monomial basis are checked on generators only.
    pub fn check_quasi_coassociativity(&self) -> Result<CheckOutcome> {
        let targets: Vec<usize> = match self.generator_indices() {
            Some(g) if self.check_hom()?.passed() => g,
            _ => (0..self.dim()).collect(),
        };
        let id = LinMap::identity(&self.alg, 1);
        let left_map = tensor_map(&[self.delta.clone(), id.clone()])?;
        let right_map = tensor_map(&[id, self.delta.clone()])?;
        let fail = crate::par::find_first(targets.len(), |t| {
            let i = targets[t];
            let dh = self.delta.apply(&self.basis(i)).ok()?;
            let lhs = self.phi.mul(&left_map.apply(&dh).ok()?).ok()?;
            let rhs = right_map.apply(&dh).ok()?.mul(&self.phi).ok()?;
            (lhs != rhs).then(|| format!("h = {}", self.label(i)))
        });
        Ok(outcome(fail))
    }

    /// The pentagon identity in the fourth tensor power.
    pub fn check_pentagon(&self) -> Result<CheckOutcome> {
        let d = self.dim() as u64;
        d.checked_pow(4)
            .ok_or_else(|| Error::SizeLimit("fourth tensor power index overflows".into()))?;
        let id1 = LinMap::identity(&self.alg, 1);
        let id2 = LinMap::identity(&self.alg, 2);
        let one = AlgElement::unit(&self.alg, 1);
        let a = tensor_map(&[id2.clone(), self.delta.clone()])?.apply(&self.phi)?;
        let b = tensor_map(&[self.delta.clone(), id2])?.apply(&self.phi)?;
        let lhs = a.mul(&b)?;
        let c = one.tensor(&self.phi)?;
        let m = tensor_map(&[id1.clone(), self.delta.clone(), id1])?.apply(&self.phi)?;
        let e = self.phi.tensor(&one)?;
        let rhs = c.mul(&m)?.mul(&e)?;
        if lhs == rhs {
            return Ok(CheckOutcome::Pass);
        }
        let diff = lhs.sub(&rhs)?;
        let (idx, coeff) = diff.terms()[0].clone();
        let comps: Vec<&str> = diff.components(idx).iter().map(|&k| self.label(k)).collect();
        Ok(CheckOutcome::Fail(format!(
            "difference has coefficient {coeff} on [{}]",
            comps.join(" ⊗ ")
        )))
    }

    /// Normalization of Φ under the counit in each slot.
    pub fn check_counit_phi(&self) -> Result<CheckOutcome> {
        let id = LinMap::identity(&self.alg, 1);
        let eps = self.counit.clone();
        let target = AlgElement::unit(&self.alg, 2);
        let slots = [
            ("(ε⊗id⊗id)", vec![eps.clone(), id.clone(), id.clone()]),
            ("(id⊗ε⊗id)", vec![id.clone(), eps.clone(), id.clone()]),
            ("(id⊗id⊗ε)", vec![id.clone(), id, eps]),
        ];
        for (name, maps) in slots {
            if tensor_map(&maps)?.apply(&self.phi)? != target {
                return Ok(CheckOutcome::Fail(format!("{name}(Φ) != 1⊗1")));
            }
        }
        Ok(CheckOutcome::Pass)
    }

    /// `Σ x_{i1} u S(x_{i2}) v x_{i3}`-style contractions: applies `S` to the
    /// slots flagged in `antipode_slots`, then multiplies the slots in order
    /// with `inserts[k]` placed between slot `k` and `k+1`.
    pub(crate) fn contract(&self, t: &AlgElement, antipode_slots: &[bool], inserts: &[&AlgElement]) -> Result<AlgElement> {
        let d = self.alg.dim();
        let k = t.degree();
        let mut acc = AlgElement::zero(&self.alg, 1);
        let mut images: Vec<Option<AlgElement>> = vec![None; d];
        for (idx, c) in t.terms() {
            let comps = crate::algebra::split_index(*idx, d, k);
            let mut prod: Option<AlgElement> = None;
            for (pos, &b) in comps.iter().enumerate() {
                let factor = if antipode_slots[pos] {
                    if images[b].is_none() {
                        images[b] = Some(self.antipode.apply(&self.basis(b))?);
                    }
                    images[b].clone().expect("filled")
                } else {
                    self.basis(b)
                };
                prod = Some(match prod {
                    None => factor,
                    Some(p) => p.mul(&factor)?,
                });
                if pos < inserts.len() {
                    prod = Some(prod.expect("set").mul(inserts[pos])?);
                }
            }
            acc = acc.add(&prod.expect("degree ≥ 1").scale(c))?;
        }
        Ok(acc)
    }

    /// The four antipode identities plus anti-multiplicativity of `S`.
    pub fn check_antipode(&self) -> Result<CheckOutcome> {
        let d = self.dim();
        self.guard((d * d) as u64, "antipode check")?;
        let one = AlgElement::unit(&self.alg, 1);
        if self.antipode.apply(&one)? != one {
            return Ok(CheckOutcome::Fail("S(1) != 1".into()));
        }
        let images: Vec<AlgElement> = crate::par::try_map_indexed(d, |i| self.antipode.apply(&self.basis(i)))?;
        let anti = crate::par::find_first(d * d, |ij| {
            let (i, j) = (ij / d, ij % d);
            let lhs = self.antipode.apply(&self.basis(i).mul(&self.basis(j)).ok()?).ok()?;
            let rhs = images[j].mul(&images[i]).ok()?;
            (lhs != rhs).then(|| format!("S({} · {}) != S({}) S({})", self.label(i), self.label(j), self.label(j), self.label(i)))
        });
        if let Some(w) = anti {
            return Ok(CheckOutcome::Fail(w));
        }
        let fail = crate::par::find_first(d, |i| {
            let h = self.basis(i);
            let dh = self.delta.apply(&h).ok()?;
            let eps = self.counit_of(&h).ok()?;
            let left = self.contract(&dh, &[true, false], &[&self.alpha]).ok()?;
            if left != self.alpha.scale(&eps) {
                return Some(format!("S(h₁) α h₂ != ε(h) α for h = {}", self.label(i)));
            }
            let right = self.contract(&dh, &[false, true], &[&self.beta]).ok()?;
            (right != self.beta.scale(&eps)).then(|| format!("h₁ β S(h₂) != ε(h) β for h = {}", self.label(i)))
        });
        if let Some(w) = fail {
            return Ok(CheckOutcome::Fail(w));
        }
        let third = self.contract(&self.phi, &[false, true, false], &[&self.beta, &self.alpha])?;
        if third != one {
            return Ok(CheckOutcome::Fail("Φ¹ β S(Φ²) α Φ³ != 1".into()));
        }
        let fourth = self.contract(&self.phi_inv, &[true, false, true], &[&self.alpha, &self.beta])?;
        if fourth != one {
            return Ok(CheckOutcome::Fail("S(Φ̄¹) α Φ̄² β S(Φ̄³) != 1".into()));
        }
        Ok(CheckOutcome::Pass)
    }

    pub fn check(&self, axiom: &str) -> Result<AxiomReport> {
        let report = match axiom {
            "associativity" => timed(axiom, || check_associativity(&self.alg)),
            "hom" => timed(axiom, || self.check_hom()),
            "counit" => timed(axiom, || self.check_counit()),
            "phi_inverse" => timed(axiom, || self.check_phi_inverse()),
            "quasi_coassociativity" => timed(axiom, || self.check_quasi_coassociativity()),
            "pentagon" => timed(axiom, || self.check_pentagon()),
            "counit_phi" => timed(axiom, || self.check_counit_phi()),
            "antipode" => timed(axiom, || self.check_antipode()),
            other => return Err(Error::InvalidParams(format!("unknown axiom '{other}'"))),
        };
        Ok(report)
    }

    /// Runs every check in [`AXIOMS`]; failures become report entries.
    pub fn verify_all(&self) -> VerifyReport {
        self.verify(&AXIOMS)
    }

    pub fn verify(&self, axioms: &[&str]) -> VerifyReport {
        let entries = axioms
            .iter()
            .map(|a| {
                self.check(a).unwrap_or_else(|e| AxiomReport {
                    axiom: a.to_string(),
                    status: Status::Fail,
                    witness: Some(e.to_string()),
                    timing_ms: 0.0,
                })
            })
            .collect();
        VerifyReport { entries }
    }

    /// `(S, α, β) ↦ (u S(·) u⁻¹, u α, β u⁻¹)`, which preserves the axioms.
    pub fn gauge_antipode(&self, u: &AlgElement, u_inv: &AlgElement) -> Result<Self> {
        if u.mul(u_inv)? != AlgElement::unit(&self.alg, 1) {
            return Err(Error::InvalidParams("gauge element is not invertible as given".into()));
        }
        let images = crate::par::try_map_indexed(self.dim(), |i| {
            u.mul(&self.antipode.apply(&self.basis(i))?)?.mul(u_inv)
        })?;
        let antipode = LinMap::from_images(&self.alg, &self.alg, 1, images)?;
        let alpha = u.mul(&self.alpha)?;
        let beta = self.beta.mul(u_inv)?;
        self.with_parts(|p| {
            p.antipode = antipode;
            p.alpha = alpha;
            p.beta = beta;
        })
    }
}

/// A quasi-Hopf algebra with a grading by nonnegative integers on its basis.
#[derive(Debug, Clone)]
pub struct GradedQuasiHopf {
    base: QuasiHopf,
    degree: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradingReport {
    pub report: AxiomReport,
    /// `dims[d]` is the dimension of the degree-`d` piece.
    pub dims: Vec<usize>,
}

impl GradedQuasiHopf {
    pub fn new(base: QuasiHopf, degree: Vec<u32>) -> Result<Self> {
        if degree.len() != base.dim() {
            return Err(Error::InvalidParams("degree vector length".into()));
        }
        Ok(GradedQuasiHopf { base, degree })
    }

    /// Grading by total exponent of the listed generators in the monomial basis.
    pub fn from_generator_degrees(base: QuasiHopf, generator_degrees: &[u32]) -> Result<Self> {
        let mono = base
            .algebra()
            .monomials()
            .ok_or_else(|| Error::InvalidParams("no monomial basis to grade".into()))?;
        if generator_degrees.len() != mono.generators.len() {
            return Err(Error::InvalidParams("generator degree count".into()));
        }
        let degree = mono
            .exponents
            .iter()
            .map(|e| e.iter().zip(generator_degrees).map(|(a, b)| a * b).sum())
            .collect();
        Self::new(base, degree)
    }

    pub fn base(&self) -> &QuasiHopf {
        &self.base
    }

    pub fn into_base(self) -> QuasiHopf {
        self.base
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degree
    }

    pub fn piece_dims(&self) -> Vec<usize> {
        let top = self.degree.iter().copied().max().unwrap_or(0) as usize;
        let mut dims = vec![0; top + 1];
        for &d in &self.degree {
            dims[d as usize] += 1;
        }
        dims
    }

    fn homogeneous(&self, u: &AlgElement, target: u32) -> bool {
        u.terms().iter().all(|(idx, _)| {
            let deg: u32 = u.components(*idx).iter().map(|&k| self.degree[k]).sum();
            deg == target
        })
    }

    fn grading_outcome(&self) -> Result<CheckOutcome> {
        let h = &self.base;
        let alg = h.algebra();
        let d = alg.dim();
        h.guard((d * d) as u64, "grading check")?;
        let fail = crate::par::find_first(d * d, |ij| {
            let (i, j) = (ij / d, ij % d);
            let bad = alg
                .basis_product(i, j)
                .iter()
                .any(|(k, _)| self.degree[*k as usize] != self.degree[i] + self.degree[j]);
            bad.then(|| format!("{} · {} is not homogeneous", alg.labels()[i], alg.labels()[j]))
        });
        if let Some(w) = fail {
            return Ok(CheckOutcome::Fail(w));
        }
        let fail = crate::par::find_first(d, |i| {
            let e = AlgElement::basis(alg, i);
            if !self.homogeneous(&h.delta.apply(&e).ok()?, self.degree[i]) {
                return Some(format!("Δ({}) is not homogeneous", alg.labels()[i]));
            }
            (!self.homogeneous(&h.antipode.apply(&e).ok()?, self.degree[i]))
                .then(|| format!("S({}) is not homogeneous", alg.labels()[i]))
        });
        if let Some(w) = fail {
            return Ok(CheckOutcome::Fail(w));
        }
        if !self.homogeneous(&h.phi, 0) || !self.homogeneous(&h.phi_inv, 0) {
            return Ok(CheckOutcome::Fail("Φ is not of degree (0,0,0)".into()));
        }
        if !self.homogeneous(&h.alpha, 0) || !self.homogeneous(&h.beta, 0) {
            return Ok(CheckOutcome::Fail("α, β are not of degree 0".into()));
        }
        if let Some(gp) = h.group_part() {
            let mut zero: Vec<usize> = (0..d).filter(|&k| self.degree[k] == 0).collect();
            let mut group: Vec<usize> = gp.elements().to_vec();
            zero.sort_unstable();
            group.sort_unstable();
            if zero != group {
                return Ok(CheckOutcome::Fail("degree 0 is not the group algebra".into()));
            }
            let fail = gp.elements().iter().find_map(|&g| {
                let e = AlgElement::basis(alg, g);
                let grouplike = h.delta.apply(&e).ok()? == e.tensor(&e).ok()?;
                (!grouplike).then(|| format!("{} is not grouplike", alg.labels()[g]))
            });
            if let Some(w) = fail {
                return Ok(CheckOutcome::Fail(w));
            }
        }
        Ok(CheckOutcome::Pass)
    }

    pub fn check_grading(&self) -> GradingReport {
        GradingReport {
            report: timed("grading", || self.grading_outcome()),
            dims: self.piece_dims(),
        }
    }

    /// `dim H[1] / dim H[0]`.
    pub fn rank_degree_one(&self) -> Result<Ratio<u64>> {
        let gp = self
            .base
            .group_part()
            .ok_or_else(|| Error::InvalidParams("degree-0 part is not a known group algebra".into()))?;
        let dims = self.piece_dims();
        if dims[0] != gp.elements().len() {
            return Err(Error::InvalidParams("degree-0 part is not basic".into()));
        }
        let one = dims.get(1).copied().unwrap_or(0);
        Ok(Ratio::new(one as u64, dims[0] as u64))
    }

    pub fn verify_all(&self) -> VerifyReport {
        let mut r = self.base.verify_all();
        r.entries.push(self.check_grading().report);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{normal_form_quotient, PowerRule, Presentation};
    use crate::group::AbelianGroup;

    /// `C[Z_n]` with `Δ(a) = a⊗a`, trivial associator and `α = β = 1`.
    fn group_hopf(n: u32) -> QuasiHopf {
        let pres = Presentation::new("C[Z_n]", n).generator("a", n, PowerRule::Identity);
        let alg = Arc::new(normal_form_quotient(&pres).unwrap());
        let a = AlgElement::basis(&alg, 1);
        let a_inv = a.pow(n - 1).unwrap();
        let delta = crate::algebra::extend_from_generators(&alg, &alg, 2, &[a.tensor(&a).unwrap()], false).unwrap();
        let counit = crate::algebra::extend_from_generators(
            &alg,
            &alg,
            0,
            &[AlgElement::scalar(&alg, CycloNum::one(n))],
            false,
        )
        .unwrap();
        let antipode = crate::algebra::extend_from_generators(&alg, &alg, 1, &[a_inv], true).unwrap();
        let gp = GroupPart::new(&alg, AbelianGroup::cyclic(n), (0..n as usize).collect(), vec![1]).unwrap();
        QuasiHopf::new(
            "C[Z_n]",
            &alg,
            QuasiHopfParts {
                delta,
                counit,
                antipode,
                alpha: AlgElement::unit(&alg, 1),
                beta: AlgElement::unit(&alg, 1),
                phi: AlgElement::unit(&alg, 3),
                phi_inv: AlgElement::unit(&alg, 3),
                group_part: Some(gp),
            },
        )
        .unwrap()
    }

    #[test]
    fn group_algebra_is_hopf() {
        let h = group_hopf(3);
        let r = h.verify_all();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.entries.len(), AXIOMS.len());
    }

    #[test]
    fn corrupted_coproduct_fails_counit() {
        let h = group_hopf(3);
        let alg = h.algebra().clone();
        let a = AlgElement::basis(&alg, 1);
        let bad = h.delta().with_modified_image(1, a.tensor(&AlgElement::unit(&alg, 1)).unwrap()).unwrap();
        let h2 = h.with_parts(|p| p.delta = bad).unwrap();
        assert!(matches!(h2.check_counit().unwrap(), CheckOutcome::Fail(_)));
        assert!(matches!(h2.check_hom().unwrap(), CheckOutcome::Fail(_)));
    }

    #[test]
    fn generator_checks_on_large_algebras() {
        let h = group_hopf(101);
        assert_eq!(h.generator_indices(), Some(vec![1]));
        assert!(h.check_hom().unwrap().passed());
        assert!(h.check_quasi_coassociativity().unwrap().passed());
        assert_eq!(group_hopf(3).generator_indices(), None);

        // a wrong image deep inside the basis is still caught
        let alg = h.algebra().clone();
        let x = AlgElement::basis(&alg, 37);
        let bad = h.delta().with_modified_image(37, x.tensor(&AlgElement::unit(&alg, 1)).unwrap()).unwrap();
        let h2 = h.with_parts(|p| p.delta = bad).unwrap();
        assert!(matches!(h2.check_hom().unwrap(), CheckOutcome::Fail(_)));
    }

    #[test]
    fn non_cocycle_associator_fails_pentagon() {
        let h = group_hopf(3);
        let gp = h.group_part().unwrap().clone();
        let w = CycloNum::root_of_unity(3, 1);
        // a single twisted coefficient on (1,1,1) is not a 3-cocycle
        let f = |b: &[usize]| if b == [1, 1, 1] { w.clone() } else { CycloNum::one(3) };
        let phi = gp.diagonal(3, f).unwrap();
        let phi_inv = gp.diagonal(3, |b| f(b).inv().unwrap()).unwrap();
        let h2 = h.with_parts(|p| {
            p.phi = phi;
            p.phi_inv = phi_inv;
        })
        .unwrap();
        assert_eq!(h2.check_phi_inverse().unwrap(), CheckOutcome::Pass);
        assert!(matches!(h2.check_pentagon().unwrap(), CheckOutcome::Fail(_)));
    }

    #[test]
    fn gauge_preserves_antipode_axioms() {
        let h = group_hopf(5);
        let alg = h.algebra().clone();
        let a = AlgElement::basis(&alg, 1);
        let a_inv = a.pow(4).unwrap();
        let g = h.gauge_antipode(&a, &a_inv).unwrap();
        assert_eq!(g.check_antipode().unwrap(), CheckOutcome::Pass);
        assert_eq!(g.alpha(), &a);
    }

    #[test]
    fn corrupted_alpha_fails() {
        let h = group_hopf(3);
        let alg = h.algebra().clone();
        let h2 = h.with_parts(|p| p.alpha = AlgElement::basis(&alg, 1)).unwrap();
        assert!(matches!(h2.check_antipode().unwrap(), CheckOutcome::Fail(_)));
    }

    #[test]
    fn trivially_graded_group_algebra() {
        let h = group_hopf(3);
        let g = GradedQuasiHopf::new(h, vec![0; 3]).unwrap();
        let r = g.check_grading();
        assert!(r.report.passed());
        assert_eq!(r.dims, vec![3]);
        assert_eq!(g.rank_degree_one().unwrap(), Ratio::new(0, 1));
    }

    #[test]
    fn report_json_shape() {
        let r = group_hopf(3).verify(&["pentagon"]);
        let v = serde_json::to_value(&r.entries[0]).unwrap();
        assert_eq!(v["axiom"], "pentagon");
        assert_eq!(v["status"], "pass");
        assert!(v.get("witness").is_none());
        assert!(v["timing_ms"].is_number());
    }
}
