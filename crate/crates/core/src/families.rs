//! Constructors for the named families: `C[Z_p]` with the associator `Φ_s`,
//! the `p³`-dimensional algebras `A(q)`, and pointed Hopf algebras generated
//! by grouplikes and skew-primitives (e.g. small quantum Borel algebras).

use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    extend_from_generators, normal_form_quotient, AlgElement, CheckOutcome, FinAlgebra, GroupPart, LinMap, PowerRule,
    Presentation,
};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::qhopf::{GradedQuasiHopf, QuasiHopf, QuasiHopfParts};

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `(a mod m)` in `0..m`.
pub fn modulo(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

/// Parameters of `H(p, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HpsParams {
    pub p: u32,
    pub s: u32,
}

impl HpsParams {
    pub fn new(p: u32, s: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} is not an odd prime")));
        }
        if s == 0 || s >= p {
            return Err(Error::InvalidParams(format!("s = {s} must lie in 1..{p}")));
        }
        Ok(HpsParams { p, s })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QrClass {
    Plus,
    Minus,
}

/// `Plus` iff `s` is a quadratic residue mod `p` (Euler's criterion).
pub fn classify_hps(params: HpsParams) -> QrClass {
    let p = params.p as u64;
    let mut acc = 1u64;
    let mut base = params.s as u64 % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 {
        QrClass::Plus
    } else {
        QrClass::Minus
    }
}

/// `1 + carry` bookkeeping for the cyclic associator: `j + k ≥ p`.
fn carry(j: usize, k: usize, p: usize) -> i64 {
    i64::from(j + k >= p)
}

/// `Σ Q^{-i·carry(j,k)} 1_i⊗1_j⊗1_k` on a cyclic group part, with
/// `Q = ζ_N^{q_exp}` and `N` the scalar order; returns `(Φ, Φ⁻¹)`.
pub fn cyclic_associator(gp: &GroupPart, q_exp: i64) -> Result<(AlgElement, AlgElement)> {
    if gp.group().rank() != 1 {
        return Err(Error::InvalidParams("cyclic associator on a non-cyclic group".into()));
    }
    let p = gp.group().size();
    let n = gp.algebra().scalar_order();
    let exponent = |b: &[usize]| -q_exp * b[0] as i64 * carry(b[1], b[2], p);
    let phi = gp.diagonal(3, |b| CycloNum::root_of_unity(n, exponent(b)))?;
    let phi_inv = gp.diagonal(3, |b| CycloNum::root_of_unity(n, -exponent(b)))?;
    Ok((phi, phi_inv))
}

fn grouplike_structure(
    alg: &Arc<FinAlgebra>,
    coproduct: &[AlgElement],
    counit: &[CycloNum],
    antipode: &[AlgElement],
) -> Result<(LinMap, LinMap, LinMap)> {
    let delta = extend_from_generators(alg, alg, 2, coproduct, false)?;
    let eps_images: Vec<AlgElement> = counit.iter().map(|c| AlgElement::scalar(alg, c.clone())).collect();
    let eps = extend_from_generators(alg, alg, 0, &eps_images, false)?;
    let s = extend_from_generators(alg, alg, 1, antipode, true)?;
    Ok((delta, eps, s))
}

fn gen(alg: &Arc<FinAlgebra>, label: &str) -> AlgElement {
    AlgElement::basis(alg, alg.basis_index(label).expect("generator is a basis word"))
}

/// `H(p, s)`: `C[Z_p]` with grouplike `a`, associator `Φ_s`, `α = a`, `β = 1`.
pub fn build_hps(params: HpsParams) -> Result<QuasiHopf> {
    let HpsParams { p, s } = params;
    let pres = Presentation::new(format!("H({p},{s})"), p).generator("a", p, PowerRule::Identity);
    let alg = Arc::new(normal_form_quotient(&pres)?);
    let a = gen(&alg, "a");
    let a_inv = a.pow(p - 1)?;
    let (delta, counit, antipode) =
        grouplike_structure(&alg, &[a.tensor(&a)?], &[CycloNum::one(p)], &[a_inv])?;
    // 1_i a = Q^i 1_i with Q = ζ_p^{-s}
    let q_exp = -(s as i64);
    let elements: Vec<usize> = (0..p as usize).collect();
    let gp = GroupPart::new(&alg, AbelianGroup::cyclic(p), elements, vec![q_exp])?;
    let (phi, phi_inv) = cyclic_associator(&gp, q_exp)?;
    QuasiHopf::new(
        format!("H({p},{s})"),
        &alg,
        QuasiHopfParts {
            delta,
            counit,
            antipode,
            alpha: a,
            beta: AlgElement::unit(&alg, 1),
            phi,
            phi_inv,
            group_part: Some(gp),
        },
    )
}

/// The Hopf algebra `C[Z_d]` with generator `g`, over scalars of order
/// `scalar_order`, whose idempotents satisfy `1_i g = ζ^{i·char_exponent} 1_i`.
pub fn build_cyclic_group_hopf(d: u32, scalar_order: u32, char_exponent: i64) -> Result<QuasiHopf> {
    let pres = Presentation::new(format!("C[Z_{d}]"), scalar_order).generator("g", d, PowerRule::Identity);
    let alg = Arc::new(normal_form_quotient(&pres)?);
    let g = gen(&alg, "g");
    let g_inv = g.pow(d - 1)?;
    let (delta, counit, antipode) =
        grouplike_structure(&alg, &[g.tensor(&g)?], &[CycloNum::one(scalar_order)], &[g_inv])?;
    let gp = GroupPart::new(&alg, AbelianGroup::cyclic(d), (0..d as usize).collect(), vec![char_exponent])?;
    let one = AlgElement::unit(&alg, 1);
    QuasiHopf::new(
        format!("C[Z_{d}]"),
        &alg,
        QuasiHopfParts {
            delta,
            counit,
            antipode,
            alpha: one.clone(),
            beta: one,
            phi: AlgElement::unit(&alg, 3),
            phi_inv: AlgElement::unit(&alg, 3),
            group_part: Some(gp),
        },
    )
}

/// Parameters of `A(q)` with `q = ζ_{p²}^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AqParams {
    pub p: u32,
    pub q_exponent: i64,
}

impl AqParams {
    pub fn new(p: u32, q_exponent: i64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} is not an odd prime")));
        }
        if q_exponent.gcd(&(p as i64)) != 1 {
            return Err(Error::InvalidParams(format!(
                "ζ_{}^{q_exponent} is not a primitive root of order {}",
                p * p,
                p * p
            )));
        }
        Ok(AqParams {
            p,
            q_exponent: modulo(q_exponent, (p * p) as i64),
        })
    }

    /// The `s` of the associator: `ζ_p^{-s} = q^p`.
    pub fn s(&self) -> u32 {
        modulo(-self.q_exponent, self.p as i64) as u32
    }
}

/// `A(q)`: generated by `a, x` with `ax = q^p xa`, `a^p = 1`, `x^{p²} = 0`.
pub fn build_aq(params: AqParams) -> Result<GradedQuasiHopf> {
    let AqParams { p, q_exponent: k } = params;
    let n = p * p;
    let pi = p as i64;
    let q = |e: i64| CycloNum::root_of_unity(n, k * e);
    let pres = Presentation::new(format!("A(q=z{n}^{k})"), n)
        .generator("a", p, PowerRule::Identity)
        .generator("x", n, PowerRule::Zero)
        .commute(1, 0, q(-pi));
    let alg = Arc::new(normal_form_quotient(&pres)?);
    let a = gen(&alg, "a");
    let x = gen(&alg, "x");
    let one = AlgElement::unit(&alg, 1);
    let a_inv = a.pow(p - 1)?;
    let elements: Vec<usize> = (0..p).map(|i| a.pow(i).map(|e| e.terms()[0].0 as usize)).collect::<Result<_>>()?;
    // a 1_i = q^{p i} 1_i
    let gp = GroupPart::new(&alg, AbelianGroup::cyclic(p), elements, vec![pi * k])?;
    let idem: Vec<AlgElement> = (0..p as usize).map(|i| gp.idempotent(i)).collect();
    let mut weighted = AlgElement::zero(&alg, 1);
    for (y, e) in idem.iter().enumerate() {
        weighted = weighted.add(&e.scale(&q(y as i64)))?;
    }
    let one0_x = idem[0].mul(&x)?;
    let dx = x
        .tensor(&weighted)?
        .add(&one.tensor(&x.sub(&one0_x)?)?)?
        .add(&a_inv.tensor(&one0_x)?)?;
    let mut sx_factor = AlgElement::zero(&alg, 1);
    for (z, e) in idem.iter().enumerate() {
        sx_factor = sx_factor.add(&e.scale(&q(pi - z as i64)))?;
    }
    let sx = x.mul(&sx_factor)?.neg();
    let (delta, counit, antipode) = grouplike_structure(
        &alg,
        &[a.tensor(&a)?, dx],
        &[CycloNum::one(n), CycloNum::zero(n)],
        &[a_inv, sx],
    )?;
    let (phi, phi_inv) = cyclic_associator(&gp, pi * k)?;
    let h = QuasiHopf::new(
        format!("A(p={p}, q=z{n}^{k})"),
        &alg,
        QuasiHopfParts {
            delta,
            counit,
            antipode,
            alpha: a,
            beta: one,
            phi,
            phi_inv,
            group_part: Some(gp),
        },
    )?;
    GradedQuasiHopf::from_generator_degrees(h, &[0, 1])
}

/// A coefficient `c·q^e` in a datum relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QTerm {
    #[serde(default = "one_i64")]
    pub coeff: i64,
    #[serde(default)]
    pub q_power: i64,
    pub word: Vec<String>,
}

fn one_i64() -> i64 {
    1
}

/// `left · right = Σ rhs`, a straightening rule between nilpotent generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossRelation {
    pub left: String,
    pub right: String,
    pub rhs: Vec<QTerm>,
}

/// An extra PBW generator defined as a polynomial in the `e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootVector {
    pub name: String,
    pub definition: Vec<QTerm>,
    pub nilpotency: u32,
}

/// Input data for a pointed Hopf algebra generated by `g_1..g_m` of order
/// `n²` and skew-primitives `e_i` with `Δ(e_i) = e_i⊗K_i + 1⊗e_i`,
/// `K_i = Π_j g_j^{a_ij}`, `g_i e_j g_i⁻¹ = q^{δ_ij} e_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewPrimitiveDatum {
    pub n: u32,
    pub q_exponent: i64,
    pub m: usize,
    pub a_matrix: Vec<Vec<i64>>,
    pub nilpotency: Vec<u32>,
    #[serde(default)]
    pub cross_relations: Vec<CrossRelation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub root_vectors: Vec<RootVector>,
    /// Order of the nilpotent generators in normal words; defaults to
    /// `e1, …, em` followed by the root vectors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pbw_order: Option<Vec<String>>,
    /// Exponent vectors (in `pbw_order`) of the normal words of the
    /// nilpotent part; defaults to all words below the nilpotency bounds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pbw_basis: Option<Vec<Vec<u32>>>,
}

impl SkewPrimitiveDatum {
    /// The rank-one datum `g e g⁻¹ = q e`, `K = g^a`, `e^N = 0` with `N` the
    /// order of `q^a`.
    pub fn rank_one(n: u32, q_exponent: i64, a: i64) -> Self {
        let order = (n * n) as i64;
        let nil = order / (q_exponent * a).gcd(&order);
        SkewPrimitiveDatum {
            n,
            q_exponent,
            m: 1,
            a_matrix: vec![vec![a]],
            nilpotency: vec![nil as u32],
            cross_relations: Vec::new(),
            root_vectors: Vec::new(),
            pbw_order: None,
            pbw_basis: None,
        }
    }

    /// Upper Borel part of the small quantum group of `sl2` at `q = ζ_{n²}`.
    pub fn sl2(n: u32) -> Self {
        Self::rank_one(n, 1, 2)
    }

    /// Upper Borel part of the small quantum group of `sl3` at `q = ζ_{n²}`,
    /// with root vector `e12 = e1 e2 − q⁻¹ e2 e1`.
    pub fn sl3(n: u32) -> Self {
        let nil = n * n;
        let t = |coeff: i64, q_power: i64, word: &[&str]| QTerm {
            coeff,
            q_power,
            word: word.iter().map(|s| s.to_string()).collect(),
        };
        SkewPrimitiveDatum {
            n,
            q_exponent: 1,
            m: 2,
            a_matrix: vec![vec![2, -1], vec![-1, 2]],
            nilpotency: vec![nil, nil],
            cross_relations: vec![
                CrossRelation {
                    left: "e2".into(),
                    right: "e1".into(),
                    rhs: vec![t(1, 1, &["e1", "e2"]), t(-1, 1, &["e12"])],
                },
                CrossRelation {
                    left: "e12".into(),
                    right: "e1".into(),
                    rhs: vec![t(1, -1, &["e1", "e12"])],
                },
                CrossRelation {
                    left: "e2".into(),
                    right: "e12".into(),
                    rhs: vec![t(1, -1, &["e12", "e2"])],
                },
            ],
            root_vectors: vec![RootVector {
                name: "e12".into(),
                definition: vec![t(1, 0, &["e1", "e2"]), t(-1, -1, &["e2", "e1"])],
                nilpotency: nil,
            }],
            pbw_order: Some(vec!["e1".into(), "e12".into(), "e2".into()]),
            pbw_basis: None,
        }
    }

    /// Scalar order `n²`.
    pub fn order(&self) -> u32 {
        self.n * self.n
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParams("n must be at least 2".into()));
        }
        if self.q_exponent.gcd(&(self.n as i64)) != 1 {
            return Err(Error::InvalidParams(format!(
                "q = ζ_{}^{} does not have order {}",
                self.order(),
                self.q_exponent,
                self.order()
            )));
        }
        if self.m == 0 || self.a_matrix.len() != self.m || self.a_matrix.iter().any(|r| r.len() != self.m) {
            return Err(Error::InvalidParams("a_matrix must be m × m".into()));
        }
        if self.nilpotency.len() != self.m || self.nilpotency.contains(&0) {
            return Err(Error::InvalidParams("nilpotency needs one positive entry per generator".into()));
        }
        let names = self.nilpotent_names();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::InvalidParams("repeated generator name".into()));
        }
        if let Some(order) = &self.pbw_order {
            let mut o = order.clone();
            o.sort();
            if o != sorted {
                return Err(Error::InvalidParams("pbw_order must list every nilpotent generator once".into()));
            }
        }
        Ok(())
    }

    pub fn e_name(i: usize) -> String {
        format!("e{}", i + 1)
    }

    pub fn g_name(i: usize) -> String {
        format!("g{}", i + 1)
    }

    fn nilpotent_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (0..self.m).map(Self::e_name).collect();
        names.extend(self.root_vectors.iter().map(|r| r.name.clone()));
        names
    }

    /// Nilpotent generators in PBW order.
    pub fn pbw_names(&self) -> Vec<String> {
        self.pbw_order.clone().unwrap_or_else(|| self.nilpotent_names())
    }

    fn q(&self, e: i64) -> CycloNum {
        CycloNum::root_of_unity(self.order(), self.q_exponent * e)
    }

    fn term_coeff(&self, t: &QTerm) -> CycloNum {
        self.q(t.q_power).scale(&num_rational::BigRational::from_integer(t.coeff.into()))
    }

    /// Weight of each nilpotent generator in PBW order.
    fn pbw_weights(&self) -> Result<Vec<Vec<i64>>> {
        let names = self.pbw_names();
        let mut weights: Vec<Vec<i64>> = Vec::with_capacity(names.len());
        for name in &names {
            weights.push(self.weight_of(name, 0)?);
        }
        Ok(weights)
    }

    fn weight_of(&self, name: &str, depth: usize) -> Result<Vec<i64>> {
        if depth > 8 {
            return Err(Error::InvalidParams("root vector definitions are circular".into()));
        }
        if let Some(i) = (0..self.m).find(|&i| Self::e_name(i) == name) {
            let mut w = vec![0; self.m];
            w[i] = 1;
            return Ok(w);
        }
        let rv = self
            .root_vectors
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::InvalidParams(format!("unknown generator '{name}'")))?;
        let first = rv
            .definition
            .first()
            .ok_or_else(|| Error::InvalidParams(format!("empty definition of {name}")))?;
        let mut w = vec![0; self.m];
        for letter in &first.word {
            for (a, b) in w.iter_mut().zip(self.weight_of(letter, depth + 1)?) {
                *a += b;
            }
        }
        Ok(w)
    }

    fn nilpotent_bound(&self, name: &str) -> u32 {
        if let Some(i) = (0..self.m).find(|&i| Self::e_name(i) == name) {
            return self.nilpotency[i];
        }
        self.root_vectors
            .iter()
            .find(|r| r.name == name)
            .map(|r| r.nilpotency)
            .unwrap_or(1)
    }

    /// Presentation of the subalgebra generated by the nilpotent generators.
    pub fn nilpotent_presentation(&self) -> Result<Presentation> {
        self.validate()?;
        let names = self.pbw_names();
        let pos = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::InvalidParams(format!("unknown generator '{s}'")))
        };
        let mut pres = Presentation::new("B", self.order());
        for name in &names {
            pres = pres.generator(name.clone(), self.nilpotent_bound(name), PowerRule::Zero);
        }
        if let Some(basis) = &self.pbw_basis {
            pres.basis = Some(basis.clone());
        }
        for rel in &self.cross_relations {
            let (l, r) = (pos(&rel.left)?, pos(&rel.right)?);
            let rhs = rel
                .rhs
                .iter()
                .map(|t| Ok((self.term_coeff(t), t.word.iter().map(|w| pos(w)).collect::<Result<Vec<_>>>()?)))
                .collect::<Result<Vec<_>>>()?;
            pres = pres.swap(l, r, rhs);
        }
        Ok(pres)
    }

    /// Full presentation of the Hopf algebra (group generators first).
    pub fn full_presentation(&self) -> Result<Presentation> {
        let inner = self.nilpotent_presentation()?;
        let m = self.m;
        let weights = self.pbw_weights()?;
        let mut pres = Presentation::new("H", self.order());
        for i in 0..m {
            pres = pres.generator(Self::g_name(i), self.order(), PowerRule::Identity);
        }
        for g in &inner.generators {
            pres = pres.generator(g.name.clone(), g.bound, g.power_rule);
        }
        for i in 0..m {
            for j in 0..i {
                pres = pres.commute(i, j, CycloNum::one(self.order()));
            }
        }
        for (t, w) in weights.iter().enumerate() {
            for (i, &wi) in w.iter().enumerate() {
                pres = pres.commute(m + t, i, self.q(-wi));
            }
        }
        for s in &inner.swaps {
            let rhs = s
                .rhs
                .iter()
                .map(|(c, w)| (c.clone(), w.iter().map(|x| x + m).collect()))
                .collect();
            pres = pres.swap(s.left + m, s.right + m, rhs);
        }
        pres.basis = inner.basis.map(|b| {
            let mut out = Vec::new();
            for g in 0..(self.order() as usize).pow(m as u32) {
                let ge = AbelianGroup::new(vec![self.order(); m]).expect("positive").element(g);
                for w in &b {
                    let mut e = ge.clone();
                    e.extend_from_slice(w);
                    out.push(e);
                }
            }
            out
        });
        Ok(pres)
    }
}

/// A pointed Hopf algebra built from a datum, with its group part and the
/// grading by nilpotent degree.
#[derive(Debug, Clone)]
pub struct SkewPrimitiveHopf {
    pub datum: SkewPrimitiveDatum,
    pub nilpotent: Arc<FinAlgebra>,
    pub hopf: GradedQuasiHopf,
}

impl SkewPrimitiveHopf {
    pub fn algebra(&self) -> &Arc<FinAlgebra> {
        self.hopf.base().algebra()
    }

    pub fn group_part(&self) -> &GroupPart {
        self.hopf.base().group_part().expect("always set")
    }

    /// Basis index of `g^β · w` with `β` a group index and `w` a nilpotent
    /// basis index.
    pub fn index_of(&self, group_index: usize, word: usize) -> usize {
        group_index * self.nilpotent.dim() + word
    }

    pub fn generator(&self, name: &str) -> Result<AlgElement> {
        let alg = self.algebra();
        alg.basis_index(name)
            .map(|i| AlgElement::basis(alg, i))
            .ok_or_else(|| Error::InvalidParams(format!("no generator '{name}'")))
    }

    /// `K_i = Π_j g_j^{a_ij}`.
    pub fn k_element(&self, i: usize) -> Result<AlgElement> {
        let order = self.datum.order() as i64;
        let exps: Vec<i64> = self.datum.a_matrix[i].iter().map(|&a| modulo(a, order)).collect();
        let g = self.group_part().group().index_of(&exps);
        Ok(self.group_part().group_element(g))
    }
}

/// Builds the Hopf algebra of a datum as `C[(Z_{n²})^m] ⋉ B` with `B` the
/// nilpotent part given by the datum's straightening rules.
pub fn build_skew_primitive_hopf(datum: &SkewPrimitiveDatum) -> Result<SkewPrimitiveHopf> {
    datum.validate()?;
    let order = datum.order();
    let m = datum.m;
    let inner_pres = datum.nilpotent_presentation()?;
    let nilpotent = Arc::new(normal_form_quotient(&inner_pres)?);
    let weights = datum.pbw_weights()?;
    let mono = nilpotent.monomials().expect("presentation algebras carry monomials");
    let comm: Vec<Vec<i64>> = mono
        .exponents
        .iter()
        .map(|e| {
            (0..m)
                .map(|i| {
                    let w: i64 = e.iter().zip(&weights).map(|(&k, wt)| k as i64 * wt[i]).sum();
                    -datum.q_exponent * w
                })
                .collect()
        })
        .collect();
    let group = AbelianGroup::new(vec![order; m])?;
    let g_names: Vec<String> = (0..m).map(SkewPrimitiveDatum::g_name).collect();
    let alg = Arc::new(FinAlgebra::skew_group(
        format!("H(n={}, m={m})", datum.n),
        group.clone(),
        &g_names,
        comm,
        nilpotent.clone(),
    )?);
    let db = nilpotent.dim();
    let elements: Vec<usize> = (0..group.size()).map(|g| g * db).collect();
    let gp = GroupPart::new(&alg, group.clone(), elements, vec![datum.q_exponent; m])?;
    let n_pbw = datum.pbw_names().len();

    let g_elems: Vec<AlgElement> = (0..m)
        .map(|i| {
            let mut e = vec![0i64; m];
            e[i] = 1;
            gp.group_element(group.index_of(&e))
        })
        .collect();
    let g_invs: Vec<AlgElement> = (0..m)
        .map(|i| {
            let mut e = vec![0i64; m];
            e[i] = -1;
            gp.group_element(group.index_of(&e))
        })
        .collect();
    let k_elem = |i: usize, sign: i64| {
        let exps: Vec<i64> = datum.a_matrix[i].iter().map(|&a| sign * a).collect();
        gp.group_element(group.index_of(&exps))
    };
    let names = datum.pbw_names();
    // A generator truncated at order 1 is zero and has no basis word.
    let e_of = |name: &str| -> AlgElement {
        let w = names.iter().position(|x| x == name).expect("known generator");
        let mut exps = vec![0u32; n_pbw];
        exps[w] = 1;
        match mono.exponents.iter().position(|e| e == &exps) {
            Some(idx) => AlgElement::basis(&alg, idx),
            None => AlgElement::zero(&alg, 1),
        }
    };
    let one = AlgElement::unit(&alg, 1);
    // Images on the simple generators.
    let mut delta_e: Vec<(String, AlgElement)> = Vec::new();
    let mut anti_e: Vec<(String, AlgElement)> = Vec::new();
    for i in 0..m {
        let name = SkewPrimitiveDatum::e_name(i);
        let e = e_of(&name);
        delta_e.push((name.clone(), e.tensor(&k_elem(i, 1))?.add(&one.tensor(&e)?)?));
        anti_e.push((name, e.mul(&k_elem(i, -1))?.neg()));
    }
    let eval = |defn: &[QTerm], images: &[(String, AlgElement)], reverse: bool, degree: u32| -> Result<AlgElement> {
        let mut acc = AlgElement::zero(&alg, degree);
        for t in defn {
            let mut prod = AlgElement::unit(&alg, degree);
            let letters: Vec<&String> = if reverse { t.word.iter().rev().collect() } else { t.word.iter().collect() };
            for letter in letters {
                let img = images
                    .iter()
                    .find(|(n, _)| n == letter)
                    .map(|(_, v)| v)
                    .ok_or_else(|| Error::InvalidParams(format!("root vector refers to unknown '{letter}'")))?;
                prod = prod.mul(img)?;
            }
            acc = acc.add(&prod.scale(&datum.term_coeff(t)))?;
        }
        Ok(acc)
    };
    for rv in &datum.root_vectors {
        let d = eval(&rv.definition, &delta_e, false, 2)?;
        let s = eval(&rv.definition, &anti_e, true, 1)?;
        delta_e.push((rv.name.clone(), d));
        anti_e.push((rv.name.clone(), s));
    }
    let mut delta_images: Vec<AlgElement> = g_elems.iter().map(|g| g.tensor(g)).collect::<Result<_>>()?;
    let mut antipode_images: Vec<AlgElement> = g_invs.clone();
    let mut counit_images: Vec<CycloNum> = vec![CycloNum::one(order); m];
    for name in &names {
        delta_images.push(delta_e.iter().find(|(n, _)| n == name).expect("present").1.clone());
        antipode_images.push(anti_e.iter().find(|(n, _)| n == name).expect("present").1.clone());
        counit_images.push(CycloNum::zero(order));
    }
    let (delta, counit, antipode) = grouplike_structure(&alg, &delta_images, &counit_images, &antipode_images)?;
    let hopf = QuasiHopf::new(
        format!("H(n={}, m={m})", datum.n),
        &alg,
        QuasiHopfParts {
            delta,
            counit,
            antipode,
            alpha: one.clone(),
            beta: one,
            phi: AlgElement::unit(&alg, 3),
            phi_inv: AlgElement::unit(&alg, 3),
            group_part: Some(gp),
        },
    )?;
    let mut degrees = vec![0u32; m];
    for name in &names {
        let w = datum.weight_of(name, 0)?;
        degrees.push(w.iter().sum::<i64>() as u32);
    }
    let graded = GradedQuasiHopf::from_generator_degrees(hopf, &degrees)?;
    Ok(SkewPrimitiveHopf {
        datum: datum.clone(),
        nilpotent,
        hopf: graded,
    })
}

/// Checks that `g_i ↦ g_i`, `e ↦ 0` is an algebra map onto the group part.
pub fn check_group_projection(h: &SkewPrimitiveHopf) -> Result<CheckOutcome> {
    let alg = h.algebra();
    let d = alg.dim();
    if (d as u64).saturating_mul(d as u64) > crate::algebra::size_limit() {
        return Err(Error::SizeLimit(format!("projection check on dim {d}")));
    }
    let db = h.nilpotent.dim();
    let project = |k: usize| k % db == 0;
    let fail = crate::par::find_first(d * d, |ij| {
        let (i, j) = (ij / d, ij % d);
        let prod = alg.basis_product(i, j);
        let projected: Vec<usize> = prod.iter().filter(|(k, _)| project(*k as usize)).map(|(k, _)| *k as usize).collect();
        let expected = project(i) && project(j);
        let ok = if expected {
            prod.len() == 1 && projected.len() == 1 && prod[0].1.is_one()
        } else {
            projected.is_empty()
        };
        (!ok).then(|| format!("{} · {}", alg.labels()[i], alg.labels()[j]))
    });
    Ok(match fail {
        Some(w) => CheckOutcome::Fail(w),
        None => CheckOutcome::Pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_associativity;
    use num_rational::Ratio;

    #[test]
    fn hps_examples() {
        let h = build_hps(HpsParams::new(3, 1).unwrap()).unwrap();
        assert_eq!(h.dim(), 3);
        let gp = h.group_part().unwrap();
        let coeffs = gp.diagonal_coefficients(h.phi()).unwrap();
        // Q = ζ_3^{-1}; on 1_1⊗1_2⊗1_2 the carry is 1, so the value is Q^{-1} = ζ_3
        assert_eq!(coeffs[9 + 2 * 3 + 2], CycloNum::root_of_unity(3, 1));
        for i in 0..3 {
            for k in 0..3 {
                assert!(coeffs[i * 9 + k].is_one());
            }
        }
    }

    #[test]
    fn hps_idempotent_convention() {
        let h = build_hps(HpsParams::new(5, 2).unwrap()).unwrap();
        let gp = h.group_part().unwrap();
        let a = AlgElement::basis(h.algebra(), h.algebra().basis_index("a").unwrap());
        let big_q = CycloNum::root_of_unity(5, -2);
        for i in 0..5 {
            let lhs = gp.idempotent(i).mul(&a).unwrap();
            assert_eq!(lhs, gp.idempotent(i).scale(&big_q.pow(i as i64).unwrap()));
        }
    }

    #[test]
    fn hps_params_are_validated() {
        assert!(HpsParams::new(4, 1).is_err());
        assert!(HpsParams::new(5, 0).is_err());
        assert!(HpsParams::new(5, 5).is_err());
        assert!(HpsParams::new(2, 1).is_err());
    }

    #[test]
    fn qr_classes() {
        assert_eq!(classify_hps(HpsParams::new(3, 1).unwrap()), QrClass::Plus);
        assert_eq!(classify_hps(HpsParams::new(5, 4).unwrap()), QrClass::Plus);
        assert_eq!(classify_hps(HpsParams::new(5, 2).unwrap()), QrClass::Minus);
        for p in [3u32, 5, 7, 11] {
            for s in 1..p {
                let brute = (1..p).any(|t| t * t % p == s);
                let expected = if brute { QrClass::Plus } else { QrClass::Minus };
                assert_eq!(classify_hps(HpsParams::new(p, s).unwrap()), expected);
            }
        }
    }

    #[test]
    fn hps_small_primes_verify() {
        for p in [3u32, 5] {
            for s in 1..p {
                let h = build_hps(HpsParams::new(p, s).unwrap()).unwrap();
                let r = h.verify_all();
                assert!(r.all_pass(), "H({p},{s}): {:?}", r.failures());
            }
        }
    }

    #[test]
    fn aq_relations_and_dimension() {
        let params = AqParams::new(3, 1).unwrap();
        assert_eq!(params.s(), 2);
        let g = build_aq(params).unwrap();
        let alg = g.base().algebra().clone();
        assert_eq!(alg.dim(), 27);
        let a = AlgElement::basis(&alg, alg.basis_index("a").unwrap());
        let x = AlgElement::basis(&alg, alg.basis_index("x").unwrap());
        let q3 = CycloNum::root_of_unity(9, 3);
        assert_eq!(a.mul(&x).unwrap(), x.mul(&a).unwrap().scale(&q3));
        assert!(x.pow(9).unwrap().is_zero());
        assert_eq!(check_associativity(&alg).unwrap(), CheckOutcome::Pass);
        assert!(g.base().counit_of(&x).unwrap().is_zero());
        assert!(g.base().counit_of(&a).unwrap().is_one());
    }

    #[test]
    fn aq_verifies_with_grading() {
        let g = build_aq(AqParams::new(3, 2).unwrap()).unwrap();
        let r = g.verify_all();
        assert!(r.all_pass(), "{:?}", r.failures());
        assert_eq!(g.check_grading().dims, vec![3; 9]);
        assert_eq!(g.rank_degree_one().unwrap(), Ratio::new(1, 1));
    }

    #[test]
    fn aq_coproduct_is_multiplicative_on_relations() {
        let g = build_aq(AqParams::new(3, 1).unwrap()).unwrap();
        let h = g.base();
        let alg = h.algebra();
        let a = AlgElement::basis(alg, alg.basis_index("a").unwrap());
        let x = AlgElement::basis(alg, alg.basis_index("x").unwrap());
        let da = h.coproduct(&a).unwrap();
        let dx = h.coproduct(&x).unwrap();
        assert!(dx.pow(9).unwrap().is_zero());
        let q3 = CycloNum::root_of_unity(9, 3);
        assert_eq!(da.mul(&dx).unwrap(), dx.mul(&da).unwrap().scale(&q3));
    }

    #[test]
    fn aq_rejects_non_primitive_q() {
        assert!(AqParams::new(3, 3).is_err());
        assert!(AqParams::new(3, 6).is_err());
    }

    #[test]
    fn sl2_borel_dimension_and_axioms() {
        let h = build_skew_primitive_hopf(&SkewPrimitiveDatum::sl2(3)).unwrap();
        assert_eq!(h.algebra().dim(), 81);
        assert_eq!(h.nilpotent.dim(), 9);
        assert_eq!(check_group_projection(&h).unwrap(), CheckOutcome::Pass);
        let r = h.hopf.verify_all();
        assert!(r.all_pass(), "{:?}", r.failures());
    }

    #[test]
    fn skew_product_matches_full_presentation() {
        let datum = SkewPrimitiveDatum::sl2(3);
        let h = build_skew_primitive_hopf(&datum).unwrap();
        let full = normal_form_quotient(&datum.full_presentation().unwrap()).unwrap();
        let alg = h.algebra();
        assert_eq!(full.dim(), alg.dim());
        for i in 0..alg.dim() {
            let fi = full.basis_index(&alg.labels()[i]).unwrap();
            for j in 0..alg.dim() {
                let fj = full.basis_index(&alg.labels()[j]).unwrap();
                let mut lhs: Vec<(String, CycloNum)> = alg
                    .basis_product(i, j)
                    .iter()
                    .map(|(k, c)| (alg.labels()[*k as usize].clone(), c.clone()))
                    .collect();
                let mut rhs: Vec<(String, CycloNum)> = full
                    .basis_product(fi, fj)
                    .iter()
                    .map(|(k, c)| (full.labels()[*k as usize].clone(), c.clone()))
                    .collect();
                lhs.sort_by(|a, b| a.0.cmp(&b.0));
                rhs.sort_by(|a, b| a.0.cmp(&b.0));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn degenerate_datum_is_a_group_algebra() {
        let d = SkewPrimitiveDatum::rank_one(3, 1, 0);
        assert_eq!(d.nilpotency, vec![1]);
        let h = build_skew_primitive_hopf(&d).unwrap();
        assert_eq!(h.algebra().dim(), 9);
        assert!(h.hopf.verify_all().all_pass());
        assert_eq!(h.hopf.rank_degree_one().unwrap(), Ratio::new(0, 1));
    }

    #[test]
    fn cyclic_group_hopf_verifies() {
        let h = build_cyclic_group_hopf(9, 9, 1).unwrap();
        assert!(h.verify_all().all_pass());
    }

    #[test]
    fn invalid_datum_is_rejected() {
        let mut d = SkewPrimitiveDatum::sl2(3);
        d.q_exponent = 3;
        assert!(build_skew_primitive_hopf(&d).is_err());
        let mut d = SkewPrimitiveDatum::sl2(3);
        d.nilpotency = vec![0];
        assert!(build_skew_primitive_hopf(&d).is_err());
        let mut d = SkewPrimitiveDatum::sl3(3);
        d.pbw_order = Some(vec!["e1".into(), "e2".into()]);
        assert!(d.validate().is_err());
    }

    #[test]
    fn sl2_grouplike_conjugation() {
        let h = build_skew_primitive_hopf(&SkewPrimitiveDatum::sl2(3)).unwrap();
        let g = h.generator("g1").unwrap();
        let e = h.generator("e1").unwrap();
        let q = CycloNum::root_of_unity(9, 1);
        assert_eq!(g.mul(&e).unwrap(), e.mul(&g).unwrap().scale(&q));
        assert_eq!(h.k_element(0).unwrap(), g.pow(2).unwrap());
    }

    #[test]
    fn datum_json_round_trip() {
        let d = SkewPrimitiveDatum::sl3(3);
        let s = serde_json::to_string(&d).unwrap();
        let back: SkewPrimitiveDatum = serde_json::from_str(&s).unwrap();
        assert_eq!(d, back);
    }
}
