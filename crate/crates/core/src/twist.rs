//! Drinfeld twists by diagonal elements of group parts: the cyclic twist on
//! `C[Z_{n²}]`, the multi-generator twist of a skew-primitive Hopf algebra,
//! twisted coproducts and associators, and the quasi-Hopf subalgebra
//! generated by the `g_i^n` and the skew-primitives.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{tensor_map, AlgElement, CheckOutcome, Embedding, GroupPart, LinMap, MonomialData};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::families::{build_cyclic_group_hopf, build_hps, modulo, HpsParams, SkewPrimitiveDatum, SkewPrimitiveHopf};
use crate::group::AbelianGroup;
use crate::qhopf::{GradedQuasiHopf, QuasiHopf, QuasiHopfParts};

/// Exponent of `q` in `c(z, y) = q^{-z(y - y')}`, `y'` the remainder of `y`
/// mod `n`; `z` and `y` are first reduced mod `n²`.
pub fn c_exponent(z: i64, y: i64, n: u32) -> i64 {
    let n2 = (n * n) as i64;
    let (z, y) = (modulo(z, n2), modulo(y, n2));
    -z * (y - y % n as i64)
}

pub fn c_coeff(q: &CycloNum, z: i64, y: i64, n: u32) -> Result<CycloNum> {
    q.pow(c_exponent(z, y, n))
}

/// `f(i, j) = c(i, j) / c(i−1, j) · q^j` is `n`-periodic in both variables,
/// checked on all `i, j mod n²`.
pub fn check_c_periodicity(q: &CycloNum, n: u32) -> Result<CheckOutcome> {
    let n2 = (n * n) as i64;
    let f = |i: i64, j: i64| -> Result<CycloNum> {
        Ok(&(&c_coeff(q, i, j, n)? * &c_coeff(q, i - 1, j, n)?.inv()?) * &q.pow(modulo(j, n2))?)
    };
    for i in 0..n2 {
        for j in 0..n2 {
            let v = f(i, j)?;
            if f(i + n as i64, j)? != v {
                return Ok(CheckOutcome::Fail(format!("f({}, {j}) != f({i}, {j})", i + n as i64)));
            }
            if f(i, j + n as i64)? != v {
                return Ok(CheckOutcome::Fail(format!("f({i}, {}) != f({i}, {j})", j + n as i64)));
            }
        }
    }
    Ok(CheckOutcome::Pass)
}

/// An invertible element of `H⊗H` with its inverse.
#[derive(Debug, Clone)]
pub struct TwistElement {
    carrier: AlgElement,
    inverse: AlgElement,
}

impl TwistElement {
    pub fn new(carrier: AlgElement, inverse: AlgElement) -> Result<Self> {
        if carrier.degree() != 2 || inverse.degree() != 2 {
            return Err(Error::InvalidParams("a twist lives in H⊗H".into()));
        }
        let one = AlgElement::unit(carrier.algebra(), 2);
        if carrier.mul(&inverse)? != one || inverse.mul(&carrier)? != one {
            return Err(Error::InvalidParams("twist and inverse do not multiply to 1⊗1".into()));
        }
        Ok(TwistElement { carrier, inverse })
    }

    /// `Σ f(β, γ) 1_β ⊗ 1_γ` for a nowhere-zero `f`.
    pub fn diagonal(gp: &GroupPart, f: impl Fn(usize, usize) -> CycloNum) -> Result<Self> {
        let size = gp.group().size();
        let values: Vec<CycloNum> = (0..size * size).map(|k| f(k / size, k % size)).collect();
        let inverses = values.iter().map(|v| v.inv()).collect::<Result<Vec<_>>>()?;
        let carrier = gp.diagonal(2, |b| values[b[0] * size + b[1]].clone())?;
        let inverse = gp.diagonal(2, |b| inverses[b[0] * size + b[1]].clone())?;
        Ok(TwistElement { carrier, inverse })
    }

    pub fn trivial(h: &QuasiHopf) -> Self {
        let one = AlgElement::unit(h.algebra(), 2);
        TwistElement {
            carrier: one.clone(),
            inverse: one,
        }
    }

    pub fn carrier(&self) -> &AlgElement {
        &self.carrier
    }

    pub fn inverse(&self) -> &AlgElement {
        &self.inverse
    }

    /// The same twist with carrier and inverse swapped.
    pub fn inverted(&self) -> Self {
        TwistElement {
            carrier: self.inverse.clone(),
            inverse: self.carrier.clone(),
        }
    }

    /// `(ε⊗id)(F) = (id⊗ε)(F) = 1`.
    pub fn check_counital(&self, h: &QuasiHopf) -> Result<CheckOutcome> {
        let id = LinMap::identity(h.algebra(), 1);
        let one = AlgElement::unit(h.algebra(), 1);
        for (name, maps) in [
            ("(ε⊗id)", [h.counit().clone(), id.clone()]),
            ("(id⊗ε)", [id.clone(), h.counit().clone()]),
        ] {
            if tensor_map(&maps)?.apply(&self.carrier)? != one {
                return Ok(CheckOutcome::Fail(format!("{name}(F) != 1")));
            }
        }
        Ok(CheckOutcome::Pass)
    }
}

/// Which of `J`, `J⁻¹` is used as the twist `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    fn pick(self, j: &TwistElement) -> TwistElement {
        match self {
            Direction::Forward => j.clone(),
            Direction::Inverse => j.inverted(),
        }
    }
}

/// The cyclic group Hopf algebra `C[Z_{p²}]` with idempotents
/// `1_i g = q^i 1_i`, `q = ζ_{p²}^k`, and `J = Σ c(i,j) 1_i⊗1_j`.
pub fn build_j_cyclic(p: u32, q_exponent: i64) -> Result<(QuasiHopf, TwistElement)> {
    let n2 = p * p;
    let h = build_cyclic_group_hopf(n2, n2, q_exponent)?;
    let gp = h.group_part().expect("group algebra").clone();
    let j = TwistElement::diagonal(&gp, |z, y| {
        CycloNum::root_of_unity(n2, q_exponent * c_exponent(z as i64, y as i64, p))
    })?;
    Ok((h, j))
}

/// `Φ_F = (1⊗F)(id⊗Δ)(F) Φ (Δ⊗id)(F⁻¹) (F⁻¹⊗1)` and its inverse, with
/// `F` chosen from `j` by `direction`.
///
/// When `F` and `Φ` are diagonal over a grouplike group part the result is
/// computed pointwise on idempotent coordinates, using
/// `Δ(1_β) = Σ_{γ+δ=β} 1_γ⊗1_δ`; otherwise by tensor products.
pub fn twist_associator(h: &QuasiHopf, j: &TwistElement, direction: Direction) -> Result<(AlgElement, AlgElement)> {
    if let Some(r) = diagonal_twist_associator(h, j, direction)? {
        return Ok(r);
    }
    twist_associator_tensor(h, j, direction)
}

fn diagonal_twist_associator(
    h: &QuasiHopf,
    j: &TwistElement,
    direction: Direction,
) -> Result<Option<(AlgElement, AlgElement)>> {
    let Some(gp) = h.group_part() else { return Ok(None) };
    let grouplike = gp.elements().iter().all(|&g| {
        let e = AlgElement::basis(h.algebra(), g);
        matches!((h.coproduct(&e), e.tensor(&e)), (Ok(a), Ok(b)) if a == b)
    });
    if !grouplike {
        return Ok(None);
    }
    let f = direction.pick(j);
    let (fc, fi, pc) = match (
        gp.diagonal_coefficients(&f.carrier),
        gp.diagonal_coefficients(&f.inverse),
        gp.diagonal_coefficients(h.phi()),
    ) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        (Err(Error::NotDiagonal(_)), _, _) | (_, Err(Error::NotDiagonal(_)), _) | (_, _, Err(Error::NotDiagonal(_))) => {
            return Ok(None)
        }
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return Err(e),
    };
    let group = gp.group();
    let size = group.size();
    let table = group.addition_table();
    let add = |a: usize, b: usize| table[a * size + b];
    let value = |b: &[usize]| -> CycloNum {
        let (x, y, z) = (b[0], b[1], b[2]);
        let num = &(&fc[y * size + z] * &fc[x * size + add(y, z)]) * &pc[(x * size + y) * size + z];
        &(&num * &fi[add(x, y) * size + z]) * &fi[x * size + y]
    };
    let values: Vec<CycloNum> = crate::par::map_indexed(size * size * size, |k| {
        value(&[k / (size * size), (k / size) % size, k % size])
    });
    let inverses = values.iter().map(|v| v.inv()).collect::<Result<Vec<_>>>()?;
    let at = |b: &[usize]| (b[0] * size + b[1]) * size + b[2];
    let phi = gp.diagonal(3, |b| values[at(b)].clone())?;
    let phi_inv = gp.diagonal(3, |b| inverses[at(b)].clone())?;
    Ok(Some((phi, phi_inv)))
}

/// [`twist_associator`] evaluated by tensor products, for any `F` and `Φ`.
pub fn twist_associator_tensor(h: &QuasiHopf, j: &TwistElement, direction: Direction) -> Result<(AlgElement, AlgElement)> {
    let f = direction.pick(j);
    let alg = h.algebra();
    let one = AlgElement::unit(alg, 1);
    let id = LinMap::identity(alg, 1);
    let left = tensor_map(&[id.clone(), h.delta().clone()])?;
    let right = tensor_map(&[h.delta().clone(), id])?;
    let one_f = one.tensor(&f.carrier)?;
    let one_f_inv = one.tensor(&f.inverse)?;
    let f_one = f.carrier.tensor(&one)?;
    let f_inv_one = f.inverse.tensor(&one)?;
    let phi = one_f
        .mul(&left.apply(&f.carrier)?)?
        .mul(h.phi())?
        .mul(&right.apply(&f.inverse)?)?
        .mul(&f_inv_one)?;
    let phi_inv = f_one
        .mul(&right.apply(&f.carrier)?)?
        .mul(h.phi_inv())?
        .mul(&left.apply(&f.inverse)?)?
        .mul(&one_f_inv)?;
    Ok((phi, phi_inv))
}

/// `Δ_F(z) = F Δ(z) F⁻¹` on every basis element.
pub fn twist_coproduct(h: &QuasiHopf, j: &TwistElement) -> Result<LinMap> {
    let alg = h.algebra();
    let images = crate::par::try_map_indexed(alg.dim(), |i| {
        j.carrier.mul(&h.delta().apply(&AlgElement::basis(alg, i))?)?.mul(&j.inverse)
    })?;
    LinMap::from_images(alg, alg, 2, images)
}

/// The full twist `H^F`: `Δ_F`, `Φ_F`, the same `S`, and
/// `α_F = S(F̄¹) α F̄²`, `β_F = F¹ β S(F²)` with `F⁻¹ = F̄¹⊗F̄²`.
pub fn twist_quasi_hopf(h: &QuasiHopf, j: &TwistElement, direction: Direction) -> Result<QuasiHopf> {
    let f = direction.pick(j);
    let delta = twist_coproduct(h, &f)?;
    let (phi, phi_inv) = twist_associator(h, j, direction)?;
    let alpha = h.contract(&f.inverse, &[true, false], &[h.alpha()])?;
    let beta = h.contract(&f.carrier, &[false, true], &[h.beta()])?;
    let mut parts = h.parts();
    parts.delta = delta;
    parts.phi = phi;
    parts.phi_inv = phi_inv;
    parts.alpha = alpha;
    parts.beta = beta;
    QuasiHopf::new(format!("{}^F", h.name()), h.algebra(), parts)
}

/// Inverse of an invertible element of the group part.
pub fn invert_in_group_part(gp: &GroupPart, u: &AlgElement) -> Result<AlgElement> {
    let coeffs = gp.diagonal_coefficients(u)?;
    let inv = coeffs.iter().map(|c| c.inv()).collect::<Result<Vec<_>>>()?;
    gp.diagonal(u.degree(), |b| inv[crate::algebra::flat_index(b, gp.group().size()) as usize].clone())
}

/// The check that twisting `C[Z_{p²}]` by the cyclic `J` (in the given
/// direction) and restricting to `C[Z_p] = ⟨g^p⟩` gives the associator of
/// `H(p, s)` with `ζ_p^{-s} = q^p`, coefficient for coefficient.
pub fn check_cyclic_twist_associator(p: u32, q_exponent: i64, direction: Direction) -> Result<CheckOutcome> {
    let (h, j) = build_j_cyclic(p, q_exponent)?;
    let (phi, _) = twist_associator(&h, &j, direction)?;
    let index: Vec<usize> = (0..p as usize).map(|i| i * p as usize).collect();
    let emb = Embedding::span(format!("C[Z_{p}]"), h.algebra(), index)?;
    let restricted = match emb.restrict(&phi) {
        Ok(r) => r,
        Err(Error::Closure(w)) => return Ok(CheckOutcome::Fail(w)),
        Err(e) => return Err(e),
    };
    let s = modulo(-q_exponent, p as i64) as u32;
    let target = build_hps(HpsParams::new(p, s)?)?;
    let expected: Vec<(u64, CycloNum)> = target
        .phi()
        .terms()
        .iter()
        .map(|(k, c)| Ok((*k, c.embed(p * p)?)))
        .collect::<Result<_>>()?;
    if restricted.terms() == expected.as_slice() {
        Ok(CheckOutcome::Pass)
    } else {
        Ok(CheckOutcome::Fail(format!("dJ restricted to C[Z_{p}] differs from Φ_{s}")))
    }
}

/// `𝕁 = Σ Π_{i,j} c(β_i, γ_j)^{a_ij} 1_β ⊗ 1_γ` on the group part of `H`.
pub fn build_big_j(h: &SkewPrimitiveHopf) -> Result<TwistElement> {
    let datum = &h.datum;
    let gp = h.group_part();
    let group = gp.group();
    let elems: Vec<Vec<u32>> = (0..group.size()).map(|g| group.element(g)).collect();
    let order = datum.order();
    TwistElement::diagonal(gp, |b, c| {
        let mut e = 0i64;
        for (i, row) in datum.a_matrix.iter().enumerate() {
            for (jj, &a) in row.iter().enumerate() {
                e += a * c_exponent(elems[b][i] as i64, elems[c][jj] as i64, datum.n);
            }
        }
        CycloNum::root_of_unity(order, datum.q_exponent * e)
    })
}

/// The associator of `A` in closed form:
/// `Σ Π_{i,j} q^{a_ij β_i ((γ_j+δ_j)' − γ_j − δ_j)} 1_β⊗1_γ⊗1_δ` over
/// `(Z_n)^m`, for a group part whose idempotents satisfy
/// `1_β g_i^n = q^{n β_i} 1_β`.
pub fn closed_form_phi(datum: &SkewPrimitiveDatum, gp: &GroupPart) -> Result<(AlgElement, AlgElement)> {
    let group = gp.group();
    let n = datum.n as i64;
    if group.orders().iter().any(|&o| o as i64 != n) || group.rank() != datum.m {
        return Err(Error::InvalidParams("closed-form associator needs the group (Z_n)^m".into()));
    }
    let elems: Vec<Vec<u32>> = (0..group.size()).map(|g| group.element(g)).collect();
    let exponent = |b: &[usize]| {
        let (x, y, z) = (&elems[b[0]], &elems[b[1]], &elems[b[2]]);
        let mut e = 0i64;
        for (i, row) in datum.a_matrix.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                let s = (y[j] + z[j]) as i64;
                e += a * x[i] as i64 * (s % n - s);
            }
        }
        datum.q_exponent * e
    };
    let order = datum.order();
    let phi = gp.diagonal(3, |b| CycloNum::root_of_unity(order, exponent(b)))?;
    let phi_inv = gp.diagonal(3, |b| CycloNum::root_of_unity(order, -exponent(b)))?;
    Ok((phi, phi_inv))
}

/// `H`, its twist `H^𝕁` with `β` gauged to 1, and the subalgebra `A`.
#[derive(Debug, Clone)]
pub struct TwistConstruction {
    pub source: SkewPrimitiveHopf,
    pub twist: TwistElement,
    /// `H^𝕁` with `Φ = d𝕁` and the original `α`, `β`.
    pub twisted: QuasiHopf,
    /// `H^𝕁` after the gauge `u = β_𝕁`, so that `β = 1`.
    pub gauged: QuasiHopf,
    pub embedding: Embedding,
}

impl TwistConstruction {
    pub fn new(source: SkewPrimitiveHopf) -> Result<Self> {
        let twist = build_big_j(&source)?;
        let twisted = twist_quasi_hopf(source.hopf.base(), &twist, Direction::Forward)?;
        let gp = source.group_part();
        let u = twisted.beta().clone();
        let u_inv = invert_in_group_part(gp, &u)?;
        let gauged = twisted.gauge_antipode(&u, &u_inv)?;
        let embedding = subalgebra_embedding(&source)?;
        Ok(TwistConstruction {
            source,
            twist,
            twisted,
            gauged,
            embedding,
        })
    }

    pub fn from_datum(datum: &SkewPrimitiveDatum) -> Result<Self> {
        Self::new(crate::families::build_skew_primitive_hopf(datum)?)
    }

    /// Whether `Δ_𝕁(e)` lies in `A⊗A` for every nilpotent generator `e`.
    pub fn check_coproduct_closure(&self) -> Result<CheckOutcome> {
        for name in self.source.datum.pbw_names() {
            let Ok(e) = self.source.generator(&name) else { continue };
            let de = self.twisted.coproduct(&e)?;
            if let Err(Error::Closure(w)) = self.embedding.restrict(&de) {
                return Ok(CheckOutcome::Fail(format!("Δ_𝕁({name}): {w}")));
            }
        }
        Ok(CheckOutcome::Pass)
    }

    /// Whether `d𝕁` restricted to `A⊗A⊗A` equals the closed form.
    pub fn check_associator_closed_form(&self) -> Result<CheckOutcome> {
        let restricted = match self.embedding.restrict(self.twisted.phi()) {
            Ok(r) => r,
            Err(Error::Closure(w)) => return Ok(CheckOutcome::Fail(format!("d𝕁 leaves A⊗A⊗A: {w}"))),
            Err(e) => return Err(e),
        };
        let gp = subalgebra_group_part(&self.source, &self.embedding)?;
        let (closed, _) = closed_form_phi(&self.source.datum, &gp)?;
        if restricted == closed {
            return Ok(CheckOutcome::Pass);
        }
        let diff = restricted.sub(&closed)?;
        let (idx, c) = diff.terms()[0].clone();
        let labels: Vec<&str> = diff
            .components(idx)
            .iter()
            .map(|&k| self.embedding.sub().labels()[k].as_str())
            .collect();
        Ok(CheckOutcome::Fail(format!(
            "d𝕁 − Φ has coefficient {c} on [{}]",
            labels.join(" ⊗ ")
        )))
    }

    /// Restricts the gauged twist to `A` and attaches the closed-form
    /// associator.
    pub fn extract_subalgebra(&self) -> Result<GradedQuasiHopf> {
        let emb = &self.embedding;
        let sub = emb.sub().clone();
        let h = &self.gauged;
        let d = sub.dim();
        let deltas = crate::par::try_map_indexed(d, |i| {
            emb.restrict(&h.coproduct(&emb.include(&AlgElement::basis(&sub, i))?)?)
        })?;
        let antipodes = crate::par::try_map_indexed(d, |i| {
            emb.restrict(&h.antipode().apply(&emb.include(&AlgElement::basis(&sub, i))?)?)
        })?;
        let counits = (0..d)
            .map(|i| {
                let c = h.counit_of(&emb.include(&AlgElement::basis(&sub, i))?)?;
                Ok(AlgElement::scalar(&sub, c))
            })
            .collect::<Result<Vec<_>>>()?;
        let alpha = emb.restrict(h.alpha())?;
        let beta = emb.restrict(h.beta())?;
        let gp = subalgebra_group_part(&self.source, emb)?;
        let (phi, phi_inv) = closed_form_phi(&self.source.datum, &gp)?;
        let a = QuasiHopf::new(
            format!("A(n={}, m={})", self.source.datum.n, self.source.datum.m),
            &sub,
            QuasiHopfParts {
                delta: LinMap::from_images(&sub, &sub, 2, deltas)?,
                counit: LinMap::from_images(&sub, &sub, 0, counits)?,
                antipode: LinMap::from_images(&sub, &sub, 1, antipodes)?,
                alpha,
                beta,
                phi,
                phi_inv,
                group_part: Some(gp),
            },
        )?;
        let mut degrees = vec![0u32; self.source.datum.m];
        for name in self.source.datum.pbw_names() {
            let w = self.source.hopf.degrees()[self
                .source
                .generator(&name)
                .map(|e| e.terms()[0].0 as usize)
                .unwrap_or(0)];
            degrees.push(w);
        }
        GradedQuasiHopf::from_generator_degrees(a, &degrees)
    }

    /// `S_𝕁` and `α` of the gauged twist preserve `A`, `β = 1`, and the
    /// restricted data satisfies the antipode axioms.
    pub fn check_twisted_antipode(&self, a: &GradedQuasiHopf) -> Result<CheckOutcome> {
        let emb = &self.embedding;
        let h = &self.gauged;
        if h.beta() != &AlgElement::unit(h.algebra(), 1) {
            return Ok(CheckOutcome::Fail("β is not gauged to 1".into()));
        }
        if emb.restrict(h.alpha()).is_err() {
            return Ok(CheckOutcome::Fail("α lies outside A".into()));
        }
        for i in 0..emb.sub().dim() {
            let s = h.antipode().apply(&emb.include(&AlgElement::basis(emb.sub(), i))?)?;
            if emb.restrict(&s).is_err() {
                return Ok(CheckOutcome::Fail(format!("S({}) lies outside A", emb.sub().labels()[i])));
            }
        }
        a.base().check_antipode()
    }
}

fn subalgebra_names(m: usize) -> Vec<String> {
    if m == 1 {
        vec!["a".into()]
    } else {
        (1..=m).map(|i| format!("a{i}")).collect()
    }
}

/// The span of `Π g_i^{n c_i} · w` in `H`, with generators `a_i = g_i^n`.
fn subalgebra_embedding(h: &SkewPrimitiveHopf) -> Result<Embedding> {
    let datum = &h.datum;
    let m = datum.m;
    let n = datum.n;
    let big = h.group_part().group();
    let small = AbelianGroup::new(vec![n; m])?;
    let inner = &h.nilpotent;
    let inner_mono = inner.monomials().expect("presentation algebras carry monomials");
    let a_names = subalgebra_names(m);
    let mut index = Vec::new();
    let mut labels = Vec::new();
    let mut exponents = Vec::new();
    for c in 0..small.size() {
        let ce = small.element(c);
        let scaled: Vec<i64> = ce.iter().map(|&x| (x * n) as i64).collect();
        let g = big.index_of(&scaled);
        let alabel = crate::algebra::monomial_label(&a_names, &ce);
        for w in 0..inner.dim() {
            index.push(h.index_of(g, w));
            let wl = &inner.labels()[w];
            labels.push(match (alabel.as_str(), wl.as_str()) {
                ("1", l) => l.to_string(),
                (a, "1") => a.to_string(),
                (a, l) => format!("{a} {l}"),
            });
            let mut e = ce.clone();
            e.extend_from_slice(&inner_mono.exponents[w]);
            exponents.push(e);
        }
    }
    let mut generators = a_names;
    generators.extend(inner_mono.generators.iter().cloned());
    Embedding::span_relabelled(
        format!("A(n={n}, m={m})"),
        h.algebra(),
        index,
        labels,
        Some(MonomialData { generators, exponents }),
    )
}

/// Group part of `A` on `a_i = g_i^n`, with `1_β a_i = q^{n β_i} 1_β`.
fn subalgebra_group_part(h: &SkewPrimitiveHopf, emb: &Embedding) -> Result<GroupPart> {
    let datum = &h.datum;
    let group = AbelianGroup::new(vec![datum.n; datum.m])?;
    let inner_dim = h.nilpotent.dim();
    let unit_word = h
        .nilpotent
        .monomials()
        .and_then(|m| m.exponents.iter().position(|e| e.iter().all(|&x| x == 0)))
        .unwrap_or(0);
    let elements = (0..group.size()).map(|c| c * inner_dim + unit_word).collect();
    let sub: &Arc<_> = emb.sub();
    GroupPart::new(sub, group, elements, vec![datum.n as i64 * datum.q_exponent; datum.m])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_skew_primitive_hopf;

    fn zeta(n: u32, k: i64) -> CycloNum {
        CycloNum::root_of_unity(n, k)
    }

    #[test]
    fn c_coeff_examples() {
        let q = zeta(9, 1);
        assert!(c_coeff(&q, 1, 1, 3).unwrap().is_one());
        assert_eq!(c_coeff(&q, 1, 3, 3).unwrap(), zeta(9, -3));
        assert_eq!(c_coeff(&q, 2, 4, 3).unwrap(), zeta(9, -6));
    }

    #[test]
    fn c_periodicity() {
        assert!(check_c_periodicity(&zeta(9, 1), 3).unwrap().passed());
        assert!(check_c_periodicity(&zeta(9, 4), 3).unwrap().passed());
        assert!(check_c_periodicity(&zeta(25, 2), 5).unwrap().passed());
        assert!(!check_c_periodicity(&zeta(18, 1), 3).unwrap().passed());
        assert!(check_c_periodicity(&zeta(27, 1), 3).unwrap().passed());
    }

    #[test]
    fn diagonal_path_matches_tensor_path() {
        let (h, j) = build_j_cyclic(3, 2).unwrap();
        for dir in [Direction::Forward, Direction::Inverse] {
            assert_eq!(twist_associator(&h, &j, dir).unwrap(), twist_associator_tensor(&h, &j, dir).unwrap());
        }
        let hps = crate::families::build_hps(crate::families::HpsParams::new(3, 1).unwrap()).unwrap();
        let gp = hps.group_part().unwrap().clone();
        let f = TwistElement::diagonal(&gp, |b, c| zeta(3, (b * b * c) as i64)).unwrap();
        assert_eq!(
            twist_associator(&hps, &f, Direction::Forward).unwrap(),
            twist_associator_tensor(&hps, &f, Direction::Forward).unwrap()
        );
    }

    #[test]
    fn cyclic_twist_basics() {
        let (h, j) = build_j_cyclic(3, 1).unwrap();
        assert!(j.check_counital(&h).unwrap().passed());
        let gp = h.group_part().unwrap();
        let coeffs = gp.diagonal_coefficients(j.carrier()).unwrap();
        assert_eq!(coeffs[9 + 3], zeta(9, -3));
        assert!(TwistElement::new(j.carrier().clone(), j.inverse().clone()).is_ok());
    }

    #[test]
    fn trivial_twist_keeps_associator() {
        let h = build_cyclic_group_hopf(9, 9, 1).unwrap();
        let (phi, _) = twist_associator(&h, &TwistElement::trivial(&h), Direction::Forward).unwrap();
        assert_eq!(&phi, h.phi());
        let delta = twist_coproduct(&h, &TwistElement::trivial(&h)).unwrap();
        for i in 0..9 {
            let e = AlgElement::basis(h.algebra(), i);
            assert_eq!(delta.apply(&e).unwrap(), h.coproduct(&e).unwrap());
        }
    }

    #[test]
    fn bicharacter_twist_is_coassociative() {
        let h = build_cyclic_group_hopf(5, 5, 1).unwrap();
        let gp = h.group_part().unwrap().clone();
        let j = TwistElement::diagonal(&gp, |b, c| zeta(5, (2 * b * c) as i64)).unwrap();
        for dir in [Direction::Forward, Direction::Inverse] {
            let (phi, _) = twist_associator(&h, &j, dir).unwrap();
            assert_eq!(&phi, h.phi());
        }
    }

    #[test]
    fn cyclic_twist_gives_phi_s() {
        for p in [3u32, 5] {
            for k in 1..(p * p) as i64 {
                if k % p as i64 == 0 {
                    continue;
                }
                assert!(
                    check_cyclic_twist_associator(p, k, Direction::Forward).unwrap().passed(),
                    "p={p} k={k}"
                );
            }
        }
    }

    #[test]
    fn diagonal_and_tensor_associators_agree() {
        let (h, j) = build_j_cyclic(3, 4).unwrap();
        for dir in [Direction::Forward, Direction::Inverse] {
            assert_eq!(
                twist_associator(&h, &j, dir).unwrap(),
                twist_associator_tensor(&h, &j, dir).unwrap()
            );
        }
        let t = build_skew_primitive_hopf(&SkewPrimitiveDatum::sl2(3)).unwrap();
        let big = build_big_j(&t).unwrap();
        assert_eq!(
            twist_associator(t.hopf.base(), &big, Direction::Forward).unwrap(),
            twist_associator_tensor(t.hopf.base(), &big, Direction::Forward).unwrap()
        );
    }

    #[test]
    fn inverse_direction_gives_the_inverse_class() {
        // J⁻¹ yields Φ_{-s}, which differs from Φ_s for p > 2.
        assert!(!check_cyclic_twist_associator(3, 1, Direction::Inverse).unwrap().passed());
    }

    #[test]
    fn twisted_group_algebra_is_quasi_hopf() {
        let (h, j) = build_j_cyclic(3, 2).unwrap();
        let t = twist_quasi_hopf(&h, &j, Direction::Forward).unwrap();
        let r = t.verify_all();
        assert!(r.all_pass(), "{:?}", r.failures());
    }

    #[test]
    fn big_j_for_sl2() {
        let h = build_skew_primitive_hopf(&SkewPrimitiveDatum::sl2(3)).unwrap();
        let j = build_big_j(&h).unwrap();
        assert!(j.check_counital(h.hopf.base()).unwrap().passed());
        let coeffs = h.group_part().diagonal_coefficients(j.carrier()).unwrap();
        for b in 0..9 {
            for c in 0..9 {
                let expected = c_coeff(&zeta(9, 1), b as i64, c as i64, 3).unwrap().pow(2).unwrap();
                assert_eq!(coeffs[b * 9 + c], expected);
            }
        }
        let g = h.generator("g1").unwrap();
        let delta = twist_coproduct(h.hopf.base(), &j).unwrap();
        assert_eq!(delta.apply(&g).unwrap(), g.tensor(&g).unwrap());
    }

    #[test]
    fn trivial_exponents_give_trivial_twist() {
        let mut d = SkewPrimitiveDatum::rank_one(3, 1, 0);
        d.a_matrix = vec![vec![0]];
        let h = build_skew_primitive_hopf(&d).unwrap();
        let j = build_big_j(&h).unwrap();
        assert_eq!(j.carrier(), &AlgElement::unit(h.algebra(), 2));
    }

    #[test]
    fn sl2_construction() {
        let t = TwistConstruction::from_datum(&SkewPrimitiveDatum::sl2(3)).unwrap();
        assert!(t.check_coproduct_closure().unwrap().passed());
        assert_eq!(t.check_associator_closed_form().unwrap(), CheckOutcome::Pass);
        let a = t.extract_subalgebra().unwrap();
        assert_eq!(a.base().dim(), 27);
        assert_eq!(a.base().dim() * 3, t.source.algebra().dim());
        let r = a.verify_all();
        assert!(r.all_pass(), "{:?}", r.failures());
        assert!(t.check_twisted_antipode(&a).unwrap().passed());
        // α becomes a^a11 = g^{2n}
        let alpha = a.base().alpha();
        let a_gen = AlgElement::basis(a.base().algebra(), a.base().algebra().basis_index("a").unwrap());
        assert_eq!(alpha, &a_gen.pow(2).unwrap());
    }

    #[test]
    fn twisted_source_verifies() {
        let t = TwistConstruction::from_datum(&SkewPrimitiveDatum::sl2(3)).unwrap();
        let r = t.twisted.verify_all();
        assert!(r.all_pass(), "{:?}", r.failures());
    }

    #[test]
    fn degenerate_construction() {
        let t = TwistConstruction::from_datum(&SkewPrimitiveDatum::rank_one(3, 1, 0)).unwrap();
        let a = t.extract_subalgebra().unwrap();
        assert_eq!(a.base().dim(), 3);
        assert!(a.verify_all().all_pass());
        assert_eq!(a.base().phi(), &AlgElement::unit(a.base().algebra(), 3));
    }

    #[test]
    fn corrupted_alpha_fails_antipode() {
        let t = TwistConstruction::from_datum(&SkewPrimitiveDatum::sl2(3)).unwrap();
        let a = t.extract_subalgebra().unwrap();
        let bad = a
            .base()
            .with_parts(|p| p.alpha = AlgElement::unit(a.base().algebra(), 1))
            .unwrap();
        assert!(!bad.check_antipode().unwrap().passed());
    }
}
