//! Finite-dimensional associative algebras over `Q(ζ_N)` given by sparse
//! structure constants, their elements, and their tensor powers.
//!
//! Tensor powers are never materialized: an element of `A^{⊗k}` is a sparse
//! map from flat indices `i_1·d^{k-1} + … + i_k` to coefficients, and products
//! are computed componentwise from the base structure constants.

mod embedding;
mod idempotents;
mod linmap;
mod rewrite;

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::AbelianGroup;

pub use embedding::Embedding;
pub use idempotents::GroupPart;
pub use linmap::{tensor_map, LinMap};
pub use rewrite::{normal_form_quotient, Generator, PowerRule, Presentation, SwapRule};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

/// Basis elements recorded as ordered products of generator powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialData {
    pub generators: Vec<String>,
    /// `exponents[b][t]` is the power of generator `t` in basis element `b`.
    pub exponents: Vec<Vec<u32>>,
}

impl MonomialData {
    pub fn index_map(&self) -> HashMap<Vec<u32>, usize> {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect()
    }
}

pub(crate) enum Mult {
    Table(Vec<Vec<(u32, CycloNum)>>),
    Skew(Box<SkewData>),
}

/// `C[G] ⋉ B` with basis `g·w`: `(g·w)(h·w') = ζ^{⟨w,h⟩} gh·ww'`.
pub(crate) struct SkewData {
    group: AbelianGroup,
    inner: Arc<FinAlgebra>,
    /// `w·g_t = ζ^{comm[w][t]} g_t·w`
    comm: Vec<Vec<i64>>,
    group_add: Vec<usize>,
    roots: Vec<CycloNum>,
}

pub struct FinAlgebra {
    id: u64,
    name: String,
    dim: usize,
    scalar_order: u32,
    labels: Vec<String>,
    unit: Vec<(usize, CycloNum)>,
    mult: Mult,
    monomials: Option<MonomialData>,
}

impl fmt::Debug for FinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinAlgebra")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("scalar_order", &self.scalar_order)
            .finish()
    }
}

impl FinAlgebra {
    /// Builds an algebra from an explicit structure-constant table,
    /// `table[i * dim + j]` being the product `e_i e_j`.
    pub fn from_table(
        name: impl Into<String>,
        scalar_order: u32,
        labels: Vec<String>,
        unit: Vec<(usize, CycloNum)>,
        table: Vec<Vec<(usize, CycloNum)>>,
        monomials: Option<MonomialData>,
    ) -> Result<Self> {
        let dim = labels.len();
        if table.len() != dim * dim {
            return Err(Error::InvalidParams(format!(
                "structure table has {} entries, expected {}",
                table.len(),
                dim * dim
            )));
        }
        let mut packed = Vec::with_capacity(table.len());
        for entry in table {
            let mut row: Vec<(u32, CycloNum)> = Vec::with_capacity(entry.len());
            for (k, c) in entry {
                if k >= dim {
                    return Err(Error::InvalidParams(format!("basis index {k} out of range")));
                }
                if c.order() != scalar_order {
                    return Err(Error::OrderMismatch(c.order(), scalar_order));
                }
                if !c.is_zero() {
                    row.push((k as u32, c));
                }
            }
            row.sort_by_key(|(k, _)| *k);
            packed.push(row);
        }
        Ok(FinAlgebra {
            id: fresh_id(),
            name: name.into(),
            dim,
            scalar_order,
            labels,
            unit: unit.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            mult: Mult::Table(packed),
            monomials,
        })
    }

    /// The skew group algebra `C[G] ⋉ B` with basis `g·w` (index `g·dim B + w`).
    ///
    /// `comm[w][t]` is the exponent `c` with `w·g_t = ζ_N^c g_t·w`, where `g_t`
    /// is the `t`-th cyclic generator of `group`.
    pub fn skew_group(
        name: impl Into<String>,
        group: AbelianGroup,
        group_generator_names: &[String],
        comm: Vec<Vec<i64>>,
        inner: Arc<FinAlgebra>,
    ) -> Result<Self> {
        let n = inner.scalar_order;
        if comm.len() != inner.dim || comm.iter().any(|c| c.len() != group.rank()) {
            return Err(Error::InvalidParams("commutation table shape".into()));
        }
        if group_generator_names.len() != group.rank() {
            return Err(Error::InvalidParams("group generator names".into()));
        }
        let db = inner.dim;
        let dim = group.size() * db;
        let mut labels = Vec::with_capacity(dim);
        let mut exps = Vec::with_capacity(dim);
        for g in 0..group.size() {
            let ge = group.element(g);
            let glabel = monomial_label(group_generator_names, &ge);
            for w in 0..db {
                let wl = &inner.labels[w];
                labels.push(match (glabel.as_str(), wl.as_str()) {
                    ("1", l) => l.to_string(),
                    (g, "1") => g.to_string(),
                    (g, l) => format!("{g} {l}"),
                });
                if let Some(m) = &inner.monomials {
                    let mut e = ge.clone();
                    e.extend_from_slice(&m.exponents[w]);
                    exps.push(e);
                }
            }
        }
        let monomials = inner.monomials.as_ref().map(|m| {
            let mut generators = group_generator_names.to_vec();
            generators.extend(m.generators.iter().cloned());
            MonomialData {
                generators,
                exponents: exps,
            }
        });
        let unit = inner.unit.clone();
        let roots = (0..n as i64).map(|k| CycloNum::root_of_unity(n, k)).collect();
        let group_add = group.addition_table();
        Ok(FinAlgebra {
            id: fresh_id(),
            name: name.into(),
            dim,
            scalar_order: n,
            labels,
            unit,
            mult: Mult::Skew(Box::new(SkewData {
                group,
                inner,
                comm,
                group_add,
                roots,
            })),
            monomials,
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scalar_order(&self) -> u32 {
        self.scalar_order
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit_terms(&self) -> &[(usize, CycloNum)] {
        &self.unit
    }

    pub fn monomials(&self) -> Option<&MonomialData> {
        self.monomials.as_ref()
    }

    /// The product `e_i e_j` as a sparse vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Cow<'_, [(u32, CycloNum)]> {
        match &self.mult {
            Mult::Table(t) => Cow::Borrowed(&t[i * self.dim + j]),
            Mult::Skew(s) => {
                let db = s.inner.dim;
                let (g, w) = (i / db, i % db);
                let (h, w2) = (j / db, j % db);
                let he = s.group.element(h);
                let n = self.scalar_order as i64;
                let shift = s.comm[w]
                    .iter()
                    .zip(&he)
                    .map(|(&c, &e)| c * e as i64)
                    .sum::<i64>()
                    .rem_euclid(n) as usize;
                let gh = s.group_add[g * s.group.size() + h];
                let inner = s.inner.basis_product(w, w2);
                Cow::Owned(
                    inner
                        .iter()
                        .map(|(k, c)| {
                            let c = if shift == 0 { c.clone() } else { c * &s.roots[shift] };
                            ((gh * db) as u32 + k, c)
                        })
                        .collect(),
                )
            }
        }
    }

    /// Materialized structure constants as `(i, j, k, c)` quadruples.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, CycloNum)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.basis_product(i, j).iter() {
                    out.push((i, j, *k as usize, c.clone()));
                }
            }
        }
        out
    }

    /// Copy of this algebra with the table entry for `(i, j)` replaced.
    /// Intended for negative controls.
    pub fn with_modified_product(&self, i: usize, j: usize, value: Vec<(usize, CycloNum)>) -> Result<Self> {
        let mut table: Vec<Vec<(usize, CycloNum)>> = Vec::with_capacity(self.dim * self.dim);
        for a in 0..self.dim {
            for b in 0..self.dim {
                table.push(
                    self.basis_product(a, b)
                        .iter()
                        .map(|(k, c)| (*k as usize, c.clone()))
                        .collect(),
                );
            }
        }
        table[i * self.dim + j] = value;
        Self::from_table(
            format!("{}*", self.name),
            self.scalar_order,
            self.labels.clone(),
            self.unit.clone(),
            table,
            self.monomials.clone(),
        )
    }

    /// Index of the basis element labelled `label`.
    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

pub(crate) fn monomial_label(names: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// A sparse element of `A^{⊗k}`; `k = 0` is the scalar field.
#[derive(Clone)]
pub struct AlgElement {
    alg: Arc<FinAlgebra>,
    degree: u32,
    terms: Vec<(u64, CycloNum)>,
}

impl PartialEq for AlgElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg.id == other.alg.id && self.degree == other.degree && self.terms == other.terms
    }
}

impl Eq for AlgElement {}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn accumulate(acc: &mut HashMap<u64, CycloNum>, idx: u64, c: CycloNum) {
    match acc.entry(idx) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let v = e.get_mut();
            *v = &*v + &c;
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

pub(crate) fn normalize(acc: HashMap<u64, CycloNum>) -> Vec<(u64, CycloNum)> {
    let mut terms: Vec<(u64, CycloNum)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_unstable_by_key(|(k, _)| *k);
    terms
}

impl AlgElement {
    pub fn from_terms(
        alg: &Arc<FinAlgebra>,
        degree: u32,
        terms: impl IntoIterator<Item = (u64, CycloNum)>,
    ) -> Result<Self> {
        let bound = (alg.dim as u64).checked_pow(degree).ok_or_else(|| {
            Error::SizeLimit(format!("tensor power {degree} of dim {} overflows", alg.dim))
        })?;
        let mut acc = HashMap::new();
        for (k, c) in terms {
            if k >= bound {
                return Err(Error::InvalidParams(format!("flat index {k} out of range")));
            }
            if c.order() != alg.scalar_order {
                return Err(Error::OrderMismatch(c.order(), alg.scalar_order));
            }
            accumulate(&mut acc, k, c);
        }
        Ok(AlgElement {
            alg: alg.clone(),
            degree,
            terms: normalize(acc),
        })
    }

    pub(crate) fn from_sorted(alg: &Arc<FinAlgebra>, degree: u32, terms: Vec<(u64, CycloNum)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        AlgElement {
            alg: alg.clone(),
            degree,
            terms,
        }
    }

    pub(crate) fn from_map(alg: &Arc<FinAlgebra>, degree: u32, acc: HashMap<u64, CycloNum>) -> Self {
        AlgElement {
            alg: alg.clone(),
            degree,
            terms: normalize(acc),
        }
    }

    pub fn zero(alg: &Arc<FinAlgebra>, degree: u32) -> Self {
        AlgElement {
            alg: alg.clone(),
            degree,
            terms: Vec::new(),
        }
    }

    pub fn basis(alg: &Arc<FinAlgebra>, i: usize) -> Self {
        assert!(i < alg.dim, "basis index out of range");
        AlgElement {
            alg: alg.clone(),
            degree: 1,
            terms: vec![(i as u64, CycloNum::one(alg.scalar_order))],
        }
    }

    /// A scalar, i.e. an element of the zeroth tensor power.
    pub fn scalar(alg: &Arc<FinAlgebra>, c: CycloNum) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(0, c)] };
        AlgElement {
            alg: alg.clone(),
            degree: 0,
            terms,
        }
    }

    /// `1^{⊗k}`.
    pub fn unit(alg: &Arc<FinAlgebra>, degree: u32) -> Self {
        let one = AlgElement::from_terms(
            alg,
            1,
            alg.unit.iter().map(|(k, c)| (*k as u64, c.clone())),
        )
        .expect("unit is well formed");
        let mut acc = AlgElement::scalar(alg, CycloNum::one(alg.scalar_order));
        for _ in 0..degree {
            acc = acc.tensor(&one).expect("same algebra");
        }
        acc
    }

    pub fn algebra(&self) -> &Arc<FinAlgebra> {
        &self.alg
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(u64, CycloNum)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, idx: u64) -> CycloNum {
        match self.terms.binary_search_by_key(&idx, |(k, _)| *k) {
            Ok(p) => self.terms[p].1.clone(),
            Err(_) => CycloNum::zero(self.alg.scalar_order),
        }
    }

    /// The scalar value of a degree-0 element.
    pub fn scalar_value(&self) -> CycloNum {
        assert_eq!(self.degree, 0, "not a scalar");
        self.coeff(0)
    }

    /// Splits a flat index into its tensor components.
    pub fn components(&self, idx: u64) -> Vec<usize> {
        split_index(idx, self.alg.dim, self.degree)
    }

    /// Flat index from components.
    pub fn flat_index(&self, comps: &[usize]) -> u64 {
        flat_index(comps, self.alg.dim)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.alg.id != other.alg.id {
            return Err(Error::AlgebraMismatch(format!(
                "'{}' vs '{}'",
                self.alg.name, other.alg.name
            )));
        }
        if self.degree != other.degree {
            return Err(Error::AlgebraMismatch(format!(
                "tensor degree {} vs {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = j >= other.terms.len()
                || (i < self.terms.len() && self.terms[i].0 < other.terms[j].0);
            let take_right = i >= self.terms.len()
                || (j < other.terms.len() && other.terms[j].0 < self.terms[i].0);
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else if take_right {
                out.push(other.terms[j].clone());
                j += 1;
            } else {
                let s = &self.terms[i].1 + &other.terms[j].1;
                if !s.is_zero() {
                    out.push((self.terms[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        Ok(Self::from_sorted(&self.alg, self.degree, out))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        AlgElement {
            alg: self.alg.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &CycloNum) -> Self {
        if s.is_zero() {
            return Self::zero(&self.alg, self.degree);
        }
        AlgElement {
            alg: self.alg.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    /// Product in `A^{⊗k}` (componentwise on pure tensors, extended bilinearly).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let alg = &self.alg;
        let k = self.degree;
        if k == 0 {
            let c = match (self.terms.first(), other.terms.first()) {
                (Some((_, a)), Some((_, b))) => a * b,
                _ => return Ok(Self::zero(alg, 0)),
            };
            return Ok(Self::scalar(alg, c));
        }
        let dim = alg.dim;
        let right: Vec<(Vec<usize>, &CycloNum)> = other
            .terms
            .iter()
            .map(|(j, c)| (split_index(*j, dim, k), c))
            .collect();
        let mut acc: HashMap<u64, CycloNum> = HashMap::with_capacity(self.terms.len().max(right.len()));
        let mut partial: Vec<(u64, CycloNum)> = Vec::new();
        let mut next: Vec<(u64, CycloNum)> = Vec::new();
        for (i, a) in &self.terms {
            let ci = split_index(*i, dim, k);
            for (cj, b) in &right {
                partial.clear();
                partial.push((0, a * b));
                for pos in 0..k as usize {
                    let prod = alg.basis_product(ci[pos], cj[pos]);
                    next.clear();
                    for (idx, c) in &partial {
                        for (r, c2) in prod.iter() {
                            next.push((idx * dim as u64 + *r as u64, c * c2));
                        }
                    }
                    std::mem::swap(&mut partial, &mut next);
                    if partial.is_empty() {
                        break;
                    }
                }
                for (idx, c) in partial.drain(..) {
                    accumulate(&mut acc, idx, c);
                }
            }
        }
        Ok(Self::from_map(alg, k, acc))
    }

    /// `u ⊗ v`, of degree `deg u + deg v`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.alg.id != other.alg.id {
            return Err(Error::AlgebraMismatch(format!(
                "'{}' vs '{}'",
                self.alg.name, other.alg.name
            )));
        }
        let shift = (self.alg.dim as u64)
            .checked_pow(other.degree)
            .ok_or_else(|| Error::SizeLimit("tensor index overflow".into()))?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                terms.push((i * shift + j, a * b));
            }
        }
        terms.sort_unstable_by_key(|(k, _)| *k);
        Ok(Self::from_sorted(&self.alg, self.degree + other.degree, terms))
    }

    /// Integer power (degree ≥ 1).
    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::unit(&self.alg, self.degree);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Human-readable rendering with basis labels.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let comps = self.components(*k);
                let label = if comps.is_empty() {
                    "1".to_string()
                } else {
                    comps
                        .iter()
                        .map(|&i| self.alg.labels[i].clone())
                        .collect::<Vec<_>>()
                        .join(" ⊗ ")
                };
                format!("({c})·[{label}]")
            })
            .collect();
        parts.join(" + ")
    }
}

pub(crate) fn split_index(mut idx: u64, dim: usize, degree: u32) -> Vec<usize> {
    let mut out = vec![0usize; degree as usize];
    for slot in out.iter_mut().rev() {
        *slot = (idx % dim as u64) as usize;
        idx /= dim as u64;
    }
    out
}

pub(crate) fn flat_index(comps: &[usize], dim: usize) -> u64 {
    comps.iter().fold(0u64, |acc, &c| acc * dim as u64 + c as u64)
}

/// The (anti)multiplicative extension of generator images along the
/// monomial basis of `dom`: `f(w x_t) = f(w) f(x_t)`, or `f(x_t) f(w)` when
/// `anti` is set. Correctness as a homomorphism is not checked here.
pub fn extend_from_generators(
    dom: &Arc<FinAlgebra>,
    cod: &Arc<FinAlgebra>,
    cod_degree: u32,
    images: &[AlgElement],
    anti: bool,
) -> Result<LinMap> {
    let mono = dom
        .monomials
        .as_ref()
        .ok_or_else(|| Error::InvalidParams(format!("{} has no monomial basis", dom.name)))?;
    if images.len() != mono.generators.len() {
        return Err(Error::InvalidParams(format!(
            "{} generator images for {} generators",
            images.len(),
            mono.generators.len()
        )));
    }
    let index = mono.index_map();
    let mut order: Vec<usize> = (0..dom.dim).collect();
    order.sort_by_key(|&b| mono.exponents[b].iter().sum::<u32>());
    let mut out: Vec<Option<AlgElement>> = vec![None; dom.dim];
    for b in order {
        let exps = &mono.exponents[b];
        let value = match exps.iter().rposition(|&e| e > 0) {
            None => AlgElement::unit(cod, cod_degree),
            Some(l) => {
                let mut prefix = exps.clone();
                prefix[l] -= 1;
                let p = *index.get(&prefix).ok_or_else(|| {
                    Error::BadPresentation(format!("prefix of {} is not a basis word", dom.labels[b]))
                })?;
                let prev = out[p].as_ref().expect("prefixes are processed first");
                if anti {
                    images[l].mul(prev)?
                } else {
                    prev.mul(&images[l])?
                }
            }
        };
        out[b] = Some(value);
    }
    LinMap::from_images(dom, cod, cod_degree, out.into_iter().map(|v| v.expect("filled")).collect())
}

/// Result of an exhaustive check: `Ok` or the first failing witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail(String),
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }
}

/// Work limit for exhaustive checks; `QHOPF_SIZE_LIMIT` overrides the default.
pub fn size_limit() -> u64 {
    std::env::var("QHOPF_SIZE_LIMIT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(30_000_000)
}

/// Verifies `(e_i e_j) e_k = e_i (e_j e_k)` and the unit axioms on the basis.
pub fn check_associativity(alg: &Arc<FinAlgebra>) -> Result<CheckOutcome> {
    let d = alg.dim as u64;
    if d.saturating_mul(d).saturating_mul(d) > size_limit() {
        return Err(Error::SizeLimit(format!(
            "associativity check on dim {} needs {}^3 triples",
            d, d
        )));
    }
    let unit = AlgElement::unit(alg, 1);
    for i in 0..alg.dim {
        let e = AlgElement::basis(alg, i);
        if unit.mul(&e)? != e || e.mul(&unit)? != e {
            return Ok(CheckOutcome::Fail(format!("unit axiom fails on {}", alg.labels[i])));
        }
    }
    let first_failure = crate::par::find_first(alg.dim, |i| {
        let ei = AlgElement::basis(alg, i);
        for j in 0..alg.dim {
            let eij = ei.mul(&AlgElement::basis(alg, j)).expect("same algebra");
            for k in 0..alg.dim {
                let ek = AlgElement::basis(alg, k);
                let left = eij.mul(&ek).expect("same algebra");
                let ejk = AlgElement::basis(alg, j).mul(&ek).expect("same algebra");
                let right = ei.mul(&ejk).expect("same algebra");
                if left != right {
                    return Some(format!(
                        "({} {}) {} != {} ({} {})",
                        alg.labels[i], alg.labels[j], alg.labels[k], alg.labels[i], alg.labels[j], alg.labels[k]
                    ));
                }
            }
        }
        None
    });
    Ok(match first_failure {
        Some(w) => CheckOutcome::Fail(w),
        None => CheckOutcome::Pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn group_algebra(n: u32) -> Arc<FinAlgebra> {
        let labels: Vec<String> = (0..n).map(|i| format!("a^{i}")).collect();
        let mut table = Vec::new();
        for i in 0..n {
            for j in 0..n {
                table.push(vec![(((i + j) % n) as usize, CycloNum::one(n))]);
            }
        }
        Arc::new(
            FinAlgebra::from_table("C[Z_n]", n, labels, vec![(0, CycloNum::one(n))], table, None).unwrap(),
        )
    }

    #[test]
    fn unit_and_group_relation() {
        let a = group_algebra(3);
        let x = AlgElement::basis(&a, 1);
        let one = AlgElement::unit(&a, 1);
        assert_eq!(one.mul(&x).unwrap(), x);
        let a2 = AlgElement::basis(&a, 2);
        assert_eq!(x.mul(&a2).unwrap(), one);
    }

    #[test]
    fn tensor_componentwise_product() {
        let alg = group_algebra(3);
        let one = AlgElement::unit(&alg, 1);
        let a = AlgElement::basis(&alg, 1);
        assert_eq!(one.tensor(&one).unwrap(), AlgElement::unit(&alg, 2));
        let left = a.tensor(&one).unwrap();
        let right = one.tensor(&a).unwrap();
        assert_eq!(left.mul(&right).unwrap(), a.tensor(&a).unwrap());
    }

    #[test]
    fn flat_index_round_trip() {
        for dim in [1usize, 3, 27] {
            for deg in 0..4u32 {
                let total = (dim as u64).pow(deg);
                for idx in (0..total).step_by(7) {
                    assert_eq!(flat_index(&split_index(idx, dim, deg), dim), idx);
                }
            }
        }
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = group_algebra(3);
        let b = group_algebra(3);
        let x = AlgElement::basis(&a, 1);
        let y = AlgElement::basis(&b, 1);
        assert!(matches!(x.mul(&y), Err(Error::AlgebraMismatch(_))));
        assert!(matches!(x.add(&y), Err(Error::AlgebraMismatch(_))));
        let x2 = x.tensor(&x).unwrap();
        assert!(matches!(x.mul(&x2), Err(Error::AlgebraMismatch(_))));
    }

    #[test]
    fn sums_never_store_zero() {
        let a = group_algebra(5);
        let x = AlgElement::basis(&a, 2);
        let z = x.sub(&x).unwrap();
        assert!(z.is_zero());
        assert!(z.terms().is_empty());
    }

    #[test]
    fn generator_extension_reproduces_identity() {
        let q = CycloNum::root_of_unity(9, 1);
        let pres = Presentation::new("b", 9)
            .generator("g", 9, PowerRule::Identity)
            .generator("e", 3, PowerRule::Zero)
            .commute(1, 0, q.inv().unwrap());
        let alg = Arc::new(normal_form_quotient(&pres).unwrap());
        let gens = vec![
            AlgElement::basis(&alg, alg.basis_index("g").unwrap()),
            AlgElement::basis(&alg, alg.basis_index("e").unwrap()),
        ];
        let id = extend_from_generators(&alg, &alg, 1, &gens, false).unwrap();
        for i in 0..alg.dim() {
            let e = AlgElement::basis(&alg, i);
            assert_eq!(id.apply(&e).unwrap(), e);
        }
        // the anti-extension of the identity images reverses words: g e ↦ e g = q^{-1} g e
        let anti = extend_from_generators(&alg, &alg, 1, &gens, true).unwrap();
        let ge = AlgElement::basis(&alg, alg.basis_index("g e").unwrap());
        assert_eq!(anti.apply(&ge).unwrap(), ge.scale(&q.inv().unwrap()));
    }

    #[test]
    fn associativity_check_and_negative_control() {
        let a = group_algebra(5);
        assert_eq!(check_associativity(&a).unwrap(), CheckOutcome::Pass);
        let broken = Arc::new(
            a.with_modified_product(1, 2, vec![(4, CycloNum::one(5))]).unwrap(),
        );
        assert!(matches!(check_associativity(&broken).unwrap(), CheckOutcome::Fail(_)));
    }
}
