use std::collections::HashMap;
use std::sync::Arc;

use super::{split_index, AlgElement, FinAlgebra, MonomialData};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};

/// A subalgebra spanned by a subset of the basis of a larger algebra,
/// `e_i ↦ e_{index[i]}`.
#[derive(Debug, Clone)]
pub struct Embedding {
    sub: Arc<FinAlgebra>,
    sup: Arc<FinAlgebra>,
    index: Vec<usize>,
    reverse: HashMap<usize, usize>,
}

impl Embedding {
    /// Wraps an existing algebra `sub` as the span of `index` inside `sup`.
    /// Nothing is checked; see [`Embedding::check_hom`].
    pub fn new(sub: Arc<FinAlgebra>, sup: Arc<FinAlgebra>, index: Vec<usize>) -> Result<Self> {
        if index.len() != sub.dim() {
            return Err(Error::InvalidParams("embedding index length".into()));
        }
        if sub.scalar_order() != sup.scalar_order() {
            return Err(Error::OrderMismatch(sub.scalar_order(), sup.scalar_order()));
        }
        let reverse: HashMap<usize, usize> = index.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        if reverse.len() != index.len() || index.iter().any(|&k| k >= sup.dim()) {
            return Err(Error::InvalidParams("embedding index is not injective".into()));
        }
        Ok(Embedding { sub, sup, index, reverse })
    }

    /// The span of the basis elements `index` of `sup`, with structure
    /// constants read off from `sup`. Fails if a product leaves the span or
    /// the unit is not in it.
    pub fn span(name: impl Into<String>, sup: &Arc<FinAlgebra>, index: Vec<usize>) -> Result<Self> {
        let labels = index.iter().map(|&k| sup.labels()[k].clone()).collect();
        let monomials = sup.monomials().map(|m| MonomialData {
            generators: m.generators.clone(),
            exponents: index.iter().map(|&k| m.exponents[k].clone()).collect(),
        });
        Self::span_relabelled(name, sup, index, labels, monomials)
    }

    /// [`Embedding::span`] with caller-supplied labels and monomial data for
    /// the subalgebra (e.g. in terms of its own generators).
    pub fn span_relabelled(
        name: impl Into<String>,
        sup: &Arc<FinAlgebra>,
        index: Vec<usize>,
        labels: Vec<String>,
        monomials: Option<MonomialData>,
    ) -> Result<Self> {
        let reverse: HashMap<usize, usize> = index.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let d = index.len();
        let pull = |terms: &[(u32, CycloNum)]| -> Result<Vec<(usize, CycloNum)>> {
            terms
                .iter()
                .map(|(k, c)| {
                    reverse
                        .get(&(*k as usize))
                        .map(|&r| (r, c.clone()))
                        .ok_or_else(|| Error::Closure(format!("{} is not in the span", sup.labels()[*k as usize])))
                })
                .collect()
        };
        let table = crate::par::try_map_indexed(d * d, |ij| {
            let prod = sup.basis_product(index[ij / d], index[ij % d]);
            pull(&prod)
        })?;
        let unit_terms: Vec<(u32, CycloNum)> = sup
            .unit_terms()
            .iter()
            .map(|(k, c)| (*k as u32, c.clone()))
            .collect();
        let unit = pull(&unit_terms)?;
        let sub = FinAlgebra::from_table(name, sup.scalar_order(), labels, unit, table, monomials)?;
        Self::new(Arc::new(sub), sup.clone(), index)
    }

    pub fn sub(&self) -> &Arc<FinAlgebra> {
        &self.sub
    }

    pub fn sup(&self) -> &Arc<FinAlgebra> {
        &self.sup
    }

    pub fn index(&self) -> &[usize] {
        &self.index
    }

    pub fn contains_basis(&self, k: usize) -> bool {
        self.reverse.contains_key(&k)
    }

    /// Image of an element of `sub^{⊗k}` in `sup^{⊗k}`.
    pub fn include(&self, u: &AlgElement) -> Result<AlgElement> {
        if u.algebra().id() != self.sub.id() {
            return Err(Error::AlgebraMismatch("include: element not in the subalgebra".into()));
        }
        let k = u.degree();
        let terms = u.terms().iter().map(|(idx, c)| {
            let comps = split_index(*idx, self.sub.dim(), k);
            let mapped: Vec<usize> = comps.iter().map(|&i| self.index[i]).collect();
            (super::flat_index(&mapped, self.sup.dim()), c.clone())
        });
        AlgElement::from_terms(&self.sup, k, terms)
    }

    /// Preimage of an element of `sup^{⊗k}` supported on `sub^{⊗k}`.
    pub fn restrict(&self, u: &AlgElement) -> Result<AlgElement> {
        if u.algebra().id() != self.sup.id() {
            return Err(Error::AlgebraMismatch("restrict: element not in the ambient algebra".into()));
        }
        let k = u.degree();
        let mut terms = Vec::with_capacity(u.len());
        for (idx, c) in u.terms() {
            let comps = split_index(*idx, self.sup.dim(), k);
            let mut mapped = Vec::with_capacity(comps.len());
            for &i in &comps {
                match self.reverse.get(&i) {
                    Some(&r) => mapped.push(r),
                    None => {
                        let label: Vec<&str> = comps.iter().map(|&j| self.sup.labels()[j].as_str()).collect();
                        return Err(Error::Closure(format!(
                            "term [{}] lies outside {}",
                            label.join(" ⊗ "),
                            self.sub.name()
                        )));
                    }
                }
            }
            terms.push((super::flat_index(&mapped, self.sub.dim()), c.clone()));
        }
        AlgElement::from_terms(&self.sub, k, terms)
    }

    /// Whether the inclusion is multiplicative and unital on all basis pairs.
    pub fn check_hom(&self) -> Result<super::CheckOutcome> {
        let d = self.sub.dim();
        if (d as u64).saturating_mul(d as u64) > super::size_limit() {
            return Err(Error::SizeLimit(format!("closure check on dim {d}")));
        }
        if self.include(&AlgElement::unit(&self.sub, 1))? != AlgElement::unit(&self.sup, 1) {
            return Ok(super::CheckOutcome::Fail("unit is not preserved".into()));
        }
        let fail = crate::par::find_first(d * d, |ij| {
            let (i, j) = (ij / d, ij % d);
            let a = AlgElement::basis(&self.sub, i);
            let b = AlgElement::basis(&self.sub, j);
            let lhs = self.include(&a.mul(&b).ok()?).ok()?;
            let rhs = self.include(&a).ok()?.mul(&self.include(&b).ok()?).ok()?;
            (lhs != rhs).then(|| format!("{} · {}", self.sub.labels()[i], self.sub.labels()[j]))
        });
        Ok(match fail {
            Some(w) => super::CheckOutcome::Fail(w),
            None => super::CheckOutcome::Pass,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::group_algebra;
    use crate::algebra::CheckOutcome;

    #[test]
    fn subgroup_span() {
        let big = group_algebra(9);
        let emb = Embedding::span("C[Z_3]", &big, vec![0, 3, 6]).unwrap();
        assert_eq!(emb.sub().dim(), 3);
        assert_eq!(emb.check_hom().unwrap(), CheckOutcome::Pass);
        let a = AlgElement::basis(emb.sub(), 1);
        assert_eq!(emb.restrict(&emb.include(&a).unwrap()).unwrap(), a);
        let x = AlgElement::basis(&big, 1);
        assert!(matches!(emb.restrict(&x), Err(Error::Closure(_))));
    }

    #[test]
    fn span_that_is_not_closed_fails() {
        let big = group_algebra(9);
        assert!(matches!(
            Embedding::span("bad", &big, vec![0, 1]),
            Err(Error::Closure(_))
        ));
    }
}
