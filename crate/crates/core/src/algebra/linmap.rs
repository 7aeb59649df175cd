use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{accumulate, split_index, AlgElement, FinAlgebra};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};

/// A linear map `A^{⊗j} → C^{⊗k}`.
///
/// Table maps are defined on basis elements of the first tensor power;
/// tensor products of maps stay lazy and act factor by factor.
#[derive(Clone)]
pub struct LinMap {
    dom: Arc<FinAlgebra>,
    cod: Arc<FinAlgebra>,
    dom_degree: u32,
    cod_degree: u32,
    kind: Kind,
}

#[derive(Clone)]
enum Kind {
    Identity,
    Table(Arc<Vec<Vec<(u64, CycloNum)>>>),
    Tensor(Vec<LinMap>),
    Compose(Box<LinMap>, Box<LinMap>),
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            Kind::Identity => "identity",
            Kind::Table(_) => "table",
            Kind::Tensor(_) => "tensor",
            Kind::Compose(..) => "compose",
        };
        write!(
            f,
            "LinMap({}^{} -> {}^{}, {kind})",
            self.dom.name(),
            self.dom_degree,
            self.cod.name(),
            self.cod_degree
        )
    }
}

impl LinMap {
    pub fn identity(alg: &Arc<FinAlgebra>, degree: u32) -> Self {
        LinMap {
            dom: alg.clone(),
            cod: alg.clone(),
            dom_degree: degree,
            cod_degree: degree,
            kind: Kind::Identity,
        }
    }

    /// A map on basis elements of `dom`, `images[i]` being the image of `e_i`.
    pub fn from_images(dom: &Arc<FinAlgebra>, cod: &Arc<FinAlgebra>, cod_degree: u32, images: Vec<AlgElement>) -> Result<Self> {
        if images.len() != dom.dim() {
            return Err(Error::InvalidParams(format!(
                "{} images for a {}-dimensional domain",
                images.len(),
                dom.dim()
            )));
        }
        let mut table = Vec::with_capacity(images.len());
        for img in images {
            if img.algebra().id() != cod.id() || img.degree() != cod_degree {
                return Err(Error::AlgebraMismatch("image outside the codomain".into()));
            }
            table.push(img.terms().to_vec());
        }
        Ok(LinMap {
            dom: dom.clone(),
            cod: cod.clone(),
            dom_degree: 1,
            cod_degree,
            kind: Kind::Table(Arc::new(table)),
        })
    }

    pub fn domain(&self) -> &Arc<FinAlgebra> {
        &self.dom
    }

    pub fn codomain(&self) -> &Arc<FinAlgebra> {
        &self.cod
    }

    pub fn dom_degree(&self) -> u32 {
        self.dom_degree
    }

    pub fn cod_degree(&self) -> u32 {
        self.cod_degree
    }

    /// Image of the basis element `e_i` of a degree-1 table or identity map.
    pub fn image_of_basis(&self, i: usize) -> Result<AlgElement> {
        if self.dom_degree != 1 {
            return Err(Error::InvalidParams("basis image of a tensor-power map".into()));
        }
        self.apply(&AlgElement::basis(&self.dom, i))
    }

    /// The sparse image of a flat basis index of the domain.
    fn image_terms(&self, idx: u64) -> Vec<(u64, CycloNum)> {
        match &self.kind {
            Kind::Identity => vec![(idx, CycloNum::one(self.cod.scalar_order()))],
            Kind::Table(t) => t[idx as usize].clone(),
            Kind::Tensor(parts) => {
                let dim = self.dom.dim();
                let comps = split_index(idx, dim, self.dom_degree);
                let mut acc: Vec<(u64, CycloNum)> = vec![(0, CycloNum::one(self.cod.scalar_order()))];
                let mut pos = 0usize;
                let cdim = self.cod.dim() as u64;
                for f in parts {
                    let d = f.dom_degree as usize;
                    let sub = super::flat_index(&comps[pos..pos + d], dim);
                    pos += d;
                    let img = f.image_terms(sub);
                    let shift = cdim.pow(f.cod_degree);
                    let mut next = Vec::with_capacity(acc.len() * img.len());
                    for (a, ca) in &acc {
                        for (b, cb) in &img {
                            next.push((a * shift + b, ca * cb));
                        }
                    }
                    acc = next;
                    if acc.is_empty() {
                        break;
                    }
                }
                acc
            }
            Kind::Compose(outer, inner) => {
                let mut out: HashMap<u64, CycloNum> = HashMap::new();
                for (k, c) in inner.image_terms(idx) {
                    for (k2, c2) in outer.image_terms(k) {
                        accumulate(&mut out, k2, &c * &c2);
                    }
                }
                super::normalize(out)
            }
        }
    }

    pub fn apply(&self, u: &AlgElement) -> Result<AlgElement> {
        if u.algebra().id() != self.dom.id() || u.degree() != self.dom_degree {
            return Err(Error::AlgebraMismatch(format!(
                "map on {}^{} applied to an element of {}^{}",
                self.dom.name(),
                self.dom_degree,
                u.algebra().name(),
                u.degree()
            )));
        }
        if let Kind::Identity = self.kind {
            return Ok(u.clone());
        }
        let mut acc: HashMap<u64, CycloNum> = HashMap::new();
        for (idx, c) in u.terms() {
            for (k, c2) in self.image_terms(*idx) {
                accumulate(&mut acc, k, c * &c2);
            }
        }
        Ok(AlgElement::from_map(&self.cod, self.cod_degree, acc))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinMap) -> Result<LinMap> {
        if inner.cod.id() != self.dom.id() || inner.cod_degree != self.dom_degree {
            return Err(Error::AlgebraMismatch("composition of incompatible maps".into()));
        }
        Ok(LinMap {
            dom: inner.dom.clone(),
            cod: self.cod.clone(),
            dom_degree: inner.dom_degree,
            cod_degree: self.cod_degree,
            kind: Kind::Compose(Box::new(self.clone()), Box::new(inner.clone())),
        })
    }

    /// A copy whose image of `e_i` is replaced. Intended for negative controls.
    pub fn with_modified_image(&self, i: usize, image: AlgElement) -> Result<LinMap> {
        if self.dom_degree != 1 {
            return Err(Error::InvalidParams("only degree-1 maps can be modified".into()));
        }
        let mut table: Vec<Vec<(u64, CycloNum)>> = (0..self.dom.dim()).map(|k| self.image_terms(k as u64)).collect();
        if image.algebra().id() != self.cod.id() || image.degree() != self.cod_degree {
            return Err(Error::AlgebraMismatch("image outside the codomain".into()));
        }
        table[i] = image.terms().to_vec();
        Ok(LinMap {
            kind: Kind::Table(Arc::new(table)),
            ..self.clone()
        })
    }
}

/// `f_1 ⊗ … ⊗ f_r`, acting on `A^{⊗(Σ deg dom)}`.
pub fn tensor_map(maps: &[LinMap]) -> Result<LinMap> {
    let first = maps
        .first()
        .ok_or_else(|| Error::InvalidParams("empty tensor product of maps".into()))?;
    for m in maps {
        if m.dom.id() != first.dom.id() || m.cod.id() != first.cod.id() {
            return Err(Error::AlgebraMismatch("tensor factors act on different algebras".into()));
        }
    }
    let dom_degree = maps.iter().map(|m| m.dom_degree).sum();
    let cod_degree = maps.iter().map(|m| m.cod_degree).sum();
    if maps.iter().all(|m| matches!(m.kind, Kind::Identity)) {
        return Ok(LinMap::identity(&first.dom, dom_degree));
    }
    Ok(LinMap {
        dom: first.dom.clone(),
        cod: first.cod.clone(),
        dom_degree,
        cod_degree,
        kind: Kind::Tensor(maps.to_vec()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::group_algebra;

    fn grouplike_coproduct(alg: &Arc<FinAlgebra>) -> LinMap {
        let images = (0..alg.dim())
            .map(|i| {
                let g = AlgElement::basis(alg, i);
                g.tensor(&g).unwrap()
            })
            .collect();
        LinMap::from_images(alg, alg, 2, images).unwrap()
    }

    fn counit(alg: &Arc<FinAlgebra>) -> LinMap {
        let n = alg.scalar_order();
        let images = (0..alg.dim())
            .map(|_| AlgElement::scalar(alg, CycloNum::one(n)))
            .collect();
        LinMap::from_images(alg, alg, 0, images).unwrap()
    }

    #[test]
    fn identity_and_counit() {
        let alg = group_algebra(3);
        let a = AlgElement::basis(&alg, 1);
        assert_eq!(LinMap::identity(&alg, 1).apply(&a).unwrap(), a);
        let eps = counit(&alg);
        for k in 0..3 {
            let v = eps.apply(&AlgElement::basis(&alg, k)).unwrap();
            assert!(v.scalar_value().is_one());
        }
    }

    #[test]
    fn tensor_extension_acts_factorwise() {
        let alg = group_algebra(4);
        let delta = grouplike_coproduct(&alg);
        let id = LinMap::identity(&alg, 1);
        let u = AlgElement::basis(&alg, 1);
        let v = AlgElement::basis(&alg, 3);
        let left = tensor_map(&[delta.clone(), id.clone()]).unwrap();
        let got = left.apply(&u.tensor(&v).unwrap()).unwrap();
        let expected = delta.apply(&u).unwrap().tensor(&v).unwrap();
        assert_eq!(got, expected);
        let right = tensor_map(&[id.clone(), delta.clone()]).unwrap();
        let got = right.apply(&u.tensor(&v).unwrap()).unwrap();
        assert_eq!(got, u.tensor(&delta.apply(&v).unwrap()).unwrap());
        assert!(matches!(
            tensor_map(&[id.clone(), id.clone()]).unwrap().kind,
            Kind::Identity
        ));
    }

    #[test]
    fn counit_axiom_instance() {
        let alg = group_algebra(5);
        let delta = grouplike_coproduct(&alg);
        let eps_id = tensor_map(&[counit(&alg), LinMap::identity(&alg, 1)]).unwrap();
        for k in 0..5 {
            let h = AlgElement::basis(&alg, k);
            assert_eq!(eps_id.apply(&delta.apply(&h).unwrap()).unwrap(), h);
        }
    }

    #[test]
    fn composition_is_associative() {
        let alg = group_algebra(3);
        let n = alg.scalar_order();
        let shift = LinMap::from_images(
            &alg,
            &alg,
            1,
            (0..3).map(|i| AlgElement::basis(&alg, (i + 1) % 3)).collect(),
        )
        .unwrap();
        let twice = LinMap::from_images(
            &alg,
            &alg,
            1,
            (0..3)
                .map(|i| AlgElement::basis(&alg, i).scale(&CycloNum::from_int(n, 2)))
                .collect(),
        )
        .unwrap();
        let lhs = shift.compose(&twice).unwrap().compose(&shift).unwrap();
        let rhs = shift.compose(&twice.compose(&shift).unwrap()).unwrap();
        for i in 0..3 {
            let e = AlgElement::basis(&alg, i);
            assert_eq!(lhs.apply(&e).unwrap(), rhs.apply(&e).unwrap());
        }
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let alg = group_algebra(3);
        let delta = grouplike_coproduct(&alg);
        let x = AlgElement::basis(&alg, 0);
        assert!(delta.apply(&x.tensor(&x).unwrap()).is_err());
    }
}
