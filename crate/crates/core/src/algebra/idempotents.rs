use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{split_index, AlgElement, FinAlgebra};
use crate::cyclo::{CycloNum, RotationSum};
use crate::error::{Error, Result};
use crate::group::AbelianGroup;

/// A group algebra `C[G] ⊂ A` of a finite abelian group together with a
/// fixed identification of `G` with its character group.
///
/// The character indexed by `β` takes the value `ζ_N^{Σ_t c_t β_t g_t}` on
/// the element with exponents `g`, where `c_t` are the character exponents
/// and `N` the scalar order of `A`. The primitive idempotents are
/// `1_β = |G|^{-1} Σ_g χ_β(g)^{-1} g`, so that `1_β g = χ_β(g) 1_β`.
#[derive(Debug, Clone)]
pub struct GroupPart {
    alg: Arc<FinAlgebra>,
    group: AbelianGroup,
    elements: Vec<usize>,
    char_exponents: Vec<i64>,
    /// `chi[β * |G| + g]` as an exponent of `ζ_N`.
    chi: Vec<u32>,
    roots: Vec<CycloNum>,
}

impl GroupPart {
    /// `elements[g]` is the basis index of the group element with index `g`.
    pub fn new(alg: &Arc<FinAlgebra>, group: AbelianGroup, elements: Vec<usize>, char_exponents: Vec<i64>) -> Result<Self> {
        let n = alg.scalar_order() as i64;
        if elements.len() != group.size() || char_exponents.len() != group.rank() {
            return Err(Error::InvalidParams("group part shape".into()));
        }
        for (t, (&c, &d)) in char_exponents.iter().zip(group.orders()).enumerate() {
            let e = c.rem_euclid(n);
            let order = n / num_integer::gcd(e, n);
            if order != d as i64 {
                return Err(Error::InvalidParams(format!(
                    "character exponent {c} on generator {t} has order {order}, expected {d}"
                )));
            }
        }
        let size = group.size();
        let elems: Vec<Vec<u32>> = (0..size).map(|g| group.element(g)).collect();
        let mut chi = Vec::with_capacity(size * size);
        for b in &elems {
            for g in &elems {
                let e: i64 = char_exponents
                    .iter()
                    .zip(b.iter().zip(g))
                    .map(|(&c, (&bi, &gi))| c * bi as i64 * gi as i64)
                    .sum();
                chi.push(e.rem_euclid(n) as u32);
            }
        }
        let roots = (0..n).map(|k| CycloNum::root_of_unity(n as u32, k)).collect();
        Ok(GroupPart {
            alg: alg.clone(),
            group,
            elements,
            char_exponents,
            chi,
            roots,
        })
    }

    pub fn algebra(&self) -> &Arc<FinAlgebra> {
        &self.alg
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn char_exponents(&self) -> &[i64] {
        &self.char_exponents
    }

    /// Exponent of `ζ_N` in `χ_β(g)`.
    pub fn character_exponent(&self, beta: usize, g: usize) -> u32 {
        self.chi[beta * self.group.size() + g]
    }

    pub fn character(&self, beta: usize, g: usize) -> CycloNum {
        self.roots[self.character_exponent(beta, g) as usize].clone()
    }

    pub fn group_element(&self, g: usize) -> AlgElement {
        AlgElement::basis(&self.alg, self.elements[g])
    }

    /// The primitive idempotent `1_β`.
    pub fn idempotent(&self, beta: usize) -> AlgElement {
        self.diagonal(1, |b| {
            if b[0] == beta {
                CycloNum::one(self.alg.scalar_order())
            } else {
                CycloNum::zero(self.alg.scalar_order())
            }
        })
        .expect("degree 1 fits")
    }

    /// `Σ_β f(β) 1_{β_1} ⊗ … ⊗ 1_{β_k}` expressed in the group basis.
    pub fn diagonal<F>(&self, degree: u32, f: F) -> Result<AlgElement>
    where
        F: Fn(&[usize]) -> CycloNum,
    {
        let size = self.group.size();
        let total = checked_power(size, degree)?;
        let mut data: Vec<CycloNum> = (0..total)
            .map(|idx| f(&split_index(idx as u64, size, degree)))
            .collect();
        let n = self.alg.scalar_order();
        let inv_size = CycloNum::from_rational(n, &BigRational::new(BigInt::from(1), BigInt::from(size)));
        for axis in 0..degree {
            data = self.transform_axis(&data, degree, axis, true);
        }
        let terms = data.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(idx, c)| {
            let comps = split_index(idx as u64, size, degree);
            let mapped: Vec<usize> = comps.iter().map(|&g| self.elements[g]).collect();
            (super::flat_index(&mapped, self.alg.dim()), c)
        });
        let scale = inv_size.pow(degree as i64)?;
        Ok(AlgElement::from_terms(&self.alg, degree, terms)?.scale(&scale))
    }

    /// The coefficient function `f` with `u = Σ f(β) 1_{β_1} ⊗ … ⊗ 1_{β_k}`,
    /// indexed in mixed radix over `G^k`. Fails if `u` has support outside
    /// the group part.
    pub fn diagonal_coefficients(&self, u: &AlgElement) -> Result<Vec<CycloNum>> {
        if u.algebra().id() != self.alg.id() {
            return Err(Error::AlgebraMismatch("element outside the group part's algebra".into()));
        }
        let degree = u.degree();
        let size = self.group.size();
        let total = checked_power(size, degree)?;
        let position: std::collections::HashMap<usize, usize> =
            self.elements.iter().enumerate().map(|(g, &b)| (b, g)).collect();
        let n = self.alg.scalar_order();
        let mut data = vec![CycloNum::zero(n); total];
        for (idx, c) in u.terms() {
            let comps = u.components(*idx);
            let mut mapped = Vec::with_capacity(comps.len());
            for &b in &comps {
                match position.get(&b) {
                    Some(&g) => mapped.push(g),
                    None => {
                        return Err(Error::NotDiagonal(format!(
                            "support on {}",
                            self.alg.labels()[b]
                        )))
                    }
                }
            }
            data[super::flat_index(&mapped, size) as usize] = c.clone();
        }
        for axis in 0..degree {
            data = self.transform_axis(&data, degree, axis, false);
        }
        Ok(data)
    }

    /// Applies the character matrix along one tensor slot. `to_group`
    /// selects `χ_β(g)^{-1}` (idempotent to group coordinates, without the
    /// `1/|G|` factor) versus `χ_β(g)`.
    fn transform_axis(&self, data: &[CycloNum], degree: u32, axis: u32, to_group: bool) -> Vec<CycloNum> {
        let size = self.group.size();
        let n = self.alg.scalar_order();
        let stride = size.pow(degree - 1 - axis);
        let block = stride * size;
        let mut out = vec![CycloNum::zero(n); data.len()];
        for outer in (0..data.len()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                if (0..size).all(|src| data[base + src * stride].is_zero()) {
                    continue;
                }
                for dst in 0..size {
                    let mut acc = RotationSum::new(n);
                    for src in 0..size {
                        let e = if to_group {
                            (n - self.character_exponent(src, dst)) % n
                        } else {
                            self.character_exponent(dst, src)
                        };
                        acc.add_rotated(&data[base + src * stride], e);
                    }
                    out[base + dst * stride] = acc.finish();
                }
            }
        }
        out
    }
}

fn checked_power(size: usize, degree: u32) -> Result<usize> {
    let total = size
        .checked_pow(degree)
        .ok_or_else(|| Error::SizeLimit(format!("|G|^{degree} overflows")))?;
    if total as u64 > super::size_limit() {
        return Err(Error::SizeLimit(format!("{total} idempotent coefficients")));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::group_algebra;

    fn cyclic_part(n: u32) -> GroupPart {
        let alg = group_algebra(n);
        GroupPart::new(&alg, AbelianGroup::cyclic(n), (0..n as usize).collect(), vec![1]).unwrap()
    }

    #[test]
    fn idempotents_are_orthogonal_and_complete() {
        let gp = cyclic_part(5);
        let alg = gp.algebra().clone();
        let mut sum = AlgElement::zero(&alg, 1);
        for i in 0..5 {
            let ei = gp.idempotent(i);
            for j in 0..5 {
                let prod = ei.mul(&gp.idempotent(j)).unwrap();
                if i == j {
                    assert_eq!(prod, ei);
                } else {
                    assert!(prod.is_zero());
                }
            }
            sum = sum.add(&ei).unwrap();
        }
        assert_eq!(sum, AlgElement::unit(&alg, 1));
    }

    #[test]
    fn eigenvalue_convention() {
        let gp = cyclic_part(3);
        for b in 0..3 {
            let lhs = gp.idempotent(b).mul(&gp.group_element(1)).unwrap();
            let rhs = gp.idempotent(b).scale(&CycloNum::root_of_unity(3, b as i64));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn orthogonal_tensor_idempotents() {
        let gp = cyclic_part(3);
        let a = gp.idempotent(0).tensor(&gp.idempotent(1)).unwrap();
        let b = gp.idempotent(1).tensor(&gp.idempotent(1)).unwrap();
        assert!(a.mul(&b).unwrap().is_zero());
    }

    #[test]
    fn diagonal_round_trip() {
        let gp = cyclic_part(3);
        let f = |b: &[usize]| CycloNum::root_of_unity(3, (b[0] * b[1] + 2 * b[2]) as i64);
        let u = gp.diagonal(3, f).unwrap();
        let coeffs = gp.diagonal_coefficients(&u).unwrap();
        for (idx, c) in coeffs.iter().enumerate() {
            assert_eq!(c, &f(&split_index(idx as u64, 3, 3)));
        }
        let direct = {
            let mut acc = AlgElement::zero(gp.algebra(), 3);
            for idx in 0..27u64 {
                let b = split_index(idx, 3, 3);
                let t = gp
                    .idempotent(b[0])
                    .tensor(&gp.idempotent(b[1]))
                    .unwrap()
                    .tensor(&gp.idempotent(b[2]))
                    .unwrap()
                    .scale(&f(&b));
                acc = acc.add(&t).unwrap();
            }
            acc
        };
        assert_eq!(u, direct);
    }

    #[test]
    fn wrong_character_order_is_rejected() {
        let alg = group_algebra(9);
        assert!(GroupPart::new(&alg, AbelianGroup::cyclic(9), (0..9).collect(), vec![3]).is_err());
    }
}
