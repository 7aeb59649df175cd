//! Modular arithmetic behind the rank-two obstruction, and the eigenspace
//! and dimension bookkeeping of graded quasi-Hopf algebras over `C[Z_p]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElement, CheckOutcome};
use crate::cohomology::{cocycle_from_phi, is_coboundary};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::families::is_prime;
use crate::qhopf::GradedQuasiHopf;

/// Dimensions of the eigenspaces `H_r[1] = {v : a v a⁻¹ = Q^r v}` where
/// `a` generates the degree-0 group `Z_p` and `Q = χ_1(a)` is the root
/// fixed by the group part. Only nonzero eigenspaces are listed.
pub fn eigenspace_decomposition(g: &GradedQuasiHopf) -> Result<BTreeMap<u32, usize>> {
    let h = g.base();
    let gp = h
        .group_part()
        .ok_or_else(|| Error::InvalidParams("degree-0 part is not a known group algebra".into()))?;
    if gp.group().rank() != 1 {
        return Err(Error::InvalidParams("degree-0 group is not cyclic".into()));
    }
    let p = gp.group().size();
    let alg = h.algebra();
    let n = alg.scalar_order();
    let degree_one: Vec<usize> = (0..alg.dim()).filter(|&k| g.degrees()[k] == 1).collect();
    let mut out = BTreeMap::new();
    if degree_one.is_empty() {
        return Ok(out);
    }
    // tr(Ad_{a^k}) on H[1], then dim H_r[1] = (1/p) Σ_k Q^{-rk} tr(Ad_{a^k}).
    let traces = (0..p)
        .map(|k| {
            let ak = gp.group_element(k);
            let ak_inv = gp.group_element(gp.group().neg(k));
            let mut tr = CycloNum::zero(n);
            for &b in &degree_one {
                let conj = ak.mul(&AlgElement::basis(alg, b))?.mul(&ak_inv)?;
                tr += &conj.coeff(b as u64);
            }
            Ok(tr)
        })
        .collect::<Result<Vec<_>>>()?;
    let q_exp = gp.character_exponent(1, 1) as i64;
    let inv_p = BigRational::new(BigInt::from(1), BigInt::from(p));
    for r in 0..p as i64 {
        let mut acc = CycloNum::zero(n);
        for (k, tr) in traces.iter().enumerate() {
            acc += &(tr * &CycloNum::root_of_unity(n, -q_exp * r * k as i64));
        }
        let dim = acc
            .scale(&inv_p)
            .as_rational()
            .filter(|d| d.is_integer())
            .ok_or_else(|| Error::InvalidParams("conjugation by a is not diagonalizable on H[1]".into()))?;
        let dim: usize = dim.to_integer().try_into().map_err(|_| Error::InvalidParams("negative dimension".into()))?;
        if dim > 0 {
            out.insert(r as u32, dim);
        }
    }
    Ok(out)
}

/// Braiding exponents `b, d ∈ Z_{p²}`, units, with `b ≡ d (mod p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidingData {
    pub p: u32,
    pub b: u64,
    pub d: u64,
}

impl BraidingData {
    pub fn new(p: u32, b: i64, d: i64) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(Error::InvalidParams(format!("p = {p} is not an odd prime")));
        }
        let m = (p as i64) * (p as i64);
        let (b, d) = (b.rem_euclid(m), d.rem_euclid(m));
        if b % p as i64 == 0 || d % p as i64 == 0 {
            return Err(Error::InvalidParams("b and d must be units".into()));
        }
        if (b - d) % p as i64 != 0 {
            return Err(Error::InvalidParams("b ≢ d mod p".into()));
        }
        Ok(BraidingData {
            p,
            b: b as u64,
            d: d as u64,
        })
    }
}

fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// `a12 = b + d`, `a21 = (b + d)/(bd)` in `Z_{p²}`.
pub fn cartan_from_braiding(data: BraidingData) -> Result<(u64, u64)> {
    let m = (data.p as i64) * (data.p as i64);
    let (b, d) = (data.b as i64, data.d as i64);
    let inv = inv_mod(b * d, m).ok_or(Error::DivisionByZero)?;
    let a12 = (b + d).rem_euclid(m);
    let a21 = (a12 * inv).rem_euclid(m);
    Ok((a12 as u64, a21 as u64))
}

/// `a12 · a21 ≡ 4 (mod p)` for every admissible pair `(b, d)`.
pub fn check_product_is_4(p: u32) -> Result<CheckOutcome> {
    let m = (p as i64) * (p as i64);
    for b in 0..m {
        for d in 0..m {
            let Ok(data) = BraidingData::new(p, b, d) else { continue };
            let (a12, a21) = cartan_from_braiding(data)?;
            if (a12 * a21) % p as u64 != 4 % p as u64 {
                return Ok(CheckOutcome::Fail(format!("b = {b}, d = {d}: a12 a21 = {}", a12 * a21)));
            }
        }
    }
    Ok(CheckOutcome::Pass)
}

/// No `b ≡ 1 (mod 3)` solves `b² + b + 1 ≡ 0 (mod 9)`.
pub fn check_p3_contradiction() -> CheckOutcome {
    match (0..9u32).filter(|b| b % 3 == 1).find(|b| (b * b + b + 1) % 9 == 0) {
        Some(b) => CheckOutcome::Fail(format!("b = {b} solves b² + b + 1 ≡ 0 mod 9")),
        None => CheckOutcome::Pass,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FiniteType {
    A1xA1,
    A2,
    B2,
    G2,
    NotFiniteType,
}

/// Rank-two finite type from the off-diagonal Cartan entries.
pub fn finite_type_filter(a12: i64, a21: i64) -> FiniteType {
    match a12.checked_mul(a21) {
        Some(0) => FiniteType::A1xA1,
        Some(1) => FiniteType::A2,
        Some(2) => FiniteType::B2,
        Some(3) => FiniteType::G2,
        _ => FiniteType::NotFiniteType,
    }
}

/// One row of the dimension census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub name: String,
    pub dim: usize,
    pub degree_zero_dim: usize,
    pub rank_num: u64,
    pub rank_den: u64,
    pub nontrivial_associator: bool,
    /// Whether the degree-0 part has prime dimension `p`.
    pub prime_codimension: bool,
    /// For nontrivial associators over `C[Z_p]`: rank ≤ 1 and
    /// `dim ∈ {p, p³}`. Vacuously true otherwise.
    pub consistent: bool,
}

pub fn census_entry(g: &GradedQuasiHopf) -> Result<CensusEntry> {
    let h = g.base();
    let rank: Ratio<u64> = g.rank_degree_one()?;
    let dims = g.piece_dims();
    let p = dims[0];
    let nontrivial = !is_coboundary(&cocycle_from_phi(h)?)?.is_trivial();
    let prime = is_prime(p as u32);
    let consistent = !(nontrivial && prime) || (rank <= Ratio::from_integer(1) && (h.dim() == p || h.dim() == p * p * p));
    Ok(CensusEntry {
        name: h.name().to_string(),
        dim: h.dim(),
        degree_zero_dim: p,
        rank_num: *rank.numer(),
        rank_den: *rank.denom(),
        nontrivial_associator: nontrivial,
        prime_codimension: prime,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_aq, build_hps, AqParams, HpsParams};
    use proptest::prelude::*;

    #[test]
    fn aq_degree_one_is_one_eigenspace() {
        for k in [1i64, 2, 4] {
            let a = build_aq(AqParams::new(3, k).unwrap()).unwrap();
            let dec = eigenspace_decomposition(&a).unwrap();
            assert_eq!(dec.len(), 1);
            let (&r, &dim) = dec.iter().next().unwrap();
            assert_ne!(r, 0);
            assert_eq!(dim, 3);
            assert!(!dec.contains_key(&0));
        }
    }

    #[test]
    fn hps_has_no_degree_one() {
        let h = build_hps(HpsParams::new(5, 2).unwrap()).unwrap();
        let g = GradedQuasiHopf::new(h, vec![0; 5]).unwrap();
        assert!(eigenspace_decomposition(&g).unwrap().is_empty());
        assert_eq!(g.rank_degree_one().unwrap(), Ratio::from_integer(0));
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(cartan_from_braiding(BraidingData::new(3, 1, 1).unwrap()).unwrap(), (2, 2));
        let (a12, a21) = cartan_from_braiding(BraidingData::new(5, 1, 6).unwrap()).unwrap();
        assert_eq!(a12, 7);
        assert_eq!((a21 * 6) % 25, 7);
        assert!(BraidingData::new(5, 1, 2).is_err());
        assert!(BraidingData::new(5, 5, 5).is_err());
    }

    #[test]
    fn product_is_four() {
        for p in [3u32, 5, 7] {
            assert_eq!(check_product_is_4(p).unwrap(), CheckOutcome::Pass);
        }
    }

    #[test]
    fn p3_contradiction() {
        assert_eq!(check_p3_contradiction(), CheckOutcome::Pass);
        for b in [1u32, 4, 7] {
            assert_eq!((b * b + b + 1) % 9, 3);
        }
    }

    #[test]
    fn finite_types() {
        assert_eq!(finite_type_filter(0, 0), FiniteType::A1xA1);
        assert_eq!(finite_type_filter(-1, -1), FiniteType::A2);
        assert_eq!(finite_type_filter(-1, -2), FiniteType::B2);
        assert_eq!(finite_type_filter(-3, -1), FiniteType::G2);
        assert_eq!(finite_type_filter(-2, -2), FiniteType::NotFiniteType);
    }

    #[test]
    fn census_rows() {
        let a = build_aq(AqParams::new(3, 1).unwrap()).unwrap();
        let e = census_entry(&a).unwrap();
        assert!(e.nontrivial_associator && e.prime_codimension && e.consistent);
        assert_eq!((e.dim, e.rank_num, e.rank_den), (27, 1, 1));
    }

    proptest! {
        #[test]
        fn equal_braidings_give_four(p in prop::sample::select(vec![3u32, 5, 7, 11]), b in 1i64..200) {
            prop_assume!(b % p as i64 != 0);
            let (a12, a21) = cartan_from_braiding(BraidingData::new(p, b, b).unwrap()).unwrap();
            prop_assert_eq!((a12 * a21) % p as u64, 4 % p as u64);
        }
    }
}
