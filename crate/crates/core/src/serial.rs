//! JSON file formats for algebras and verification reports.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElement, FinAlgebra, GroupPart, LinMap};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::qhopf::{GradedQuasiHopf, QuasiHopf, QuasiHopfParts, Status, VerifyReport};

pub const FORMAT_VERSION: u32 = 1;

/// An integer that stays a JSON number when it fits in `i64`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn from_big(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(s) => JsonInt::Small(s),
            None => JsonInt::Big(v.to_string()),
        }
    }

    fn to_big(&self) -> Result<BigInt> {
        match self {
            JsonInt::Small(s) => Ok(BigInt::from(*s)),
            JsonInt::Big(s) => s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        }
    }
}

/// `{order, coeffs: [[num, den], ...]}` in the power basis of `Q(ζ_order)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloJson {
    pub order: u32,
    pub coeffs: Vec<(JsonInt, JsonInt)>,
}

impl From<&CycloNum> for CycloJson {
    fn from(c: &CycloNum) -> Self {
        CycloJson {
            order: c.order(),
            coeffs: c
                .coeff_parts()
                .iter()
                .map(|(n, d)| (JsonInt::from_big(n), JsonInt::from_big(d)))
                .collect(),
        }
    }
}

impl TryFrom<&CycloJson> for CycloNum {
    type Error = Error;

    fn try_from(j: &CycloJson) -> Result<Self> {
        if j.order == 0 {
            return Err(Error::Parse("cyclotomic order 0".into()));
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(|(n, d)| {
                let d = d.to_big()?;
                if d.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(BigRational::new(n.to_big()?, d))
            })
            .collect::<Result<Vec<_>>>()?;
        CycloNum::from_coeffs(j.order, &coeffs)
    }
}

/// Sparse element of a tensor power: `(flat index, coefficient)` pairs.
pub type TermsJson = Vec<(u64, CycloJson)>;

fn terms_json(x: &AlgElement) -> TermsJson {
    x.terms().iter().map(|(k, c)| (*k, c.into())).collect()
}

fn terms_from_json(alg: &Arc<FinAlgebra>, degree: u32, t: &TermsJson) -> Result<AlgElement> {
    let terms = t
        .iter()
        .map(|(k, c)| Ok((*k, CycloNum::try_from(c)?)))
        .collect::<Result<Vec<_>>>()?;
    AlgElement::from_terms(alg, degree, terms)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPartJson {
    pub orders: Vec<u32>,
    pub elements: Vec<usize>,
    pub char_exponents: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: String,
    #[serde(default)]
    pub parameters: serde_json::Value,
}

/// A quasi-Hopf algebra written out in full.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub format_version: u32,
    pub name: String,
    pub dim: usize,
    pub scalar_order: u32,
    pub basis_labels: Vec<String>,
    pub unit: TermsJson,
    /// `[i, j, k, c]`: `e_i e_j` has coefficient `c` on `e_k`.
    pub struct_consts: Vec<(usize, usize, usize, CycloJson)>,
    /// `delta[i]` is `Δ(e_i)` over flat indices of `H⊗H`.
    pub delta: Vec<TermsJson>,
    pub counit: Vec<CycloJson>,
    pub antipode: Vec<TermsJson>,
    pub alpha: TermsJson,
    pub beta: TermsJson,
    pub phi: TermsJson,
    pub phi_inv: TermsJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_part: Option<GroupPartJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<Vec<u32>>,
    pub provenance: Provenance,
}

/// What an [`AlgebraFile`] parses into.
#[derive(Debug, Clone)]
pub struct LoadedAlgebra {
    pub hopf: QuasiHopf,
    pub degree: Option<Vec<u32>>,
    pub provenance: Provenance,
}

impl LoadedAlgebra {
    pub fn graded(&self) -> Result<GradedQuasiHopf> {
        let degree = self
            .degree
            .clone()
            .ok_or_else(|| Error::InvalidParams("file carries no degree vector".into()))?;
        GradedQuasiHopf::new(self.hopf.clone(), degree)
    }
}

impl AlgebraFile {
    pub fn from_quasi_hopf(h: &QuasiHopf, degree: Option<&[u32]>, provenance: Provenance) -> Result<Self> {
        let alg = h.algebra();
        let dim = alg.dim();
        let per_basis = |m: &LinMap| -> Result<Vec<AlgElement>> { (0..dim).map(|i| m.image_of_basis(i)).collect() };
        let delta = per_basis(h.delta())?.iter().map(terms_json).collect();
        let counit = per_basis(h.counit())?.iter().map(|c| (&c.scalar_value()).into()).collect();
        let antipode = per_basis(h.antipode())?.iter().map(terms_json).collect();
        let group_part = h.group_part().map(|gp| GroupPartJson {
            orders: gp.group().orders().to_vec(),
            elements: gp.elements().to_vec(),
            char_exponents: gp.char_exponents().to_vec(),
        });
        Ok(AlgebraFile {
            format_version: FORMAT_VERSION,
            name: h.name().to_string(),
            dim,
            scalar_order: alg.scalar_order(),
            basis_labels: alg.labels().to_vec(),
            unit: alg.unit_terms().iter().map(|(k, c)| (*k as u64, c.into())).collect(),
            struct_consts: alg
                .structure_constants()
                .iter()
                .map(|(i, j, k, c)| (*i, *j, *k, c.into()))
                .collect(),
            delta,
            counit,
            antipode,
            alpha: terms_json(h.alpha()),
            beta: terms_json(h.beta()),
            phi: terms_json(h.phi()),
            phi_inv: terms_json(h.phi_inv()),
            group_part,
            degree: degree.map(<[u32]>::to_vec),
            provenance,
        })
    }

    pub fn from_graded(g: &GradedQuasiHopf, provenance: Provenance) -> Result<Self> {
        Self::from_quasi_hopf(g.base(), Some(g.degrees()), provenance)
    }

    pub fn load(&self) -> Result<LoadedAlgebra> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported format_version {}", self.format_version)));
        }
        let dim = self.dim;
        let n = self.scalar_order;
        if self.basis_labels.len() != dim {
            return Err(Error::Parse("basis_labels length differs from dim".into()));
        }
        let cyclo = |c: &CycloJson| -> Result<CycloNum> {
            let v = CycloNum::try_from(c)?;
            if v.order() != n {
                return Err(Error::OrderMismatch(v.order(), n));
            }
            Ok(v)
        };
        let mut table = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in &self.struct_consts {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::Parse(format!("structure constant [{i}, {j}, {k}] out of range")));
            }
            table[i * dim + j].push((*k, cyclo(c)?));
        }
        let unit = self
            .unit
            .iter()
            .map(|(k, c)| {
                if *k as usize >= dim {
                    return Err(Error::Parse("unit index out of range".into()));
                }
                Ok((*k as usize, cyclo(c)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let alg = Arc::new(FinAlgebra::from_table(
            self.name.clone(),
            n,
            self.basis_labels.clone(),
            unit,
            table,
            None,
        )?);
        let shape = |v: usize, what: &str| -> Result<()> {
            if v == dim {
                Ok(())
            } else {
                Err(Error::Parse(format!("{what} has {v} entries, expected {dim}")))
            }
        };
        shape(self.delta.len(), "delta")?;
        shape(self.counit.len(), "counit")?;
        shape(self.antipode.len(), "antipode")?;
        let images = |rows: &[TermsJson], degree: u32| -> Result<Vec<AlgElement>> {
            rows.iter().map(|t| terms_from_json(&alg, degree, t)).collect()
        };
        let delta = LinMap::from_images(&alg, &alg, 2, images(&self.delta, 2)?)?;
        let counit_images = self
            .counit
            .iter()
            .map(|c| Ok(AlgElement::scalar(&alg, cyclo(c)?)))
            .collect::<Result<Vec<_>>>()?;
        let counit = LinMap::from_images(&alg, &alg, 0, counit_images)?;
        let antipode = LinMap::from_images(&alg, &alg, 1, images(&self.antipode, 1)?)?;
        let group_part = self
            .group_part
            .as_ref()
            .map(|g| GroupPart::new(&alg, AbelianGroup::new(g.orders.clone())?, g.elements.clone(), g.char_exponents.clone()))
            .transpose()?;
        let hopf = QuasiHopf::new(
            self.name.clone(),
            &alg,
            QuasiHopfParts {
                delta,
                counit,
                antipode,
                alpha: terms_from_json(&alg, 1, &self.alpha)?,
                beta: terms_from_json(&alg, 1, &self.beta)?,
                phi: terms_from_json(&alg, 3, &self.phi)?,
                phi_inv: terms_from_json(&alg, 3, &self.phi_inv)?,
                group_part,
            },
        )?;
        if let Some(d) = &self.degree {
            shape(d.len(), "degree")?;
        }
        Ok(LoadedAlgebra {
            hopf,
            degree: self.degree.clone(),
            provenance: self.provenance.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra files always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub timing_ms: f64,
}

/// Per-check results with an overall status.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool_version: String,
    pub subject: String,
    pub status: Status,
    pub checks: Vec<CheckEntry>,
}

impl ReportFile {
    pub fn new(subject: impl Into<String>, checks: Vec<CheckEntry>) -> Self {
        let status = if checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if checks.iter().any(|c| c.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::Pass
        };
        ReportFile {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            subject: subject.into(),
            status,
            checks,
        }
    }

    pub fn from_verify(subject: impl Into<String>, r: &VerifyReport) -> Self {
        let checks = r
            .entries
            .iter()
            .map(|e| CheckEntry {
                name: e.axiom.clone(),
                status: e.status,
                witness: e.witness.clone(),
                timing_ms: e.timing_ms,
            })
            .collect();
        Self::new(subject, checks)
    }

    /// The report with all timings zeroed, for comparing runs.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.timing_ms = 0.0;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_aq, build_hps, AqParams, HpsParams};
    use serde_json::json;

    fn provenance(family: &str) -> Provenance {
        Provenance {
            family: family.into(),
            parameters: json!({}),
        }
    }

    #[test]
    fn cyclo_json_shape() {
        let z = CycloNum::root_of_unity(3, 1);
        let j = serde_json::to_value(CycloJson::from(&z)).unwrap();
        assert_eq!(j, json!({"order": 3, "coeffs": [[0, 1], [1, 1]]}));
        let half = CycloNum::from_ratio(1, 1, 2);
        let back = CycloNum::try_from(&CycloJson::from(&half)).unwrap();
        assert_eq!(back, half);
    }

    #[test]
    fn big_integers_survive() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let c = CycloNum::from_rational(5, &BigRational::new(big, BigInt::from(7)));
        let s = serde_json::to_string(&CycloJson::from(&c)).unwrap();
        let back: CycloJson = serde_json::from_str(&s).unwrap();
        assert_eq!(CycloNum::try_from(&back).unwrap(), c);
    }

    #[test]
    fn hps_round_trip_verifies() {
        let h = build_hps(HpsParams::new(3, 1).unwrap()).unwrap();
        let f = AlgebraFile::from_quasi_hopf(&h, None, provenance("hps")).unwrap();
        let parsed = AlgebraFile::from_json(&f.to_json()).unwrap();
        assert_eq!(parsed, f);
        let loaded = parsed.load().unwrap();
        assert!(loaded.hopf.verify_all().all_pass());
        let again = AlgebraFile::from_quasi_hopf(&loaded.hopf, None, provenance("hps")).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn aq_round_trip_keeps_grading() {
        let a = build_aq(AqParams::new(3, 2).unwrap()).unwrap();
        let f = AlgebraFile::from_graded(&a, provenance("aq")).unwrap();
        let loaded = AlgebraFile::from_json(&f.to_json()).unwrap().load().unwrap();
        let g = loaded.graded().unwrap();
        assert_eq!(g.piece_dims(), vec![3; 9]);
        assert_eq!(AlgebraFile::from_graded(&g, provenance("aq")).unwrap(), f);
    }

    #[test]
    fn malformed_files_are_parse_errors() {
        assert!(matches!(AlgebraFile::from_json("{"), Err(Error::Parse(_))));
        let h = build_hps(HpsParams::new(3, 1).unwrap()).unwrap();
        let mut f = AlgebraFile::from_quasi_hopf(&h, None, provenance("hps")).unwrap();
        f.format_version = 99;
        assert!(f.load().is_err());
    }

    #[test]
    fn report_status_aggregates() {
        let e = |s| CheckEntry {
            name: "x".into(),
            status: s,
            witness: None,
            timing_ms: 1.5,
        };
        assert_eq!(ReportFile::new("t", vec![e(Status::Pass)]).status, Status::Pass);
        assert_eq!(ReportFile::new("t", vec![e(Status::Pass), e(Status::Skipped)]).status, Status::Skipped);
        assert_eq!(ReportFile::new("t", vec![e(Status::Skipped), e(Status::Fail)]).status, Status::Fail);
        let r = ReportFile::new("t", vec![e(Status::Pass)]);
        let back: ReportFile = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.without_timings().checks[0].timing_ms, 0.0);
    }
}
