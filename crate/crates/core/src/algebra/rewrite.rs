//! Algebras given by generators and straightening rules.
//!
//! Normal words are ordered monomials `x_1^{k_1} ⋯ x_r^{k_r}` with
//! `k_t < bound_t`. A product is brought to normal form by repeatedly
//! rewriting the first out-of-order pair `x_l x_t` (`l > t`) with its swap
//! rule and truncating powers `x_t^{bound_t}` to `1` or `0`.

use std::collections::HashMap;

use super::{monomial_label, FinAlgebra, MonomialData};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerRule {
    /// `x^bound = 1`
    Identity,
    /// `x^bound = 0`
    Zero,
}

#[derive(Debug, Clone)]
pub struct Generator {
    pub name: String,
    pub bound: u32,
    pub power_rule: PowerRule,
}

/// `x_left · x_right = Σ c · word` for `left > right` in generator order.
#[derive(Debug, Clone)]
pub struct SwapRule {
    pub left: usize,
    pub right: usize,
    pub rhs: Vec<(CycloNum, Vec<usize>)>,
}

#[derive(Debug, Clone)]
pub struct Presentation {
    pub name: String,
    pub scalar_order: u32,
    pub generators: Vec<Generator>,
    pub swaps: Vec<SwapRule>,
    /// Exponent vectors of the normal words, if not all ordered words below
    /// the bounds are independent.
    pub basis: Option<Vec<Vec<u32>>>,
    pub step_budget: usize,
}

impl Presentation {
    pub fn new(name: impl Into<String>, scalar_order: u32) -> Self {
        Presentation {
            name: name.into(),
            scalar_order,
            generators: Vec::new(),
            swaps: Vec::new(),
            basis: None,
            step_budget: 50_000_000,
        }
    }

    pub fn generator(mut self, name: impl Into<String>, bound: u32, power_rule: PowerRule) -> Self {
        self.generators.push(Generator {
            name: name.into(),
            bound,
            power_rule,
        });
        self
    }

    /// `x_left x_right = c · x_right x_left`.
    pub fn commute(self, left: usize, right: usize, c: CycloNum) -> Self {
        self.swap(left, right, vec![(c, vec![right, left])])
    }

    pub fn swap(mut self, left: usize, right: usize, rhs: Vec<(CycloNum, Vec<usize>)>) -> Self {
        self.swaps.push(SwapRule { left, right, rhs });
        self
    }
}

struct Rewriter<'a> {
    pres: &'a Presentation,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    rules: HashMap<(usize, usize), &'a SwapRule>,
    memo: HashMap<(usize, usize), Option<Vec<(usize, CycloNum)>>>,
    steps: usize,
}

impl Rewriter<'_> {
    fn lookup(&self, exps: &[u32]) -> Result<usize> {
        self.index.get(exps).copied().ok_or_else(|| {
            let names: Vec<String> = self.pres.generators.iter().map(|g| g.name.clone()).collect();
            Error::BadPresentation(format!(
                "normal word {} is not in the declared basis",
                monomial_label(&names, exps)
            ))
        })
    }

    /// `e_b · x_t` in normal form.
    fn mul_gen(&mut self, b: usize, t: usize) -> Result<Vec<(usize, CycloNum)>> {
        match self.memo.get(&(b, t)) {
            Some(Some(v)) => return Ok(v.clone()),
            Some(None) => {
                return Err(Error::BadPresentation(format!(
                    "rewriting cycles on {} · {}",
                    b, self.pres.generators[t].name
                )))
            }
            None => {}
        }
        self.steps += 1;
        if self.steps > self.pres.step_budget {
            return Err(Error::RewriteBudget(self.pres.step_budget));
        }
        self.memo.insert((b, t), None);
        let result = self.mul_gen_uncached(b, t)?;
        self.memo.insert((b, t), Some(result.clone()));
        Ok(result)
    }

    fn mul_gen_uncached(&mut self, b: usize, t: usize) -> Result<Vec<(usize, CycloNum)>> {
        let n = self.pres.scalar_order;
        let exps = self.basis[b].clone();
        let last = exps.iter().rposition(|&e| e > 0);
        match last {
            Some(l) if l > t => {
                let rule = *self.rules.get(&(l, t)).ok_or_else(|| {
                    Error::BadPresentation(format!(
                        "no rule to reorder {} {}",
                        self.pres.generators[l].name, self.pres.generators[t].name
                    ))
                })?;
                let mut prefix = exps;
                prefix[l] -= 1;
                let start = self.lookup(&prefix)?;
                let mut acc: HashMap<usize, CycloNum> = HashMap::new();
                for (c, word) in &rule.rhs {
                    let mut cur = vec![(start, c.clone())];
                    for &letter in word {
                        let mut next: HashMap<usize, CycloNum> = HashMap::new();
                        for (k, ck) in &cur {
                            for (r, cr) in self.mul_gen(*k, letter)? {
                                add_into(&mut next, r, ck * &cr);
                            }
                        }
                        cur = next.into_iter().collect();
                    }
                    for (k, ck) in cur {
                        add_into(&mut acc, k, ck);
                    }
                }
                let mut out: Vec<(usize, CycloNum)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                out.sort_by_key(|(k, _)| *k);
                Ok(out)
            }
            _ => {
                let gen = &self.pres.generators[t];
                let mut next = exps;
                next[t] += 1;
                if next[t] >= gen.bound {
                    match gen.power_rule {
                        PowerRule::Zero => return Ok(Vec::new()),
                        PowerRule::Identity => next[t] = 0,
                    }
                }
                Ok(vec![(self.lookup(&next)?, CycloNum::one(n))])
            }
        }
    }
}

fn add_into(acc: &mut HashMap<usize, CycloNum>, k: usize, c: CycloNum) {
    match acc.get_mut(&k) {
        Some(v) => *v += &c,
        None => {
            acc.insert(k, c);
        }
    }
}

fn all_ordered_words(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        let mut next = Vec::with_capacity(out.len() * b as usize);
        for w in &out {
            for e in 0..b {
                let mut v = w.clone();
                v.push(e);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// The quotient algebra with basis the normal words of `pres`.
pub fn normal_form_quotient(pres: &Presentation) -> Result<FinAlgebra> {
    let r = pres.generators.len();
    if pres.generators.iter().any(|g| g.bound == 0) {
        return Err(Error::BadPresentation("generator with bound 0".into()));
    }
    let mut rules = HashMap::new();
    for s in &pres.swaps {
        if s.left >= r || s.right >= r || s.left <= s.right {
            return Err(Error::BadPresentation(format!(
                "swap rule ({}, {}) must rewrite a descending pair",
                s.left, s.right
            )));
        }
        for (c, w) in &s.rhs {
            if c.order() != pres.scalar_order {
                return Err(Error::OrderMismatch(c.order(), pres.scalar_order));
            }
            if w.iter().any(|&t| t >= r) {
                return Err(Error::BadPresentation("unknown letter in a rule".into()));
            }
        }
        rules.insert((s.left, s.right), s);
    }
    let bounds: Vec<u32> = pres.generators.iter().map(|g| g.bound).collect();
    let mut basis = match &pres.basis {
        Some(b) => b.clone(),
        None => all_ordered_words(&bounds),
    };
    for w in &basis {
        if w.len() != r || w.iter().zip(&bounds).any(|(e, b)| e >= b) {
            return Err(Error::BadPresentation("declared basis word out of bounds".into()));
        }
    }
    basis.sort_by_key(|w| w.iter().sum::<u32>());
    let unit_word = vec![0u32; r];
    if basis.first() != Some(&unit_word) {
        return Err(Error::BadPresentation("the empty word must be a basis element".into()));
    }
    let index: HashMap<Vec<u32>, usize> = basis.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    if index.len() != basis.len() {
        return Err(Error::BadPresentation("repeated basis word".into()));
    }
    let dim = basis.len();
    let mut rw = Rewriter {
        pres,
        basis: basis.clone(),
        index,
        rules,
        memo: HashMap::new(),
        steps: 0,
    };
    // e_b = e_{prefix(b)} · x_{last(b)}; basis is sorted by length so prefixes come first.
    let mut split = Vec::with_capacity(dim);
    for w in &basis {
        match w.iter().rposition(|&e| e > 0) {
            None => split.push(None),
            Some(l) => {
                let mut prefix = w.clone();
                prefix[l] -= 1;
                split.push(Some((rw.lookup(&prefix)?, l)));
            }
        }
    }
    let n = pres.scalar_order;
    let mut table: Vec<Vec<(usize, CycloNum)>> = vec![Vec::new(); dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            let row = match split[b] {
                None => vec![(a, CycloNum::one(n))],
                Some((prefix, letter)) => {
                    let prev = table[a * dim + prefix].clone();
                    let mut acc: HashMap<usize, CycloNum> = HashMap::new();
                    for (k, c) in prev {
                        for (r2, c2) in rw.mul_gen(k, letter)? {
                            add_into(&mut acc, r2, &c * &c2);
                        }
                    }
                    let mut v: Vec<(usize, CycloNum)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    v.sort_by_key(|(k, _)| *k);
                    v
                }
            };
            table[a * dim + b] = row;
        }
    }
    let names: Vec<String> = pres.generators.iter().map(|g| g.name.clone()).collect();
    let labels = basis.iter().map(|w| monomial_label(&names, w)).collect();
    FinAlgebra::from_table(
        pres.name.clone(),
        n,
        labels,
        vec![(0, CycloNum::one(n))],
        table,
        Some(MonomialData {
            generators: names,
            exponents: basis,
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_associativity, AlgElement, CheckOutcome};
    use std::sync::Arc;

    #[test]
    fn cyclic_group_presentation() {
        let pres = Presentation::new("C[Z_9]", 9).generator("g", 9, PowerRule::Identity);
        let alg = Arc::new(normal_form_quotient(&pres).unwrap());
        assert_eq!(alg.dim(), 9);
        let g = AlgElement::basis(&alg, alg.basis_index("g").unwrap());
        assert_eq!(g.pow(9).unwrap(), AlgElement::unit(&alg, 1));
        assert_eq!(check_associativity(&alg).unwrap(), CheckOutcome::Pass);
    }

    #[test]
    fn quantum_plane_truncation() {
        // e g = q^{-1} g e, g^9 = 1, e^9 = 0
        let q = CycloNum::root_of_unity(9, 1);
        let pres = Presentation::new("b", 9)
            .generator("g", 9, PowerRule::Identity)
            .generator("e", 9, PowerRule::Zero)
            .commute(1, 0, q.inv().unwrap());
        let alg = Arc::new(normal_form_quotient(&pres).unwrap());
        assert_eq!(alg.dim(), 81);
        let g = AlgElement::basis(&alg, alg.basis_index("g").unwrap());
        let e = AlgElement::basis(&alg, alg.basis_index("e").unwrap());
        assert_eq!(g.mul(&e).unwrap(), e.mul(&g).unwrap().scale(&q));
        assert!(e.pow(9).unwrap().is_zero());
        assert!(!e.pow(8).unwrap().is_zero());
        assert_eq!(check_associativity(&alg).unwrap(), CheckOutcome::Pass);
    }

    #[test]
    fn missing_rule_is_reported() {
        let pres = Presentation::new("free", 3)
            .generator("x", 2, PowerRule::Zero)
            .generator("y", 2, PowerRule::Zero);
        assert!(matches!(normal_form_quotient(&pres), Err(Error::BadPresentation(_))));
    }

    #[test]
    fn looping_rules_hit_the_budget_or_cycle() {
        // y x -> y x is a rewrite that never terminates.
        let one = CycloNum::one(3);
        let mut pres = Presentation::new("loop", 3)
            .generator("x", 3, PowerRule::Zero)
            .generator("y", 3, PowerRule::Zero)
            .swap(1, 0, vec![(one, vec![1, 0])]);
        pres.step_budget = 1000;
        let err = normal_form_quotient(&pres).unwrap_err();
        assert!(matches!(err, Error::BadPresentation(_) | Error::RewriteBudget(_)));
    }

    #[test]
    fn undeclared_normal_word_is_rejected() {
        let pres = Presentation {
            basis: Some(vec![vec![0], vec![1]]),
            ..Presentation::new("trunc", 3).generator("x", 3, PowerRule::Zero)
        };
        assert!(matches!(normal_form_quotient(&pres), Err(Error::BadPresentation(_))));
    }
}
