//! Finite abelian groups `Z_{d_1} × … × Z_{d_k}` with elements indexed in
//! mixed radix (first coordinate most significant).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.iter().any(|&d| d == 0) {
            return Err(Error::InvalidParams("cyclic factor of order 0".into()));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn cyclic(d: u32) -> Self {
        Self::new(vec![d]).expect("positive order")
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> usize {
        self.orders.iter().map(|&d| d as usize).product()
    }

    /// Exponent tuple of element `idx`.
    pub fn element(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0; self.orders.len()];
        for (slot, &d) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (idx % d as usize) as u32;
            idx /= d as usize;
        }
        out
    }

    /// Index of the element with the given exponents, reduced modulo the orders.
    pub fn index_of(&self, exps: &[i64]) -> usize {
        exps.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&e, &d)| acc * d as usize + e.rem_euclid(d as i64) as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.element(a), self.element(b));
        let sum: Vec<i64> = x.iter().zip(&y).map(|(&u, &v)| u as i64 + v as i64).collect();
        self.index_of(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let x: Vec<i64> = self.element(a).iter().map(|&u| -(u as i64)).collect();
        self.index_of(&x)
    }

    pub fn scale(&self, a: usize, m: i64) -> usize {
        let x: Vec<i64> = self.element(a).iter().map(|&u| u as i64 * m).collect();
        self.index_of(&x)
    }

    /// Order of element `a`.
    pub fn element_order(&self, a: usize) -> u32 {
        let mut k = 1u32;
        let mut cur = a;
        while cur != 0 {
            cur = self.add(cur, a);
            k += 1;
        }
        k
    }

    /// Exponent of the group (lcm of the cyclic orders).
    pub fn exponent(&self) -> u32 {
        self.orders
            .iter()
            .fold(1u32, |acc, &d| num_integer::lcm(acc, d))
    }

    /// Addition table, `table[a * size + b] = a + b`.
    pub fn addition_table(&self) -> Vec<usize> {
        let n = self.size();
        let mut t = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                t.push(self.add(a, b));
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_round_trips() {
        let g = AbelianGroup::new(vec![3, 9, 2]).unwrap();
        for i in 0..g.size() {
            let e: Vec<i64> = g.element(i).iter().map(|&x| x as i64).collect();
            assert_eq!(g.index_of(&e), i);
        }
    }

    #[test]
    fn arithmetic() {
        let g = AbelianGroup::new(vec![3, 3]).unwrap();
        let a = g.index_of(&[1, 2]);
        let b = g.index_of(&[2, 2]);
        assert_eq!(g.element(g.add(a, b)), vec![0, 1]);
        assert_eq!(g.add(a, g.neg(a)), 0);
        assert_eq!(g.element_order(a), 3);
        assert_eq!(g.element_order(0), 1);
        assert_eq!(AbelianGroup::new(vec![9, 6]).unwrap().exponent(), 18);
    }
}
