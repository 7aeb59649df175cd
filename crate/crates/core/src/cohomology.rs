//! Root-of-unity valued 3-cocycles on finite abelian groups.
//!
//! Values are stored as exponents of `ζ_L`. A diagonal associator
//! `Σ ω(x,y,z) 1_x⊗1_y⊗1_z` satisfies the pentagon iff
//! `ω(y,z,w) ω(x,y+z,w) ω(x,y,z) = ω(x,y,z+w) ω(x+y,z,w)`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::size_limit;
use crate::error::{Error, Result};
use crate::families::{build_hps, classify_hps, HpsParams, QrClass, SkewPrimitiveDatum};
use crate::group::AbelianGroup;
use crate::qhopf::{GradedQuasiHopf, QuasiHopf};

/// A function `G³ → Z_L`, read as `ζ_L`-exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CocycleFile", try_from = "CocycleFile")]
pub struct Cocycle3 {
    group: AbelianGroup,
    value_order: u32,
    table: Vec<u32>,
}

/// Sparse JSON form: `{orders, value_order, table: [[g,h,k,exp], …]}` with
/// group elements as flat indices and zero exponents omitted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CocycleFile {
    pub orders: Vec<u32>,
    pub value_order: u32,
    pub table: Vec<[u64; 4]>,
}

impl From<Cocycle3> for CocycleFile {
    fn from(c: Cocycle3) -> Self {
        let n = c.group.size();
        let table = c
            .table
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(idx, &e)| [(idx / (n * n)) as u64, ((idx / n) % n) as u64, (idx % n) as u64, e as u64])
            .collect();
        CocycleFile {
            orders: c.group.orders().to_vec(),
            value_order: c.value_order,
            table,
        }
    }
}

impl TryFrom<CocycleFile> for Cocycle3 {
    type Error = Error;

    fn try_from(f: CocycleFile) -> Result<Self> {
        let group = AbelianGroup::new(f.orders)?;
        if f.value_order == 0 {
            return Err(Error::Parse("value_order must be positive".into()));
        }
        let n = group.size();
        let mut table = vec![0u32; checked_cube(n)?];
        for [g, h, k, e] in f.table {
            let (g, h, k) = (g as usize, h as usize, k as usize);
            if g >= n || h >= n || k >= n {
                return Err(Error::Parse(format!("group element out of range in [{g},{h},{k}]")));
            }
            table[(g * n + h) * n + k] = (e % f.value_order as u64) as u32;
        }
        Ok(Cocycle3 {
            group,
            value_order: f.value_order,
            table,
        })
    }
}

fn checked_cube(n: usize) -> Result<usize> {
    let total = n
        .checked_pow(3)
        .ok_or_else(|| Error::SizeLimit("|G|³ overflows".into()))?;
    if total as u64 > size_limit() {
        return Err(Error::SizeLimit(format!("cochain table of {total} entries")));
    }
    Ok(total)
}

impl Cocycle3 {
    pub fn from_fn(group: AbelianGroup, value_order: u32, f: impl Fn(usize, usize, usize) -> i64) -> Result<Self> {
        if value_order == 0 {
            return Err(Error::InvalidParams("value order must be positive".into()));
        }
        let n = group.size();
        let total = checked_cube(n)?;
        let table = (0..total)
            .map(|idx| f(idx / (n * n), (idx / n) % n, idx % n).rem_euclid(value_order as i64) as u32)
            .collect();
        Ok(Cocycle3 {
            group,
            value_order,
            table,
        })
    }

    pub fn trivial(group: AbelianGroup) -> Result<Self> {
        Self::from_fn(group, 1, |_, _, _| 0)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn value_order(&self) -> u32 {
        self.value_order
    }

    pub fn value(&self, g: usize, h: usize, k: usize) -> u32 {
        let n = self.group.size();
        self.table[(g * n + h) * n + k]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn is_constant_one(&self) -> bool {
        self.table.iter().all(|&e| e == 0)
    }

    /// The same values as exponents of `ζ_M`, for `L | M`.
    pub fn rescale(&self, target: u32) -> Result<Self> {
        if target == 0 || target % self.value_order != 0 {
            return Err(Error::NotDivisible {
                from: self.value_order,
                to: target,
            });
        }
        let k = target / self.value_order;
        Ok(Cocycle3 {
            group: self.group.clone(),
            value_order: target,
            table: self.table.iter().map(|&e| e * k).collect(),
        })
    }

    /// The smallest `L'` with all values in `μ_{L'}`.
    pub fn reduced(&self) -> Self {
        let g = self
            .table
            .iter()
            .fold(self.value_order, |acc, &e| acc.gcd(&e));
        let k = g.max(1);
        Cocycle3 {
            group: self.group.clone(),
            value_order: self.value_order / k,
            table: self.table.iter().map(|&e| e / k).collect(),
        }
    }

    /// Pointwise `ω · ω'^{-1}`, over the lcm of the value orders.
    pub fn ratio(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::InvalidParams("cocycles on different groups".into()));
        }
        let l = self.value_order.lcm(&other.value_order);
        let (a, b) = (self.rescale(l)?, other.rescale(l)?);
        let table = a
            .table
            .iter()
            .zip(&b.table)
            .map(|(&x, &y)| (x + l - y) % l)
            .collect();
        Ok(Cocycle3 {
            group: self.group.clone(),
            value_order: l,
            table,
        })
    }

    /// Equality of the underlying functions `G³ → C^*`.
    pub fn same_values(&self, other: &Self) -> bool {
        self.ratio(other).map(|r| r.is_constant_one()).unwrap_or(false)
    }
}

/// A function `G² → Z_M`, read as `ζ_M`-exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cochain2 {
    pub orders: Vec<u32>,
    pub value_order: u32,
    /// `table[g·|G| + h]`
    pub table: Vec<u32>,
}

impl Cochain2 {
    /// `(dμ)(g,h,k) = μ(h,k) − μ(g+h,k) + μ(g,h+k) − μ(g,h)`.
    pub fn coboundary(&self) -> Result<Cocycle3> {
        let group = AbelianGroup::new(self.orders.clone())?;
        let n = group.size();
        if self.table.len() != n * n {
            return Err(Error::InvalidParams("2-cochain table size".into()));
        }
        let add = group.addition_table();
        let mu = |g: usize, h: usize| self.table[g * n + h] as i64;
        Cocycle3::from_fn(group, self.value_order, |g, h, k| {
            mu(h, k) - mu(add[g * n + h], k) + mu(g, add[h * n + k]) - mu(g, h)
        })
    }
}

/// Reads a diagonal associator as a cocycle on the character group.
pub fn cocycle_from_phi(h: &QuasiHopf) -> Result<Cocycle3> {
    let gp = h
        .group_part()
        .ok_or_else(|| Error::NotDiagonal("no group part to read the associator against".into()))?;
    let coeffs = gp.diagonal_coefficients(h.phi())?;
    let n = h.algebra().scalar_order();
    let exps = coeffs
        .iter()
        .map(|c| {
            c.root_exponent()
                .ok_or_else(|| Error::NotDiagonal(format!("coefficient {c} is not a power of ζ_{n}")))
        })
        .collect::<Result<Vec<u32>>>()?;
    let full = Cocycle3 {
        group: gp.group().clone(),
        value_order: n,
        table: exps,
    };
    Ok(full.reduced())
}

/// Exhaustive check of the cocycle identity over `G⁴`.
pub fn check_cocycle(w: &Cocycle3) -> Result<crate::algebra::CheckOutcome> {
    let n = w.group.size();
    let total = (n as u64).pow(4);
    if total > size_limit() {
        return Err(Error::SizeLimit(format!("cocycle identity over {total} tuples")));
    }
    let add = w.group.addition_table();
    let l = w.value_order as i64;
    let fail = crate::par::find_first(n * n * n * n, |idx| {
        let (x, y, z, t) = (idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n);
        let v = |a, b, c| w.value(a, b, c) as i64;
        let lhs = v(y, z, t) + v(x, add[y * n + z], t) + v(x, y, z);
        let rhs = v(x, y, add[z * n + t]) + v(add[x * n + y], z, t);
        ((lhs - rhs).rem_euclid(l) != 0).then(|| format!("(g,h,k,l) = ({x},{y},{z},{t})"))
    });
    Ok(match fail {
        Some(witness) => crate::algebra::CheckOutcome::Fail(witness),
        None => crate::algebra::CheckOutcome::Pass,
    })
}

/// Outcome of the coboundary decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Triviality {
    /// `ω = dμ` for the given `μ`.
    Trivial { witness: Cochain2 },
    /// After diagonalizing the system over `Z_M`, the equation
    /// `pivot · y ≡ rhs (mod M)` has no solution.
    NonTrivial { modulus: u32, pivot: u32, rhs: u32 },
}

impl Triviality {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Triviality::Trivial { .. })
    }
}

/// Decides whether `ω = dμ` for a 2-cochain `μ` with values in `μ_M`,
/// `M = |G|·L`, by diagonalizing the linear system over `Z_M`.
pub fn is_coboundary(w: &Cocycle3) -> Result<Triviality> {
    let n = w.group.size();
    let rows = n * n * n;
    let cols = n * n;
    let work = (rows as u64) * (cols as u64) * (cols as u64);
    if work > size_limit().saturating_mul(100) {
        return Err(Error::SizeLimit(format!("coboundary system of {rows}×{cols}")));
    }
    let m = (n as u64)
        .checked_mul(w.value_order as u64)
        .filter(|&m| m < (1 << 31))
        .ok_or_else(|| Error::SizeLimit("coboundary modulus".into()))? as i64;
    let scale = m / w.value_order as i64;
    let add = w.group.addition_table();
    let mut a = vec![vec![0i64; cols]; rows];
    let mut b = vec![0i64; rows];
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                let r = (g * n + h) * n + k;
                let row = &mut a[r];
                row[h * n + k] += 1;
                row[add[g * n + h] * n + k] -= 1;
                row[g * n + add[h * n + k]] += 1;
                row[g * n + h] -= 1;
                for c in row.iter_mut() {
                    *c = c.rem_euclid(m);
                }
                b[r] = (w.value(g, h, k) as i64 * scale).rem_euclid(m);
            }
        }
    }
    let solved = solve_mod(a, b, m)?;
    let result = match solved {
        Ok(x) => {
            let witness = Cochain2 {
                orders: w.group.orders().to_vec(),
                value_order: m as u32,
                table: x.into_iter().map(|v| v as u32).collect(),
            };
            debug_assert!(witness.coboundary()?.same_values(w));
            Triviality::Trivial { witness }
        }
        Err((pivot, rhs)) => Triviality::NonTrivial {
            modulus: m as u32,
            pivot: pivot as u32,
            rhs: rhs as u32,
        },
    };
    Ok(result)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

/// Scales row `t` by a unit so that its pivot becomes `gcd(pivot, m)`;
/// then membership in the pivot's ideal is integer divisibility.
fn normalize_pivot(row: &mut [i64], rhs: &mut i64, t: usize, m: i64) {
    let p = row[t];
    let g = p.gcd(&m);
    if p == g {
        return;
    }
    let step = m / g;
    let unit = (0..g)
        .map(|k| (p / g + k * step).rem_euclid(m))
        .find(|u| u.gcd(&m) == 1)
        .expect("an associate unit exists");
    let inv = inv_mod(unit, m).expect("unit");
    for c in row.iter_mut() {
        *c = (*c * inv).rem_euclid(m);
    }
    *rhs = (*rhs * inv).rem_euclid(m);
}

/// Solves `A x ≡ b (mod m)`. On failure returns the inconsistent diagonal
/// equation `(pivot, rhs)`.
#[allow(clippy::type_complexity)]
fn solve_mod(mut a: Vec<Vec<i64>>, mut b: Vec<i64>, m: i64) -> Result<std::result::Result<Vec<i64>, (i64, i64)>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    // v[j] is column j of the accumulated column transform.
    let mut v: Vec<Vec<i64>> = (0..cols)
        .map(|j| {
            let mut c = vec![0i64; cols];
            c[j] = 1;
            c
        })
        .collect();
    let mut rank = 0;
    while rank < rows && rank < cols {
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(rank) {
            for (j, &x) in row.iter().enumerate().skip(rank) {
                if x != 0 {
                    let g = x.gcd(&m);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                    }
                }
            }
            if best.is_some_and(|(g, _, _)| g == 1) {
                break;
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let t = rank;
        a.swap(t, pi);
        b.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            v.swap(t, pj);
        }
        loop {
            normalize_pivot(&mut a[t], &mut b[t], t, m);
            let mut dirty = false;
            for i in (t + 1)..rows {
                let x = a[i][t];
                if x == 0 {
                    continue;
                }
                let p = a[t][t];
                if x % p == 0 {
                    let f = x / p;
                    let (rt, bt) = (a[t].clone(), b[t]);
                    for (c, r) in a[i].iter_mut().zip(&rt) {
                        *c = (*c - f * r).rem_euclid(m);
                    }
                    b[i] = (b[i] - f * bt).rem_euclid(m);
                    continue;
                }
                let (g, s, u) = ext_gcd(p, x);
                let (pg, xg) = (p / g, x / g);
                // [[s, u], [-x/g, p/g]] has determinant 1.
                let (rt, ri) = (a[t].clone(), a[i].clone());
                for j in 0..cols {
                    a[t][j] = (s * rt[j] + u * ri[j]).rem_euclid(m);
                    a[i][j] = (-xg * rt[j] + pg * ri[j]).rem_euclid(m);
                }
                let (bt, bi) = (b[t], b[i]);
                b[t] = (s * bt + u * bi).rem_euclid(m);
                b[i] = (-xg * bt + pg * bi).rem_euclid(m);
            }
            for j in (t + 1)..cols {
                let x = a[t][j];
                if x == 0 {
                    continue;
                }
                let p = a[t][t];
                if x % p == 0 {
                    let f = x / p;
                    for row in a.iter_mut() {
                        row[j] = (row[j] - f * row[t]).rem_euclid(m);
                    }
                    let vt = v[t].clone();
                    for (c, r) in v[j].iter_mut().zip(&vt) {
                        *c = (*c - f * r).rem_euclid(m);
                    }
                    continue;
                }
                let (g, s, u) = ext_gcd(p, x);
                let (pg, xg) = (p / g, x / g);
                for row in a.iter_mut() {
                    let (ct, cj) = (row[t], row[j]);
                    row[t] = (s * ct + u * cj).rem_euclid(m);
                    row[j] = (-xg * ct + pg * cj).rem_euclid(m);
                }
                let (vt, vj) = (v[t].clone(), v[j].clone());
                for k in 0..cols {
                    v[t][k] = (s * vt[k] + u * vj[k]).rem_euclid(m);
                    v[j][k] = (-xg * vt[k] + pg * vj[k]).rem_euclid(m);
                }
                if (t + 1..rows).any(|i| a[i][t] != 0) {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        if a[t][t] == 0 {
            // The pivot vanished mod m; the column is now zero.
            break;
        }
        rank += 1;
    }
    let mut y = vec![0i64; cols];
    for t in 0..rank {
        let d = a[t][t];
        let g = d.gcd(&m);
        if b[t] % g != 0 {
            return Ok(Err((d, b[t])));
        }
        let mg = m / g;
        let inv = if mg == 1 { 0 } else { inv_mod(d / g, mg).expect("coprime after dividing by the gcd") };
        y[t] = ((b[t] / g) % mg * inv).rem_euclid(mg);
    }
    for &bt in b.iter().skip(rank) {
        if bt != 0 {
            return Ok(Err((0, bt)));
        }
    }
    let mut x = vec![0i64; cols];
    for (t, &yt) in y.iter().enumerate() {
        if yt == 0 {
            continue;
        }
        for (k, xk) in x.iter_mut().enumerate() {
            *xk = (*xk + v[t][k] * yt).rem_euclid(m);
        }
    }
    Ok(Ok(x))
}

/// Pullback along `Z_d → G`, `k ↦ k·generator`.
pub fn restrict_to_cyclic(w: &Cocycle3, generator: usize) -> Result<Cocycle3> {
    if generator >= w.group.size() {
        return Err(Error::InvalidParams("generator outside the group".into()));
    }
    let d = w.group.element_order(generator);
    let image: Vec<usize> = (0..d as i64).map(|k| w.group.scale(generator, k)).collect();
    Cocycle3::from_fn(AbelianGroup::cyclic(d), w.value_order, |g, h, k| {
        w.value(image[g], image[h], image[k]) as i64
    })
    .map(|c| c.reduced())
}

/// Pullback along `x ↦ m·x` on a cyclic group.
pub fn automorphism_pullback(w: &Cocycle3, m: i64) -> Result<Cocycle3> {
    if w.group.rank() != 1 {
        return Err(Error::InvalidParams("automorphism pullback needs a cyclic group".into()));
    }
    let p = w.group.size() as i64;
    if m.gcd(&p) != 1 {
        return Err(Error::InvalidParams(format!("{m} is not a unit mod {p}")));
    }
    Cocycle3::from_fn(w.group.clone(), w.value_order, |g, h, k| {
        let s = |x: usize| w.group.scale(x, m);
        w.value(s(g), s(h), s(k)) as i64
    })
}

/// One axis examined for [`not_twist_equivalent_certificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisCertificate {
    pub axis: usize,
    pub exponent: i64,
    pub restricted: Cocycle3,
    pub triviality: Triviality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub axes: Vec<AxisCertificate>,
    /// Some axis restriction is a non-trivial cocycle, so the associator is
    /// not a coboundary and the algebra is not a twist of a Hopf algebra.
    pub non_trivial: bool,
}

/// Restricts the associator's cocycle to each coordinate axis `i` with
/// `a_ii ≢ 0 mod n` and decides triviality there.
pub fn not_twist_equivalent_certificate(a: &GradedQuasiHopf, datum: &SkewPrimitiveDatum) -> Result<Certificate> {
    let w = cocycle_from_phi(a.base())?;
    if w.group.rank() != datum.m {
        return Err(Error::InvalidParams("associator group does not match the datum".into()));
    }
    let mut axes = Vec::new();
    for i in 0..datum.m {
        let aii = datum.a_matrix[i][i];
        if aii.rem_euclid(datum.n as i64) == 0 {
            continue;
        }
        let mut e = vec![0i64; datum.m];
        e[i] = 1;
        let restricted = restrict_to_cyclic(&w, w.group.index_of(&e))?;
        let triviality = is_coboundary(&restricted)?;
        axes.push(AxisCertificate {
            axis: i,
            exponent: aii,
            restricted,
            triviality,
        });
    }
    let non_trivial = axes.iter().any(|a| !a.triviality.is_trivial());
    Ok(Certificate { axes, non_trivial })
}

/// The cocycle of `H(p, s)`.
pub fn hps_cocycle(p: u32, s: u32) -> Result<Cocycle3> {
    cocycle_from_phi(&build_hps(HpsParams::new(p, s)?)?)
}

/// Partition of `{1, …, p−1}` into classes of `s` whose cocycles are
/// related by a pullback along an automorphism up to a coboundary.
pub fn hps_automorphism_orbits(p: u32) -> Result<Vec<Vec<u32>>> {
    let cocycles: Vec<Cocycle3> = (1..p).map(|s| hps_cocycle(p, s)).collect::<Result<_>>()?;
    let mut parent: Vec<usize> = (0..cocycles.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for (i, w) in cocycles.iter().enumerate() {
        for m in 1..p as i64 {
            let pulled = automorphism_pullback(w, m)?;
            for (j, other) in cocycles.iter().enumerate() {
                if is_coboundary(&pulled.ratio(other)?)?.is_trivial() {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..cocycles.len() {
        let r = find(&mut parent, i);
        match roots.iter().position(|&x| x == r) {
            Some(k) => orbits[k].push(i as u32 + 1),
            None => {
                roots.push(r);
                orbits.push(vec![i as u32 + 1]);
            }
        }
    }
    Ok(orbits)
}

/// Whether the orbits are exactly the residues and the non-residues, as
/// predicted by [`classify_hps`].
pub fn orbits_match_qr(p: u32, orbits: &[Vec<u32>]) -> Result<bool> {
    if orbits.len() != 2 {
        return Ok(false);
    }
    for orbit in orbits {
        let classes: Vec<QrClass> = orbit
            .iter()
            .map(|&s| HpsParams::new(p, s).map(classify_hps))
            .collect::<Result<_>>()?;
        if classes.windows(2).any(|w| w[0] != w[1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CheckOutcome;
    use crate::families::{build_aq, AqParams};
    use crate::twist::TwistConstruction;
    use proptest::prelude::*;

    fn carry_cocycle(p: u32, s: i64) -> Cocycle3 {
        Cocycle3::from_fn(AbelianGroup::cyclic(p), p, |i, j, k| {
            s * i as i64 * i64::from(j + k >= p as usize)
        })
        .unwrap()
    }

    #[test]
    fn reads_hps_associator() {
        let w = hps_cocycle(3, 1).unwrap();
        assert_eq!(w.value_order(), 3);
        assert!(w.same_values(&carry_cocycle(3, 1)));
        for p in [3u32, 5, 7] {
            for s in 1..p {
                let w = hps_cocycle(p, s).unwrap();
                assert!(w.same_values(&carry_cocycle(p, s as i64)));
                assert_eq!(check_cocycle(&w).unwrap(), CheckOutcome::Pass);
                assert!(!is_coboundary(&w).unwrap().is_trivial(), "p={p} s={s}");
            }
        }
    }

    #[test]
    fn trivial_cocycle() {
        let w = Cocycle3::trivial(AbelianGroup::cyclic(3)).unwrap();
        assert_eq!(check_cocycle(&w).unwrap(), CheckOutcome::Pass);
        match is_coboundary(&w).unwrap() {
            Triviality::Trivial { witness } => assert!(witness.table.iter().all(|&x| x == 0)),
            other => panic!("{other:?}"),
        }
        let h = crate::families::build_cyclic_group_hopf(3, 3, 1).unwrap();
        assert!(cocycle_from_phi(&h).unwrap().is_constant_one());
    }

    #[test]
    fn perturbed_table_fails() {
        let mut w = carry_cocycle(3, 1);
        w.table[5] = (w.table[5] + 1) % 3;
        assert!(!check_cocycle(&w).unwrap().passed());
    }

    #[test]
    fn pentagon_and_cocycle_agree_on_perturbations() {
        let h = build_hps(HpsParams::new(3, 2).unwrap()).unwrap();
        let gp = h.group_part().unwrap().clone();
        for bump in 0..27usize {
            let w = carry_cocycle(3, 2);
            let phi = gp
                .diagonal(3, |b| {
                    let idx = (b[0] * 3 + b[1]) * 3 + b[2];
                    let e = w.table[idx] as i64 + i64::from(idx == bump);
                    crate::cyclo::CycloNum::root_of_unity(3, e)
                })
                .unwrap();
            let phi_inv = gp
                .diagonal(3, |b| {
                    let idx = (b[0] * 3 + b[1]) * 3 + b[2];
                    let e = w.table[idx] as i64 + i64::from(idx == bump);
                    crate::cyclo::CycloNum::root_of_unity(3, -e)
                })
                .unwrap();
            let bad = h
                .with_parts(|p| {
                    p.phi = phi;
                    p.phi_inv = phi_inv;
                })
                .unwrap();
            let pentagon = bad.check_pentagon().unwrap().passed();
            let cocycle = check_cocycle(&cocycle_from_phi(&bad).unwrap()).unwrap().passed();
            assert_eq!(pentagon, cocycle, "bump {bump}");
        }
    }

    #[test]
    fn aq_cocycle_is_phi_s() {
        let params = AqParams::new(3, 1).unwrap();
        let a = build_aq(params).unwrap();
        let w = cocycle_from_phi(a.base()).unwrap();
        assert!(w.same_values(&hps_cocycle(3, params.s()).unwrap()));
    }

    #[test]
    fn restriction_examples() {
        let w = hps_cocycle(5, 2).unwrap();
        assert_eq!(restrict_to_cyclic(&w, 1).unwrap(), w);
        let t = Cocycle3::trivial(AbelianGroup::new(vec![3, 3]).unwrap()).unwrap();
        assert!(restrict_to_cyclic(&t, 4).unwrap().is_constant_one());
    }

    #[test]
    fn pullback_examples() {
        let w = hps_cocycle(5, 2).unwrap();
        assert_eq!(automorphism_pullback(&w, 1).unwrap(), w);
        assert!(automorphism_pullback(&w, 5).is_err());
        for m in 1..5i64 {
            let target = hps_cocycle(5, (2 * m * m % 5) as u32).unwrap();
            let ratio = automorphism_pullback(&w, m).unwrap().ratio(&target).unwrap();
            assert!(is_coboundary(&ratio).unwrap().is_trivial(), "m={m}");
        }
    }

    #[test]
    fn qr_orbits() {
        for p in [3u32, 5, 7] {
            let orbits = hps_automorphism_orbits(p).unwrap();
            assert!(orbits_match_qr(p, &orbits).unwrap(), "p={p}: {orbits:?}");
        }
    }

    #[test]
    fn sl2_certificate() {
        let datum = SkewPrimitiveDatum::sl2(3);
        let t = TwistConstruction::from_datum(&datum).unwrap();
        let a = t.extract_subalgebra().unwrap();
        let cert = not_twist_equivalent_certificate(&a, &datum).unwrap();
        assert!(cert.non_trivial);
        assert_eq!(cert.axes.len(), 1);
        assert!(matches!(cert.axes[0].triviality, Triviality::NonTrivial { .. }));
    }

    #[test]
    fn zero_exponent_datum_has_no_certificate() {
        let datum = SkewPrimitiveDatum::rank_one(3, 1, 0);
        let t = TwistConstruction::from_datum(&datum).unwrap();
        let a = t.extract_subalgebra().unwrap();
        let cert = not_twist_equivalent_certificate(&a, &datum).unwrap();
        assert!(!cert.non_trivial);
        assert!(cert.axes.is_empty());
    }

    #[test]
    fn json_is_sparse_and_round_trips() {
        let w = hps_cocycle(3, 1).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        let f: CocycleFile = serde_json::from_str(&s).unwrap();
        assert!(f.table.iter().all(|r| r[3] != 0));
        let back: Cocycle3 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }

    fn cochain_strategy(orders: Vec<u32>, value_order: u32) -> impl Strategy<Value = Cochain2> {
        let n: usize = orders.iter().map(|&d| d as usize).product();
        proptest::collection::vec(0..value_order, n * n).prop_map(move |table| Cochain2 {
            orders: orders.clone(),
            value_order,
            table,
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn coboundaries_are_cocycles_and_trivial(mu in prop_oneof![
            cochain_strategy(vec![3], 9),
            cochain_strategy(vec![5], 25),
            cochain_strategy(vec![3, 3], 3),
        ]) {
            let w = mu.coboundary().unwrap();
            prop_assert!(check_cocycle(&w).unwrap().passed());
            match is_coboundary(&w).unwrap() {
                Triviality::Trivial { witness } => prop_assert!(witness.coboundary().unwrap().same_values(&w)),
                other => prop_assert!(false, "{:?}", other),
            }
        }

        #[test]
        fn qr_class_is_invariant_under_squares(p in prop::sample::select(vec![3u32, 5, 7, 11, 13]), s in 1u32..13, t in 1u32..13) {
            let s = s % p;
            let t = t % p;
            prop_assume!(s != 0 && t != 0);
            let a = classify_hps(HpsParams::new(p, s).unwrap());
            let b = classify_hps(HpsParams::new(p, s * t * t % p).unwrap());
            prop_assert_eq!(a, b);
        }
    }
}
