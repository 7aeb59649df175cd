//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`CycloNum`] is stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` reduced
//! modulo the `N`-th cyclotomic polynomial, with a single common denominator.
//! Coefficients live in `i64` while they fit and are promoted to [`BigInt`]
//! transparently; the two representations never coexist for the same value,
//! so derived equality is exact field equality.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
///
/// Computed by exact division of `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

struct Field {
    phi: usize,
    /// Φ_N, monic, lowest degree first, length `phi + 1`.
    poly: Vec<i64>,
    /// `ζ^k` reduced, for `k` in `0..N`.
    powers: Vec<Vec<i64>>,
}

impl Field {
    fn new(order: u32) -> Self {
        let poly: Vec<i64> = cyclotomic_polynomial(order)
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient exceeds i64"))
            .collect();
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] -= top * poly[i];
                }
            }
        }
        Field { phi, poly, powers }
    }
}

thread_local! {
    static FIELDS: RefCell<HashMap<u32, Rc<Field>>> = RefCell::new(HashMap::new());
}

fn field(order: u32) -> Rc<Field> {
    FIELDS.with(|f| {
        f.borrow_mut()
            .entry(order)
            .or_insert_with(|| Rc::new(Field::new(order)))
            .clone()
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { num: Vec<i64>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    order: u32,
    repr: Repr,
}

impl CycloNum {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1);
        let phi = euler_phi(order) as usize;
        CycloNum {
            order,
            repr: Repr::Small {
                num: vec![0; phi],
                den: 1,
            },
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: u32, v: i64) -> Self {
        let mut z = Self::zero(order);
        if let Repr::Small { num, .. } = &mut z.repr {
            num[0] = v;
        }
        z
    }

    pub fn from_ratio(order: u32, num: i64, den: i64) -> Self {
        let phi = euler_phi(order) as usize;
        let mut v = vec![0i128; phi];
        v[0] = num as i128;
        Self::from_i128(order, v, den as i128).expect("zero denominator")
    }

    pub fn from_rational(order: u32, r: &BigRational) -> Self {
        let phi = euler_phi(order) as usize;
        let mut num = vec![BigInt::zero(); phi];
        num[0] = r.numer().clone();
        Self::from_big(order, num, r.denom().clone())
    }

    /// Builds a value from its `φ(N)` power-basis coefficients.
    pub fn from_coeffs(order: u32, coeffs: &[BigRational]) -> Result<Self> {
        let phi = euler_phi(order) as usize;
        if coeffs.len() != phi {
            return Err(Error::Parse(format!(
                "expected {phi} coefficients for order {order}, got {}",
                coeffs.len()
            )));
        }
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_big(order, num, den))
    }

    /// `ζ_N^k`.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        assert!(order >= 1);
        let f = field(order);
        let idx = k.rem_euclid(order as i64) as usize;
        CycloNum {
            order,
            repr: Repr::Small {
                num: f.powers[idx].clone(),
                den: 1,
            },
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|&c| c == 0),
            Repr::Big { num, .. } => num.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { num, den } => *den == 1 && num[0] == 1 && num[1..].iter().all(|&c| c == 0),
            Repr::Big { .. } => false,
        }
    }

    /// Coefficient of `ζ^k` in the reduced power basis.
    pub fn coeff(&self, k: usize) -> BigRational {
        match &self.repr {
            Repr::Small { num, den } => BigRational::new(num[k].into(), (*den).into()),
            Repr::Big { num, den } => BigRational::new(num[k].clone(), den.clone()),
        }
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..euler_phi(self.order) as usize).map(|k| self.coeff(k)).collect()
    }

    /// Returns the rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let rational = match &self.repr {
            Repr::Small { num, .. } => num[1..].iter().all(|&c| c == 0),
            Repr::Big { num, .. } => num[1..].iter().all(Zero::is_zero),
        };
        rational.then(|| self.coeff(0))
    }

    /// If the value is `ζ_N^k` for some `k`, returns the least such `k`.
    pub fn root_exponent(&self) -> Option<u32> {
        let Repr::Small { num, den } = &self.repr else {
            return None;
        };
        if *den != 1 {
            return None;
        }
        let f = field(self.order);
        f.powers.iter().position(|p| p == num).map(|k| k as u32)
    }

    fn from_i128(order: u32, mut num: Vec<i128>, mut den: i128) -> Option<Self> {
        if den == 0 {
            return None;
        }
        let mut g = den;
        for &c in &num {
            if g == 1 {
                break;
            }
            g = g.gcd(&c);
        }
        if den < 0 {
            g = -g.abs();
        } else {
            g = g.abs();
        }
        if num.iter().all(|&c| c == 0) {
            den = 1;
        } else if g != 1 {
            for c in num.iter_mut() {
                *c /= g;
            }
            den /= g;
        }
        let small: Option<Vec<i64>> = num.iter().map(|&c| i64::try_from(c).ok()).collect();
        match (small, i64::try_from(den)) {
            (Some(num), Ok(den)) => Some(CycloNum {
                order,
                repr: Repr::Small { num, den },
            }),
            _ => Some(Self::from_big(
                order,
                num.into_iter().map(BigInt::from).collect(),
                BigInt::from(den),
            )),
        }
    }

    fn from_big(order: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if den.is_negative() {
                g = -g;
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den = &den / &g;
            }
        }
        let small: Option<Vec<i64>> = num.iter().map(|c| c.to_i64()).collect();
        match (small, den.to_i64()) {
            (Some(num), Some(den)) => CycloNum {
                order,
                repr: Repr::Small { num, den },
            },
            _ => CycloNum {
                order,
                repr: Repr::Big { num, den },
            },
        }
    }

    fn big_parts(&self) -> (Vec<BigInt>, BigInt) {
        match &self.repr {
            Repr::Small { num, den } => (num.iter().map(|&c| c.into()).collect(), (*den).into()),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    /// Numerator/denominator pairs of every power-basis coefficient.
    pub fn coeff_parts(&self) -> Vec<(BigInt, BigInt)> {
        self.coeffs()
            .into_iter()
            .map(|r| (r.numer().clone(), r.denom().clone()))
            .collect()
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order, other.order))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        if let (Repr::Small { num: a, den: ad }, Repr::Small { num: b, den: bd }) =
            (&self.repr, &other.repr)
        {
            let (ad, bd) = (*ad as i128, *bd as i128);
            let num: Vec<i128> = if ad == bd {
                a.iter().zip(b).map(|(&x, &y)| x as i128 + y as i128).collect()
            } else {
                a.iter()
                    .zip(b)
                    .map(|(&x, &y)| x as i128 * bd + y as i128 * ad)
                    .collect()
            };
            let den = if ad == bd { ad } else { ad * bd };
            if let Some(r) = Self::from_i128(self.order, num, den) {
                return Ok(r);
            }
        }
        let (a, ad) = self.big_parts();
        let (b, bd) = other.big_parts();
        let num = a
            .iter()
            .zip(&b)
            .map(|(x, y)| x * &bd + y * &ad)
            .collect();
        Ok(Self::from_big(self.order, num, ad * bd))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        let repr = match &self.repr {
            Repr::Small { num, den } => {
                if num.iter().any(|&c| c == i64::MIN) {
                    let (n, d) = self.big_parts();
                    return Self::from_big(self.order, n.into_iter().map(|c| -c).collect(), d);
                }
                Repr::Small {
                    num: num.iter().map(|&c| -c).collect(),
                    den: *den,
                }
            }
            Repr::Big { num, den } => Repr::Big {
                num: num.iter().map(|c| -c).collect(),
                den: den.clone(),
            },
        };
        CycloNum {
            order: self.order,
            repr,
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        if other.is_one() {
            return Ok(self.clone());
        }
        if self.is_one() {
            return Ok(other.clone());
        }
        let f = field(self.order);
        if let (Repr::Small { num: a, den: ad }, Repr::Small { num: b, den: bd }) =
            (&self.repr, &other.repr)
        {
            if let Some(r) = mul_small(&f, a, b) {
                if let Some(v) = Self::from_i128(self.order, r, *ad as i128 * *bd as i128) {
                    return Ok(v);
                }
            }
        }
        let (a, ad) = self.big_parts();
        let (b, bd) = other.big_parts();
        let phi = f.phi;
        let mut r = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                r[i + j] += x * y;
            }
        }
        for k in (phi..2 * phi - 1).rev() {
            let c = std::mem::take(&mut r[k]);
            if !c.is_zero() {
                for i in 0..phi {
                    r[k - phi + i] -= &c * f.poly[i];
                }
            }
        }
        r.truncate(phi);
        Ok(Self::from_big(self.order, r, ad * bd))
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(k) = self.root_exponent() {
            return Ok(Self::root_of_unity(self.order, -(k as i64)));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order, &r.recip()));
        }
        // r·ζ^k: invert the scalar and the root separately
        let f = field(self.order);
        let (num, den) = self.big_parts();
        for (k, p) in f.powers.iter().enumerate() {
            let lead = p.iter().position(|&c| c != 0).expect("nonzero power");
            let scale = BigRational::new(num[lead].clone(), BigInt::from(p[lead]));
            let proportional = num
                .iter()
                .zip(p)
                .all(|(c, &pc)| BigRational::from(c.clone()) == &scale * BigInt::from(pc));
            if proportional {
                let inv_root = Self::root_of_unity(self.order, -(k as i64));
                let s = Self::from_rational(self.order, &(scale / BigRational::from(den)).recip());
                return inv_root.checked_mul(&s);
            }
        }
        Ok(self.inv_general())
    }

    fn inv_general(&self) -> Self {
        let f = field(self.order);
        let modulus: Vec<BigRational> = f.poly.iter().map(|&c| BigRational::from(BigInt::from(c))).collect();
        let a: Vec<BigRational> = self.coeffs();
        let (mut r0, mut r1) = (poly_trim(modulus), poly_trim(a));
        let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        debug_assert_eq!(r0.len(), 1, "Φ_N is irreducible");
        let c = r0[0].clone();
        let (_, s) = poly_divrem(&s0, &poly_trim(f.poly.iter().map(|&c| BigRational::from(BigInt::from(c))).collect()));
        let mut coeffs = vec![BigRational::zero(); f.phi];
        for (i, v) in s.into_iter().enumerate() {
            coeffs[i] = v / &c;
        }
        Self::from_coeffs(self.order, &coeffs).expect("length matches")
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Image under `Q(ζ_N) → Q(ζ_M)`, `ζ_N ↦ ζ_M^{M/N}`.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if target == 0 || target % self.order != 0 {
            return Err(Error::NotDivisible {
                from: self.order,
                to: target,
            });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let step = (target / self.order) as usize;
        let ft = field(target);
        let (num, den) = self.big_parts();
        let mut out = vec![BigInt::zero(); ft.phi];
        for (k, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&ft.powers[k * step]) {
                *o += c * p;
            }
        }
        Ok(Self::from_big(target, out, den))
    }

    /// Multiplies by a rational number.
    pub fn scale(&self, r: &BigRational) -> Self {
        self * &Self::from_rational(self.order, r)
    }

    /// Floating-point rendering as `(re, im)`, for display only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let (num, den) = self.big_parts();
        let d = den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in num.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN) / d;
            let ang = 2.0 * std::f64::consts::PI * k as f64 / self.order as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

fn mul_small(f: &Field, a: &[i64], b: &[i64]) -> Option<Vec<i128>> {
    let phi = f.phi;
    let mut r = vec![0i128; 2 * phi - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                r[i + j] = r[i + j].checked_add(x as i128 * y as i128)?;
            }
        }
    }
    for k in (phi..2 * phi - 1).rev() {
        let c = r[k];
        if c != 0 {
            for i in 0..phi {
                let p = f.poly[i];
                if p != 0 {
                    r[k - phi + i] = r[k - phi + i].checked_sub(c.checked_mul(p as i128)?)?;
                }
            }
        }
    }
    r.truncate(phi);
    Some(r)
}

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    poly_trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), poly_trim(rem));
    }
    let lead = b.last().expect("nonzero divisor");
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + b.len() - 1] / lead;
        if c.is_zero() {
            continue;
        }
        for (i, y) in b.iter().enumerate() {
            rem[k + i] -= &c * y;
        }
        quot[k] = c;
    }
    (poly_trim(quot), poly_trim(rem))
}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.checked_add(rhs).expect("incompatible scalars")
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.checked_sub(rhs).expect("incompatible scalars")
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.checked_mul(rhs).expect("incompatible scalars")
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        self.neg_ref()
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        self.neg_ref()
    }
}

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        *self = &*self + rhs;
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "z{}", self.order)?;
                    } else {
                        write!(f, "z{}^{k}", self.order)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{}]({self})", self.order)
    }
}

/// Accumulates `Σ c_k ζ_N^{e_k}` in the unreduced power basis of
/// `x^N − 1`, so that each rotation is a shift; reduces once at the end.
pub(crate) struct RotationSum {
    order: u32,
    acc: Vec<i128>,
    den: i128,
    overflow: Option<CycloNum>,
}

impl RotationSum {
    pub(crate) fn new(order: u32) -> Self {
        RotationSum {
            order,
            acc: vec![0; order as usize],
            den: 1,
            overflow: None,
        }
    }

    /// Adds `v · ζ_N^e`.
    pub(crate) fn add_rotated(&mut self, v: &CycloNum, e: u32) {
        if v.is_zero() {
            return;
        }
        if self.overflow.is_none() {
            if let Repr::Small { num, den } = &v.repr {
                if self.try_add(num, *den as i128, e).is_some() {
                    return;
                }
            }
            let partial = self.reduce_small().expect("accumulator is consistent");
            self.overflow = Some(partial);
        }
        let term = v * &CycloNum::root_of_unity(self.order, e as i64);
        let cur = self.overflow.take().expect("set above");
        self.overflow = Some(&cur + &term);
    }

    fn try_add(&mut self, num: &[i64], den: i128, e: u32) -> Option<()> {
        let n = self.order as usize;
        if den != self.den {
            let l = self.den.lcm(&den);
            let scale_acc = l / self.den;
            if scale_acc != 1 {
                let mut scaled = self.acc.clone();
                for c in scaled.iter_mut() {
                    *c = c.checked_mul(scale_acc)?;
                }
                self.acc = scaled;
            }
            self.den = l;
        }
        let factor = self.den / den;
        let mut updates = Vec::with_capacity(num.len());
        for (k, &c) in num.iter().enumerate() {
            if c != 0 {
                let slot = (k + e as usize) % n;
                updates.push((slot, self.acc[slot].checked_add((c as i128).checked_mul(factor)?)?));
            }
        }
        for (slot, v) in updates {
            self.acc[slot] = v;
        }
        Some(())
    }

    fn reduce_small(&self) -> Option<CycloNum> {
        let f = field(self.order);
        let phi = f.phi;
        let mut r = self.acc.clone();
        for k in (phi..r.len()).rev() {
            let c = r[k];
            if c != 0 {
                r[k] = 0;
                for i in 0..phi {
                    let p = f.poly[i];
                    if p != 0 {
                        r[k - phi + i] = r[k - phi + i].checked_sub(c.checked_mul(p as i128)?)?;
                    }
                }
            }
        }
        r.truncate(phi);
        CycloNum::from_i128(self.order, r, self.den)
    }

    pub(crate) fn finish(self) -> CycloNum {
        match self.overflow {
            Some(v) => v,
            None => match self.reduce_small() {
                Some(v) => v,
                None => {
                    let big: Vec<BigInt> = self.acc.iter().map(|&c| BigInt::from(c)).collect();
                    let f = field(self.order);
                    let mut total = CycloNum::zero(self.order);
                    for (k, c) in big.iter().enumerate() {
                        if !c.is_zero() {
                            let coeffs: Vec<BigInt> = f.powers[k].iter().map(|&p| c * p).collect();
                            total = &total + &CycloNum::from_big(self.order, coeffs, BigInt::from(self.den));
                        }
                    }
                    total
                }
            },
        }
    }
}
