//! Exact arithmetic in cyclotomic fields `ℚ(ζ_m) = ℚ[X]/(Φ_m(X))`.
//!
//! Elements remember the order `m` of the field they were built in. Binary
//! operations on elements of different orders first embed both operands
//! into `ℚ(ζ_lcm)`, so no global field has to be fixed up front.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{write_scaled, Rational, Scalar};

static PHI_CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();

fn phi_cached(m: u32) -> Arc<Vec<BigInt>> {
    let cache = PHI_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let div = phi_cached(d);
            num = divide_monic_int(&num, &div);
        }
    }
    let p = Arc::new(num);
    cache.write().unwrap().insert(m, p.clone());
    p
}

fn divide_monic_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for k in (dn..num.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - dn] = c.clone();
        for (i, d) in den.iter().enumerate() {
            rem[k - dn + i] -= &c * d;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// The `m`-th cyclotomic polynomial with integer coefficients, lowest degree
/// first. Computed by dividing `X^m - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    phi_cached(m).as_ref().clone()
}

/// Euler's totient, read off the degree of `Φ_m`.
pub fn totient(m: u32) -> usize {
    phi_cached(m).len() - 1
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Reduces a polynomial with rational coefficients modulo the monic `Φ_m`.
fn reduce_mod_phi(m: u32, mut poly: Vec<Rational>) -> Vec<Rational> {
    let phi = phi_cached(m);
    let n = phi.len() - 1;
    for k in (n..poly.len()).rev() {
        if poly[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut poly[k], Rational::zero());
        for i in 0..n {
            if !phi[i].is_zero() {
                let t = c.clone() * Rational::from_integer(phi[i].clone());
                poly[k - n + i] -= t;
            }
        }
    }
    poly.resize(n, Rational::zero());
    poly
}

/// An exact element of `ℚ(ζ_m)`, stored as the reduced residue modulo `Φ_m`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Builds an element from an arbitrary-length polynomial in `ζ_m`.
    pub fn from_poly(order: u32, poly: Vec<Rational>) -> Self {
        assert!(order >= 1);
        Cyclotomic { order, coeffs: reduce_mod_phi(order, poly) }
    }

    pub fn rational(r: Rational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![r] }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `ζ_m^k`, reduced modulo `Φ_m`.
    pub fn zeta(m: u32, k: i64) -> Self {
        assert!(m >= 1, "root of unity needs m >= 1");
        let e = k.rem_euclid(m as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_poly(m, poly)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    /// The same element viewed in `ℚ(ζ_target)`; `target` must be a multiple of the order.
    pub fn embed(&self, target: u32) -> Self {
        assert!(target % self.order == 0, "ζ_{} does not embed in ζ_{}", self.order, target);
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Self::from_poly(target, poly)
    }

    /// Recognises an element of `ℚ(ζ_m)` inside a larger cyclotomic field.
    /// Returns `None` when the element does not lie in the subfield.
    pub fn restrict(&self, m: u32) -> Option<Self> {
        if self.order % m != 0 {
            let big = lcm(self.order, m);
            return self.embed(big).restrict(m);
        }
        if m == self.order {
            return Some(self.clone());
        }
        let phi_m = totient(m);
        let cols: Vec<Cyclotomic> = (0..phi_m).map(|k| Self::zeta(m, k as i64).embed(self.order)).collect();
        let rows = self.coeffs.len();
        let a: Vec<Vec<Rational>> =
            (0..rows).map(|r| cols.iter().map(|c| c.coeffs[r].clone()).collect()).collect();
        match crate::linalg::solve(&a, &self.coeffs) {
            crate::linalg::Solution::Unique(x) => Some(Cyclotomic { order: m, coeffs: x }),
            _ => None,
        }
    }

    /// Smallest-order representation among the divisors of the current order.
    pub fn simplify(&self) -> Self {
        if self.is_rational() {
            return Self::rational(self.coeffs[0].clone());
        }
        let mut divisors: Vec<u32> = (1..self.order).filter(|d| self.order % d == 0).collect();
        divisors.sort_unstable();
        for d in divisors {
            if let Some(r) = self.restrict(d) {
                return r;
            }
        }
        self.clone()
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            (a.clone(), b.clone())
        } else {
            let m = lcm(a.order, b.order);
            (a.embed(m), b.embed(m))
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.order == other.order {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return Cyclotomic { order: self.order, coeffs };
        }
        let (a, b) = Self::common(self, other);
        a.add_ref(&b)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.order == 1 && other.order == 1 {
            return Self::rational(&self.coeffs[0] * &other.coeffs[0]);
        }
        if other.order == 1 {
            let c = &other.coeffs[0];
            return Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|x| x * c).collect() };
        }
        if self.order == 1 {
            return other.mul_ref(self);
        }
        if self.order != other.order {
            let (a, b) = Self::common(self, other);
            return a.mul_ref(&b);
        }
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_poly(self.order, prod)
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Cyclotomic {
                order: self.order,
                coeffs: {
                    let mut v = vec![Rational::zero(); self.coeffs.len()];
                    v[0] = self.coeffs[0].recip();
                    v
                },
            });
        }
        let phi: Vec<Rational> =
            phi_cached(self.order).iter().map(|c| Rational::from_integer(c.clone())).collect();
        let (g, s) = ext_gcd_left(&trim(self.coeffs.clone()), &phi);
        // g is a nonzero constant because Φ_m is irreducible
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let s: Vec<Rational> = s.into_iter().map(|c| c * &ginv).collect();
        Some(Self::from_poly(self.order, s))
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let lead_inv = b.last().unwrap().recip();
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    for k in (b.len() - 1..rem.len()).rev() {
        let c = &rem[k] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        let shift = k + 1 - b.len();
        for (i, bi) in b.iter().enumerate() {
            let t = &c * bi;
            rem[shift + i] -= t;
        }
        quot[shift] = c;
    }
    (trim(quot), trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn is_zero_poly(p: &[Rational]) -> bool {
    p.iter().all(Zero::is_zero)
}

/// Returns `(g, s)` with `s·a ≡ g (mod b)`, `g = gcd(a, b)`.
fn ext_gcd_left(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![Rational::one()], vec![Rational::zero()]);
    while !is_zero_poly(&r1) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                $body(&self, rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                $body(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Cyclotomic, b: &Cyclotomic| a.add_ref(b));
forward_binop!(Sub, sub, |a: &Cyclotomic, b: &Cyclotomic| a.add_ref(&-b));
forward_binop!(Mul, mul, |a: &Cyclotomic, b: &Cyclotomic| a.mul_ref(b));

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rest = match (self.order, k) {
                (_, 0) => String::new(),
                (4, 1) => "i".to_string(),
                _ => format!("zeta({},{})", self.order, k),
            };
            write_scaled(f, c, &rest, first)?;
            first = false;
        }
        Ok(())
    }
}

impl Scalar for Cyclotomic {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }

    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }

    fn root_of_unity(order: u32, exponent: i64) -> Option<Self> {
        (order >= 1).then(|| Self::zeta(order, exponent))
    }

    fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    fn is_compound(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
    }

    fn is_negative_literal(&self) -> bool {
        let mut nz = self.coeffs.iter().filter(|c| !c.is_zero());
        match (nz.next(), nz.next()) {
            (Some(c), None) => c.is_negative(),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials_small_orders() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(totient(24), 8);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Cyclotomic::zeta(4, 1);
        assert_eq!(i.clone() * &i, Cyclotomic::integer(-1));
    }

    #[test]
    fn paper_p_for_n_two_is_minus_i() {
        let p = Cyclotomic::zeta(4, 3);
        assert_eq!(p, -Cyclotomic::zeta(4, 1));
        // p = -ζ_{2n}: p² = ζ_{2n}² = ζ_n
        assert_eq!(p.clone() * &p, Cyclotomic::zeta(2, 1));
    }

    #[test]
    fn full_rotation_is_one() {
        assert_eq!(Cyclotomic::zeta(3, 3), Cyclotomic::one());
    }

    #[test]
    fn conjugate_sixth_roots_sum_to_one() {
        assert_eq!(Cyclotomic::zeta(6, 1) + Cyclotomic::zeta(6, 5), Cyclotomic::one());
    }

    #[test]
    fn inverse_of_zeta_three() {
        assert_eq!(Cyclotomic::zeta(3, 1).inv().unwrap(), Cyclotomic::zeta(3, 2));
        assert!(Cyclotomic::zero().inv().is_none());
    }

    #[test]
    fn mixed_orders_embed_into_lcm() {
        let prod = Cyclotomic::zeta(4, 1) * Cyclotomic::zeta(6, 1);
        assert_eq!(prod.order(), 12);
        assert_eq!(prod, Cyclotomic::zeta(12, 5));
    }

    #[test]
    fn restrict_recovers_subfield_elements() {
        let a = Cyclotomic::zeta(3, 1) + Cyclotomic::integer(2);
        let b = a.embed(12);
        assert_eq!(b.order(), 12);
        let back = b.restrict(3).unwrap();
        assert_eq!(back.order(), 3);
        assert_eq!(back.coeffs(), a.coeffs());
        assert!(Cyclotomic::zeta(4, 1).embed(12).restrict(3).is_none());
    }

    #[test]
    fn display_uses_literal_syntax() {
        assert_eq!(Cyclotomic::zeta(4, 1).to_string(), "i");
        assert_eq!((-Cyclotomic::zeta(4, 1)).to_string(), "-i");
        assert_eq!(Cyclotomic::zeta(8, 2).to_string(), "zeta(8,2)");
        assert_eq!(Cyclotomic::integer(-3).to_string(), "-3");
        let z = Cyclotomic::zeta(3, 1) + Cyclotomic::rational(Rational::new(1.into(), 2.into()));
        assert_eq!(z.to_string(), "1/2 + zeta(3,1)");
    }
}
