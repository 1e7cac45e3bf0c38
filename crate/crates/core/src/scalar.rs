//! The coefficient-field abstraction shared by every polynomial and matrix
//! type in the crate.
//!
//! All arithmetic is exact. Two implementations ship: [`Rational`] (plain
//! `ℚ`) and [`Cyclotomic`](crate::Cyclotomic) (`ℚ(ζ_m)` with automatic
//! embedding into a common cyclotomic field).

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// An exact field of characteristic zero.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_rational(r: &Rational) -> Self;

    /// `ζ_order^exponent`, or `None` when the field does not contain it.
    fn root_of_unity(order: u32, exponent: i64) -> Option<Self>;

    /// The value as a rational number, when it is one.
    fn to_rational(&self) -> Option<Rational>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }

    /// Integer power, negative exponents through [`Scalar::inv`].
    fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.inv().map(|x| x.pow(e.unsigned_abs()))
        }
    }

    /// True when rendering needs parentheses as a factor of a product.
    fn is_compound(&self) -> bool {
        false
    }

    /// True when the rendered form starts with a minus sign.
    fn is_negative_literal(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_negative())
    }
}

impl Scalar for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn root_of_unity(order: u32, exponent: i64) -> Option<Self> {
        if order == 0 {
            return None;
        }
        let m = order as i64;
        let k = exponent.rem_euclid(m);
        if k == 0 {
            Some(Rational::one())
        } else if 2 * k == m {
            Some(-Rational::one())
        } else {
            None
        }
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// Renders `c*rest` with the scalar conventions used across the crate:
/// unit coefficients are dropped and compound scalars are parenthesised.
pub(crate) fn write_scaled<S: Scalar>(
    f: &mut std::fmt::Formatter<'_>,
    coeff: &S,
    rest: &str,
    first: bool,
) -> std::fmt::Result {
    let neg_one = -S::one();
    let (sign, magnitude): (&str, Option<S>) = if *coeff == S::one() {
        ("+", None)
    } else if *coeff == neg_one {
        ("-", None)
    } else if coeff.is_negative_literal() {
        ("-", Some(-coeff.clone()))
    } else {
        ("+", Some(coeff.clone()))
    };
    if first {
        if sign == "-" {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {sign} ")?;
    }
    match (magnitude, rest.is_empty()) {
        (None, true) => write!(f, "1"),
        (None, false) => write!(f, "{rest}"),
        (Some(c), true) => write!(f, "{c}"),
        (Some(c), false) if c.is_compound() => write!(f, "({c})*{rest}"),
        (Some(c), false) => write!(f, "{c}*{rest}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rational_roots_of_unity() {
        assert_eq!(Rational::root_of_unity(2, 1), Some(q(-1, 1)));
        assert_eq!(Rational::root_of_unity(4, 2), Some(q(-1, 1)));
        assert_eq!(Rational::root_of_unity(3, 3), Some(q(1, 1)));
        assert_eq!(Rational::root_of_unity(4, 1), None);
    }

    #[test]
    fn pow_and_powi() {
        assert_eq!(q(2, 3).pow(3), q(8, 27));
        assert_eq!(q(2, 3).powi(-2), Some(q(9, 4)));
        assert_eq!(Rational::zero().powi(-1), None);
    }
}
