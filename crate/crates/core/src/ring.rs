//! Exact coefficient arithmetic: arbitrary-precision rationals and the
//! commutative-ring interface that polynomial code is generic over.
//!
//! Every ring used in this crate is a commutative algebra over the rationals,
//! so the trait carries the canonical embeddings of the integers and of the
//! rationals in addition to the usual ring operations.  This is what lets the
//! same polynomial constructors run with numeric parameters (`Rational`) and
//! with symbolic parameters (nested polynomial rings such as `Q[alpha]` or
//! `Q[alpha][beta]`).

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

use crate::error::RingError;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator (guaranteed by the backing implementation).
pub type Rational = num_rational::BigRational;

/// Commutative ring with unit, equipped with the canonical maps from the
/// integers and the rationals.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Canonical image of an integer.
    fn from_int(n: i64) -> Self;
    /// Canonical image of a rational number.
    fn from_rat(q: &Rational) -> Self;
    /// Multiplication by a rational scalar (exact).  Rings override this when
    /// it is cheaper than a full `mul` by the embedded constant.
    fn scale_rat(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rat(q))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Rational as Zero>::is_zero(self)
    }
    // The general rational operators reduce by a gcd on every call, and that
    // gcd dominates exact arithmetic even when both operands are integers
    // (gcd against 1 still walks the full bit length).  Integer-valued
    // operands with unit denominators produce integer-valued canonical
    // results directly, so that case skips the reduction entirely; anything
    // else falls through to the reducing operators.
    fn add(&self, other: &Self) -> Self {
        if self.denom().is_one() && other.denom().is_one() {
            Rational::new_raw(self.numer() + other.numer(), BigInt::one())
        } else {
            self + other
        }
    }
    fn sub(&self, other: &Self) -> Self {
        if self.denom().is_one() && other.denom().is_one() {
            Rational::new_raw(self.numer() - other.numer(), BigInt::one())
        } else {
            self - other
        }
    }
    fn mul(&self, other: &Self) -> Self {
        if self.denom().is_one() && other.denom().is_one() {
            Rational::new_raw(self.numer() * other.numer(), BigInt::one())
        } else {
            self * other
        }
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn from_rat(q: &Rational) -> Self {
        q.clone()
    }
    fn scale_rat(&self, q: &Rational) -> Self {
        if self.denom().is_one() && q.denom().is_one() {
            Rational::new_raw(self.numer() * q.numer(), BigInt::one())
        } else {
            self * q
        }
    }
}

/// `p/q` as an exact rational.  Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as an exact rational.
pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Nearest `f64` to an exact rational (for float-mode evaluation only).
pub fn rat_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Out-of-range magnitudes collapse to signed infinity.
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Canonical `p/q` form with the denominator always shown, e.g. `-3/2`, `5/1`.
pub fn rat_display(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parse an exact rational from `p/q`, an integer literal, or a base-10
/// decimal literal (converted exactly, e.g. `1.25` -> `5/4`).
pub fn parse_rational(s: &str) -> Result<Rational, RingError> {
    let s = s.trim();
    let bad = || RingError::BadRational(s.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(RingError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let (sign, digits) = match int_part.as_bytes().first() {
            Some(b'-') => (-1, &int_part[1..]),
            Some(b'+') => (1, &int_part[1..]),
            _ => (1, int_part),
        };
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole = if digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(digits).map_err(|_| bad())?
        };
        let frac = BigInt::from_str(frac_part).map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let value = Rational::new(whole * &scale + frac, scale);
        return Ok(if sign < 0 { -value } else { value });
    }
    let n = BigInt::from_str(s).map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Rising factorial (Pochhammer symbol) `(a)_k = a (a+1) ... (a+k-1)` over any
/// coefficient ring; `(a)_0 = 1`.
pub fn pochhammer<R: Ring>(a: &R, k: usize) -> R {
    let mut acc = R::one();
    for j in 0..k {
        acc = acc.mul(&a.add(&R::from_int(j as i64)));
    }
    acc
}

/// Rising factorial over the rationals.
pub fn pochhammer_rat(a: &Rational, k: usize) -> Rational {
    pochhammer::<Rational>(a, k)
}
