//! Dense univariate polynomials over an arbitrary coefficient ring.
//!
//! Coefficients are stored in ascending power order with trailing zeros
//! stripped; the zero polynomial has an empty coefficient vector and its
//! degree is the distinguished sentinel `None`, never `-1`.
//!
//! Each polynomial carries a variable label (`"x"`, `"eta"`, `"alpha"`, ...).
//! Arithmetic between polynomials in different labeled variables is a
//! reported error; the empty label `""` denotes a variable-agnostic constant
//! (the ring's `zero()`/`one()` must be nullary, so they carry no label) and
//! unifies with anything.
//!
//! `Poly<R>` itself implements [`Ring`], which is how the nested symbolic
//! rings `Q[alpha]`, `Q[alpha][beta]` and `Q[g][h]` are built.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::PolyError;
use crate::ring::{rat_to_f64, Rational, Ring};

/// Variable label.  The empty string is the "unlabeled constant" sentinel.
pub type Var = &'static str;

pub const VAR_X: Var = "x";
pub const VAR_ETA: Var = "eta";
pub const VAR_ALPHA: Var = "alpha";
pub const VAR_BETA: Var = "beta";
pub const VAR_G: Var = "g";
pub const VAR_H: Var = "h";
pub const VAR_S: Var = "s";
pub const VAR_U: Var = "u";

#[derive(Clone)]
pub struct Poly<R: Ring> {
    var: Var,
    /// Ascending powers, no trailing zeros.
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    /// Polynomial from ascending coefficients; trailing zeros are stripped.
    pub fn new(var: Var, coeffs: Vec<R>) -> Self {
        let mut p = Poly { var, coeffs };
        p.normalize();
        p
    }

    /// The zero polynomial in a labeled variable.
    pub fn zero_in(var: Var) -> Self {
        Poly { var, coeffs: Vec::new() }
    }

    /// Variable-agnostic constant.
    pub fn constant(c: R) -> Self {
        Poly::new("", vec![c])
    }

    /// The monomial `c * var^k`.
    pub fn monomial(var: Var, c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(var, coeffs)
    }

    /// The identity polynomial `var`.
    pub fn gen(var: Var) -> Self {
        Poly::monomial(var, R::one(), 1)
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Relabel the variable (the coefficients are untouched).
    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    /// Degree, with `None` as the zero-polynomial sentinel.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `true` when the polynomial has no term of positive degree.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Ascending coefficients (no trailing zeros).
    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `var^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// Leading coefficient; `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    fn unify_vars(&self, other: &Self) -> Result<Var, PolyError> {
        match (self.var, other.var) {
            (a, b) if a == b => Ok(a),
            ("", b) => Ok(b),
            (a, "") => Ok(a),
            (a, b) => Err(PolyError::VarMismatch {
                left: a.to_string(),
                right: b.to_string(),
            }),
        }
    }

    /// Sum, reporting a variable-label mismatch as an error.
    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        let var = self.unify_vars(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = other.coeffs.get(k);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Ok(Poly::new(var, coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&other.neg())
    }

    /// Product, reporting a variable-label mismatch as an error.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        let var = self.unify_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero_in(var));
        }
        let mut coeffs = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Ok(Poly::new(var, coeffs))
    }

    pub fn neg(&self) -> Self {
        Poly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Multiply by a coefficient-ring scalar.
    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Poly::zero_in(self.var);
        }
        Poly::new(self.var, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Formal derivative with respect to the polynomial variable.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero_in(self.var);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&R::from_int(k as i64)))
            .collect();
        Poly::new(self.var, coeffs)
    }

    /// `p(scale * v + offset)` by Horner's scheme; the result is a polynomial
    /// in the same variable.
    pub fn substitute_affine(&self, scale: &R, offset: &R) -> Self {
        let inner = Poly::new(self.var, vec![offset.clone(), scale.clone()]);
        let mut acc = Poly::zero_in(self.var);
        for c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(&inner)
                .and_then(|p| p.checked_add(&Poly::constant(c.clone())))
                .expect("same-variable arithmetic cannot mismatch");
        }
        acc
    }

    /// Exact evaluation at a ring element (Horner).
    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// `p^k` by repeated squaring.
    pub fn pow(&self, k: usize) -> Self {
        let mut result = Poly::constant(R::one()).with_var(self.var);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.checked_mul(&base).expect("same variable");
            }
            base = base.checked_mul(&base).expect("same variable");
            k >>= 1;
        }
        result
    }

    /// Apply a map to every coefficient (e.g. embed into a larger ring).
    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.var, self.coeffs.iter().map(f).collect())
    }

    /// `self = c * other` for some nonzero constant `c` of the coefficient
    /// ring (the zero polynomial is collinear only with zero).  Decided by
    /// cross-scaling with the leading coefficients, which is exact over the
    /// zero-divisor-free rings used here.
    pub fn collinear_with(&self, other: &Self) -> bool {
        match (self.degree(), other.degree()) {
            (None, None) => true,
            (Some(a), Some(b)) if a == b => {
                let lhs = self.scale(other.leading().expect("nonzero"));
                let rhs = other.scale(self.leading().expect("nonzero"));
                lhs == rhs
            }
            _ => false,
        }
    }
}

impl<R: Ring> PartialEq for Poly<R> {
    fn eq(&self, other: &Self) -> bool {
        if self.coeffs != other.coeffs {
            return false;
        }
        // Constants compare equal across labels; non-constants need the same
        // variable (or one unlabeled side).
        self.var == other.var
            || self.var.is_empty()
            || other.var.is_empty()
            || self.coeffs.len() <= 1
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]{:?}", self.var, self.coeffs)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let var = if self.var.is_empty() { "_" } else { self.var };
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{var}")?,
                _ => write!(f, "({c})*{var}^{k}")?,
            }
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a, 'b, R: Ring> $trait<&'b Poly<R>> for &'a Poly<R> {
            type Output = Poly<R>;
            fn $method(self, rhs: &'b Poly<R>) -> Poly<R> {
                self.$checked(rhs).expect("polynomial variable mismatch")
            }
        }
        impl<R: Ring> $trait<Poly<R>> for Poly<R> {
            type Output = Poly<R>;
            fn $method(self, rhs: Poly<R>) -> Poly<R> {
                self.$checked(&rhs).expect("polynomial variable mismatch")
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::neg(&self)
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly { var: "", coeffs: Vec::new() }
    }
    fn one() -> Self {
        Poly::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("polynomial variable mismatch")
    }
    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("polynomial variable mismatch")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("polynomial variable mismatch")
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn from_int(n: i64) -> Self {
        if n == 0 {
            Ring::zero()
        } else {
            Poly::constant(R::from_int(n))
        }
    }
    fn from_rat(q: &Rational) -> Self {
        if q.numer().bits() == 0 {
            Ring::zero()
        } else {
            Poly::constant(R::from_rat(q))
        }
    }
    fn scale_rat(&self, q: &Rational) -> Self {
        Poly::new(
            self.var,
            self.coeffs.iter().map(|c| c.scale_rat(q)).collect(),
        )
    }
}

// ---------------------------------------------------------------------------
// Division (over coefficient fields).

/// Ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(Self::one() / self)
        }
    }
}

impl<R: Field> Poly<R> {
    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let var = self.unify_vars(divisor)?;
        let lead = divisor.leading().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = lead.inv().ok_or(PolyError::NonInvertibleLeading)?;
        let dn = divisor.coeffs.len() - 1;
        let mut rem = self.clone().with_var(var);
        if rem.coeffs.len() <= dn {
            return Ok((Poly::zero_in(var), rem));
        }
        let mut quot = vec![R::zero(); rem.coeffs.len() - dn];
        while rem.coeffs.len() > dn {
            let k = rem.coeffs.len() - 1 - dn;
            let c = rem.coeffs.last().unwrap().mul(&lead_inv);
            quot[k] = c.clone();
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let t = c.mul(d);
                rem.coeffs[k + i] = rem.coeffs[k + i].sub(&t);
            }
            // The leading term cancels exactly; drop it and any new zeros.
            rem.normalize();
            if rem.coeffs.len() > k + dn {
                // Guard against a non-canceling leading term (cannot happen
                // with exact arithmetic, but keep the loop well-founded).
                rem.coeffs.truncate(k + dn);
                rem.normalize();
            }
        }
        Ok((Poly::new(var, quot), rem))
    }

    /// Exact division; a nonzero remainder is an error.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if let Some(d) = r.degree() {
            return Err(PolyError::NonZeroRemainder { remainder_degree: d });
        }
        Ok(q)
    }
}

// ---------------------------------------------------------------------------
// Rational-coefficient utilities.

impl Poly<Rational> {
    /// Float evaluation (Horner over `f64`).
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    /// Coefficients converted to `f64`, ascending powers.
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rat_to_f64).collect()
    }

    /// Rescale by a positive rational so the coefficients become coprime
    /// integers.  The positive scale preserves the sign of every value the
    /// polynomial takes, which is what sign-based root counting needs.
    pub fn primitive_positive(&self) -> Self {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, Signed, Zero};
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in &self.coeffs {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        let scale = Rational::new(den_lcm.abs(), num_gcd.abs());
        self.scale(&scale)
    }
}

// ---------------------------------------------------------------------------
// Symbolic parameter rings.

/// `Q[alpha]`: rational polynomials in the parameter `alpha`.
pub type AlphaRing = Poly<Rational>;
/// `Q[alpha][beta]`: polynomials in `beta` with `Q[alpha]` coefficients.
pub type AlphaBetaRing = Poly<Poly<Rational>>;
/// `Q[g][h]`: polynomials in `h` with `Q[g]` coefficients.
pub type GhRing = Poly<Poly<Rational>>;

/// The generator `alpha` of `Q[alpha]`.
pub fn alpha_gen() -> AlphaRing {
    Poly::gen(VAR_ALPHA)
}

/// The generator `alpha` embedded in `Q[alpha][beta]`.
pub fn ab_alpha() -> AlphaBetaRing {
    Poly::constant(Poly::gen(VAR_ALPHA)).with_var(VAR_BETA)
}

/// The generator `beta` of `Q[alpha][beta]`.
pub fn ab_beta() -> AlphaBetaRing {
    Poly::gen(VAR_BETA)
}

/// The generator `alpha` embedded in the sheared parameter ring
/// `Q[alpha][s]`, whose outer generator `s` carries `alpha + beta`.
pub fn ab_alpha_sheared() -> AlphaBetaRing {
    Poly::constant(Poly::gen(VAR_ALPHA)).with_var(VAR_S)
}

/// The outer generator `s` of the sheared parameter ring `Q[alpha][s]`.
/// Substituting `beta -> s - alpha` is an invertible change of variables,
/// so a polynomial vanishes in `Q[alpha][s]` exactly when its preimage
/// vanishes in `Q[alpha][beta]`.
pub fn ab_s() -> AlphaBetaRing {
    Poly::gen(VAR_S)
}

/// The generator `g` embedded in `Q[g][h]`.
pub fn gh_g() -> GhRing {
    Poly::constant(Poly::gen(VAR_G)).with_var(VAR_H)
}

/// The generator `h` of `Q[g][h]`.
pub fn gh_h() -> GhRing {
    Poly::gen(VAR_H)
}
