//! Exact counting of distinct real roots in an open interval via Sturm
//! chains over the rationals.
//!
//! Chain elements are rescaled to coprime integer coefficients by a positive
//! rational after every remainder step (a positive rescale changes no signs),
//! which keeps the big-integer coefficients from blowing up along the chain.

use num_traits::Signed;

use crate::error::PolyError;
use crate::poly::Poly;
use crate::ring::{Rational, Ring};

/// Endpoint of an open interval on the real line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    pub fn finite(q: Rational) -> Self {
        Bound::Finite(q)
    }

    /// Float image of the bound (infinities map to `f64` infinities).
    pub fn to_f64(&self) -> f64 {
        match self {
            Bound::NegInf => f64::NEG_INFINITY,
            Bound::Finite(q) => crate::ring::rat_to_f64(q),
            Bound::PosInf => f64::INFINITY,
        }
    }
}

fn sign_rat(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `p` at a bound: at finite points by evaluation, at infinity from
/// the leading coefficient and the degree parity.
fn sign_at(p: &Poly<Rational>, at: &Bound) -> i8 {
    match at {
        Bound::Finite(q) => sign_rat(&p.eval(q)),
        Bound::PosInf => p.leading().map_or(0, sign_rat),
        Bound::NegInf => match (p.leading(), p.degree()) {
            (Some(lead), Some(d)) => {
                let s = sign_rat(lead);
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            _ => 0,
        },
    }
}

/// Sturm chain of `p`: starts with the primitive parts of `p` and `p'`, then
/// repeatedly takes the negated Euclidean remainder, stripping content each
/// step.  Ends just before the zero polynomial.
pub fn sturm_chain(p: &Poly<Rational>) -> Vec<Poly<Rational>> {
    let mut chain = Vec::new();
    let s0 = p.primitive_positive();
    let s1 = s0.derivative().primitive_positive();
    chain.push(s0);
    if s1.is_zero() {
        return chain;
    }
    chain.push(s1);
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2]
            .div_rem(&chain[n - 1])
            .expect("chain divisor is nonzero by construction");
        if r.is_zero() {
            return chain;
        }
        chain.push(r.neg().primitive_positive());
    }
}

fn sign_changes(chain: &[Poly<Rational>], at: &Bound) -> usize {
    let mut changes = 0;
    let mut prev = 0i8;
    for p in chain {
        let s = sign_at(p, at);
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            changes += 1;
        }
        prev = s;
    }
    changes
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
///
/// Multiple roots are counted once.  Roots at a finite endpoint are excluded
/// exactly (the corresponding linear factor is divided out first).  The zero
/// polynomial is rejected.
pub fn sturm_count_roots(
    p: &Poly<Rational>,
    lo: &Bound,
    hi: &Bound,
) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let mut p = p.clone();
    for bound in [lo, hi] {
        if let Bound::Finite(c) = bound {
            let linear = Poly::new(p.var(), vec![c.neg(), Rational::one()]);
            while !p.is_constant() && Ring::is_zero(&p.eval(c)) {
                p = p.div_exact(&linear)?;
            }
        }
    }
    if p.is_constant() {
        return Ok(0);
    }
    let chain = sturm_chain(&p);
    let at_lo = sign_changes(&chain, lo);
    let at_hi = sign_changes(&chain, hi);
    Ok(at_lo.saturating_sub(at_hi))
}
