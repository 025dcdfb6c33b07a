//! Classical generalized Laguerre and Jacobi polynomials, built from their
//! terminating hypergeometric expansions with exact coefficients.
//!
//! The Jacobi expansion is written with the Pochhammer quotient
//! `(alpha+1)_n / (alpha+1)_k` carried out symbolically as the trailing
//! product `(alpha+k+1)(alpha+k+2)...(alpha+n)`, so no coefficient-ring
//! division ever occurs and symbolic parameters work unchanged:
//!
//! `L_n^(a)(x)   = sum_k [(-n)_k / (n! k!)] (a+k+1)_{n-k} x^k`
//! `P_n^(a,b)(x) = sum_k [(-n)_k (n+a+b+1)_k (a+k+1)_{n-k} / (n! k!)] ((1-x)/2)^k`
//!
//! By convention index `n = -1` denotes the zero polynomial; anything below
//! that is rejected.

use num_traits::{Signed, ToPrimitive};

use crate::error::ClassicalError;
use crate::poly::{Poly, Var};
use crate::ring::{factorial, pochhammer_rat, rat, rat_int, Rational, Ring};

/// Orthogonal polynomial family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Laguerre,
    Jacobi,
}

fn check_degree(n: i64) -> Result<Option<usize>, ClassicalError> {
    match n {
        -1 => Ok(None),
        n if n < -1 => Err(ClassicalError::DegreeBelowMinusOne(n)),
        n => Ok(Some(n as usize)),
    }
}

/// Generalized Laguerre polynomial `L_n^(alpha)` over any coefficient ring.
pub fn laguerre_poly_in<R: Ring>(
    n: i64,
    alpha: &R,
    var: Var,
) -> Result<Poly<R>, ClassicalError> {
    let n = match check_degree(n)? {
        None => return Ok(Poly::zero_in(var)),
        Some(n) => n,
    };
    let n_fact = Rational::from_integer(factorial(n as u64));
    // (-n)_k / (n! k!) is rational; (alpha+k+1)_{n-k} lives in the ring and
    // is maintained as a downward product chain, one linear factor per step.
    let tails = descending_factor_chain(alpha, n);
    let mut coeffs = Vec::with_capacity(n + 1);
    for (k, tail) in tails.iter().enumerate() {
        let num = pochhammer_rat(&rat_int(-(n as i64)), k);
        let den = &n_fact * Rational::from_integer(factorial(k as u64));
        let scalar = num / den;
        coeffs.push(tail.scale_rat(&scalar));
    }
    Ok(Poly::new(var, coeffs))
}

/// `chain[k] = (alpha+k+1)_{n-k}` for `k = 0..=n`, built from the top down
/// with one ring multiplication per entry.
fn descending_factor_chain<R: Ring>(alpha: &R, n: usize) -> Vec<R> {
    let mut chain = vec![R::one(); n + 1];
    for k in (0..n).rev() {
        chain[k] = alpha.add(&R::from_int(k as i64 + 1)).mul(&chain[k + 1]);
    }
    chain
}

/// Generalized Laguerre polynomial with exact rational parameter.
pub fn laguerre_poly(
    n: i64,
    alpha: &Rational,
    var: Var,
) -> Result<Poly<Rational>, ClassicalError> {
    laguerre_poly_in(n, alpha, var)
}

/// Jacobi polynomial `P_n^(alpha,beta)` over any coefficient ring.
///
/// With symbolic parameters the construction is valid identically; with
/// degenerate numeric parameters (negative integer `alpha` close to `-n`)
/// the nominal degree can drop — use [`jacobi_poly`] for the guarded
/// rational-parameter entry point.
pub fn jacobi_poly_in<R: Ring>(
    n: i64,
    alpha: &R,
    beta: &R,
    var: Var,
) -> Result<Poly<R>, ClassicalError> {
    let n = match check_degree(n)? {
        None => return Ok(Poly::zero_in(var)),
        Some(n) => n,
    };
    // Assemble the expansion in u = (1-x)/2 and substitute the argument
    // power-by-power.  The u-powers have plain rational coefficients, so
    // accumulating `term_k * u^k` touches each ring element once with a
    // small rational scalar; a Horner loop in `u` would instead rescale the
    // whole accumulated sum at every step, which is ruinous for
    // large-coefficient rings (symbolic parameters).
    let in_u = jacobi_poly_in_u(n as i64, alpha, beta, var)?;
    let u = Poly::new(var, vec![crate::ring::rat(1, 2), crate::ring::rat(-1, 2)]);
    let mut u_pow: Poly<Rational> = Poly::constant(Rational::one()).with_var(var);
    let mut acc: Vec<R> = vec![R::zero(); n + 1];
    for (k, term) in in_u.coeffs().iter().enumerate() {
        if k > 0 {
            u_pow = &u_pow * &u;
        }
        for (j, c) in u_pow.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc[j] = acc[j].add(&term.scale_rat(c));
            }
        }
    }
    Ok(Poly::new(var, acc))
}

/// Jacobi polynomial in the shifted argument `u = (1-x)/2`, over any ring:
///
/// `P_n^(a,b)(1 - 2u) = sum_k [(-n)_k (n+a+b+1)_k (a+k+1)_{n-k} / (n! k!)] u^k`
///
/// Exactly [`jacobi_poly_in`] composed with `x -> 1 - 2u`, assembled
/// monomial-by-monomial (the argument substitution is affine, hence
/// invertible: the polynomial vanishes in `u` exactly when it vanishes in
/// `x`).  For symbolic parameters this form is much lighter than the `x`
/// expansion: the two factor chains each stay univariate and no binomial
/// re-expansion of the argument powers occurs.
pub fn jacobi_poly_in_u<R: Ring>(
    n: i64,
    alpha: &R,
    beta: &R,
    var: Var,
) -> Result<Poly<R>, ClassicalError> {
    let n = match check_degree(n)? {
        None => return Ok(Poly::zero_in(var)),
        Some(n) => n,
    };
    let n_fact = Rational::from_integer(factorial(n as u64));
    let apb = alpha.add(beta);
    let tails = descending_factor_chain(alpha, n);
    let mut rising = R::one(); // (apb + n + 1)_k, one factor per step
    let mut coeffs = Vec::with_capacity(n + 1);
    for (k, tail) in tails.iter().enumerate() {
        if k > 0 {
            rising = rising.mul(&apb.add(&R::from_int(n as i64 + k as i64)));
        }
        let num = pochhammer_rat(&rat_int(-(n as i64)), k);
        let den = &n_fact * Rational::from_integer(factorial(k as u64));
        let scalar = num / den;
        coeffs.push(rising.mul(tail).scale_rat(&scalar));
    }
    Ok(Poly::new(var, coeffs))
}

/// `n!` times [`jacobi_poly_in_u`]: the coefficient of `u^k` is
/// `(-1)^k C(n,k) (n+a+b+1)_k (a+k+1)_{n-k}`.
///
/// The `1/(n! k!)` scalars of the plain expansion collapse into the signed
/// binomial, so no coefficient ever carries a denominator; over big
/// coefficient rings that removes the fraction-normalization cost from
/// every multiply.  Scaling by the positive constant `n!` preserves
/// vanishing, degree, and roots, so zero checks run on this form directly.
pub fn jacobi_poly_in_u_scaled<R: Ring>(
    n: i64,
    alpha: &R,
    beta: &R,
    var: Var,
) -> Result<Poly<R>, ClassicalError> {
    let n = match check_degree(n)? {
        None => return Ok(Poly::zero_in(var)),
        Some(n) => n,
    };
    let apb = alpha.add(beta);
    let tails = descending_factor_chain(alpha, n);
    let mut rising = R::one(); // (apb + n + 1)_k, one factor per step
    let mut binom = Rational::one(); // (-n)_k / k! = (-1)^k C(n,k)
    let mut coeffs = Vec::with_capacity(n + 1);
    for (k, tail) in tails.iter().enumerate() {
        if k > 0 {
            rising = rising.mul(&apb.add(&R::from_int(n as i64 + k as i64)));
            binom = &binom * rat(k as i64 - 1 - n as i64, k as i64);
        }
        coeffs.push(rising.mul(tail).scale_rat(&binom));
    }
    Ok(Poly::new(var, coeffs))
}

/// Jacobi polynomial with exact rational parameters.
///
/// Rejects `alpha` a negative integer with `|alpha| <= n`: there the
/// expansion's leading terms cancel and the polynomial degenerates.
pub fn jacobi_poly(
    n: i64,
    alpha: &Rational,
    beta: &Rational,
    var: Var,
) -> Result<Poly<Rational>, ClassicalError> {
    if n >= 0 && alpha.is_integer() && alpha.is_negative() {
        if let Some(a) = alpha.to_integer().to_i64() {
            if -a <= n {
                return Err(ClassicalError::DegenerateAlpha {
                    alpha: crate::ring::rat_display(alpha),
                    n,
                });
            }
        }
    }
    jacobi_poly_in(n, alpha, beta, var)
}

/// `d/dx L_n^(alpha) + L_{n-1}^(alpha+1)` over `Q[alpha]`; identically zero.
pub fn laguerre_forward_shift_residual(
    n: i64,
    var: Var,
) -> Result<Poly<crate::poly::AlphaRing>, ClassicalError> {
    let a = crate::poly::alpha_gen();
    let p = laguerre_poly_in(n, &a, var)?;
    let q = laguerre_poly_in(n - 1, &a.add(&Ring::one()), var)?;
    Ok(&p.derivative() + &q)
}

/// `d/dx P_n^(alpha,beta) - (n+alpha+beta+1)/2 * P_{n-1}^(alpha+1,beta+1)`
/// over `Q[alpha][beta]`; identically zero.
pub fn jacobi_forward_shift_residual(
    n: i64,
    var: Var,
) -> Result<Poly<crate::poly::AlphaBetaRing>, ClassicalError> {
    let a = crate::poly::ab_alpha();
    let b = crate::poly::ab_beta();
    let p = jacobi_poly_in(n, &a, &b, var)?;
    let q = jacobi_poly_in(n - 1, &a.add(&Ring::one()), &b.add(&Ring::one()), var)?;
    let factor = a.add(&b).add(&crate::poly::AlphaBetaRing::from_int(n + 1));
    Ok(&p.derivative() - &q.scale(&factor).scale_rat(&crate::ring::rat(1, 2)))
}

fn poch_f64(a: f64, k: usize) -> f64 {
    (0..k).map(|j| a + j as f64).product()
}

/// `|P_n^(alpha,beta)(1 - 2x/beta) - L_n^(alpha)(x)|` in floating point.
///
/// The Jacobi value is computed from the expansion in powers of `x/beta`
/// (the exact image of `(1-z)/2` under `z = 1 - 2x/beta`), the Laguerre value
/// from the exact rational construction.  The gap decays like `1/beta`.
pub fn jacobi_laguerre_limit_error(
    n: i64,
    alpha: &Rational,
    beta: f64,
    x: f64,
) -> Result<f64, ClassicalError> {
    let deg = match check_degree(n)? {
        None => return Ok(0.0),
        Some(d) => d,
    };
    let a = crate::ring::rat_to_f64(alpha);
    let n_fact = factorial(deg as u64).to_f64().unwrap();
    let mut jac = 0.0;
    for k in 0..=deg {
        let scalar = poch_f64(-(deg as f64), k) / (n_fact * factorial(k as u64).to_f64().unwrap());
        let rising = poch_f64(deg as f64 + a + beta + 1.0, k);
        let tail = poch_f64(a + k as f64 + 1.0, deg - k);
        jac += scalar * rising * tail * (x / beta).powi(k as i32);
    }
    let lag = laguerre_poly(n, alpha, crate::poly::VAR_X)?.eval_f64(x);
    Ok((jac - lag).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::pochhammer;
    use crate::poly::{alpha_gen, Poly, VAR_X};
    use crate::ring::{rat, rat_int};
    use crate::sturm::{sturm_count_roots, Bound};

    #[test]
    fn laguerre_small_cases() {
        // L_2^(0) = 1 - 2x + x^2/2
        let l2 = laguerre_poly(2, &rat_int(0), VAR_X).unwrap();
        assert_eq!(
            l2,
            Poly::new(VAR_X, vec![rat_int(1), rat_int(-2), rat(1, 2)])
        );
        // L_1^(3/2)(1/2) = 1 + 3/2 - 1/2 = 2
        let l1 = laguerre_poly(1, &rat(3, 2), VAR_X).unwrap();
        assert_eq!(l1.eval(&rat(1, 2)), rat_int(2));
        // n = -1 is the zero polynomial; below that is rejected.
        assert!(laguerre_poly(-1, &rat_int(0), VAR_X).unwrap().is_zero());
        assert!(laguerre_poly(-2, &rat_int(0), VAR_X).is_err());
    }

    #[test]
    fn laguerre_derivative_is_forward_shift() {
        let l2 = laguerre_poly(2, &rat_int(0), VAR_X).unwrap();
        let l1 = laguerre_poly(1, &rat_int(1), VAR_X).unwrap();
        assert_eq!(l2.derivative(), l1.neg());
    }

    #[test]
    fn laguerre_leading_coefficient() {
        // Leading coefficient is (-1)^n / n!, independent of alpha.
        for n in 0..=6i64 {
            let p = laguerre_poly_in(n, &alpha_gen(), VAR_X).unwrap();
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let expected = rat(sign, factorial(n as u64).to_i64().unwrap());
            assert_eq!(p.leading().unwrap(), &Poly::constant(expected));
        }
    }

    #[test]
    fn jacobi_degree_one_symbolic() {
        // P_1^(a,b) = (a+1) - (a+b+2)(1-x)/2 = (a-b)/2 + (a+b+2)/2 x
        let a = crate::poly::ab_alpha();
        let b = crate::poly::ab_beta();
        let p = jacobi_poly_in(1, &a, &b, VAR_X).unwrap();
        let half = rat(1, 2);
        let c0 = a.sub(&b).scale_rat(&half);
        let c1 = a.add(&b).add(&Ring::from_int(2)).scale_rat(&half);
        assert_eq!(p.coeff(0), c0);
        assert_eq!(p.coeff(1), c1);
    }

    #[test]
    fn scaled_shifted_build_is_n_factorial_times_the_plain_one() {
        use crate::poly::VAR_U;
        // Rational parameters, n up to 8.
        let (a, b) = (rat(1, 3), rat(5, 2));
        for n in -1..=8i64 {
            let plain = jacobi_poly_in_u(n, &a, &b, VAR_U).unwrap();
            let scaled = jacobi_poly_in_u_scaled(n, &a, &b, VAR_U).unwrap();
            let n_fact = Rational::from_integer(factorial(n.max(0) as u64));
            assert_eq!(scaled, plain.scale_rat(&n_fact), "n = {n}");
        }
        // Symbolic parameters, n up to 5.
        let a = crate::poly::ab_alpha();
        let b = crate::poly::ab_beta();
        for n in 0..=5i64 {
            let plain = jacobi_poly_in_u(n, &a, &b, VAR_U).unwrap();
            let scaled = jacobi_poly_in_u_scaled(n, &a, &b, VAR_U).unwrap();
            let n_fact = Rational::from_integer(factorial(n as u64));
            assert_eq!(scaled, plain.scale_rat(&n_fact), "n = {n}");
        }
    }

    #[test]
    fn jacobi_leading_coefficient() {
        // Leading coefficient is (n+a+b+1)_n / (2^n n!).
        for n in 1..=5i64 {
            let a = crate::poly::ab_alpha();
            let b = crate::poly::ab_beta();
            let p = jacobi_poly_in(n, &a, &b, VAR_X).unwrap();
            let base = a.add(&b).add(&Ring::from_int(n + 1));
            let expected = pochhammer(&base, n as usize).scale_rat(&Rational::new(
                1.into(),
                num_bigint::BigInt::from(2).pow(n as u32) * factorial(n as u64),
            ));
            assert_eq!(p.leading().unwrap(), &expected);
        }
    }

    #[test]
    fn jacobi_chebyshev_roots() {
        // P_2^(-1/2,-1/2) is proportional to cos(2 arccos x): two roots in (-1,1).
        let p = jacobi_poly(2, &rat(-1, 2), &rat(-1, 2), VAR_X).unwrap();
        let n = sturm_count_roots(
            &p,
            &Bound::finite(rat_int(-1)),
            &Bound::finite(rat_int(1)),
        )
        .unwrap();
        assert_eq!(n, 2);
    }

    #[test]
    fn jacobi_degenerate_alpha_rejected() {
        assert!(matches!(
            jacobi_poly(2, &rat_int(-1), &rat(1, 2), VAR_X),
            Err(ClassicalError::DegenerateAlpha { .. })
        ));
        assert!(matches!(
            jacobi_poly(2, &rat_int(-2), &rat(1, 2), VAR_X),
            Err(ClassicalError::DegenerateAlpha { .. })
        ));
        // |alpha| > n is fine.
        assert!(jacobi_poly(2, &rat_int(-3), &rat(1, 2), VAR_X).is_ok());
    }

    #[test]
    fn forward_shift_residuals_vanish() {
        for n in 0..=8 {
            assert!(laguerre_forward_shift_residual(n, VAR_X).unwrap().is_zero());
            assert!(jacobi_forward_shift_residual(n, VAR_X).unwrap().is_zero());
        }
    }

    #[test]
    fn reflection_swaps_parameters() {
        // P_n^(a,b)(-x) = (-1)^n P_n^(b,a)(x)
        for n in 0..=5 {
            let a = crate::poly::ab_alpha();
            let b = crate::poly::ab_beta();
            let p = jacobi_poly_in(n, &a, &b, VAR_X).unwrap();
            let reflected = p.substitute_affine(&Ring::from_int(-1), &Ring::zero());
            let swapped = jacobi_poly_in(n, &b, &a, VAR_X).unwrap();
            let expected = if n % 2 == 0 { swapped } else { swapped.neg() };
            assert_eq!(reflected, expected);
        }
    }

    #[test]
    fn pointwise_limit_toward_laguerre() {
        // n=1, alpha=0, x=2: P_1^(0,beta)(1-4/beta) = 1 - (beta+2) 2/beta.
        let err = jacobi_laguerre_limit_error(1, &rat_int(0), 100.0, 2.0).unwrap();
        assert!(err < 10.0 * (1.0 + 0.0 + 1.0) / 100.0, "err = {err}");
        assert!((err - 0.04).abs() < 1e-12);
        // Doubling beta halves the error (O(1/beta)).
        let e1 = jacobi_laguerre_limit_error(2, &rat(1, 2), 1.0e6, 1.0).unwrap();
        let e2 = jacobi_laguerre_limit_error(2, &rat(1, 2), 2.0e6, 1.0).unwrap();
        let ratio = e1 / e2;
        assert!((1.8..=2.2).contains(&ratio), "ratio = {ratio}");
        assert!(e1 < 1e-4);
        // n = 0 is exact.
        assert_eq!(jacobi_laguerre_limit_error(0, &rat(1, 2), 10.0, 1.0).unwrap(), 0.0);
    }
}
