//! Exact residual constructions for the cubic three-factor identities of the
//! Laguerre and Jacobi families, the linear contiguity relations they factor
//! through, and the confluence that carries the Jacobi identity into the
//! Laguerre one.  Every residual here is built in exact rational (or
//! polynomial-coefficient) arithmetic; the contract in each case is that the
//! assembled residual is the literal zero polynomial.
//!
//! The deformed-potential counterpart — the shape-invariance residual in the
//! `eta` variable and its floating-point pointwise oracle — lives in
//! [`shape`].

pub mod shape;

use crate::classical::{jacobi_poly_in, jacobi_poly_in_u_scaled, laguerre_poly_in};
use crate::poly::{
    ab_alpha, ab_alpha_sheared, ab_beta, ab_s, alpha_gen, AlphaBetaRing, AlphaRing, Poly, Var,
    VAR_U, VAR_X,
};
use crate::ring::{rat, rat_int, Rational, Ring};

// ---------------------------------------------------------------------------
// Linear contiguity relations.

/// Tags for the four linear contiguity relations between classical
/// polynomials of neighbouring degree and neighbouring parameters.  The first
/// two involve Laguerre polynomials and a single parameter `alpha`; the last
/// two involve Jacobi polynomials and both `alpha` and `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LemmaId {
    /// `L_n^(a-1) + L_{n-1}^(a) = L_n^(a)`.
    A,
    /// `x L_{n-1}^(a+1) - a L_{n-1}^(a) = -n L_n^(a-1)`.
    B,
    /// `2(a-1) P_n^(a-1,b) - (n+a+b)(1-x) P_{n-1}^(a,b+1) = 2(n+a-1) P_n^(a-2,b+1)`.
    C,
    /// `2(b+1) P_n^(a-1,b+1) + (n+a+b+1)(1+x) P_{n-1}^(a,b+2) = 2(n+b+1) P_n^(a,b)`.
    D,
}

impl LemmaId {
    pub const ALL: [LemmaId; 4] = [LemmaId::A, LemmaId::B, LemmaId::C, LemmaId::D];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::A => "A",
            LemmaId::B => "B",
            LemmaId::C => "C",
            LemmaId::D => "D",
        }
    }

    /// Whether the relation involves the second parameter `beta`.
    pub fn takes_beta(self) -> bool {
        matches!(self, LemmaId::C | LemmaId::D)
    }
}

/// Left-hand side minus right-hand side of the tagged contiguity relation,
/// expanded over an arbitrary coefficient ring.  `beta` is required for the
/// Jacobi relations and ignored by the Laguerre ones.
pub fn lemma_residual_in<R: Ring>(
    id: LemmaId,
    n: i64,
    alpha: &R,
    beta: Option<&R>,
    var: Var,
) -> Poly<R> {
    assert!(n >= 0, "contiguity relations are stated for degree n >= 0");
    let lag = |deg: i64, a: &R| laguerre_poly_in(deg, a, var).expect("degree >= -1");
    let jac = |deg: i64, a: &R, b: &R| jacobi_poly_in(deg, a, b, var).expect("degree >= -1");
    let shift = |c: &R, k: i64| c.add(&R::from_int(k));
    match id {
        LemmaId::A => {
            let sum = &lag(n, &shift(alpha, -1)) + &lag(n - 1, alpha);
            &sum - &lag(n, alpha)
        }
        LemmaId::B => {
            let x_term = Poly::new(var, vec![R::zero(), R::one()]);
            let lhs = &(&x_term * &lag(n - 1, &shift(alpha, 1)))
                - &lag(n - 1, alpha).scale(alpha);
            &lhs + &lag(n, &shift(alpha, -1)).scale(&R::from_int(n))
        }
        LemmaId::C => {
            let beta = beta.expect("this contiguity relation involves beta");
            let one_minus_x = Poly::new(var, vec![R::one(), R::from_int(-1)]);
            let n_a_b = shift(&alpha.add(beta), n);
            let lhs = &jac(n, &shift(alpha, -1), beta).scale(&shift(alpha, -1).mul(&R::from_int(2)))
                - &(&one_minus_x * &jac(n - 1, alpha, &shift(beta, 1))).scale(&n_a_b);
            let rhs_coeff = shift(alpha, n - 1).mul(&R::from_int(2));
            &lhs - &jac(n, &shift(alpha, -2), &shift(beta, 1)).scale(&rhs_coeff)
        }
        LemmaId::D => {
            let beta = beta.expect("this contiguity relation involves beta");
            let one_plus_x = Poly::new(var, vec![R::one(), R::one()]);
            let n_a_b_1 = shift(&alpha.add(beta), n + 1);
            let lhs = &jac(n, &shift(alpha, -1), &shift(beta, 1))
                .scale(&shift(beta, 1).mul(&R::from_int(2)))
                + &(&one_plus_x * &jac(n - 1, alpha, &shift(beta, 2))).scale(&n_a_b_1);
            let rhs_coeff = shift(beta, n + 1).mul(&R::from_int(2));
            &lhs - &jac(n, alpha, beta).scale(&rhs_coeff)
        }
    }
}

/// Symbolic-parameter mode: the residual over `Q[alpha][beta]` (the Laguerre
/// relations simply never mention `beta`).
pub fn lemma_residual_symbolic(id: LemmaId, n: u32) -> Poly<AlphaBetaRing> {
    lemma_residual_in(id, i64::from(n), &ab_alpha(), Some(&ab_beta()), VAR_X)
}

/// Symbolic-parameter mode in sheared coordinates: the residual with the
/// parameter pair carried as `(alpha, s - alpha)`, so the outer generator
/// `s` stands for `alpha + beta`.  The substitution `beta -> s - alpha` is
/// an invertible change of variables of the two-parameter ring, so this
/// residual is the zero polynomial exactly when the one from
/// [`lemma_residual_symbolic`] is (the tests substitute one into the other
/// to confirm).  Its advantage is speed at large degree: the two factor
/// chains `(alpha+k+1)...(alpha+n)` and `(alpha+beta+n+1)...` each stay
/// univariate in these coordinates, while in the straight coordinates their
/// products are dense two-variable polynomials.
pub fn lemma_residual_sheared(id: LemmaId, n: u32) -> Poly<AlphaBetaRing> {
    let alpha = ab_alpha_sheared();
    let beta = &ab_s() - &alpha;
    lemma_residual_in(id, i64::from(n), &alpha, Some(&beta), VAR_X)
}

/// The Jacobi relations assembled in the shifted argument `u = (1-x)/2`
/// (where `1 - x = 2u` and `1 + x = 2 - 2u`), over any coefficient ring.
/// The affine argument change is invertible, so the residual vanishes in
/// `u` exactly when [`lemma_residual_in`]'s vanishes in `x`.
/// The two-parameter contiguity residuals in the shifted argument
/// `u = (1-x)/2`, scaled through by `n!` so the denominator-free builds
/// ([`jacobi_poly_in_u_scaled`]) can be combined without ever normalizing a
/// fraction: the degree-`n` terms absorb `n!` directly and the degree-`n-1`
/// term picks up the leftover factor `n`.  The result is `n!` times the
/// stated residual, hence zero exactly when it is.
fn lemma_residual_in_u<R: Ring>(id: LemmaId, n: i64, alpha: &R, beta: &R, var: Var) -> Poly<R> {
    assert!(n >= 0, "contiguity relations are stated for degree n >= 0");
    let jac =
        |deg: i64, a: &R, b: &R| jacobi_poly_in_u_scaled(deg, a, b, var).expect("degree >= -1");
    let shift = |c: &R, k: i64| c.add(&R::from_int(k));
    match id {
        LemmaId::C => {
            let two_u = Poly::new(var, vec![R::zero(), R::from_int(2)]);
            let n_a_b = shift(&alpha.add(beta), n).mul(&R::from_int(n));
            let lhs = &jac(n, &shift(alpha, -1), beta).scale(&shift(alpha, -1).mul(&R::from_int(2)))
                - &(&two_u * &jac(n - 1, alpha, &shift(beta, 1))).scale(&n_a_b);
            let rhs_coeff = shift(alpha, n - 1).mul(&R::from_int(2));
            &lhs - &jac(n, &shift(alpha, -2), &shift(beta, 1)).scale(&rhs_coeff)
        }
        LemmaId::D => {
            let two_minus_two_u = Poly::new(var, vec![R::from_int(2), R::from_int(-2)]);
            let n_a_b_1 = shift(&alpha.add(beta), n + 1).mul(&R::from_int(n));
            let lhs = &jac(n, &shift(alpha, -1), &shift(beta, 1))
                .scale(&shift(beta, 1).mul(&R::from_int(2)))
                + &(&two_minus_two_u * &jac(n - 1, alpha, &shift(beta, 2))).scale(&n_a_b_1);
            let rhs_coeff = shift(beta, n + 1).mul(&R::from_int(2));
            &lhs - &jac(n, alpha, beta).scale(&rhs_coeff)
        }
        LemmaId::A | LemmaId::B => {
            unreachable!("the single-parameter relations have no argument shift to exploit")
        }
    }
}

/// The fastest exact symbolic route, used by degree sweeps: sheared
/// parameters `(alpha, s - alpha)` for all four relations, and additionally
/// the shifted argument `u = (1-x)/2` for the two-parameter relations.
/// Both changes of variables are invertible, so each residual is the zero
/// polynomial exactly when the straight [`lemma_residual_symbolic`] one is;
/// the tests verify the transported objects agree term-by-term.
pub fn lemma_residual_condensed(id: LemmaId, n: u32) -> Poly<AlphaBetaRing> {
    let alpha = ab_alpha_sheared();
    let beta = &ab_s() - &alpha;
    if id.takes_beta() {
        lemma_residual_in_u(id, i64::from(n), &alpha, &beta, VAR_U)
    } else {
        lemma_residual_in(id, i64::from(n), &alpha, Some(&beta), VAR_X)
    }
}

/// Rational-sample mode.  `beta` is required exactly when
/// [`LemmaId::takes_beta`] says so.
pub fn lemma_residual_at(
    id: LemmaId,
    n: u32,
    alpha: &Rational,
    beta: Option<&Rational>,
) -> Poly<Rational> {
    lemma_residual_in(id, i64::from(n), alpha, beta, VAR_X)
}

// ---------------------------------------------------------------------------
// The cubic Laguerre identity.

/// The five summands of the degree-`3 ell` cubic Laguerre identity, in a
/// fixed documented order:
///
/// 1. `-x       L_{l-1}^(a+2) L_l^(a-1) L_l^(a)`
/// 2. `-a       L_{l-1}^(a)   L_l^(a+1) L_l^(a)`
/// 3. `(x+a+1)  L_{l-1}^(a+1) L_l^(a+1) L_l^(a-1)`
/// 4. `x        L_{l-1}^(a)   L_{l-1}^(a+1) L_l^(a+1)`
/// 5. `-x       L_{l-1}^(a+1) L_{l-1}^(a+2) L_l^(a-1)`
///
/// Their sum is the zero polynomial; [`cubic_laguerre_residual_in`] asserts
/// nothing and simply returns that sum so callers can check it.
pub fn cubic_laguerre_terms_in<R: Ring>(ell: i64, alpha: &R, var: Var) -> [Poly<R>; 5] {
    assert!(ell >= 0, "the cubic identity is indexed by ell >= 0");
    let lag = |deg: i64, k: i64| {
        let a = alpha.add(&R::from_int(k));
        laguerre_poly_in(deg, &a, var).expect("degree >= -1")
    };
    let x_term = Poly::new(var, vec![R::zero(), R::one()]);
    let x_a_1 = Poly::new(var, vec![alpha.add(&R::one()), R::one()]);

    let t1 = (&(&x_term * &lag(ell - 1, 2)) * &(&lag(ell, -1) * &lag(ell, 0))).neg();
    let t2 = (&(&lag(ell - 1, 0) * &lag(ell, 1)) * &lag(ell, 0)).scale(&alpha.neg());
    let t3 = &(&x_a_1 * &lag(ell - 1, 1)) * &(&lag(ell, 1) * &lag(ell, -1));
    let t4 = &(&x_term * &lag(ell - 1, 0)) * &(&lag(ell - 1, 1) * &lag(ell, 1));
    let t5 = (&(&x_term * &lag(ell - 1, 1)) * &(&lag(ell - 1, 2) * &lag(ell, -1))).neg();
    [t1, t2, t3, t4, t5]
}

/// Sum of the five summands of the cubic Laguerre identity; contract: zero.
pub fn cubic_laguerre_residual_in<R: Ring>(ell: i64, alpha: &R, var: Var) -> Poly<R> {
    let [t1, t2, t3, t4, t5] = cubic_laguerre_terms_in(ell, alpha, var);
    &(&(&t1 + &t2) + &(&t3 + &t4)) + &t5
}

/// Symbolic-parameter mode: the residual in `x` with `Q[alpha]` coefficients.
/// If it were nonzero it would have degree at most `3 ell` in `x` and
/// `3 ell + 1` in `alpha`.
pub fn cubic_laguerre_residual(ell: u32) -> Poly<AlphaRing> {
    cubic_laguerre_residual_in(i64::from(ell), &alpha_gen(), VAR_X)
}

/// Rational-sample mode of the cubic Laguerre residual.
pub fn cubic_laguerre_residual_at(ell: u32, alpha: &Rational) -> Poly<Rational> {
    cubic_laguerre_residual_in(i64::from(ell), alpha, VAR_X)
}

// ---------------------------------------------------------------------------
// The cubic Jacobi identity.

/// The five summands of the degree-`3 ell` cubic Jacobi identity, in a fixed
/// documented order:
///
/// 1. ` 2(a-1)(1+x)             P_{l-1}^(a-1,b+3) P_l^(a,b)     P_l^(a-1,b+1)`
/// 2. ` 2(b+1)(1-x)             P_{l-1}^(a+1,b+1) P_l^(a-2,b+2) P_l^(a-1,b+1)`
/// 3. `-2(a(1+x) + (b+2)(1-x))  P_{l-1}^(a,b+2)   P_l^(a,b)     P_l^(a-2,b+2)`
/// 4. ` (l+a+b+1)(1-x^2)        P_{l-1}^(a+1,b+1) P_{l-1}^(a,b+2) P_l^(a-2,b+2)`
/// 5. `-(l+a+b+1)(1-x^2)        P_{l-1}^(a,b+2)   P_{l-1}^(a-1,b+3) P_l^(a,b)`
pub fn cubic_jacobi_terms_in<R: Ring>(ell: i64, alpha: &R, beta: &R, var: Var) -> [Poly<R>; 5] {
    assert!(ell >= 0, "the cubic identity is indexed by ell >= 0");
    let jac = |deg: i64, ka: i64, kb: i64| {
        let a = alpha.add(&R::from_int(ka));
        let b = beta.add(&R::from_int(kb));
        jacobi_poly_in(deg, &a, &b, var).expect("degree >= -1")
    };
    let two = R::from_int(2);
    // 2(a-1)(1+x) and 2(b+1)(1-x).
    let pre1 = {
        let c = alpha.sub(&R::one()).mul(&two);
        Poly::new(var, vec![c.clone(), c])
    };
    let pre2 = {
        let c = beta.add(&R::one()).mul(&two);
        Poly::new(var, vec![c.clone(), c.neg()])
    };
    // -2(a(1+x) + (b+2)(1-x)) = -2(a+b+2) - 2(a-b-2) x.
    let pre3 = {
        let s = alpha.add(beta);
        Poly::new(
            var,
            vec![
                s.add(&two).mul(&two).neg(),
                alpha.sub(beta).sub(&two).mul(&two).neg(),
            ],
        )
    };
    // +-(l+a+b+1)(1-x^2).
    let k = alpha.add(beta).add(&R::from_int(ell + 1));
    let pre4 = Poly::new(var, vec![k.clone(), R::zero(), k.neg()]);
    let pre5 = pre4.neg();

    let t1 = &(&pre1 * &jac(ell - 1, -1, 3)) * &(&jac(ell, 0, 0) * &jac(ell, -1, 1));
    let t2 = &(&pre2 * &jac(ell - 1, 1, 1)) * &(&jac(ell, -2, 2) * &jac(ell, -1, 1));
    let t3 = &(&pre3 * &jac(ell - 1, 0, 2)) * &(&jac(ell, 0, 0) * &jac(ell, -2, 2));
    let t4 = &(&pre4 * &jac(ell - 1, 1, 1)) * &(&jac(ell - 1, 0, 2) * &jac(ell, -2, 2));
    let t5 = &(&pre5 * &jac(ell - 1, 0, 2)) * &(&jac(ell - 1, -1, 3) * &jac(ell, 0, 0));
    [t1, t2, t3, t4, t5]
}

/// Sum of the five summands of the cubic Jacobi identity; contract: zero.
pub fn cubic_jacobi_residual_in<R: Ring>(ell: i64, alpha: &R, beta: &R, var: Var) -> Poly<R> {
    let [t1, t2, t3, t4, t5] = cubic_jacobi_terms_in(ell, alpha, beta, var);
    &(&(&t1 + &t2) + &(&t3 + &t4)) + &t5
}

/// Symbolic-parameter mode: the residual in `x` with `Q[alpha][beta]`
/// coefficients.  If it were nonzero it would have degree at most `3 ell` in
/// `x` and `3 ell + 1` in each of `alpha` and `beta`.
pub fn cubic_jacobi_residual(ell: u32) -> Poly<AlphaBetaRing> {
    cubic_jacobi_residual_in(i64::from(ell), &ab_alpha(), &ab_beta(), VAR_X)
}

/// Rational-sample mode of the cubic Jacobi residual.
pub fn cubic_jacobi_residual_at(ell: u32, alpha: &Rational, beta: &Rational) -> Poly<Rational> {
    cubic_jacobi_residual_in(i64::from(ell), alpha, beta, VAR_X)
}

// ---------------------------------------------------------------------------
// Deterministic evaluation grids for the polynomial-identity cross-check.

/// `3 ell + 3` distinct rational values of `alpha` (consecutive positive
/// half-integers).  A nonzero residual polynomial of `alpha`-degree at most
/// `3 ell + 1` cannot vanish at all of them, so exact evaluation over this
/// grid re-proves the symbolic result through the rational-parameter code
/// path.
pub fn laguerre_alpha_grid(ell: u32) -> Vec<Rational> {
    (0..3 * i64::from(ell) + 3).map(|j| rat(2 * j + 1, 2)).collect()
}

/// A `(3 ell + 4) x (3 ell + 4)` grid of distinct `(alpha, beta)` pairs
/// (consecutive positive half-integers on each axis).  A nonzero residual of
/// degree at most `3 ell + 1` in each parameter cannot vanish on the whole
/// grid: vanishing along one full row already forces each `beta`-coefficient
/// to vanish as a polynomial in `alpha`, row by row.
pub fn jacobi_parameter_grid(ell: u32) -> Vec<(Rational, Rational)> {
    let side = 3 * i64::from(ell) + 4;
    let mut grid = Vec::with_capacity((side * side) as usize);
    for i in 0..side {
        for j in 0..side {
            grid.push((rat(2 * i + 1, 2), rat(2 * j + 1, 2)));
        }
    }
    grid
}

/// Degree bound (in `x`) shared by both cubic identities at a given `ell`.
pub fn cubic_degree_bound(ell: u32) -> usize {
    3 * ell as usize
}

// ---------------------------------------------------------------------------
// Residual reporting plumbing.

/// How the parameters of an identity were instantiated for a residual check.
#[derive(Debug, Clone, PartialEq)]
pub enum ParameterMode {
    Symbolic,
    RationalSample {
        alpha: Rational,
        beta: Option<Rational>,
    },
}

/// A checked residual, carried together with enough context to be reported:
/// which identity, at which index (`ell` or `n`), in which parameter mode,
/// and the degree bound that a hypothetical nonzero residual would satisfy.
#[derive(Debug, Clone)]
pub struct ResidualReport<R: Ring> {
    pub identity: String,
    pub index: i64,
    pub mode: ParameterMode,
    pub residual: Poly<R>,
    pub degree_bound: usize,
}

impl<R: Ring> ResidualReport<R> {
    pub fn is_zero(&self) -> bool {
        self.residual.is_zero()
    }
}

// ---------------------------------------------------------------------------
// Confluence of the cubic Jacobi identity into the cubic Laguerre identity.

/// Which straight (Laguerre) summand each transformed (Jacobi) summand
/// converges to.  Under `x -> 1 - 2x/beta` with `beta` large, `(1+x)` tends
/// to `2` while `(beta + const)(1-x)` tends to `2x`; tracking the prefactors
/// through the overall division by `-4` pairs the summands as listed here
/// (0-based: transformed summand `i` matches straight summand
/// `CONFLUENCE_PAIRING[i]`).
pub const CONFLUENCE_PAIRING: [usize; 5] = [1, 0, 2, 4, 3];

/// Gap data for one transformed-summand/straight-summand pair.
#[derive(Debug, Clone)]
pub struct LimitPair {
    pub transformed_index: usize,
    pub straight_index: usize,
    /// Relative coefficient gap at each requested `beta`, in order.
    pub gaps: Vec<f64>,
    /// `gaps[j] / gaps[j+1]` for consecutive `beta` values; for a doubling
    /// ladder of `beta`s and a first-order confluence error this hovers
    /// around 2.
    pub ratios: Vec<f64>,
}

/// Outcome of driving the cubic Jacobi identity into the cubic Laguerre
/// identity: summand-by-summand coefficient gaps at a ladder of `beta`
/// values, plus exactness flags for both full residuals.
#[derive(Debug, Clone)]
pub struct LimitReport {
    pub ell: u32,
    pub alpha: Rational,
    pub betas: Vec<Rational>,
    pub pairs: Vec<LimitPair>,
    /// The transformed Jacobi summands still sum to the zero polynomial at
    /// every finite `beta` (exact arithmetic).
    pub transformed_residual_zero: bool,
    /// The straight Laguerre summands sum to the zero polynomial.
    pub straight_residual_zero: bool,
}

/// Substitutes `x -> 1 - 2x/beta` into the cubic Jacobi summands taken at
/// parameters `(alpha + 1, beta)`, divides by `-4`, and measures how the
/// five transformed summands approach the five cubic Laguerre summands at
/// `alpha` as `beta` runs through `betas`.  All polynomial work is exact;
/// only the final gap measurements are floating point.
pub fn laguerre_limit_of_jacobi_identity(
    ell: u32,
    alpha: &Rational,
    betas: &[Rational],
) -> LimitReport {
    let le = i64::from(ell);
    let straight = cubic_laguerre_terms_in(le, alpha, VAR_X);
    let straight_residual_zero = cubic_laguerre_residual_in(le, alpha, VAR_X).is_zero();
    let shifted_alpha = alpha + &rat_int(1);

    // gaps[i][j]: relative coefficient gap of pair i at betas[j].
    let mut gaps: Vec<Vec<f64>> = vec![Vec::new(); 5];
    let mut transformed_residual_zero = true;
    for beta in betas {
        assert!(
            !Ring::is_zero(beta),
            "the substitution x -> 1 - 2x/beta needs beta != 0"
        );
        let terms = cubic_jacobi_terms_in(le, &shifted_alpha, beta, VAR_X);
        let scale = -rat_int(2) / beta;
        let mut transformed_sum = Poly::zero_in(VAR_X);
        for (i, term) in terms.iter().enumerate() {
            let transformed = term
                .substitute_affine(&scale, &rat_int(1))
                .scale(&rat(-1, 4));
            transformed_sum = &transformed_sum + &transformed;
            gaps[i].push(coefficient_gap(&transformed, &straight[CONFLUENCE_PAIRING[i]]));
        }
        transformed_residual_zero &= transformed_sum.is_zero();
    }

    let pairs = gaps
        .into_iter()
        .enumerate()
        .map(|(i, gaps)| {
            let ratios = gaps
                .windows(2)
                .filter(|w| w[0] > 1e-290 && w[1] > 1e-290)
                .map(|w| w[0] / w[1])
                .collect();
            LimitPair {
                transformed_index: i,
                straight_index: CONFLUENCE_PAIRING[i],
                gaps,
                ratios,
            }
        })
        .collect();

    LimitReport {
        ell,
        alpha: alpha.clone(),
        betas: betas.to_vec(),
        pairs,
        transformed_residual_zero,
        straight_residual_zero,
    }
}

/// Maximum absolute coefficient difference, relative to the straight
/// summand's coefficient scale (floored at 1).
fn coefficient_gap(transformed: &Poly<Rational>, straight: &Poly<Rational>) -> f64 {
    let a = transformed.coeffs_f64();
    let b = straight.coeffs_f64();
    let norm = b.iter().fold(1.0_f64, |m, c| m.max(c.abs()));
    let mut worst = 0.0_f64;
    for k in 0..a.len().max(b.len()) {
        let ca = a.get(k).copied().unwrap_or(0.0);
        let cb = b.get(k).copied().unwrap_or(0.0);
        worst = worst.max((ca - cb).abs());
    }
    worst / norm
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_residuals_vanish_symbolically() {
        for id in LemmaId::ALL {
            for n in 0..=8 {
                let residual = lemma_residual_symbolic(id, n);
                assert!(
                    residual.is_zero(),
                    "relation {} fails at n = {n}: {residual:?}",
                    id.name()
                );
            }
        }
    }

    /// `beta -> s - alpha` applied to one `Q[alpha][beta]` element.
    fn shear_coefficient(c: &AlphaBetaRing, target: &AlphaBetaRing) -> AlphaBetaRing {
        let mut acc: AlphaBetaRing = Poly::zero_in(crate::poly::VAR_S);
        for inner in c.coeffs().iter().rev() {
            acc = &(&acc * target) + &Poly::constant(inner.clone()).with_var(crate::poly::VAR_S);
        }
        acc
    }

    #[test]
    fn sheared_coordinates_are_the_substituted_straight_coordinates() {
        use crate::classical::jacobi_poly_in;

        // On a nonzero object first: a symbolic Jacobi polynomial built in
        // sheared coordinates equals the straight build with beta -> s -
        // alpha substituted coefficient-by-coefficient.
        let target = &ab_s() - &ab_alpha_sheared();
        for n in 0..=6_i64 {
            let straight = jacobi_poly_in(n, &ab_alpha(), &ab_beta(), VAR_X).unwrap();
            let direct = jacobi_poly_in(n, &ab_alpha_sheared(), &target, VAR_X).unwrap();
            let resheared = Poly::new(
                VAR_X,
                straight
                    .coeffs()
                    .iter()
                    .map(|c| shear_coefficient(c, &target))
                    .collect(),
            );
            assert_eq!(resheared, direct, "substitution mismatch at n = {n}");
        }

        // Hence vanishing transfers: the sheared residual route proves the
        // same statements the straight route does.
        for id in LemmaId::ALL {
            for n in 0..=8 {
                assert!(
                    lemma_residual_sheared(id, n).is_zero(),
                    "sheared relation {} fails at n = {n}",
                    id.name()
                );
            }
        }
    }

    #[test]
    fn shifted_argument_build_is_the_substituted_straight_build() {
        use crate::classical::{jacobi_poly_in, jacobi_poly_in_u};
        use crate::ring::{rat, rat_int};

        // Rational parameters: substituting x -> 1 - 2u into the straight
        // build must reproduce the u-basis build exactly.
        let (a, b) = (rat(1, 2), rat(7, 3));
        for n in 0..=7_i64 {
            let in_u = jacobi_poly_in_u(n, &a, &b, crate::poly::VAR_U).unwrap();
            let straight = jacobi_poly_in(n, &a, &b, crate::poly::VAR_U).unwrap();
            let substituted = straight.substitute_affine(&rat_int(-2), &rat_int(1));
            assert_eq!(in_u, substituted, "argument shift mismatch at n = {n}");
        }

        // Symbolic sheared parameters: same statement over the ring.
        let alpha = ab_alpha_sheared();
        let beta = &ab_s() - &alpha;
        for n in 0..=5_i64 {
            let in_u = jacobi_poly_in_u(n, &alpha, &beta, crate::poly::VAR_U).unwrap();
            let straight = jacobi_poly_in(n, &alpha, &beta, crate::poly::VAR_U).unwrap();
            let substituted = straight
                .substitute_affine(&AlphaBetaRing::from_int(-2), &AlphaBetaRing::one());
            assert_eq!(in_u, substituted, "symbolic argument shift mismatch at n = {n}");
        }

        // The condensed residual route therefore proves the same vanishing
        // statements as the straight symbolic route.
        for id in LemmaId::ALL {
            for n in 0..=8 {
                assert!(
                    lemma_residual_condensed(id, n).is_zero(),
                    "condensed relation {} fails at n = {n}",
                    id.name()
                );
            }
        }
    }

    #[test]
    fn lemma_residuals_vanish_at_rational_samples() {
        let alpha = rat(7, 3);
        let beta = rat(3, 5);
        for id in LemmaId::ALL {
            let beta_arg = id.takes_beta().then_some(&beta);
            for n in 0..=12 {
                assert!(lemma_residual_at(id, n, &alpha, beta_arg).is_zero());
            }
        }
    }

    #[test]
    fn lemma_building_blocks_match_hand_expansions() {
        // Degree-one Laguerre member over Q[alpha]: 1 + alpha - x.
        let lag1 = laguerre_poly_in(1, &alpha_gen(), VAR_X).unwrap();
        let expected = Poly::new(
            VAR_X,
            vec![
                &alpha_gen() + &AlphaRing::one(),
                AlphaRing::from_int(-1),
            ],
        );
        assert_eq!(lag1, expected);
        // The A-relation at n = 1 reads ((alpha - x) + 1) - (1 + alpha - x).
        assert!(lemma_residual_symbolic(LemmaId::A, 1).is_zero());
    }

    #[test]
    fn cubic_laguerre_residual_is_zero_for_small_ell() {
        for ell in 0..=3 {
            let residual = cubic_laguerre_residual(ell);
            assert!(residual.is_zero(), "cubic Laguerre fails at ell = {ell}");
        }
    }

    #[test]
    fn cubic_laguerre_first_summand_matches_hand_expansion() {
        // ell = 1, alpha = 2: -x (2 - x)(3 - x) = -6x + 5x^2 - x^3.
        let [t1, ..] = cubic_laguerre_terms_in(1, &rat_int(2), VAR_X);
        assert_eq!(
            t1,
            Poly::new(VAR_X, vec![rat_int(0), rat_int(-6), rat_int(5), rat_int(-1)])
        );
    }

    #[test]
    fn cubic_laguerre_residual_is_zero_at_rational_sample() {
        assert!(cubic_laguerre_residual_at(5, &rat(7, 3)).is_zero());
    }

    #[test]
    fn cubic_jacobi_residual_is_zero_for_small_ell() {
        for ell in 0..=2 {
            let residual = cubic_jacobi_residual(ell);
            assert!(residual.is_zero(), "cubic Jacobi fails at ell = {ell}");
        }
    }

    #[test]
    fn cubic_jacobi_residual_is_zero_at_rational_sample() {
        assert!(cubic_jacobi_residual_at(4, &rat(-13, 2), &rat(9, 2)).is_zero());
    }

    #[test]
    fn evaluation_grids_have_documented_shapes() {
        let lag = laguerre_alpha_grid(2);
        assert_eq!(lag.len(), 9);
        for pair in lag.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        let jac = jacobi_parameter_grid(1);
        assert_eq!(jac.len(), 49);
        let mut dedup = jac.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 49);
    }

    #[test]
    fn grid_evaluation_stays_zero() {
        for alpha in laguerre_alpha_grid(2) {
            assert!(cubic_laguerre_residual_at(2, &alpha).is_zero());
        }
        for (alpha, beta) in jacobi_parameter_grid(1) {
            assert!(cubic_jacobi_residual_at(1, &alpha, &beta).is_zero());
        }
    }

    #[test]
    fn confluence_gaps_shrink_at_first_order() {
        let betas = [rat_int(10_000), rat_int(20_000), rat_int(40_000)];
        let report = laguerre_limit_of_jacobi_identity(1, &rat(1, 2), &betas);
        assert!(report.transformed_residual_zero);
        assert!(report.straight_residual_zero);
        for pair in &report.pairs {
            assert_eq!(pair.straight_index, CONFLUENCE_PAIRING[pair.transformed_index]);
            let last = *pair.gaps.last().unwrap();
            assert!(
                last < 1e-2,
                "pair {} -> {} still has gap {last:e}",
                pair.transformed_index,
                pair.straight_index
            );
        }
        // Third transformed summand: halving the confluence error under a
        // doubling beta ladder.
        let third = &report.pairs[2];
        assert!(!third.ratios.is_empty());
        for ratio in &third.ratios {
            assert!((1.8..=2.2).contains(ratio), "ratio {ratio} out of band");
        }
    }
}
