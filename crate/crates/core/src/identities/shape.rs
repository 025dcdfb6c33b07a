//! The shape-invariance residual of the deformed systems, assembled exactly
//! as a polynomial in the sinusoidal coordinate `eta`, plus two independent
//! cross-checks: a floating-point pointwise oracle evaluated from the
//! prepotential's closed-form derivatives, and the confluence of the two
//! coupled families onto one and the same identity instance.
//!
//! The identity has seven derivative-bearing product lines (grouped here
//! into six terms, the last combining two products).  Each `x`-derivative of
//! a deforming polynomial is replaced by its cleared image
//! `(d eta/dx)^2 * d xi/d eta`, and each prepotential derivative enters
//! through the `eta`-polynomial tables `(d eta/dx) * (d w0/dx)` and
//! `(d eta/dx) * (d tilde-w0/dx)`; every line then carries exactly one
//! surplus factor `(d eta/dx)^2`, which is divided out of the assembled sum
//! by exact polynomial division with a mandatory zero-remainder assertion.

use crate::error::SystemError;
use crate::poly::{Field, Poly, Var, VAR_ETA};
use crate::ring::{rat, rat_int, rat_to_f64, Rational, Ring};
use crate::systems::potential::{require_interior, shifted_couplings_f64, wl_derivatives_with_xi};
use crate::systems::{
    deta_sq_poly, dtw0_eta_poly, dw0_eta_poly, energy_first_in, shifted_params_in,
    tilde_energy_in, validate_params, xi_poly_in, xi_poly_shifted, Params, SystemKind,
};

/// Everything the term assemblies need at couplings `lam`, `lam + delta`,
/// `lam + 2 delta`.
struct ShapeParts<R: Ring> {
    xi: [Poly<R>; 3],
    xi_d: [Poly<R>; 3],
    deta: Poly<R>,
    /// Deforming-equation prepotential table at `lam` and at `lam + 2 delta`.
    dtw0_lo: Poly<R>,
    dtw0_hi: Poly<R>,
    /// Base prepotential table at `lam + ell delta` and `lam + (ell+1) delta`.
    dw0_mid: Poly<R>,
    dw0_mid_up: Poly<R>,
    /// Half the gap of the deforming-equation eigenvalue across two ladder
    /// steps (identically zero for all three families, but assembled, not
    /// assumed).
    half_tilde_gap: R,
}

fn shape_parts<R: Ring>(
    kind: SystemKind,
    ell: i64,
    g: &R,
    h: Option<&R>,
    var: Var,
) -> ShapeParts<R> {
    let shifted: [(R, Option<R>); 3] =
        std::array::from_fn(|k| shifted_params_in(kind, g, h, k as i64));
    let xi: [Poly<R>; 3] =
        std::array::from_fn(|k| xi_poly_in(kind, ell, &shifted[k].0, shifted[k].1.as_ref(), var));
    let xi_d: [Poly<R>; 3] = std::array::from_fn(|k| xi[k].derivative());
    let (g2, h2) = (&shifted[2].0, shifted[2].1.as_ref());
    let (gm, hm) = shifted_params_in(kind, g, h, ell);
    let (gu, hu) = shifted_params_in(kind, g, h, ell + 1);
    let half_tilde_gap = tilde_energy_in(kind, ell, g2, h2)
        .sub(&tilde_energy_in(kind, ell, g, h))
        .scale_rat(&rat(1, 2));
    ShapeParts {
        xi,
        xi_d,
        deta: deta_sq_poly(kind, var),
        dtw0_lo: dtw0_eta_poly(kind, ell, g, h, var),
        dtw0_hi: dtw0_eta_poly(kind, ell, g2, h2, var),
        dw0_mid: dw0_eta_poly(kind, &gm, hm.as_ref(), var),
        dw0_mid_up: dw0_eta_poly(kind, &gu, hu.as_ref(), var),
        half_tilde_gap,
    }
}

/// The six term groups of the shape-invariance identity as polynomials in
/// `eta`, in a fixed documented order (writing `xi_k` for the deforming
/// polynomial at `lam + k delta` and `'` for `d/d eta`):
///
/// 1. ` [dx-eta dx-tilde-w0](lam+2d) xi_2' xi_0 xi_1`
/// 2. `-[dx-eta dx-tilde-w0](lam)    xi_0' xi_1 xi_2`
/// 3. ` (tilde-E(lam+2d) - tilde-E(lam))/2 xi_0 xi_1 xi_2`
/// 4. ` [dx-eta dx-w0](lam+l d)     (xi_1' xi_0 - xi_0' xi_1) xi_2`
/// 5. `-[dx-eta dx-w0](lam+(l+1)d)  (xi_2' xi_1 - xi_1' xi_2) xi_0`
/// 6. ` (dx-eta)^2 (xi_1' xi_2' xi_0 - xi_0' xi_1' xi_2)`
///
/// Each group is itself a polynomial in `eta` because every single
/// `x`-derivative pairs with a table factor.  Their sum is the residual,
/// whose contract is the zero polynomial.
pub fn shape_terms_in<R: Ring>(
    kind: SystemKind,
    ell: i64,
    g: &R,
    h: Option<&R>,
    var: Var,
) -> [Poly<R>; 6] {
    let p = shape_parts(kind, ell, g, h, var);
    let t1 = &(&p.dtw0_hi * &p.xi_d[2]) * &(&p.xi[0] * &p.xi[1]);
    let t2 = (&(&p.dtw0_lo * &p.xi_d[0]) * &(&p.xi[1] * &p.xi[2])).neg();
    let t3 = (&(&p.xi[0] * &p.xi[1]) * &p.xi[2]).scale(&p.half_tilde_gap);
    let wron_01 = &(&p.xi_d[1] * &p.xi[0]) - &(&p.xi_d[0] * &p.xi[1]);
    let t4 = &(&p.dw0_mid * &wron_01) * &p.xi[2];
    let wron_12 = &(&p.xi_d[2] * &p.xi[1]) - &(&p.xi_d[1] * &p.xi[2]);
    let t5 = (&(&p.dw0_mid_up * &wron_12) * &p.xi[0]).neg();
    let t6 = &p.deta
        * &(&(&(&p.xi_d[1] * &p.xi_d[2]) * &p.xi[0]) - &(&(&p.xi_d[0] * &p.xi_d[1]) * &p.xi[2]));
    [t1, t2, t3, t4, t5, t6]
}

/// The same six groups, each multiplied by `(d eta/dx)^2` — assembled
/// independently of [`shape_terms_in`] by replacing every `x`-derivative of
/// a deforming polynomial with its cleared image `(d eta/dx)^2 xi'` and
/// never dividing per term.
pub fn shape_scaled_terms_in<R: Ring>(
    kind: SystemKind,
    ell: i64,
    g: &R,
    h: Option<&R>,
    var: Var,
) -> [Poly<R>; 6] {
    let p = shape_parts(kind, ell, g, h, var);
    let im: [Poly<R>; 3] = std::array::from_fn(|k| &p.deta * &p.xi_d[k]);
    let s1 = &(&p.dtw0_hi * &im[2]) * &(&p.xi[0] * &p.xi[1]);
    let s2 = (&(&p.dtw0_lo * &im[0]) * &(&p.xi[1] * &p.xi[2])).neg();
    let s3 = (&(&(&p.xi[0] * &p.xi[1]) * &p.xi[2]) * &p.deta).scale(&p.half_tilde_gap);
    let wron_01 = &(&im[1] * &p.xi[0]) - &(&im[0] * &p.xi[1]);
    let s4 = &(&p.dw0_mid * &wron_01) * &p.xi[2];
    let wron_12 = &(&im[2] * &p.xi[1]) - &(&im[1] * &p.xi[2]);
    let s5 = (&(&p.dw0_mid_up * &wron_12) * &p.xi[0]).neg();
    let s6 = &(&(&im[1] * &im[2]) * &p.xi[0]) - &(&(&im[0] * &im[1]) * &p.xi[2]);
    [s1, s2, s3, s4, s5, s6]
}

/// Assembles the `(d eta/dx)^2`-scaled lines, sums them, and divides the
/// single surplus factor out exactly.  A nonzero remainder means the
/// assembly itself is inconsistent and panics; the returned quotient is the
/// residual, whose contract is the zero polynomial.
pub fn shape_invariance_residual_in<R: Field>(
    kind: SystemKind,
    ell: i64,
    g: &R,
    h: Option<&R>,
    var: Var,
) -> Poly<R> {
    let scaled = shape_scaled_terms_in(kind, ell, g, h, var);
    let sum = scaled.iter().fold(Poly::zero_in(var), |acc, s| &acc + s);
    let deta = deta_sq_poly::<R>(kind, var);
    let (quotient, remainder) = sum
        .div_rem(&deta)
        .expect("the squared-derivative table has a unit leading coefficient");
    assert!(
        remainder.is_zero(),
        "scaled shape-invariance lines are not divisible by (d eta/dx)^2: \
         remainder {remainder:?}"
    );
    quotient
}

/// Validated rational-coupling wrapper for [`shape_invariance_residual_in`]
/// in the variable `eta`.
pub fn shape_invariance_residual(
    kind: SystemKind,
    ell: u32,
    params: &Params,
) -> Result<Poly<Rational>, SystemError> {
    validate_params(kind, ell, params)?;
    Ok(shape_invariance_residual_in(
        kind,
        i64::from(ell),
        &params.g,
        params.h.as_ref(),
        VAR_ETA,
    ))
}

// ---------------------------------------------------------------------------
// Confluence of the two coupled families.

/// Couplings at which a coupled family's deforming polynomial is the Jacobi
/// member with parameters `(alpha, beta)`: `g = -alpha - ell - 1/2` for
/// both, `h = beta - ell + 3/2` (trigonometric) or `h = -beta + ell - 3/2`
/// (hyperbolic).  These couplings are generally outside the physical range;
/// they parameterize identity instances, not spectra.
pub fn reduction_couplings_in<R: Ring>(
    kind: SystemKind,
    ell: i64,
    alpha: &R,
    beta: &R,
) -> (R, R) {
    let g = alpha.neg().sub(&R::from_rat(&(rat_int(ell) + rat(1, 2))));
    match kind {
        SystemKind::TrigDpt => (g, beta.add(&R::from_rat(&(rat(3, 2) - rat_int(ell))))),
        SystemKind::HypDpt => (g, beta.neg().add(&R::from_rat(&(rat_int(ell) - rat(3, 2))))),
        SystemKind::RadialOscillator => {
            panic!("the single-coupling family does not share the two-parameter identity instance")
        }
    }
}

/// The two coupled families' term assemblies at matching `(alpha, beta)`,
/// normalized by `-(ell+alpha+beta+1)` (trigonometric) respectively
/// `+(ell+alpha+beta+1)` (hyperbolic), under which they must coincide
/// literally, term by term.
#[derive(Debug, Clone)]
pub struct ReductionReport {
    pub ell: u32,
    pub alpha: Rational,
    pub beta: Rational,
    /// `ell + alpha + beta + 1`.
    pub normalizer: Rational,
    pub trig_terms: [Poly<Rational>; 6],
    pub hyp_terms: [Poly<Rational>; 6],
    pub termwise_equal: bool,
    pub trig_residual_zero: bool,
    pub hyp_residual_zero: bool,
}

/// Builds both coupled-family term assemblies at the couplings matching
/// `(alpha, beta)` and compares them after the sign/divisor normalization.
/// Parameter sets with `ell + alpha + beta + 1 = 0` have no normalization
/// and are reported as an error rather than silently skipped.
pub fn trig_hyp_reduction(
    ell: u32,
    alpha: &Rational,
    beta: &Rational,
) -> Result<ReductionReport, SystemError> {
    let normalizer = &(alpha + beta) + &rat_int(i64::from(ell) + 1);
    if Ring::is_zero(&normalizer) {
        return Err(SystemError::DegenerateNormalization {
            factor: "ell + alpha + beta + 1".into(),
        });
    }
    let le = i64::from(ell);
    let build = |kind: SystemKind, divisor: &Rational| {
        let (g, h) = reduction_couplings_in(kind, le, alpha, beta);
        let inv = divisor.recip();
        let terms = shape_terms_in(kind, le, &g, Some(&h), VAR_ETA).map(|t| t.scale(&inv));
        let sum = terms.iter().fold(Poly::zero_in(VAR_ETA), |acc, t| &acc + t);
        (terms, sum.is_zero())
    };
    let (trig_terms, trig_residual_zero) = build(SystemKind::TrigDpt, &-normalizer.clone());
    let (hyp_terms, hyp_residual_zero) = build(SystemKind::HypDpt, &normalizer);
    let termwise_equal = trig_terms == hyp_terms;
    Ok(ReductionReport {
        ell,
        alpha: alpha.clone(),
        beta: beta.clone(),
        normalizer,
        trig_terms,
        hyp_terms,
        termwise_equal,
        trig_residual_zero,
        hyp_residual_zero,
    })
}

// ---------------------------------------------------------------------------
// Floating-point pointwise oracle.

/// Directly evaluates
/// `(dx w_l(x; lam))^2 - dx^2 w_l(x; lam)
///  - (dx w_l(x; lam+delta))^2 - dx^2 w_l(x; lam+delta) - E_1(lam + l delta)`
/// from the closed-form prepotential derivatives — an oracle for the exact
/// `eta`-space assembly that shares none of its polynomial algebra.  Where
/// the exact residual vanishes, `|result| <= 1e-9 * (1 + |E_1|)` is the
/// expected floating-point contract (see [`delta_scale`]).
pub fn delta_pointwise(
    kind: SystemKind,
    ell: u32,
    params: &Params,
    x: f64,
) -> Result<f64, SystemError> {
    validate_params(kind, ell, params)?;
    require_interior(kind, x)?;
    let le = i64::from(ell);
    let xi0 = xi_poly_shifted(kind, le, params, 0);
    let xi1 = xi_poly_shifted(kind, le, params, 1);
    let xi2 = xi_poly_shifted(kind, le, params, 2);
    let (ga, ha) = shifted_couplings_f64(kind, params, le);
    let (w1a, w2a) = wl_derivatives_with_xi(kind, ga, ha, &xi0, &xi1, x);
    let (gb, hb) = shifted_couplings_f64(kind, params, le + 1);
    let (w1b, w2b) = wl_derivatives_with_xi(kind, gb, hb, &xi1, &xi2, x);
    let (gs, hs) = shifted_params_in::<Rational>(kind, &params.g, params.h.as_ref(), le);
    let e1 = rat_to_f64(&energy_first_in(kind, &gs, hs.as_ref()));
    Ok(w1a * w1a - w2a - w1b * w1b - w2b - e1)
}

/// The comparison scale for [`delta_pointwise`]: `1 + |E_1(lam + l delta)|`.
pub fn delta_scale(kind: SystemKind, ell: u32, params: &Params) -> f64 {
    let (gs, hs) = shifted_params_in::<Rational>(kind, &params.g, params.h.as_ref(), i64::from(ell));
    1.0 + rat_to_f64(&energy_first_in(kind, &gs, hs.as_ref())).abs()
}
