//! Numerical layers checked against independent closed forms: Gram
//! diagonals versus the classical norm formulas, finite-difference spectra
//! at deformation degrees the in-module sweeps do not touch, exact root
//! counts at a fourth deformation degree, and the sharpness edge of the
//! Gauss rules.

use std::f64::consts::FRAC_PI_2;

use xell::numerics::{fd_spectrum, orthogonality_gram, zero_count_report, Grid};
use xell::numerics::{gauss_rule, WeightFamily};
use xell::ring::{pochhammer_rat, rat, rat_int, rat_to_f64};
use xell::systems::{Params, SystemKind};

/// Norm ratio `h_n / h_0` of the generalized Laguerre family under the
/// weight `x^(1/2) e^(-x)` (couplings `g = 1`, no deformation):
/// `Gamma(n + 3/2) / (n! Gamma(3/2)) = (3/2)_n / n!`.
fn radial_norm_ratio(n: usize) -> f64 {
    rat_to_f64(&(&pochhammer_rat(&rat(3, 2), n) / &pochhammer_rat(&rat_int(1), n)))
}

/// Norm ratio `h_n / h_0` of the Jacobi family under the weight
/// `(1-x)^(1/2) (1+x)^(3/2)` (couplings `g = 1`, `h = 2`), from
/// `h_n = 2^(a+b+1) / (2n+a+b+1) * G(n+a+1) G(n+b+1) / (G(n+a+b+1) n!)`:
/// the Gamma quotients collapse to rising factorials.
fn trig_norm_ratio(n: usize) -> f64 {
    let a_shift = pochhammer_rat(&rat(3, 2), n); // (a+1)_n, a = 1/2
    let b_shift = pochhammer_rat(&rat(5, 2), n); // (b+1)_n, b = 3/2
    let ab_shift = pochhammer_rat(&rat_int(3), n); // (a+b+1)_n
    let fact = pochhammer_rat(&rat_int(1), n);
    let front = &rat_int(3) / &rat_int(2 * n as i64 + 3);
    rat_to_f64(&(&(&(&a_shift * &b_shift) / &(&ab_shift * &fact)) * &front))
}

/// The Gram diagonals are plain quadrature values of the squared members,
/// so at zero deformation their ratios must reproduce the classical norm
/// formulas — a closed-form anchor the orthogonality sweep (which only
/// bounds off-diagonals) never looks at.
#[test]
fn gram_diagonals_reproduce_the_classical_norm_ratios() {
    let radial = orthogonality_gram(
        SystemKind::RadialOscillator,
        0,
        &Params::radial(rat_int(1)),
        5,
        64,
    )
    .unwrap();
    for n in 0..=5_usize {
        let ratio = radial.entries[n][n] / radial.entries[0][0];
        let exact = radial_norm_ratio(n);
        assert!(
            ((ratio - exact) / exact).abs() < 1e-9,
            "radial n = {n}: {ratio} vs {exact}"
        );
    }

    let trig = orthogonality_gram(
        SystemKind::TrigDpt,
        0,
        &Params::coupled(rat_int(1), rat_int(2)),
        5,
        64,
    )
    .unwrap();
    for n in 0..=5_usize {
        let ratio = trig.entries[n][n] / trig.entries[0][0];
        let exact = trig_norm_ratio(n);
        assert!(
            ((ratio - exact) / exact).abs() < 1e-9,
            "trigonometric n = {n}: {ratio} vs {exact}"
        );
    }
}

/// Discretized spectra at deformation degrees outside the standing sweep:
/// the undeformed oscillator ladder `4n`, and the second trigonometric
/// deformation with levels `4n(n + g + h + 2 ell)`.
#[test]
fn finite_difference_levels_match_the_closed_forms_at_other_degrees() {
    let radial = fd_spectrum(
        SystemKind::RadialOscillator,
        0,
        &Params::radial(rat(3, 2)),
        &Grid::new(1e-3, 12.0, 4000),
        3,
    )
    .unwrap();
    for (n, value) in radial.iter().enumerate() {
        let want = 4.0 * n as f64;
        assert!(
            (value - want).abs() < 1e-2,
            "radial n = {n}: {value} vs {want}"
        );
    }

    let trig = fd_spectrum(
        SystemKind::TrigDpt,
        2,
        &Params::coupled(rat_int(1), rat_int(2)),
        &Grid::new(1e-3, FRAC_PI_2 - 1e-3, 3000),
        2,
    )
    .unwrap();
    let exact = [0.0, 32.0];
    for (n, (value, want)) in trig.iter().zip(exact).enumerate() {
        assert!(
            (value - want).abs() / want.max(1.0) < 1e-2,
            "trigonometric n = {n}: {value} vs {want}"
        );
    }
}

/// The degree-`(ell + n)` member keeps exactly `n` roots inside the
/// physical domain at a fourth deformation degree (the standing sweep
/// stops at three).
#[test]
fn root_counts_track_the_level_at_a_fourth_deformation_degree() {
    let trig = zero_count_report(
        SystemKind::TrigDpt,
        4,
        &Params::coupled(rat_int(1), rat_int(8)),
        3,
    )
    .unwrap();
    assert_eq!(trig, vec![(0, 0), (1, 1), (2, 2), (3, 3)]);

    let hyp = zero_count_report(
        SystemKind::HypDpt,
        4,
        &Params::coupled(rat(1, 2), rat(37, 2)),
        3,
    )
    .unwrap();
    assert_eq!(hyp, vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
}

/// An order-`n` rule is exact through degree `2n - 1` and must *not* be
/// exact just past it: the boundary documents that the construction is a
/// genuine Gauss rule rather than something merely accurate.
#[test]
fn gauss_rules_are_sharp_at_the_exactness_edge() {
    let rule = gauss_rule(WeightFamily::legendre(), 4).unwrap();

    let mass = rule.integrate(|_| 1.0);
    assert!((mass - 2.0).abs() < 1e-14, "total mass: {mass}");

    // Degree 6 <= 2*4 - 1: exact to rounding.
    let inside = rule.integrate(|x| x.powi(6));
    assert!(
        (inside - 2.0 / 7.0).abs() < 1e-14,
        "degree 6: {inside} vs {}",
        2.0 / 7.0
    );

    // Degree 8 = 2*4: the error term is a positive multiple of the 8th
    // derivative, so the rule undershoots by a visible margin.
    let outside = rule.integrate(|x| x.powi(8));
    let exact = 2.0 / 9.0;
    assert!(
        outside < exact - 1e-3,
        "degree 8 must undershoot: {outside} vs {exact}"
    );
    assert!(
        (outside - exact).abs() / exact < 0.1,
        "degree 8 error stays first-digit small: {outside} vs {exact}"
    );
}
