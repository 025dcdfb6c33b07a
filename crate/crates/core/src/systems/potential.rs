//! Floating-point layer: prepotential derivatives, deformed potentials, and
//! pointwise Schrodinger-equation residuals.
//!
//! Everything here evaluates genuinely transcendental quantities, so it works
//! in `f64`; all polynomial inputs come from the exact layer.  Wavefunction
//! magnitudes are never formed directly — the exponential ground-state factor
//! is divided out symbolically first, which keeps every formula overflow-free
//! for large couplings.

use super::{
    energy_in, shifted_params_in, validate_params, xi_poly_shifted, xell_poly, Params, SystemKind,
};
use crate::error::SystemError;
use crate::poly::Poly;
use crate::ring::{rat_to_f64, Rational};

/// The physical domain in `x`, as an open interval.
pub fn x_domain(kind: SystemKind) -> (f64, f64) {
    match kind {
        SystemKind::RadialOscillator | SystemKind::HypDpt => (0.0, f64::INFINITY),
        SystemKind::TrigDpt => (0.0, std::f64::consts::FRAC_PI_2),
    }
}

/// Rejects evaluation points outside the open coordinate domain (the
/// endpoints are singular for the prepotential derivatives).
pub fn require_interior(kind: SystemKind, x: f64) -> Result<(), SystemError> {
    let (lo, hi) = x_domain(kind);
    if x.is_finite() && x > lo && x < hi {
        Ok(())
    } else {
        Err(SystemError::OutsideDomain { x, lo, hi })
    }
}

/// The sinusoidal coordinate `eta(x)`: `x^2`, `cos 2x`, `cosh 2x`.
pub fn eta_x(kind: SystemKind, x: f64) -> f64 {
    match kind {
        SystemKind::RadialOscillator => x * x,
        SystemKind::TrigDpt => (2.0 * x).cos(),
        SystemKind::HypDpt => (2.0 * x).cosh(),
    }
}

/// `d eta/dx`.
pub fn eta_dx(kind: SystemKind, x: f64) -> f64 {
    match kind {
        SystemKind::RadialOscillator => 2.0 * x,
        SystemKind::TrigDpt => -2.0 * (2.0 * x).sin(),
        SystemKind::HypDpt => 2.0 * (2.0 * x).sinh(),
    }
}

/// `d^2 eta/dx^2`.
pub fn eta_dxx(kind: SystemKind, x: f64) -> f64 {
    match kind {
        SystemKind::RadialOscillator => 2.0,
        SystemKind::TrigDpt => -4.0 * (2.0 * x).cos(),
        SystemKind::HypDpt => 4.0 * (2.0 * x).cosh(),
    }
}

/// `d w0/dx` at couplings `(g, h)` (`h` ignored by the radial family):
/// `-x + g/x`, `g cot x - h tan x`, `g coth x - h tanh x`.
pub fn w0_dx(kind: SystemKind, g: f64, h: f64, x: f64) -> f64 {
    match kind {
        SystemKind::RadialOscillator => -x + g / x,
        SystemKind::TrigDpt => g / x.tan() - h * x.tan(),
        SystemKind::HypDpt => g / x.tanh() - h * x.tanh(),
    }
}

/// `d^2 w0/dx^2`: `-1 - g/x^2`, `-g/sin^2 x - h/cos^2 x`,
/// `-g/sinh^2 x - h/cosh^2 x`.
pub fn w0_dxx(kind: SystemKind, g: f64, h: f64, x: f64) -> f64 {
    match kind {
        SystemKind::RadialOscillator => -1.0 - g / (x * x),
        SystemKind::TrigDpt => {
            let (s, c) = (x.sin(), x.cos());
            -g / (s * s) - h / (c * c)
        }
        SystemKind::HypDpt => {
            let (s, c) = (x.sinh(), x.cosh());
            -g / (s * s) - h / (c * c)
        }
    }
}

/// Evaluate a rational-coefficient polynomial and its first two derivatives
/// at a float point (simultaneous Horner).
fn poly_f64_derivs(p: &Poly<Rational>, t: f64) -> (f64, f64, f64) {
    let (mut v, mut d1, mut d2) = (0.0, 0.0, 0.0);
    for c in p.coeffs_f64().iter().rev() {
        d2 = d2 * t + 2.0 * d1;
        d1 = d1 * t + v;
        v = v * t + c;
    }
    (v, d1, d2)
}

/// Couplings shifted `k` ladder steps, converted to floats (`h` reported as
/// 0 for the radial family, which never reads it).
pub fn shifted_couplings_f64(kind: SystemKind, params: &Params, k: i64) -> (f64, f64) {
    let (gk, hk) = shifted_params_in(kind, &params.g, params.h.as_ref(), k);
    (rat_to_f64(&gk), hk.as_ref().map_or(0.0, rat_to_f64))
}

/// First and second `x`-derivatives of a deformed prepotential
/// `w = w0(x; gs, hs) + log xi1(eta(x)) - log xi0(eta(x))`, with the two
/// deforming polynomials supplied explicitly.
///
/// Constant rescalings of either polynomial are mathematically irrelevant
/// here (only log-derivatives appear); the implementation strips the rational
/// content of each polynomial before any float work, so the result is also
/// *bitwise* independent of the callers' normalization.
pub fn wl_derivatives_with_xi(
    kind: SystemKind,
    gs: f64,
    hs: f64,
    xi0: &Poly<Rational>,
    xi1: &Poly<Rational>,
    x: f64,
) -> (f64, f64) {
    let e = eta_x(kind, x);
    let ed = eta_dx(kind, x);
    let edd = eta_dxx(kind, x);
    let mut w1 = w0_dx(kind, gs, hs, x);
    let mut w2 = w0_dxx(kind, gs, hs, x);
    for (p, sign) in [(xi1, 1.0), (xi0, -1.0)] {
        let (v, d1, d2) = poly_f64_derivs(&p.primitive_positive(), e);
        let r = d1 / v;
        w1 += sign * ed * r;
        w2 += sign * (edd * r + ed * ed * (d2 / v - r * r));
    }
    (w1, w2)
}

/// Deformed potential from explicitly supplied deforming polynomials:
/// `U = (w')^2 + w''`.
pub fn deformed_potential_with_xi(
    kind: SystemKind,
    gs: f64,
    hs: f64,
    xi0: &Poly<Rational>,
    xi1: &Poly<Rational>,
    x: f64,
) -> f64 {
    let (w1, w2) = wl_derivatives_with_xi(kind, gs, hs, xi0, xi1, x);
    w1 * w1 + w2
}

/// The deformed potential `U_ell(x)` at validated couplings.
pub fn deformed_potential(
    kind: SystemKind,
    ell: u32,
    params: &Params,
    x: f64,
) -> Result<f64, SystemError> {
    validate_params(kind, ell, params)?;
    require_interior(kind, x)?;
    let le = i64::from(ell);
    let (gs, hs) = shifted_couplings_f64(kind, params, le);
    let xi0 = xi_poly_shifted(kind, le, params, 0);
    let xi1 = xi_poly_shifted(kind, le, params, 1);
    Ok(deformed_potential_with_xi(kind, gs, hs, &xi0, &xi1, x))
}

/// Pointwise residual of the deformed Schrodinger equation for the `n`-th
/// eigenfunction, relative to the local term scale.
///
/// The eigenfunction is `exp(w0 at shifted couplings) * F(eta(x))` with
/// `F = P / xi0`; the exponential factor is divided out of
/// `(-d^2/dx^2 + U - E)` symbolically, leaving
/// `-F'' - 2 w0' F' + (U - (w0'^2 + w0'')) F - E F`,
/// whose terms are evaluated in closed form.  This sidesteps both overflow
/// in the wavefunction and the catastrophic `w0'^2` cancellation near the
/// domain ends.
pub fn eigenfunction_residual(
    kind: SystemKind,
    ell: u32,
    n: u32,
    params: &Params,
    x: f64,
) -> Result<f64, SystemError> {
    require_interior(kind, x)?;
    let le = i64::from(ell);
    let (gs, hs) = shifted_couplings_f64(kind, params, le);
    let e = eta_x(kind, x);
    let ed = eta_dx(kind, x);
    let edd = eta_dxx(kind, x);
    let w0x = w0_dx(kind, gs, hs, x);

    // Validation happens inside the polynomial construction.
    let p = xell_poly(kind, ell, n, params)?.poly;
    let xi0 = xi_poly_shifted(kind, le, params, 0).primitive_positive();
    let xi1 = xi_poly_shifted(kind, le, params, 1).primitive_positive();

    // F = P/xi0 and its x-derivatives through the eta chain rule.
    let (pv, pd1, pd2) = poly_f64_derivs(&p, e);
    let (qv, qd1, qd2) = poly_f64_derivs(&xi0, e);
    let f = pv / qv;
    let cross = pd1 * qv - pv * qd1;
    let f_eta = cross / (qv * qv);
    let f_eta2 = (pd2 * qv - pv * qd2) / (qv * qv) - 2.0 * qd1 * cross / (qv * qv * qv);
    let fx = ed * f_eta;
    let fxx = edd * f_eta + ed * ed * f_eta2;

    // Deformation excess U - (w0'^2 + w0'') at the shifted couplings, from
    // the log-derivatives of xi1/xi0.
    let (v1, d11, d21) = poly_f64_derivs(&xi1, e);
    let r1 = d11 / v1;
    let r0 = qd1 / qv;
    let l1 = ed * (r1 - r0);
    let l2 = edd * (r1 - r0) + ed * ed * ((d21 / v1 - r1 * r1) - (qd2 / qv - r0 * r0));
    let excess = 2.0 * w0x * l1 + l1 * l1 + l2;

    let (grat, hrat) = shifted_params_in(kind, &params.g, params.h.as_ref(), le);
    let energy = rat_to_f64(&energy_in(kind, i64::from(n), &grat, hrat.as_ref()));

    let bracket = -fxx - 2.0 * w0x * fx + excess * f - energy * f;
    let scale =
        fxx.abs() + (2.0 * w0x * fx).abs() + (excess * f).abs() + (energy * f).abs() + 1e-300;
    Ok(bracket.abs() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, rat_int};

    fn radial() -> Params {
        Params::radial(rat_int(1))
    }

    #[test]
    fn undeformed_radial_potential_value() {
        // (w0')^2 + w0'' at g = 1, x = 1: (−1+1)^2 + (−1−1) = −2.
        let u = deformed_potential(SystemKind::RadialOscillator, 0, &radial(), 1.0).unwrap();
        assert!((u - (-2.0)).abs() < 1e-14, "got {u}");
    }

    #[test]
    fn domain_violations_are_reported() {
        let err =
            deformed_potential(SystemKind::TrigDpt, 0, &Params::coupled(rat_int(1), rat_int(2)), 2.0)
                .unwrap_err();
        assert!(matches!(err, SystemError::OutsideDomain { .. }));
        let err = deformed_potential(SystemKind::RadialOscillator, 0, &radial(), 0.0).unwrap_err();
        assert!(matches!(err, SystemError::OutsideDomain { .. }));
    }

    #[test]
    fn potential_is_bitwise_invariant_under_xi_rescaling() {
        use crate::systems::xi_poly_shifted;
        let params = radial();
        let kind = SystemKind::RadialOscillator;
        let (gs, hs) = shifted_couplings_f64(kind, &params, 1);
        let xi0 = xi_poly_shifted(kind, 1, &params, 0);
        let xi1 = xi_poly_shifted(kind, 1, &params, 1);
        let scaled0 = xi0.scale(&rat(7, 3));
        let scaled1 = xi1.scale(&rat(11, 5));
        for &x in &[0.3, 0.9, 2.0, 5.5] {
            let a = deformed_potential_with_xi(kind, gs, hs, &xi0, &xi1, x);
            let b = deformed_potential_with_xi(kind, gs, hs, &scaled0, &scaled1, x);
            assert_eq!(a.to_bits(), b.to_bits(), "x = {x}");
        }
    }

    #[test]
    fn radial_deformation_preserves_oscillator_tail() {
        // U_1 - x^2 stays bounded far out (the deformation decays).
        let params = radial();
        for &x in &[20.0, 40.0] {
            let u = deformed_potential(SystemKind::RadialOscillator, 1, &params, x).unwrap();
            assert!((u - x * x).abs() < 10.0, "x={x}: U - x^2 = {}", u - x * x);
        }
    }

    #[test]
    fn eigenfunction_residuals_are_tiny() {
        let cases: [(SystemKind, u32, u32, Params, f64); 4] = [
            (SystemKind::RadialOscillator, 1, 0, radial(), 0.9),
            (SystemKind::RadialOscillator, 1, 2, radial(), 1.3),
            (
                SystemKind::TrigDpt,
                2,
                3,
                Params::coupled(rat_int(1), rat_int(2)),
                0.6,
            ),
            (
                SystemKind::HypDpt,
                1,
                1,
                Params::coupled(rat_int(1), rat_int(12)),
                0.8,
            ),
        ];
        for (kind, ell, n, params, x) in cases {
            let r = eigenfunction_residual(kind, ell, n, &params, x).unwrap();
            assert!(r < 1e-8, "{} ell={ell} n={n}: residual {r}", kind.name());
        }
    }

    #[test]
    fn ground_state_residual_is_zero_floor() {
        // ell = 0, n = 0: F = 1, excess = 0, E = 0 — every term vanishes.
        let r =
            eigenfunction_residual(SystemKind::RadialOscillator, 0, 0, &radial(), 1.1).unwrap();
        assert_eq!(r, 0.0);
    }
}
