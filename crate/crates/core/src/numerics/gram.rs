//! Quadrature Gram matrices of the deformed polynomial families.
//!
//! The deformed measure in the sinusoidal coordinate is a classical weight
//! times `1/xi_ell(eta)^2`; the Gram integrand is therefore rational, Gauss
//! rules are not exact for it, and convergence is certified by adaptive
//! order doubling with a stagnation criterion instead.  The radial and
//! trigonometric integrals run directly in `eta` against generalized-
//! Laguerre resp. Jacobi rules.  The hyperbolic weight decays only
//! polynomially in `eta`, so that family integrates in the coordinate `x`
//! with a mapped Gauss–Legendre rule on `(0, x_max)`, with `x_max` chosen so
//! the worst integrand's tail is below `1e-14` of its peak and reported in
//! the result.

use super::quad::{gauss_rule, WeightFamily};
use super::zeros::require_bound_levels;
use crate::error::{NumericsError, XellError};
use crate::ring::{rat, rat_int, rat_to_f64};
use crate::systems::potential::shifted_couplings_f64;
use crate::systems::{validate_params, xell_poly, xi_poly_shifted, Params, SystemKind};

/// Doubling cap for the adaptive quadrature order.
const ORDER_CAP: usize = 1 << 12;
/// Stagnation tolerance: doubling the order must change every reported
/// entry by less than this (relative to entries above 1).
const STAGNATION_TOL: f64 = 1e-10;
/// The hyperbolic integration window ends where the worst integrand has
/// fallen below this fraction of its peak.
const TAIL_FRACTION: f64 = 1e-14;

/// How the off-diagonal entries are scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramNormalization {
    /// Plain quadrature values.
    Raw,
    /// Off-diagonals divided by the geometric mean of their diagonals
    /// (diagonals kept raw), so "small" means "orthogonal" independent of
    /// the norms.
    CosineNormalized,
}

/// Symmetric Gram matrix of the deformed polynomials under their measure.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    /// `(n_max + 1) x (n_max + 1)`, indexed `[n][m]`; symmetric.
    pub entries: Vec<Vec<f64>>,
    pub n_max: u32,
    pub normalization: GramNormalization,
    /// Quadrature order at which the doubling loop stagnated.
    pub order_used: usize,
    /// Upper end of the mapped `x`-integration window (hyperbolic only).
    pub x_max: Option<f64>,
}

impl GramMatrix {
    /// Largest absolute off-diagonal entry (0 for a 1x1 matrix).
    pub fn max_off_diagonal(&self) -> f64 {
        let mut worst = 0.0f64;
        for (n, row) in self.entries.iter().enumerate() {
            for (m, value) in row.iter().enumerate() {
                if n != m {
                    worst = worst.max(value.abs());
                }
            }
        }
        worst
    }

    /// Smallest diagonal entry.
    pub fn min_diagonal(&self) -> f64 {
        self.entries
            .iter()
            .enumerate()
            .map(|(n, row)| row[n])
            .fold(f64::INFINITY, f64::min)
    }
}

/// Shared per-run data: float coefficients of the family members and the
/// deforming denominator, plus the couplings shifted to the deformed level.
struct Integrand {
    members: Vec<Vec<f64>>,
    xi: Vec<f64>,
    g_shift: f64,
    h_shift: f64,
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

impl Integrand {
    /// `P_n(eta) / xi(eta)` for every member at one point.
    fn ratios(&self, eta: f64) -> Vec<f64> {
        let denom = horner(&self.xi, eta);
        self.members
            .iter()
            .map(|p| horner(p, eta) / denom)
            .collect()
    }
}

/// Raw Gram accumulation from weighted evaluation points: the caller
/// supplies `(eta, effective weight)` pairs.
fn accumulate(
    integrand: &Integrand,
    points: impl Iterator<Item = (f64, f64)>,
) -> Vec<Vec<f64>> {
    let size = integrand.members.len();
    let mut gram = vec![vec![0.0f64; size]; size];
    for (eta, weight) in points {
        let r = integrand.ratios(eta);
        for n in 0..size {
            for m in n..size {
                gram[n][m] += weight * r[n] * r[m];
            }
        }
    }
    for n in 0..size {
        for m in 0..n {
            gram[n][m] = gram[m][n];
        }
    }
    gram
}

/// Log of the hyperbolic ground-factor squared, `2 w0` at the shifted
/// couplings: `exp` of it underflows harmlessly in the far tail.
fn hyp_log_weight(g_shift: f64, h_shift: f64, x: f64) -> f64 {
    2.0 * (g_shift * x.sinh().ln() - h_shift * x.cosh().ln())
}

/// Pick the end of the hyperbolic `x`-window: march past the peak of the
/// worst-decaying strictly-positive envelope until it falls below
/// `TAIL_FRACTION` of the peak.  The envelope combines the slowest-decaying
/// member (`n_max`) with the nodeless lowest member so polynomial zeros
/// cannot fake an early tail.
fn hyperbolic_window(integrand: &Integrand, decay_rate: f64) -> f64 {
    let envelope = |x: f64| {
        let r = integrand.ratios((2.0 * x).cosh());
        let sq = r[0] * r[0] + r.last().unwrap() * r.last().unwrap();
        hyp_log_weight(integrand.g_shift, integrand.h_shift, x).exp() * sq
    };
    let step = 0.02;
    let mut x = step;
    let mut peak = 0.0f64;
    // Beyond the peak plus 40/decay_rate the exponential factor alone is
    // below e^-40 ~ 4e-18 of the peak; the extra margin absorbs polynomial
    // growth.
    let mut hard_cap = f64::INFINITY;
    loop {
        let value = envelope(x);
        if value > peak {
            peak = value;
            hard_cap = x + 40.0 / decay_rate + 5.0;
        } else if peak > 0.0 && value < TAIL_FRACTION * peak {
            return x + 0.5;
        }
        if x > hard_cap {
            return x;
        }
        x += step;
    }
}

/// Gram matrix of `P_(ell,0..=n_max)` under the deformed measure, starting
/// the adaptive doubling at `order` (clamped up to a small minimum).
pub fn orthogonality_gram(
    kind: SystemKind,
    ell: u32,
    params: &Params,
    n_max: u32,
    order: usize,
) -> Result<GramMatrix, XellError> {
    validate_params(kind, ell, params)?;
    require_bound_levels(kind, ell, params, n_max)?;
    if order > ORDER_CAP {
        return Err(NumericsError::BadOrder(order).into());
    }

    let le = i64::from(ell);
    let members = (0..=n_max)
        .map(|n| Ok(xell_poly(kind, ell, n, params)?.poly.coeffs_f64()))
        .collect::<Result<Vec<_>, XellError>>()?;
    let xi = xi_poly_shifted(kind, le, params, 0).coeffs_f64();
    let (g_shift, h_shift) = shifted_couplings_f64(kind, params, le);
    let integrand = Integrand {
        members,
        xi,
        g_shift,
        h_shift,
    };

    // Weight exponents `g + ell - 1/2` / `h + ell - 1/2` for the eta-space
    // rules, and the x-window for the mapped hyperbolic route.
    let a = rat_to_f64(&(&params.g + rat_int(le) - rat(1, 2)));
    let x_max = match kind {
        SystemKind::HypDpt => {
            let h = params.h.as_ref().expect("validated couplings");
            let margin = h - &params.g - rat_int(2 * le + 2 * i64::from(n_max));
            Some(hyperbolic_window(&integrand, 2.0 * rat_to_f64(&margin)))
        }
        _ => None,
    };

    let raw_at = |order: usize| -> Result<Vec<Vec<f64>>, XellError> {
        let gram = match kind {
            SystemKind::RadialOscillator => {
                let rule = gauss_rule(WeightFamily::GeneralizedLaguerre { a }, order)?;
                accumulate(
                    &integrand,
                    rule.nodes.iter().copied().zip(rule.weights.iter().copied()),
                )
            }
            SystemKind::TrigDpt => {
                let b = rat_to_f64(
                    &(params.h.as_ref().expect("validated couplings") + rat_int(le) - rat(1, 2)),
                );
                let rule = gauss_rule(WeightFamily::Jacobi { a, b }, order)?;
                accumulate(
                    &integrand,
                    rule.nodes.iter().copied().zip(rule.weights.iter().copied()),
                )
            }
            SystemKind::HypDpt => {
                let window = x_max.expect("set above for the hyperbolic kind");
                let rule = gauss_rule(WeightFamily::legendre(), order)?;
                let half = 0.5 * window;
                accumulate(
                    &integrand,
                    rule.nodes.iter().zip(&rule.weights).map(|(&t, &w)| {
                        let x = half * (t + 1.0);
                        let log_w = hyp_log_weight(g_shift, h_shift, x);
                        ((2.0 * x).cosh(), w * half * log_w.exp())
                    }),
                )
            }
        };
        Ok(gram)
    };

    let report = |raw: &[Vec<f64>]| -> Vec<Vec<f64>> {
        let size = raw.len();
        let mut out = vec![vec![0.0f64; size]; size];
        for n in 0..size {
            assert!(
                raw[n][n] > 0.0,
                "Gram diagonal {n} must be positive, got {}",
                raw[n][n]
            );
        }
        for n in 0..size {
            for m in 0..size {
                out[n][m] = if n == m {
                    raw[n][n]
                } else {
                    raw[n][m] / (raw[n][n] * raw[m][m]).sqrt()
                };
            }
        }
        out
    };

    let mut order_now = order.max(8);
    let mut previous = report(&raw_at(order_now)?);
    loop {
        if order_now == ORDER_CAP {
            return Err(NumericsError::NoConvergence {
                tol: STAGNATION_TOL,
                cap: ORDER_CAP,
            }
            .into());
        }
        order_now = (order_now * 2).min(ORDER_CAP);
        let current = report(&raw_at(order_now)?);
        let drift = previous
            .iter()
            .flatten()
            .zip(current.iter().flatten())
            .map(|(p, c)| (p - c).abs() / c.abs().max(1.0))
            .fold(0.0f64, f64::max);
        if drift < STAGNATION_TOL {
            return Ok(GramMatrix {
                entries: current,
                n_max,
                normalization: GramNormalization::CosineNormalized,
                order_used: order_now,
                x_max,
            });
        }
        previous = current;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::SystemError;

    fn assert_orthogonal(matrix: &GramMatrix, tol: f64) {
        assert!(
            matrix.max_off_diagonal() < tol,
            "worst off-diagonal {} at order {}",
            matrix.max_off_diagonal(),
            matrix.order_used
        );
        assert!(matrix.min_diagonal() > 0.0);
        let size = matrix.entries.len();
        for n in 0..size {
            for m in 0..size {
                assert_eq!(matrix.entries[n][m], matrix.entries[m][n]);
            }
        }
    }

    #[test]
    fn undeformed_families_are_diagonal_to_classical_accuracy() {
        let cases = [
            (SystemKind::RadialOscillator, Params::radial(rat_int(1)), 4),
            (
                SystemKind::TrigDpt,
                Params::coupled(rat_int(1), rat_int(2)),
                4,
            ),
            (
                SystemKind::HypDpt,
                Params::coupled(rat_int(1), rat_int(14)),
                3,
            ),
        ];
        for (kind, params, n_max) in cases {
            let matrix = orthogonality_gram(kind, 0, &params, n_max, 16).unwrap();
            assert!(
                matrix.max_off_diagonal() < 1e-12,
                "{}: worst off-diagonal {}",
                kind.name(),
                matrix.max_off_diagonal()
            );
        }
    }

    #[test]
    fn radial_deformed_family_is_orthogonal() {
        let matrix = orthogonality_gram(
            SystemKind::RadialOscillator,
            1,
            &Params::radial(rat_int(1)),
            5,
            16,
        )
        .unwrap();
        assert_orthogonal(&matrix, 1e-8);
        assert!(matrix.x_max.is_none());
    }

    #[test]
    fn trigonometric_deformed_family_is_orthogonal() {
        let matrix = orthogonality_gram(
            SystemKind::TrigDpt,
            2,
            &Params::coupled(rat_int(1), rat_int(3)),
            3,
            16,
        )
        .unwrap();
        assert_orthogonal(&matrix, 1e-8);
    }

    #[test]
    fn hyperbolic_deformed_family_is_orthogonal() {
        let matrix = orthogonality_gram(
            SystemKind::HypDpt,
            1,
            &Params::coupled(rat_int(1), rat_int(14)),
            3,
            16,
        )
        .unwrap();
        assert_orthogonal(&matrix, 1e-8);
        let window = matrix.x_max.expect("hyperbolic runs report their window");
        assert!(window > 1.0 && window.is_finite());
    }

    #[test]
    fn unbound_hyperbolic_levels_are_rejected() {
        let err = orthogonality_gram(
            SystemKind::HypDpt,
            1,
            &Params::coupled(rat_int(1), rat_int(8)),
            3,
            16,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            XellError::System(SystemError::UnboundLevel { .. })
        ));
    }
}
