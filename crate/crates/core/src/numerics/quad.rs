//! Gauss quadrature rules for the classical weights, via Golub–Welsch.
//!
//! The nodes are the eigenvalues of the symmetric tridiagonal recurrence
//! matrix of the weight's orthogonal polynomials, found by Sturm bisection
//! and polished with a few Newton steps; the weights come from the
//! Christoffel identity `1/w_j = sum_k p~_k(x_j)^2` over the orthonormal
//! sequence.  The orthonormal values at far-tail generalized-Laguerre nodes
//! span more than the double-precision exponent range, so the Christoffel
//! sums carry an explicit base-2 exponent.

use statrs::function::gamma::gamma;

use super::tridiag;
use crate::error::NumericsError;

/// Classical weight families with a Gauss rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightFamily {
    /// `x^a e^{-x}` on `(0, infinity)`; requires `a > -1`.
    GeneralizedLaguerre { a: f64 },
    /// `(1-x)^a (1+x)^b` on `(-1, 1)`; requires `a, b > -1`.
    Jacobi { a: f64, b: f64 },
}

impl WeightFamily {
    /// The Legendre weight (constant 1 on `(-1, 1)`).
    pub fn legendre() -> Self {
        WeightFamily::Jacobi { a: 0.0, b: 0.0 }
    }

    /// Open support interval of the weight.
    pub fn support(self) -> (f64, f64) {
        match self {
            WeightFamily::GeneralizedLaguerre { .. } => (0.0, f64::INFINITY),
            WeightFamily::Jacobi { .. } => (-1.0, 1.0),
        }
    }
}

/// A Gauss rule: `integral f(x) weight(x) dx ~ sum_j w_j f(x_j)`, exact for
/// polynomial `f` up to degree `2 * order - 1`.
///
/// Weights are mathematically strictly positive; values whose magnitude
/// falls below the smallest positive double (possible for far-tail
/// generalized-Laguerre nodes at orders in the hundreds) are stored as that
/// smallest positive value rather than 0, so the positivity invariant
/// survives the float representation.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub family: WeightFamily,
    /// Strictly ascending, strictly inside the support.
    pub nodes: Vec<f64>,
    /// Same length as `nodes`; all positive.
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Apply the rule to an integrand (already excluding the weight factor).
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .fold(0.0, |acc, term| acc + term)
    }
}

/// Three-term recurrence data: diagonal `alpha_k`, off-diagonal `beta_k`
/// (as standard deviations, not variances), and the total weight mass.
fn recurrence(
    family: WeightFamily,
    order: usize,
) -> Result<(Vec<f64>, Vec<f64>, f64), NumericsError> {
    match family {
        WeightFamily::GeneralizedLaguerre { a } => {
            if a.is_nan() || a <= -1.0 {
                return Err(NumericsError::BadWeightParameter(format!(
                    "generalized-Laguerre exponent a = {a} must be > -1"
                )));
            }
            let diag = (0..order).map(|k| 2.0 * k as f64 + a + 1.0).collect();
            let off = (1..order)
                .map(|k| (k as f64 * (k as f64 + a)).sqrt())
                .collect();
            Ok((diag, off, gamma(a + 1.0)))
        }
        WeightFamily::Jacobi { a, b } => {
            if a.is_nan() || b.is_nan() || a <= -1.0 || b <= -1.0 {
                return Err(NumericsError::BadWeightParameter(format!(
                    "Jacobi exponents (a, b) = ({a}, {b}) must both be > -1"
                )));
            }
            let s = a + b;
            let mut diag = Vec::with_capacity(order);
            diag.push((b - a) / (s + 2.0));
            for k in 1..order {
                let t = 2.0 * k as f64 + s;
                diag.push((b * b - a * a) / (t * (t + 2.0)));
            }
            let mut off = Vec::with_capacity(order.saturating_sub(1));
            if order > 1 {
                off.push(
                    (4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + s) * (2.0 + s) * (3.0 + s))).sqrt(),
                );
            }
            for k in 2..order {
                let kf = k as f64;
                let t = 2.0 * kf + s;
                let sq = 4.0 * kf * (kf + a) * (kf + b) * (kf + s)
                    / (t * t * (t + 1.0) * (t - 1.0));
                off.push(sq.sqrt());
            }
            let mu0 = (s + 1.0).exp2() * gamma(a + 1.0) * gamma(b + 1.0) / gamma(s + 2.0);
            Ok((diag, off, mu0))
        }
    }
}

/// Renormalization threshold for the scaled evaluations: factor out
/// `2^RENORM_SHIFT` whenever a running value passes `2^RENORM_SHIFT`.
const RENORM_SHIFT: i64 = 500;

/// `m * 2^e` with intermediate factors kept representable; saturates to 0 or
/// infinity at the ends of the exponent range.
fn scale_pow2(m: f64, e: i64) -> f64 {
    let mut result = m;
    let mut rem = e;
    while rem != 0 && result != 0.0 && result.is_finite() {
        let step = rem.clamp(-900, 900);
        result *= (2.0f64).powi(step as i32);
        rem -= step;
    }
    result
}

/// `sum_{k<n} p~_k(x)^2` over the orthonormal sequence, as
/// `(mantissa, base-2 exponent)`.
fn inverse_weight_scaled(diag: &[f64], off: &[f64], mu0: f64, x: f64) -> (f64, i64) {
    let n = diag.len();
    let big = scale_pow2(1.0, RENORM_SHIFT);
    let small = scale_pow2(1.0, -RENORM_SHIFT);
    let mut scale: i64 = 0;
    let mut prev = 0.0f64;
    let mut cur = 1.0 / mu0.sqrt();
    let (mut sum, mut sum_e) = (0.0f64, 0i64);
    for k in 0..n {
        if k > 0 {
            let b_here = off[k - 1];
            let b_back = if k >= 2 { off[k - 2] } else { 0.0 };
            let next = ((x - diag[k - 1]) * cur - b_back * prev) / b_here;
            prev = cur;
            cur = next;
            while cur.abs() > big || prev.abs() > big {
                cur *= small;
                prev *= small;
                scale += RENORM_SHIFT;
            }
            while cur != 0.0 && cur.abs() < small && prev.abs() < small {
                cur *= big;
                prev *= big;
                scale -= RENORM_SHIFT;
            }
        }
        let term = cur * cur;
        let term_e = 2 * scale;
        if sum == 0.0 {
            sum = term;
            sum_e = term_e;
        } else if term_e >= sum_e {
            sum = scale_pow2(sum, sum_e - term_e) + term;
            sum_e = term_e;
        } else {
            sum += scale_pow2(term, term_e - sum_e);
        }
    }
    (sum, sum_e)
}

/// Ratio `q(x)/q'(x)` for a polynomial `q` proportional to the
/// characteristic polynomial of the recurrence matrix (used as a Newton
/// correction for the nodes).  `None` when the derivative degenerates.
fn char_ratio(diag: &[f64], off: &[f64], x: f64) -> Option<f64> {
    let n = diag.len();
    let big = scale_pow2(1.0, RENORM_SHIFT);
    let small = scale_pow2(1.0, -RENORM_SHIFT);
    let (mut prev_v, mut prev_d) = (0.0f64, 0.0f64);
    let (mut cur_v, mut cur_d) = (1.0f64, 0.0f64);
    for k in 1..=n {
        let div = if k < n { off[k - 1] } else { 1.0 };
        let b_back = if k >= 2 { off[k - 2] } else { 0.0 };
        let t = x - diag[k - 1];
        let next_v = (t * cur_v - b_back * prev_v) / div;
        let next_d = (t * cur_d + cur_v - b_back * prev_d) / div;
        prev_v = cur_v;
        prev_d = cur_d;
        cur_v = next_v;
        cur_d = next_d;
        while cur_v.abs() > big || cur_d.abs() > big {
            cur_v *= small;
            cur_d *= small;
            prev_v *= small;
            prev_d *= small;
        }
    }
    if cur_v.is_finite() && cur_d.is_finite() && cur_d != 0.0 {
        Some(cur_v / cur_d)
    } else {
        None
    }
}

/// Build the Gauss rule of the given order for a classical weight.
pub fn gauss_rule(family: WeightFamily, order: usize) -> Result<QuadratureRule, NumericsError> {
    if order == 0 {
        return Err(NumericsError::BadOrder(order));
    }
    let (diag, off, mu0) = recurrence(family, order)?;
    let mut nodes = tridiag::lowest_eigenvalues(&diag, &off, order)?;
    for node in &mut nodes {
        for _ in 0..3 {
            let Some(step) = char_ratio(&diag, &off, *node) else {
                break;
            };
            let next = *node - step;
            if !next.is_finite() {
                break;
            }
            let moved = (next - *node).abs();
            *node = next;
            if moved <= f64::EPSILON * node.abs().max(1.0) {
                break;
            }
        }
    }
    nodes.sort_by(f64::total_cmp);

    let weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let (sum, sum_e) = inverse_weight_scaled(&diag, &off, mu0, x);
            scale_pow2(1.0 / sum, -sum_e).max(f64::MIN_POSITIVE)
        })
        .collect();

    let (lo, hi) = family.support();
    for pair in nodes.windows(2) {
        assert!(pair[0] < pair[1], "Gauss nodes must be strictly ascending");
    }
    for (&x, &w) in nodes.iter().zip(&weights) {
        assert!(x > lo && x < hi, "Gauss node {x} left the open support");
        assert!(w > 0.0 && w.is_finite(), "Gauss weight {w} must be positive");
    }
    Ok(QuadratureRule {
        family,
        nodes,
        weights,
    })
}
