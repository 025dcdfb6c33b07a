//! The three deformable potential families and their exact building blocks.
//!
//! Each family pairs a classical orthogonal-polynomial system — the radial
//! oscillator (Laguerre), the trigonometric Darboux-Poschl-Teller potential
//! (Jacobi), and its hyperbolic counterpart — with a degree-`ell` deforming
//! polynomial `xi_ell`.  Everything a verification needs is expressed through
//! polynomials in the sinusoidal coordinate `eta = eta(x)` (`x^2`, `cos 2x`,
//! `cosh 2x`), so that identities can be checked in exact rational
//! arithmetic; only genuinely transcendental quantities (prepotentials,
//! potentials, wavefunctions) live in the floating-point layer
//! ([`potential`]).

pub mod potential;

use num_traits::ToPrimitive;

use crate::classical::{jacobi_poly_in, laguerre_poly_in};
use crate::error::SystemError;
use crate::poly::{gh_g, gh_h, GhRing, Poly, Var, VAR_ETA, VAR_S};
use crate::ring::{factorial, pochhammer_rat, rat, rat_display, rat_int, Rational, Ring};
use crate::sturm::Bound;

// ---------------------------------------------------------------------------
// Kinds and parameters.

/// The three shape-invariant families that admit polynomial deformations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemKind {
    /// Radial oscillator: harmonic well plus centrifugal barrier on (0, inf).
    RadialOscillator,
    /// Trigonometric Darboux-Poschl-Teller potential on (0, pi/2).
    TrigDpt,
    /// Hyperbolic Darboux-Poschl-Teller potential on (0, inf).
    HypDpt,
}

impl SystemKind {
    pub const ALL: [SystemKind; 3] = [
        SystemKind::RadialOscillator,
        SystemKind::TrigDpt,
        SystemKind::HypDpt,
    ];

    /// Stable machine name (CLI flag value).
    pub fn name(self) -> &'static str {
        match self {
            SystemKind::RadialOscillator => "radial",
            SystemKind::TrigDpt => "trig-dpt",
            SystemKind::HypDpt => "hyp-dpt",
        }
    }

    pub fn from_name(name: &str) -> Option<SystemKind> {
        SystemKind::ALL.iter().copied().find(|k| k.name() == name)
    }

    /// Whether the family has the second coupling `h`.
    pub fn takes_h(self) -> bool {
        !matches!(self, SystemKind::RadialOscillator)
    }
}

/// Coupling constants: `g` alone for the radial oscillator, `(g, h)` for the
/// two Darboux-Poschl-Teller families.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub g: Rational,
    pub h: Option<Rational>,
}

impl Params {
    /// Single-coupling parameter set (radial oscillator).
    pub fn radial(g: Rational) -> Self {
        Params { g, h: None }
    }

    /// Two-coupling parameter set (trigonometric/hyperbolic families).
    pub fn coupled(g: Rational, h: Rational) -> Self {
        Params { g, h: Some(h) }
    }
}

/// Parameter shift applied by one step of the shape-invariance ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Delta {
    pub dg: i64,
    pub dh: Option<i64>,
}

/// Number of bound states of the hyperbolic family: the greatest integer
/// strictly below `(h - g)/2`, clamped at zero.
pub fn bound_state_count(g: &Rational, h: &Rational) -> u64 {
    let half = (h - g) / rat_int(2);
    let floor = half.floor();
    let strict = if floor == half { floor - rat_int(1) } else { floor };
    strict.to_integer().to_i64().map_or(0, |v| v.max(0) as u64)
}

/// Check the admissibility constraints for couplings and deformation degree.
///
/// Radial: `g > 0` and no `h`.  Trigonometric/hyperbolic: `h > g > 0`.
/// Hyperbolic additionally needs `ell` strictly below the bound-state count
/// whenever `ell >= 1` (the undeformed `ell = 0` system is always valid).
pub fn validate_params(kind: SystemKind, ell: u32, params: &Params) -> Result<(), SystemError> {
    use num_traits::Signed;
    if !params.g.is_positive() {
        return Err(SystemError::NonPositiveG(rat_display(&params.g)));
    }
    match kind {
        SystemKind::RadialOscillator => {
            if let Some(h) = &params.h {
                return Err(SystemError::UnexpectedH(rat_display(h)));
            }
        }
        SystemKind::TrigDpt | SystemKind::HypDpt => {
            let h = params.h.as_ref().ok_or(SystemError::MissingH)?;
            if h <= &params.g {
                return Err(SystemError::CouplingOrder {
                    g: rat_display(&params.g),
                    h: rat_display(h),
                });
            }
            if kind == SystemKind::HypDpt && ell >= 1 {
                let n_bound = bound_state_count(&params.g, h);
                if u64::from(ell) >= n_bound {
                    return Err(SystemError::TooFewBoundStates { ell, n_bound });
                }
            }
        }
    }
    Ok(())
}

/// Couplings shifted by `k` ladder steps: `g -> g + k`, and `h -> h + k`
/// (trigonometric) or `h -> h - k` (hyperbolic).
pub fn shifted_params_in<R: Ring>(
    kind: SystemKind,
    g: &R,
    h: Option<&R>,
    k: i64,
) -> (R, Option<R>) {
    let gk = g.add(&R::from_int(k));
    match kind {
        SystemKind::RadialOscillator => (gk, None),
        SystemKind::TrigDpt => {
            let h = h.expect("trigonometric family requires h");
            (gk, Some(h.add(&R::from_int(k))))
        }
        SystemKind::HypDpt => {
            let h = h.expect("hyperbolic family requires h");
            (gk, Some(h.sub(&R::from_int(k))))
        }
    }
}

/// Twisted couplings under which the deforming polynomial's differential
/// equation takes the base form: `(-g - ell, h + ell - 1)` (trigonometric)
/// or `(-g - ell, h - ell + 1)` (hyperbolic).
fn tilde_params_in<R: Ring>(kind: SystemKind, ell: i64, g: &R, h: Option<&R>) -> (R, R) {
    let tg = g.neg().sub(&R::from_int(ell));
    match kind {
        SystemKind::TrigDpt => {
            let h = h.expect("trigonometric family requires h");
            (tg, h.add(&R::from_int(ell - 1)))
        }
        SystemKind::HypDpt => {
            let h = h.expect("hyperbolic family requires h");
            (tg, h.sub(&R::from_int(ell - 1)))
        }
        SystemKind::RadialOscillator => {
            unreachable!("the radial tilde prepotential is not a coupling twist of the base form")
        }
    }
}

// ---------------------------------------------------------------------------
// The eta-space tables.

/// `(d eta/dx)^2` as a polynomial in `eta`: `4 eta`, `4(1 - eta^2)`,
/// `4(eta^2 - 1)`.
pub fn deta_sq_poly<R: Ring>(kind: SystemKind, var: Var) -> Poly<R> {
    match kind {
        SystemKind::RadialOscillator => Poly::new(var, vec![R::zero(), R::from_int(4)]),
        SystemKind::TrigDpt => {
            Poly::new(var, vec![R::from_int(4), R::zero(), R::from_int(-4)])
        }
        SystemKind::HypDpt => {
            Poly::new(var, vec![R::from_int(-4), R::zero(), R::from_int(4)])
        }
    }
}

/// `d^2 eta/dx^2` as a polynomial in `eta`: `2`, `-4 eta`, `4 eta`.  Obtained
/// by differentiating the `(d eta/dx)^2` table once and halving, so the two
/// tables stay consistent by construction.
pub fn eta_second_poly<R: Ring>(kind: SystemKind, var: Var) -> Poly<R> {
    deta_sq_poly::<R>(kind, var).derivative().scale_rat(&rat(1, 2))
}

/// `(d eta/dx) * (d w0/dx)` as a polynomial in `eta`:
/// `2(g - eta)`, `-2(g - h + (g + h) eta)`, `2(g + h + (g - h) eta)`.
pub fn dw0_eta_poly<R: Ring>(kind: SystemKind, g: &R, h: Option<&R>, var: Var) -> Poly<R> {
    let two = R::from_int(2);
    match kind {
        SystemKind::RadialOscillator => {
            Poly::new(var, vec![g.mul(&two), R::from_int(-2)])
        }
        SystemKind::TrigDpt => {
            let h = h.expect("trigonometric family requires h");
            Poly::new(
                var,
                vec![h.sub(g).mul(&two), g.add(h).mul(&R::from_int(-2))],
            )
        }
        SystemKind::HypDpt => {
            let h = h.expect("hyperbolic family requires h");
            Poly::new(var, vec![g.add(h).mul(&two), g.sub(h).mul(&two)])
        }
    }
}

/// `(d eta/dx) * (d tilde-w0/dx)` as a polynomial in `eta`, where tilde-w0
/// is the prepotential appearing in the deforming polynomial's differential
/// equation.  Radial: `2(g + ell - 1 + eta)`; the other two families reuse
/// the base table at twisted couplings.
pub fn dtw0_eta_poly<R: Ring>(
    kind: SystemKind,
    ell: i64,
    g: &R,
    h: Option<&R>,
    var: Var,
) -> Poly<R> {
    match kind {
        SystemKind::RadialOscillator => {
            let c0 = g.add(&R::from_int(ell - 1)).mul(&R::from_int(2));
            Poly::new(var, vec![c0, R::from_int(2)])
        }
        SystemKind::TrigDpt | SystemKind::HypDpt => {
            let (tg, th) = tilde_params_in(kind, ell, g, h);
            dw0_eta_poly(kind, &tg, Some(&th), var)
        }
    }
}

// ---------------------------------------------------------------------------
// Energies.

/// Closed-form level `E_n`: `4n`, `4n(n + g + h)`, `4n(h - g - n)`.
pub fn energy_in<R: Ring>(kind: SystemKind, n: i64, g: &R, h: Option<&R>) -> R {
    let four_n = R::from_int(4 * n);
    match kind {
        SystemKind::RadialOscillator => four_n,
        SystemKind::TrigDpt => {
            let h = h.expect("trigonometric family requires h");
            g.add(h).add(&R::from_int(n)).mul(&four_n)
        }
        SystemKind::HypDpt => {
            let h = h.expect("hyperbolic family requires h");
            h.sub(g).sub(&R::from_int(n)).mul(&four_n)
        }
    }
}

/// First level gap `E_1`: `4`, `4(1 + g + h)`, `4(h - g - 1)`.
pub fn energy_first_in<R: Ring>(kind: SystemKind, g: &R, h: Option<&R>) -> R {
    energy_in(kind, 1, g, h)
}

/// Eigenvalue of the deforming polynomial's differential equation:
/// `-4 ell` (radial) or the closed-form level at the twisted couplings.
pub fn tilde_energy_in<R: Ring>(kind: SystemKind, ell: i64, g: &R, h: Option<&R>) -> R {
    match kind {
        SystemKind::RadialOscillator => R::from_int(-4 * ell),
        SystemKind::TrigDpt | SystemKind::HypDpt => {
            let (tg, th) = tilde_params_in(kind, ell, g, h);
            energy_in(kind, ell, &tg, Some(&th))
        }
    }
}

/// `E_n` at the given couplings, cross-checked against the telescoped sum of
/// first gaps along the shape-invariance ladder.  The two routes are
/// independent readings of the same algebra, so disagreement is a bug, not a
/// tolerance matter.
pub fn energy_level(kind: SystemKind, n: u32, params: &Params) -> Rational {
    let g = &params.g;
    let h = params.h.as_ref();
    let closed = energy_in(kind, i64::from(n), g, h);
    let mut telescoped: Rational = Ring::zero();
    for k in 0..i64::from(n) {
        let (gk, hk) = shifted_params_in(kind, g, h, k);
        telescoped += energy_first_in(kind, &gk, hk.as_ref());
    }
    assert_eq!(
        closed, telescoped,
        "closed-form level must equal the telescoped sum of first gaps"
    );
    closed
}

// ---------------------------------------------------------------------------
// Classical and deforming polynomials.

/// The classical polynomial part of the undeformed eigenfunctions, as a
/// polynomial in `eta`: Laguerre `L_n^(g-1/2)` or Jacobi
/// `P_n^(g-1/2, h-1/2)` / `P_n^(g-1/2, -h-1/2)`.  `n = -1` denotes the zero
/// polynomial.
pub fn classical_poly_in<R: Ring>(
    kind: SystemKind,
    n: i64,
    g: &R,
    h: Option<&R>,
    var: Var,
) -> Poly<R> {
    let half = rat(1, 2);
    match kind {
        SystemKind::RadialOscillator => {
            let alpha = g.sub(&R::from_rat(&half));
            laguerre_poly_in(n, &alpha, var).expect("degree >= -1")
        }
        SystemKind::TrigDpt => {
            let h = h.expect("trigonometric family requires h");
            let alpha = g.sub(&R::from_rat(&half));
            let beta = h.sub(&R::from_rat(&half));
            jacobi_poly_in(n, &alpha, &beta, var).expect("degree >= -1")
        }
        SystemKind::HypDpt => {
            let h = h.expect("hyperbolic family requires h");
            let alpha = g.sub(&R::from_rat(&half));
            let beta = h.neg().sub(&R::from_rat(&half));
            jacobi_poly_in(n, &alpha, &beta, var).expect("degree >= -1")
        }
    }
}

/// Rational-coupling wrapper for [`classical_poly_in`].
pub fn classical_poly(kind: SystemKind, n: i64, params: &Params, var: Var) -> Poly<Rational> {
    classical_poly_in(kind, n, &params.g, params.h.as_ref(), var)
}

/// The degree-`ell` deforming polynomial, as a polynomial in `eta`:
/// `L_ell^(g+ell-3/2)(-eta)` (radial) or the Jacobi polynomial at twisted
/// parameters `(-g-ell-1/2, +-h+ell-3/2)`.  A negative `ell` denotes the
/// zero polynomial (the same convention as degree `-1` classical
/// polynomials; only `ell = -1` arises in practice).
pub fn xi_poly_in<R: Ring>(
    kind: SystemKind,
    ell: i64,
    g: &R,
    h: Option<&R>,
    var: Var,
) -> Poly<R> {
    if ell < 0 {
        return Poly::zero_in(var);
    }
    match kind {
        SystemKind::RadialOscillator => {
            let alpha = g.add(&R::from_rat(&(rat_int(ell) - rat(3, 2))));
            laguerre_poly_in(ell, &alpha, var)
                .expect("degree >= 0")
                .substitute_affine(&R::from_int(-1), &R::zero())
        }
        SystemKind::TrigDpt => {
            let h = h.expect("trigonometric family requires h");
            let alpha = g.neg().add(&R::from_rat(&(rat_int(-ell) - rat(1, 2))));
            let beta = h.add(&R::from_rat(&(rat_int(ell) - rat(3, 2))));
            jacobi_poly_in(ell, &alpha, &beta, var).expect("degree >= 0")
        }
        SystemKind::HypDpt => {
            let h = h.expect("hyperbolic family requires h");
            let alpha = g.neg().add(&R::from_rat(&(rat_int(-ell) - rat(1, 2))));
            let beta = h.neg().add(&R::from_rat(&(rat_int(ell) - rat(3, 2))));
            jacobi_poly_in(ell, &alpha, &beta, var).expect("degree >= 0")
        }
    }
}

/// Rational-coupling wrapper for [`xi_poly_in`] in the variable `eta`.
pub fn xi_poly(kind: SystemKind, ell: i64, params: &Params) -> Poly<Rational> {
    xi_poly_in(kind, ell, &params.g, params.h.as_ref(), VAR_ETA)
}

/// The deforming polynomial at couplings shifted by `k` ladder steps.
pub fn xi_poly_shifted(kind: SystemKind, ell: i64, params: &Params, k: i64) -> Poly<Rational> {
    let (gk, hk) = shifted_params_in(kind, &params.g, params.h.as_ref(), k);
    xi_poly_in(kind, ell, &gk, hk.as_ref(), VAR_ETA)
}

// ---------------------------------------------------------------------------
// Positivity certificate.

/// One coefficient of the positivity re-expansion, carried with the value
/// the closed-form product formula predicts for it.
#[derive(Debug, Clone, PartialEq)]
pub struct PositivityEntry {
    pub power: usize,
    /// Coefficient obtained by re-expanding the deforming polynomial.
    pub expanded: Rational,
    /// The same coefficient from the closed-form product of Pochhammer
    /// symbols and factorials — each factor visibly positive.
    pub closed_form: Rational,
}

/// Proof object that the deforming polynomial has no zero on the physical
/// domain: re-expanded in a variable that is positive on the domain
/// (`eta`, `sin^2 x`, or `sinh^2 x`), every coefficient is positive, and
/// matches a closed-form product of positive factors.
#[derive(Debug, Clone)]
pub struct PositivityCertificate {
    pub kind: SystemKind,
    pub ell: u32,
    /// Human-readable name of the re-expansion variable.
    pub variable: &'static str,
    pub entries: Vec<PositivityEntry>,
}

impl PositivityCertificate {
    /// Index of the first entry that mismatches or is non-positive.
    pub fn first_failure(&self) -> Option<usize> {
        use num_traits::Signed;
        self.entries
            .iter()
            .position(|e| e.expanded != e.closed_form || !e.closed_form.is_positive())
    }

    pub fn holds(&self) -> bool {
        self.first_failure().is_none()
    }
}

/// Build the positivity certificate for `xi_ell`.
///
/// Radial: the coefficients of `eta^k` are
/// `(g + ell + k - 1/2)_(ell-k) / (k! (ell-k)!)`.  Trigonometric and
/// hyperbolic: `(-1)^ell xi_ell`, rewritten in `s = sin^2 x` (i.e.
/// `eta = 1 - 2s`) or `s = sinh^2 x` (`eta = 1 + 2s`), has coefficients
/// `(g+1/2)_ell / ell! * (ell-k+1)_k (c)_k / (k! (g+ell-k+1/2)_k)` with
/// `c = h - g + ell - 1` resp. `c = g + h + 2 - ell - k`.  Aborts with the
/// offending index if any entry fails — for admissible couplings that would
/// signal an internal bug.
pub fn xi_positivity_certificate(
    kind: SystemKind,
    ell: u32,
    params: &Params,
) -> Result<PositivityCertificate, SystemError> {
    validate_params(kind, ell, params)?;
    let le = i64::from(ell);
    let g = &params.g;
    let xi = xi_poly(kind, le, params);
    let sign = if ell.is_multiple_of(2) {
        rat_int(1)
    } else {
        rat_int(-1)
    };
    let (variable, expanded) = match kind {
        SystemKind::RadialOscillator => ("eta", xi),
        SystemKind::TrigDpt => (
            "sin^2(x)",
            xi.substitute_affine(&rat_int(-2), &rat_int(1))
                .scale(&sign)
                .with_var(VAR_S),
        ),
        SystemKind::HypDpt => (
            "sinh^2(x)",
            xi.substitute_affine(&rat_int(2), &rat_int(1))
                .scale(&sign)
                .with_var(VAR_S),
        ),
    };
    let mut entries = Vec::with_capacity(ell as usize + 1);
    for k in 0..=(ell as usize) {
        let closed_form = match kind {
            SystemKind::RadialOscillator => {
                let base = g + rat_int(le + k as i64) - rat(1, 2);
                pochhammer_rat(&base, ell as usize - k)
                    / (Rational::from_integer(factorial(k as u64))
                        * Rational::from_integer(factorial(u64::from(ell) - k as u64)))
            }
            SystemKind::TrigDpt | SystemKind::HypDpt => {
                let h = params.h.as_ref().expect("validated above");
                let prefactor = pochhammer_rat(&(g + rat(1, 2)), ell as usize)
                    / Rational::from_integer(factorial(u64::from(ell)));
                let second_base = match kind {
                    SystemKind::TrigDpt => h - g + rat_int(le - 1),
                    SystemKind::HypDpt => g + h + rat_int(2 - le - k as i64),
                    SystemKind::RadialOscillator => unreachable!(),
                };
                let falling = pochhammer_rat(&rat_int(le - k as i64 + 1), k);
                let denom = Rational::from_integer(factorial(k as u64))
                    * pochhammer_rat(&(g + rat_int(le - k as i64) + rat(1, 2)), k);
                prefactor * falling * pochhammer_rat(&second_base, k) / denom
            }
        };
        entries.push(PositivityEntry {
            power: k,
            expanded: expanded.coeff(k),
            closed_form,
        });
    }
    let cert = PositivityCertificate {
        kind,
        ell,
        variable,
        entries,
    };
    if let Some(bad) = cert.first_failure() {
        panic!(
            "positivity certificate for {} ell={} fails at coefficient {}: \
             expansion and closed form must agree and be positive",
            kind.name(),
            ell,
            bad
        );
    }
    Ok(cert)
}

// ---------------------------------------------------------------------------
// The deformed (exceptional) polynomial family.

/// A member of the degree-`(ell + n)` deformed polynomial family, orthogonal
/// under the deformed measure although its degree sequence starts at `ell`.
#[derive(Debug, Clone)]
pub struct XellPoly {
    pub kind: SystemKind,
    pub ell: u32,
    pub n: u32,
    pub params: Params,
    /// The polynomial itself, in the variable `eta`.
    pub poly: Poly<Rational>,
}

fn guard_denominator(value: &Rational, factor: &str) -> Result<(), SystemError> {
    if Ring::is_zero(value) {
        Err(SystemError::VanishingDenominator {
            factor: factor.to_string(),
        })
    } else {
        Ok(())
    }
}

/// Construct the `n`-th member of the deformed family at deformation degree
/// `ell`.  `ell = 0` returns the classical polynomial.  The mixing
/// coefficients divide by structural factors of the couplings; each is
/// checked and reported by name before any division.
pub fn xell_poly(
    kind: SystemKind,
    ell: u32,
    n: u32,
    params: &Params,
) -> Result<XellPoly, SystemError> {
    validate_params(kind, ell, params)?;
    let le = i64::from(ell);
    let nn = i64::from(n);
    let g = &params.g;

    let poly = if ell == 0 {
        classical_poly(kind, nn, params, VAR_ETA)
    } else {
        match kind {
            SystemKind::RadialOscillator => {
                let xi_a = xi_poly_in(kind, le, &(g + rat_int(1)), None, VAR_ETA);
                let xi_b = xi_poly_in(kind, le - 1, &(g + rat_int(2)), None, VAR_ETA);
                let shifted = g + rat_int(le);
                let p_n = classical_poly_in(kind, nn, &shifted, None, VAR_ETA);
                let p_m = classical_poly_in(kind, nn - 1, &shifted, None, VAR_ETA);
                &(&xi_a * &p_n) - &(&xi_b * &p_m)
            }
            SystemKind::TrigDpt => {
                let h = params.h.as_ref().expect("validated above");
                let d1 = -g + h + rat_int(2 * le - 2);
                let d2 = g + h + rat_int(2 * nn + 2 * le - 1);
                let d3 = g * rat_int(2) + rat_int(2 * nn + 1);
                guard_denominator(&d1, "-g+h+2*ell-2")?;
                guard_denominator(&d2, "g+h+2*n+2*ell-1")?;
                guard_denominator(&d3, "2*g+2*n+1")?;
                let xi_l =
                    xi_poly_in(kind, le, &(g + rat_int(1)), Some(&(h + rat_int(1))), VAR_ETA);
                let xi_l1 = xi_poly_in(kind, le - 1, g, Some(&(h + rat_int(2))), VAR_ETA);
                let xi_l2 =
                    xi_poly_in(kind, le - 2, &(g + rat_int(1)), Some(&(h + rat_int(3))), VAR_ETA);
                let top = -g + h + rat_int(le - 1);
                let c1 = rat_int(2 * nn) * &top / (&d1 * &d2);
                let c2 = rat_int(nn) * (h * rat_int(2) + rat_int(4 * le - 3)) / (&d3 * &d1);
                let cb = &top * (g * rat_int(2) + rat_int(2 * nn + 2 * le - 1)) / (&d3 * &d2);
                let a = &(&xi_l + &xi_l1.scale(&c1)) - &xi_l2.scale(&c2);
                let b = xi_l1.scale(&cb);
                let (gs, hs) = shifted_params_in(kind, g, params.h.as_ref(), le);
                let p_n = classical_poly_in(kind, nn, &gs, hs.as_ref(), VAR_ETA);
                let p_m = classical_poly_in(kind, nn - 1, &gs, hs.as_ref(), VAR_ETA);
                &(&a * &p_n) + &(&b * &p_m)
            }
            SystemKind::HypDpt => {
                let h = params.h.as_ref().expect("validated above");
                let d1 = -g - h + rat_int(2 * le - 2);
                let d2 = g - h + rat_int(2 * nn + 2 * le - 1);
                let d3 = g * rat_int(2) + rat_int(2 * nn + 1);
                guard_denominator(&d1, "-g-h+2*ell-2")?;
                guard_denominator(&d2, "g-h+2*n+2*ell-1")?;
                guard_denominator(&d3, "2*g+2*n+1")?;
                let xi_l =
                    xi_poly_in(kind, le, &(g + rat_int(1)), Some(&(h - rat_int(1))), VAR_ETA);
                let xi_l1 = xi_poly_in(kind, le - 1, g, Some(&(h - rat_int(2))), VAR_ETA);
                let xi_l2 =
                    xi_poly_in(kind, le - 2, &(g + rat_int(1)), Some(&(h - rat_int(3))), VAR_ETA);
                let top = -g - h + rat_int(le - 1);
                let c1 = rat_int(2 * nn) * &top / (&d1 * &d2);
                let c2 = rat_int(nn) * (h * rat_int(-2) + rat_int(4 * le - 3)) / (&d3 * &d1);
                let cb = &top * (g * rat_int(2) + rat_int(2 * nn + 2 * le - 1)) / (&d3 * &d2);
                let a = &(&xi_l + &xi_l1.scale(&c1)) - &xi_l2.scale(&c2);
                let b = xi_l1.scale(&cb);
                let (gs, hs) = shifted_params_in(kind, g, params.h.as_ref(), le);
                let p_n = classical_poly_in(kind, nn, &gs, hs.as_ref(), VAR_ETA);
                let p_m = classical_poly_in(kind, nn - 1, &gs, hs.as_ref(), VAR_ETA);
                &(&a * &p_n) + &(&b * &p_m)
            }
        }
    };

    assert_eq!(
        poly.degree(),
        Some((ell + n) as usize),
        "deformed polynomial must have degree ell + n"
    );
    Ok(XellPoly {
        kind,
        ell,
        n,
        params: params.clone(),
        poly,
    })
}

// ---------------------------------------------------------------------------
// Operator-ladder construction of the classical polynomials.

/// Build the degree-`n` classical polynomial by applying `n` raising steps of
/// the shape-invariance ladder in `eta`-space, starting from the constant 1.
///
/// Acting on states of the form `exp(w0 at couplings shifted k+1 steps) *
/// q(eta)`, one raising operator produces `exp(w0 at k steps) * q~(eta)`
/// where, after stripping the gauge factor `(d eta/dx)/s` (with `s` the
/// leading coefficient of the `d^2 eta/dx^2` table),
/// `q~ = -(aplus * q) - (getaprime * q')`, `aplus` the sum of the `dw0`
/// tables at steps `k` and `k+1` over `s`, and `getaprime` the
/// `(d eta/dx)^2` table over `s`.  The result must be collinear with the
/// classical polynomial — an algebraic reconstruction of the entire
/// eigenfunction tower from the ground state alone.
pub fn rodrigues_polynomial(
    kind: SystemKind,
    n: u32,
    params: &Params,
) -> Result<Poly<Rational>, SystemError> {
    validate_params(kind, 0, params)?;
    let g = &params.g;
    let h = params.h.as_ref();
    let eta2 = eta_second_poly::<Rational>(kind, VAR_ETA);
    let s_inv = eta2
        .leading()
        .expect("the d^2 eta/dx^2 table is never the zero polynomial")
        .recip();
    let getaprime = deta_sq_poly::<Rational>(kind, VAR_ETA).scale(&s_inv);
    let mut q: Poly<Rational> = Poly::new(VAR_ETA, vec![rat_int(1)]);
    for k in (0..i64::from(n)).rev() {
        let (gk, hk) = shifted_params_in(kind, g, h, k);
        let (gk1, hk1) = shifted_params_in(kind, g, h, k + 1);
        let aplus = (&dw0_eta_poly(kind, &gk1, hk1.as_ref(), VAR_ETA)
            + &dw0_eta_poly(kind, &gk, hk.as_ref(), VAR_ETA))
            .scale(&s_inv);
        let qp = q.derivative();
        q = (&(&aplus * &q) + &(&getaprime * &qp)).neg();
    }
    Ok(q)
}

// ---------------------------------------------------------------------------
// The deforming polynomial's differential equation.

/// Residual of the second-order equation satisfied by `xi_ell`, rewritten in
/// `eta`-space:
/// `-(xi'' * (d eta/dx)^2 + xi' * d^2 eta/dx^2) - 2 * dtw0 * xi' - E~ * xi`,
/// where primes are `d/d eta` and every factor is one of the exact tables.
/// Contract: the zero polynomial for every `ell >= 0`.
pub fn xi_ode_residual_in<R: Ring>(
    kind: SystemKind,
    ell: i64,
    g: &R,
    h: Option<&R>,
    var: Var,
) -> Poly<R> {
    let xi = xi_poly_in(kind, ell, g, h, var);
    let xi_d1 = xi.derivative();
    let xi_d2 = xi_d1.derivative();
    let deta_sq = deta_sq_poly::<R>(kind, var);
    let eta_second = eta_second_poly::<R>(kind, var);
    let dtw0 = dtw0_eta_poly(kind, ell, g, h, var);
    let tilde_e = tilde_energy_in(kind, ell, g, h);
    let kinetic = (&(&xi_d2 * &deta_sq) + &(&xi_d1 * &eta_second)).neg();
    let drift = (&dtw0 * &xi_d1).scale(&R::from_int(2));
    &(&kinetic - &drift) - &xi.scale(&tilde_e)
}

/// Rational-coupling residual of the deforming polynomial's equation.
pub fn xi_ode_residual(kind: SystemKind, ell: i64, params: &Params) -> Poly<Rational> {
    xi_ode_residual_in(kind, ell, &params.g, params.h.as_ref(), VAR_ETA)
}

/// Fully symbolic residual over `Q[g][h]` (the radial family only involves
/// `g`).
pub fn xi_ode_residual_symbolic(kind: SystemKind, ell: i64) -> Poly<GhRing> {
    let g = gh_g();
    let h = gh_h();
    let h_opt = if kind.takes_h() { Some(&h) } else { None };
    xi_ode_residual_in(kind, ell, &g, h_opt, VAR_ETA)
}

// ---------------------------------------------------------------------------
// Assembled system description.

/// Everything the identity and numeric layers need about one deformed
/// system, precomputed exactly.
#[derive(Debug, Clone)]
pub struct SystemData {
    pub kind: SystemKind,
    pub ell: u32,
    pub params: Params,
    pub delta: Delta,
    /// Open interval in `eta` that the physical domain maps onto.
    pub eta_domain: (Bound, Bound),
    /// `(d eta/dx)^2` as a polynomial in `eta`.
    pub deta_sq: Poly<Rational>,
    /// `d^2 eta/dx^2` as a polynomial in `eta`.
    pub eta_second: Poly<Rational>,
    /// `(d eta/dx) * (d w0/dx)` at the base couplings.
    pub dw0_eta: Poly<Rational>,
    /// `(d eta/dx) * (d tilde-w0/dx)` for this deformation degree.
    pub dtw0_eta: Poly<Rational>,
    /// Eigenvalue of the deforming polynomial's differential equation.
    pub tilde_e: Rational,
    /// First level gap at couplings shifted by `ell` steps.
    pub e1_shifted: Rational,
    /// Bound-state count (`None` = infinitely many).
    pub n_bound: Option<u64>,
}

/// Validate the couplings and assemble the exact per-system tables.
pub fn make_system(kind: SystemKind, ell: u32, params: &Params) -> Result<SystemData, SystemError> {
    validate_params(kind, ell, params)?;
    let le = i64::from(ell);
    let g = &params.g;
    let h = params.h.as_ref();
    let delta = match kind {
        SystemKind::RadialOscillator => Delta { dg: 1, dh: None },
        SystemKind::TrigDpt => Delta { dg: 1, dh: Some(1) },
        SystemKind::HypDpt => Delta { dg: 1, dh: Some(-1) },
    };
    let eta_domain = match kind {
        SystemKind::RadialOscillator => (Bound::finite(rat_int(0)), Bound::PosInf),
        SystemKind::TrigDpt => (Bound::finite(rat_int(-1)), Bound::finite(rat_int(1))),
        SystemKind::HypDpt => (Bound::finite(rat_int(1)), Bound::PosInf),
    };
    let (gs, hs) = shifted_params_in(kind, g, h, le);
    let n_bound = match kind {
        SystemKind::HypDpt => Some(bound_state_count(
            g,
            h.expect("validated above"),
        )),
        _ => None,
    };
    Ok(SystemData {
        kind,
        ell,
        params: params.clone(),
        delta,
        eta_domain,
        deta_sq: deta_sq_poly(kind, VAR_ETA),
        eta_second: eta_second_poly(kind, VAR_ETA),
        dw0_eta: dw0_eta_poly(kind, g, h, VAR_ETA),
        dtw0_eta: dtw0_eta_poly(kind, le, g, h, VAR_ETA),
        tilde_e: tilde_energy_in(kind, le, g, h),
        e1_shifted: energy_first_in(kind, &gs, hs.as_ref()),
        n_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VAR_G;
    use crate::sturm::sturm_count_roots;

    fn trig(g: i64, h_num: i64, h_den: i64) -> Params {
        Params::coupled(rat_int(g), rat(h_num, h_den))
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in SystemKind::ALL {
            assert_eq!(SystemKind::from_name(kind.name()), Some(kind));
        }
        assert_eq!(SystemKind::from_name("nope"), None);
    }

    #[test]
    fn validation_rejects_bad_couplings() {
        let err = validate_params(
            SystemKind::RadialOscillator,
            1,
            &Params::radial(rat_int(-1)),
        )
        .unwrap_err();
        assert!(matches!(err, SystemError::NonPositiveG(_)));

        let err = validate_params(
            SystemKind::RadialOscillator,
            1,
            &Params::coupled(rat_int(1), rat_int(2)),
        )
        .unwrap_err();
        assert!(matches!(err, SystemError::UnexpectedH(_)));

        let err =
            validate_params(SystemKind::TrigDpt, 1, &Params::radial(rat_int(1))).unwrap_err();
        assert_eq!(err, SystemError::MissingH);

        // h > g is required: g=1, h=1/2 violates it.
        let err = validate_params(SystemKind::TrigDpt, 1, &trig(1, 1, 2)).unwrap_err();
        assert!(matches!(err, SystemError::CouplingOrder { .. }));
    }

    #[test]
    fn hyperbolic_bound_state_count() {
        assert_eq!(bound_state_count(&rat_int(1), &rat_int(10)), 4); // (h-g)/2 = 4.5
        assert_eq!(bound_state_count(&rat_int(1), &rat(23, 2)), 5); // 5.25
        assert_eq!(bound_state_count(&rat_int(1), &rat_int(9)), 3); // 4 exactly -> strictly below
        assert_eq!(bound_state_count(&rat_int(1), &rat_int(2)), 0);
    }

    #[test]
    fn hyperbolic_rejects_too_deep_deformation() {
        let params = Params::coupled(rat_int(1), rat_int(10)); // n_bound = 4
        assert!(validate_params(SystemKind::HypDpt, 3, &params).is_ok());
        let err = validate_params(SystemKind::HypDpt, 4, &params).unwrap_err();
        assert_eq!(
            err,
            SystemError::TooFewBoundStates {
                ell: 4,
                n_bound: 4
            }
        );
        // ell = 0 is the undeformed system; always admissible for h > g > 0.
        assert!(validate_params(SystemKind::HypDpt, 0, &trig(1, 2, 1)).is_ok());
    }

    #[test]
    fn radial_system_tables() {
        let data = make_system(SystemKind::RadialOscillator, 2, &Params::radial(rat_int(1)))
            .unwrap();
        assert_eq!(data.delta, Delta { dg: 1, dh: None });
        assert_eq!(data.deta_sq, Poly::new(VAR_ETA, vec![rat_int(0), rat_int(4)]));
        assert_eq!(data.eta_second, Poly::new(VAR_ETA, vec![rat_int(2)]));
        // 2(g - eta) at g = 1.
        assert_eq!(data.dw0_eta, Poly::new(VAR_ETA, vec![rat_int(2), rat_int(-2)]));
        // 2(g + ell - 1 + eta) at g = 1, ell = 2.
        assert_eq!(data.dtw0_eta, Poly::new(VAR_ETA, vec![rat_int(4), rat_int(2)]));
        assert_eq!(data.tilde_e, rat_int(-8));
        assert_eq!(data.e1_shifted, rat_int(4));
        assert_eq!(data.n_bound, None);
        assert_eq!(data.eta_domain, (Bound::finite(rat_int(0)), Bound::PosInf));
    }

    #[test]
    fn trig_and_hyp_system_tables() {
        let data = make_system(SystemKind::TrigDpt, 1, &trig(1, 2, 1)).unwrap();
        assert_eq!(data.delta, Delta { dg: 1, dh: Some(1) });
        assert_eq!(
            data.deta_sq,
            Poly::new(VAR_ETA, vec![rat_int(4), rat_int(0), rat_int(-4)])
        );
        assert_eq!(data.eta_second, Poly::new(VAR_ETA, vec![rat_int(0), rat_int(-4)]));
        // -2(g - h + (g+h) eta) = 2 - 6 eta at (g,h) = (1,2).
        assert_eq!(data.dw0_eta, Poly::new(VAR_ETA, vec![rat_int(2), rat_int(-6)]));
        // 2(g + h + 2 ell - 1 + (g - h + 1) eta) = 8 + 0*eta at ell = 1.
        assert_eq!(data.dtw0_eta, Poly::new(VAR_ETA, vec![rat_int(8)]));
        // E_1 at twisted couplings (-2, 2): 4*1*(1 + (-2) + 2) = 4.
        assert_eq!(data.tilde_e, rat_int(4));
        // E_1(g+1, h+1) = 4(1 + 2 + 3) = 24.
        assert_eq!(data.e1_shifted, rat_int(24));

        let data = make_system(SystemKind::HypDpt, 1, &trig(1, 12, 1)).unwrap();
        assert_eq!(data.delta, Delta { dg: 1, dh: Some(-1) });
        assert_eq!(
            data.deta_sq,
            Poly::new(VAR_ETA, vec![rat_int(-4), rat_int(0), rat_int(4)])
        );
        assert_eq!(data.eta_second, Poly::new(VAR_ETA, vec![rat_int(0), rat_int(4)]));
        // 2(g + h + (g - h) eta) = 26 - 22 eta.
        assert_eq!(data.dw0_eta, Poly::new(VAR_ETA, vec![rat_int(26), rat_int(-22)]));
        // tilde couplings (-2, 12): 2(g+h+(g-h) eta) = 20 - 28 eta.
        assert_eq!(data.dtw0_eta, Poly::new(VAR_ETA, vec![rat_int(20), rat_int(-28)]));
        // E_1(-2, 12) hyperbolic: 4*(12 - (-2) - 1) = 52.
        assert_eq!(data.tilde_e, rat_int(52));
        // E_1(g+1, h-1) = 4*(11 - 2 - 1) = 32.
        assert_eq!(data.e1_shifted, rat_int(32));
        assert_eq!(data.n_bound, Some(5));
    }

    #[test]
    fn energy_levels_match_examples() {
        assert_eq!(
            energy_level(SystemKind::RadialOscillator, 3, &Params::radial(rat_int(1))),
            rat_int(12)
        );
        assert_eq!(energy_level(SystemKind::TrigDpt, 1, &trig(1, 2, 1)), rat_int(16));
        let hyp = Params::coupled(rat_int(1), rat_int(10));
        assert_eq!(energy_level(SystemKind::HypDpt, 2, &hyp), rat_int(56));
        // The two first gaps that telescope into 56.
        let (g1, h1) = shifted_params_in(SystemKind::HypDpt, &hyp.g, hyp.h.as_ref(), 1);
        assert_eq!(
            energy_first_in(SystemKind::HypDpt, &hyp.g, hyp.h.as_ref()),
            rat_int(32)
        );
        assert_eq!(energy_first_in(SystemKind::HypDpt, &g1, h1.as_ref()), rat_int(24));
    }

    #[test]
    fn xi_matches_hand_expansions() {
        // Radial, ell = 1, symbolic g: L_1^(g-1/2)(-eta) = (g + 1/2) + eta.
        let g = Poly::<Rational>::gen(VAR_G);
        let xi = xi_poly_in(SystemKind::RadialOscillator, 1, &g, None, VAR_ETA);
        assert_eq!(xi.coeff(0), Poly::new(VAR_G, vec![rat(1, 2), rat_int(1)]));
        assert_eq!(xi.coeff(1), Poly::constant(rat_int(1)));

        // Trigonometric, ell = 1, symbolic g, h:
        // coefficients [-(g+h+1)/2, (h-g)/2].
        let g = gh_g();
        let h = gh_h();
        let xi = xi_poly_in(SystemKind::TrigDpt, 1, &g, Some(&h), VAR_ETA);
        let expect_c0 = (&(&g + &h) + &GhRing::from_int(1)).scale_rat(&rat(-1, 2));
        let expect_c1 = (&h - &g).scale_rat(&rat(1, 2));
        assert_eq!(xi.coeff(0), expect_c0);
        assert_eq!(xi.coeff(1), expect_c1);

        // ell = 0 is the constant 1; ell = -1 the zero polynomial.  The
        // hyperbolic couplings must be admissible for the ell's below, or
        // the leading coefficient (ell-g-h-1)_ell of its xi could vanish.
        for kind in SystemKind::ALL {
            let params = match kind {
                SystemKind::RadialOscillator => Params::radial(rat_int(1)),
                SystemKind::TrigDpt => trig(1, 3, 1),
                SystemKind::HypDpt => trig(1, 14, 1),
            };
            assert_eq!(xi_poly(kind, 0, &params), Poly::new(VAR_ETA, vec![rat_int(1)]));
            assert!(xi_poly(kind, -1, &params).is_zero());
            for ell in 1..=4 {
                assert_eq!(xi_poly(kind, ell, &params).degree(), Some(ell as usize));
            }
        }
    }

    #[test]
    fn positivity_certificates_match_closed_forms() {
        // Radial, ell = 2, g = 1: {(g+3/2)(g+5/2)/2, g+5/2, 1/2}.
        let cert = xi_positivity_certificate(
            SystemKind::RadialOscillator,
            2,
            &Params::radial(rat_int(1)),
        )
        .unwrap();
        assert_eq!(cert.variable, "eta");
        let values: Vec<Rational> = cert.entries.iter().map(|e| e.closed_form.clone()).collect();
        assert_eq!(values, vec![rat(35, 8), rat(7, 2), rat(1, 2)]);
        assert!(cert.holds());

        // Trigonometric, ell = 1, g = 1, h = 2: {3/2, 1}.
        let cert = xi_positivity_certificate(SystemKind::TrigDpt, 1, &trig(1, 2, 1)).unwrap();
        assert_eq!(cert.variable, "sin^2(x)");
        let values: Vec<Rational> = cert.entries.iter().map(|e| e.closed_form.clone()).collect();
        assert_eq!(values, vec![rat(3, 2), rat_int(1)]);

        // Hyperbolic spot check plus the trivial ell = 0 certificate.
        let cert =
            xi_positivity_certificate(SystemKind::HypDpt, 2, &Params::coupled(rat_int(1), rat_int(10)))
                .unwrap();
        assert_eq!(cert.variable, "sinh^2(x)");
        assert!(cert.holds());
        let cert = xi_positivity_certificate(
            SystemKind::RadialOscillator,
            0,
            &Params::radial(rat(7, 3)),
        )
        .unwrap();
        assert_eq!(cert.entries.len(), 1);
        assert_eq!(cert.entries[0].closed_form, rat_int(1));
    }

    #[test]
    fn xell_radial_ground_member() {
        // ell = 1, n = 0, g = 1: the whole construction collapses to
        // xi_1 at g+1, i.e. (g + 3/2) + eta = 5/2 + eta.
        let x = xell_poly(SystemKind::RadialOscillator, 1, 0, &Params::radial(rat_int(1)))
            .unwrap();
        assert_eq!(x.poly, Poly::new(VAR_ETA, vec![rat(5, 2), rat_int(1)]));
    }

    #[test]
    fn xell_degree_and_root_counts() {
        let radial = Params::radial(rat_int(1));
        let trig_p = trig(1, 2, 1);
        // Deep in the bound regime so every (ell, n) below stays oscillatory.
        let hyp_p = Params::coupled(rat_int(1), rat_int(14));
        for (kind, params) in [
            (SystemKind::RadialOscillator, &radial),
            (SystemKind::TrigDpt, &trig_p),
            (SystemKind::HypDpt, &hyp_p),
        ] {
            for (ell, n) in [(0, 0), (0, 3), (1, 0), (1, 1), (2, 2)] {
                let x = xell_poly(kind, ell, n, params).unwrap();
                assert_eq!(x.poly.degree(), Some((ell + n) as usize));
                let domain = make_system(kind, ell, params).unwrap().eta_domain;
                let roots = sturm_count_roots(&x.poly, &domain.0, &domain.1).unwrap();
                assert_eq!(
                    roots, n as usize,
                    "{} ell={} n={} must have n roots in the eta-domain",
                    kind.name(),
                    ell,
                    n
                );
            }
        }
    }

    #[test]
    fn xell_ell_zero_is_classical() {
        let params = trig(1, 2, 1);
        let x = xell_poly(SystemKind::TrigDpt, 0, 3, &params).unwrap();
        assert_eq!(x.poly, classical_poly(SystemKind::TrigDpt, 3, &params, VAR_ETA));
    }

    #[test]
    fn xell_reports_vanishing_denominator() {
        // Hyperbolic d2 = g - h + 2n + 2*ell - 1 vanishes at
        // g=1, h=6, ell=1, n=2 (admissible: n_bound = 2 > 1).
        let params = Params::coupled(rat_int(1), rat_int(6));
        let err = xell_poly(SystemKind::HypDpt, 1, 2, &params).unwrap_err();
        assert_eq!(
            err,
            SystemError::VanishingDenominator {
                factor: "g-h+2*n+2*ell-1".to_string()
            }
        );
    }

    #[test]
    fn rodrigues_ladder_reproduces_classical_polynomials() {
        let radial = Params::radial(rat_int(1));
        let trig_p = trig(1, 2, 1);
        let hyp_p = Params::coupled(rat_int(1), rat_int(10));
        for (kind, params) in [
            (SystemKind::RadialOscillator, &radial),
            (SystemKind::TrigDpt, &trig_p),
            (SystemKind::HypDpt, &hyp_p),
        ] {
            for n in 0..=3 {
                let ladder = rodrigues_polynomial(kind, n, params).unwrap();
                let classical = classical_poly(kind, i64::from(n), params, VAR_ETA);
                assert!(
                    ladder.collinear_with(&classical),
                    "{} n={} ladder {:?} vs classical {:?}",
                    kind.name(),
                    n,
                    ladder,
                    classical
                );
            }
        }
        // The worked radial case: one application gives 2 eta - 3, which is
        // -2 times L_1^(1/2)(eta) = 3/2 - eta.
        let one = rodrigues_polynomial(SystemKind::RadialOscillator, 1, &radial).unwrap();
        assert_eq!(one, Poly::new(VAR_ETA, vec![rat_int(-3), rat_int(2)]));
    }

    #[test]
    fn xi_ode_residual_vanishes() {
        // Rational spot checks, including the worked hyperbolic example.
        assert!(xi_ode_residual(
            SystemKind::TrigDpt,
            2,
            &trig(1, 3, 1)
        )
        .is_zero());
        assert!(xi_ode_residual(
            SystemKind::HypDpt,
            1,
            &Params::coupled(rat_int(1), rat(23, 2))
        )
        .is_zero());
        // Fully symbolic over Q[g][h] for every family.
        for kind in SystemKind::ALL {
            for ell in 0..=3 {
                assert!(
                    xi_ode_residual_symbolic(kind, ell).is_zero(),
                    "{} ell={}",
                    kind.name(),
                    ell
                );
            }
        }
    }
}
