//! Exact root counts of the deformed polynomials on the physical domain.
//!
//! The oscillation property of the deformed family is sharp and testable in
//! exact arithmetic: the degree-`(ell + n)` member has exactly `n` roots
//! inside the `eta`-image of the domain (the `ell` "extra" roots sit
//! outside).  This module only assembles the counts; asserting `count == n`
//! is the caller's contract check.

use crate::error::XellError;
use crate::ring::{rat_int, rat_to_f64};
use crate::systems::{bound_state_count, make_system, xell_poly, Params, SystemKind};
use crate::sturm::sturm_count_roots;

/// Reject levels beyond the bound spectrum of the degree-`ell` deformed
/// hyperbolic system: its level range shrinks with `ell`
/// (`n < (h - g)/2 - ell`), and the zero-pattern / orthogonality contracts
/// only hold for genuine bound states.  Radial and trigonometric systems
/// have infinitely many levels, so every `n` passes.
pub(crate) fn require_bound_levels(
    kind: SystemKind,
    ell: u32,
    params: &Params,
    n_max: u32,
) -> Result<(), XellError> {
    if kind != SystemKind::HypDpt {
        return Ok(());
    }
    let h = params.h.as_ref().expect("validated hyperbolic couplings");
    let g_shift = &params.g + rat_int(i64::from(ell));
    let h_shift = h - rat_int(i64::from(ell));
    let deformed_levels = bound_state_count(&g_shift, &h_shift);
    if u64::from(n_max) >= deformed_levels {
        let limit = (h - &params.g) * crate::ring::rat(1, 2) - rat_int(i64::from(ell));
        return Err(crate::error::SystemError::UnboundLevel {
            n: n_max,
            ell,
            limit: format!("(h - g)/2 - ell = {}", rat_to_f64(&limit)),
        }
        .into());
    }
    Ok(())
}

/// Exact Sturm root counts of the deformed polynomials `P_(ell,n)` inside
/// the `eta`-domain, for `n = 0..=n_max`.  Contract (checked by callers):
/// the count equals `n` for every bound level.
pub fn zero_count_report(
    kind: SystemKind,
    ell: u32,
    params: &Params,
    n_max: u32,
) -> Result<Vec<(u32, usize)>, XellError> {
    let sys = make_system(kind, ell, params)?;
    require_bound_levels(kind, ell, params, n_max)?;
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let member = xell_poly(kind, ell, n, params)?;
        let count = sturm_count_roots(&member.poly, &sys.eta_domain.0, &sys.eta_domain.1)?;
        out.push((n, count));
    }
    Ok(out)
}
