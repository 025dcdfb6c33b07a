//! Finite-difference spectra of the deformed Schrödinger operators.
//!
//! A uniform Dirichlet grid strictly inside the coordinate domain, the
//! standard 3-point Laplacian plus the deformed potential on the diagonal,
//! and Sturm-bisection for the lowest eigenvalues.  Every reported spectrum
//! is re-run at half the spacing; an eigenvalue that moves more than ten
//! times the coarsest acceptance tolerance flags the grid as too coarse
//! instead of returning a silently wrong number.

use super::tridiag;
use crate::error::{NumericsError, XellError};
use crate::systems::potential::{
    deformed_potential_with_xi, require_interior, shifted_couplings_f64,
};
use crate::systems::{validate_params, xi_poly_shifted, Params, SystemKind};

/// Coarsest tolerance any spectra check uses; the Richardson re-run flags a
/// grid whose eigenvalues move by more than ten times this (relative to the
/// eigenvalue scale) under half-spacing refinement.
pub const RICHARDSON_TOLERANCE: f64 = 1e-2;

/// Uniform Dirichlet grid, both endpoints strictly inside the coordinate
/// domain (the potentials are singular at the boundary).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x_lo: f64,
    pub x_hi: f64,
    /// Total grid points including both Dirichlet endpoints; at least 3.
    pub points: usize,
}

impl Grid {
    pub fn new(x_lo: f64, x_hi: f64, points: usize) -> Self {
        assert!(
            x_lo.is_finite() && x_hi.is_finite() && x_lo < x_hi,
            "grid endpoints must be finite with x_lo < x_hi"
        );
        Grid { x_lo, x_hi, points }
    }

    pub fn spacing(&self) -> f64 {
        (self.x_hi - self.x_lo) / (self.points - 1) as f64
    }

    /// The same interval at half the spacing (shared endpoints).
    fn refined(&self) -> Grid {
        Grid {
            points: 2 * self.points - 1,
            ..*self
        }
    }
}

/// Lowest `k` eigenvalues of the discretized operator on one grid.
fn grid_eigenvalues(
    kind: SystemKind,
    potential: &impl Fn(f64) -> f64,
    grid: &Grid,
    k: usize,
) -> Result<Vec<f64>, NumericsError> {
    let interior = grid.points - 2;
    let h = grid.spacing();
    let inv_h_sq = 1.0 / (h * h);
    let mut diag = Vec::with_capacity(interior);
    for i in 1..=interior {
        let x = grid.x_lo + i as f64 * h;
        debug_assert!(require_interior(kind, x).is_ok());
        diag.push(2.0 * inv_h_sq + potential(x));
    }
    let off = vec![-inv_h_sq; interior - 1];
    tridiag::lowest_eigenvalues(&diag, &off, k)
}

/// The `k` lowest Dirichlet eigenvalues of `-d^2/dx^2 + U_ell` on the grid,
/// from the half-spacing (finer) of the two Richardson runs.
///
/// The factorized form of `U_ell` puts the ground state at exactly 0, so the
/// values are directly comparable to the closed-form levels at couplings
/// shifted `ell` ladder steps.
pub fn fd_spectrum(
    kind: SystemKind,
    ell: u32,
    params: &Params,
    grid: &Grid,
    k: usize,
) -> Result<Vec<f64>, XellError> {
    validate_params(kind, ell, params)?;
    require_interior(kind, grid.x_lo)?;
    require_interior(kind, grid.x_hi)?;
    if grid.points < 3 {
        return Err(NumericsError::GridTooSmall {
            min: 3,
            got: grid.points,
        }
        .into());
    }
    assert!(grid.x_lo < grid.x_hi, "grid endpoints must be ordered");
    if k == 0 {
        return Ok(Vec::new());
    }
    if k > grid.points - 2 {
        return Err(NumericsError::GridTooSmall {
            min: k + 2,
            got: grid.points,
        }
        .into());
    }

    // Build the deforming polynomials once; the potential reuses them at
    // every grid point.
    let le = i64::from(ell);
    let (gs, hs) = shifted_couplings_f64(kind, params, le);
    let xi0 = xi_poly_shifted(kind, le, params, 0);
    let xi1 = xi_poly_shifted(kind, le, params, 1);
    let potential = move |x: f64| deformed_potential_with_xi(kind, gs, hs, &xi0, &xi1, x);

    let coarse = grid_eigenvalues(kind, &potential, grid, k)?;
    let fine = grid_eigenvalues(kind, &potential, &grid.refined(), k)?;
    for (index, (c, f)) in coarse.iter().zip(&fine).enumerate() {
        let shift = (c - f).abs();
        if shift > 10.0 * RICHARDSON_TOLERANCE * f.abs().max(1.0) {
            return Err(NumericsError::GridTooCoarse {
                n: grid.points,
                lo: grid.x_lo,
                hi: grid.x_hi,
                index,
                shift,
            }
            .into());
        }
    }
    Ok(fine)
}
