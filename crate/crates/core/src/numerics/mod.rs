//! Floating-point validation layer.
//!
//! Everything upstream of this module is exact; here the constructions meet
//! double precision: Gauss quadrature demonstrates the orthogonality of the
//! deformed families under their weight, a finite-difference discretization
//! recovers the spectra of the deformed potentials, and exact Sturm counts
//! certify the zero patterns that the orthogonality theory predicts.
//!
//! The split between submodules follows the four independent checks:
//!
//! * [`quad`] — Gauss rules for the classical weights (Golub–Welsch);
//! * [`gram`] — quadrature Gram matrices of the deformed polynomials;
//! * [`fd`] — three-point finite-difference Schrödinger spectra;
//! * [`zeros`] — exact root counts of the deformed polynomials.

mod tridiag;

pub mod fd;
pub mod gram;
pub mod quad;
pub mod zeros;

pub use fd::{fd_spectrum, Grid, RICHARDSON_TOLERANCE};
pub use gram::{orthogonality_gram, GramMatrix, GramNormalization};
pub use quad::{gauss_rule, QuadratureRule, WeightFamily};
pub use zeros::zero_count_report;
