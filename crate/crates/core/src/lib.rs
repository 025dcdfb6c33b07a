//! Exact construction and verification of exceptional (X_ell) orthogonal
//! polynomials of Laguerre and Jacobi type.
//!
//! Three exactly solvable quantum-mechanical systems — the radial oscillator
//! and the trigonometric / hyperbolic Darboux–Pöschl–Teller potentials —
//! admit shape-invariant deformations indexed by a degree `ell >= 1`.  Their
//! eigenfunctions factor through polynomials `P_{ell,n}` of degree `ell + n`
//! in a sinusoidal coordinate `eta(x)`, and the consistency of the whole
//! picture is equivalent to a family of polynomial identities: cubic
//! identities for the classical Laguerre/Jacobi families, second-order ODEs
//! for the deforming polynomials `xi_ell`, and a shape-invariance relation
//! tying all three together.
//!
//! This crate constructs every object exactly (arbitrary-precision rational
//! coefficients, symbolic parameters where feasible) and verifies the
//! identities both symbolically — as literal zero polynomials — and
//! numerically, via Gauss quadrature orthogonality checks and finite-
//! difference Schrödinger spectra.

pub mod classical;
pub mod error;
pub mod identities;
pub mod numerics;
pub mod poly;
pub mod report;
pub mod ring;
pub mod suite;
pub mod sturm;
pub mod systems;

pub use error::{ClassicalError, NumericsError, PolyError, RingError, SystemError};
pub use poly::{Poly, Var};
pub use ring::{parse_rational, rat, rat_int, Rational, Ring};
