//! Numerical laboratory for the spiked harmonic oscillator
//! `-d²/dx² + x² + l(l+1)/x² + λ(x^(-α) + κx)` on the half line.
//!
//! The crate is split along the lines of the computation:
//!
//! - [`specfun`]: Gamma, modified Bessel functions, oscillator eigenfunctions
//!   and Gauss–Legendre quadrature.
//! - [`oscillator`]: potentials and finite-difference reference spectra with
//!   a Dirichlet wall at the origin.
//! - [`weak_coupling`]: trial-function weights `W_α`, their ODE, and the small-λ
//!   eigenvalue expansion.
//! - [`green`]: homogeneous solutions, Wronskian constant and the Green
//!   function of `d²/dx² + (2/x) d/dx − λ x^(-α)` on `(0, b)`.
//! - [`fredholm`]: Nyström discretization of the integral equation for `W_α`
//!   with a linear term in the potential, characteristic values and the
//!   solvability defect.
//! - [`transforms`]: the `ρ = r^γ` change of variables and the exponential
//!   factorization `φ = A e^B e^(−μr²/2)`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod fit;
pub mod fredholm;
pub mod green;
pub mod oscillator;
pub mod specfun;
pub mod transforms;
pub mod weak_coupling;

pub use error::{Error, Result};
