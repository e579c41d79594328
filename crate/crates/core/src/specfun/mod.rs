//! Special functions and quadrature used throughout the crate.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod gamma;
mod hermite;
mod quadrature;

pub use bessel::{
    bessel_i, bessel_i_derivative, bessel_i_scaled, bessel_k, bessel_k_asymptotic, bessel_k_derivative,
    bessel_k_reflection, bessel_k_scaled, BesselOrder, ScaledBesselValue, Z_MAX, Z_MIN,
};
pub use gamma::gamma;
pub use hermite::{oscillator_eigenfunction, oscillator_eigenfunction_derivative, HalfLineState};
pub use quadrature::{gauss_legendre, GaussLegendre};

pub(crate) use bessel::{ik_scaled, ik_scaled_with_derivatives};
