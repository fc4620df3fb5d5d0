//! Self-contained special-function kernels: Airy Ai/Ai′, Bessel J_ν for real
//! order ν ≥ −1/2, the Gamma function, and harmonic-oscillator
//! eigenfunctions via stable recurrences.
//!
//! All functions are pure and reentrant; there is no global state.

mod airy;
mod bessel;
mod gamma;
mod hermite;

pub use airy::{airy_ai, airy_ai_prime, airy_both};
pub use bessel::{bessel_j, bessel_j_prime, bessel_zero};
pub use gamma::{gamma, ln_gamma};
pub use hermite::{ho_eigenfunction, ho_eigenfunction_value, laguerre_scaled};
