//! Quantum-mechanical particle and kinetic-energy densities for N fermions
//! in local confining potentials, smooth (Thomas-Fermi) reference densities,
//! and pointwise audits of exact and generalized local virial theorems.
//!
//! The crate is organized around a small pipeline:
//!
//! * [`model`] describes the system (potential, units, level filling),
//! * [`spectral`] produces single-particle spectra and orbitals,
//! * [`qdens`] assembles the densities ρ, τ, τ₁, ξ and ∇²ρ,
//! * [`closedform`] provides analytic density backends (oscillator shells,
//!   linear potentials, the hard-wall box),
//! * [`smooth`] provides Thomas-Fermi densities, smooth Fermi energies and
//!   the smooth/oscillating decomposition,
//! * [`virial`] evaluates every virial relation as a residual field with
//!   interior-masked norms.

pub mod closedform;
pub mod error;
pub mod grid;
pub mod model;
pub mod qdens;
pub mod quad;
pub mod smooth;
pub mod specfun;
pub mod spectral;
pub mod virial;

pub use error::{Error, Result};
pub use grid::Grid;
pub use model::{Occupation, PotentialKind, PotentialSpec, Units};
pub use qdens::DensityField;
pub use smooth::{OscillatingSet, SmoothSet, XiMode};
pub use spectral::EigenSolution;
pub use virial::VirialReport;
