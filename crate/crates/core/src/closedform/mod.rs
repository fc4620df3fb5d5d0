//! Analytic density backends: oscillator shells, the linear potential
//! (Airy closed forms and asymptotics), and the 1D box.

mod box1d;
mod iho;
mod linear;

pub use box1d::{box_densities, BoxDensities, BoxParams};
pub use iho::{iho_densities, iho_solution};
pub use linear::{
    bloch_identity_residual_1d, LinearAsymptotics1D, LinearAxis3D, LinearParams, LinearPoint1D,
};
