//! Eigensolvers for each potential class: full-line 1D, radial
//! D-dimensional, analytic disk billiard, and 2D Cartesian grids.

mod disk;
mod lanczos;
mod oned;
mod radial;
mod tridiag;
mod twod;

pub use disk::solve_disk_billiard;
pub use lanczos::lanczos_lowest;
pub use oned::solve_1d;
pub use radial::{angular_eigenvalue, angular_multiplicity, solve_radial, solve_radial_bounded};
pub use tridiag::SymTridiag;
pub use twod::{solve_2d_grid, PlaneGrid, PlaneSolution};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::model::{Level, Units};

/// One radial (or line) orbital with its quantum labels.
#[derive(Debug, Clone)]
pub struct Orbital {
    pub energy: f64,
    /// Angular quantum number l (|m| in D=2; parity channel in D=1).
    pub l: u32,
    /// Radial index within the channel.
    pub n_radial: u32,
    /// Angular multiplicity (orbitals at this energy), spin not included.
    pub ang_mult: u32,
    /// R(r) on the grid (φ(x) for line grids), normalized under the metric.
    pub values: Vec<f64>,
    /// dR/dr on the grid.
    pub derivs: Vec<f64>,
}

/// Ordered single-particle levels with orbitals sampled on a grid.
#[derive(Debug, Clone)]
pub struct EigenSolution {
    pub grid: Grid,
    pub units: Units,
    /// Potential sampled on the grid.
    pub potential: Vec<f64>,
    /// Orbitals sorted by energy.
    pub orbitals: Vec<Orbital>,
    /// Set when any orbital has boundary amplitude above 1e-8 (box too small).
    pub boundary_warning: bool,
}

impl EigenSolution {
    /// Level list (energy, angular multiplicity) for occupation filling.
    pub fn levels(&self) -> Vec<Level> {
        self.orbitals
            .iter()
            .map(|o| Level { energy: o.energy, degeneracy: o.ang_mult })
            .collect()
    }

    /// Verify each orbital is normalized to 1 under the grid metric.
    pub fn check_normalization(&self, tol: f64) -> Result<()> {
        for o in &self.orbitals {
            let sq: Vec<f64> = o.values.iter().map(|v| v * v).collect();
            let n = self.grid.integrate(&sq)?;
            if (n - 1.0).abs() > tol {
                return Err(Error::Identity(format!(
                    "orbital (l={}, n={}) norm {} deviates from 1",
                    o.l, o.n_radial, n
                )));
            }
        }
        Ok(())
    }
}
