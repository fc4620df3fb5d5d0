//! 2D Cartesian-grid Schrödinger solver: 5-point Laplacian Hamiltonian,
//! lowest eigenpairs via the deflated Lanczos iteration.

use super::lanczos::lanczos_lowest;
use crate::error::{Error, Result};
use crate::model::{PotentialSpec, PotentialValue};

/// Square uniform grid on [−a, a]² with n points per side.
#[derive(Debug, Clone)]
pub struct PlaneGrid {
    pub n: usize,
    pub half_width: f64,
    pub h: f64,
}

impl PlaneGrid {
    pub fn new(half_width: f64, n: usize) -> Result<Self> {
        if n < 64 {
            return Err(Error::Config(format!("plane grid too coarse: {n} per side")));
        }
        let h = 2.0 * half_width / (n as f64 - 1.0);
        Ok(Self { n, half_width, h })
    }

    pub fn coord(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.h
    }

    /// Bilinear interpolation of a row-major field at (x, y).
    pub fn interpolate(&self, field: &[f64], x: f64, y: f64) -> f64 {
        let fx = ((x + self.half_width) / self.h).clamp(0.0, (self.n - 1) as f64);
        let fy = ((y + self.half_width) / self.h).clamp(0.0, (self.n - 1) as f64);
        let i = (fx as usize).min(self.n - 2);
        let j = (fy as usize).min(self.n - 2);
        let tx = fx - i as f64;
        let ty = fy - j as f64;
        let at = |i: usize, j: usize| field[i * self.n + j];
        at(i, j) * (1.0 - tx) * (1.0 - ty)
            + at(i + 1, j) * tx * (1.0 - ty)
            + at(i, j + 1) * (1.0 - tx) * ty
            + at(i + 1, j + 1) * tx * ty
    }
}

/// One 2D orbital: energy and row-major samples, ∫|φ|² dxdy = 1.
#[derive(Debug, Clone)]
pub struct PlaneOrbital {
    pub energy: f64,
    pub values: Vec<f64>,
}

/// 2D eigensolution with the potential sampled on the same grid.
#[derive(Debug, Clone)]
pub struct PlaneSolution {
    pub grid: PlaneGrid,
    pub potential: Vec<f64>,
    pub orbitals: Vec<PlaneOrbital>,
    pub h2_2m: f64,
}

impl PlaneSolution {
    /// Level list for occupation filling (no systematic degeneracies are
    /// folded; accidental pairs appear as consecutive equal energies).
    pub fn levels(&self) -> Vec<crate::model::Level> {
        self.orbitals
            .iter()
            .map(|o| crate::model::Level { energy: o.energy, degeneracy: 1 })
            .collect()
    }
}

/// Lowest `count` eigenpairs of the 5-point-Laplacian Hamiltonian with
/// Dirichlet edges; Lanczos residual contract ‖Hψ − Eψ‖ ≤ 1e−8.
pub fn solve_2d_grid(spec: &PotentialSpec, grid: &PlaneGrid, count: usize) -> Result<PlaneSolution> {
    if spec.dim() != 2 {
        return Err(Error::Config("solve_2d_grid needs a two-dimensional potential".into()));
    }
    if count > 500 {
        return Err(Error::Config(format!("count {count} > 500")));
    }
    let n = grid.n;
    let mut potential = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            potential[i * n + j] = match spec.evaluate(&[grid.coord(i), grid.coord(j)])? {
                PotentialValue::Inside { v, .. } => v,
                PotentialValue::Wall => 1e8 * spec.units.h2_2m(),
            };
        }
    }

    // interior unknowns only; edges are Dirichlet zeros
    let ni = n - 2;
    let dim = ni * ni;
    let t = spec.units.h2_2m() / (grid.h * grid.h);
    let vin: Vec<f64> = {
        let mut v = vec![0.0; dim];
        for i in 0..ni {
            for j in 0..ni {
                v[i * ni + j] = potential[(i + 1) * n + (j + 1)];
            }
        }
        v
    };
    let matvec = |x: &[f64], out: &mut [f64]| {
        for i in 0..ni {
            for j in 0..ni {
                let idx = i * ni + j;
                let mut acc = (4.0 * t + vin[idx]) * x[idx];
                if i > 0 {
                    acc -= t * x[idx - ni];
                }
                if i + 1 < ni {
                    acc -= t * x[idx + ni];
                }
                if j > 0 {
                    acc -= t * x[idx - 1];
                }
                if j + 1 < ni {
                    acc -= t * x[idx + 1];
                }
                out[idx] = acc;
            }
        }
    };

    let pairs = lanczos_lowest(matvec, dim, count, 1e-8)?;
    let orbitals = pairs
        .into_iter()
        .map(|(energy, x)| {
            let mut values = vec![0.0; n * n];
            let scale = 1.0 / grid.h; // unit 2-norm -> ∫|φ|² = 1
            for i in 0..ni {
                for j in 0..ni {
                    values[(i + 1) * n + (j + 1)] = x[i * ni + j] * scale;
                }
            }
            PlaneOrbital { energy, values }
        })
        .collect();

    Ok(PlaneSolution { grid: grid.clone(), potential, orbitals, h2_2m: spec.units.h2_2m() })
}
