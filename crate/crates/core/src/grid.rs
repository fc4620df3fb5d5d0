//! Uniform evaluation grids and metric-weighted integration.

use crate::error::{Error, Result};
use crate::quad;
use serde::Serialize;

/// Geometry of a uniform one-dimensional sampling grid.
///
/// `Line` covers symmetric 1D problems, `Radial` covers the radial
/// coordinate of a D-dimensional spherical problem (integration carries the
/// r^(D-1) weight and the solid angle), `Plane` tags a flattened 2D grid
/// that is sampled along a ray for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GridKind {
    Line,
    /// Radial grid for the given dimension (2 or 3, 1 for half-line checks).
    Radial { dim: u32 },
    Plane,
}

/// A uniform grid of evaluation points.
#[derive(Debug, Clone, Serialize)]
pub struct Grid {
    pub kind: GridKind,
    /// Sample coordinates, strictly increasing, uniformly spaced.
    pub points: Vec<f64>,
    /// Spacing between consecutive points.
    pub h: f64,
}

/// Surface of the unit sphere in D dimensions (Ω_1 = 2 counts both parities).
pub fn solid_angle(dim: u32) -> f64 {
    use std::f64::consts::PI;
    match dim {
        1 => 2.0,
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        d => {
            let d = d as f64;
            2.0 * PI.powf(d / 2.0) / crate::specfun::gamma(d / 2.0)
        }
    }
}

impl Grid {
    /// Line grid on [a, b] with n points (n ≥ 64).
    pub fn line(a: f64, b: f64, n: usize) -> Result<Self> {
        if n < 64 {
            return Err(Error::Config(format!("grid too coarse: {n} points")));
        }
        if !(b > a) {
            return Err(Error::Config(format!("empty grid range [{a}, {b}]")));
        }
        let h = (b - a) / (n as f64 - 1.0);
        let points = (0..n).map(|i| a + i as f64 * h).collect();
        Ok(Self { kind: GridKind::Line, points, h })
    }

    /// Radial grid with n points at r = h, 2h, ..., r_max; the origin is
    /// handled by the boundary condition of the solver that fills the grid.
    pub fn radial(dim: u32, r_max: f64, n: usize) -> Result<Self> {
        if n < 64 {
            return Err(Error::Config(format!("grid too coarse: {n} points")));
        }
        let h = r_max / n as f64;
        let points = (1..=n).map(|i| i as f64 * h).collect();
        Ok(Self { kind: GridKind::Radial { dim }, points, h })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Spatial dimension implied by the grid kind.
    pub fn dim(&self) -> u32 {
        match self.kind {
            GridKind::Line => 1,
            GridKind::Radial { dim } => dim,
            GridKind::Plane => 2,
        }
    }

    /// Metric weight of each sample for volume integration: 1 on a line,
    /// Ω_D r^(D-1) on a radial grid.
    pub fn volume_weights(&self) -> Vec<f64> {
        match self.kind {
            GridKind::Line => vec![1.0; self.len()],
            GridKind::Radial { dim } => {
                let omega = solid_angle(dim);
                self.points
                    .iter()
                    .map(|&r| omega * r.powi(dim as i32 - 1))
                    .collect()
            }
            GridKind::Plane => vec![1.0; self.len()],
        }
    }

    /// ∫ f dV over the grid with the metric weight, O(h⁴).
    pub fn integrate(&self, field: &[f64]) -> Result<f64> {
        if field.len() != self.len() {
            return Err(Error::GridMismatch(format!(
                "field has {} samples, grid has {}",
                field.len(),
                self.len()
            )));
        }
        let w = self.volume_weights();
        let weighted: Vec<f64> = field.iter().zip(&w).map(|(f, w)| f * w).collect();
        // radial grids implicitly start the panel at r=0 where the weight
        // vanishes for D>1; prepend that point so nothing is lost
        match self.kind {
            GridKind::Radial { dim } => {
                let at_origin = if dim == 1 { field[0] } else { 0.0 };
                let mut ext = Vec::with_capacity(weighted.len() + 1);
                ext.push(at_origin * if dim == 1 { 2.0 } else { 0.0 });
                ext.extend_from_slice(&weighted);
                let cum = quad::cumulative_from_right(&ext, self.h);
                Ok(cum[0])
            }
            _ => {
                let cum = quad::cumulative_from_right(&weighted, self.h);
                Ok(cum[0])
            }
        }
    }

    /// Cumulative exterior integral g(x_i) = ∫_{x_i}^{x_end} f dx along the
    /// grid coordinate (no metric weight), O(h⁴).
    pub fn exterior_integral(&self, field: &[f64]) -> Result<Vec<f64>> {
        if field.len() != self.len() {
            return Err(Error::GridMismatch("exterior integral length".into()));
        }
        Ok(quad::cumulative_from_right(field, self.h))
    }
}

/// Second derivative by central differences, one-sided at the edges, O(h²)
/// in the interior.
pub fn second_derivative(f: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = f.len();
    if n < 5 {
        return Err(Error::GridMismatch("need at least 5 points for stencils".into()));
    }
    let mut out = vec![0.0; n];
    for i in 1..n - 1 {
        out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
    }
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (h * h);
    out[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / (h * h);
    Ok(out)
}

/// First derivative by central differences, one-sided at the edges.
pub fn first_derivative(f: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = f.len();
    if n < 5 {
        return Err(Error::GridMismatch("need at least 5 points for stencils".into()));
    }
    let mut out = vec![0.0; n];
    for i in 1..n - 1 {
        out[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    Ok(out)
}
