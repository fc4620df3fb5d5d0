//! Exact densities of the 1D box with Dirichlet walls, their closed sums,
//! and the smooth/oscillating decomposition.

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::model::Units;
use crate::qdens::DensityField;
use std::f64::consts::PI;

/// Box of length L holding N = 2M particles in the lowest M levels.
#[derive(Debug, Clone, Copy)]
pub struct BoxParams {
    pub length: f64,
    /// Number of filled levels M = N/2.
    pub m_levels: u32,
    pub units: Units,
}

impl BoxParams {
    pub fn new(length: f64, m_levels: u32, units: Units) -> Result<Self> {
        if !(length > 0.0) || m_levels == 0 {
            return Err(Error::Config("box needs positive length and M ≥ 1".into()));
        }
        Ok(Self { length, m_levels, units })
    }

    /// E₀ = ħ²π²/2mL²; the spectrum is E_n = E₀ n².
    pub fn e0(&self) -> f64 {
        self.units.h2_2m() * PI * PI / (self.length * self.length)
    }

    /// λ_TF = E₀ M²
    pub fn lambda_tf(&self) -> f64 {
        self.e0() * (self.m_levels as f64).powi(2)
    }

    /// ρ_TF = 2M/L
    pub fn rho_tf(&self) -> f64 {
        2.0 * self.m_levels as f64 / self.length
    }

    /// τ_TF = (2E₀/L) M³/3
    pub fn tau_tf(&self) -> f64 {
        2.0 * self.e0() / self.length * (self.m_levels as f64).powi(3) / 3.0
    }

    /// The constant ξ = (2E₀/L)·M(M+1)(2M+1)/6.
    pub fn xi_const(&self) -> f64 {
        let m = self.m_levels as f64;
        2.0 * self.e0() / self.length * m * (m + 1.0) * (2.0 * m + 1.0) / 6.0
    }
}

/// Exact box fields plus their decomposition pieces.
#[derive(Debug, Clone)]
pub struct BoxDensities {
    pub field: DensityField,
    /// δρ from the rearranged closed form (removable singularity guarded).
    pub delta_rho: Vec<f64>,
    /// Leading oscillating part of τ: δτ_as = λ_TF δρ.
    pub delta_tau_as: Vec<f64>,
    pub params: BoxParams,
}

/// Closed sums of ρ, τ, τ₁ for 0 ≤ x ≤ L on the given line grid.
pub fn box_densities(params: &BoxParams, grid: &Grid) -> Result<BoxDensities> {
    let l = params.length;
    if grid.points.first().copied().unwrap_or(-1.0) < -1e-12
        || grid.points.last().copied().unwrap_or(2.0 * l) > l + 1e-12
    {
        return Err(Error::Domain("box densities need 0 ≤ x ≤ L".into()));
    }
    let m = params.m_levels;
    let mf = m as f64;
    let e0 = params.e0();
    let n = grid.len();
    let mut rho = vec![0.0; n];
    let mut tau = vec![0.0; n];
    let mut tau1 = vec![0.0; n];
    let mut lap_rho = vec![0.0; n];
    let mut delta_rho = vec![0.0; n];
    for (i, &x) in grid.points.iter().enumerate() {
        let u = PI * x / l;
        // ρ(x) = (1/L){2M+1 − sin((2M+1)u)/sin u}; near the walls the direct
        // finite sum avoids the removable singularity of the quotient
        let su = u.sin();
        if su.abs() > 1e-4 {
            rho[i] = (2.0 * mf + 1.0 - ((2.0 * mf + 1.0) * u).sin() / su) / l;
            delta_rho[i] = (2.0 * (mf * u).sin().powi(2)
                - (2.0 * mf * u).sin() * u.cos() / su)
                / l;
        } else {
            let mut s = 0.0;
            for k in 1..=m {
                s += (k as f64 * u).sin().powi(2);
            }
            rho[i] = 4.0 * s / l;
            delta_rho[i] = rho[i] - params.rho_tf();
        }
        // kinetic sums and the exact second derivative of ρ:
        // d²/dx² sin²(kπx/L) = 2(kπ/L)² cos(2kπx/L)
        let mut t_s = 0.0;
        let mut t_c = 0.0;
        let mut curv = 0.0;
        for k in 1..=m {
            let kf = k as f64;
            let (s, c) = (kf * u).sin_cos();
            t_s += kf * kf * s * s;
            t_c += kf * kf * c * c;
            curv += kf * kf * (2.0 * kf * u).cos();
        }
        tau[i] = 4.0 * e0 / l * t_s;
        tau1[i] = 4.0 * e0 / l * t_c;
        lap_rho[i] = 8.0 / l * (PI / l).powi(2) * curv;
    }
    let xi: Vec<f64> = tau.iter().zip(&tau1).map(|(a, b)| 0.5 * (a + b)).collect();
    let lam_tf = params.lambda_tf();
    let delta_tau_as: Vec<f64> = delta_rho.iter().map(|d| lam_tf * d).collect();
    let field = DensityField {
        grid: grid.clone(),
        units: params.units,
        n_particles: 2 * m as u64,
        lambda_used: lam_tf,
        potential: vec![0.0; n],
        rho,
        tau,
        tau1,
        xi,
        lap_rho,
        exact: None,
    };
    Ok(BoxDensities { field, delta_rho, delta_tau_as, params: *params })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn grid(l: f64) -> Grid {
        Grid::line(0.0, l, 2001).unwrap()
    }

    #[test]
    fn midpoint_value() {
        let p = BoxParams::new(1.0, 2, Units::natural()).unwrap();
        let g = grid(1.0);
        let b = box_densities(&p, &g).unwrap();
        // ρ(L/2) = (2M+1 − (−1)^M)/L = 4 for M = 2, L = 1
        let mid = g.len() / 2;
        assert_abs_diff_eq!(b.field.rho[mid], 4.0, epsilon = 1e-12);
    }

    #[test]
    fn dirichlet_zeros_at_the_walls() {
        let p = BoxParams::new(1.0, 7, Units::natural()).unwrap();
        let b = box_densities(&p, &grid(1.0)).unwrap();
        assert_abs_diff_eq!(b.field.rho[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(*b.field.rho.last().unwrap(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn xi_is_the_exact_constant() {
        let p = BoxParams::new(1.0, 10, Units::natural()).unwrap();
        let b = box_densities(&p, &grid(1.0)).unwrap();
        for &v in &b.field.xi {
            assert_relative_eq!(v, p.xi_const(), max_relative = 1e-12);
        }
    }

    #[test]
    fn tau_opposition_after_constant_xi_removal() {
        let p = BoxParams::new(1.0, 12, Units::natural()).unwrap();
        let b = box_densities(&p, &grid(1.0)).unwrap();
        let xi = p.xi_const();
        for i in 0..b.field.rho.len() {
            // τ − ξ = −(τ₁ − ξ) pointwise exactly
            assert_abs_diff_eq!(b.field.tau[i] - xi, -(b.field.tau1[i] - xi), epsilon = 1e-9);
        }
    }

    #[test]
    fn exact_laplacian_consistent_with_tau_relation() {
        let p = BoxParams::new(1.0, 9, Units::natural()).unwrap();
        let b = box_densities(&p, &grid(1.0)).unwrap();
        let h2_4m = 0.5 * p.units.h2_2m();
        for i in 0..b.field.rho.len() {
            let want = b.field.tau1[i] - h2_4m * b.field.lap_rho[i];
            assert_abs_diff_eq!(b.field.tau[i], want, epsilon = 1e-8 * p.tau_tf());
        }
    }

    #[test]
    fn delta_rho_closed_form_matches_subtraction() {
        let p = BoxParams::new(1.0, 15, Units::natural()).unwrap();
        let b = box_densities(&p, &grid(1.0)).unwrap();
        for i in 0..b.field.rho.len() {
            assert_abs_diff_eq!(
                b.delta_rho[i],
                b.field.rho[i] - p.rho_tf(),
                epsilon = 1e-9 * p.rho_tf()
            );
        }
    }

    #[test]
    fn normalization() {
        let p = BoxParams::new(2.5, 8, Units::natural()).unwrap();
        let g = Grid::line(0.0, 2.5, 1601).unwrap();
        let b = box_densities(&p, &g).unwrap();
        let n = g.integrate(&b.field.rho).unwrap();
        assert_relative_eq!(n, 16.0, max_relative = 1e-9);
    }
}
