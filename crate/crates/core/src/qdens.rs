//! Assembly of the densities ρ, τ, τ₁, ξ and ∇²ρ from an eigensolution and
//! an occupation.
//!
//! τ is evaluated through the Hamiltonian identity ∇²φ = (2m/ħ²)(V−E)φ, so
//! it is exact given (E, V, φ); τ₁ uses the stored orbital derivatives; the
//! Laplacian of ρ is a stencil by default, with an analytic path for exact
//! (closed-form) orbitals.

use crate::error::{Error, Result};
use crate::grid::{first_derivative, Grid, GridKind};
use crate::model::{Occupation, PotentialSpec, Units};
use crate::spectral::{angular_eigenvalue, EigenSolution, PlaneGrid, PlaneSolution};

/// A grid plus the four densities and ∇²ρ on it.
#[derive(Debug, Clone)]
pub struct DensityField {
    pub grid: Grid,
    pub units: Units,
    pub n_particles: u64,
    /// Fermi energy carried along for reporting (HOMO–LUMO midpoint unless
    /// a backend overrides it).
    pub lambda_used: f64,
    /// Potential on the grid.
    pub potential: Vec<f64>,
    pub rho: Vec<f64>,
    pub tau: Vec<f64>,
    pub tau1: Vec<f64>,
    pub xi: Vec<f64>,
    pub lap_rho: Vec<f64>,
    /// Analytic radial derivatives when the backend provides them.
    pub exact: Option<ExactDerivs>,
}

/// Analytic dρ/dr and d(∇²ρ)/dr from a closed-form backend.
#[derive(Debug, Clone)]
pub struct ExactDerivs {
    pub rho_prime: Vec<f64>,
    pub lap_rho_prime: Vec<f64>,
}

/// Radial Laplacian d²f/dr² + (D−1)/r df/dr of a closed-shell field
/// (assumed even in r), O(h²); line grids get the plain second derivative.
pub fn laplacian(field: &[f64], grid: &Grid) -> Result<Vec<f64>> {
    if field.len() != grid.len() {
        return Err(Error::GridMismatch("laplacian field length".into()));
    }
    if grid.len() < 5 {
        return Err(Error::GridMismatch("laplacian needs at least 5 points".into()));
    }
    let h = grid.h;
    match grid.kind {
        GridKind::Line | GridKind::Plane => crate::grid::second_derivative(field, h),
        GridKind::Radial { dim } => {
            let n = field.len();
            // extend across the origin by parity: grid points sit at r = h..;
            // f(0) from the even cubic-in-r² through the first three samples
            let f0 = 1.5 * field[0] - 0.6 * field[1] + 0.1 * field[2];
            let fm = |i: isize| -> f64 {
                // value at node index i of the extended array, i = -1 is r = 0,
                // i = -2 is r = -h ≡ h by parity
                if i >= 0 {
                    field[i as usize]
                } else if i == -1 {
                    f0
                } else {
                    field[(-i - 2) as usize]
                }
            };
            let mut out = vec![0.0; n];
            for i in 0..n {
                let r = grid.points[i];
                let (d2, d1) = if i + 1 >= n {
                    // one-sided at the outer edge
                    (
                        (2.0 * field[n - 1] - 5.0 * field[n - 2] + 4.0 * field[n - 3]
                            - field[n - 4])
                            / (h * h),
                        (3.0 * field[n - 1] - 4.0 * field[n - 2] + field[n - 3]) / (2.0 * h),
                    )
                } else {
                    let ii = i as isize;
                    (
                        (fm(ii + 1) - 2.0 * field[i] + fm(ii - 1)) / (h * h),
                        (fm(ii + 1) - fm(ii - 1)) / (2.0 * h),
                    )
                };
                out[i] = d2 + (dim as f64 - 1.0) / r * d1;
            }
            Ok(out)
        }
    }
}

/// Assemble the densities from occupied orbitals.
pub fn compute_densities(solution: &EigenSolution, occ: &Occupation) -> Result<DensityField> {
    let n = solution.grid.len();
    if occ.filled_levels > solution.orbitals.len() {
        return Err(Error::Config("occupation refers to levels beyond the solution".into()));
    }
    let h2_2m = solution.units.h2_2m();
    let dim = solution.grid.dim();
    let mut rho = vec![0.0; n];
    let mut tau = vec![0.0; n];
    let mut tau1 = vec![0.0; n];
    for orb in &solution.orbitals[..occ.filled_levels] {
        if orb.values.len() != n {
            return Err(Error::GridMismatch("orbital grid".into()));
        }
        let w = 2.0 * orb.ang_mult as f64;
        let lam_ang = angular_eigenvalue(dim, orb.l);
        for i in 0..n {
            let v2 = orb.values[i] * orb.values[i];
            rho[i] += w * v2;
            tau[i] += w * (orb.energy - solution.potential[i]) * v2;
            let mut grad2 = orb.derivs[i] * orb.derivs[i];
            if lam_ang != 0.0 {
                let r = solution.grid.points[i];
                grad2 += lam_ang * v2 / (r * r);
            }
            tau1[i] += w * h2_2m * grad2;
        }
    }
    let xi: Vec<f64> = tau.iter().zip(&tau1).map(|(t, t1)| 0.5 * (t + t1)).collect();
    let lap_rho = laplacian(&rho, &solution.grid)?;
    Ok(DensityField {
        grid: solution.grid.clone(),
        units: solution.units,
        n_particles: occ.n_particles,
        lambda_used: occ.lambda_qm,
        potential: solution.potential.clone(),
        rho,
        tau,
        tau1,
        xi,
        lap_rho,
        exact: None,
    })
}

/// Replace the stencil ∇²ρ by the Hamiltonian-identity value
/// ∇²ρ = (4m/ħ²)(τ₁ − τ), exact for exact orbitals, and attach analytic
/// first/third radial derivatives computed from the orbital ODE.
pub fn attach_exact_derivatives(
    field: &mut DensityField,
    solution: &EigenSolution,
    occ: &Occupation,
    spec: &PotentialSpec,
) -> Result<()> {
    let n = field.grid.len();
    let h2_2m = field.units.h2_2m();
    let dim = field.grid.dim();
    field.lap_rho = field
        .tau1
        .iter()
        .zip(&field.tau)
        .map(|(t1, t)| (t1 - t) / (0.5 * h2_2m))
        .collect();

    let mut rho_p = vec![0.0; n];
    let mut rho_pp = vec![0.0; n];
    let mut rho_ppp = vec![0.0; n];
    for orb in &solution.orbitals[..occ.filled_levels] {
        let w = 2.0 * orb.ang_mult as f64;
        let lam_ang = angular_eigenvalue(dim, orb.l);
        for i in 0..n {
            let r = field.grid.points[i];
            let v = orb.values[i];
            let vp = orb.derivs[i];
            let vloc = field.potential[i];
            let vploc = spec
                .v_radial_prime(r)
                .ok_or_else(|| Error::Domain("potential derivative unavailable".into()))?;
            let w_ode = (vloc - orb.energy) / h2_2m + lam_ang / (r * r);
            let w_ode_p = vploc / h2_2m - 2.0 * lam_ang / (r * r * r);
            let geo = dim as f64 - 1.0;
            let vpp = w_ode * v - geo / r * vp;
            let vppp = w_ode_p * v + w_ode * vp - geo * (vpp / r - vp / (r * r));
            rho_p[i] += 2.0 * w * v * vp;
            rho_pp[i] += 2.0 * w * (vp * vp + v * vpp);
            rho_ppp[i] += 2.0 * w * (3.0 * vp * vpp + v * vppp);
        }
    }
    // (Δρ)' = ρ''' + (D−1)(ρ''/r − ρ'/r²)
    let geo = dim as f64 - 1.0;
    let lap_rho_prime: Vec<f64> = (0..n)
        .map(|i| {
            let r = field.grid.points[i];
            rho_ppp[i] + geo * (rho_pp[i] / r - rho_p[i] / (r * r))
        })
        .collect();
    field.exact = Some(ExactDerivs { rho_prime: rho_p, lap_rho_prime });
    Ok(())
}

/// dρ/dr: analytic when attached, otherwise a stencil.
pub fn rho_prime(field: &DensityField) -> Result<Vec<f64>> {
    if let Some(e) = &field.exact {
        return Ok(e.rho_prime.clone());
    }
    derivative_even_about_origin(&field.rho, &field.grid)
}

/// First three derivatives of a closed-shell (even-about-origin) field at
/// O(h⁴), by Richardson extrapolation of central stencils with a parity
/// mirror across r = 0. Near the outer edge the stride-2 stencils fall back
/// to the plain ones; the fields live in their exponential tail there.
pub fn derivatives_even_richardson(
    field: &[f64],
    grid: &Grid,
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    if field.len() != grid.len() {
        return Err(Error::GridMismatch("derivative field length".into()));
    }
    let n = field.len();
    let h = grid.h;
    let radial = matches!(grid.kind, GridKind::Radial { .. });
    // value at radius index k (r = k·h for radial grids where the array
    // starts at r = h; line grids mirror at both ends)
    let f0 = if radial { 1.5 * field[0] - 0.6 * field[1] + 0.1 * field[2] } else { 0.0 };
    let at = |k: isize| -> f64 {
        if radial {
            if k == 0 {
                f0
            } else {
                let j = k.abs() - 1;
                field[(j as usize).min(n - 1)]
            }
        } else {
            let j = k.clamp(0, n as isize - 1);
            field[j as usize]
        }
    };
    let mut d1 = vec![0.0; n];
    let mut d2 = vec![0.0; n];
    let mut d3 = vec![0.0; n];
    for i in 0..n {
        let k = if radial { i as isize + 1 } else { i as isize };
        let stride_ok = if radial {
            i + 4 < n
        } else {
            i >= 4 && i + 4 < n
        };
        let g1 = |s: isize, hh: f64| (at(k + s) - at(k - s)) / (2.0 * hh);
        let g2 = |s: isize, hh: f64| (at(k + s) - 2.0 * at(k) + at(k - s)) / (hh * hh);
        let g3 = |s: isize, hh: f64| {
            (-at(k - 2 * s) + 2.0 * at(k - s) - 2.0 * at(k + s) + at(k + 2 * s))
                / (2.0 * hh * hh * hh)
        };
        if stride_ok {
            d1[i] = (4.0 * g1(1, h) - g1(2, 2.0 * h)) / 3.0;
            d2[i] = (4.0 * g2(1, h) - g2(2, 2.0 * h)) / 3.0;
            d3[i] = (4.0 * g3(1, h) - g3(2, 2.0 * h)) / 3.0;
        } else {
            d1[i] = g1(1, h);
            d2[i] = g2(1, h);
            d3[i] = if i + 2 < n || radial { g3(1, h) } else { 0.0 };
        }
    }
    Ok((d1, d2, d3))
}

/// First derivative of a field that is even about r = 0 on a radial grid
/// (mirror extension keeps central stencils down to the first node);
/// plain stencils on line grids.
pub fn derivative_even_about_origin(field: &[f64], grid: &Grid) -> Result<Vec<f64>> {
    if field.len() != grid.len() {
        return Err(Error::GridMismatch("derivative field length".into()));
    }
    match grid.kind {
        GridKind::Radial { .. } => {
            let n = field.len();
            let h = grid.h;
            let f0 = 1.5 * field[0] - 0.6 * field[1] + 0.1 * field[2]; // even extrapolant at r = 0
            let mut out = vec![0.0; n];
            for i in 0..n {
                out[i] = if i == 0 {
                    (field[1] - f0) / (2.0 * h)
                } else if i + 1 < n {
                    (field[i + 1] - field[i - 1]) / (2.0 * h)
                } else {
                    (3.0 * field[n - 1] - 4.0 * field[n - 2] + field[n - 3]) / (2.0 * h)
                };
            }
            Ok(out)
        }
        _ => first_derivative(field, grid.h),
    }
}

/// ∫τ = ∫τ₁ = ∫ξ (the exact total kinetic energy); errors with all three
/// integrals when they disagree beyond 1e−6 relative.
pub fn total_kinetic(field: &DensityField) -> Result<f64> {
    let it = field.grid.integrate(&field.tau)?;
    let it1 = field.grid.integrate(&field.tau1)?;
    let ix = field.grid.integrate(&field.xi)?;
    let scale = it.abs().max(it1.abs()).max(ix.abs());
    if (it - it1).abs() > 1e-6 * scale || (it - ix).abs() > 1e-6 * scale {
        return Err(Error::Identity(format!(
            "kinetic integrals disagree: ∫τ={it}, ∫τ₁={it1}, ∫ξ={ix}"
        )));
    }
    Ok(ix)
}

/// Densities on a 2D Cartesian grid (row-major fields).
#[derive(Debug, Clone)]
pub struct PlaneDensities {
    pub grid: PlaneGrid,
    pub h2_2m: f64,
    pub n_particles: u64,
    pub lambda_qm: f64,
    pub potential: Vec<f64>,
    pub rho: Vec<f64>,
    pub tau: Vec<f64>,
    pub tau1: Vec<f64>,
    pub xi: Vec<f64>,
    pub lap_rho: Vec<f64>,
}

/// Assemble 2D densities from the lowest `occ.filled_levels` orbitals.
pub fn compute_densities_2d(solution: &PlaneSolution, occ: &Occupation) -> Result<PlaneDensities> {
    let n = solution.grid.n;
    let h = solution.grid.h;
    if occ.filled_levels > solution.orbitals.len() {
        return Err(Error::Config("occupation refers to levels beyond the solution".into()));
    }
    let mut rho = vec![0.0; n * n];
    let mut tau = vec![0.0; n * n];
    let mut tau1 = vec![0.0; n * n];
    for orb in &solution.orbitals[..occ.filled_levels] {
        for i in 0..n {
            for j in 0..n {
                let idx = i * n + j;
                let p = orb.values[idx];
                rho[idx] += 2.0 * p * p;
                tau[idx] += 2.0 * (orb.energy - solution.potential[idx]) * p * p;
                let gx = if i == 0 || i == n - 1 {
                    0.0
                } else {
                    (orb.values[(i + 1) * n + j] - orb.values[(i - 1) * n + j]) / (2.0 * h)
                };
                let gy = if j == 0 || j == n - 1 {
                    0.0
                } else {
                    (orb.values[idx + 1] - orb.values[idx - 1]) / (2.0 * h)
                };
                tau1[idx] += 2.0 * solution.h2_2m * (gx * gx + gy * gy);
            }
        }
    }
    let xi: Vec<f64> = tau.iter().zip(&tau1).map(|(t, t1)| 0.5 * (t + t1)).collect();
    let mut lap_rho = vec![0.0; n * n];
    for i in 1..n - 1 {
        for j in 1..n - 1 {
            let idx = i * n + j;
            lap_rho[idx] = (rho[(i + 1) * n + j]
                + rho[(i - 1) * n + j]
                + rho[idx + 1]
                + rho[idx - 1]
                - 4.0 * rho[idx])
                / (h * h);
        }
    }
    Ok(PlaneDensities {
        grid: solution.grid.clone(),
        h2_2m: solution.h2_2m,
        n_particles: occ.n_particles,
        lambda_qm: occ.lambda_qm,
        potential: solution.potential.clone(),
        rho,
        tau,
        tau1,
        xi,
        lap_rho,
    })
}

impl PlaneDensities {
    /// ∫ f dxdy over the grid.
    pub fn integrate(&self, field: &[f64]) -> f64 {
        field.iter().sum::<f64>() * self.grid.h * self.grid.h
    }
}
