//! Exact densities of the isotropic harmonic oscillator with M+1 filled
//! shells, assembled from eigenfunction sums on a grid.
//!
//! The orbitals go through the same assembly path as the grid solvers
//! (an `EigenSolution` feeding `qdens::compute_densities`), so a single
//! code path is exercised by both backends; only the orbital values are
//! analytic here. The Laplacian and radial derivatives of ρ are attached
//! exactly from the orbital ODE.

use crate::error::{Error, Result};
use crate::grid::{solid_angle, Grid, GridKind};
use crate::model::{iho_shell_count, lambda_m, PotentialKind, PotentialSpec, Units};
use crate::qdens::{attach_exact_derivatives, compute_densities, DensityField};
use crate::specfun::{ho_eigenfunction, laguerre_scaled, ln_gamma};
use crate::spectral::{angular_multiplicity, EigenSolution, Orbital};

const MAX_SHELL: u32 = 200;

/// Analytic `EigenSolution` for the D-dimensional IHO holding every orbital
/// of the first `m_shell`+1 shells, sampled on `grid`.
pub fn iho_solution(
    m_shell: u32,
    dim: u32,
    omega: f64,
    units: Units,
    grid: &Grid,
) -> Result<EigenSolution> {
    if m_shell > MAX_SHELL {
        return Err(Error::Domain(format!("shell count M={m_shell} > {MAX_SHELL}")));
    }
    match (dim, grid.kind) {
        (1, GridKind::Line) => {}
        (d, GridKind::Radial { dim: gd }) if d == gd && (2..=3).contains(&d) => {}
        _ => return Err(Error::Config("grid kind does not match IHO dimension".into())),
    }
    PotentialSpec::new(PotentialKind::Iho { omega, dim }, units)?;
    let potential: Vec<f64> = grid
        .points
        .iter()
        .map(|&r| 0.5 * units.mass * omega * omega * r * r)
        .collect();

    let mut orbitals = Vec::new();
    if dim == 1 {
        let omega_eff = units.mass * omega / units.hbar;
        let scale = units.hbar * omega;
        for n in 0..=m_shell {
            let mut values = Vec::with_capacity(grid.len());
            let mut derivs = Vec::with_capacity(grid.len());
            for &x in &grid.points {
                // φ_n for general (ħ, m): unit-ħ=m oscillator at ω_eff = mω/ħ
                let (v, d) = ho_eigenfunction(n, x, omega_eff)?;
                values.push(v);
                derivs.push(d);
            }
            orbitals.push(Orbital {
                energy: scale * (n as f64 + 0.5),
                l: n,
                n_radial: 0,
                ang_mult: 1,
                values,
                derivs,
            });
        }
    } else {
        let beta = units.mass * omega / units.hbar;
        let omega_d = solid_angle(dim);
        for n in 0..=m_shell {
            let energy = units.hbar * omega * (n as f64 + dim as f64 / 2.0);
            let mut l = n % 2;
            while l <= n {
                let n_r = (n - l) / 2;
                let alpha = l as f64 + dim as f64 / 2.0 - 1.0;
                // ∫R² r^{D-1}dr = 1 with R = N r^l L^{(α)}_{n_r}(βr²) e^{-βr²/2}
                let ln_norm = 0.5
                    * ((2.0f64).ln() + (l as f64 + dim as f64 / 2.0) * beta.ln()
                        + ln_gamma(n_r as f64 + 1.0)
                        - ln_gamma(n_r as f64 + alpha + 1.0));
                let mut values = Vec::with_capacity(grid.len());
                let mut derivs = Vec::with_capacity(grid.len());
                for &r in &grid.points {
                    let t = beta * r * r;
                    let (lg, lg_scale) = laguerre_scaled(n_r, alpha, t);
                    let (dlg, dlg_scale) = if n_r > 0 {
                        laguerre_scaled(n_r - 1, alpha + 1.0, t)
                    } else {
                        (0.0, 0.0)
                    };
                    // prefactor P = N r^l e^{-t/2} in logs
                    let ln_pre = ln_norm + l as f64 * r.ln() - 0.5 * t;
                    let val = lg * (ln_pre + lg_scale).exp();
                    // R' = R (l/r − βr) − 2βr · N r^l e^{-t/2} L_{n_r-1}^{(α+1)}
                    let der = val * (l as f64 / r - beta * r)
                        - 2.0 * beta * r * dlg * (ln_pre + dlg_scale).exp();
                    values.push(val / omega_d.sqrt());
                    derivs.push(der / omega_d.sqrt());
                }
                orbitals.push(Orbital {
                    energy,
                    l,
                    n_radial: n_r,
                    ang_mult: angular_multiplicity(dim, l),
                    values,
                    derivs,
                });
                l += 2;
            }
        }
    }
    orbitals.sort_by(|a, b| {
        a.energy
            .partial_cmp(&b.energy)
            .unwrap()
            .then(a.l.cmp(&b.l))
    });
    Ok(EigenSolution {
        grid: grid.clone(),
        units,
        potential,
        orbitals,
        boundary_warning: false,
    })
}

/// Exact ρ, τ, τ₁, ξ for M+1 filled shells with λ = λ_M and analytic
/// derivative data.
pub fn iho_densities(
    m_shell: u32,
    dim: u32,
    omega: f64,
    units: Units,
    grid: &Grid,
) -> Result<DensityField> {
    let spec = PotentialSpec::new(PotentialKind::Iho { omega, dim }, units)?;
    let solution = iho_solution(m_shell, dim, omega, units, grid)?;
    let n_particles = iho_shell_count(m_shell, dim)?;
    let capacity: u64 = solution.orbitals.iter().map(|o| 2 * o.ang_mult as u64).sum();
    debug_assert_eq!(capacity, n_particles);
    // the solution holds exactly M+1 shells; the LUMO is the next shell
    let occ = crate::model::Occupation {
        n_particles,
        filled_levels: solution.orbitals.len(),
        lambda_qm: lambda_m(m_shell, dim, omega, units.hbar),
        e_homo: units.hbar * omega * (m_shell as f64 + dim as f64 / 2.0),
        e_lumo: units.hbar * omega * (m_shell as f64 + 1.0 + dim as f64 / 2.0),
    };
    let mut field = compute_densities(&solution, &occ)?;
    field.lambda_used = lambda_m(m_shell, dim, omega, units.hbar);
    attach_exact_derivatives(&mut field, &solution, &occ, &spec)?;
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fill_levels;
    use crate::qdens::total_kinetic;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn d1_m0_matches_grid_solver_assembly() {
        let grid = Grid::line(-9.0, 9.0, 1201).unwrap();
        let analytic = iho_densities(0, 1, 1.0, Units::natural(), &grid).unwrap();
        // grid-solver route on the same grid
        let spec =
            PotentialSpec::new(PotentialKind::Iho { omega: 1.0, dim: 1 }, Units::natural()).unwrap();
        let sol = crate::spectral::solve_1d(&spec, &grid, 2, true).unwrap();
        let occ = fill_levels(&sol.levels(), 2).unwrap();
        let numeric = compute_densities(&sol, &occ).unwrap();
        // the grid solver carries O(h²) orbital shape error at h = 0.015
        let mut worst: f64 = 0.0;
        for i in 0..grid.len() {
            worst = worst.max((analytic.rho[i] - numeric.rho[i]).abs());
            worst = worst.max((analytic.xi[i] - numeric.xi[i]).abs());
        }
        assert!(worst < 1e-4, "assembly mismatch {worst}");
        // and against the Gaussian: ρ(0) = 2/√π
        let mid = grid.len() / 2;
        assert_abs_diff_eq!(
            analytic.rho[mid],
            2.0 / std::f64::consts::PI.sqrt(),
            epsilon = 1e-10
        );
    }

    #[test]
    fn particle_numbers_integrate_correctly() {
        for (dim, m) in [(1u32, 6u32), (2, 5), (3, 4)] {
            let grid = if dim == 1 {
                Grid::line(-10.0, 10.0, 1400).unwrap()
            } else {
                Grid::radial(dim, 10.0, 1400).unwrap()
            };
            let f = iho_densities(m, dim, 1.0, Units::natural(), &grid).unwrap();
            let n = f.grid.integrate(&f.rho).unwrap();
            assert_relative_eq!(n, iho_shell_count(m, dim).unwrap() as f64, max_relative = 1e-8);
        }
    }

    #[test]
    fn exact_identities_hold_pointwise() {
        let grid = Grid::radial(3, 9.0, 1200).unwrap();
        let f = iho_densities(4, 3, 1.0, Units::natural(), &grid).unwrap();
        let h2_2m = f.units.h2_2m();
        let scale = f.tau.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        for i in 0..grid.len() {
            // ξ = (τ+τ₁)/2 exactly
            assert_eq!(f.xi[i], 0.5 * (f.tau[i] + f.tau1[i]));
            // τ = ξ − (ħ²/8m)∇²ρ with the analytic Laplacian
            let want = f.xi[i] - 0.25 * h2_2m * f.lap_rho[i];
            assert_abs_diff_eq!(f.tau[i], want, epsilon = 1e-10 * scale);
        }
    }

    #[test]
    fn exact_derivatives_match_stencils() {
        let grid = Grid::radial(2, 9.0, 1800).unwrap();
        let f = iho_densities(6, 2, 1.0, Units::natural(), &grid).unwrap();
        let ex = f.exact.as_ref().unwrap();
        let num = crate::grid::first_derivative(&f.rho, grid.h).unwrap();
        let lap_num = crate::grid::first_derivative(&f.lap_rho, grid.h).unwrap();
        let scale = ex.rho_prime.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        let lscale = ex.lap_rho_prime.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        for i in 2..grid.len() - 2 {
            assert_abs_diff_eq!(ex.rho_prime[i], num[i], epsilon = 1e-4 * scale);
            assert_abs_diff_eq!(ex.lap_rho_prime[i], lap_num[i], epsilon = 1e-3 * lscale);
        }
    }

    #[test]
    fn total_kinetic_is_half_the_shell_energy() {
        // virial of the oscillator: T = E/2 summed over occupied orbitals
        let grid = Grid::radial(3, 10.0, 1500).unwrap();
        let f = iho_densities(2, 3, 1.0, Units::natural(), &grid).unwrap();
        // shells n=0,1,2: Σ 2 g_n E_n / 2 with E_n = n + 3/2, g = (n+1)(n+2)/2
        let want: f64 = (0..=2u32)
            .map(|n| ((n + 1) * (n + 2)) as f64 * (n as f64 + 1.5) / 2.0)
            .sum();
        assert_relative_eq!(total_kinetic(&f).unwrap(), want, max_relative = 1e-7);
    }
}
