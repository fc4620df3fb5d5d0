//! Analytic eigenmodes of the two-dimensional circular billiard:
//! E_{m,n} = (ħ²/2m)(j_{m,n}/R)² with orbitals ∝ J_m(j_{m,n} r/R).

use super::{EigenSolution, Orbital};
use crate::error::Result;
use crate::grid::Grid;
use crate::model::Units;
use crate::specfun::{bessel_j, bessel_j_prime, bessel_zero};

/// Lowest `count` levels (m, n) of the disk of radius `radius`, sampled on
/// `grid_points` radial points. Levels with m > 0 carry angular multiplicity 2.
pub fn solve_disk_billiard(
    radius: f64,
    count: usize,
    units: Units,
    grid_points: usize,
) -> Result<EigenSolution> {
    // Weyl estimate of the spectral radius needed for `count` levels, with
    // margin; levels (m,n) number about z²/8 below Bessel argument z
    let z_cap = (8.0 * (count as f64 + 25.0)).sqrt() + 8.0;
    let mut zeros: Vec<(f64, u32, u32)> = Vec::new();
    let mut m = 0u32;
    loop {
        let first = bessel_zero(m, 1)?;
        if first > z_cap {
            break;
        }
        let mut n = 1u32;
        loop {
            let z = if n == 1 { first } else { bessel_zero(m, n)? };
            if z > z_cap {
                break;
            }
            zeros.push((z, m, n));
            n += 1;
        }
        m += 1;
    }
    zeros.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    zeros.truncate(count);

    let grid = Grid::radial(2, radius, grid_points)?;
    let h2_2m = units.h2_2m();
    let omega2 = 2.0 * std::f64::consts::PI;

    let orbitals: Vec<Orbital> = zeros
        .iter()
        .map(|&(z, m, n)| {
            let mf = m as f64;
            // ∫ J_m(z r/R)² r dr = R²/2 J_{m+1}(z)²  at a zero z of J_m
            let jnext = bessel_j(mf + 1.0, z)?;
            let norm = (2.0f64).sqrt() / (radius * jnext.abs()) / omega2.sqrt();
            let mut values = Vec::with_capacity(grid.len());
            let mut derivs = Vec::with_capacity(grid.len());
            for &r in &grid.points {
                let arg = z * r / radius;
                values.push(norm * bessel_j(mf, arg)?);
                derivs.push(norm * z / radius * bessel_j_prime(mf, arg)?);
            }
            Ok(Orbital {
                energy: h2_2m * (z / radius) * (z / radius),
                l: m,
                n_radial: n - 1,
                ang_mult: if m == 0 { 1 } else { 2 },
                values,
                derivs,
            })
        })
        .collect::<Result<_>>()?;

    Ok(EigenSolution {
        grid,
        units,
        potential: vec![0.0; grid_points],
        orbitals,
        boundary_warning: false,
    })
}
