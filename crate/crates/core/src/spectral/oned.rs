//! Full-line 1D Schrödinger solver on a uniform grid.

use super::tridiag::SymTridiag;
use super::{EigenSolution, Orbital};
use crate::error::{Error, Result};
use crate::grid::{first_derivative, Grid};
use crate::model::{PotentialSpec, PotentialValue};

/// Lowest `count` eigenpairs of −(ħ²/2m) d²/dx² + V with Dirichlet walls at
/// the grid ends.
///
/// With `richardson` a second solve at h/2 removes the O(h²) eigenvalue
/// error; orbitals stay on the requested grid.
pub fn solve_1d(
    spec: &PotentialSpec,
    grid: &Grid,
    count: usize,
    richardson: bool,
) -> Result<EigenSolution> {
    if count > grid.len() / 4 {
        return Err(Error::Config(format!(
            "requested {count} states from a {}-point grid",
            grid.len()
        )));
    }
    let v_at = |x: f64| -> Result<f64> {
        match spec.evaluate(&[x])? {
            PotentialValue::Inside { v, .. } => Ok(v),
            // hard walls as a tall barrier; penetration depth ħ/√(2mV₀)
            // stays far below any sensible grid spacing
            PotentialValue::Wall => Ok(1e10 * spec.units.h2_2m()),
        }
    };
    let potential: Vec<f64> = grid.points.iter().map(|&x| v_at(x)).collect::<Result<_>>()?;

    let mut pairs = eig_line(&potential, grid.h, spec.units.h2_2m(), count)?;
    if richardson {
        // refine: doubled resolution, same span
        let n2 = 2 * grid.len() - 1;
        let h2 = grid.h / 2.0;
        let pot2: Vec<f64> = (0..n2)
            .map(|i| v_at(grid.points[0] + i as f64 * h2))
            .collect::<Result<_>>()?;
        let fine = eig_line(&pot2, h2, spec.units.h2_2m(), count)?;
        for (p, f) in pairs.iter_mut().zip(&fine) {
            p.0 = (4.0 * f.0 - p.0) / 3.0;
        }
    }

    let mut boundary_warning = false;
    let orbitals = pairs
        .into_iter()
        .enumerate()
        .map(|(i, (energy, vec))| {
            // Dirichlet interior vector -> grid samples with zero ends,
            // normalized against the same quadrature the densities use
            let mut values = vec![0.0; grid.len()];
            values[1..grid.len() - 1].copy_from_slice(&vec);
            let sq: Vec<f64> = values.iter().map(|v| v * v).collect();
            let scale = 1.0 / grid.integrate(&sq)?.sqrt();
            for v in values.iter_mut() {
                *v *= scale;
            }
            if values[1].abs().max(values[grid.len() - 2].abs()) > 1e-8 {
                boundary_warning = true;
            }
            let derivs = first_derivative(&values, grid.h)?;
            Ok(Orbital {
                energy,
                l: 0,
                n_radial: i as u32,
                ang_mult: 1,
                values,
                derivs,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(EigenSolution {
        grid: grid.clone(),
        units: spec.units,
        potential,
        orbitals,
        boundary_warning,
    })
}

fn eig_line(potential: &[f64], h: f64, h2_2m: f64, count: usize) -> Result<Vec<(f64, Vec<f64>)>> {
    let n = potential.len();
    let t = h2_2m / (h * h);
    let tri = SymTridiag {
        diag: potential[1..n - 1].iter().map(|v| 2.0 * t + v).collect(),
        off: vec![-t; n - 3],
    };
    tri.lowest_eigenpairs(count)
}
