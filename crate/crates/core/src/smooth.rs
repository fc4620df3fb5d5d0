//! Thomas-Fermi smooth densities, smooth Fermi energies (including the
//! perimeter-corrected counting rule for the disk), the smooth/oscillating
//! decomposition, and the interior mask away from classical turning points.

use crate::error::{Error, Result};
use crate::grid::{second_derivative, Grid};
use crate::model::{PotentialSpec, Units};
use crate::qdens::{DensityField, PlaneDensities};
use crate::specfun::gamma;
use crate::spectral::PlaneGrid;
use serde::Serialize;
use std::f64::consts::PI;

/// How the smooth reference fields are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum XiMode {
    /// Plain Thomas-Fermi densities evaluated at λ̃.
    Tf,
    /// Gaussian local average of the exact fields (window tied to the local
    /// Friedel wavelength, deconvolved to remove the O(σ²) smoothing bias).
    LocalAverage,
}

/// Smooth reference densities with the interior mask.
#[derive(Debug, Clone)]
pub struct SmoothSet {
    pub lambda_smooth: f64,
    pub rho_tf: Vec<f64>,
    pub tau_tf: Vec<f64>,
    /// ξ̃; equals τ_TF in TF mode.
    pub xi_tf: Vec<f64>,
    pub interior_mask: Vec<bool>,
    pub mode: XiMode,
}

/// ρ_TF for a local potential value u = λ − V (zero when u ≤ 0).
pub fn rho_tf_of(u: f64, dim: u32, units: &Units) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    let d = dim as f64;
    4.0 / d / gamma(d / 2.0) * (units.mass / (2.0 * PI * units.hbar * units.hbar)).powf(d / 2.0)
        * u.powf(d / 2.0)
}

/// τ_TF for u = λ − V.
pub fn tau_tf_of(u: f64, dim: u32, units: &Units) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    let d = dim as f64;
    4.0 / (d + 2.0) / gamma(d / 2.0)
        * (units.mass / (2.0 * PI * units.hbar * units.hbar)).powf(d / 2.0)
        * u.powf(d / 2.0 + 1.0)
}

/// The TF kinetic-energy functional τ_TF[ρ].
pub fn tf_functional(rho: &[f64], dim: u32, units: &Units) -> Vec<f64> {
    let d = dim as f64;
    let coeff = units.h2_2m() * 4.0 * PI * d / (d + 2.0) * (d / 4.0 * gamma(d / 2.0)).powf(2.0 / d);
    rho.iter()
        .map(|&r| if r <= 0.0 { 0.0 } else { coeff * r.powf(1.0 + 2.0 / d) })
        .collect()
}

/// TF densities of `spec` at Fermi energy `lambda` on a radial/line grid,
/// with the default interior mask.
pub fn tf_densities(spec: &PotentialSpec, lambda: f64, grid: &Grid) -> Result<SmoothSet> {
    let dim = spec.dim();
    let mut rho = Vec::with_capacity(grid.len());
    let mut tau = Vec::with_capacity(grid.len());
    for &r in &grid.points {
        let v = spec
            .v_radial(r)
            .ok_or_else(|| Error::Domain(format!("potential undefined at {r}")))?;
        rho.push(rho_tf_of(lambda - v, dim, &spec.units));
        tau.push(tau_tf_of(lambda - v, dim, &spec.units));
    }
    let mask = interior_mask(spec, lambda, grid, MASK_C_DEFAULT, MASK_FRACTION_DEFAULT)?;
    Ok(SmoothSet {
        lambda_smooth: lambda,
        rho_tf: rho,
        tau_tf: tau.clone(),
        xi_tf: tau,
        interior_mask: mask,
        mode: XiMode::Tf,
    })
}

/// Smooth set built by bias-corrected Gaussian local averaging of the exact
/// fields; the window follows the local Friedel wavelength πħ/p_λ(r).
pub fn local_averaged_set(field: &DensityField, spec: &PotentialSpec, lambda: f64) -> Result<SmoothSet> {
    let grid = &field.grid;
    let span = grid.points.last().unwrap() - grid.points[0];
    let width_cap = 0.15 * span;
    let width: Vec<f64> = grid
        .points
        .iter()
        .map(|&r| {
            let v = spec.v_radial(r).unwrap_or(lambda);
            let p = (2.0 * spec.units.mass * (lambda - v).max(1e-9)).sqrt();
            (PI * spec.units.hbar / p).min(width_cap)
        })
        .collect();
    let rho_s = gaussian_smooth(&field.rho, grid.h, &width);
    let tau_s = gaussian_smooth(&field.tau, grid.h, &width);
    let xi_s = gaussian_smooth(&field.xi, grid.h, &width);
    let mask = interior_mask(spec, lambda, grid, MASK_C_DEFAULT, MASK_FRACTION_DEFAULT)?;
    Ok(SmoothSet {
        lambda_smooth: lambda,
        rho_tf: rho_s,
        tau_tf: tau_s,
        xi_tf: xi_s,
        interior_mask: mask,
        mode: XiMode::LocalAverage,
    })
}

/// Gaussian moving average with position-dependent width (σ = width/2),
/// mirror-extended at both ends, with the O(σ²) smoothing bias removed by
/// one deconvolution step.
pub fn gaussian_smooth(field: &[f64], h: f64, width: &[f64]) -> Vec<f64> {
    let n = field.len();
    let at = |i: isize| -> f64 {
        let m = n as isize;
        let j = if i < 0 {
            (-i - 1).min(m - 1)
        } else if i >= m {
            (2 * m - 1 - i).max(0)
        } else {
            i
        };
        field[j as usize]
    };
    let mut smooth = vec![0.0; n];
    for i in 0..n {
        let sigma = (0.5 * width[i]).max(h);
        let reach = (4.0 * sigma / h).ceil() as isize;
        let mut num = 0.0;
        let mut den = 0.0;
        for k in -reach..=reach {
            let w = (-0.5 * (k as f64 * h / sigma).powi(2)).exp();
            num += w * at(i as isize + k);
            den += w;
        }
        smooth[i] = num / den;
    }
    // subtract (σ²/2) d²/ds² of the smoothed field
    if let Ok(d2) = second_derivative(&smooth, h) {
        for i in 0..n {
            let sigma = (0.5 * width[i]).max(h);
            smooth[i] -= 0.5 * sigma * sigma * d2[i];
        }
    }
    smooth
}

/// λ_TF with ∫ρ_TF = N on the given grid (bisection; the quadrature matches
/// the one used for the fields so the δρ normalization closes).
pub fn find_lambda_tf(spec: &PotentialSpec, n_particles: u64, grid: &Grid) -> Result<f64> {
    let dim = spec.dim();
    let target = n_particles as f64;
    let v: Vec<f64> = grid
        .points
        .iter()
        .map(|&r| {
            spec.v_radial(r)
                .ok_or_else(|| Error::Domain(format!("potential undefined at {r}")))
        })
        .collect::<Result<_>>()?;
    let count = |lambda: f64| -> Result<f64> {
        let rho: Vec<f64> = v.iter().map(|&v| rho_tf_of(lambda - v, dim, &spec.units)).collect();
        grid.integrate(&rho)
    };
    let mut lo = v.iter().copied().fold(f64::INFINITY, f64::min) + 1e-12;
    let mut hi = lo.abs().max(1.0);
    while count(hi)? < target {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::Convergence("λ_TF bracket not found".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo).abs() < 1e-13 * hi.abs().max(1.0) {
            break;
        }
    }
    let lambda = 0.5 * (lo + hi);
    if (count(lambda)? - target).abs() > 1e-6 {
        return Err(Error::Convergence(format!(
            "λ_TF root: ΔN = {}",
            count(lambda)? - target
        )));
    }
    Ok(lambda)
}

/// λ_TF on a 2D Cartesian grid.
pub fn find_lambda_tf_plane(spec: &PotentialSpec, n_particles: u64, pg: &PlaneGrid) -> Result<f64> {
    let target = n_particles as f64;
    let mut vs = Vec::with_capacity(pg.n * pg.n);
    for i in 0..pg.n {
        for j in 0..pg.n {
            match spec.evaluate(&[pg.coord(i), pg.coord(j)])? {
                crate::model::PotentialValue::Inside { v, .. } => vs.push(v),
                crate::model::PotentialValue::Wall => vs.push(f64::INFINITY),
            }
        }
    }
    let cell = pg.h * pg.h;
    let count = |lambda: f64| -> f64 {
        vs.iter().map(|&v| rho_tf_of(lambda - v, 2, &spec.units)).sum::<f64>() * cell
    };
    let mut lo = 1e-12;
    let mut hi = 1.0;
    while count(hi) < target {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::Convergence("λ_TF bracket not found".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Smooth Fermi energy of the disk billiard from the Weyl counting rule
/// with area, perimeter, curvature, and curvature-cubed terms:
/// 2[(A/4π)k² − (P/4π)k + 1/6 + (1/256π)∮κ³ds · k⁻¹] = N, λ̃ = (ħ²/2m)k².
///
/// The k⁻¹ term matters at this scale: for N = 68, R = 1 it moves λ̃ from
/// 160.6857 to 160.68303.
pub fn weyl_lambda_disk(n_particles: u64, radius: f64, units: &Units) -> Result<f64> {
    if n_particles == 0 || n_particles % 2 != 0 {
        return Err(Error::Config("disk filling needs even N".into()));
    }
    let target = n_particles as f64 / 2.0;
    let count = |k: f64| -> f64 {
        radius * radius * k * k / 4.0 - radius * k / 2.0
            + 1.0 / 6.0
            + 1.0 / (128.0 * radius * radius * k)
    };
    let mut lo = 1e-6;
    let mut hi = 10.0;
    while count(hi) < target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let k = 0.5 * (lo + hi);
    Ok(units.h2_2m() * k * k)
}

/// Oscillating parts and their regular/irregular split.
#[derive(Debug, Clone)]
pub struct OscillatingSet {
    pub delta_rho: Vec<f64>,
    pub delta_tau: Vec<f64>,
    pub delta_tau1: Vec<f64>,
    pub delta_xi: Vec<f64>,
    /// Regular (short-ranged) part of δτ: δτ − δξ.
    pub delta_r_tau: Vec<f64>,
    /// Irregular part, identified with δξ.
    pub delta_irr_tau: Vec<f64>,
}

/// δX = X − X̃ for every density, with the regular/irregular split
/// δ_irr τ = δξ, δ_r τ = δτ − δξ.
pub fn oscillating_parts(field: &DensityField, smooth: &SmoothSet) -> Result<OscillatingSet> {
    let n = field.grid.len();
    if smooth.rho_tf.len() != n {
        return Err(Error::GridMismatch("smooth set grid".into()));
    }
    let sub = |a: &[f64], b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x - y).collect() };
    let delta_rho = sub(&field.rho, &smooth.rho_tf);
    let delta_tau = sub(&field.tau, &smooth.tau_tf);
    let delta_xi = sub(&field.xi, &smooth.xi_tf);
    // τ₁ smooth part is the same ξ̃ (TF: (τ₁)_TF = τ_TF)
    let tau1_smooth: Vec<f64> = smooth
        .tau_tf
        .iter()
        .zip(&smooth.xi_tf)
        .map(|(t, x)| 2.0 * x - t)
        .collect();
    let delta_tau1 = sub(&field.tau1, &tau1_smooth);
    let delta_r_tau = sub(&delta_tau, &delta_xi);
    Ok(OscillatingSet {
        delta_irr_tau: delta_xi.clone(),
        delta_r_tau,
        delta_rho,
        delta_tau,
        delta_tau1,
        delta_xi,
    })
}

pub const MASK_C_DEFAULT: f64 = 4.0;
pub const MASK_FRACTION_DEFAULT: f64 = 0.05;

/// Interior mask: keep points farther than w = c·ħ/(2p_λ(r)) from every
/// classical turning point (walls included) and where λ − V > frac·λ.
pub fn interior_mask(
    spec: &PotentialSpec,
    lambda: f64,
    grid: &Grid,
    c: f64,
    frac: f64,
) -> Result<Vec<bool>> {
    let mut turning: Vec<f64> = Vec::new();
    let v_of = |r: f64| spec.v_radial(r);
    // walls are turning points of billiard-type systems
    match &spec.kind {
        crate::model::PotentialKind::Box1D { length } => {
            turning.push(0.0);
            turning.push(*length);
        }
        crate::model::PotentialKind::DiskBilliard { radius } => turning.push(*radius),
        _ => {
            // scan for sign changes of λ − V along the grid (and mirrored for
            // symmetric line grids)
            let mut prev = grid.points[0];
            let mut prev_u = lambda - v_of(prev).unwrap_or(f64::INFINITY);
            for &r in grid.points.iter().skip(1) {
                let u = lambda - v_of(r).unwrap_or(f64::INFINITY);
                if prev_u * u < 0.0 {
                    // linear interpolation of the crossing
                    turning.push(prev + (r - prev) * prev_u / (prev_u - u));
                }
                prev = r;
                prev_u = u;
            }
        }
    }
    if turning.is_empty() {
        return Err(Error::Domain(
            "no classical turning point found inside the grid; enlarge it".into(),
        ));
    }
    let mut mask = Vec::with_capacity(grid.len());
    for &r in &grid.points {
        let v = v_of(r).unwrap_or(f64::INFINITY);
        let u = lambda - v;
        if u <= frac * lambda.abs() {
            mask.push(false);
            continue;
        }
        let p = (2.0 * spec.units.mass * u).sqrt();
        let w = c * spec.units.hbar / (2.0 * p);
        let dist = turning
            .iter()
            .map(|t| (r - t).abs())
            .fold(f64::INFINITY, f64::min);
        mask.push(dist > w);
    }
    if !mask.iter().any(|&b| b) {
        return Err(Error::Domain(
            "interior mask is empty; the system is too small (try larger N)".into(),
        ));
    }
    Ok(mask)
}

/// Oscillating parts of 2D plane densities against TF smooth parts.
pub struct PlaneOscillating {
    pub delta_rho: Vec<f64>,
    pub delta_tau: Vec<f64>,
    pub delta_xi: Vec<f64>,
    pub lambda: f64,
}

pub fn oscillating_parts_plane(
    d: &PlaneDensities,
    spec: &PotentialSpec,
    lambda: f64,
) -> Result<PlaneOscillating> {
    let n = d.grid.n;
    let mut delta_rho = vec![0.0; n * n];
    let mut delta_tau = vec![0.0; n * n];
    let mut delta_xi = vec![0.0; n * n];
    for idx in 0..n * n {
        let u = lambda - d.potential[idx];
        delta_rho[idx] = d.rho[idx] - rho_tf_of(u, 2, &spec.units);
        let t = tau_tf_of(u, 2, &spec.units);
        delta_tau[idx] = d.tau[idx] - t;
        delta_xi[idx] = d.xi[idx] - t;
    }
    Ok(PlaneOscillating { delta_rho, delta_tau, delta_xi, lambda })
}
