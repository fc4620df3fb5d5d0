//! Radial Schrödinger solver for D = 1, 2, 3 in a conservative
//! finite-volume form acting directly on R(r).
//!
//! The flux discretization ((1/r^{D-1}) d/dr r^{D-1} dR/dr in finite-volume
//! form) avoids the 1/r² artifacts of the reduced u = r^{(D-1)/2} R equation
//! at the origin for D = 2, handles the l = 0 regularity condition as a
//! natural zero-flux boundary, and symmetrizes exactly with the cell-volume
//! weights.

use super::tridiag::SymTridiag;
use super::{EigenSolution, Orbital};
use crate::error::{Error, Result};
use crate::grid::{Grid, GridKind};
use crate::model::PotentialSpec;
use rayon::prelude::*;

/// Orbitals at angular quantum number l (spin not included):
/// 1 per parity channel in D=1; 1 or 2 in D=2 (±m); 2l+1 in D=3.
pub fn angular_multiplicity(dim: u32, l: u32) -> u32 {
    match dim {
        1 => 1,
        2 => {
            if l == 0 {
                1
            } else {
                2
            }
        }
        _ => 2 * l + 1,
    }
}

/// Eigenvalue Λ_l = l(l + D − 2) of the angular Laplacian on S^{D-1};
/// zero in one dimension, where l only labels the parity channel.
pub fn angular_eigenvalue(dim: u32, l: u32) -> f64 {
    if dim == 1 {
        return 0.0;
    }
    l as f64 * (l as f64 + dim as f64 - 2.0)
}

/// Lowest `count_per_l` states in each channel l = 0..=l_max of a spherical
/// potential, merged and sorted by energy.
///
/// Orbitals are normalized under the full metric Ω_D r^(D-1) dr. Channels
/// solve independently (and in parallel); results are deterministic.
pub fn solve_radial(
    spec: &PotentialSpec,
    l_max: u32,
    grid: &Grid,
    count_per_l: usize,
    richardson: bool,
) -> Result<EigenSolution> {
    solve_radial_bounded(spec, l_max, grid, count_per_l, richardson, None)
}

/// Like [`solve_radial`], but discards orbitals above `keep_below` right
/// after each channel solve; keeps fine-grid many-channel solves within
/// memory. The cutoff must leave headroom above the intended Fermi level so
/// the LUMO survives.
pub fn solve_radial_bounded(
    spec: &PotentialSpec,
    l_max: u32,
    grid: &Grid,
    count_per_l: usize,
    richardson: bool,
    keep_below: Option<f64>,
) -> Result<EigenSolution> {
    let dim = match grid.kind {
        GridKind::Radial { dim } => dim,
        _ => return Err(Error::Config("solve_radial needs a radial grid".into())),
    };
    if !spec.is_radial() && spec.dim() != 1 {
        return Err(Error::Config("potential is not spherically symmetric".into()));
    }
    let potential: Vec<f64> = grid
        .points
        .iter()
        .map(|&r| {
            spec.v_radial(r)
                .ok_or_else(|| Error::Domain(format!("potential undefined at r={r}")))
        })
        .collect::<Result<_>>()?;

    let channels: Vec<Result<Vec<Orbital>>> = (0..=l_max)
        .into_par_iter()
        .map(|l| {
            let mut orbs = solve_channel(spec, dim, l, grid, count_per_l, richardson)?;
            if let Some(cut) = keep_below {
                orbs.retain(|o| o.energy <= cut);
            }
            Ok(orbs)
        })
        .collect();

    let mut orbitals = Vec::new();
    for ch in channels {
        orbitals.extend(ch?);
    }
    orbitals.sort_by(|a, b| {
        a.energy
            .partial_cmp(&b.energy)
            .unwrap()
            .then(a.l.cmp(&b.l))
            .then(a.n_radial.cmp(&b.n_radial))
    });

    let mut boundary_warning = false;
    let n = grid.len();
    for o in &orbitals {
        if o.values[n - 1].abs() > 1e-8 {
            boundary_warning = true;
        }
    }

    Ok(EigenSolution {
        grid: grid.clone(),
        units: spec.units,
        potential,
        orbitals,
        boundary_warning,
    })
}

fn solve_channel(
    spec: &PotentialSpec,
    dim: u32,
    l: u32,
    grid: &Grid,
    count: usize,
    richardson: bool,
) -> Result<Vec<Orbital>> {
    let mut pairs = channel_eigenpairs(spec, dim, l, grid.len(), grid.h, count)?;
    if richardson {
        let fine = channel_eigenpairs(spec, dim, l, 2 * grid.len(), grid.h / 2.0, count)?;
        for (p, f) in pairs.iter_mut().zip(&fine) {
            p.0 = (4.0 * f.0 - p.0) / 3.0;
        }
    }
    let n = grid.len();
    let h = grid.h;
    pairs
        .into_iter()
        .enumerate()
        .map(|(k, (energy, radial))| {
            let (mut values, mut derivs) = match radial {
                ChannelVector::Reduced(u) => {
                    // u = r R on r = h..r_max with u(0) = 0; R = u/r and
                    // R' = (u' − R)/r keep O(h²) accuracy down to the axis
                    let mut values = Vec::with_capacity(n);
                    let mut derivs = Vec::with_capacity(n);
                    for i in 0..n {
                        values.push(u[i] / grid.points[i]);
                    }
                    for i in 0..n {
                        let up = if i == 0 {
                            u[1] / (2.0 * h) // central with u(0) = 0
                        } else if i + 1 < n {
                            (u[i + 1] - u[i - 1]) / (2.0 * h)
                        } else {
                            (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h)
                        };
                        derivs.push((up - values[i]) / grid.points[i]);
                    }
                    (values, derivs)
                }
                ChannelVector::Direct { body, origin } => {
                    // R sampled directly (flux form); central stencils with
                    // the origin value closing the left edge
                    let values = body;
                    let mut derivs = vec![0.0; n];
                    for i in 0..n {
                        let left = if i == 0 { origin } else { values[i - 1] };
                        if i + 1 < n {
                            derivs[i] = (values[i + 1] - left) / (2.0 * h);
                        } else {
                            derivs[i] =
                                (3.0 * values[i] - 4.0 * values[i - 1] + values[i - 2]) / (2.0 * h);
                        }
                    }
                    (values, derivs)
                }
            };
            // normalize to 1 under the full metric Ω_D r^(D-1) dr, in the
            // same quadrature the densities use
            let sq: Vec<f64> = values.iter().map(|v| v * v).collect();
            let s = 1.0 / grid.integrate(&sq)?.sqrt();
            for v in values.iter_mut() {
                *v *= s;
            }
            for d in derivs.iter_mut() {
                *d *= s;
            }
            Ok(Orbital {
                energy,
                l,
                n_radial: k as u32,
                ang_mult: angular_multiplicity(dim, l),
                values,
                derivs,
            })
        })
        .collect()
}

/// Raw eigenvector of one channel solve, before conversion to R samples.
enum ChannelVector {
    /// u = r^{(D−1)/2} R on the grid nodes (3D reduced form).
    Reduced(Vec<f64>),
    /// R itself, with the extra origin value when the l = 0 solve carries a
    /// node at r = 0.
    Direct { body: Vec<f64>, origin: f64 },
}

/// Eigenpairs of one l channel on n nodes of spacing h.
///
/// D = 3 uses the reduced u = rR equation (u is smooth ~r^{l+1}, so plain
/// central differences hold O(h²) uniformly down to the axis). D = 1, 2 use
/// the conservative flux form acting on R, whose first-node truncation is
/// exact through the leading small-r behaviour in those dimensions.
fn channel_eigenpairs(
    spec: &PotentialSpec,
    dim: u32,
    l: u32,
    n: usize,
    h: f64,
    count: usize,
) -> Result<Vec<(f64, ChannelVector)>> {
    let h2_2m = spec.units.h2_2m();
    if dim == 3 {
        let t = h2_2m / (h * h);
        let lam_ang = angular_eigenvalue(dim, l);
        let mut diag = Vec::with_capacity(n);
        for j in 0..n {
            let r = (j + 1) as f64 * h;
            let v = spec
                .v_radial(r)
                .ok_or_else(|| Error::Domain(format!("potential undefined at r={r}")))?;
            diag.push(2.0 * t + v + h2_2m * lam_ang / (r * r));
        }
        let tri = SymTridiag { diag, off: vec![-t; n - 1] };
        return Ok(tri
            .lowest_eigenpairs(count)?
            .into_iter()
            .map(|(e, u)| (e, ChannelVector::Reduced(u)))
            .collect());
    }
    let with_origin = l == 0;
    let total = if with_origin { n + 1 } else { n };
    let node_r = |j: usize| -> f64 {
        if with_origin {
            j as f64 * h
        } else {
            (j + 1) as f64 * h
        }
    };
    let dpow = dim as i32;
    let cell_volume = |r: f64| -> f64 {
        let hi: f64 = r + 0.5 * h;
        let lo: f64 = (r - 0.5 * h).max(0.0);
        (hi.powi(dpow) - lo.powi(dpow)) / dim as f64
    };
    let face = |r: f64| -> f64 { r.powi(dpow - 1) };
    let lam_ang = angular_eigenvalue(dim, l);

    let mut diag = Vec::with_capacity(total);
    let mut off = Vec::with_capacity(total - 1);
    let mut vols = Vec::with_capacity(total);
    for j in 0..total {
        let r = node_r(j);
        let vol = cell_volume(r);
        vols.push(vol);
        let v = spec
            .v_radial(r)
            .ok_or_else(|| Error::Domain(format!("potential undefined at r={r}")))?;
        let s_minus = if j == 0 && with_origin { 0.0 } else { face(r - 0.5 * h) };
        let s_plus = face(r + 0.5 * h); // Dirichlet wall beyond the last node
        let mut d = h2_2m * (s_minus + s_plus) / (h * vol) + v;
        if l > 0 {
            d += h2_2m * lam_ang / (r * r);
        }
        diag.push(d);
    }
    for j in 0..total - 1 {
        let r = node_r(j);
        off.push(-h2_2m * face(r + 0.5 * h) / (h * (vols[j] * vols[j + 1]).sqrt()));
    }

    let tri = SymTridiag { diag, off };
    let pairs = tri.lowest_eigenpairs(count)?;
    Ok(pairs
        .into_iter()
        .map(|(e, w)| {
            // undo the similarity scaling: R_j = w_j / √vol_j
            let radial: Vec<f64> = w.iter().zip(&vols).map(|(w, v)| w / v.sqrt()).collect();
            let (origin, body) = if with_origin {
                (radial[0], radial[1..].to_vec())
            } else {
                (0.0, radial)
            };
            (e, ChannelVector::Direct { body, origin })
        })
        .collect())
}
