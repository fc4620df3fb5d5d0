//! Every virial relation of the library as a pointwise residual field with
//! interior-masked norms.

use crate::error::{Error, Result};
use crate::model::{PotentialSpec, PotentialValue};
use crate::qdens::{rho_prime, DensityField, PlaneDensities};
use crate::smooth::{
    gaussian_smooth, interior_mask, rho_tf_of, tau_tf_of, tf_functional, OscillatingSet,
    SmoothSet, XiMode, MASK_C_DEFAULT, MASK_FRACTION_DEFAULT,
};
use crate::specfun::bessel_j;
use serde::Serialize;
use std::f64::consts::PI;

/// Relative norms of a residual over a mask: L∞ = max|res|/max|lhs|,
/// L2 = ‖res‖₂/‖lhs‖₂.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Norms {
    pub linf_rel: f64,
    pub l2_rel: f64,
}

/// Options recorded with every report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportOptions {
    pub lambda: f64,
    pub lambda_choice: String,
    pub xi_mode: Option<XiMode>,
    pub surface_correction: Option<bool>,
}

impl ReportOptions {
    pub fn bare(lambda: f64, choice: &str) -> Self {
        Self { lambda, lambda_choice: choice.into(), xi_mode: None, surface_correction: None }
    }
}

/// Pointwise residual field of one theorem with its masked norms.
#[derive(Debug, Clone)]
pub struct VirialReport {
    pub theorem: String,
    pub coords: Vec<f64>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub mask: Vec<bool>,
    pub interior: Norms,
    pub options: ReportOptions,
}

pub fn norms_over(residual: &[f64], lhs: &[f64], mask: &[bool]) -> Norms {
    let mut max_r = 0.0_f64;
    let mut max_l = 0.0_f64;
    let mut s_r = 0.0;
    let mut s_l = 0.0;
    for i in 0..residual.len() {
        if !mask[i] {
            continue;
        }
        max_r = max_r.max(residual[i].abs());
        max_l = max_l.max(lhs[i].abs());
        s_r += residual[i] * residual[i];
        s_l += lhs[i] * lhs[i];
    }
    Norms {
        linf_rel: if max_l > 0.0 { max_r / max_l } else { f64::NAN },
        l2_rel: if s_l > 0.0 { (s_r / s_l).sqrt() } else { f64::NAN },
    }
}

impl VirialReport {
    fn build(
        theorem: &str,
        coords: Vec<f64>,
        lhs: Vec<f64>,
        rhs: Vec<f64>,
        mask: Vec<bool>,
        options: ReportOptions,
    ) -> Self {
        let residual: Vec<f64> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
        let interior = norms_over(&residual, &lhs, &mask);
        Self { theorem: theorem.into(), coords, lhs, rhs, mask, interior, options }
    }

    pub fn residual(&self) -> Vec<f64> {
        self.lhs.iter().zip(&self.rhs).map(|(a, b)| a - b).collect()
    }

    /// Norms over an alternative mask (e.g. the surface region).
    pub fn norms_on(&self, mask: &[bool]) -> Norms {
        norms_over(&self.residual(), &self.lhs, mask)
    }

    /// CSV rows: coord, lhs, rhs, residual, mask.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("coord,lhs,rhs,residual,mask\n");
        let res = self.residual();
        for i in 0..self.coords.len() {
            out.push_str(&format!(
                "{:.11e},{:.11e},{:.11e},{:.11e},{}\n",
                self.coords[i],
                self.lhs[i],
                self.rhs[i],
                res[i],
                u8::from(self.mask[i])
            ));
        }
        out
    }

    /// Machine-readable summary block.
    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "theorem": self.theorem,
            "interior_norms": self.interior,
            "options": self.options,
            "points": self.coords.len(),
        })
    }
}

fn full_allowed_mask(field: &DensityField, lambda: f64) -> Vec<bool> {
    field.potential.iter().map(|&v| v < lambda).collect()
}

/// Exact shell relation ξ = D/(D+2)[(ħ²/8m)Δρ + ρ(λ−V)]; exact for closed
/// oscillator shells at λ_M and for linear potentials at any λ.
pub fn check_lvt1(field: &DensityField, lambda: f64, choice: &str) -> VirialReport {
    let d = field.grid.dim() as f64;
    let h2_8m = 0.25 * field.units.h2_2m();
    let rhs: Vec<f64> = (0..field.grid.len())
        .map(|i| {
            d / (d + 2.0)
                * (h2_8m * field.lap_rho[i] + field.rho[i] * (lambda - field.potential[i]))
        })
        .collect();
    VirialReport::build(
        "lvt1",
        field.grid.points.clone(),
        field.xi.clone(),
        rhs,
        full_allowed_mask(field, lambda),
        ReportOptions::bare(lambda, choice),
    )
}

/// Basic local virial theorem τ = [λ−V]ρ − (2/D)ξ.
pub fn check_lvt_basic(field: &DensityField, lambda: f64, choice: &str) -> VirialReport {
    let d = field.grid.dim() as f64;
    let rhs: Vec<f64> = (0..field.grid.len())
        .map(|i| (lambda - field.potential[i]) * field.rho[i] - 2.0 / d * field.xi[i])
        .collect();
    VirialReport::build(
        "lvt_basic",
        field.grid.points.clone(),
        field.tau.clone(),
        rhs,
        vec![true; field.grid.len()],
        ReportOptions::bare(lambda, choice),
    )
}

/// Generalized LVT with a smooth ξ̃ surrogate:
/// τ ≈ [λ̃−V]ρ − (2/D)ξ̃ {− (2/D)δξ}; with the correction the right side is
/// the full basic LVT.
pub fn check_lvt_generalized(
    field: &DensityField,
    smooth: &SmoothSet,
    surface_correction: bool,
) -> VirialReport {
    let d = field.grid.dim() as f64;
    let lam = smooth.lambda_smooth;
    let rhs: Vec<f64> = (0..field.grid.len())
        .map(|i| {
            let xi_term = if surface_correction { field.xi[i] } else { smooth.xi_tf[i] };
            (lam - field.potential[i]) * field.rho[i] - 2.0 / d * xi_term
        })
        .collect();
    let mut rep = VirialReport::build(
        "lvt_generalized",
        field.grid.points.clone(),
        field.tau.clone(),
        rhs,
        smooth.interior_mask.clone(),
        ReportOptions {
            lambda: lam,
            lambda_choice: "smooth".into(),
            xi_mode: Some(smooth.mode),
            surface_correction: Some(surface_correction),
        },
    );
    rep.theorem = if surface_correction {
        "lvt_generalized+surface".into()
    } else {
        "lvt_generalized".into()
    };
    rep
}

/// Differential LVT on oscillating parts: δτ ≈ [λ̃−V]δρ {− (2/D)δξ}.
pub fn check_differential_lvt(
    osc: &OscillatingSet,
    field: &DensityField,
    smooth: &SmoothSet,
    surface_correction: bool,
) -> VirialReport {
    let d = field.grid.dim() as f64;
    let lam = smooth.lambda_smooth;
    let rhs: Vec<f64> = (0..field.grid.len())
        .map(|i| {
            let base = (lam - field.potential[i]) * osc.delta_rho[i];
            if surface_correction {
                base - 2.0 / d * osc.delta_xi[i]
            } else {
                base
            }
        })
        .collect();
    VirialReport::build(
        "differential_lvt",
        field.grid.points.clone(),
        osc.delta_tau.clone(),
        rhs,
        smooth.interior_mask.clone(),
        ReportOptions {
            lambda: lam,
            lambda_choice: "smooth".into(),
            xi_mode: Some(smooth.mode),
            surface_correction: Some(surface_correction),
        },
    )
}

/// ξ₂(r) = (D/2)∫_r^∞ V′ρ dq by high-order cumulative quadrature.
pub fn xi2_field(field: &DensityField, spec: &PotentialSpec) -> Result<Vec<f64>> {
    let d = field.grid.dim() as f64;
    let integrand: Vec<f64> = field
        .grid
        .points
        .iter()
        .zip(&field.rho)
        .map(|(&r, &rho)| {
            spec.v_radial_prime(r)
                .map(|vp| vp * rho)
                .ok_or_else(|| Error::Domain("V′ unavailable".into()))
        })
        .collect::<Result<_>>()?;
    Ok(field
        .grid
        .exterior_integral(&integrand)?
        .into_iter()
        .map(|v| 0.5 * d * v)
        .collect())
}

/// Semi-local virial theorem: ξ (with correction) or ξ̃ (without) against
/// ξ₂ = (D/2)∫_r^∞ V′ρ. Exact in 1D and for oscillator shells with full ξ.
pub fn check_slvt(
    field: &DensityField,
    spec: &PotentialSpec,
    smooth: Option<&SmoothSet>,
    surface_correction: bool,
) -> Result<VirialReport> {
    let xi2 = xi2_field(field, spec)?;
    let tail = field.rho.last().copied().unwrap_or(0.0);
    if tail.abs() > 1e-10 * field.rho.iter().fold(0.0_f64, |a, v| a.max(v.abs())) {
        return Err(Error::Domain(format!(
            "density at the grid boundary is {tail:e}; the exterior integral would be truncated"
        )));
    }
    let (lhs, mask, lam, mode) = match (surface_correction, smooth) {
        (false, Some(s)) => (
            s.xi_tf.clone(),
            s.interior_mask.clone(),
            s.lambda_smooth,
            Some(s.mode),
        ),
        _ => (
            field.xi.clone(),
            vec![true; field.grid.len()],
            smooth.map(|s| s.lambda_smooth).unwrap_or(field.lambda_used),
            smooth.map(|s| s.mode),
        ),
    };
    Ok(VirialReport::build(
        "slvt",
        field.grid.points.clone(),
        lhs,
        xi2,
        mask,
        ReportOptions {
            lambda: lam,
            lambda_choice: "smooth".into(),
            xi_mode: mode,
            surface_correction: Some(surface_correction),
        },
    ))
}

/// ξ₂ and the error field R₂ = ξ − ξ₂ with the integrated virial theorem:
/// ∫ξ₂ dV = E_kin (= ½∫ r V′ ρ dV) and ∫R₂ dV = 0.
pub struct Xi2Report {
    pub xi2: Vec<f64>,
    pub r2: Vec<f64>,
    pub integral_xi2: f64,
    pub e_kin: f64,
    pub integral_r2: f64,
}

pub fn xi2_and_global_virial(field: &DensityField, spec: &PotentialSpec) -> Result<Xi2Report> {
    let xi2 = xi2_field(field, spec)?;
    let r2: Vec<f64> = field.xi.iter().zip(&xi2).map(|(x, y)| x - y).collect();
    let integral_xi2 = field.grid.integrate(&xi2)?;
    // E_kin as ∫ξ; the τ/τ₁/ξ agreement is a separate audit (total_kinetic)
    let e_kin = field.grid.integrate(&field.xi)?;
    let integral_r2 = field.grid.integrate(&r2)?;
    Ok(Xi2Report { xi2, r2, integral_xi2, e_kin, integral_r2 })
}

/// Which density equation of the ρ-only family to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdeKind {
    /// −(ħ²/8m)Δρ + Vρ + ((D+2)/2)∫_r^∞V′ρ = λρ
    Ide,
    /// (ħ²/8m)(Δρ)′ + [λ−V]ρ′ + (D/2)V′ρ = 0
    ThreeOde,
}

/// Integro-differential / third-order equations satisfied by ρ alone;
/// exact for oscillator shells (λ = λ_M) and linear-potential axes.
pub fn check_ide_3ode(
    field: &DensityField,
    spec: &PotentialSpec,
    lambda: f64,
    kind: IdeKind,
) -> Result<VirialReport> {
    if field.grid.len() < 7 {
        return Err(Error::GridMismatch("third-order stencils need ≥ 7 points".into()));
    }
    let d = field.grid.dim() as f64;
    let h2_8m = 0.25 * field.units.h2_2m();
    let n = field.grid.len();
    let (lhs, rhs, name): (Vec<f64>, Vec<f64>, &str) = match kind {
        IdeKind::Ide => {
            let xi2 = xi2_field(field, spec)?;
            let lhs = (0..n)
                .map(|i| {
                    -h2_8m * field.lap_rho[i]
                        + field.potential[i] * field.rho[i]
                        + (d + 2.0) / d * xi2[i]
                })
                .collect();
            let rhs = field.rho.iter().map(|&r| lambda * r).collect();
            (lhs, rhs, "ide")
        }
        IdeKind::ThreeOde => {
            let lhs = match &field.exact {
                Some(e) => (0..n)
                    .map(|i| {
                        let vp = spec.v_radial_prime(field.grid.points[i]).unwrap_or(0.0);
                        h2_8m * e.lap_rho_prime[i]
                            + (lambda - field.potential[i]) * e.rho_prime[i]
                            + 0.5 * d * vp * field.rho[i]
                    })
                    .collect::<Vec<f64>>(),
                None => {
                    // the equation is exactly −d/dr of the ρ-only IDE;
                    // evaluate it that way on grid backends. Plain stencils
                    // amplify eigenvector roundoff by 1/h³ here, so the
                    // derivative is a least-squares slope over a window small
                    // against the Friedel wavelength (O(h⁴) stencils feed the
                    // Laplacian to keep its axis boundary layer out).
                    let (d1, d2, _) =
                        crate::qdens::derivatives_even_richardson(&field.rho, &field.grid)?;
                    let geo = d - 1.0;
                    let xi2 = xi2_field(field, spec)?;
                    let ide_res: Vec<f64> = (0..n)
                        .map(|i| {
                            let r = field.grid.points[i];
                            let lap = if geo == 0.0 { d2[i] } else { d2[i] + geo * d1[i] / r };
                            -h2_8m * lap
                                + (field.potential[i] - lambda) * field.rho[i]
                                + (d + 2.0) / d * xi2[i]
                        })
                        .collect();
                    let p_max = (2.0 * field.units.mass * lambda.abs().max(1e-12)).sqrt();
                    let wavelength = std::f64::consts::PI * field.units.hbar / p_max;
                    let half = ((0.04 * wavelength / field.grid.h).round() as usize).max(2);
                    least_squares_derivative(&ide_res, &field.grid, half)
                        .into_iter()
                        .map(|v| -v)
                        .collect()
                }
            };
            (lhs, vec![0.0; n], "3ode")
        }
    };
    // normalize the 3ODE by the scale of its largest term so the relative
    // norms remain meaningful against an identically-zero right side
    let mask = full_allowed_mask(field, lambda);
    let mut rep = VirialReport::build(
        name,
        field.grid.points.clone(),
        lhs,
        rhs,
        mask,
        ReportOptions::bare(lambda, "per-theorem"),
    );
    if kind == IdeKind::ThreeOde {
        // residual relative to the λρ′ term
        let rp = rho_prime(field)?;
        let scale: Vec<f64> = rp.iter().map(|&v| lambda * v).collect();
        rep.interior = norms_over(&rep.residual(), &scale, &rep.mask);
    }
    Ok(rep)
}

/// TF functional applied to the exact density: τ vs τ_TF[ρ].
pub fn check_tf_functional_on_exact(field: &DensityField, mask: &[bool]) -> VirialReport {
    let rhs = tf_functional(&field.rho, field.grid.dim(), &field.units);
    VirialReport::build(
        "tf_functional_on_exact",
        field.grid.points.clone(),
        field.tau.clone(),
        rhs,
        mask.to_vec(),
        ReportOptions::bare(field.lambda_used, "field"),
    )
}

/// Opposition of the regular oscillating parts: δ_rτ = −δ_rτ₁ holds by the
/// ξ definition, so the assertable content is that δξ is small against the
/// regular oscillation.
pub struct OppositionReport {
    /// max|δξ| / max|δ_r τ| over the mask.
    pub xi_to_regular_ratio: f64,
    /// max|δτ + δτ₁ − 2δξ| (an exact identity; measures numerical noise).
    pub identity_residual: f64,
}

pub fn check_tau_opposition(osc: &OscillatingSet, mask: &[bool]) -> OppositionReport {
    let mut max_xi = 0.0_f64;
    let mut max_reg = 0.0_f64;
    let mut ident = 0.0_f64;
    for i in 0..osc.delta_tau.len() {
        ident = ident.max((osc.delta_tau[i] + osc.delta_tau1[i] - 2.0 * osc.delta_xi[i]).abs());
        if mask[i] {
            max_xi = max_xi.max(osc.delta_xi[i].abs());
            max_reg = max_reg.max(osc.delta_r_tau[i].abs());
        }
    }
    OppositionReport { xi_to_regular_ratio: max_xi / max_reg, identity_residual: ident }
}

/// Amplitude convention of the center Bessel law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BesselAmplitude {
    /// m/(2ħT_r1) (p_λ/4πħr)^ν — the empirically validated form.
    HalfPeriod,
    /// m/(ħT_r1) (p_λ/4πħr)^ν — as printed with the universal solution.
    FullPeriod,
}

/// Fit of δρ near the center against the universal Bessel form.
#[derive(Debug, Clone, Serialize)]
pub struct BesselReport {
    /// Pearson correlation of δρ with the Bessel shape over the window.
    pub correlation: f64,
    /// Fitted amplitude / predicted amplitude for the chosen convention.
    pub amplitude_ratio: f64,
    /// Relative residual of −(ħ²/2m)Δδρ = 4λ̃ δρ over the window.
    pub laplace_eigen_residual: f64,
    /// Classical radial period used in the amplitude.
    pub t_radial: f64,
    pub convention: BesselAmplitude,
}

/// Classical radial period T_r1 = 2∫₀^{r_λ} dr/v(r) by turning-point-regular
/// quadrature (substitution r = r_λ(1 − s²)).
pub fn radial_period(spec: &PotentialSpec, lambda: f64) -> Result<f64> {
    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    // bracket the turning radius
    while spec.v_radial(hi).map(|v| v < lambda).unwrap_or(false) {
        hi *= 2.0;
        if hi > 1e9 {
            return Err(Error::Domain("no turning point: potential not confining".into()));
        }
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if spec.v_radial(mid).map(|v| v < lambda).unwrap_or(false) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r_lambda = 0.5 * (lo + hi);
    let m = spec.units.mass;
    // T = 2∫ dr/v = 4 r_λ ∫₀¹ s ds / v(r_λ(1−s²)); integrand regular at s=0
    let f = |s: f64| {
        let r = r_lambda * (1.0 - s * s);
        let v = spec.v_radial(r).unwrap_or(lambda);
        let vsq = (2.0 * (lambda - v).max(0.0) / m).sqrt();
        if vsq > 0.0 {
            4.0 * r_lambda * s / vsq
        } else {
            0.0
        }
    };
    crate::quad::adaptive_simpson(&f, 0.0, 1.0, 1e-10)
}

/// Compare δρ(r) near r = 0 with the universal Bessel solution
/// (−1)^M · amp(r) · J_ν(2rp_λ/ħ), over the first three Bessel lobes.
pub fn check_center_bessel(
    osc: &OscillatingSet,
    field: &DensityField,
    spec: &PotentialSpec,
    lambda: f64,
    m_parity: Option<i32>,
    convention: BesselAmplitude,
) -> Result<BesselReport> {
    let dim = field.grid.dim();
    let nu = dim as f64 / 2.0 - 1.0;
    let units = &field.units;
    let p_lambda = (2.0 * units.mass * lambda).sqrt();
    let t_r1 = radial_period(spec, lambda)?;
    // window: z = 2rp/ħ up to the third positive zero of J_ν
    let z3 = match dim {
        2 => 8.6537279129110122,              // j_{0,3}
        3 => 3.0 * PI,                        // zeros of sin z / z
        _ => return Err(Error::Config("center Bessel law needs D = 2 or 3".into())),
    };
    let h = field.grid.h;
    let window: Vec<usize> = field
        .grid
        .points
        .iter()
        .enumerate()
        .filter(|(_, &r)| {
            let z = 2.0 * r * p_lambda / units.hbar;
            z <= z3 && r > 6.0 * h
        })
        .map(|(i, _)| i)
        .collect();
    if window.len() < 16 {
        return Err(Error::GridMismatch("Bessel window too small; refine the grid".into()));
    }
    let shape: Vec<f64> = window
        .iter()
        .map(|&i| {
            let r = field.grid.points[i];
            let z = 2.0 * r * p_lambda / units.hbar;
            Ok(bessel_j(nu, z)? * (p_lambda / (4.0 * PI * units.hbar * r)).powf(nu))
        })
        .collect::<Result<_>>()?;
    let data: Vec<f64> = window.iter().map(|&i| osc.delta_rho[i]).collect();
    let correlation = pearson(&data, &shape);
    // least-squares amplitude and the predicted value
    let fitted = dot(&shape, &data) / dot(&shape, &shape);
    let base = units.mass / (units.hbar * t_r1);
    let predicted_mag = match convention {
        BesselAmplitude::HalfPeriod => 0.5 * base,
        BesselAmplitude::FullPeriod => base,
    };
    let sign = match m_parity {
        Some(m) => if m % 2 == 0 { 1.0 } else { -1.0 },
        None => fitted.signum(), // phase fitted, flagged by the caller
    };
    let amplitude_ratio = fitted / (sign * predicted_mag);

    // eigen-relation −(ħ²/2m)Δδρ = 4λδρ by stencils over the same window
    let lap = crate::qdens::laplacian(&osc.delta_rho, &field.grid)?;
    let mut max_res = 0.0_f64;
    let mut max_ref = 0.0_f64;
    for &i in &window {
        let res = -units.h2_2m() * lap[i] - 4.0 * lambda * osc.delta_rho[i];
        max_res = max_res.max(res.abs());
        max_ref = max_ref.max((4.0 * lambda * osc.delta_rho[i]).abs());
    }
    Ok(BesselReport {
        correlation,
        amplitude_ratio,
        laplace_eigen_residual: max_res / max_ref,
        t_radial: t_r1,
        convention,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Least-squares linear-fit slope over a ±`half`-node window, mirror-extended
/// across the origin for radial grids (fields even about r = 0).
fn least_squares_derivative(field: &[f64], grid: &crate::grid::Grid, half: usize) -> Vec<f64> {
    let n = field.len();
    let h = grid.h;
    let radial = matches!(grid.kind, crate::grid::GridKind::Radial { .. });
    let f0 = if radial && n >= 3 {
        1.5 * field[0] - 0.6 * field[1] + 0.1 * field[2]
    } else {
        0.0
    };
    let at = |k: isize| -> f64 {
        if radial {
            if k == 0 {
                f0
            } else {
                field[((k.abs() - 1) as usize).min(n - 1)]
            }
        } else {
            field[(k.clamp(0, n as isize - 1)) as usize]
        }
    };
    let hw = half as isize;
    let denom: f64 = (1..=hw).map(|k| 2.0 * (k * k) as f64).sum::<f64>() * h;
    (0..n)
        .map(|i| {
            let c = if radial { i as isize + 1 } else { i as isize };
            let mut num = 0.0;
            for k in 1..=hw {
                num += k as f64 * (at(c + k) - at(c - k));
            }
            num / denom
        })
        .collect()
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (x, y) in a.iter().zip(b) {
        num += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    num / (va * vb).sqrt()
}

/// Differential LVT along a ray of a 2D solution; smooth parts by TF or by
/// bias-corrected local averaging along the ray (mirror-extended through
/// the center).
#[allow(clippy::too_many_arguments)]
pub fn check_differential_lvt_ray(
    d: &PlaneDensities,
    spec: &PotentialSpec,
    lambda: f64,
    ray: (f64, f64),
    t_max: f64,
    samples: usize,
    xi_mode: XiMode,
    surface_correction: bool,
) -> Result<(VirialReport, Vec<bool>)> {
    let norm = (ray.0 * ray.0 + ray.1 * ray.1).sqrt();
    let (ex, ey) = (ray.0 / norm, ray.1 / norm);
    let ts: Vec<f64> = (0..samples)
        .map(|i| -t_max + 2.0 * t_max * i as f64 / (samples as f64 - 1.0))
        .collect();
    let h_ray = ts[1] - ts[0];
    let sample = |f: &[f64]| -> Vec<f64> {
        ts.iter().map(|&t| d.grid.interpolate(f, t * ex, t * ey)).collect()
    };
    let rho = sample(&d.rho);
    let tau = sample(&d.tau);
    let xi = sample(&d.xi);
    let mut v_line = Vec::with_capacity(ts.len());
    let mut grad_line = Vec::with_capacity(ts.len());
    for &t in &ts {
        match spec.evaluate(&[t * ex, t * ey])? {
            PotentialValue::Inside { v, grad } => {
                v_line.push(v);
                let g = match grad {
                    crate::model::Vec2OrScalar::Two(gx, gy) => (gx * gx + gy * gy).sqrt(),
                    crate::model::Vec2OrScalar::Scalar(g) => g.abs(),
                };
                grad_line.push(g);
            }
            PotentialValue::Wall => {
                v_line.push(f64::INFINITY);
                grad_line.push(f64::INFINITY);
            }
        }
    }

    let (rho_s, tau_s, xi_s): (Vec<f64>, Vec<f64>, Vec<f64>) = match xi_mode {
        XiMode::Tf => {
            let r: Vec<f64> = v_line.iter().map(|&v| rho_tf_of(lambda - v, 2, &spec.units)).collect();
            let t: Vec<f64> = v_line.iter().map(|&v| tau_tf_of(lambda - v, 2, &spec.units)).collect();
            (r, t.clone(), t)
        }
        XiMode::LocalAverage => {
            let width: Vec<f64> = v_line
                .iter()
                .map(|&v| {
                    let p = (2.0 * spec.units.mass * (lambda - v).max(1e-9)).sqrt();
                    (PI * spec.units.hbar / p).min(0.3 * t_max)
                })
                .collect();
            (
                gaussian_smooth(&rho, h_ray, &width),
                gaussian_smooth(&tau, h_ray, &width),
                gaussian_smooth(&xi, h_ray, &width),
            )
        }
    };

    // interior mask along the ray: distance to the turning surface estimated
    // by (λ−V)/|∇V|, compared with c·ħ/2p
    let mut mask = Vec::with_capacity(ts.len());
    for i in 0..ts.len() {
        let u = lambda - v_line[i];
        if u <= MASK_FRACTION_DEFAULT * lambda {
            mask.push(false);
            continue;
        }
        let p = (2.0 * spec.units.mass * u).sqrt();
        let dist = u / grad_line[i].max(1e-12);
        mask.push(dist > MASK_C_DEFAULT * spec.units.hbar / (2.0 * p));
    }

    let lhs: Vec<f64> = tau.iter().zip(&tau_s).map(|(a, b)| a - b).collect();
    let d2 = 2.0;
    let rhs: Vec<f64> = (0..ts.len())
        .map(|i| {
            let base = (lambda - v_line[i]) * (rho[i] - rho_s[i]);
            if surface_correction {
                base - 2.0 / d2 * (xi[i] - xi_s[i])
            } else {
                base
            }
        })
        .collect();

    let rep = VirialReport::build(
        "differential_lvt_ray",
        ts,
        lhs,
        rhs,
        mask.clone(),
        ReportOptions {
            lambda,
            lambda_choice: "smooth-tf".into(),
            xi_mode: Some(xi_mode),
            surface_correction: Some(surface_correction),
        },
    );
    // surface region: classically forbidden fringe with appreciable density
    let rho_max = rho.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let surface: Vec<bool> = (0..rep.coords.len())
        .map(|i| !mask[i] && rho[i] > 1e-3 * rho_max)
        .collect();
    Ok((rep, surface))
}

/// Convenience: interior + surface norms for the correction trade-off check.
pub fn surface_mask(field: &DensityField, smooth: &SmoothSet) -> Vec<bool> {
    let rho_max = field.rho.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    (0..field.grid.len())
        .map(|i| !smooth.interior_mask[i] && field.rho[i] > 1e-6 * rho_max)
        .collect()
}

/// Re-export of the mask builder for scenario code.
pub fn interior_mask_for(
    spec: &PotentialSpec,
    lambda: f64,
    grid: &crate::grid::Grid,
) -> Result<Vec<bool>> {
    interior_mask(spec, lambda, grid, MASK_C_DEFAULT, MASK_FRACTION_DEFAULT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::iho_densities;
    use crate::grid::Grid;
    use crate::model::{PotentialKind, PotentialSpec, Units};
    use crate::smooth::tf_densities;

    fn iho3(m: u32) -> (DensityField, PotentialSpec) {
        let grid = Grid::radial(3, 6.0 + 2.0 * m as f64, 1800).unwrap();
        let f = iho_densities(m, 3, 1.0, Units::natural(), &grid).unwrap();
        let spec =
            PotentialSpec::new(PotentialKind::Iho { omega: 1.0, dim: 3 }, Units::natural()).unwrap();
        (f, spec)
    }

    #[test]
    fn lvt1_exact_for_oscillator_shells() {
        let (f, _) = iho3(4);
        let rep = check_lvt1(&f, f.lambda_used, "lambda_m");
        assert!(rep.interior.linf_rel < 1e-8, "LVT1 residual {}", rep.interior.linf_rel);
    }

    #[test]
    fn basic_lvt_exact_for_oscillator_shells() {
        let (f, _) = iho3(4);
        let rep = check_lvt_basic(&f, f.lambda_used, "lambda_m");
        assert!(rep.interior.linf_rel < 1e-8, "LVT residual {}", rep.interior.linf_rel);
    }

    #[test]
    fn slvt_exact_with_full_xi() {
        let (f, spec) = iho3(4);
        let rep = check_slvt(&f, &spec, None, true).unwrap();
        assert!(rep.interior.linf_rel < 1e-6, "SLVT residual {}", rep.interior.linf_rel);
    }

    #[test]
    fn ide_and_3ode_exact_for_oscillator_shells() {
        let (f, spec) = iho3(4);
        let ide = check_ide_3ode(&f, &spec, f.lambda_used, IdeKind::Ide).unwrap();
        assert!(ide.interior.linf_rel < 1e-6, "IDE {}", ide.interior.linf_rel);
        let ode = check_ide_3ode(&f, &spec, f.lambda_used, IdeKind::ThreeOde).unwrap();
        assert!(ode.interior.linf_rel < 1e-6, "3ODE {}", ode.interior.linf_rel);
    }

    #[test]
    fn lvt1_not_asserted_for_box_but_reported() {
        let p = crate::closedform::BoxParams::new(1.0, 10, Units::natural()).unwrap();
        let g = Grid::line(0.0, 1.0, 1001).unwrap();
        let b = crate::closedform::box_densities(&p, &g).unwrap();
        let rep = check_lvt1(&b.field, p.lambda_tf(), "lambda_tf");
        // the relation is not exact for the box: the report exists with a
        // visible residual
        assert!(rep.interior.linf_rel > 1e-3);
    }

    #[test]
    fn global_virial_for_oscillator() {
        let (f, spec) = iho3(2);
        let rep = xi2_and_global_virial(&f, &spec).unwrap();
        assert!((rep.integral_xi2 - rep.e_kin).abs() <= 1e-6 * rep.e_kin);
        assert!(rep.integral_r2.abs() <= 1e-6 * rep.e_kin);
        // R₂ ≡ 0 for oscillator shells
        let max_r2 = rep.r2.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        let max_xi = f.xi.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        assert!(max_r2 / max_xi < 1e-8, "R₂ not zero: {}", max_r2 / max_xi);
    }

    #[test]
    fn radial_period_of_iho_is_pi_over_omega() {
        let spec =
            PotentialSpec::new(PotentialKind::Iho { omega: 1.0, dim: 3 }, Units::natural()).unwrap();
        let t = radial_period(&spec, 12.0).unwrap();
        approx::assert_relative_eq!(t, PI, max_relative = 1e-8);
    }

    #[test]
    fn tau_opposition_for_oscillator() {
        let (f, spec) = iho3(10);
        let smooth = tf_densities(&spec, f.lambda_used, &f.grid).unwrap();
        let osc = crate::smooth::oscillating_parts(&f, &smooth).unwrap();
        let rep = check_tau_opposition(&osc, &smooth.interior_mask);
        assert!(rep.xi_to_regular_ratio <= 0.1, "ratio {}", rep.xi_to_regular_ratio);
        assert!(rep.identity_residual < 1e-9);
    }
}
