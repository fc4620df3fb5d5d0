//! Airy function of the first kind and its derivative on the real line.
//!
//! Three regimes, cross-validated in the tests:
//! * |z| ≤ 5.25 — Maclaurin series (no cancellation growth yet),
//! * 5.25 < |z| < 14 — Taylor stepping of the ODE y″ = z·y, seeded from the
//!   Maclaurin constants at 0 (negative side) or from the asymptotic form at
//!   z = 14 (positive side, stepping against the decaying solution),
//! * |z| ≥ 14 — Poincaré asymptotic expansions truncated near the smallest
//!   term.

use crate::error::{Error, Result};

/// Ai(0) = 3^(−2/3)/Γ(2/3)
const AI0: f64 = 0.355_028_053_887_817_24;
/// Ai′(0) = −3^(−1/3)/Γ(1/3)
const AIP0: f64 = -0.258_819_403_792_806_8;

const SERIES_EDGE: f64 = 5.25;
const ASYMPTOTIC_EDGE: f64 = 14.0;
const MAX_ARG: f64 = 1.0e4;

/// Ai(z). Absolute error ≤ 1e−12 for |z| ≤ 10; |z| ≤ 1e4 accepted.
pub fn airy_ai(z: f64) -> Result<f64> {
    Ok(airy_both(z)?.0)
}

/// Ai′(z), consistent with [`airy_ai`].
pub fn airy_ai_prime(z: f64) -> Result<f64> {
    Ok(airy_both(z)?.1)
}

/// (Ai, Ai′) evaluated together; the natural unit of work for every regime.
pub fn airy_both(z: f64) -> Result<(f64, f64)> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("airy argument not finite: {z}")));
    }
    if z.abs() > MAX_ARG {
        return Err(Error::Domain(format!("airy argument out of range: |{z}| > {MAX_ARG}")));
    }
    if z.abs() <= SERIES_EDGE {
        return Ok(maclaurin(z));
    }
    if z >= ASYMPTOTIC_EDGE {
        return Ok(asymptotic_positive(z));
    }
    if z <= -ASYMPTOTIC_EDGE {
        return Ok(asymptotic_negative(-z));
    }
    if z > 0.0 {
        // walk downward from the asymptotic seed; Ai grows in this direction
        let (y, yp) = asymptotic_positive(ASYMPTOTIC_EDGE);
        Ok(taylor_walk(ASYMPTOTIC_EDGE, y, yp, z))
    } else {
        // oscillatory side: both solutions are bounded, walking from 0 is stable
        Ok(taylor_walk(0.0, AI0, AIP0, z))
    }
}

/// Maclaurin series: Ai = c₁ f(z) − c₂ g(z) with the standard f, g pair.
fn maclaurin(z: f64) -> (f64, f64) {
    let z3 = z * z * z;
    let mut f = 1.0;
    let mut fp = 0.0; // d f / dz
    let mut g = z;
    let mut gp = 1.0;
    let mut a = 1.0; // current f term, z^{3k} scale
    let mut b = z; // current g term
    for k in 0..40 {
        let kf = k as f64;
        a *= z3 / ((3.0 * kf + 2.0) * (3.0 * kf + 3.0));
        b *= z3 / ((3.0 * kf + 3.0) * (3.0 * kf + 4.0));
        f += a;
        g += b;
        // term derivatives: d/dz z^{3k} = 3k z^{3k-1}
        if z != 0.0 {
            fp += a * (3.0 * (kf + 1.0)) / z;
            gp += b * (3.0 * (kf + 1.0) + 1.0) / z;
        }
        if a.abs() < 1e-18 * f.abs() && b.abs() < 1e-18 * g.abs().max(1e-300) {
            break;
        }
    }
    let c1 = AI0;
    let c2 = -AIP0;
    (c1 * f - c2 * g, c1 * fp - c2 * gp)
}

/// u_k, v_k coefficient pair of the Airy asymptotic series.
fn uv_next(k: usize, u: f64) -> (f64, f64) {
    let kf = k as f64;
    let u_next = u * (6.0 * kf + 5.0) * (6.0 * kf + 1.0) / (72.0 * (kf + 1.0));
    let v_next = u_next * (6.0 * (kf + 1.0) + 1.0) / (1.0 - 6.0 * (kf + 1.0));
    (u_next, v_next)
}

fn asymptotic_positive(z: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    let mut su = 1.0;
    let mut sv = 1.0;
    let mut u = 1.0;
    let mut term_prev = 1.0_f64;
    let mut sign = -1.0;
    for k in 0..40 {
        let (un, vn) = uv_next(k, u);
        u = un;
        let tu = u / zeta.powi(k as i32 + 1);
        if tu.abs() > term_prev {
            break; // past the smallest term
        }
        su += sign * tu;
        sv += sign * vn / zeta.powi(k as i32 + 1);
        term_prev = tu.abs();
        sign = -sign;
    }
    let pre = (-zeta).exp() / (2.0 * std::f64::consts::PI.sqrt());
    let ai = pre * su / z.powf(0.25);
    let aip = -pre * z.powf(0.25) * sv;
    (ai, aip)
}

fn asymptotic_negative(w: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * w.powf(1.5);
    let (s, c) = (zeta - std::f64::consts::FRAC_PI_4).sin_cos();
    // even/odd splits of the u and v series
    let mut u = 1.0;
    let mut us = [1.0, 0.0]; // Σ (−1)^k u_{2k} ζ^{−2k}, Σ (−1)^k u_{2k+1} ζ^{−2k−1}
    let mut vs = [1.0, 0.0];
    let mut term_prev = 1.0_f64;
    for k in 0..40 {
        let (un, vn) = uv_next(k, u);
        u = un;
        let t = u / zeta.powi(k as i32 + 1);
        if t.abs() > term_prev {
            break;
        }
        let j = k + 1; // index of u_j in the flat series
        let sgn = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
        us[j % 2] += sgn * t;
        vs[j % 2] += sgn * vn / zeta.powi(k as i32 + 1);
        term_prev = t.abs();
    }
    let sq = std::f64::consts::PI.sqrt();
    let ai = (c * us[0] + s * us[1]) / (sq * w.powf(0.25));
    let aip = (s * vs[0] - c * vs[1]) * w.powf(0.25) / sq;
    (ai, aip)
}

/// Propagate (y, y′) of y″ = z·y from z0 to target with high-order Taylor steps.
fn taylor_walk(z0: f64, y0: f64, yp0: f64, target: f64) -> (f64, f64) {
    const ORDER: usize = 28;
    const STEP: f64 = 0.7;
    let mut z = z0;
    let mut y = y0;
    let mut yp = yp0;
    let total = target - z0;
    let nsteps = (total.abs() / STEP).ceil().max(1.0) as usize;
    let h = total / nsteps as f64;
    let mut t = [0.0_f64; ORDER + 1];
    for _ in 0..nsteps {
        t[0] = y;
        t[1] = yp;
        for k in 0..=ORDER - 2 {
            let prev = if k == 0 { 0.0 } else { t[k - 1] };
            t[k + 2] = (z * t[k] + prev) / ((k as f64 + 1.0) * (k as f64 + 2.0));
        }
        let mut yn = 0.0;
        for k in (0..=ORDER).rev() {
            yn = yn * h + t[k];
        }
        let mut d = 0.0;
        for k in (1..=ORDER).rev() {
            d = d * h + k as f64 * t[k];
        }
        y = yn;
        yp = d;
        z += h;
    }
    (y, yp)
}
