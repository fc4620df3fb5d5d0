//! Harmonic-oscillator eigenfunctions and associated Laguerre values via
//! scaled three-term recurrences.
//!
//! Both recurrences carry an explicit log-scale so intermediate values can
//! span the full e^{±ξ²/2} dynamic range without overflow; the quoted
//! guarantee is n ≤ 1e4.

use crate::error::{Error, Result};

const MAX_N: u32 = 10_000;
const RESCALE: f64 = 1e250;

/// Normalized 1D oscillator eigenfunction φ_n and dφ_n/dx for ħ = m = 1.
///
/// ∫ φ_n² dx = 1; parity φ_n(−x) = (−1)ⁿ φ_n(x) holds exactly because the
/// recurrence only ever multiplies by ξ.
pub fn ho_eigenfunction(n: u32, x: f64, omega: f64) -> Result<(f64, f64)> {
    if n > MAX_N {
        return Err(Error::Domain(format!("oscillator level n={n} > {MAX_N}")));
    }
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("oscillator frequency must be positive: {omega}")));
    }
    let s = omega.sqrt(); // ξ = √ω x, φ_n(x) = ω^{1/4} h_n(ξ)
    let xi = s * x;
    let (h, dh) = hermite_function(n, xi);
    Ok((omega.powf(0.25) * h, omega.powf(0.25) * s * dh))
}

/// Value-only variant of [`ho_eigenfunction`].
pub fn ho_eigenfunction_value(n: u32, x: f64, omega: f64) -> Result<f64> {
    Ok(ho_eigenfunction(n, x, omega)?.0)
}

/// Unit-frequency Hermite function h_n(ξ) and dh_n/dξ.
fn hermite_function(n: u32, xi: f64) -> (f64, f64) {
    // h_0 = π^{-1/4} e^{-ξ²/2}, carried as (mantissa, log-scale)
    let mut ln_scale = -0.5 * xi * xi;
    let mut prev = 0.0_f64;
    let mut cur = std::f64::consts::PI.powf(-0.25);
    if n == 0 {
        let v = cur * ln_scale.exp();
        return (v, -xi * v);
    }
    for k in 0..n {
        let kf = k as f64;
        // h_{k+1} = ξ √(2/(k+1)) h_k − √(k/(k+1)) h_{k−1}
        let next = xi * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            ln_scale += RESCALE.ln();
        }
    }
    let scale = ln_scale.exp();
    let h = cur * scale;
    // dh_n/dξ = √(2n) h_{n−1} − ξ h_n
    let dh = (2.0 * n as f64).sqrt() * prev * scale - xi * h;
    (h, dh)
}

/// Associated Laguerre value L_k^{(α)}(x) as (mantissa, ln-scale):
/// the true value is `mantissa * exp(ln_scale)`.
pub fn laguerre_scaled(k: u32, alpha: f64, x: f64) -> (f64, f64) {
    let mut ln_scale = 0.0_f64;
    let mut prev = 0.0_f64;
    let mut cur = 1.0_f64;
    for j in 0..k {
        let jf = j as f64;
        // (j+1) L_{j+1} = (2j+1+α−x) L_j − (j+α) L_{j−1}
        let next = ((2.0 * jf + 1.0 + alpha - x) * cur - (jf + alpha) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            ln_scale += RESCALE.ln();
        }
    }
    (cur, ln_scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn reference_values() {
        // (n, ξ, h_n, h_n') with ω = 1
        let table = [
            (0, 0.0, 0.75112554446494248, 0.0),
            (1, 0.7, 0.58200058556771563, 0.42402899805647861),
            (5, 2.0, -0.026246895279310055, 1.2992213163258477),
            (60, 3.5, 0.24459459813607233, -0.36017017496073074),
            (200, 10.0, -0.19128996363059031, -0.17849963838988294),
            (1000, 43.0, 0.13407468805456016, 2.2810540950584928),
        ];
        for (n, xi, h, dh) in table {
            let (v, d) = ho_eigenfunction(n, xi, 1.0).unwrap();
            assert_abs_diff_eq!(v, h, epsilon = 1e-11);
            assert_abs_diff_eq!(d, dh, epsilon = 1e-10);
        }
    }

    #[test]
    fn ground_state_at_origin() {
        let (v, _) = ho_eigenfunction(0, 0.0, 1.0).unwrap();
        assert_abs_diff_eq!(v, std::f64::consts::PI.powf(-0.25), epsilon = 1e-15);
    }

    #[test]
    fn odd_state_vanishes_at_origin() {
        let (v, _) = ho_eigenfunction(1, 0.0, 1.0).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn normalization_and_orthogonality_by_quadrature() {
        let n = 4001;
        let h = 24.0 / (n as f64 - 1.0);
        let mut norm2 = 0.0;
        let mut norm4 = 0.0;
        let mut cross = 0.0;
        for i in 0..n {
            let x = -12.0 + i as f64 * h;
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            let p2 = ho_eigenfunction_value(2, x, 1.0).unwrap();
            let p4 = ho_eigenfunction_value(4, x, 1.0).unwrap();
            norm2 += w * p2 * p2 * h;
            norm4 += w * p4 * p4 * h;
            cross += w * p2 * p4 * h;
        }
        assert_abs_diff_eq!(norm2, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(norm4, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(cross, 0.0, epsilon = 1e-8);
    }

    #[test]
    fn no_overflow_at_large_n() {
        for &x in &[0.0, 5.0, 100.0, 141.0, 160.0] {
            let (v, d) = ho_eigenfunction(10_000, x, 1.0).unwrap();
            assert!(v.is_finite() && d.is_finite());
        }
        assert!(ho_eigenfunction(10_001, 0.0, 1.0).is_err());
    }

    #[test]
    fn laguerre_small_cases() {
        // L_2^{(1)}(x) = (x² − 6x + 6)/2
        let (m, ls) = laguerre_scaled(2, 1.0, 0.7);
        let want = (0.49 - 4.2 + 6.0) / 2.0;
        assert_abs_diff_eq!(m * ls.exp(), want, epsilon = 1e-13);
    }

    proptest! {
        #[test]
        fn parity_is_exact(n in 0u32..80, x in -8.0f64..8.0) {
            let (vp, _) = ho_eigenfunction(n, x, 1.0).unwrap();
            let (vm, _) = ho_eigenfunction(n, -x, 1.0).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert_eq!(vp, sign * vm);
        }

        #[test]
        fn schroedinger_residual_small(n in 0u32..40, x in -5.0f64..5.0) {
            // φ'' = (x² − 2n − 1) φ by the 1D oscillator equation (ħ=m=ω=1)
            let h = 1e-4;
            let f = |x: f64| ho_eigenfunction_value(n, x, 1.0).unwrap();
            let d2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
            let want = (x * x - 2.0 * n as f64 - 1.0) * f(x);
            prop_assert!((d2 - want).abs() < 1e-4 * (1.0 + want.abs()));
        }
    }
}
