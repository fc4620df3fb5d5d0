//! Quadrature helpers: composite rules on uniform grids, an O(h⁴) cumulative
//! integral, and adaptive Simpson for semi-infinite kernel integrals.

use crate::error::{Error, Result};

/// Composite trapezoid on a uniform grid.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let inner: f64 = values[1..values.len() - 1].iter().sum();
    h * (0.5 * (values[0] + values[values.len() - 1]) + inner)
}

/// Composite Simpson on a uniform grid; falls back to a trapezoid panel when
/// the interval count is odd.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    if n < 3 {
        return trapezoid(values, h);
    }
    let mut total = 0.0;
    let mut i = 0;
    while i + 2 < n {
        total += h / 3.0 * (values[i] + 4.0 * values[i + 1] + values[i + 2]);
        i += 2;
    }
    if i + 1 < n {
        total += 0.5 * h * (values[i] + values[i + 1]);
    }
    total
}

/// Cumulative integral I(x_i) = ∫_{x_i}^{x_end} f dx on a uniform grid,
/// fourth-order accurate.
///
/// Steps backward two points at a time with Simpson panels; the in-between
/// point uses the quadratic through its three neighbours, so every entry is
/// O(h⁴).
pub fn cumulative_from_right(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[0] = 0.5 * h * (values[0] + values[1]);
        return out;
    }
    let mut i = n - 1;
    while i >= 2 {
        // panel [i-2, i] by Simpson, and [i-1, i] by the quadratic through
        // (i-2, i-1, i): ∫_{x1}^{x2} p2 = h(-f0 + 8 f1 + 5 f2)/12
        out[i - 1] = out[i] + h / 12.0 * (-values[i - 2] + 8.0 * values[i - 1] + 5.0 * values[i]);
        out[i - 2] = out[i] + h / 3.0 * (values[i - 2] + 4.0 * values[i - 1] + values[i]);
        i -= 2;
    }
    if i == 1 {
        // leftover first interval: quadratic through (0, 1, 2)
        out[0] = out[1] + h / 12.0 * (5.0 * values[0] + 8.0 * values[1] - values[2]);
    }
    out
}

/// Adaptive Simpson of `f` over [a, b] to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::Domain(format!("bad integration interval [{a}, {b}]")));
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    Ok(adaptive_step(f, a, b, fa, fm, fb, whole, tol, 60))
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn cumulative_matches_analytic_quartic() {
        let n = 801;
        let h = 4.0 / (n as f64 - 1.0);
        let xs: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        let f: Vec<f64> = xs.iter().map(|x| x * x * x).collect();
        let cum = cumulative_from_right(&f, h);
        for (i, &x) in xs.iter().enumerate().step_by(37) {
            let exact = (4.0_f64.powi(4) - x.powi(4)) / 4.0;
            assert_abs_diff_eq!(cum[i], exact, epsilon = 1e-9);
        }
    }

    #[test]
    fn cumulative_is_fourth_order_on_oscillatory_integrand() {
        let run = |n: usize| {
            let h = 10.0 / (n as f64 - 1.0);
            let f: Vec<f64> = (0..n).map(|i| (3.0 * i as f64 * h).sin()).collect();
            let cum = cumulative_from_right(&f, h);
            // exact: ∫_0^10 sin(3x) dx = (1 - cos 30)/3
            (cum[0] - (1.0 - (30.0_f64).cos()) / 3.0).abs()
        };
        let e1 = run(501);
        let e2 = run(1001);
        assert!(e1 / e2 > 10.0, "expected ~16x error drop, got {}", e1 / e2);
    }

    #[test]
    fn adaptive_simpson_gaussian() {
        let v = adaptive_simpson(&|x: f64| (-x * x).exp(), -8.0, 8.0, 1e-12).unwrap();
        assert_abs_diff_eq!(v, std::f64::consts::PI.sqrt(), epsilon = 1e-10);
    }
}
