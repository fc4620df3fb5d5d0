//! Bessel functions J_ν for real order ν ≥ −1/2 and non-negative argument,
//! plus zeros of integer-order J_m.
//!
//! Regime selection follows the usual practice: ascending series while the
//! alternating sum stays well conditioned (z ≤ 12 or z ≤ 0.8ν), Hankel
//! asymptotics at a low fractional base order plus upward recurrence when
//! z dominates, and Miller downward recurrence normalized against the
//! Hankel value when the order dominates. Half-integer orders short-circuit
//! to their trigonometric closed forms.

use super::gamma::ln_gamma;
use crate::error::{Error, Result};

/// J_ν(z) for ν ≥ −1/2, z ≥ 0. Absolute accuracy ~1e−12 for z ≤ 100.
pub fn bessel_j(nu: f64, z: f64) -> Result<f64> {
    if !(nu.is_finite() && z.is_finite()) {
        return Err(Error::Domain("bessel argument not finite".into()));
    }
    if nu < -0.5 {
        return Err(Error::Domain(format!("bessel order {nu} < -1/2 unsupported")));
    }
    if z < 0.0 {
        return Err(Error::Domain(format!("bessel argument {z} < 0")));
    }
    if z == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::Domain("J_nu(0) diverges for nu < 0".into()))
        };
    }
    if (2.0 * nu).fract() == 0.0 && nu.fract() != 0.0 && nu <= 1.5 {
        // ν = ±1/2 (and 3/2) closed forms used by the radial assemblies
        let pre = (2.0 / (std::f64::consts::PI * z)).sqrt();
        if nu == -0.5 {
            return Ok(pre * z.cos());
        }
        if nu == 0.5 {
            return Ok(pre * z.sin());
        }
        if nu == 1.5 {
            return Ok(pre * (z.sin() / z - z.cos()));
        }
    }
    if z <= 12.0 || z <= 0.8 * nu {
        return Ok(ascending_series(nu, z));
    }
    if nu <= 0.8 * z {
        return Ok(forward_from_hankel(nu, z));
    }
    Ok(miller_downward(nu, z))
}

/// dJ_ν/dz via J′_ν = J_{ν−1} − (ν/z)J_ν (ν ≥ 1/2), or −J₁ for ν = 0.
pub fn bessel_j_prime(nu: f64, z: f64) -> Result<f64> {
    if nu == 0.0 {
        return Ok(-bessel_j(1.0, z)?);
    }
    if z == 0.0 {
        return Ok(if nu == 1.0 { 0.5 } else { 0.0 });
    }
    Ok(bessel_j(nu - 1.0, z)? - nu / z * bessel_j(nu, z)?)
}

fn ascending_series(nu: f64, z: f64) -> f64 {
    // J_ν = (z/2)^ν / Γ(ν+1) Σ_k (−z²/4)^k / (k! (ν+1)_k), prefactor in logs
    let ln_pre = nu * (0.5 * z).ln() - ln_gamma(nu + 1.0);
    let q = 0.25 * z * z;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 0..200 {
        let kf = k as f64;
        term *= -q / ((kf + 1.0) * (nu + kf + 1.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-280) && k as f64 > 0.5 * z {
            break;
        }
    }
    sum * ln_pre.exp()
}

/// Hankel asymptotic expansion at order μ, valid for z ≳ 12 and small μ.
fn hankel(mu: f64, z: f64) -> f64 {
    let omega = z - mu * std::f64::consts::FRAC_PI_2 - std::f64::consts::FRAC_PI_4;
    let fm2 = 4.0 * mu * mu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0_f64; // a_k(μ)
    let mut prev = f64::INFINITY;
    for k in 0..30 {
        let kf = k as f64;
        a *= (fm2 - (2.0 * kf + 1.0) * (2.0 * kf + 1.0)) / ((kf + 1.0) * 8.0 * z);
        let contrib = a.abs();
        if contrib > prev {
            break;
        }
        prev = contrib;
        match k % 4 {
            0 => q += a,
            1 => p -= a,
            2 => q -= a,
            _ => p += a,
        }
    }
    (2.0 / (std::f64::consts::PI * z)).sqrt() * (p * omega.cos() - q * omega.sin())
}

fn forward_from_hankel(nu: f64, z: f64) -> f64 {
    let mu = nu.fract(); // base order in [0, 1)
    let steps = (nu - mu).round() as usize;
    let jm = hankel(mu, z);
    if steps == 0 {
        return jm;
    }
    let jm1 = hankel(mu + 1.0, z);
    let mut lo = jm;
    let mut hi = jm1;
    for k in 1..steps {
        let next = 2.0 * (mu + k as f64) / z * hi - lo;
        lo = hi;
        hi = next;
    }
    hi
}

fn miller_downward(nu: f64, z: f64) -> f64 {
    let mu = nu.fract();
    let offset = (nu - mu).round() as usize;
    let start = offset + 15 + (2.0 * (nu + z).sqrt()) as usize;
    let mut jp = 0.0_f64;
    let mut j = 1e-30_f64;
    let mut at_target = 0.0;
    for k in (0..=start).rev() {
        let jm = 2.0 * (mu + k as f64 + 1.0) / z * j - jp;
        jp = j;
        j = jm;
        if k == offset {
            at_target = j;
        }
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp *= 1e-250;
            at_target *= 1e-250;
        }
    }
    // j now holds the unnormalized J_mu; anchor it to the Hankel value,
    // which is accurate because this branch only runs for z > 12
    let anchor = hankel(mu, z);
    at_target * anchor / j
}

/// n-th positive zero of J_m (integer m ≥ 0, n ≥ 1), by scan and bisection.
pub fn bessel_zero(m: u32, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("bessel zero index starts at 1".into()));
    }
    let mf = m as f64;
    // first zero lies above m; scan with a step far below the zero spacing
    let mut lo = if m == 0 { 1e-6 } else { mf + 0.1 };
    let step = 0.25;
    let mut f_lo = bessel_j(mf, lo)?;
    let mut found = 0;
    for _ in 0..40_000 {
        let hi = lo + step;
        let f_hi = bessel_j(mf, hi)?;
        if f_lo == 0.0 {
            found += 1;
            if found == n {
                return Ok(lo);
            }
        } else if f_lo * f_hi < 0.0 {
            found += 1;
            if found == n {
                let (mut a, mut b, mut fa) = (lo, hi, f_lo);
                for _ in 0..80 {
                    let mid = 0.5 * (a + b);
                    let fm = bessel_j(mf, mid)?;
                    if fa * fm <= 0.0 {
                        b = mid;
                    } else {
                        a = mid;
                        fa = fm;
                    }
                }
                return Ok(0.5 * (a + b));
            }
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(Error::Convergence(format!("zero j_{{{m},{n}}} not bracketed")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const TABLE: [(f64, f64, f64); 21] = [
        (0.0, 0.5, 0.9384698072408129),
        (0.0, 1.0, 0.76519768655796655),
        (0.0, 5.0, -0.1775967713143383),
        (0.0, 12.0, 0.047689310796833537),
        (0.0, 30.0, -0.086367983581040211),
        (0.0, 87.5, 0.026780927732998198),
        (1.0, 1.0, 0.44005058574493352),
        (1.0, 20.0, 0.066833124175850046),
        (2.0, 1.0, 0.11490348493190048),
        (5.0, 2.0, 0.0070396297558716855),
        (5.0, 40.0, 0.12257346597711779),
        (10.0, 3.0, 1.2928351645715884e-5),
        (15.0, 14.0, 0.11743681366983445),
        (0.5, 1.0471975511965976, 0.67523723711782954),
        (0.5, 25.0, -0.021120283599650445),
        (-0.5, 1.0, 0.43109886801837608),
        (3.3, 7.7, -0.22756076914971487),
        (12.7, 11.9, 0.13408446555396827),
        (40.0, 35.0, 0.014965632617051044),
        (25.0, 60.0, 0.10752452824703348),
        (7.0, 95.0, -0.018168827746310416),
    ];

    #[test]
    fn reference_values() {
        for (nu, z, want) in TABLE {
            let got = bessel_j(nu, z).unwrap();
            assert_abs_diff_eq!(got, want, epsilon = 2e-11);
        }
    }

    #[test]
    fn half_integer_reduces_to_trig() {
        let z = std::f64::consts::FRAC_PI_2;
        assert_abs_diff_eq!(
            bessel_j(0.5, z).unwrap(),
            2.0 / std::f64::consts::PI,
            epsilon = 1e-14
        );
    }

    #[test]
    fn at_origin() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1.0, 0.0).unwrap(), 0.0);
        assert!(bessel_j(0.0, -1.0).is_err());
    }

    #[test]
    fn three_term_recurrence_holds() {
        for &(nu, z) in &[(1.0, 3.7), (4.5, 9.2), (11.0, 25.0), (2.5, 60.0), (19.0, 17.0)] {
            let a = bessel_j(nu - 1.0, z).unwrap();
            let b = bessel_j(nu, z).unwrap();
            let c = bessel_j(nu + 1.0, z).unwrap();
            assert_abs_diff_eq!(a + c, 2.0 * nu / z * b, epsilon = 1e-9);
        }
    }

    #[test]
    fn zeros_reference() {
        let table = [
            (0, 1, 2.4048255576957728),
            (0, 2, 5.5200781102863106),
            (1, 1, 3.8317059702075123),
            (2, 3, 11.619841172149059),
            (5, 2, 12.338604197466944),
            (10, 1, 14.475500686554541),
            (0, 10, 30.634606468431975),
            (7, 5, 24.934927887673022),
        ];
        for (m, n, want) in table {
            assert_abs_diff_eq!(bessel_zero(m, n).unwrap(), want, epsilon = 1e-10);
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let h = 1e-6;
        for &(nu, z) in &[(0.0, 2.3), (1.0, 7.0), (6.0, 15.0), (0.5, 4.0)] {
            let d = (bessel_j(nu, z + h).unwrap() - bessel_j(nu, z - h).unwrap()) / (2.0 * h);
            assert_abs_diff_eq!(d, bessel_j_prime(nu, z).unwrap(), epsilon = 1e-7);
        }
    }
}
