//! Lanczos iteration with full reorthogonalization and explicit deflation,
//! for the lowest eigenpairs of large sparse symmetric operators.
//!
//! A single Krylov sequence cannot carry two copies of a degenerate
//! eigenvalue, so the driver restarts against the converged set until a
//! confirmation pass shows the deflated complement holds nothing at or
//! below the accepted spectrum.

use super::tridiag::{splitmix64, SymTridiag};
use crate::error::{Error, Result};

fn dot(a: &[f64], b: &[f64]) -> f64 {
    // four accumulators: deterministic, and wide enough to vectorize
    let mut acc = [0.0f64; 4];
    let chunks = a.len() / 4;
    for i in 0..chunks {
        let j = 4 * i;
        acc[0] += a[j] * b[j];
        acc[1] += a[j + 1] * b[j + 1];
        acc[2] += a[j + 2] * b[j + 2];
        acc[3] += a[j + 3] * b[j + 3];
    }
    let mut s = acc[0] + acc[1] + acc[2] + acc[3];
    for j in 4 * chunks..a.len() {
        s += a[j] * b[j];
    }
    s
}

fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

fn random_unit(dim: usize, seed: u64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..dim)
        .map(|i| {
            let r = splitmix64(seed ^ (i as u64).wrapping_mul(0x2545_f491_4f6c_dd1d));
            (r as f64 / u64::MAX as f64) - 0.5
        })
        .collect();
    let n = norm(&v);
    for x in v.iter_mut() {
        *x /= n;
    }
    v
}

fn orthogonalize(v: &mut [f64], against: &[(f64, Vec<f64>)]) {
    for _ in 0..2 {
        for (_, q) in against {
            let c = dot(v, q);
            axpy(v, -c, q);
        }
    }
}

/// Lowest `want` eigenpairs of the symmetric operator `matvec` to residual
/// ‖Ax − λx‖ ≤ `tol` (times a small safety factor). Deterministic.
pub fn lanczos_lowest<F: Fn(&[f64], &mut [f64])>(
    matvec: F,
    dim: usize,
    want: usize,
    tol: f64,
) -> Result<Vec<(f64, Vec<f64>)>> {
    let want = want.min(dim);
    let mut converged: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut scratch = vec![0.0; dim];
    let mut strikes = 0u32;

    for pass in 0..64u64 {
        let remaining = want.saturating_sub(converged.len());
        let confirming = remaining == 0;
        // confirmation passes only need the complement's lowest value
        let target = if confirming { 2 } else { remaining };
        let free_dim = dim - converged.len();
        if free_dim == 0 {
            break;
        }
        let pairs = single_pass(
            &matvec,
            dim,
            target,
            tol,
            &converged,
            0x11d8 + pass * 0x9e37,
            free_dim,
            &mut scratch,
        );

        // verify against the true operator and absorb
        let mut absorbed = 0;
        let cutoff = if confirming {
            converged[want - 1].0
        } else {
            f64::INFINITY
        };
        for (lambda, mut x) in pairs {
            if confirming && lambda > cutoff + 1e-9 + 1e-9 * cutoff.abs() {
                continue;
            }
            orthogonalize(&mut x, &converged);
            let nx = norm(&x);
            if nx < 0.5 {
                continue; // duplicate of an already converged vector
            }
            for xi in x.iter_mut() {
                *xi /= nx;
            }
            matvec(&x, &mut scratch);
            axpy(&mut scratch, -lambda, &x);
            if norm(&scratch) <= 10.0 * tol {
                converged.push((lambda, x));
                absorbed += 1;
            }
        }
        converged.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

        if confirming && absorbed == 0 {
            break; // complement holds nothing at or below the accepted set
        }
        if absorbed == 0 {
            strikes += 1;
            if strikes >= 2 {
                break;
            }
        } else {
            strikes = 0;
        }
    }

    if converged.len() < want {
        return Err(Error::Convergence(format!(
            "lanczos found {} of {} eigenpairs",
            converged.len(),
            want
        )));
    }
    converged.truncate(want);
    // final residual audit with the true operator
    for (lambda, x) in &converged {
        matvec(x, &mut scratch);
        axpy(&mut scratch, -*lambda, x);
        let r = norm(&scratch);
        if r > 10.0 * tol {
            return Err(Error::Convergence(format!(
                "eigenpair at λ={lambda} has residual {r} > {tol}"
            )));
        }
    }
    Ok(converged)
}

/// One deflated Krylov pass; returns Ritz pairs whose residual estimate
/// cleared `tol`. The iteration budget grows adaptively while the estimates
/// keep improving.
#[allow(clippy::too_many_arguments)]
fn single_pass<F: Fn(&[f64], &mut [f64])>(
    matvec: &F,
    dim: usize,
    target: usize,
    tol: f64,
    converged: &[(f64, Vec<f64>)],
    seed: u64,
    free_dim: usize,
    scratch: &mut [f64],
) -> Vec<(f64, Vec<f64>)> {
    let m_hard = free_dim.min(3 * target + 900);
    let mut m_budget = free_dim.min(3 * target + 300);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();

    let mut v = random_unit(dim, seed);
    orthogonalize(&mut v, converged);
    let n0 = norm(&v);
    if n0 < 1e-10 {
        return Vec::new();
    }
    for x in v.iter_mut() {
        *x /= n0;
    }

    let mut best_est = f64::INFINITY;
    loop {
        basis.push(v.clone());
        let j = basis.len() - 1;
        matvec(&basis[j], scratch);
        let alpha = dot(scratch, &basis[j]);
        alphas.push(alpha);
        axpy(scratch, -alpha, &basis[j]);
        if j > 0 {
            let b = betas[j - 1];
            axpy(scratch, -b, &basis[j - 1]);
        }
        for _ in 0..2 {
            for q in &basis {
                let c = dot(scratch, q);
                axpy(scratch, -c, q);
            }
            for (_, q) in converged {
                let c = dot(scratch, q);
                axpy(scratch, -c, q);
            }
        }
        let beta = norm(scratch);
        let m = basis.len();

        let exhausted = beta < 1e-13;
        if m % 40 == 0 || exhausted || m >= m_budget {
            let (count, min_est) = ritz_status(&alphas, &betas, beta, target, tol);
            if count >= target || exhausted || m >= m_hard {
                return ritz_pairs(&alphas, &betas, beta, &basis, target, tol);
            }
            if m >= m_budget {
                if count > 0 {
                    // take the converged batch and let the driver restart
                    return ritz_pairs(&alphas, &betas, beta, &basis, target, tol);
                }
                if min_est < best_est {
                    best_est = min_est;
                    m_budget = (m_budget + 300).min(m_hard);
                } else {
                    // no longer improving: give up this pass
                    return Vec::new();
                }
            }
        }
        betas.push(beta);
        v = scratch.iter().map(|x| x / beta).collect();
    }
}

fn tri_pairs(alphas: &[f64], betas: &[f64], want: usize) -> Vec<(f64, Vec<f64>)> {
    let m = alphas.len();
    let tri = SymTridiag { diag: alphas.to_vec(), off: betas[..m - 1].to_vec() };
    let k = (want + 4).min(m);
    tri.lowest_eigenpairs(k).unwrap_or_default()
}

/// (number of Ritz values with residual estimate ≤ tol, smallest estimate).
fn ritz_status(
    alphas: &[f64],
    betas: &[f64],
    beta_last: f64,
    want: usize,
    tol: f64,
) -> (usize, f64) {
    let m = alphas.len();
    let mut count = 0;
    let mut min_est = f64::INFINITY;
    for (_, s) in tri_pairs(alphas, betas, want) {
        let est = beta_last * s[m - 1].abs();
        min_est = min_est.min(est);
        if est <= tol {
            count += 1;
        }
    }
    (count, min_est)
}

/// Ritz pairs of the current tridiagonal with estimated residual ≤ tol.
fn ritz_pairs(
    alphas: &[f64],
    betas: &[f64],
    beta_last: f64,
    basis: &[Vec<f64>],
    want: usize,
    tol: f64,
) -> Vec<(f64, Vec<f64>)> {
    let m = alphas.len();
    let dim = basis[0].len();
    let mut out = Vec::new();
    for (theta, s) in tri_pairs(alphas, betas, want) {
        let est = beta_last * s[m - 1].abs();
        if est > tol {
            continue;
        }
        let mut x = vec![0.0; dim];
        for (coef, q) in s.iter().zip(basis) {
            axpy(&mut x, *coef, q);
        }
        out.push((theta, x));
    }
    out
}
