//! Symmetric tridiagonal eigensolver: Sturm-sequence bisection for the
//! lowest eigenvalues, inverse iteration for eigenvectors.

use crate::error::Result;

/// Symmetric tridiagonal matrix; `off[i]` couples rows i and i+1.
#[derive(Debug, Clone)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x` (Sturm count via LDLᵀ).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.n() {
            let e = self.off[i - 1];
            if q == 0.0 {
                q = 1e-300;
            }
            q = self.diag[i] - x - e * e / q;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.n();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = (if i > 0 { self.off[i - 1].abs() } else { 0.0 })
                + (if i + 1 < n { self.off[i].abs() } else { 0.0 });
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `k` lowest eigenvalues by bisection, ascending.
    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<f64>> {
        let k = k.min(self.n());
        let (glo, ghi) = self.gershgorin();
        let scale = ghi.abs().max(glo.abs()).max(1e-30);
        let mut out = Vec::with_capacity(k);
        for j in 0..k {
            // smallest x with count_below(x) >= j+1
            let mut lo = if let Some(&prev) = out.last() { prev } else { glo };
            let mut hi = ghi;
            for _ in 0..120 {
                let mid = 0.5 * (lo + hi);
                if self.count_below(mid) >= j + 1 {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo <= 1e-15 * scale {
                    break;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        Ok(out)
    }

    /// Solve (T − σI) x = b by LU with partial pivoting; `b` is overwritten.
    fn shifted_solve(&self, sigma: f64, b: &mut [f64]) {
        let n = self.n();
        // bands: d (diag), u1, u2 (two supers; u2 is fill-in from pivoting)
        let mut d: Vec<f64> = self.diag.iter().map(|v| v - sigma).collect();
        let mut u1 = self.off.clone();
        let mut u2 = vec![0.0; n.saturating_sub(2)];

        for i in 0..n - 1 {
            let sub = self.off[i];
            if sub.abs() > d[i].abs() {
                // swap rows i and i+1, then eliminate
                let (a0, a1) = (d[i], u1[i]);
                let b0 = sub;
                let b1 = d[i + 1];
                let b2 = if i + 1 < n - 1 { u1[i + 1] } else { 0.0 };
                d[i] = b0;
                u1[i] = b1;
                if i < u2.len() {
                    u2[i] = b2;
                }
                let f = a0 / b0;
                d[i + 1] = a1 - f * b1;
                if i + 1 < n - 1 {
                    u1[i + 1] = -f * b2;
                }
                b.swap(i, i + 1);
                b[i + 1] -= f * b[i];
            } else {
                let dd = if d[i] == 0.0 { 1e-300 } else { d[i] };
                let f = sub / dd;
                d[i + 1] -= f * u1[i];
                b[i + 1] -= f * b[i];
            }
        }
        // back substitution
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s -= u1[i] * b[i + 1];
            }
            if i + 2 < n && i < u2.len() {
                s -= u2[i] * b[i + 2];
            }
            let dd = if d[i] == 0.0 { 1e-300 } else { d[i] };
            b[i] = s / dd;
        }
    }

    /// Eigenvector for eigenvalue `lambda` by inverse iteration, unit 2-norm.
    ///
    /// `orthogonal_to` guards clustered eigenvalues: the iterate is
    /// re-orthogonalized against those vectors each sweep.
    pub fn eigenvector(&self, lambda: f64, orthogonal_to: &[Vec<f64>]) -> Result<Vec<f64>> {
        let n = self.n();
        let scale: f64 = self
            .diag
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max)
            .max(self.off.iter().map(|v| v.abs()).fold(0.0, f64::max));
        // deterministic start vector
        let mut x: Vec<f64> = (0..n)
            .map(|i| {
                let r = splitmix64((i as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                (r as f64 / u64::MAX as f64) - 0.5
            })
            .collect();
        normalize(&mut x);
        // tiny shift off the exact eigenvalue keeps the solve well-posed
        let sigma = lambda + 1e-12 * scale.max(1.0);
        for _ in 0..4 {
            self.shifted_solve(sigma, &mut x);
            for q in orthogonal_to {
                let c = dot(&x, q);
                for (xi, qi) in x.iter_mut().zip(q) {
                    *xi -= c * qi;
                }
            }
            let norm = normalize(&mut x);
            if norm > 1.0 / (1e3 * f64::EPSILON * scale.max(1.0)) {
                break;
            }
        }
        Ok(x)
    }

    /// T·x for Rayleigh refinement.
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        let mut out = vec![0.0; n];
        for i in 0..n {
            let mut v = self.diag[i] * x[i];
            if i > 0 {
                v += self.off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                v += self.off[i] * x[i + 1];
            }
            out[i] = v;
        }
        out
    }

    /// Lowest `k` eigenpairs; eigenvectors have unit 2-norm. Bisection
    /// eigenvalues are polished by a Rayleigh quotient, which matters when
    /// wall barriers inflate the spectral scale far above the low end.
    pub fn lowest_eigenpairs(&self, k: usize) -> Result<Vec<(f64, Vec<f64>)>> {
        let vals = self.lowest_eigenvalues(k)?;
        let scale = vals.iter().fold(1.0_f64, |a, v| a.max(v.abs()));
        let mut out: Vec<(f64, Vec<f64>)> = Vec::with_capacity(vals.len());
        for &lambda in vals.iter() {
            let cluster: Vec<Vec<f64>> = out
                .iter()
                .filter(|(mu, _)| (mu - lambda).abs() < 1e-8 * scale)
                .map(|(_, v)| v.clone())
                .collect();
            let v = self.eigenvector(lambda, &cluster)?;
            let rayleigh = dot(&v, &self.apply(&v));
            out.push((rayleigh, v));
        }
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        Ok(out)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn normalize(x: &mut [f64]) -> f64 {
    let n = dot(x, x).sqrt();
    if n > 0.0 {
        for v in x.iter_mut() {
            *v /= n;
        }
    }
    n
}

pub(crate) fn splitmix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
