// SPDX-License-Identifier: Apache-2.0

//! Lanczos with full reorthogonalization for the top eigenvalue of a
//! Hermitian operator given only as a matrix-vector product.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrices::{eigh, CMatrix, HermitianMatrix};

#[derive(Clone, Debug)]
pub struct KrylovOptions {
    pub max_steps: usize,
    /// Stop once the Ritz residual is below `tol · |θ|`.
    pub tol: f64,
}

impl Default for KrylovOptions {
    fn default() -> Self {
        KrylovOptions { max_steps: 300, tol: 1e-11 }
    }
}

#[derive(Clone, Debug)]
pub struct KrylovResult {
    pub value: f64,
    pub residual: f64,
    pub steps: usize,
}

/// Normalized all-ones vector plus a fixed bump on coordinate 0 (the
/// identity permutation in lexicographic order). The bump keeps the start
/// vector off the all-ones eigenvector.
pub fn default_start(size: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(1.0 / (size as f64).sqrt(), 0.0); size];
    v[0] += Complex64::new(0.5, 0.25);
    v
}

fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Top eigenvalue of the Hermitian operator `op` on the Krylov space of `start`.
pub fn top_eigenvalue<F>(op: F, start: Vec<Complex64>, opts: &KrylovOptions) -> Result<KrylovResult>
where
    F: Fn(&[Complex64]) -> Vec<Complex64>,
{
    let dim = start.len();
    let s = norm(&start);
    if s == 0.0 {
        return Err(Error::InvalidInput("zero start vector".into()));
    }
    let mut basis: Vec<Vec<Complex64>> = vec![start.iter().map(|z| z / s).collect()];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut last = f64::NAN;
    for step in 1..=opts.max_steps.min(dim) {
        let mut w = op(&basis[step - 1]);
        let a = dot(&basis[step - 1], &w).re;
        alpha.push(a);
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= c * qi;
                }
            }
        }
        let b = norm(&w);
        let (theta, last_component) = ritz_top(&alpha, &beta)?;
        let residual = b * last_component.abs();
        let scale = theta.abs().max(alpha.iter().fold(0.0f64, |m, x| m.max(x.abs())));
        let exhausted = b <= 1e-14 * scale.max(f64::MIN_POSITIVE) || step == dim;
        if exhausted || residual <= opts.tol * theta.abs().max(f64::MIN_POSITIVE) || (theta - last).abs() <= 1e-15 * theta.abs() {
            return Ok(KrylovResult { value: theta, residual, steps: step });
        }
        last = theta;
        beta.push(b);
        basis.push(w.into_iter().map(|z| z / b).collect());
    }
    Err(Error::ConvergenceFailure { sweeps: opts.max_steps })
}

/// Top eigenvalue of the tridiagonal `T` and the last component of its eigenvector.
fn ritz_top(alpha: &[f64], beta: &[f64]) -> Result<(f64, f64)> {
    let m = alpha.len();
    let mut t = vec![Complex64::new(0.0, 0.0); m * m];
    for i in 0..m {
        t[i * m + i] = Complex64::new(alpha[i], 0.0);
        if i + 1 < m {
            t[i * m + i + 1] = Complex64::new(beta[i], 0.0);
            t[(i + 1) * m + i] = Complex64::new(beta[i], 0.0);
        }
    }
    let e = eigh(&HermitianMatrix::new(CMatrix::from_vec_float(m, m, t)?)?)?;
    Ok((e.values[0], e.vectors.get(m - 1, 0).norm()))
}
