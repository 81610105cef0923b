// SPDX-License-Identifier: Apache-2.0

//! The Schur power matrix `π(A)`, the subset-permanent matrices `C_k(A)`
//! and `[a_ij per A(i|j)]`, and the isotypic block structure of `π(A)`.
//!
//! Rows and columns of `π(A)` follow the lexicographic order of
//! [`crate::perms::iterate_permutations`].

mod isotypic;
mod krylov;
mod minors;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrices::{eigenvalues, CMatrix, HermitianMatrix, Spectrum};
use crate::par;
use crate::perms::{all_permutations, factorial};

pub use isotypic::{isotypic_decomposition, IsotypicDecomposition, IsotypicReport, ATTRIBUTION_TOL, MAX_ISOTYPIC_ORDER};
pub use krylov::{top_eigenvalue, KrylovOptions, KrylovResult};
pub use minors::{bs40_matrix, k_subsets, pate_c_matrix, standard_block_spectrum};

/// Largest order for a dense `π(A)`.
pub const MAX_DENSE_ORDER: usize = 7;
/// Largest order for the matrix-free product.
pub const MAX_MATVEC_ORDER: usize = 8;

/// `π(A)`, with entry `(σ, τ) = Π_t a_{σ(t), τ(t)}`.
#[derive(Clone, Debug)]
pub struct SchurPowerMatrix {
    n: usize,
    base: HermitianMatrix,
}

impl SchurPowerMatrix {
    /// Order of the source matrix; the matrix itself is `n! × n!`.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.base
    }

    pub fn matrix(&self) -> &CMatrix {
        self.base.matrix()
    }

    /// Dense spectrum. Cost grows as `(n!)^3`; prefer [`schur_power_spectrum`].
    pub fn spectrum(&self, cluster_tol: Option<f64>) -> Result<Spectrum> {
        eigenvalues(&self.base, cluster_tol)
    }
}

/// Walks row `sigma` of `π(A)` in column order, calling `leaf(column, entry)`
/// for every nonzero entry.
fn walk_row(a: &[Complex64], n: usize, sigma: &[usize], leaf: &mut impl FnMut(usize, Complex64)) {
    let mut used = vec![false; n];
    let mut weights = vec![1usize; n + 1];
    for t in (0..n).rev() {
        weights[t] = weights[t + 1] * (n - t);
    }
    // weights[t] = (n - t)!, the number of columns under one node at depth t.
    fn go(
        a: &[Complex64],
        n: usize,
        sigma: &[usize],
        t: usize,
        product: Complex64,
        offset: usize,
        used: &mut [bool],
        weights: &[usize],
        leaf: &mut impl FnMut(usize, Complex64),
    ) {
        if t == n {
            leaf(offset, product);
            return;
        }
        let row = sigma[t] * n;
        let mut slot = 0;
        for c in 0..n {
            if used[c] {
                continue;
            }
            let next = product * a[row + c];
            if next.re != 0.0 || next.im != 0.0 {
                used[c] = true;
                go(a, n, sigma, t + 1, next, offset + slot * weights[t + 1], used, weights, leaf);
                used[c] = false;
            }
            slot += 1;
        }
    }
    go(a, n, sigma, 0, Complex64::new(1.0, 0.0), 0, &mut used, &weights, leaf);
}

/// Dense `π(A)` for `n ≤ 7`.
pub fn schur_power_matrix(a: &HermitianMatrix) -> Result<SchurPowerMatrix> {
    let n = a.n();
    if n > MAX_DENSE_ORDER {
        return Err(Error::TooLarge(format!("dense Schur power matrix of order {n}! (limit {MAX_DENSE_ORDER}!)")));
    }
    let size = factorial(n);
    let perms = all_permutations(n)?;
    let mut data = vec![Complex64::new(0.0, 0.0); size * size];
    par::for_each_chunk_mut(&mut data, size, |row, out| {
        walk_row(a.data(), n, perms[row].images(), &mut |col, v| out[col] = v);
    });
    let base = HermitianMatrix::new(CMatrix::from_vec(size, size, data)?)?;
    Ok(SchurPowerMatrix { n, base })
}

/// `π(A) · v` without materializing `π(A)`; `n ≤ 8`.
pub fn schur_power_matvec(a: &HermitianMatrix, v: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = a.n();
    if n > MAX_MATVEC_ORDER {
        return Err(Error::TooLarge(format!("Schur power product of order {n}! (limit {MAX_MATVEC_ORDER}!)")));
    }
    let size = factorial(n);
    if v.len() != size {
        return Err(Error::DimensionMismatch(format!("vector of length {} for order {n}", v.len())));
    }
    let perms = all_permutations(n)?;
    Ok(par::map_range(size, |row| {
        let mut acc = Complex64::new(0.0, 0.0);
        walk_row(a.data(), n, perms[row].images(), &mut |col, w| acc += w * v[col]);
        acc
    }))
}

/// Spectrum of `π(A)`: dense for `n ≤ 5`, the union of isotypic block
/// spectra for `n = 6`.
pub fn schur_power_spectrum(a: &HermitianMatrix, cluster_tol: Option<f64>) -> Result<Spectrum> {
    if a.n() <= 5 {
        schur_power_matrix(a)?.spectrum(cluster_tol)
    } else {
        Ok(isotypic_decomposition(a)?.union_spectrum(cluster_tol))
    }
}

/// Largest eigenvalue of `π(A)`: dense for `n ≤ 5`, isotypic blocks for
/// `n = 6`, Lanczos on the matrix-free product for `n ∈ {7, 8}`.
pub fn schur_power_top_eigenvalue(a: &HermitianMatrix) -> Result<f64> {
    match a.n() {
        0..=6 => schur_power_spectrum(a, None)?
            .max()
            .ok_or_else(|| Error::InvalidInput("empty spectrum".into())),
        n if n > MAX_MATVEC_ORDER => Err(Error::TooLarge(format!("Schur power matrix of order {n}!"))),
        _ => {
            let size = factorial(a.n());
            let start = krylov::default_start(size);
            let r = top_eigenvalue(|v| schur_power_matvec(a, v).expect("checked order"), start, &KrylovOptions::default())?;
            Ok(r.value)
        }
    }
}
