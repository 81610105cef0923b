// SPDX-License-Identifier: Apache-2.0

//! Matrices built from permanents of submatrices: `C_k(A)` with entries
//! `per A[α|β] · per A(α|β)`, and its `k = 1` case `[a_ij per A(i|j)]`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::ExactValue;
use crate::gmf::permanent;
use crate::matrices::{eigenvalues, CMatrix, HermitianMatrix, Spectrum};
use crate::par;

/// Largest order accepted by [`pate_c_matrix`].
pub const MAX_SUBSET_ORDER: usize = 12;
/// Largest order accepted by [`bs40_matrix`].
pub const MAX_MINOR_ORDER: usize = 16;

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        go(0, n, k, &mut cur, &mut out);
    }
    out
}

/// Hermitian matrix from an entry function evaluated on the upper triangle.
fn hermitian_from_upper<F>(size: usize, entry: F) -> Result<HermitianMatrix>
where
    F: Fn(usize, usize) -> Result<Complex64> + Send + Sync,
{
    let rows: Vec<Result<Vec<Complex64>>> =
        par::map_range(size, |i| (i..size).map(|j| entry(i, j)).collect());
    let mut data = vec![Complex64::new(0.0, 0.0); size * size];
    for (i, row) in rows.into_iter().enumerate() {
        for (off, v) in row?.into_iter().enumerate() {
            let j = i + off;
            if i == j {
                data[i * size + i] = Complex64::new(v.re, 0.0);
            } else {
                data[i * size + j] = v;
                data[j * size + i] = v.conj();
            }
        }
    }
    HermitianMatrix::new(CMatrix::from_vec(size, size, data)?)
}

fn subset_product(a: &CMatrix, alpha: &[usize], beta: &[usize]) -> Result<Complex64> {
    let (inner, outer) = a.submatrices(alpha, beta)?;
    let p = permanent(&inner)?;
    let q = permanent(&outer)?;
    Ok(match (p.exact(), q.exact()) {
        (Some(x), Some(y)) => {
            ExactValue::new(x.numerator() * y.numerator(), x.denominator() * y.denominator()).to_complex()
        }
        _ => p.value() * q.value(),
    })
}

/// `C_k(A)`, indexed by `k`-subsets in lexicographic order.
pub fn pate_c_matrix(a: &HermitianMatrix, k: usize) -> Result<HermitianMatrix> {
    let n = a.n();
    if k == 0 || k > n {
        return Err(Error::BadK { k, n });
    }
    if n > MAX_SUBSET_ORDER {
        return Err(Error::TooLarge(format!("subset-permanent matrix of order {n}")));
    }
    let subsets = k_subsets(n, k);
    hermitian_from_upper(subsets.len(), |i, j| subset_product(a.matrix(), &subsets[i], &subsets[j]))
}

/// `[a_ij · per A(i|j)]`.
pub fn bs40_matrix(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    let n = a.n();
    if n > MAX_MINOR_ORDER {
        return Err(Error::TooLarge(format!("minor-permanent matrix of order {n}")));
    }
    hermitian_from_upper(n, |i, j| subset_product(a.matrix(), &[i], &[j]))
}

/// Spectrum of the `(n-1, 1)` isotypic block of `π(A)`, one copy of each
/// eigenvalue.
///
/// `π(A)` acts on each isotypic component through the group-algebra element
/// `w = Σ_ρ (Π_s a_{s,ρ(s)}) ρ`. In the permutation representation on `C^n`
/// that element is the transpose of `[a_ij per A(i|j)]`, and the permutation
/// representation is the trivial one plus the `(n-1, 1)` one. Removing the
/// trivial eigenvalue `per A` leaves the block spectrum, at any `n ≤ 16`.
pub fn standard_block_spectrum(a: &HermitianMatrix, cluster_tol: Option<f64>) -> Result<Spectrum> {
    let per = permanent(a.matrix())?.re();
    let spectrum = eigenvalues(&bs40_matrix(a)?, cluster_tol)?;
    let mut values = spectrum.values().to_vec();
    let nearest = values
        .iter()
        .enumerate()
        .min_by(|x, y| (x.1 - per).abs().total_cmp(&(y.1 - per).abs()))
        .map(|(k, _)| k)
        .ok_or_else(|| Error::InvalidInput("empty matrix".into()))?;
    values.remove(nearest);
    Ok(Spectrum::from_values(values, cluster_tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::{sample_psd, SampleKind};

    #[test]
    fn subsets_in_lex_order() {
        assert_eq!(k_subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(k_subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(k_subsets(3, 3).len(), 1);
        assert!(k_subsets(2, 3).is_empty());
    }

    #[test]
    fn full_subset_gives_the_permanent() {
        let a = sample_psd(4, 4, 3, SampleKind::Psd).unwrap();
        let c = pate_c_matrix(a.hermitian(), 4).unwrap();
        assert_eq!(c.n(), 1);
        let per = permanent(a.matrix()).unwrap().re();
        assert!((c.get(0, 0).re - per).abs() < 1e-12 * per);
        assert!(matches!(pate_c_matrix(a.hermitian(), 0), Err(Error::BadK { k: 0, n: 4 })));
        assert!(matches!(pate_c_matrix(a.hermitian(), 5), Err(Error::BadK { .. })));
    }

    #[test]
    fn permanent_is_an_eigenvalue_of_every_c_k() {
        for seed in 0..3 {
            let a = sample_psd(5, 5, seed, SampleKind::Psd).unwrap();
            let per = permanent(a.matrix()).unwrap().re();
            for k in 1..=5 {
                let c = pate_c_matrix(a.hermitian(), k).unwrap();
                let s = eigenvalues(&c, None).unwrap();
                assert!(s.nearest(per).unwrap().1 < 1e-9, "k = {k}");
                for i in 0..c.n() {
                    assert!(c.get(i, i).re <= per * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn bs40_examples() {
        assert_eq!(bs40_matrix(&HermitianMatrix::identity(3)).unwrap().matrix(), &CMatrix::identity(3));
        let j2 = HermitianMatrix::new(CMatrix::ones(2, 2)).unwrap();
        let b = bs40_matrix(&j2).unwrap();
        assert_eq!(b.matrix(), &CMatrix::ones(2, 2));
        assert_eq!(eigenvalues(&b, None).unwrap().max().unwrap(), 2.0);
        let a = sample_psd(5, 3, 7, SampleKind::Psd).unwrap();
        let c1 = pate_c_matrix(a.hermitian(), 1).unwrap();
        let b = bs40_matrix(a.hermitian()).unwrap();
        assert!(c1.matrix().add(&b.matrix().scale(-1.0)).unwrap().max_abs() < 1e-12 * b.max_abs());
    }
}
