// SPDX-License-Identifier: Apache-2.0

//! Keyed sums `Σ_σ Π_i a_{i,σ(i)}` over `S_n`, bucketed by a key of `σ`.
//!
//! The search tree is split on the first two images; subtrees run through
//! [`crate::par::map`] and their bucket vectors are added in tree order,
//! so float results do not depend on the worker count.

use crate::exact::Scalar;
use crate::par;

pub(crate) fn keyed_sums<S, K>(entries: &[S], n: usize, buckets: usize, key: K) -> Vec<S>
where
    S: Scalar,
    K: Fn(&[usize]) -> usize + Send + Sync,
{
    let mut total = vec![S::zero(); buckets];
    if n == 0 {
        total[key(&[])].add_assign(&S::one());
        return total;
    }
    let prefixes: Vec<Vec<usize>> = if n == 1 {
        vec![vec![0]]
    } else {
        (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| vec![a, b])).collect()
    };
    let partials = par::map(prefixes, |prefix| {
        let mut sums = vec![S::zero(); buckets];
        let mut images = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut product = S::one();
        for (row, &col) in prefix.iter().enumerate() {
            images[row] = col;
            used[col] = true;
            product = product.mul(&entries[row * n + col]);
        }
        if !product.is_zero() {
            descend(entries, n, prefix.len(), &product, &mut images, &mut used, &mut sums, &key);
        }
        sums
    });
    for part in &partials {
        for (t, p) in total.iter_mut().zip(part) {
            t.add_assign(p);
        }
    }
    total
}

#[allow(clippy::too_many_arguments)]
fn descend<S: Scalar, K: Fn(&[usize]) -> usize>(
    entries: &[S],
    n: usize,
    row: usize,
    product: &S,
    images: &mut [usize],
    used: &mut [bool],
    sums: &mut [S],
    key: &K,
) {
    if row == n {
        sums[key(images)].add_assign(product);
        return;
    }
    for col in 0..n {
        if used[col] {
            continue;
        }
        let next = product.mul(&entries[row * n + col]);
        if next.is_zero() {
            continue;
        }
        used[col] = true;
        images[row] = col;
        descend(entries, n, row + 1, &next, images, used, sums, key);
        used[col] = false;
    }
}
