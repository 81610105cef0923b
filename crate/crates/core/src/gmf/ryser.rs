// SPDX-License-Identifier: Apache-2.0

//! Ryser's inclusion–exclusion permanent with Gray-code column updates:
//!
//! `per A = (-1)^n Σ_{S ⊆ cols} (-1)^{|S|} Π_i Σ_{j ∈ S} a_ij`.
//!
//! Successive Gray codes differ in one column, so each subset costs one
//! row-sum update plus an `n`-term product.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};

use crate::exact::{GaussianInt, Scalar};
use crate::par;

/// Subsets per block. Float row sums are rebuilt from scratch at every
/// block start to bound drift.
const BLOCK_BITS: usize = 10;

#[inline]
fn gray(k: u64) -> u64 {
    k ^ (k >> 1)
}

/// Neumaier-compensated complex accumulator.
#[derive(Default)]
struct Compensated {
    sum: Complex64,
    carry: Complex64,
}

impl Compensated {
    fn add(&mut self, x: Complex64) {
        let step = |sum: &mut f64, carry: &mut f64, x: f64| {
            let t = *sum + x;
            if sum.abs() >= x.abs() {
                *carry += (*sum - t) + x;
            } else {
                *carry += (x - t) + *sum;
            }
            *sum = t;
        };
        step(&mut self.sum.re, &mut self.carry.re, x.re);
        step(&mut self.sum.im, &mut self.carry.im, x.im);
    }

    fn value(&self) -> Complex64 {
        self.sum + self.carry
    }
}

/// Float Ryser, single-threaded.
pub(crate) fn ryser_float(a: &[Complex64], n: usize) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let total: u64 = 1 << n;
    let block: u64 = 1 << BLOCK_BITS.min(n);
    let mut acc = Compensated::default();
    let mut row_sums = vec![Complex64::new(0.0, 0.0); n];
    let mut start = 0;
    while start < total {
        let g0 = gray(start);
        for (i, rs) in row_sums.iter_mut().enumerate() {
            *rs = (0..n).filter(|&j| g0 >> j & 1 == 1).map(|j| a[i * n + j]).sum();
        }
        for k in start..start + block {
            if k > start {
                let j = k.trailing_zeros() as usize;
                if gray(k) >> j & 1 == 1 {
                    for (i, rs) in row_sums.iter_mut().enumerate() {
                        *rs += a[i * n + j];
                    }
                } else {
                    for (i, rs) in row_sums.iter_mut().enumerate() {
                        *rs -= a[i * n + j];
                    }
                }
            }
            let g = gray(k);
            if g == 0 {
                continue;
            }
            let prod: Complex64 = row_sums.iter().product();
            if g.count_ones().is_multiple_of(2) {
                acc.add(prod);
            } else {
                acc.add(-prod);
            }
        }
        start += block;
    }
    let v = acc.value();
    if n.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

fn product_exact(row_sums: &[Complex<i128>]) -> GaussianInt {
    let mut small = Complex::new(1i128, 0i128);
    for (idx, z) in row_sums.iter().enumerate() {
        let re = small.re.checked_mul(z.re).and_then(|x| small.im.checked_mul(z.im).and_then(|y| x.checked_sub(y)));
        let im = small.re.checked_mul(z.im).and_then(|x| small.im.checked_mul(z.re).and_then(|y| x.checked_add(y)));
        match (re, im) {
            (Some(re), Some(im)) => small = Complex::new(re, im),
            _ => {
                let mut big = Complex::new(BigInt::from(small.re), BigInt::from(small.im));
                for z in &row_sums[idx..] {
                    big = big.mul(&Complex::new(BigInt::from(z.re), BigInt::from(z.im)));
                }
                return big;
            }
        }
    }
    Complex::new(BigInt::from(small.re), BigInt::from(small.im))
}

/// Exact Ryser over Gaussian integers. Blocks of the Gray-code sequence are
/// independent and run in parallel; integer addition makes the split exact.
pub(crate) fn ryser_exact(a: &[Complex<i64>], n: usize) -> GaussianInt {
    if n == 0 {
        return GaussianInt::one();
    }
    let total: u64 = 1 << n;
    let block: u64 = 1 << BLOCK_BITS.min(n);
    let blocks = (total / block) as usize;
    let entry = |i: usize, j: usize| {
        let z = a[i * n + j];
        Complex::new(z.re as i128, z.im as i128)
    };
    let partials = par::map_range(blocks, |b| {
        let start = b as u64 * block;
        let g0 = gray(start);
        let mut row_sums: Vec<Complex<i128>> = (0..n)
            .map(|i| (0..n).filter(|&j| g0 >> j & 1 == 1).map(|j| entry(i, j)).sum())
            .collect();
        let mut sum = GaussianInt::zero();
        for k in start..start + block {
            if k > start {
                let j = k.trailing_zeros() as usize;
                let add = gray(k) >> j & 1 == 1;
                for (i, rs) in row_sums.iter_mut().enumerate() {
                    if add {
                        *rs += entry(i, j);
                    } else {
                        *rs -= entry(i, j);
                    }
                }
            }
            let g = gray(k);
            if g == 0 {
                continue;
            }
            let prod = product_exact(&row_sums);
            if g.count_ones().is_multiple_of(2) {
                sum.add_assign(&prod);
            } else {
                sum.add_assign(&prod.scale_int(-1));
            }
        }
        sum
    });
    let mut total_sum = GaussianInt::zero();
    for p in &partials {
        total_sum.add_assign(p);
    }
    if n.is_multiple_of(2) {
        total_sum
    } else {
        total_sum.scale_int(-1)
    }
}
