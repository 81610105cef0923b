// SPDX-License-Identifier: Apache-2.0

//! Matrix-function kernels: permanent, determinant, diagonal product,
//! generalized matrix functions `f_χ`, immanants, α-permanents and the
//! block polynomial `P(λ) = per A_λ`.
//!
//! Every kernel has an exact path over Gaussian integers that is taken
//! automatically when the input matrix carries the exact flag.

mod enumerate;
mod lieb;
mod ryser;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{gaussian_to_f64, ExactValue, GaussianInt, Scalar};
use crate::matrices::{format_f64, CMatrix, F17};
use crate::par;
use crate::perms::{
    character_table, cycle_lengths, CharacterSpec, CycleType, Partition, MAX_FULL_ORDER,
};

pub use lieb::{lieb_polynomial, RealPolynomial};

/// Largest order for the float permanent.
pub const MAX_FLOAT_PERMANENT: usize = 20;
/// Largest order for the exact permanent; larger exact inputs use floats.
pub const MAX_EXACT_PERMANENT: usize = 16;
/// Largest order for the literal-definition permanent.
pub const MAX_NAIVE_PERMANENT: usize = 9;

/// Value of a matrix function, with an exact Gaussian-rational companion
/// when the computation was exact.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFunctionValue {
    value: Complex64,
    exact: Option<ExactValue>,
}

impl MatrixFunctionValue {
    pub fn float(value: Complex64) -> Self {
        MatrixFunctionValue { value, exact: None }
    }

    pub fn real(value: f64) -> Self {
        Self::float(Complex64::new(value, 0.0))
    }

    pub fn from_exact(exact: ExactValue) -> Self {
        MatrixFunctionValue { value: exact.to_complex(), exact: Some(exact) }
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    /// Real part. PSD inputs give real values up to rounding.
    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn exact(&self) -> Option<&ExactValue> {
        self.exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn is_real_within(&self, rel: f64) -> bool {
        self.value.im.abs() <= rel * self.value.norm().max(f64::MIN_POSITIVE)
    }

    fn map_exact(&self, f: impl Fn(&ExactValue) -> ExactValue, g: impl Fn(Complex64) -> Complex64) -> Self {
        match &self.exact {
            Some(e) => Self::from_exact(f(e)),
            None => Self::float(g(self.value)),
        }
    }

    /// Divides by a positive integer, staying exact when possible.
    pub fn div_int(&self, d: u64) -> Self {
        self.map_exact(|e| e.div_int(&BigInt::from(d)), |z| z / d as f64)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Repr {
            re: F17,
            im: F17,
            #[serde(skip_serializing_if = "Option::is_none")]
            exact: Option<String>,
        }
        serde_json::to_value(Repr {
            re: F17(self.value.re),
            im: F17(self.value.im),
            exact: self.exact.as_ref().map(ToString::to_string),
        })
        .expect("serializable")
    }
}

impl fmt::Display for MatrixFunctionValue {
    /// Exact values as decimal strings, floats with 17 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(e) = &self.exact {
            return write!(f, "{e}");
        }
        if self.value.im == 0.0 {
            f.write_str(&format_f64(self.value.re))
        } else {
            let sign = if self.value.im < 0.0 { '-' } else { '+' };
            write!(f, "{}{}{}i", format_f64(self.value.re), sign, format_f64(self.value.im.abs()))
        }
    }
}

fn gaussian_entries(a: &CMatrix) -> Option<Vec<GaussianInt>> {
    a.exact_entries()
        .map(|e| e.iter().map(|z| Complex::new(BigInt::from(z.re), BigInt::from(z.im))).collect())
}

/// Entries scaled by the smallest `2^s` (`0 ≤ s ≤ 4`) that makes every one a
/// Gaussian integer, so halves and quarters stay exact.
fn dyadic_entries(a: &CMatrix) -> Option<(Vec<Complex<i64>>, u32)> {
    const LIMIT: f64 = (1u64 << 40) as f64;
    (0..=4u32).find_map(|shift| {
        let scale = f64::from(1u32 << shift);
        a.data()
            .iter()
            .map(|z| {
                let (re, im) = (z.re * scale, z.im * scale);
                let ok = re.fract() == 0.0 && im.fract() == 0.0 && re.abs() < LIMIT && im.abs() < LIMIT;
                ok.then(|| Complex::new(re as i64, im as i64))
            })
            .collect::<Option<Vec<_>>>()
            .map(|e| (e, shift))
    })
}

/// `per A` by Ryser's formula; exact for Gaussian-integer and small dyadic
/// input up to order 16, float (compensated, single-threaded) otherwise.
pub fn permanent(a: &CMatrix) -> Result<MatrixFunctionValue> {
    let n = a.require_square()?;
    if let Some(e) = a.exact_entries() {
        if n <= MAX_EXACT_PERMANENT {
            return Ok(MatrixFunctionValue::from_exact(ExactValue::from_gaussian(ryser::ryser_exact(e, n))));
        }
    }
    if n <= MAX_EXACT_PERMANENT {
        if let Some((e, shift)) = dyadic_entries(a) {
            let num = ExactValue::from_gaussian(ryser::ryser_exact(&e, n));
            return Ok(MatrixFunctionValue::from_exact(num.div_int(&(BigInt::from(1) << (shift * n as u32)))));
        }
    }
    if n > MAX_FLOAT_PERMANENT {
        return Err(Error::TooLarge(format!("permanent of order {n} (limit {MAX_FLOAT_PERMANENT})")));
    }
    Ok(MatrixFunctionValue::float(ryser::ryser_float(a.data(), n)))
}

/// `per A` straight from the definition `Σ_σ Π_i a_{i,σ(i)}`. Test oracle.
pub fn permanent_naive(a: &CMatrix) -> Result<MatrixFunctionValue> {
    let n = a.require_square()?;
    if n > MAX_NAIVE_PERMANENT {
        return Err(Error::TooLarge(format!("naive permanent of order {n}")));
    }
    Ok(match gaussian_entries(a) {
        Some(e) => {
            let s = enumerate::keyed_sums(&e, n, 1, |_| 0);
            MatrixFunctionValue::from_exact(ExactValue::from_gaussian(s[0].clone()))
        }
        None => MatrixFunctionValue::float(enumerate::keyed_sums(a.data(), n, 1, |_| 0)[0]),
    })
}

/// `det A`: fraction-free Bareiss elimination for exact input, LU with
/// partial pivoting otherwise.
pub fn determinant(a: &CMatrix) -> Result<MatrixFunctionValue> {
    let n = a.require_square()?;
    if let Some(e) = gaussian_entries(a) {
        return Ok(MatrixFunctionValue::from_exact(ExactValue::from_gaussian(bareiss(e, n))));
    }
    Ok(MatrixFunctionValue::float(lu_determinant(a.data().to_vec(), n)))
}

fn lu_determinant(mut m: Vec<Complex64>, n: usize) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n).max_by(|&i, &j| m[i * n + k].norm().total_cmp(&m[j * n + k].norm())).expect("k < n");
        if m[pivot * n + k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != k {
            for j in 0..n {
                m.swap(k * n + j, pivot * n + j);
            }
            det = -det;
        }
        let p = m[k * n + k];
        det *= p;
        for i in k + 1..n {
            let f = m[i * n + k] / p;
            if f.norm() == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let t = m[k * n + j];
                m[i * n + j] -= f * t;
            }
        }
    }
    det
}

fn gaussian_div_exact(x: &GaussianInt, y: &GaussianInt) -> GaussianInt {
    let num = x * y.conj();
    let den = &y.re * &y.re + &y.im * &y.im;
    let out = Complex::new(&num.re / &den, &num.im / &den);
    debug_assert!(&(&out * y) == x, "inexact Bareiss division");
    out
}

fn bareiss(mut m: Vec<GaussianInt>, n: usize) -> GaussianInt {
    if n == 0 {
        return <GaussianInt as Scalar>::one();
    }
    let mut negate = false;
    let mut prev = <GaussianInt as Scalar>::one();
    for k in 0..n - 1 {
        if Scalar::is_zero(&m[k * n + k]) {
            let Some(swap) = (k + 1..n).find(|&i| !Scalar::is_zero(&m[i * n + k])) else {
                return <GaussianInt as Scalar>::zero();
            };
            for j in 0..n {
                m.swap(k * n + j, swap * n + j);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                m[i * n + j] = gaussian_div_exact(&t, &prev);
            }
        }
        prev = m[k * n + k].clone();
    }
    let d = m[n * n - 1].clone();
    if negate {
        d.scale_int(-1)
    } else {
        d
    }
}

/// `h(A) = Π a_ii`.
pub fn diag_product(a: &CMatrix) -> Result<MatrixFunctionValue> {
    let n = a.require_square()?;
    if let Some(e) = gaussian_entries(a) {
        let mut p = <GaussianInt as Scalar>::one();
        for i in 0..n {
            p = p.mul(&e[i * n + i]);
        }
        return Ok(MatrixFunctionValue::from_exact(ExactValue::from_gaussian(p)));
    }
    Ok(MatrixFunctionValue::float(a.diag().into_iter().product()))
}

/// `f_χ(A) = (1/χ(ι)) Σ_{σ∈G} χ(σ) Π_i a_{i,σ(i)}`.
pub fn gmf(a: &CMatrix, spec: &CharacterSpec) -> Result<MatrixFunctionValue> {
    let n = a.require_square()?;
    if spec.n() != n {
        return Err(Error::SizeMismatch(format!("character on S_{} applied to an order-{n} matrix", spec.n())));
    }
    let chunk = 4096;
    let chunks = spec.order().div_ceil(chunk);
    if let (Some(e), Some(vals)) = (gaussian_entries(a), spec.exact_values()) {
        let parts = par::map_range(chunks, |c| {
            let mut s = <GaussianInt as Scalar>::zero();
            for k in c * chunk..((c + 1) * chunk).min(spec.order()) {
                if vals[k] == 0 {
                    continue;
                }
                let sigma = &spec.elements()[k];
                let mut p = <GaussianInt as Scalar>::one();
                for i in 0..n {
                    p = p.mul(&e[i * n + sigma.apply(i)]);
                }
                s.add_assign(&p.scale_int(vals[k]));
            }
            s
        });
        let mut sum = <GaussianInt as Scalar>::zero();
        for p in &parts {
            sum.add_assign(p);
        }
        return Ok(MatrixFunctionValue::from_exact(ExactValue::new(sum, BigInt::from(spec.degree()))));
    }
    let parts = par::map_range(chunks, |c| {
        let mut s = Complex64::new(0.0, 0.0);
        for k in c * chunk..((c + 1) * chunk).min(spec.order()) {
            let sigma = &spec.elements()[k];
            let p: Complex64 = (0..n).map(|i| a.get(i, sigma.apply(i))).product();
            s += spec.values()[k] * p;
        }
        s
    });
    let sum: Complex64 = parts.iter().sum();
    Ok(MatrixFunctionValue::float(sum / spec.degree() as f64))
}

/// `S_ρ = Σ_{σ of cycle type ρ} Π_i a_{i,σ(i)}` for every class `ρ` of `S_n`.
///
/// Immanants and α-permanents are linear combinations of these sums, so one
/// pass over `S_n` serves every character.
#[derive(Clone, Debug)]
pub struct ClassSums {
    n: usize,
    classes: Vec<CycleType>,
    float: Vec<Complex64>,
    exact: Option<Vec<GaussianInt>>,
}

impl ClassSums {
    pub fn new(a: &CMatrix) -> Result<Self> {
        let n = a.require_square()?;
        if n > MAX_FULL_ORDER {
            return Err(Error::TooLarge(format!("sum over S_{n}")));
        }
        let classes: Vec<CycleType> =
            crate::perms::partitions(n).iter().map(CycleType::from).collect();
        let index: HashMap<Vec<usize>, usize> =
            classes.iter().enumerate().map(|(k, c)| (c.parts().to_vec(), k)).collect();
        let key = |images: &[usize]| index[&cycle_lengths(images)];
        let (float, exact) = match gaussian_entries(a) {
            Some(e) => {
                let sums = enumerate::keyed_sums(&e, n, classes.len(), key);
                (sums.iter().map(gaussian_to_f64).collect(), Some(sums))
            }
            None => (enumerate::keyed_sums(a.data(), n, classes.len(), key), None),
        };
        Ok(ClassSums { n, classes, float, exact })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    /// `Σ_ρ w(ρ) S_ρ / d` with integer weights.
    fn combine(&self, weights: &[i64], degree: u64) -> MatrixFunctionValue {
        match &self.exact {
            Some(sums) => {
                let mut total = <GaussianInt as Scalar>::zero();
                for (s, &w) in sums.iter().zip(weights) {
                    total.add_assign(&s.scale_int(w));
                }
                MatrixFunctionValue::from_exact(ExactValue::new(total, BigInt::from(degree)))
            }
            None => {
                let total: Complex64 = self.float.iter().zip(weights).map(|(s, &w)| s * w as f64).sum();
                MatrixFunctionValue::float(total / degree as f64)
            }
        }
    }

    /// Normalized immanant `f_λ(A)`.
    pub fn immanant(&self, lambda: &Partition) -> Result<MatrixFunctionValue> {
        if lambda.size() != self.n {
            return Err(Error::SizeMismatch(format!("{lambda} is not a partition of {}", self.n)));
        }
        let table = character_table(self.n)?;
        let row = table.row_of(lambda).expect("partition of n");
        Ok(self.combine(&table.values[row], table.degree(row) as u64))
    }

    /// `per_α(A) = Σ_σ α^{ν(σ)} Π_i a_{i,σ(i)}`; exact for integer α on exact input.
    pub fn alpha_permanent(&self, alpha: f64) -> MatrixFunctionValue {
        if self.exact.is_some() && alpha.fract() == 0.0 && alpha.abs() < 1e6 {
            let weights: Option<Vec<i64>> = self
                .classes
                .iter()
                .map(|c| (alpha as i64).checked_pow(c.cycle_count() as u32))
                .collect();
            if let Some(w) = weights {
                return self.combine(&w, 1);
            }
        }
        let total: Complex64 = self
            .float
            .iter()
            .zip(&self.classes)
            .map(|(s, c)| s * alpha.powi(c.cycle_count() as i32))
            .sum();
        MatrixFunctionValue::float(total)
    }

    /// `Σ_ρ sign(ρ) S_ρ`, the determinant from the definition.
    pub fn signed_sum(&self) -> MatrixFunctionValue {
        let w: Vec<i64> =
            self.classes.iter().map(|c| if (self.n - c.cycle_count()).is_multiple_of(2) { 1 } else { -1 }).collect();
        self.combine(&w, 1)
    }

    pub fn total(&self) -> MatrixFunctionValue {
        self.combine(&vec![1; self.classes.len()], 1)
    }
}

/// Normalized immanant `f_λ(A)`.
pub fn immanant(a: &CMatrix, lambda: &Partition) -> Result<MatrixFunctionValue> {
    let n = a.require_square()?;
    if lambda.size() != n {
        return Err(Error::SizeMismatch(format!("{lambda} is not a partition of {n}")));
    }
    ClassSums::new(a)?.immanant(lambda)
}

/// α-permanent.
pub fn alpha_permanent(a: &CMatrix, alpha: f64) -> Result<MatrixFunctionValue> {
    Ok(ClassSums::new(a)?.alpha_permanent(alpha))
}
