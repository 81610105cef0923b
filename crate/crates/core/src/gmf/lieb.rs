// SPDX-License-Identifier: Apache-2.0

//! `P(λ) = per A_λ`, where `A_λ` scales the leading `b × b` block `B` of
//! `A = [B C; C* D]` by `λ`.

use num_complex::Complex64;
use serde::Serialize;

use super::enumerate::keyed_sums;
use super::MAX_NAIVE_PERMANENT;
use crate::error::{Error, Result};
use crate::exact::{gaussian_to_f64, ExactValue, GaussianInt};
use crate::matrices::{HermitianMatrix, F17};
use num_bigint::BigInt;
use num_complex::Complex;

/// Polynomial in one real variable; `coefficients[k]` multiplies `λ^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealPolynomial {
    coefficients: Vec<f64>,
    exact: Option<Vec<ExactValue>>,
    imag_residual: f64,
}

impl RealPolynomial {
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn exact_coefficients(&self) -> Option<&[ExactValue]> {
        self.exact.as_deref()
    }

    /// Largest imaginary part dropped when the coefficients were made real.
    pub fn imag_residual(&self) -> f64 {
        self.imag_residual
    }

    pub fn degree_bound(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// `P(1)` as an exact value when available.
    pub fn exact_sum(&self) -> Option<ExactValue> {
        let e = self.exact.as_ref()?;
        let mut num: GaussianInt = Complex::new(BigInt::from(0), BigInt::from(0));
        for c in e {
            num += c.numerator();
        }
        Some(ExactValue::from_gaussian(num))
    }

    /// JSON coefficient array: decimal strings when exact, 17-digit floats otherwise.
    pub fn to_json(&self) -> serde_json::Value {
        match &self.exact {
            Some(e) => serde_json::Value::Array(
                e.iter()
                    .map(|c| match c.as_real_integer() {
                        Some(i) => serde_json::from_str(&i.to_string()).expect("integer literal"),
                        None => serde_json::Value::String(c.to_string()),
                    })
                    .collect(),
            ),
            None => {
                #[derive(Serialize)]
                struct Repr(Vec<F17>);
                serde_json::to_value(Repr(self.coefficients.iter().copied().map(F17).collect()))
                    .expect("serializable")
            }
        }
    }
}

/// Coefficients of `per A_λ` by stratified enumeration over `S_n`: the
/// coefficient of `λ^k` collects the permutations sending exactly `k` of the
/// first `b` indices into the first `b`.
pub fn lieb_polynomial(a: &HermitianMatrix, b: usize) -> Result<RealPolynomial> {
    let n = a.n();
    if b == 0 || b >= n {
        return Err(Error::BadBlockSize { b, n });
    }
    if n > MAX_NAIVE_PERMANENT + 1 {
        return Err(Error::TooLarge(format!("block polynomial of order {n}")));
    }
    let key = |images: &[usize]| images[..b].iter().filter(|&&j| j < b).count();
    if let Some(e) = a.exact_entries() {
        let e: Vec<GaussianInt> =
            e.iter().map(|z| Complex::new(BigInt::from(z.re), BigInt::from(z.im))).collect();
        let sums = keyed_sums(&e, n, b + 1, key);
        let floats: Vec<Complex64> = sums.iter().map(gaussian_to_f64).collect();
        let exact: Vec<ExactValue> = sums.into_iter().map(ExactValue::from_gaussian).collect();
        return Ok(finish(floats, Some(exact)));
    }
    Ok(finish(keyed_sums(a.data(), n, b + 1, key), None))
}

fn finish(sums: Vec<Complex64>, exact: Option<Vec<ExactValue>>) -> RealPolynomial {
    let imag_residual = sums.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    RealPolynomial { coefficients: sums.iter().map(|z| z.re).collect(), exact, imag_residual }
}
