// SPDX-License-Identifier: Apache-2.0

//! Exact Gaussian arithmetic over arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Gaussian integer with arbitrary-precision parts.
pub type GaussianInt = Complex<BigInt>;

pub fn gaussian(re: i64, im: i64) -> GaussianInt {
    Complex::new(BigInt::from(re), BigInt::from(im))
}

pub fn gaussian_to_f64(z: &GaussianInt) -> Complex64 {
    Complex64::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}

/// A Gaussian rational `num / den` kept in lowest terms with `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactValue {
    num: GaussianInt,
    den: BigInt,
}

impl ExactValue {
    pub fn from_gaussian(num: GaussianInt) -> Self {
        ExactValue { num, den: BigInt::one() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_gaussian(gaussian(v, 0))
    }

    pub fn new(num: GaussianInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut v = ExactValue { num, den };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            self.num = Complex::new(-self.num.re.clone(), -self.num.im.clone());
        }
        let g = self.num.re.gcd(&self.num.im).gcd(&self.den);
        if !g.is_zero() && !g.is_one() {
            self.num = Complex::new(&self.num.re / &g, &self.num.im / &g);
            self.den = &self.den / &g;
        }
    }

    pub fn numerator(&self) -> &GaussianInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_real(&self) -> bool {
        self.num.im.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// Real part as an exact integer, when the value is a real integer.
    pub fn as_real_integer(&self) -> Option<&BigInt> {
        (self.is_real() && self.is_integer()).then_some(&self.num.re)
    }

    pub fn div_int(&self, d: &BigInt) -> Self {
        ExactValue::new(self.num.clone(), &self.den * d)
    }

    pub fn mul_int(&self, m: &BigInt) -> Self {
        ExactValue::new(Complex::new(&self.num.re * m, &self.num.im * m), self.den.clone())
    }

    pub fn to_complex(&self) -> Complex64 {
        let d = self.den.to_f64().unwrap_or(f64::NAN);
        let z = gaussian_to_f64(&self.num);
        Complex64::new(z.re / d, z.im / d)
    }
}

fn fmt_rational(f: &mut fmt::Formatter<'_>, num: &BigInt, den: &BigInt) -> fmt::Result {
    if den.is_one() {
        write!(f, "{num}")
    } else {
        write!(f, "{num}/{den}")
    }
}

impl fmt::Display for ExactValue {
    /// Decimal string: `504`, `3/2`, or `(3+4i)/5` style for complex values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.im.is_zero() {
            return fmt_rational(f, &self.num.re, &self.den);
        }
        let sign = if self.num.im.is_negative() { '-' } else { '+' };
        let im = self.num.im.abs();
        if self.den.is_one() {
            write!(f, "{}{}{}i", self.num.re, sign, im)
        } else {
            write!(f, "({}{}{}i)/{}", self.num.re, sign, im, self.den)
        }
    }
}

/// Ring operations needed by the permutation-sum kernels, implemented for
/// floating complex numbers and exact Gaussian integers.
pub trait Scalar: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn add_assign(&mut self, other: &Self);
    fn scale_int(&self, k: i64) -> Self;
    fn is_zero(&self) -> bool;
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn scale_int(&self, k: i64) -> Self {
        self * k as f64
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl Scalar for GaussianInt {
    fn zero() -> Self {
        Complex::new(BigInt::zero(), BigInt::zero())
    }
    fn one() -> Self {
        Complex::new(BigInt::one(), BigInt::zero())
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign(&mut self, other: &Self) {
        self.re += &other.re;
        self.im += &other.im;
    }
    fn scale_int(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        Complex::new(&self.re * &k, &self.im * &k)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}
