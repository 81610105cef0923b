// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{CMatrix, PsdMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleKind {
    /// Complex Gaussian Gram factor.
    Psd,
    /// Complex Gaussian Gram factor, then scaled to unit diagonal.
    Correlation,
    /// Real Gaussian Gram factor.
    RealPsd,
    /// Real Gaussian Gram factor, then scaled to unit diagonal.
    RealCorrelation,
}

const MAX_RETRIES: usize = 16;

/// Random PSD matrix `W* W` with an `rank × n` Gaussian factor.
/// Deterministic in `seed`.
pub fn sample_psd(n: usize, rank: usize, seed: u64, kind: SampleKind) -> Result<PsdMatrix> {
    if rank == 0 || rank > n {
        return Err(Error::InvalidInput(format!("rank {rank} must lie in 1..={n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let real = matches!(kind, SampleKind::RealPsd | SampleKind::RealCorrelation);
    for _ in 0..MAX_RETRIES {
        let data: Vec<Complex64> = (0..rank * n)
            .map(|_| {
                if real {
                    Complex64::new(rng.sample(StandardNormal), 0.0)
                } else {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
                }
            })
            .collect();
        let w = CMatrix::from_vec_float(rank, n, data)?;
        let a = PsdMatrix::from_gram(&w);
        match kind {
            SampleKind::Psd | SampleKind::RealPsd => return Ok(a),
            SampleKind::Correlation | SampleKind::RealCorrelation => match a.correlation_normalize() {
                Ok((_, c)) => return Ok(c.into_psd()),
                Err(Error::ZeroDiagonal { .. }) => continue,
                Err(e) => return Err(e),
            },
        }
    }
    Err(Error::ZeroDiagonal { index: 0 })
}
