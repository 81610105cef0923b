// SPDX-License-Identifier: Apache-2.0

//! Empirical checks of `λ ⪯ μ`, meaning `f_λ(H) ≤ f_μ(H)` for every PSD `H`.

use serde::Serialize;

use super::campaign::sample_seed;
use crate::error::{Error, Result};
use crate::gmf::ClassSums;
use crate::matrices::{sample_psd, CMatrix, SampleKind, F17};
use crate::par;
use crate::perms::{partitions, Partition};

/// Largest `n` accepted by [`verify_order`].
pub const MAX_ORDER_N: usize = 7;

/// `f_λ` and `f_μ` on a direct sum of all-ones blocks `J_{b1} ⊕ J_{b2} ⊕ ...`.
#[derive(Clone, Debug, Serialize)]
pub struct Discriminator {
    pub blocks: Partition,
    pub f_lambda: String,
    pub f_mu: String,
    /// `f_λ > f_μ` on this matrix.
    pub violated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    pub lambda: Partition,
    pub mu: Partition,
    pub seed: u64,
    pub trials: usize,
    pub violations: usize,
    /// Smallest `(f_μ - f_λ) / max(|f_λ|, |f_μ|, 1)` over the random samples.
    pub min_margin: F17,
    /// Sample index attaining `min_margin`.
    pub min_index: Option<usize>,
    pub discriminators: Vec<Discriminator>,
    /// `no violation found` or `violation found`. A clean run is evidence,
    /// not proof.
    pub label: String,
}

impl OrderReport {
    pub fn violation_found(&self) -> bool {
        self.violations > 0 || self.discriminators.iter().any(|d| d.violated)
    }
}

/// `J_{b1} ⊕ J_{b2} ⊕ ...` for every partition `b` of `n`.
pub fn j_block_discriminators(n: usize) -> Vec<(Partition, CMatrix)> {
    partitions(n)
        .into_iter()
        .map(|p| {
            let m = p.parts().iter().fold(CMatrix::zeros(0, 0), |acc, &b| {
                acc.direct_sum(&CMatrix::ones(b, b)).expect("square blocks")
            });
            (p, m)
        })
        .collect()
}

fn violated(f_lambda: f64, f_mu: f64, tol: f64) -> bool {
    f_lambda - f_mu > tol * f_lambda.abs().max(f_mu.abs()).max(1.0)
}

/// Tests `f_λ(H) ≤ f_μ(H)` on `trials` random PSD matrices (ranks cycling
/// through `1..=n`) and on every all-ones block matrix.
pub fn verify_order(lambda: &Partition, mu: &Partition, seed: u64, trials: usize, rel_tol: f64) -> Result<OrderReport> {
    let n = lambda.size();
    if mu.size() != n {
        return Err(Error::SizeMismatch(format!("{lambda} and {mu} are partitions of different integers")));
    }
    if n == 0 || n > MAX_ORDER_N {
        return Err(Error::SizeMismatch(format!("partitions of {n}; supported range is 1..={MAX_ORDER_N}")));
    }
    let margins = par::map_range(trials, |i| -> Result<(f64, bool)> {
        let h = sample_psd(n, 1 + i % n, sample_seed(seed, i as u64), SampleKind::Psd)?;
        let sums = ClassSums::new(h.matrix())?;
        let (fl, fm) = (sums.immanant(lambda)?.re(), sums.immanant(mu)?.re());
        Ok(((fm - fl) / fl.abs().max(fm.abs()).max(1.0), violated(fl, fm, rel_tol)))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let violations = margins.iter().filter(|m| m.1).count();
    let (min_index, min_margin) = margins
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
        .map_or((None, f64::INFINITY), |(i, m)| (Some(i), m.0));
    let discriminators = j_block_discriminators(n)
        .into_iter()
        .map(|(blocks, m)| -> Result<Discriminator> {
            let sums = ClassSums::new(&m)?;
            let (fl, fm) = (sums.immanant(lambda)?, sums.immanant(mu)?);
            Ok(Discriminator { blocks, violated: violated(fl.re(), fm.re(), rel_tol), f_lambda: fl.to_string(), f_mu: fm.to_string() })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = OrderReport {
        lambda: lambda.clone(),
        mu: mu.clone(),
        seed,
        trials,
        violations,
        min_margin: F17(min_margin),
        min_index,
        discriminators,
        label: String::new(),
    };
    report.label = if report.violation_found() { "violation found" } else { "no violation found" }.into();
    Ok(report)
}
