// SPDX-License-Identifier: Apache-2.0

//! Seeded property campaigns and counterexample search.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{check_conjecture, check_theorem, Checker, ConjectureId, ConjectureReport, Params, TheoremId, Verdict};
use crate::error::{Error, Result};
use crate::matrices::{sample_psd, PsdMatrix, SampleKind};
use crate::par;

/// Samples evaluated per parallel batch in [`random_search`].
const SEARCH_CHUNK: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Conjecture(ConjectureId),
    Theorem(TheoremId),
}

impl Target {
    pub fn as_str(&self) -> &'static str {
        match self {
            Target::Conjecture(c) => c.as_str(),
            Target::Theorem(t) => t.as_str(),
        }
    }

    /// Sampler suited to the target's hypotheses at order `n`: correlation
    /// matrices for the correlation bounds, singular ones for GP_COR_SING,
    /// real rank 2 for PATE_RANK2, complex full rank otherwise.
    pub fn default_sampling(&self, n: usize) -> (SampleKind, usize) {
        match self {
            Target::Theorem(TheoremId::GronePierce | TheoremId::GpCorHaa | TheoremId::ZhangBs38Const) => {
                (SampleKind::Correlation, n)
            }
            Target::Theorem(TheoremId::GpCorSing) => (SampleKind::Correlation, n.saturating_sub(1).max(1)),
            Target::Theorem(TheoremId::PateRank2) => (SampleKind::RealPsd, n.min(2)),
            _ => (SampleKind::Psd, n),
        }
    }

    pub fn check(&self, a: &PsdMatrix, params: &Params, checker: &Checker) -> Result<ConjectureReport> {
        match *self {
            Target::Conjecture(c) => check_conjecture(c, a, params, checker),
            Target::Theorem(t) => check_theorem(t, a, params, checker),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Ok(c) = s.parse::<ConjectureId>() {
            return Ok(Target::Conjecture(c));
        }
        s.parse::<TheoremId>()
            .map(Target::Theorem)
            .map_err(|_| Error::Parse(format!("unknown conjecture or theorem id '{s}'")))
    }
}

/// Seed of sample `index` in a campaign seeded with `seed` (SplitMix64 step).
pub fn sample_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct CampaignSpec {
    pub target: Target,
    pub n: usize,
    pub rank: usize,
    pub kind: SampleKind,
    pub seed: u64,
    pub trials: usize,
    pub params: Params,
}

impl CampaignSpec {
    /// Campaign settings with the target's default sampler.
    pub fn new(target: Target, n: usize, seed: u64, trials: usize) -> Self {
        let (kind, rank) = target.default_sampling(n);
        CampaignSpec { target, n, rank, kind, seed, trials, params: Params::default() }
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.rank = rank;
        self
    }

    pub fn with_kind(mut self, kind: SampleKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_params(mut self, params: Params) -> Self {
        self.params = params;
        self
    }

    /// Matrix for sample `index`.
    pub fn sample(&self, index: usize) -> Result<PsdMatrix> {
        sample_psd(self.n, self.rank, sample_seed(self.seed, index as u64), self.kind)
    }

    fn evaluate(&self, index: usize, checker: &Checker) -> Result<ConjectureReport> {
        self.target.check(&self.sample(index)?, &self.params, checker)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignSummary {
    pub target: String,
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub holds: usize,
    pub violated: usize,
    pub degenerate: usize,
    /// Index of the sample with the smallest relative margin.
    pub worst_index: Option<usize>,
    /// Reports in sample order.
    #[serde(skip)]
    pub reports: Vec<ConjectureReport>,
}

impl CampaignSummary {
    pub fn worst(&self) -> Option<&ConjectureReport> {
        self.worst_index.map(|i| &self.reports[i])
    }

    pub fn first_violation(&self) -> Option<(usize, &ConjectureReport)> {
        self.reports.iter().enumerate().find(|(_, r)| r.is_violated())
    }
}

/// Evaluates every sample. Results are in sample order whatever the worker
/// count, so a fixed seed gives identical output.
pub fn run_campaign(spec: &CampaignSpec, checker: &Checker) -> Result<CampaignSummary> {
    let reports = par::map_range(spec.trials, |i| spec.evaluate(i, checker))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let worst_index = reports
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.relative_margin().total_cmp(&b.1.relative_margin()))
        .map(|(i, _)| i);
    Ok(CampaignSummary {
        target: spec.target.to_string(),
        n: spec.n,
        seed: spec.seed,
        trials: spec.trials,
        holds: count(Verdict::Holds),
        violated: count(Verdict::Violated),
        degenerate: count(Verdict::Degenerate),
        worst_index,
        reports,
    })
}

/// Result of [`random_search`].
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub evaluated: usize,
    /// Every sample that lowered the best relative margin so far, in order.
    pub improvements: Vec<(usize, ConjectureReport)>,
    /// The lowest-index violation, with its matrix.
    pub violation: Option<(usize, ConjectureReport, PsdMatrix)>,
}

impl SearchOutcome {
    pub fn best(&self) -> Option<&(usize, ConjectureReport)> {
        self.improvements.last()
    }

    pub fn exhausted(&self) -> bool {
        self.violation.is_none()
    }
}

/// Streams samples through the check until the first violation or until
/// `budget` samples are spent. Samples run in parallel batches; the
/// violation reported is always the one with the lowest index, and the
/// improvement log is built in index order, so the outcome depends only on
/// the seed.
pub fn random_search(spec: &CampaignSpec, budget: usize, checker: &Checker) -> Result<SearchOutcome> {
    let mut out = SearchOutcome { evaluated: 0, improvements: Vec::new(), violation: None };
    let mut best = f64::INFINITY;
    let mut start = 0;
    while start < budget {
        let len = SEARCH_CHUNK.min(budget - start);
        let batch = par::map_range(len, |i| spec.evaluate(start + i, checker));
        for (offset, report) in batch.into_iter().enumerate() {
            let index = start + offset;
            let report = report?;
            out.evaluated = index + 1;
            if report.relative_margin() < best {
                best = report.relative_margin();
                out.improvements.push((index, report.clone()));
            }
            if report.is_violated() {
                out.violation = Some((index, report, spec.sample(index)?));
                return Ok(out);
            }
        }
        start += len;
    }
    Ok(out)
}
