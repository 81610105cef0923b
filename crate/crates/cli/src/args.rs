// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "permlab", version, about = "Permanents, immanants and Schur power spectra of PSD matrices")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Human, global = true)]
    pub output: OutputFormat,
    /// Relative tolerance of the verdict rule.
    #[arg(long, global = true, default_value_t = permlab::harness::DEFAULT_REL_TOL)]
    pub tol: f64,
    /// Worker threads (default: one per logical CPU).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Tables rounded to 6 significant digits.
    Human,
    /// One JSON document.
    Json,
    /// One JSON object per line.
    JsonLines,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one matrix function.
    Compute {
        #[command(subcommand)]
        function: Function,
    },
    /// Check a conjecture or theorem on given matrices or random samples,
    /// or `corpus-all` to replay every published value.
    Verify(VerifyArgs),
    /// Random search for a violation of a conjecture.
    Search(SearchArgs),
    /// Inspect the embedded corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Spectrum of π(A), C_k(A) or [a_ij per A(i|j)].
    Spectrum(SpectrumArgs),
}

#[derive(Subcommand, Debug)]
pub enum Function {
    /// Permanent.
    Per { matrix: String },
    /// Determinant.
    Det { matrix: String },
    /// Product of the diagonal entries.
    H { matrix: String },
    /// Immanant normalized by the character degree, e.g. `immanant 3,1 A.json`.
    Immanant { partition: String, matrix: String },
    /// Generalized matrix function: `irreducible:3,1`, `young:2,3`,
    /// `trivial`, `a4-james`, or a JSON file with `elements` and `values`.
    Gmf { character: String, matrix: String },
    /// α-permanent `Σ α^{c(σ)} Π a_{i,σ(i)}`.
    AlphaPer {
        #[arg(allow_hyphen_values = true)]
        alpha: f64,
        matrix: String,
    },
    /// Coefficients of `per` with the leading `b × b` block scaled by λ.
    LiebPoly { b: usize, matrix: String },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Conjecture id, theorem id, or `corpus-all`.
    pub target: String,
    /// Matrix JSON files or `corpus:<name>`. Without matrices a seeded
    /// random campaign runs instead.
    pub matrices: Vec<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub rank: Option<usize>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Args, Debug, Default)]
pub struct ParamArgs {
    /// Second matrix B for the Hadamard-product conjectures.
    #[arg(long = "with")]
    pub with: Option<String>,
    /// Size of the leading block.
    #[arg(long)]
    pub block: Option<usize>,
    /// Subset size for PATE08, block size for MAR9.
    #[arg(long)]
    pub k: Option<usize>,
    /// Character for PDC, SCHUR and MERRIS_BOUND (same syntax as `compute gmf`).
    #[arg(long)]
    pub character: Option<String>,
    /// Partition for DRURY_FERRERS.
    #[arg(long)]
    pub partition: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Off-diagonal value for ZHANG_BS38_CONST.
    #[arg(long)]
    pub t: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Conjecture id.
    pub target: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long)]
    pub budget: usize,
    #[arg(long)]
    pub seed: u64,
    /// Sample real matrices.
    #[arg(long)]
    pub real: bool,
    /// Write the best-margin log here (JSON lines) instead of stdout.
    #[arg(long)]
    pub log: Option<PathBuf>,
    /// Where to write the violating matrix.
    #[arg(long, default_value = "witness.json")]
    pub witness: PathBuf,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Subcommand, Debug)]
pub enum CorpusAction {
    /// Names and descriptions.
    List,
    /// Print an entry's matrix JSON.
    Show { name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpectrumKind {
    /// π(A), with the isotypic report for n ≤ 6.
    Pi,
    /// C_k(A); needs `--k`.
    Ck,
    /// [a_ij per A(i|j)].
    Bs40,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    pub matrix: String,
    #[arg(long, value_enum, default_value_t = SpectrumKind::Pi)]
    pub of: SpectrumKind,
    #[arg(long)]
    pub k: Option<usize>,
    /// Clustering tolerance (default 1e-6 · max(1, |λ_max|)).
    #[arg(long)]
    pub cluster_tol: Option<f64>,
}
