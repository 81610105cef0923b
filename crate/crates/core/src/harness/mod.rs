// SPDX-License-Identifier: Apache-2.0

//! Checkable predicates for the permanent inequalities, the embedded
//! counterexample corpus, seeded property campaigns and random searches.
//!
//! Every check produces a [`ConjectureReport`]: `lhs` is the side that the
//! inequality claims is larger, `margin = lhs - rhs`, and the verdict is
//! `violated` exactly when `margin < -tol · max(|lhs|, |rhs|, 1)`.

mod campaign;
mod conjectures;
mod corpus;
mod order;
mod theorems;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matrices::{MatrixJson, PsdMatrix, F17};
use crate::perms::{CharacterSpec, Partition};

pub use campaign::{random_search, run_campaign, sample_seed, CampaignSpec, CampaignSummary, SearchOutcome, Target};
pub use conjectures::{bs32_witness_function, check_conjecture, positive_definite_function_min_eigenvalue};
pub use corpus::{
    build_compound_16, corpus, corpus_entry, expected_verdict, verify_corpus, verify_entry, CheckStatus, CorpusEntry, CorpusResult,
    PublishedCheck,
};
pub use order::{j_block_discriminators, verify_order, Discriminator, OrderReport};
pub use theorems::check_theorem;

/// Default relative tolerance of the verdict rule.
pub const DEFAULT_REL_TOL: f64 = 1e-9;
/// Both sides below this are reported as degenerate.
pub const DEGENERATE_ABS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
    Degenerate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::Degenerate => "degenerate",
        })
    }
}

fn normalize_id(s: &str) -> String {
    s.trim().to_ascii_uppercase().replace('-', "_")
}

macro_rules! id_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(&self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = Error;

            /// Accepts `POT`, `pot`, `drury-ferrers`, `DRURY_FERRERS`, ...
            fn from_str(s: &str) -> Result<Self> {
                let key = normalize_id(s);
                $(if key == $text { return Ok($name::$variant); })+
                Err(Error::Parse(format!("unknown {} `{s}`", stringify!($name))))
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(self.as_str())
            }
        }
    };
}

id_enum! {
    /// Open or refuted inequalities.
    ConjectureId {
        Pdc => "PDC",
        Mar9 => "MAR9",
        MarNew => "MARNEW",
        Pot => "POT",
        Chollet => "CHOLLET",
        Bs38 => "BS38",
        Bs32 => "BS32",
        Bs40 => "BS40",
        Beasley => "BEASLEY",
        Pate08 => "PATE08",
        Pate08b => "PATE08B",
        DruryFerrers => "DRURY_FERRERS",
    }
}

id_enum! {
    /// Proved inequalities; a violation means a bug in this crate.
    TheoremId {
        ClassicalChain => "CLASSICAL_CHAIN",
        LiebPoly => "LIEB_POLY",
        LiebCy1 => "LIEB_CY1",
        LiebCy2 => "LIEB_CY2",
        Schur => "SCHUR",
        MerrisBound => "MERRIS_BOUND",
        MarcusSoules => "MARCUS_SOULES",
        GronePierce => "GRONE_PIERCE",
        GpCorHaa => "GP_COR_HAA",
        GpCorMix => "GP_COR_MIX",
        GpCorSing => "GP_COR_SING",
        PateRank2 => "PATE_RANK2",
        FrenkelAlpha => "FRENKEL_ALPHA",
        HeyfronHooks => "HEYFRON_HOOKS",
        ZhangBs38Const => "ZHANG_BS38_CONST",
    }
}

/// Optional inputs beyond the main matrix. Missing values fall back to the
/// per-check defaults documented on [`check_conjecture`] and [`check_theorem`].
#[derive(Clone, Debug, Default)]
pub struct Params {
    /// Second matrix of the Hadamard-product inequalities.
    pub b: Option<PsdMatrix>,
    /// Size of the leading diagonal block (`b` in `[B C; C* D]`).
    pub block: Option<usize>,
    /// Subset size of `C_k`, or the block size `k` of the `m × m` partition.
    pub k: Option<usize>,
    pub character: Option<CharacterSpec>,
    pub partition: Option<Partition>,
    pub alpha: Option<f64>,
    /// Off-diagonal value of the constant correlation matrix.
    pub t: Option<f64>,
    /// Function on `S_n` in lexicographic order.
    pub c_function: Option<Vec<Complex64>>,
}

impl Params {
    fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(b) = &self.b {
            parts.push(format!("b={}", MatrixJson::from_psd(b).to_json()));
        }
        if let Some(x) = self.block {
            parts.push(format!("block={x}"));
        }
        if let Some(x) = self.k {
            parts.push(format!("k={x}"));
        }
        if let Some(c) = &self.character {
            let vals: Vec<String> = c.values().iter().map(|z| format!("{:e},{:e}", z.re, z.im)).collect();
            let els: Vec<String> = c.elements().iter().map(|p| p.to_string()).collect();
            parts.push(format!("chi={}|{}", els.join(";"), vals.join(";")));
        }
        if let Some(p) = &self.partition {
            parts.push(format!("partition={p}"));
        }
        if let Some(x) = self.alpha {
            parts.push(format!("alpha={x:e}"));
        }
        if let Some(x) = self.t {
            parts.push(format!("t={x:e}"));
        }
        if let Some(c) = &self.c_function {
            let vals: Vec<String> = c.iter().map(|z| format!("{:e},{:e}", z.re, z.im)).collect();
            parts.push(format!("c={}", vals.join(";")));
        }
        parts.join("&")
    }
}

/// SHA-256 (hex) of the check id, the matrix JSON and the parameters.
pub fn input_digest(id: &str, a: &PsdMatrix, params: &Params) -> String {
    let mut h = Sha256::new();
    h.update(id.as_bytes());
    h.update(b"\n");
    h.update(MatrixJson::from_psd(a).to_json().as_bytes());
    h.update(b"\n");
    h.update(params.describe().as_bytes());
    hex::encode(h.finalize())
}

fn ser_f17<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    F17(*x).serialize(s)
}

/// Outcome of one conjecture or theorem check.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    /// Conjecture or theorem id, e.g. `POT` or `GRONE_PIERCE`.
    pub conjecture_id: String,
    pub input_digest: String,
    #[serde(serialize_with = "ser_f17")]
    pub lhs: f64,
    #[serde(serialize_with = "ser_f17")]
    pub rhs: f64,
    #[serde(serialize_with = "ser_f17")]
    pub margin: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

impl ConjectureReport {
    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }

    /// `margin / max(|lhs|, |rhs|, 1)`, comparable across inputs.
    pub fn relative_margin(&self) -> f64 {
        self.margin / self.lhs.abs().max(self.rhs.abs()).max(1.0)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    fn with_witness(mut self, w: serde_json::Value) -> Self {
        self.witness = Some(w);
        self
    }
}

/// Verdict rule with a configurable relative tolerance.
#[derive(Clone, Copy, Debug)]
pub struct Checker {
    pub rel_tol: f64,
}

impl Default for Checker {
    fn default() -> Self {
        Checker { rel_tol: DEFAULT_REL_TOL }
    }
}

impl Checker {
    pub fn new(rel_tol: f64) -> Self {
        Checker { rel_tol }
    }

    pub fn tolerance(&self, lhs: f64, rhs: f64) -> f64 {
        self.rel_tol * lhs.abs().max(rhs.abs()).max(1.0)
    }

    pub fn verdict(&self, lhs: f64, rhs: f64) -> Verdict {
        if lhs.abs() < DEGENERATE_ABS && rhs.abs() < DEGENERATE_ABS {
            Verdict::Degenerate
        } else if lhs - rhs < -self.tolerance(lhs, rhs) {
            Verdict::Violated
        } else {
            Verdict::Holds
        }
    }

    pub fn report(&self, id: &str, digest: &str, lhs: f64, rhs: f64) -> ConjectureReport {
        ConjectureReport {
            conjecture_id: id.to_string(),
            input_digest: digest.to_string(),
            lhs,
            rhs,
            margin: lhs - rhs,
            verdict: self.verdict(lhs, rhs),
            witness: None,
            flag: None,
        }
    }

    /// Report for the weakest of several inequalities `lhs ≥ rhs`, judged by
    /// relative margin; a violated one always wins over a degenerate one.
    fn worst(&self, id: &str, digest: &str, links: &[(String, f64, f64)]) -> ConjectureReport {
        let rank = |l: f64, r: f64| match self.verdict(l, r) {
            Verdict::Violated => 0,
            Verdict::Holds => 1,
            Verdict::Degenerate => 2,
        };
        let (label, lhs, rhs) = links
            .iter()
            .min_by(|x, y| {
                let key = |(_, l, r): &(String, f64, f64)| (rank(*l, *r), (l - r) / l.abs().max(r.abs()).max(1.0));
                let (kx, ky) = (key(x), key(y));
                kx.0.cmp(&ky.0).then(kx.1.total_cmp(&ky.1))
            })
            .expect("at least one inequality");
        self.report(id, digest, *lhs, *rhs).with_witness(serde_json::json!({ "link": label }))
    }

    /// Equality expected: reports `violated` when `|lhs - rhs|` exceeds the tolerance.
    fn equality(&self, id: &str, digest: &str, lhs: f64, rhs: f64) -> ConjectureReport {
        let mut r = self.report(id, digest, lhs, rhs);
        if (lhs - rhs).abs() > self.tolerance(lhs, rhs) {
            r.verdict = Verdict::Violated;
            r.flag = Some("expected equality".into());
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_rule() {
        let c = Checker::default();
        assert_eq!(c.verdict(504.0, 512.0), Verdict::Violated);
        assert_eq!(c.verdict(512.0, 504.0), Verdict::Holds);
        assert_eq!(c.verdict(1.0, 1.0 + 5e-10), Verdict::Holds);
        assert_eq!(c.verdict(1.0, 1.0 + 2e-9), Verdict::Violated);
        assert_eq!(c.verdict(1e-13, 5e-13), Verdict::Degenerate);
        let r = c.report("POT", "x", 504.0, 512.0);
        assert_eq!(r.margin, -8.0);
        assert!(r.to_json_line().contains("\"margin\":-8.0000000000000000e0"));
    }

    #[test]
    fn ids_parse_loosely() {
        assert_eq!("pot".parse::<ConjectureId>().unwrap(), ConjectureId::Pot);
        assert_eq!("drury-ferrers".parse::<ConjectureId>().unwrap(), ConjectureId::DruryFerrers);
        assert_eq!("classical-chain".parse::<TheoremId>().unwrap(), TheoremId::ClassicalChain);
        assert_eq!("GP_COR_SING".parse::<TheoremId>().unwrap(), TheoremId::GpCorSing);
        assert!("nope".parse::<TheoremId>().is_err());
        assert_eq!(ConjectureId::ALL.len(), 12);
        assert_eq!(TheoremId::ALL.len(), 15);
    }

    #[test]
    fn worst_link_prefers_violations() {
        let c = Checker::default();
        let links = vec![("a".to_string(), 2.0, 1.0), ("b".to_string(), 1.0, 3.0), ("c".to_string(), 0.0, 0.0)];
        let r = c.worst("X", "d", &links);
        assert_eq!(r.verdict, Verdict::Violated);
        assert_eq!(r.witness.unwrap()["link"], "b");
    }

    #[test]
    fn digest_is_stable() {
        let a = PsdMatrix::from_gram(&crate::matrices::CMatrix::identity(2));
        let d1 = input_digest("POT", &a, &Params::default());
        assert_eq!(d1, input_digest("POT", &a, &Params::default()));
        assert_ne!(d1, input_digest("BS40", &a, &Params::default()));
        assert_eq!(d1.len(), 64);
    }
}
