// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use serde_json::json;

use super::conjectures::{default_block, h, per, split_blocks};
use super::{input_digest, Checker, ConjectureReport, Params, TheoremId, Verdict};
use crate::error::{Error, Result};
use crate::gmf::{determinant, gmf, lieb_polynomial, ClassSums};
use crate::matrices::{eigenvalues, CMatrix, PsdMatrix, CORRELATION_TOL};
use crate::perms::{factorial, partitions, Partition};

const BUG_FLAG: &str = "bug sentinel: a proved inequality was reported violated";

fn require_correlation(a: &PsdMatrix) -> Result<()> {
    for i in 0..a.n() {
        let d = a.get(i, i);
        if (d.re - 1.0).abs() > CORRELATION_TOL.max(1e-12) || d.im != 0.0 {
            return Err(Error::InvalidInput(format!("diagonal entry {} is {d}, not 1", i + 1)));
        }
    }
    Ok(())
}

fn min_eigenvalue(a: &PsdMatrix) -> Result<f64> {
    Ok(eigenvalues(a.hermitian(), None)?.min().unwrap_or(0.0))
}

fn is_identity(m: &CMatrix, tol: f64) -> bool {
    let n = m.rows();
    (0..n).all(|i| (0..n).all(|j| (m.get(i, j) - if i == j { 1.0 } else { 0.0 }).norm() <= tol))
}

fn off_block_is_zero(c: &CMatrix) -> bool {
    c.data().iter().all(|z| z.norm() == 0.0)
}

fn alpha_allowed(alpha: f64, n: usize) -> bool {
    (alpha >= 0.0 && alpha.fract() == 0.0) || alpha >= n as f64 - 1.0
}

/// Evaluates one proved inequality. Any `violated` verdict carries a flag:
/// it points at a bug in this crate, not at the mathematics.
///
/// Defaults: leading block `b = ⌊n/2⌋`; every irreducible character for
/// SCHUR and MERRIS_BOUND; `α ∈ {0, 1, 2, n-1, n}` for FRENKEL_ALPHA;
/// `t = 1/2` for ZHANG_BS38_CONST. Inequalities with several parts report
/// the weakest part and name it in the witness.
pub fn check_theorem(id: TheoremId, a: &PsdMatrix, params: &Params, checker: &Checker) -> Result<ConjectureReport> {
    let mut report = evaluate(id, a, params, checker)?;
    if report.verdict == Verdict::Violated {
        report.flag = Some(match report.flag.take() {
            Some(f) => format!("{BUG_FLAG} ({f})"),
            None => BUG_FLAG.to_string(),
        });
    }
    Ok(report)
}

fn evaluate(id: TheoremId, a: &PsdMatrix, params: &Params, checker: &Checker) -> Result<ConjectureReport> {
    let n = a.n();
    let name = id.as_str();
    let digest = input_digest(name, a, params);
    let m = a.matrix();
    let block = params.block.unwrap_or(default_block(n));
    match id {
        TheoremId::ClassicalChain => {
            let (d, hh, p) = (determinant(m)?.re(), h(m)?, per(m)?);
            let links = vec![
                ("det >= 0".to_string(), d, 0.0),
                ("h >= det".to_string(), hh, d),
                ("per >= h".to_string(), p, hh),
            ];
            Ok(checker.worst(name, &digest, &links))
        }
        TheoremId::LiebPoly => {
            let poly = lieb_polynomial(a.hermitian(), block)?;
            let total = poly.evaluate(1.0);
            let p = per(m)?;
            let scale = if total.abs() > 0.0 { total.abs() } else { 1.0 };
            let mut links: Vec<(String, f64, f64)> = poly
                .coefficients()
                .iter()
                .enumerate()
                .map(|(k, c)| (format!("coefficient {k} >= 0 (relative to P(1))"), c / scale, 0.0))
                .collect();
            links.push(("P(1) >= per A".into(), total, p));
            links.push(("per A >= P(1)".into(), p, total));
            let mut r = checker.worst(name, &digest, &links);
            let exact = poly.exact_coefficients().map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>());
            r.witness = Some(json!({
                "link": r.witness.as_ref().and_then(|w| w.get("link").cloned()),
                "coefficients": poly.coefficients(),
                "exact_coefficients": exact,
                "imag_residual": poly.imag_residual(),
            }));
            Ok(r)
        }
        TheoremId::LiebCy1 | TheoremId::LiebCy2 => {
            let (b, c, d) = split_blocks(m, block)?;
            let mut rhs = per(&b)? * per(&d)?;
            if id == TheoremId::LiebCy2 {
                if 2 * block != n {
                    return Err(Error::InvalidInput(format!("block {block} is not half of {n}")));
                }
                rhs += crate::gmf::permanent(&c)?.value().norm_sqr();
            }
            let equality_case = m.has_zero_row() || off_block_is_zero(&c);
            let lhs = per(m)?;
            let r = if equality_case { checker.equality(name, &digest, lhs, rhs) } else { checker.report(name, &digest, lhs, rhs) };
            Ok(r.with_witness(json!({ "block": block, "equality_case": equality_case })))
        }
        TheoremId::Schur | TheoremId::MerrisBound => {
            let bound = if id == TheoremId::MerrisBound {
                Some(h(&m.pow(n as u32)?)?.max(0.0).powf(1.0 / n as f64))
            } else {
                None
            };
            let det = determinant(m)?.re();
            let pair = |label: String, f: f64| match bound {
                Some(b) => (label, b, f),
                None => (label, f, det),
            };
            let links = match &params.character {
                Some(chi) => vec![pair("given character".into(), gmf(m, chi)?.re())],
                None => {
                    let sums = ClassSums::new(m)?;
                    partitions(n)
                        .into_iter()
                        .map(|l| Ok(pair(l.to_string(), sums.immanant(&l)?.re())))
                        .collect::<Result<Vec<_>>>()?
                }
            };
            Ok(checker.worst(name, &digest, &links))
        }
        TheoremId::MarcusSoules => {
            let (b, c, d) = split_blocks(m, block)?;
            let mu = min_eigenvalue(a)?.max(0.0);
            let cn = c.frobenius_norm();
            let rhs = per(&b)? * per(&d)? + mu.powi(n as i32 - 2) * cn * cn;
            Ok(checker.report(name, &digest, per(m)?, rhs).with_witness(json!({ "block": block, "mu": mu })))
        }
        TheoremId::GronePierce => {
            require_correlation(a)?;
            let f = m.frobenius_norm();
            let rhs = f * f / n as f64;
            let y3_like = n == 3 && {
                let s = eigenvalues(a.hermitian(), None)?;
                let v = s.values();
                (v[0] - 1.5).abs() < 1e-9 && (v[1] - 1.5).abs() < 1e-9 && v[2].abs() < 1e-9
            };
            let equality_case = n == 2 || is_identity(m, 1e-12) || y3_like;
            let lhs = per(m)?;
            let r = if equality_case { checker.equality(name, &digest, lhs, rhs) } else { checker.report(name, &digest, lhs, rhs) };
            Ok(r.with_witness(json!({ "equality_case": equality_case })))
        }
        TheoremId::GpCorHaa => {
            require_correlation(a)?;
            let rhs = h(&m.matmul(m)?)?.max(0.0).powf(1.0 / n as f64);
            Ok(checker.report(name, &digest, per(m)?, rhs))
        }
        TheoremId::GpCorMix => {
            let lhs = (n as f64 - 1.0) * per(m)? + determinant(m)?.re();
            Ok(checker.report(name, &digest, lhs, n as f64 * h(m)?))
        }
        TheoremId::GpCorSing => {
            require_correlation(a)?;
            if n < 2 {
                return Err(Error::InvalidInput("needs n >= 2".into()));
            }
            let mu = min_eigenvalue(a)?;
            if mu > 1e-9 * n as f64 {
                return Err(Error::InvalidInput(format!("matrix is not singular (smallest eigenvalue {mu:e})")));
            }
            Ok(checker.report(name, &digest, per(m)?, n as f64 / (n as f64 - 1.0)))
        }
        TheoremId::PateRank2 => {
            if !m.is_real() {
                return Err(Error::InvalidInput("matrix is not real".into()));
            }
            let s = eigenvalues(a.hermitian(), None)?;
            let cut = 1e-9 * a.trace_re().max(1.0);
            let rank = s.values().iter().filter(|&&x| x > cut).count();
            if rank > 2 {
                return Err(Error::InvalidInput(format!("numerical rank {rank} exceeds 2")));
            }
            let rhs = factorial(n) as f64 / 2f64.powi(n as i32 - 1) * h(m)?;
            Ok(checker.report(name, &digest, per(m)?, rhs))
        }
        TheoremId::FrenkelAlpha => {
            let alphas: Vec<f64> = match params.alpha {
                Some(x) => vec![x],
                None => {
                    let mut v = vec![0.0, 1.0, 2.0, n as f64 - 1.0, n as f64];
                    v.sort_by(f64::total_cmp);
                    v.dedup();
                    v
                }
            };
            if let Some(bad) = alphas.iter().find(|&&x| !alpha_allowed(x, n)) {
                return Err(Error::InvalidInput(format!("alpha = {bad} is neither a nonnegative integer nor >= n - 1")));
            }
            let (b, _, d) = split_blocks(m, block)?;
            let (sa, sb, sd) = (ClassSums::new(m)?, ClassSums::new(&b)?, ClassSums::new(&d)?);
            let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            let mut links = Vec::new();
            for &x in &alphas {
                let pa = sa.alpha_permanent(x).re();
                let pbd = sb.alpha_permanent(x).re() * sd.alpha_permanent(x).re();
                let qa = sign * sa.alpha_permanent(-x).re();
                let qbd = sign * sb.alpha_permanent(-x).re() * sd.alpha_permanent(-x).re();
                links.push((format!("alpha = {x}: per_a(A) >= per_a(B) per_a(D)"), pa, pbd));
                links.push((format!("alpha = {x}: (-1)^n per_-a(A) >= 0"), qa, 0.0));
                links.push((format!("alpha = {x}: (-1)^n per_-a(B) per_-a(D) >= (-1)^n per_-a(A)"), qbd, qa));
            }
            Ok(checker.worst(name, &digest, &links))
        }
        TheoremId::HeyfronHooks => {
            let sums = ClassSums::new(m)?;
            let values = (1..=n)
                .map(|k| Ok(sums.immanant(&Partition::hook(n, k)?)?.re()))
                .collect::<Result<Vec<f64>>>()?;
            let links: Vec<(String, f64, f64)> = (1..n)
                .map(|k| {
                    let lo = Partition::hook(n, k).expect("valid hook");
                    let hi = Partition::hook(n, k + 1).expect("valid hook");
                    (format!("{hi} >= {lo}"), values[k], values[k - 1])
                })
                .collect();
            if links.is_empty() {
                return Ok(checker.report(name, &digest, values[0], values[0]));
            }
            Ok(checker.worst(name, &digest, &links))
        }
        TheoremId::ZhangBs38Const => {
            require_correlation(a)?;
            let t = params.t.unwrap_or(0.5);
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::InvalidInput(format!("t = {t} outside [0, 1]")));
            }
            let data: Vec<Complex64> =
                (0..n * n).map(|k| Complex64::new(if k / n == k % n { 1.0 } else { t }, 0.0)).collect();
            let b = CMatrix::from_vec(n, n, data)?;
            let lhs = per(m)? * h(&b)?;
            Ok(checker.report(name, &digest, lhs, per(&m.hadamard(&b)?)?).with_witness(json!({ "t": t })))
        }
    }
}
