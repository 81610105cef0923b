// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use serde_json::json;

use super::{input_digest, Checker, ConjectureId, ConjectureReport, Params};
use crate::error::{Error, Result};
use crate::gmf::{diag_product, gmf, permanent, ClassSums};
use crate::matrices::{eigenvalues, eigh, CMatrix, HermitianMatrix, PsdMatrix};
use crate::perms::{all_permutations, factorial, ferrers_contains, lex_rank, partitions, Partition};
use crate::schur_power::{
    bs40_matrix, isotypic_decomposition, pate_c_matrix, schur_power_matrix, schur_power_top_eigenvalue,
    standard_block_spectrum, IsotypicDecomposition,
};

pub(crate) fn per(a: &CMatrix) -> Result<f64> {
    Ok(permanent(a)?.re())
}

pub(crate) fn h(a: &CMatrix) -> Result<f64> {
    Ok(diag_product(a)?.re())
}

/// `(B, C, D)` of `A = [B C; C* D]` with a leading `b × b` block.
pub(crate) fn split_blocks(a: &CMatrix, b: usize) -> Result<(CMatrix, CMatrix, CMatrix)> {
    let n = a.require_square()?;
    if b == 0 || b >= n {
        return Err(Error::BadBlockSize { b, n });
    }
    let top: Vec<usize> = (0..b).collect();
    let bottom: Vec<usize> = (b..n).collect();
    Ok((a.select(&top, &top)?, a.select(&top, &bottom)?, a.select(&bottom, &bottom)?))
}

pub(crate) fn default_block(n: usize) -> usize {
    (n / 2).max(1)
}

fn second_matrix(a: &PsdMatrix, params: &Params) -> Result<(PsdMatrix, &'static str)> {
    match &params.b {
        Some(b) if b.n() != a.n() => {
            Err(Error::InvalidInput(format!("A is {}x{} but B is {}x{}", a.n(), a.n(), b.n(), b.n())))
        }
        Some(b) => Ok((b.clone(), "given")),
        None => Ok((a.conj(), "conj(A)")),
    }
}

/// Function `c(ρ) = Σ_σ conj(x_σ) x_{ρσ}` built from a unit top eigenvector
/// `x` of `π(A)`. It is positive definite with `c(ι) = 1`, and the weighted
/// sum `Σ c(ρ) Π a_{i,ρ(i)}` equals the top eigenvalue of `π(A)`.
pub fn bs32_witness_function(a: &HermitianMatrix) -> Result<Vec<Complex64>> {
    let n = a.n();
    if n > 5 {
        return Err(Error::TooLarge(format!("eigenvector of the order-{n} Schur power matrix")));
    }
    let pi = schur_power_matrix(a)?;
    let x = eigh(pi.hermitian())?.vector(0);
    let perms = all_permutations(n)?;
    Ok(perms
        .iter()
        .map(|rho| {
            perms
                .iter()
                .enumerate()
                .map(|(s, sigma)| x[s].conj() * x[lex_rank(rho.compose(sigma).images())])
                .sum()
        })
        .collect())
}

/// Smallest eigenvalue of `[c(στ⁻¹)]`, the Hermitian form that must be
/// PSD for `c` to be a positive definite function on `S_n`.
pub fn positive_definite_function_min_eigenvalue(c: &[Complex64], n: usize) -> Result<f64> {
    let perms = all_permutations(n)?;
    if c.len() != perms.len() {
        return Err(Error::DimensionMismatch(format!("function with {} values on S_{n}", c.len())));
    }
    let size = perms.len();
    let inverses: Vec<_> = perms.iter().map(|p| p.inverse()).collect();
    let mut data = Vec::with_capacity(size * size);
    for sigma in &perms {
        for tau_inv in &inverses {
            data.push(c[lex_rank(sigma.compose(tau_inv).images())]);
        }
    }
    let m = match HermitianMatrix::new(CMatrix::from_vec_float(size, size, data)?) {
        Ok(m) => m,
        Err(Error::NotHermitian { .. }) => {
            return Err(Error::NotPositiveDefiniteFunction { min_eigenvalue: f64::NAN });
        }
        Err(e) => return Err(e),
    };
    Ok(eigenvalues(&m, None)?.min().unwrap_or(0.0))
}

/// Top eigenvalue of the isotypic block of `π(A)` for `λ`: any `λ` when
/// `n ≤ 6`, otherwise only `(n)` and `(n - 1, 1)`.
fn block_top(a: &PsdMatrix, lambda: &Partition, dense: Option<&IsotypicDecomposition>) -> Result<f64> {
    let n = a.n();
    if let Some(d) = dense {
        return Ok(d.block(lambda).expect("partition of n").top());
    }
    if *lambda == Partition::row(n) {
        return per(a.matrix());
    }
    if n >= 2 && *lambda == Partition::hook(n, n - 1)? {
        return standard_block_spectrum(a.hermitian(), None)?
            .max()
            .ok_or_else(|| Error::InvalidInput("empty block".into()));
    }
    Err(Error::TooLarge(format!("isotypic block {lambda} at order {n}")))
}

fn drury_excluded(lambda: &Partition) -> bool {
    let p32 = Partition::new(vec![3, 2]).expect("valid");
    let p71 = Partition::new(vec![7, 1]).expect("valid");
    ferrers_contains(lambda, &p32) || ferrers_contains(lambda, &p71)
}

/// Evaluates one conjecture on `A` (and the extra inputs in `params`).
///
/// Defaults: `B = conj(A)` for the Hadamard-product inequalities; leading
/// block `b = ⌊n/2⌋`; every irreducible character of `S_n` for PDC (worst
/// reported); every `k` for PATE08; every admissible partition for
/// DRURY_FERRERS; the top-eigenvector function for BS32.
pub fn check_conjecture(id: ConjectureId, a: &PsdMatrix, params: &Params, checker: &Checker) -> Result<ConjectureReport> {
    let n = a.n();
    let digest = input_digest(id.as_str(), a, params);
    let name = id.as_str();
    let m = a.matrix();
    match id {
        ConjectureId::Pdc => {
            let p = per(m)?;
            match &params.character {
                Some(chi) => Ok(checker.report(name, &digest, p, gmf(m, chi)?.re())),
                None => {
                    let sums = ClassSums::new(m)?;
                    let links = partitions(n)
                        .into_iter()
                        .map(|l| Ok((l.to_string(), p, sums.immanant(&l)?.re())))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(checker.worst(name, &digest, &links))
                }
            }
        }
        ConjectureId::MarNew => {
            let (b, _, d) = split_blocks(m, params.block.unwrap_or(default_block(n)))?;
            Ok(checker.report(name, &digest, per(m)?, per(&b)? * per(&d)?))
        }
        ConjectureId::Mar9 => {
            let k = params.k.unwrap_or(if n.is_multiple_of(2) { n / 2 } else { 1 });
            if k == 0 || !n.is_multiple_of(k) {
                return Err(Error::InvalidInput(format!("block size {k} does not divide {n}")));
            }
            let blocks = n / k;
            let mut g = Vec::with_capacity(blocks * blocks);
            for i in 0..blocks {
                for j in 0..blocks {
                    let rows: Vec<usize> = (i * k..(i + 1) * k).collect();
                    let cols: Vec<usize> = (j * k..(j + 1) * k).collect();
                    g.push(permanent(&m.select(&rows, &cols)?)?.value());
                }
            }
            let g = CMatrix::from_vec(blocks, blocks, g)?;
            Ok(checker
                .report(name, &digest, per(m)?, permanent(&g)?.re())
                .with_witness(json!({ "block_size": k, "blocks": blocks })))
        }
        ConjectureId::Pot => {
            let p = per(m)?;
            if n <= 6 {
                let d = isotypic_decomposition(a.hermitian())?;
                let top = d.top();
                let owners: Vec<String> = d.attribute(top).iter().map(ToString::to_string).collect();
                Ok(checker.report(name, &digest, p, top).with_witness(json!({
                    "partitions": owners,
                    "ambiguous": owners.len() > 1,
                })))
            } else {
                Ok(checker.report(name, &digest, p, schur_power_top_eigenvalue(a.hermitian())?))
            }
        }
        ConjectureId::Chollet | ConjectureId::Bs38 | ConjectureId::Beasley => {
            let (b, source) = second_matrix(a, params)?;
            let pab = per(&m.hadamard(b.matrix())?)?;
            let (pa, pb, ha, hb) = (per(m)?, per(b.matrix())?, h(m)?, h(b.matrix())?);
            let lhs = match id {
                ConjectureId::Chollet => pa * pb,
                ConjectureId::Bs38 => pa * hb,
                _ => (pa * hb).max(pb * ha),
            };
            Ok(checker.report(name, &digest, lhs, pab).with_witness(json!({ "b": source })))
        }
        ConjectureId::Bs32 => {
            let c = match &params.c_function {
                Some(c) => c.clone(),
                None => bs32_witness_function(a.hermitian())?,
            };
            let perms = all_permutations(n)?;
            if c.len() != perms.len() {
                return Err(Error::InvalidInput(format!("function with {} values on S_{n}", c.len())));
            }
            let mut flag = None;
            if n <= 5 {
                let min = positive_definite_function_min_eigenvalue(&c, n)?;
                let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max) * factorial(n) as f64;
                if !(min >= -checker.rel_tol * scale.max(1.0)) {
                    return Err(Error::NotPositiveDefiniteFunction { min_eigenvalue: min });
                }
            } else {
                flag = Some("positive definiteness of c not checked for n > 5".to_string());
            }
            let sum: Complex64 = perms
                .iter()
                .zip(&c)
                .map(|(sigma, ci)| ci * (0..n).map(|i| m.get(i, sigma.apply(i))).product::<Complex64>())
                .sum();
            let mut r = checker
                .report(name, &digest, c[0].re * per(m)?, sum.re)
                .with_witness(json!({ "imag_residual": sum.im.abs(), "c_identity": c[0].re }));
            r.flag = flag;
            Ok(r)
        }
        ConjectureId::Bs40 => {
            let p = per(m)?;
            let top = eigenvalues(&bs40_matrix(a.hermitian())?, None)?.max().unwrap_or(0.0);
            Ok(checker.report(name, &digest, p, top).with_witness(json!({ "ratio": top / p })))
        }
        ConjectureId::Pate08 => {
            let p = per(m)?;
            let ks: Vec<usize> = match params.k {
                Some(k) => vec![k],
                None => (1..=n).collect(),
            };
            let tops = ks
                .iter()
                .map(|&k| Ok(eigenvalues(&pate_c_matrix(a.hermitian(), k)?, None)?.max().unwrap_or(0.0)))
                .collect::<Result<Vec<f64>>>()?;
            let worst = tops.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let tol = checker.tolerance(p, worst);
            let pick = tops.iter().position(|&t| t >= worst - tol).expect("non-empty");
            let violating: Vec<usize> =
                ks.iter().zip(&tops).filter(|(_, &t)| p - t < -checker.tolerance(p, t)).map(|(k, _)| *k).collect();
            Ok(checker.report(name, &digest, p, tops[pick]).with_witness(json!({
                "k": ks[pick],
                "violating_k": violating,
            })))
        }
        ConjectureId::Pate08b => {
            if n < 2 {
                return Err(Error::InvalidInput("needs n >= 2".into()));
            }
            let term = |i: usize, j: usize| -> Result<Complex64> { Ok(m.get(i, j) * permanent(&m.minor(i, j)?)?.value()) };
            let rhs = term(0, 0)? - term(0, 1)? - term(1, 0)? + term(1, 1)?;
            Ok(checker.report(name, &digest, 2.0 * per(m)?, rhs.re))
        }
        ConjectureId::DruryFerrers => {
            let p = per(m)?;
            let dense = if n <= 6 { Some(isotypic_decomposition(a.hermitian())?) } else { None };
            let candidates: Vec<Partition> = match &params.partition {
                Some(l) => {
                    if l.size() != n {
                        return Err(Error::SizeMismatch(format!("{l} is not a partition of {n}")));
                    }
                    if drury_excluded(l) {
                        return Err(Error::InvalidInput(format!("{l} contains (3,2) or (7,1)")));
                    }
                    vec![l.clone()]
                }
                None => partitions(n)
                    .into_iter()
                    .filter(|l| !drury_excluded(l))
                    .filter(|l| n <= 6 || *l == Partition::row(n) || l.parts() == [n - 1, 1])
                    .collect(),
            };
            let links = candidates
                .iter()
                .map(|l| Ok((l.to_string(), p, block_top(a, l, dense.as_ref())?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(checker.worst(name, &digest, &links))
        }
    }
}
