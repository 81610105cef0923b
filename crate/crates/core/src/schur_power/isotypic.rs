// SPDX-License-Identifier: Apache-2.0

//! Isotypic blocks of `π(A)` under right translation `(R_γ v)(σ) = v(σγ)`.
//!
//! `π(A)` commutes with every `R_γ`, so it preserves the image of each
//! central projector `P_λ = (d_λ / n!) Σ_γ χ_λ(γ) R_γ`. The projector is real
//! with entries `(d_λ / n!) χ_λ(σ⁻¹τ)`; an orthonormal basis `Q` of its
//! column space gives the block `Qᵀ π(A) Q`.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::Serialize;

use super::schur_power_matrix;
use crate::error::{Error, Result};
use crate::gmf::permanent;
use crate::matrices::{hermitian_eigen, HermitianMatrix, Spectrum, F17};
use crate::par;
use crate::perms::{all_permutations, character_table, cycle_lengths, factorial, Partition};

/// Largest order for the dense isotypic decomposition.
pub const MAX_ISOTYPIC_ORDER: usize = 6;
/// Relative distance within which an eigenvalue is attributed to a block.
pub const ATTRIBUTION_TOL: f64 = 1e-6;
const DROP_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct IsotypicReport {
    pub partition: Partition,
    /// `χ_λ(ι)²`, the dimension of the component.
    pub dimension: usize,
    pub top_eigenvalue: F17,
    /// Block spectrum, descending, each value repeated `χ_λ(ι)` times.
    pub eigenvalues: Vec<F17>,
    #[serde(rename = "per_A")]
    pub per_a: F17,
    pub exceeds_per: bool,
}

impl IsotypicReport {
    pub fn top(&self) -> f64 {
        self.top_eigenvalue.0
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.eigenvalues.iter().map(|x| x.0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotypicDecomposition {
    pub n: usize,
    #[serde(rename = "per_A")]
    pub per_a: F17,
    pub blocks: Vec<IsotypicReport>,
}

impl IsotypicDecomposition {
    pub fn block(&self, lambda: &Partition) -> Option<&IsotypicReport> {
        self.blocks.iter().find(|b| &b.partition == lambda)
    }

    /// Multiset union of the block spectra.
    pub fn union_spectrum(&self, cluster_tol: Option<f64>) -> Spectrum {
        Spectrum::from_values(self.blocks.iter().flat_map(|b| b.values()).collect(), cluster_tol)
    }

    /// Partitions whose block has an eigenvalue within [`ATTRIBUTION_TOL`]
    /// (relative) of `value`. More than one entry means the attribution is
    /// ambiguous.
    pub fn attribute(&self, value: f64) -> Vec<Partition> {
        let scale = value.abs().max(f64::MIN_POSITIVE);
        self.blocks
            .iter()
            .filter(|b| b.values().any(|x| (x - value).abs() <= ATTRIBUTION_TOL * scale))
            .map(|b| b.partition.clone())
            .collect()
    }

    /// The largest eigenvalue over all blocks.
    pub fn top(&self) -> f64 {
        self.blocks.iter().map(IsotypicReport::top).fold(f64::NEG_INFINITY, f64::max)
    }
}

fn exceeds(top: f64, per: f64) -> bool {
    top - per > 1e-9 * top.abs().max(per.abs()).max(1.0)
}

/// Block spectra of `π(A)` for every partition of `n ≤ 6`.
pub fn isotypic_decomposition(a: &HermitianMatrix) -> Result<IsotypicDecomposition> {
    let n = a.n();
    if n > MAX_ISOTYPIC_ORDER {
        return Err(Error::TooLarge(format!("dense isotypic decomposition of order {n}")));
    }
    let pi = schur_power_matrix(a)?;
    let size = factorial(n);
    let perms = all_permutations(n)?;
    let table = character_table(n)?;
    let class_of: HashMap<Vec<usize>, usize> =
        table.classes.iter().enumerate().map(|(k, c)| (c.parts().to_vec(), k)).collect();
    let inverses: Vec<_> = perms.iter().map(|p| p.inverse()).collect();
    // classes[s * size + t] = class of σ_s⁻¹ σ_t
    let classes: Vec<u8> = par::map_range(size, |s| {
        perms
            .iter()
            .map(|t| class_of[&cycle_lengths(inverses[s].compose(t).images())] as u8)
            .collect::<Vec<u8>>()
    })
    .concat();
    let per = permanent(a.matrix())?.re();
    let blocks = par::map_range(table.partitions.len(), |row| -> Result<IsotypicReport> {
        let d = table.degree(row) as usize;
        let coef: Vec<f64> =
            table.values[row].iter().map(|&x| d as f64 * x as f64 / size as f64).collect();
        let basis = component_basis(size, d * d, |s, t| coef[classes[s * size + t] as usize])?;
        let images: Vec<Vec<Complex64>> = basis
            .iter()
            .map(|q| pi.matrix().matvec(&q.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>()))
            .collect();
        let m = basis.len();
        let mut block = vec![Complex64::new(0.0, 0.0); m * m];
        for i in 0..m {
            for j in i..m {
                let v: Complex64 = basis[i].iter().zip(&images[j]).map(|(q, y)| y * q).sum();
                block[i * m + j] = v;
            }
        }
        let mut values = hermitian_eigen(block, m)?;
        values.sort_by(|x, y| y.total_cmp(x));
        let top = values.first().copied().unwrap_or(f64::NEG_INFINITY);
        Ok(IsotypicReport {
            partition: table.partitions[row].clone(),
            dimension: d * d,
            top_eigenvalue: F17(top),
            eigenvalues: values.into_iter().map(F17).collect(),
            per_a: F17(per),
            exceeds_per: exceeds(top, per),
        })
    });
    Ok(IsotypicDecomposition { n, per_a: F17(per), blocks: blocks.into_iter().collect::<Result<_>>()? })
}

/// Orthonormal basis of the column space of the `size × size` matrix
/// `entry(s, t)`, by greedy Gram–Schmidt over its columns.
fn component_basis(size: usize, rank: usize, entry: impl Fn(usize, usize) -> f64) -> Result<Vec<Vec<f64>>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(rank);
    for t in 0..size {
        if basis.len() == rank {
            break;
        }
        let mut col: Vec<f64> = (0..size).map(|s| entry(s, t)).collect();
        let start = col.iter().map(|x| x * x).sum::<f64>().sqrt();
        if start == 0.0 {
            continue;
        }
        for _ in 0..2 {
            for q in &basis {
                let c: f64 = q.iter().zip(&col).map(|(a, b)| a * b).sum();
                col.iter_mut().zip(q).for_each(|(x, qi)| *x -= c * qi);
            }
        }
        let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > DROP_TOL * start {
            basis.push(col.into_iter().map(|x| x / norm).collect());
        }
    }
    if basis.len() != rank {
        return Err(Error::InvalidInput(format!("isotypic basis has rank {} instead of {rank}", basis.len())));
    }
    Ok(basis)
}
