// SPDX-License-Identifier: Apache-2.0

//! Irreducible characters of `S_n` by the Murnaghan–Nakayama rule.
//!
//! Border strips are removed on the beta-set (first-column hook lengths)
//! of the partition: a strip of length `k` corresponds to moving one bead
//! from `b` to an empty position `b - k`, with sign `(-1)^(beads jumped)`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::Serialize;

use super::partition::{partitions, CycleType, Partition};
use super::MAX_FULL_ORDER;
use crate::error::{Error, Result};

type MemoKey = (Vec<usize>, Vec<usize>);

fn memo() -> &'static RwLock<HashMap<MemoKey, i64>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, i64>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `χ_λ(ρ)`.
pub fn mn_character(lambda: &Partition, rho: &CycleType) -> Result<i64> {
    if lambda.size() != rho.size() {
        return Err(Error::SizeMismatch(format!(
            "character {lambda} evaluated on class {rho} of a different order"
        )));
    }
    Ok(mn(lambda.parts(), rho.parts()))
}

fn mn(lambda: &[usize], rho: &[usize]) -> i64 {
    let Some((&k, rest)) = rho.split_first() else {
        return 1;
    };
    let key = (lambda.to_vec(), rho.to_vec());
    if let Some(&v) = memo().read().expect("memo lock").get(&key) {
        return v;
    }
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let m = next.len();
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (m - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&shape, rest);
    }
    memo().write().expect("memo lock").insert(key, total);
    total
}

/// Size of the conjugacy class with cycle type `rho`:
/// `n! / Π_k k^{m_k} m_k!`.
pub fn class_size(rho: &CycleType) -> u128 {
    let n = rho.size();
    let mut denom: u128 = 1;
    let parts = rho.parts();
    let mut i = 0;
    while i < parts.len() {
        let k = parts[i];
        let m = parts[i..].iter().take_while(|&&p| p == k).count();
        denom *= (k as u128).pow(m as u32) * (1..=m as u128).product::<u128>();
        i += m;
    }
    (1..=n as u128).product::<u128>() / denom
}

/// Character table of `S_n`; rows are partitions, columns cycle types,
/// both in reverse-lexicographic order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    pub classes: Vec<CycleType>,
    pub class_sizes: Vec<u128>,
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn degree(&self, row: usize) -> i64 {
        // The identity class (1^n) is the last column.
        *self.values[row].last().expect("non-empty table")
    }

    pub fn class_index(&self, rho: &CycleType) -> Option<usize> {
        self.classes.iter().position(|c| c == rho)
    }

    pub fn row_of(&self, lambda: &Partition) -> Option<usize> {
        self.partitions.iter().position(|p| p == lambda)
    }
}

pub fn character_table(n: usize) -> Result<CharacterTable> {
    if n > MAX_FULL_ORDER {
        return Err(Error::TooLarge(format!("character table of S_{n}")));
    }
    let parts = partitions(n);
    let classes: Vec<CycleType> = parts.iter().map(CycleType::from).collect();
    let class_sizes = classes.iter().map(class_size).collect();
    let values = parts
        .iter()
        .map(|l| classes.iter().map(|c| mn(l.parts(), c.parts())).collect())
        .collect();
    Ok(CharacterTable { n, partitions: parts, classes, class_sizes, values })
}
