// SPDX-License-Identifier: Apache-2.0

//! Symmetric-group combinatorics: permutations, partitions and cycle types,
//! irreducible characters, and subgroup/character specifications.

mod characters;
mod partition;
mod subgroup;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use characters::{character_table, class_size, mn_character, CharacterTable};
pub use partition::{ferrers_contains, majorizes, partitions, CycleType, Partition};
pub use subgroup::{CharacterSpec, SubgroupKind};

/// Largest order for which the full group is enumerated.
pub const MAX_FULL_ORDER: usize = 10;

/// Permutation of `{0, .., n-1}`, stored as its images.
/// Displayed 1-based in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidInput(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based one-line notation, e.g. `[2, 1, 3]`.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        if one_line.contains(&0) {
            return Err(Error::InvalidInput("one-line notation is 1-based".into()));
        }
        Self::from_images(one_line.iter().map(|&i| i - 1).collect())
    }

    /// From 1-based disjoint cycles, e.g. `&[&[1, 2], &[3, 4]]` for (12)(34).
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (k, &from) in cycle.iter().enumerate() {
                let to = cycle[(k + 1) % cycle.len()];
                if from == 0 || to == 0 || from > n || to > n {
                    return Err(Error::InvalidInput(format!("cycle entry out of range 1..={n}")));
                }
                images[from - 1] = to - 1;
            }
        }
        Self::from_images(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Cycle lengths including fixed points, sorted non-increasing.
    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_parts_unchecked(cycle_lengths(&self.images))
    }

    /// Number of disjoint cycles `ν(σ)`.
    pub fn cycle_count(&self) -> usize {
        cycle_lengths(&self.images).len()
    }

    pub fn sign(&self) -> i64 {
        if (self.n() - self.cycle_count()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Position in the lexicographic order of [`iterate_permutations`].
    pub fn lex_rank(&self) -> usize {
        lex_rank(&self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() > 9 { " " } else { "" };
        let s: Vec<String> = self.images.iter().map(|i| (i + 1).to_string()).collect();
        f.write_str(&s.join(sep))
    }
}

/// Cycle lengths of a permutation given by its images, non-increasing.
pub fn cycle_lengths(images: &[usize]) -> Vec<usize> {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut lengths = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = images[i];
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

/// Lehmer-code rank in lexicographic order.
pub fn lex_rank(images: &[usize]) -> usize {
    let n = images.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = images[i + 1..].iter().filter(|&&x| x < images[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic successor in place; false once the last permutation is reached.
pub fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Iterator over `S_n` in lexicographic order of one-line notation.
pub struct Permutations {
    current: Vec<usize>,
    done: bool,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = Permutation { images: self.current.clone() };
        self.done = !next_permutation(&mut self.current);
        Some(out)
    }
}

/// All `n!` permutations in lexicographic order. Rejects `n > 10`.
pub fn iterate_permutations(n: usize) -> Result<Permutations> {
    if n > MAX_FULL_ORDER {
        return Err(Error::TooLarge(format!("S_{n} has more than 10! elements")));
    }
    Ok(Permutations { current: (0..n).collect(), done: false })
}

/// The permutations of [`iterate_permutations`] collected into a vector.
pub fn all_permutations(n: usize) -> Result<Vec<Permutation>> {
    Ok(iterate_permutations(n)?.collect())
}
