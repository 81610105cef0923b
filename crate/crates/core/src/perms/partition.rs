// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer partition: non-increasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("partition {parts:?} is not non-increasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// `(n)`.
    pub fn row(n: usize) -> Self {
        Partition { parts: if n == 0 { vec![] } else { vec![n] } }
    }

    /// `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// Single hook `(k, 1^{n-k})`.
    pub fn hook(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidInput(format!("hook arm {k} out of range for n = {n}")));
        }
        let mut parts = vec![k];
        parts.extend(std::iter::repeat_n(1, n - k));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition { parts: (1..=width).map(|c| self.parts.iter().filter(|&&p| p >= c).count()).collect() }
    }

    /// `χ_λ(ι)` by the hook length formula.
    pub fn hook_length_degree(&self) -> u128 {
        let n = self.size();
        let conj = self.conjugate();
        let mut hooks: u128 = 1;
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks *= (row - j + conj.parts[j] - i - 1) as u128;
            }
        }
        (1..=n as u128).product::<u128>() / hooks
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `3,1,1`, `(3,1,1)` or `[3,1,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if inner.trim().is_empty() {
            return Ok(Partition { parts: vec![] });
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("partition '{s}': {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Conjugacy class of `S_n`: cycle lengths, fixed points included.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        Ok(CycleType { parts: Partition::new(parts)?.parts })
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        CycleType { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `ν`: number of cycles.
    pub fn cycle_count(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn as_partition(&self) -> Partition {
        Partition { parts: self.parts.clone() }
    }
}

impl From<&Partition> for CycleType {
    fn from(p: &Partition) -> Self {
        CycleType { parts: p.parts.clone() }
    }
}

impl TryFrom<Vec<usize>> for CycleType {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        CycleType::new(v)
    }
}

impl From<CycleType> for Vec<usize> {
    fn from(c: CycleType) -> Vec<usize> {
        c.parts
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_partition().fmt(f)
    }
}

/// All partitions of `n` in reverse-lexicographic order, starting at `(n)`.
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for p in (1..=remaining.min(max_part)).rev() {
        current.push(p);
        fill(remaining - p, p, current, out);
        current.pop();
    }
}

/// Dominance order: every prefix sum of `mu` is at least that of `lambda`.
pub fn majorizes(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.size() != lambda.size() {
        return Err(Error::SizeMismatch(format!("{mu} and {lambda} partition different integers")));
    }
    let (mut sm, mut sl) = (0, 0);
    for k in 0..mu.len().max(lambda.len()) {
        sm += mu.parts.get(k).copied().unwrap_or(0);
        sl += lambda.parts.get(k).copied().unwrap_or(0);
        if sm < sl {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the Ferrers diagram of `outer` contains that of `inner`:
/// `outer` has at least as many parts and `outer_i ≥ inner_i` for each `i`.
pub fn ferrers_contains(outer: &Partition, inner: &Partition) -> bool {
    outer.len() >= inner.len() && inner.parts.iter().zip(&outer.parts).all(|(i, o)| o >= i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Partition counts by the standard `p(n, k)` recurrence.
    fn partition_count_oracle(n: usize) -> usize {
        let mut table = vec![vec![0usize; n + 1]; n + 1];
        for k in 0..=n {
            table[0][k] = 1;
        }
        for m in 1..=n {
            for k in 1..=n {
                table[m][k] = table[m][k - 1] + if k <= m { table[m - k][k] } else { 0 };
            }
        }
        table[n][n]
    }

    #[test]
    fn enumeration_order() {
        assert_eq!(partitions(4), vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]);
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(0), vec![p(&[])]);
        for n in 0..=12 {
            assert_eq!(partitions(n).len(), partition_count_oracle(n));
        }
        assert_eq!(partitions(8).len(), 22);
    }

    #[test]
    fn majorization_examples() {
        for n in 1..=6 {
            for l in partitions(n) {
                assert!(majorizes(&Partition::row(n), &l).unwrap());
            }
        }
        assert!(!majorizes(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert!(majorizes(&p(&[3, 1]), &p(&[2, 2])).unwrap());
        assert!(majorizes(&p(&[3]), &p(&[2, 1, 1])).is_err());
    }

    #[test]
    fn majorization_is_partial_order() {
        for n in 1..=8 {
            let ps = partitions(n);
            for a in &ps {
                assert!(majorizes(a, a).unwrap());
                for b in &ps {
                    if a != b && majorizes(a, b).unwrap() {
                        assert!(!majorizes(b, a).unwrap());
                    }
                    for c in &ps {
                        if majorizes(a, b).unwrap() && majorizes(b, c).unwrap() {
                            assert!(majorizes(a, c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ferrers_containment() {
        assert!(!ferrers_contains(&p(&[7, 1]), &p(&[3, 2])));
        assert!(ferrers_contains(&p(&[4, 2, 1]), &p(&[3, 2])));
        assert!(ferrers_contains(&p(&[3, 2]), &p(&[3, 2])));
        assert!(!ferrers_contains(&p(&[6, 2]), &p(&[7, 1])));
    }

    #[test]
    fn parse_and_display() {
        let l: Partition = "3,1,1".parse().unwrap();
        assert_eq!(l, p(&[3, 1, 1]));
        assert_eq!(l.to_string(), "(3,1,1)");
        assert_eq!("(2,2)".parse::<Partition>().unwrap(), p(&[2, 2]));
        assert!("1,2".parse::<Partition>().is_err());
        assert_eq!(serde_json::to_string(&l).unwrap(), "[3,1,1]");
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(p(&[3, 2]).hook_length_degree(), 5);
        assert_eq!(p(&[2, 2]).hook_length_degree(), 2);
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }
}
