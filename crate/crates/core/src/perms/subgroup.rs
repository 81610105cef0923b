// SPDX-License-Identifier: Apache-2.0

use std::collections::{HashMap, HashSet, VecDeque};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::characters::{character_table, mn_character};
use super::partition::Partition;
use super::{all_permutations, Permutation, MAX_FULL_ORDER};
use crate::error::{Error, Result};

/// Built-in subgroup/character pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgroupKind {
    /// `S_n` with the irreducible character `χ_λ`.
    FullSn(Partition),
    /// The trivial group `{ι}` on `n` points.
    Trivial(usize),
    /// Young subgroup `S_{c1} × S_{c2} × ...` on consecutive blocks, trivial character.
    Young(Vec<usize>),
    /// `A_4` with the linear character taking `(12)(34) ↦ 1` and `(234) ↦ e^{2πi/3}`.
    A4James,
}

/// A subgroup of `S_n` as an explicit element list with one character value per element.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterSpec {
    n: usize,
    elements: Vec<Permutation>,
    values: Vec<Complex64>,
    exact_values: Option<Vec<i64>>,
    degree: u64,
}

impl CharacterSpec {
    /// Validates the group axioms and the class-function property.
    pub fn new(n: usize, elements: Vec<Permutation>, values: Vec<Complex64>) -> Result<Self> {
        if elements.len() != values.len() {
            return Err(Error::SizeMismatch(format!(
                "{} elements but {} character values",
                elements.len(),
                values.len()
            )));
        }
        if let Some(p) = elements.iter().find(|p| p.n() != n) {
            return Err(Error::SizeMismatch(format!("element {p} does not act on {n} points")));
        }
        let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let id = index
            .get(&Permutation::identity(n))
            .ok_or_else(|| Error::InvalidInput("identity missing from subgroup".into()))?;
        let deg = values[*id];
        if deg.im.abs() > 1e-12 || deg.re < 0.5 || (deg.re - deg.re.round()).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("character degree {deg} is not a positive integer")));
        }
        for g in &elements {
            if !index.contains_key(&g.inverse()) {
                return Err(Error::InvalidInput(format!("inverse of {g} missing")));
            }
            for h in &elements {
                let gh = g.compose(h);
                if !index.contains_key(&gh) {
                    return Err(Error::InvalidInput(format!("{g}∘{h} missing: not closed")));
                }
                let conj = g.compose(h).compose(&g.inverse());
                let (a, b) = (values[index[h]], values[index[&conj]]);
                if (a - b).norm() > 1e-9 {
                    return Err(Error::InvalidInput(format!("values differ on conjugates {h} and {conj}")));
                }
            }
        }
        let exact_values = values
            .iter()
            .map(|z| (z.im == 0.0 && z.re.fract() == 0.0).then_some(z.re as i64))
            .collect();
        Ok(CharacterSpec { n, elements, values, exact_values, degree: deg.re.round() as u64 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Integer character values, when every value is an integer.
    pub fn exact_values(&self) -> Option<&[i64]> {
        self.exact_values.as_deref()
    }

    /// `χ(ι)`.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Builds one of the built-in subgroup/character pairs.
    pub fn from_kind(kind: &SubgroupKind) -> Result<Self> {
        match kind {
            SubgroupKind::FullSn(lambda) => full_sn(lambda),
            SubgroupKind::Trivial(n) => Ok(trusted(*n, vec![Permutation::identity(*n)], vec![1])),
            SubgroupKind::Young(blocks) => young(blocks),
            SubgroupKind::A4James => a4_james(),
        }
    }
}

fn trusted(n: usize, elements: Vec<Permutation>, values: Vec<i64>) -> CharacterSpec {
    let degree = elements
        .iter()
        .zip(&values)
        .find(|(p, _)| p.is_identity())
        .map(|(_, &v)| v as u64)
        .expect("identity present");
    CharacterSpec {
        n,
        values: values.iter().map(|&v| Complex64::new(v as f64, 0.0)).collect(),
        exact_values: Some(values),
        elements,
        degree,
    }
}

fn full_sn(lambda: &Partition) -> Result<CharacterSpec> {
    let n = lambda.size();
    if n > MAX_FULL_ORDER {
        return Err(Error::TooLarge(format!("S_{n}")));
    }
    let table = character_table(n)?;
    let row = table.row_of(lambda).expect("every partition of n has a row");
    let elements = all_permutations(n)?;
    let values = elements
        .iter()
        .map(|p| table.values[row][table.class_index(&p.cycle_type()).expect("class present")])
        .collect();
    debug_assert_eq!(mn_character(lambda, &Permutation::identity(n).cycle_type()).ok(), Some(table.degree(row)));
    Ok(trusted(n, elements, values))
}

fn young(blocks: &[usize]) -> Result<CharacterSpec> {
    if blocks.contains(&0) {
        return Err(Error::InvalidInput("Young subgroup blocks must be positive".into()));
    }
    let n: usize = blocks.iter().sum();
    if n > MAX_FULL_ORDER {
        return Err(Error::TooLarge(format!("Young subgroup on {n} points")));
    }
    let mut elements = vec![Permutation::identity(n)];
    let mut offset = 0;
    for &b in blocks {
        let block_perms = all_permutations(b)?;
        let mut next = Vec::with_capacity(elements.len() * block_perms.len());
        for e in &elements {
            for bp in &block_perms {
                let mut images = e.images().to_vec();
                for (i, &j) in bp.images().iter().enumerate() {
                    images[offset + i] = offset + j;
                }
                next.push(Permutation::from_images(images)?);
            }
        }
        elements = next;
        offset += b;
    }
    elements.sort();
    let values = vec![1; elements.len()];
    Ok(trusted(n, elements, values))
}

/// Generates `A_4` from `(12)(34)` and `(234)` and extends the generator
/// values multiplicatively along a breadth-first closure. Consistency of
/// the extension is checked, not assumed.
fn a4_james() -> Result<CharacterSpec> {
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let gens = [
        (Permutation::from_cycles(4, &[&[1, 2], &[3, 4]])?, Complex64::new(1.0, 0.0)),
        (Permutation::from_cycles(4, &[&[2, 3, 4]])?, omega),
    ];
    let mut value: HashMap<Permutation, Complex64> = HashMap::new();
    let id = Permutation::identity(4);
    value.insert(id.clone(), Complex64::new(1.0, 0.0));
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for (s, v) in &gens {
            let h = s.compose(&g);
            let hv = v * value[&g];
            match value.get(&h) {
                Some(&existing) if (existing - hv).norm() > 1e-9 => {
                    return Err(Error::InvalidInput("generator values do not define a character".into()))
                }
                Some(_) => {}
                None => {
                    value.insert(h.clone(), hv);
                    queue.push_back(h);
                }
            }
        }
    }
    let mut elements: Vec<Permutation> = value.keys().cloned().collect();
    elements.sort();
    let set: HashSet<&Permutation> = elements.iter().collect();
    for a in &elements {
        for b in &elements {
            let ab = a.compose(b);
            if !set.contains(&ab) || (value[&ab] - value[a] * value[b]).norm() > 1e-9 {
                return Err(Error::InvalidInput("A_4 character is not multiplicative".into()));
            }
        }
    }
    let values = elements.iter().map(|p| value[p]).collect();
    CharacterSpec::new(4, elements, values)
}
