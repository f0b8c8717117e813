//! Integer partitions and n-labeled partitions.
//!
//! A [`LabeledPartition`] is a sequence of `n` (possibly empty) partitions;
//! its weight is the sum of the slot weights. These index the creation and
//! annihilation words of the rank-n Heisenberg algebra.
//!
//! Enumeration order is fixed: partitions are listed in decreasing
//! lexicographic order of their non-increasing part lists (`{4}, {3,1},
//! {2,2}, ...`), and labeled partitions by decreasing weight of the earlier
//! slots first.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite multiset of positive integers, stored non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Distinct part sizes (descending) with their multiplicities.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `prod_l l^{m_l} * m_l!` over distinct part sizes `l`.
    pub fn symmetry_factor(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (part, mult) in self.multiplicities() {
            for k in 1..=mult {
                acc *= BigUint::from(part) * BigUint::from(k);
            }
        }
        acc
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// A sequence of exactly `n` partitions. Serializes as `[[2,1],[],[1]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LabeledPartition {
    slots: Vec<Partition>,
}

impl LabeledPartition {
    pub fn new(slots: Vec<Partition>) -> Self {
        Self { slots }
    }

    pub fn from_parts(slots: Vec<Vec<u32>>) -> Result<Self> {
        slots
            .into_iter()
            .map(Partition::new)
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn empty(n: usize) -> Self {
        Self {
            slots: vec![Partition::empty(); n],
        }
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Partition] {
        &self.slots
    }

    pub fn weight(&self) -> u64 {
        self.slots.iter().map(Partition::weight).sum()
    }

    pub fn symmetry_factor(&self) -> BigUint {
        symmetry_factor(self)
    }
}

impl fmt::Display for LabeledPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

fn partitions_bounded(m: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if m == 0 {
        out.push(Partition { parts: prefix.clone() });
        return;
    }
    for first in (1..=m.min(max_part)).rev() {
        prefix.push(first);
        partitions_bounded(m - first, first, prefix, out);
        prefix.pop();
    }
}

/// Every partition of `m` exactly once.
pub fn enumerate_partitions(m: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    partitions_bounded(m, m, &mut Vec::new(), &mut out);
    out
}

/// Every n-labeled partition of weight `m` exactly once.
pub fn enumerate_labeled_partitions(n: usize, m: u32) -> Vec<LabeledPartition> {
    if n == 0 {
        return if m == 0 {
            vec![LabeledPartition::empty(0)]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for w in (0..=m).rev() {
        let heads = enumerate_partitions(w);
        let tails = enumerate_labeled_partitions(n - 1, m - w);
        for h in &heads {
            for t in &tails {
                let mut slots = Vec::with_capacity(n);
                slots.push(h.clone());
                slots.extend(t.slots.iter().cloned());
                out.push(LabeledPartition { slots });
            }
        }
    }
    out
}

/// `p_0, ..., p_max` by the standard part-by-part recurrence.
pub fn partition_counts(max: usize) -> Vec<BigUint> {
    let mut counts = vec![BigUint::zero(); max + 1];
    counts[0] = BigUint::one();
    for part in 1..=max {
        for s in part..=max {
            let add = counts[s - part].clone();
            counts[s] += add;
        }
    }
    counts
}

/// `p^n_0, ..., p^n_max`: the n-fold convolution power of the partition counts.
pub fn labeled_partition_counts(n: usize, max: usize) -> Vec<BigUint> {
    let base = partition_counts(max);
    let mut acc = vec![BigUint::zero(); max + 1];
    acc[0] = BigUint::one();
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); max + 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in base.iter().enumerate().take(max + 1 - i) {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

pub fn labeled_partition_count(n: usize, m: usize) -> BigUint {
    labeled_partition_counts(n, m).pop().unwrap_or_default()
}

/// Product of the slot symmetry factors.
pub fn symmetry_factor(sigma: &LabeledPartition) -> BigUint {
    sigma
        .slots
        .iter()
        .map(Partition::symmetry_factor)
        .fold(BigUint::one(), |a, b| a * b)
}
