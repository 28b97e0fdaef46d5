//! Integer partitions, their canonical ordering, and the scalar statistics
//! `z_λ`, `ε_λ` and `D^[d]_λ` attached to them.
//!
//! Every matrix in the crate is indexed by [`enumerate_partitions`], which
//! lists the partitions of `n` in descending reverse-lexicographic order:
//! `(n)` first, `(1^n)` last.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Int};

/// A weakly decreasing sequence of positive integers.
///
/// The empty partition (of 0) is a first-class value: it indexes the degree-0
/// corner of every transition matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from weakly decreasing positive parts.
    pub fn new(parts: Vec<u32>) -> Result<Self, Error> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Parse("partition parts must be positive".into()));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from arbitrary nonnegative entries by dropping
    /// zeros and sorting decreasingly.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|λ|`, the sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `ℓ(λ)`, the number of parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `n_k`, the number of parts equal to `k`.
    pub fn multiplicity(&self, k: u32) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }

    /// The conjugate partition `λ′` with `λ′_j = #{i : λ_i ≥ j}`.
    pub fn conjugate(&self) -> Partition {
        let len = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=len)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    /// Text form: comma-separated decreasing parts, empty string for the
    /// empty partition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid partition part: {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// The truncation parameter `d`: a finite positive integer or infinity.
///
/// `d = 1` degenerates to the elementary symmetric functions and
/// `d = ∞` to the complete homogeneous ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truncation {
    Finite(u32),
    Infinity,
}

impl Truncation {
    pub fn finite(d: u32) -> Result<Self, Error> {
        if d == 0 {
            return Err(Error::Parse("truncation must be at least 1".into()));
        }
        Ok(Truncation::Finite(d))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Truncation::Finite(_))
    }

    /// Largest per-variable exponent that matters below a total-degree cap.
    pub fn clamp(self, cap: u32) -> u32 {
        match self {
            Truncation::Finite(d) => d.min(cap),
            Truncation::Infinity => cap,
        }
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truncation::Finite(d) => write!(f, "{d}"),
            Truncation::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Truncation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Truncation::Infinity);
        }
        let d = s
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("invalid truncation: {s:?}")))?;
        Truncation::finite(d)
    }
}

/// All partitions of `n` in descending reverse-lexicographic order, `(n)`
/// first and `(1^n)` last. This is the single canonical order used by every
/// matrix in the crate.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    descend(n, n, &mut stack, &mut out);
    out
}

fn descend(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: stack.clone(),
        });
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        stack.push(part);
        descend(remaining - part, part, stack, out);
        stack.pop();
    }
}

/// Position of `λ` within `enumerate_partitions(|λ|)`.
pub fn canonical_index(lambda: &Partition) -> usize {
    enumerate_partitions(lambda.weight())
        .iter()
        .position(|mu| mu == lambda)
        .expect("every partition occurs in its canonical enumeration")
}

/// `z_λ = ∏ k^{n_k} · n_k!`, the centralizer order of cycle type `λ`.
pub fn z(lambda: &Partition) -> Int {
    let mut acc = Int::from(1);
    let mut k = 0;
    let mut run = 0u32;
    for &p in lambda.parts() {
        if p == k {
            run += 1;
        } else {
            k = p;
            run = 1;
        }
        // contributes k for the new copy and the factorial step run
        acc *= Int::from(k) * Int::from(run);
    }
    acc
}

/// `ε_λ = (−1)^{|λ|−ℓ(λ)}`, the sign character at cycle type `λ`.
pub fn epsilon(lambda: &Partition) -> i32 {
    if (lambda.weight() as usize - lambda.length()) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `D^[d]_λ = (−d)^{Σ_k n_{k(d+1)}}` for finite `d`, and `1` for `d = ∞`.
///
/// `D^[1]_λ = ε_λ` and `D^[∞]_λ = 1`.
pub fn d_coefficient(lambda: &Partition, d: Truncation) -> Int {
    match d {
        Truncation::Infinity => Int::from(1),
        Truncation::Finite(d) => {
            let exponent = lambda
                .parts()
                .iter()
                .filter(|&&p| p % (d + 1) == 0)
                .count() as u32;
            Int::from(-(d as i64)).pow(exponent)
        }
    }
}

/// All ordered tuples `(μ^1, …, μ^{ℓ(λ)})` with `μ^i ⊢ λ_i` whose sorted
/// concatenation equals `μ`. Equal parts of `λ` give distinct tuple slots.
pub fn refinement_tuples(
    lambda: &Partition,
    mu: &Partition,
) -> Result<Vec<Vec<Partition>>, Error> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch(lambda.weight(), mu.weight()));
    }
    let mut pool: Vec<u32> = mu.parts().to_vec();
    let mut chosen = Vec::new();
    let mut out = Vec::new();
    fill_slots(lambda.parts(), &mut pool, &mut chosen, &mut out);
    Ok(out)
}

fn fill_slots(
    slots: &[u32],
    pool: &mut Vec<u32>,
    chosen: &mut Vec<Partition>,
    out: &mut Vec<Vec<Partition>>,
) {
    let Some((&slot, rest)) = slots.split_first() else {
        if pool.is_empty() {
            out.push(chosen.clone());
        }
        return;
    };
    for candidate in enumerate_partitions(slot) {
        if !take_from_pool(pool, candidate.parts()) {
            continue;
        }
        chosen.push(candidate.clone());
        fill_slots(rest, pool, chosen, out);
        chosen.pop();
        pool.extend_from_slice(candidate.parts());
        pool.sort_unstable_by(|a, b| b.cmp(a));
    }
}

fn take_from_pool(pool: &mut Vec<u32>, parts: &[u32]) -> bool {
    let snapshot = pool.clone();
    for &p in parts {
        match pool.iter().position(|&q| q == p) {
            Some(idx) => {
                pool.remove(idx);
            }
            None => {
                *pool = snapshot;
                return false;
            }
        }
    }
    true
}
