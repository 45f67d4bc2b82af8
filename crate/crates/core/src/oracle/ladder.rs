use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Single-mode ladder operators on the two modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    A,
    ADag,
    B,
    BDag,
}

/// Sparse real vector over two-mode Fock labels `(m, n)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseTwoMode {
    entries: BTreeMap<(usize, usize), f64>,
}

impl SparseTwoMode {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I: IntoIterator<Item = ((usize, usize), f64)>>(it: I) -> Self {
        let mut v = Self::new();
        for (key, c) in it {
            v.add_at(key, c);
        }
        v
    }

    pub fn add_at(&mut self, key: (usize, usize), c: f64) {
        if c != 0.0 {
            *self.entries.entry(key).or_insert(0.0) += c;
        }
    }

    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.entries.get(&(m, n)).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dot(&self, other: &SparseTwoMode) -> f64 {
        let (small, large) =
            if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.iter().map(|((m, n), c)| c * large.get(m, n)).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.values().map(|c| c * c).sum()
    }

    pub fn scaled(&self, s: f64) -> SparseTwoMode {
        SparseTwoMode { entries: self.entries.iter().map(|(k, v)| (*k, v * s)).collect() }
    }

    /// `self + s · other`
    pub fn plus_scaled(&self, other: &SparseTwoMode, s: f64) -> SparseTwoMode {
        let mut out = self.clone();
        for (key, c) in other.iter() {
            out.add_at(key, s * c);
        }
        out
    }

    pub fn max_labels(&self) -> (usize, usize) {
        self.entries.keys().fold((0, 0), |(a, b), &(m, n)| (a.max(m), b.max(n)))
    }
}

/// Ladder operators truncated to `m <= cap_a`, `n <= cap_b`.
///
/// Raising past a cap silently drops the amplitude, which is the usual
/// truncated-matrix behavior; callers that need exact results check headroom
/// with [`LadderRep::require_headroom`] first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LadderRep {
    pub cap_a: usize,
    pub cap_b: usize,
}

impl LadderRep {
    pub fn new(cap_a: usize, cap_b: usize) -> Self {
        LadderRep { cap_a, cap_b }
    }

    pub fn require_headroom(&self, max_a: usize, max_b: usize) -> Result<()> {
        if max_a > self.cap_a || max_b > self.cap_b {
            return Err(Error::Headroom(format!(
                "need Fock caps ({max_a}, {max_b}) but representation stops at ({}, {})",
                self.cap_a, self.cap_b
            )));
        }
        Ok(())
    }

    pub fn apply(&self, op: Ladder, v: &SparseTwoMode) -> SparseTwoMode {
        let mut out = SparseTwoMode::new();
        for ((m, n), c) in v.iter() {
            match op {
                Ladder::A if m > 0 => out.add_at((m - 1, n), c * (m as f64).sqrt()),
                Ladder::B if n > 0 => out.add_at((m, n - 1), c * (n as f64).sqrt()),
                Ladder::ADag if m < self.cap_a => out.add_at((m + 1, n), c * ((m + 1) as f64).sqrt()),
                Ladder::BDag if n < self.cap_b => out.add_at((m, n + 1), c * ((n + 1) as f64).sqrt()),
                _ => {}
            }
        }
        out
    }

    /// Applies `ops` in sequence, first element first (i.e. the rightmost
    /// factor of the operator product comes first).
    pub fn apply_seq(&self, ops: &[Ladder], v: &SparseTwoMode) -> SparseTwoMode {
        ops.iter().fold(v.clone(), |acc, &op| self.apply(op, &acc))
    }

    /// `Σ cᵢ opᵢ |v>`
    pub fn apply_combo(&self, combo: &[(f64, Ladder)], v: &SparseTwoMode) -> SparseTwoMode {
        combo
            .iter()
            .fold(SparseTwoMode::new(), |acc, &(c, op)| acc.plus_scaled(&self.apply(op, v), c))
    }
}
