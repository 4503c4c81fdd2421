use std::fmt;

use super::{write_letters, TreeConfig, VertexAddress};
use crate::error::TreeError;

/// Result of comparing two infinite words: either they share a finite prefix
/// of the given length, or they are the same word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LcpDepth {
    Finite(usize),
    Infinite,
}

/// An eventually periodic boundary point `preperiod · period^∞`, kept in
/// canonical form: the period is primitive and the last letter of the
/// preperiod differs from the last letter of the period.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryAddress {
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

impl TreeConfig {
    /// Validates the induced infinite word and returns its canonical form.
    pub fn canonical_boundary(
        self,
        preperiod: Vec<u32>,
        period: Vec<u32>,
    ) -> Result<BoundaryAddress, TreeError> {
        if period.is_empty() {
            return Err(TreeError::EmptyPeriod);
        }
        for (i, &c) in preperiod.iter().enumerate() {
            self.check_letter(i, c)?;
        }
        // Period letters recur at positions >= 1.
        for (i, &c) in period.iter().enumerate() {
            self.check_letter((preperiod.len() + i).max(1), c)?;
        }
        Ok(BoundaryAddress::canonicalize(preperiod, period))
    }

    pub fn check_boundary(self, p: &BoundaryAddress) -> Result<(), TreeError> {
        self.canonical_boundary(p.preperiod.clone(), p.period.clone())
            .map(|_| ())
    }
}

fn primitive_root(period: &[u32]) -> &[u32] {
    let len = period.len();
    (1..=len)
        .filter(|d| len.is_multiple_of(*d))
        .find(|&d| period.chunks(d).all(|c| c == &period[..d]))
        .map(|d| &period[..d])
        .unwrap_or(period)
}

impl BoundaryAddress {
    /// Canonical form of `preperiod · period^∞` without letter validation.
    pub(crate) fn canonicalize(mut preperiod: Vec<u32>, period: Vec<u32>) -> Self {
        let mut period = primitive_root(&period).to_vec();
        while let (Some(&a), Some(&b)) = (preperiod.last(), period.last()) {
            if a != b {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        BoundaryAddress { preperiod, period }
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    /// Letter at position `i` of the infinite word.
    pub fn letter(&self, i: usize) -> u32 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// The first `k` letters of the infinite word.
    pub fn word_prefix(&self, k: usize) -> Vec<u32> {
        (0..k).map(|i| self.letter(i)).collect()
    }

    /// The depth-`k` vertex on the ray from the root to this point.
    pub fn ray_prefix(&self, k: usize) -> VertexAddress {
        VertexAddress::new(self.word_prefix(k))
    }

    /// Length of an unrolled prefix, aligned to the period, that covers at least `k` letters.
    pub(crate) fn aligned_length(&self, k: usize) -> usize {
        let pre = self.preperiod.len();
        let per = self.period.len();
        if k <= pre {
            pre
        } else {
            pre + (k - pre).div_ceil(per) * per
        }
    }

    pub fn lcp_depth(&self, other: &BoundaryAddress) -> LcpDepth {
        if self == other {
            return LcpDepth::Infinite;
        }
        // Two eventually periodic words agreeing this far agree everywhere (Fine–Wilf).
        let bound = self.preperiod.len().max(other.preperiod.len())
            + self.period.len()
            + other.period.len();
        match (0..bound).find(|&i| self.letter(i) != other.letter(i)) {
            Some(i) => LcpDepth::Finite(i),
            None => unreachable!("distinct canonical boundary words agree on {bound} letters"),
        }
    }

    /// Common-prefix length with a finite word.
    pub fn lcp_with_vertex(&self, v: &VertexAddress) -> usize {
        v.letters()
            .iter()
            .enumerate()
            .take_while(|&(i, &c)| self.letter(i) == c)
            .count()
    }
}

impl fmt::Display for BoundaryAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("b:")?;
        write_letters(f, &self.preperiod)?;
        f.write_str(";")?;
        write_letters(f, &self.period)
    }
}
