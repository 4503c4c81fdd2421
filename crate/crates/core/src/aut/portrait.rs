use std::collections::BTreeMap;
use std::fmt;

use crate::error::AutError;
use crate::tree::{TreeConfig, VertexAddress};

/// A bijection of the child directions at one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalPermutation {
    images: Vec<u32>,
}

impl LocalPermutation {
    pub fn new(images: Vec<u32>) -> Result<Self, AutError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            match seen.get_mut(x as usize) {
                Some(slot) if !*slot => *slot = true,
                _ => return Err(AutError::NotABijection(images)),
            }
        }
        Ok(LocalPermutation { images })
    }

    pub fn identity(k: usize) -> Self {
        LocalPermutation {
            images: (0..k as u32).collect(),
        }
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn arity(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, c: u32) -> u32 {
        self.images[c as usize]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        LocalPermutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }
}

impl fmt::Display for LocalPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::tree::write_letters(f, &self.images)
    }
}

/// A root-stabilizing automorphism given by local permutations at finitely
/// many vertices; every other vertex carries the identity.
///
/// The letter at position `i` of a word is relabeled by the permutation
/// stored at the word's own (input) prefix of length `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitaryPortrait {
    tree: TreeConfig,
    perms: BTreeMap<VertexAddress, LocalPermutation>,
}

impl FinitaryPortrait {
    /// Identity entries are dropped, so equal actions at stored vertices give
    /// equal portraits.
    pub fn new(
        tree: TreeConfig,
        perms: BTreeMap<VertexAddress, LocalPermutation>,
    ) -> Result<Self, AutError> {
        for (u, p) in &perms {
            tree.check_vertex(u)?;
            let expected = tree.arity_at(u.depth()) as usize;
            if p.arity() != expected {
                return Err(AutError::ArityMismatch {
                    address: u.to_string(),
                    expected,
                    found: p.arity(),
                });
            }
        }
        let perms = perms
            .into_iter()
            .filter(|(_, p)| !p.is_identity())
            .collect();
        Ok(FinitaryPortrait { tree, perms })
    }

    pub fn identity(tree: TreeConfig) -> Self {
        FinitaryPortrait {
            tree,
            perms: BTreeMap::new(),
        }
    }

    /// Portrait with a single permutation at the root.
    pub fn at_root(tree: TreeConfig, images: Vec<u32>) -> Result<Self, AutError> {
        let p = LocalPermutation::new(images)?;
        Self::new(tree, BTreeMap::from([(VertexAddress::root(), p)]))
    }

    pub fn tree(&self) -> TreeConfig {
        self.tree
    }

    pub fn perms(&self) -> &BTreeMap<VertexAddress, LocalPermutation> {
        &self.perms
    }

    /// One more than the deepest non-identity vertex; letters at or beyond
    /// this position are never changed.
    pub fn depth(&self) -> usize {
        self.perms.keys().map(|u| u.depth() + 1).max().unwrap_or(0)
    }

    pub fn apply_letters(&self, letters: &[u32]) -> Vec<u32> {
        let depth = self.depth();
        letters
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                if i >= depth {
                    return c;
                }
                match self.perms.get(&letters[..i]) {
                    Some(p) => p.apply(c),
                    None => c,
                }
            })
            .collect()
    }

    pub fn apply(&self, v: &VertexAddress) -> VertexAddress {
        VertexAddress::new(self.apply_letters(v.letters()))
    }

    /// The inverse carries, at the image `φ(u)`, the inverse of the permutation at `u`.
    pub fn inverse(&self) -> Self {
        let perms = self
            .perms
            .iter()
            .map(|(u, p)| (self.apply(u), p.inverse()))
            .collect();
        FinitaryPortrait {
            tree: self.tree,
            perms,
        }
    }
}
