use num_traits::One;

use super::portrait::FinitaryPortrait;
use crate::error::{AutError, TreeError};
use crate::tree::axis::shift_word;
use crate::tree::{BoundaryAddress, EdgeRef, Point, TreeConfig, VertexAddress};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Generator {
    Portrait(FinitaryPortrait),
    /// Unit step along the canonical axis toward `0^∞`.
    Sigma,
    SigmaInv,
}

/// Moves a boundary point `delta` steps along the canonical axis. The two
/// axis endpoints are fixed.
fn shift_boundary(p: &BoundaryAddress, delta: i64) -> BoundaryAddress {
    let departure = if p.letter(0) >= 2 {
        Some(0)
    } else {
        let bound = p.preperiod().len().max(1) + p.period().len();
        (1..bound).find(|&i| p.letter(i) != 0)
    };
    match departure {
        None => p.clone(),
        Some(i) => {
            let len = p.aligned_length(i + 1);
            let head = shift_word(&p.word_prefix(len), delta);
            BoundaryAddress::canonicalize(head, p.period().to_vec())
        }
    }
}

impl Generator {
    pub fn inverse(&self) -> Generator {
        match self {
            Generator::Portrait(p) => Generator::Portrait(p.inverse()),
            Generator::Sigma => Generator::SigmaInv,
            Generator::SigmaInv => Generator::Sigma,
        }
    }

    pub fn apply_vertex(&self, v: &VertexAddress) -> VertexAddress {
        match self {
            Generator::Portrait(p) => p.apply(v),
            Generator::Sigma => VertexAddress::new(shift_word(v.letters(), 1)),
            Generator::SigmaInv => VertexAddress::new(shift_word(v.letters(), -1)),
        }
    }

    pub fn apply_boundary(&self, b: &BoundaryAddress) -> BoundaryAddress {
        match self {
            Generator::Portrait(p) => {
                // Letters at or beyond the portrait depth are untouched.
                let len = b.aligned_length(p.depth());
                let head = p.apply_letters(&b.word_prefix(len));
                BoundaryAddress::canonicalize(head, b.period().to_vec())
            }
            Generator::Sigma => shift_boundary(b, 1),
            Generator::SigmaInv => shift_boundary(b, -1),
        }
    }
}

/// An automorphism as a product of generators, applied right to left: the
/// last generator acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AutWord {
    tree: TreeConfig,
    gens: Vec<Generator>,
}

impl AutWord {
    pub fn new(tree: TreeConfig, gens: Vec<Generator>) -> Result<Self, AutError> {
        for g in &gens {
            if let Generator::Portrait(p) = g {
                if p.tree() != tree {
                    return Err(
                        TreeError::ValencyMismatch(p.tree().valency(), tree.valency()).into(),
                    );
                }
            }
        }
        Ok(AutWord { tree, gens })
    }

    pub fn identity(tree: TreeConfig) -> Self {
        AutWord {
            tree,
            gens: Vec::new(),
        }
    }

    pub fn sigma(tree: TreeConfig) -> Self {
        AutWord {
            tree,
            gens: vec![Generator::Sigma],
        }
    }

    pub fn sigma_inv(tree: TreeConfig) -> Self {
        AutWord {
            tree,
            gens: vec![Generator::SigmaInv],
        }
    }

    pub fn portrait(p: FinitaryPortrait) -> Self {
        AutWord {
            tree: p.tree(),
            gens: vec![Generator::Portrait(p)],
        }
    }

    pub fn tree(&self) -> TreeConfig {
        self.tree
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn is_identity_word(&self) -> bool {
        self.gens.is_empty()
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &AutWord) -> AutWord {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        AutWord {
            tree: self.tree,
            gens,
        }
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &AutWord) -> AutWord {
        self.compose(other).compose(&self.invert())
    }

    pub fn power(&self, k: usize) -> AutWord {
        (0..k).fold(AutWord::identity(self.tree), |acc, _| acc.compose(self))
    }

    pub fn invert(&self) -> AutWord {
        AutWord {
            tree: self.tree,
            gens: self.gens.iter().rev().map(Generator::inverse).collect(),
        }
    }

    pub fn apply_vertex(&self, v: &VertexAddress) -> VertexAddress {
        self.gens
            .iter()
            .rev()
            .fold(v.clone(), |x, g| g.apply_vertex(&x))
    }

    pub fn apply_boundary(&self, b: &BoundaryAddress) -> BoundaryAddress {
        self.gens
            .iter()
            .rev()
            .fold(b.clone(), |x, g| g.apply_boundary(&x))
    }

    pub fn apply_point(&self, p: &Point) -> Point {
        match p {
            Point::Vertex(v) => Point::Vertex(self.apply_vertex(v)),
            Point::Boundary(b) => Point::Boundary(self.apply_boundary(b)),
            Point::OnEdge(e, t) => {
                let parent = self.apply_vertex(&e.parent());
                let child = self.apply_vertex(e.child());
                let image =
                    EdgeRef::between(&parent, &child).expect("automorphisms preserve edges");
                if image.child() == &child {
                    Point::OnEdge(image, t.clone())
                } else {
                    Point::OnEdge(image, Rational::one() - t)
                }
            }
        }
    }

    /// `d(v, g·v)`.
    pub fn displacement(&self, v: &VertexAddress) -> usize {
        v.distance(&self.apply_vertex(v))
    }
}
