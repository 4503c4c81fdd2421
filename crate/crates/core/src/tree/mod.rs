//! Combinatorial model of the regular tree `T_n`.
//!
//! A vertex is the reduced word of child directions read from the base vertex
//! `x₀` (the empty word). The first letter ranges over `[0, n)`, every later
//! letter over `[0, n-1)`, so every word is locally valid and no backtracking
//! predicate is needed.

pub(crate) mod axis;
mod boundary;

use std::fmt;

use crate::error::TreeError;
use crate::Rational;

pub use axis::AxisCoordinate;
pub use boundary::{BoundaryAddress, LcpDepth};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeConfig {
    n: u32,
}

impl TreeConfig {
    pub fn new(n: u32) -> Result<Self, TreeError> {
        if n < 3 {
            return Err(TreeError::InvalidValency(n));
        }
        Ok(TreeConfig { n })
    }

    pub fn valency(self) -> u32 {
        self.n
    }

    /// Number of child directions at a vertex of the given depth.
    pub fn arity_at(self, depth: usize) -> u32 {
        if depth == 0 {
            self.n
        } else {
            self.n - 1
        }
    }

    pub(crate) fn check_letter(self, position: usize, letter: u32) -> Result<(), TreeError> {
        if letter < self.arity_at(position) {
            Ok(())
        } else {
            Err(TreeError::InvalidLetter {
                position,
                letter,
                n: self.n,
            })
        }
    }

    pub fn check_vertex(self, v: &VertexAddress) -> Result<(), TreeError> {
        v.letters()
            .iter()
            .enumerate()
            .try_for_each(|(i, &c)| self.check_letter(i, c))
    }

    pub fn check_point(self, p: &Point) -> Result<(), TreeError> {
        match p {
            Point::Vertex(v) => self.check_vertex(v),
            Point::OnEdge(e, _) => self.check_vertex(e.child()),
            Point::Boundary(b) => self.check_boundary(b),
        }
    }

    /// Common-prefix length of two addresses, after checking both against this tree.
    pub fn lcp_depth(self, u: &VertexAddress, v: &VertexAddress) -> Result<usize, TreeError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(u.lcp_depth(v))
    }

    pub fn children(self, v: &VertexAddress) -> impl Iterator<Item = VertexAddress> + '_ {
        (0..self.arity_at(v.depth())).map(move |c| v.child(c))
    }

    /// All vertices of depth at most `depth`, in shortlex order.
    pub fn vertices_up_to(self, depth: usize) -> Vec<VertexAddress> {
        let mut out = vec![VertexAddress::root()];
        let mut start = 0;
        for _ in 0..depth {
            let end = out.len();
            for i in start..end {
                let v = out[i].clone();
                out.extend(self.children(&v));
            }
            start = end;
        }
        out
    }

    /// All edges whose depth is strictly below `depth`, in shortlex order of the child.
    pub fn edges_below(self, depth: usize) -> Vec<EdgeRef> {
        self.vertices_up_to(depth)
            .into_iter()
            .filter(|v| v.depth() > 0)
            .map(EdgeRef)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexAddress(Vec<u32>);

impl VertexAddress {
    pub fn root() -> Self {
        VertexAddress(Vec::new())
    }

    pub fn new(letters: Vec<u32>) -> Self {
        VertexAddress(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parent(&self) -> Option<VertexAddress> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.prefix(self.0.len() - 1))
        }
    }

    pub fn child(&self, letter: u32) -> VertexAddress {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.extend_from_slice(&self.0);
        letters.push(letter);
        VertexAddress(letters)
    }

    pub fn prefix(&self, k: usize) -> VertexAddress {
        VertexAddress(self.0[..k].to_vec())
    }

    pub fn is_prefix_of(&self, other: &VertexAddress) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn lcp_depth(&self, other: &VertexAddress) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .take_while(|(a, b)| a == b)
            .count()
    }

    pub fn distance(&self, other: &VertexAddress) -> usize {
        self.depth() + other.depth() - 2 * self.lcp_depth(other)
    }

    /// Vertex path from `self` up to the common ancestor, then down to `other`.
    pub fn geodesic(&self, other: &VertexAddress) -> Vec<VertexAddress> {
        let l = self.lcp_depth(other);
        let mut path = Vec::with_capacity(self.distance(other) + 1);
        path.extend((l..=self.depth()).rev().map(|k| self.prefix(k)));
        path.extend((l + 1..=other.depth()).map(|k| other.prefix(k)));
        path
    }
}

impl std::borrow::Borrow<[u32]> for VertexAddress {
    fn borrow(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for VertexAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("v:")?;
        write_letters(f, &self.0)
    }
}

pub(crate) fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[u32]) -> fmt::Result {
    for (i, c) in letters.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

/// An edge, named by its deeper endpoint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef(VertexAddress);

impl EdgeRef {
    pub fn new(child: VertexAddress) -> Result<Self, TreeError> {
        if child.is_root() {
            return Err(TreeError::RootEdge);
        }
        Ok(EdgeRef(child))
    }

    pub fn child(&self) -> &VertexAddress {
        &self.0
    }

    pub fn parent(&self) -> VertexAddress {
        self.0.prefix(self.0.depth() - 1)
    }

    /// Combinatorial distance from the edge to the root.
    pub fn depth(&self) -> usize {
        self.0.depth() - 1
    }

    /// The edge joining two adjacent vertices.
    pub fn between(u: &VertexAddress, v: &VertexAddress) -> Option<EdgeRef> {
        if u.depth() + 1 == v.depth() && u.is_prefix_of(v) {
            Some(EdgeRef(v.clone()))
        } else if v.depth() + 1 == u.depth() && v.is_prefix_of(u) {
            Some(EdgeRef(u.clone()))
        } else {
            None
        }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A point of the compactified tree: a vertex, an interior point of an edge
/// (parameter `t` measured from the parent endpoint), or a boundary point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Vertex(VertexAddress),
    OnEdge(EdgeRef, Rational),
    Boundary(BoundaryAddress),
}

impl Point {
    pub fn on_edge(edge: EdgeRef, t: Rational) -> Result<Point, TreeError> {
        use num_traits::{One, Zero};
        if t <= Rational::zero() || t >= Rational::one() {
            return Err(TreeError::EdgeParameter);
        }
        Ok(Point::OnEdge(edge, t))
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, Point::Boundary(_))
    }
}

impl From<VertexAddress> for Point {
    fn from(v: VertexAddress) -> Self {
        Point::Vertex(v)
    }
}

impl From<BoundaryAddress> for Point {
    fn from(b: BoundaryAddress) -> Self {
        Point::Boundary(b)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Vertex(v) => write!(f, "{v}"),
            Point::OnEdge(e, t) => {
                f.write_str("e:")?;
                write_letters(f, e.child().letters())?;
                write!(f, "@{t}")
            }
            Point::Boundary(b) => write!(f, "{b}"),
        }
    }
}
