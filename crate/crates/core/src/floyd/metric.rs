use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};

use super::sum::tail_sum;
use super::{Enclosure, FloydFunction};
use crate::error::FloydError;
use crate::tree::{BoundaryAddress, EdgeRef, LcpDepth, Point, TreeConfig, VertexAddress};
use crate::Rational;

/// A Floyd metric: the tree, the edge-length profile, and the vertex the
/// edge depths are measured from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricSpec {
    pub tree: TreeConfig,
    pub h: FloydFunction,
    pub base: VertexAddress,
}

impl MetricSpec {
    pub fn rooted(tree: TreeConfig, h: FloydFunction) -> Self {
        MetricSpec {
            tree,
            h,
            base: VertexAddress::root(),
        }
    }

    pub fn with_base(
        tree: TreeConfig,
        h: FloydFunction,
        base: VertexAddress,
    ) -> Result<Self, FloydError> {
        tree.check_vertex(&base)?;
        Ok(MetricSpec { tree, h, base })
    }

    /// Combinatorial distance from the edge to the base vertex.
    pub fn edge_depth(&self, e: &EdgeRef) -> usize {
        e.parent()
            .distance(&self.base)
            .min(e.child().distance(&self.base))
    }

    pub fn edge_length(&self, e: &EdgeRef) -> Rational {
        self.h.at(self.edge_depth(e))
    }
}

/// A finite or infinite letter word read from the root.
#[derive(Clone, Copy)]
enum Word<'a> {
    Finite(&'a VertexAddress),
    Infinite(&'a BoundaryAddress),
}

impl Word<'_> {
    fn lcp(self, other: Word<'_>) -> LcpDepth {
        match (self, other) {
            (Word::Finite(u), Word::Finite(v)) => LcpDepth::Finite(u.lcp_depth(v)),
            (Word::Finite(v), Word::Infinite(p)) | (Word::Infinite(p), Word::Finite(v)) => {
                LcpDepth::Finite(p.lcp_with_vertex(v))
            }
            (Word::Infinite(p), Word::Infinite(q)) => p.lcp_depth(q),
        }
    }
}

/// Evaluator for one metric at one tolerance. Tail sums are memoized, so a
/// single evaluator should be reused across many distance queries.
#[derive(Debug)]
pub struct FloydMetric {
    spec: MetricSpec,
    tol: Rational,
    tails: Mutex<HashMap<usize, Enclosure>>,
}

impl FloydMetric {
    pub fn new(spec: MetricSpec, tol: Rational) -> Result<Self, FloydError> {
        if tol <= Rational::zero() {
            return Err(FloydError::InvalidTolerance);
        }
        Ok(FloydMetric {
            spec,
            tol,
            tails: Mutex::new(HashMap::new()),
        })
    }

    pub fn spec(&self) -> &MetricSpec {
        &self.spec
    }

    pub fn tolerance(&self) -> &Rational {
        &self.tol
    }

    /// `S(from)`; a distance has at most two tails, each gets half the budget.
    fn tail(&self, from: usize) -> Result<Enclosure, FloydError> {
        if let Some(s) = self.tails.lock().unwrap().get(&from) {
            return Ok(s.clone());
        }
        let half = &self.tol / Rational::from_integer(2.into());
        let s = tail_sum(&self.spec.h, from, &half)?;
        self.tails.lock().unwrap().insert(from, s.clone());
        Ok(s)
    }

    /// Total length of the edges of `w` whose child lies deeper than `from`.
    fn branch(&self, w: Word<'_>, from: usize) -> Result<Enclosure, FloydError> {
        let base = &self.spec.base;
        let b = base.depth();
        let shared = match w {
            Word::Finite(v) => v.lcp_depth(base),
            Word::Infinite(p) => p.lcp_with_vertex(base),
        };
        // Edges above the branch point toward the base get shallower, edges
        // past it get deeper.
        let edge_depth = |k: usize| {
            if k <= shared {
                b - k
            } else {
                b + k - 1 - 2 * shared
            }
        };
        let explicit_end = match w {
            Word::Finite(v) => v.depth(),
            Word::Infinite(_) => from.max(shared),
        };
        let finite = (from + 1..=explicit_end).fold(Rational::zero(), |acc, k| {
            acc + self.spec.h.at(edge_depth(k))
        });
        match w {
            Word::Finite(_) => Ok(Enclosure::Exact(finite)),
            Word::Infinite(_) => Ok(self.tail(b + explicit_end - 2 * shared)? + &finite),
        }
    }

    fn word_distance(&self, a: Word<'_>, b: Word<'_>) -> Result<Enclosure, FloydError> {
        match a.lcp(b) {
            LcpDepth::Infinite => Ok(Enclosure::zero()),
            LcpDepth::Finite(l) => Ok(self.branch(a, l)? + self.branch(b, l)?),
        }
    }

    fn edge_point_distance(
        &self,
        e: &EdgeRef,
        t: &Rational,
        other: &Point,
    ) -> Result<Enclosure, FloydError> {
        let len = self.spec.edge_length(e);
        let child = e.child();
        let below = match other {
            Point::OnEdge(e2, t2) if e2 == e => {
                return Ok(Enclosure::Exact((t - t2).abs() * len));
            }
            Point::Vertex(v) => child.is_prefix_of(v),
            Point::OnEdge(e2, _) => child.is_prefix_of(e2.child()),
            Point::Boundary(p) => p.lcp_with_vertex(child) == child.depth(),
        };
        if below {
            let rest = self.distance(&Point::Vertex(child.clone()), other)?;
            Ok(rest + &((Rational::one() - t) * len))
        } else {
            let rest = self.distance(&Point::Vertex(e.parent()), other)?;
            Ok(rest + &(t * len))
        }
    }

    pub fn distance(&self, p: &Point, q: &Point) -> Result<Enclosure, FloydError> {
        match (p, q) {
            (Point::OnEdge(e, t), other) | (other, Point::OnEdge(e, t)) => {
                self.edge_point_distance(e, t, other)
            }
            (Point::Vertex(u), Point::Vertex(v)) => {
                self.word_distance(Word::Finite(u), Word::Finite(v))
            }
            (Point::Vertex(u), Point::Boundary(b)) | (Point::Boundary(b), Point::Vertex(u)) => {
                self.word_distance(Word::Finite(u), Word::Infinite(b))
            }
            (Point::Boundary(a), Point::Boundary(b)) => {
                self.word_distance(Word::Infinite(a), Word::Infinite(b))
            }
        }
    }

    pub fn radial(&self, v: &VertexAddress) -> Rational {
        let base = &self.spec.base;
        let l = v.lcp_depth(base);
        let up = (l + 1..=base.depth()).map(|k| base.prefix(k));
        let down = (l + 1..=v.depth()).map(|k| v.prefix(k));
        up.chain(down)
            .map(|c| {
                self.spec
                    .edge_length(&EdgeRef::new(c).expect("non-root child"))
            })
            .fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// `δ(base, v)`, always exact.
pub fn radial(spec: &MetricSpec, v: &VertexAddress) -> Rational {
    let tol = Rational::one();
    FloydMetric::new(spec.clone(), tol)
        .expect("positive tolerance")
        .radial(v)
}

/// Floyd distance between two points of the compactified tree.
pub fn floyd_distance(
    spec: &MetricSpec,
    p: &Point,
    q: &Point,
    tol: &Rational,
) -> Result<Enclosure, FloydError> {
    FloydMetric::new(spec.clone(), tol.clone())?.distance(p, q)
}
