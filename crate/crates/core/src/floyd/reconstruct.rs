use std::collections::BTreeMap;

use num_traits::Zero;

use super::FloydFunction;
use crate::error::FloydError;
use crate::tree::{EdgeRef, TreeConfig};
use crate::Rational;

/// Positive lengths for every edge of depth below `depth_limit`, standing in
/// for an arbitrary length metric on a finite ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLengthAssignment {
    tree: TreeConfig,
    depth_limit: usize,
    lengths: BTreeMap<EdgeRef, Rational>,
}

impl EdgeLengthAssignment {
    pub fn new(
        tree: TreeConfig,
        depth_limit: usize,
        lengths: BTreeMap<EdgeRef, Rational>,
    ) -> Result<Self, FloydError> {
        for (e, len) in &lengths {
            tree.check_vertex(e.child())?;
            if e.depth() >= depth_limit {
                return Err(FloydError::EdgeTooDeep(e.to_string()));
            }
            if *len <= Rational::zero() {
                return Err(FloydError::NonPositiveLength(e.to_string()));
            }
        }
        if let Some(missing) = tree
            .edges_below(depth_limit)
            .into_iter()
            .find(|e| !lengths.contains_key(e))
        {
            return Err(FloydError::MissingEdge(missing.to_string()));
        }
        Ok(EdgeLengthAssignment {
            tree,
            depth_limit,
            lengths,
        })
    }

    /// The assignment a Floyd metric based at the root gives to the ball.
    pub fn induced(tree: TreeConfig, h: &FloydFunction, depth_limit: usize) -> Self {
        let lengths = tree
            .edges_below(depth_limit)
            .into_iter()
            .map(|e| {
                let len = h.at(e.depth());
                (e, len)
            })
            .collect();
        EdgeLengthAssignment {
            tree,
            depth_limit,
            lengths,
        }
    }

    pub fn tree(&self) -> TreeConfig {
        self.tree
    }

    pub fn depth_limit(&self) -> usize {
        self.depth_limit
    }

    pub fn lengths(&self) -> &BTreeMap<EdgeRef, Rational> {
        &self.lengths
    }

    pub fn into_lengths(self) -> BTreeMap<EdgeRef, Rational> {
        self.lengths
    }
}

/// `h(r)` = the shortest edge at depth `r`, for each `r` below the depth limit.
pub fn reconstruct_floyd(a: &EdgeLengthAssignment) -> Result<Vec<Rational>, FloydError> {
    let mut mins: Vec<Option<&Rational>> = vec![None; a.depth_limit];
    for (e, len) in &a.lengths {
        let slot = &mut mins[e.depth()];
        if slot.is_none_or(|m| len < m) {
            *slot = Some(len);
        }
    }
    mins.into_iter()
        .enumerate()
        .map(|(r, m)| m.cloned().ok_or(FloydError::EmptyDepthClass(r)))
        .collect()
}
