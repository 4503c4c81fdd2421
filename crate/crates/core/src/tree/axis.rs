//! Coordinates adapted to the canonical axis, the bi-infinite 0/1 line
//! through the root: `z_0 = ε`, `z_m = (0, 0^{m-1})` and `z_{-m} = (1, 0^{m-1})`.
//!
//! At `z_m` with `m != 0` the axis continues through child letter 0 and the
//! off-axis child `c` becomes departure letter `c - 1`. At the root, letters 0
//! and 1 are the two axis directions and off-axis child `c` becomes `c - 2`.

use super::{TreeConfig, VertexAddress};
use crate::error::TreeError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxisCoordinate {
    pub m: i64,
    pub departure: Vec<u32>,
}

impl AxisCoordinate {
    pub fn on_axis(m: i64) -> Self {
        AxisCoordinate {
            m,
            departure: Vec::new(),
        }
    }
}

/// Axis coordinate of a letter word, no validation. Shared by vertices and
/// unrolled boundary prefixes.
pub(crate) fn word_to_axis(letters: &[u32]) -> AxisCoordinate {
    let Some(&first) = letters.first() else {
        return AxisCoordinate::on_axis(0);
    };
    if first >= 2 {
        let mut departure = letters.to_vec();
        departure[0] = first - 2;
        return AxisCoordinate { m: 0, departure };
    }
    let run = letters[1..].iter().take_while(|&&c| c == 0).count();
    let magnitude = 1 + run as i64;
    let m = if first == 0 { magnitude } else { -magnitude };
    let rest = &letters[1 + run..];
    let departure = match rest.split_first() {
        None => Vec::new(),
        Some((&c, tail)) => std::iter::once(c - 1).chain(tail.iter().copied()).collect(),
    };
    AxisCoordinate { m, departure }
}

pub(crate) fn axis_to_word(c: &AxisCoordinate) -> Vec<u32> {
    let magnitude = c.m.unsigned_abs() as usize;
    let mut out = Vec::with_capacity(magnitude + c.departure.len());
    if c.m != 0 {
        out.push(if c.m > 0 { 0 } else { 1 });
        out.extend(std::iter::repeat_n(0, magnitude - 1));
    }
    if let Some((&e, tail)) = c.departure.split_first() {
        out.push(if c.m == 0 { e + 2 } else { e + 1 });
        out.extend_from_slice(tail);
    }
    out
}

/// Moves a word `delta` steps along the canonical axis, keeping its departure.
pub(crate) fn shift_word(letters: &[u32], delta: i64) -> Vec<u32> {
    let mut c = word_to_axis(letters);
    c.m += delta;
    axis_to_word(&c)
}

impl TreeConfig {
    pub fn to_axis(self, v: &VertexAddress) -> Result<AxisCoordinate, TreeError> {
        self.check_vertex(v)?;
        Ok(word_to_axis(v.letters()))
    }

    pub fn from_axis(self, c: &AxisCoordinate) -> Result<VertexAddress, TreeError> {
        if let Some((&e, tail)) = c.departure.split_first() {
            // The first departure letter avoids both axis directions.
            if e >= self.valency() - 2 {
                return Err(TreeError::InvalidLetter {
                    position: c.m.unsigned_abs() as usize,
                    letter: e,
                    n: self.valency(),
                });
            }
            let offset = c.m.unsigned_abs() as usize + 1;
            for (i, &l) in tail.iter().enumerate() {
                self.check_letter(offset + i, l)?;
            }
        }
        Ok(VertexAddress::new(axis_to_word(c)))
    }
}
