use std::collections::BTreeMap;

use super::{
    invalid, join_letters, parse_letters, parse_rational, significant_lines, split_key_value,
    LoadError,
};
use crate::error::ParseError;
use crate::floyd::EdgeLengthAssignment;
use crate::tree::{EdgeRef, TreeConfig, VertexAddress};

/// Parses an edge-length assignment: `n = 3`, `depth = 2`, then one
/// `edge <child letters> = p/q` line per edge of depth below `depth`.
pub fn parse_assignment(text: &str) -> Result<EdgeLengthAssignment, LoadError> {
    let (mut n, mut depth) = (None, None);
    let mut lengths = BTreeMap::new();
    for line in significant_lines(text) {
        let (key, value) = split_key_value(&line)?;
        let number = line.number;
        let duplicate = || ParseError::DuplicateKey {
            line: number,
            key: key.clone(),
        };
        let integer = |what: &str| -> Result<usize, ParseError> {
            value
                .parse()
                .map_err(|_| invalid(number, what, "expected an integer"))
        };
        match key.as_str() {
            "n" if n.is_none() => n = Some(integer("n")?),
            "depth" if depth.is_none() => depth = Some(integer("depth")?),
            "n" | "depth" => return Err(duplicate().into()),
            _ => {
                let addr = key
                    .strip_prefix("edge ")
                    .ok_or_else(|| ParseError::UnknownKey {
                        line: number,
                        key: key.clone(),
                    })?;
                let child = VertexAddress::new(
                    parse_letters(addr).map_err(|e| invalid(number, &key, e.to_string()))?,
                );
                let edge = EdgeRef::new(child).map_err(|e| invalid(number, &key, e.to_string()))?;
                let len =
                    parse_rational(&value).map_err(|e| invalid(number, &key, e.to_string()))?;
                if lengths.insert(edge, len).is_some() {
                    return Err(duplicate().into());
                }
            }
        }
    }
    let n = n.ok_or_else(|| ParseError::MissingKey("n".into()))?;
    let depth = depth.ok_or_else(|| ParseError::MissingKey("depth".into()))?;
    let n = u32::try_from(n).map_err(|_| ParseError::MissingKey("n".into()))?;
    let tree = TreeConfig::new(n)?;
    Ok(EdgeLengthAssignment::new(tree, depth, lengths)?)
}

pub fn write_assignment(a: &EdgeLengthAssignment) -> String {
    let mut out = format!("n = {}\ndepth = {}\n", a.tree().valency(), a.depth_limit());
    for (e, len) in a.lengths() {
        out += &format!("edge {} = {len}\n", join_letters(e.child().letters()));
    }
    out
}
