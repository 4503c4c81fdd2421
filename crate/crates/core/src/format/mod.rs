//! Line-oriented text formats: rationals, points, Floyd function files,
//! automorphism files and edge-length assignment files.
//!
//! Parsing is split from validation. A [`ParseError`] means the text is
//! malformed; the other [`LoadError`] variants mean it is well-formed but
//! describes an invalid object.

mod assignment;
mod aut_file;
mod floyd_file;

use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::error::{AutError, FloydError, ParseError, TreeError};
use crate::tree::{BoundaryAddress, EdgeRef, Point, VertexAddress};
use crate::Rational;

pub use assignment::{parse_assignment, write_assignment};
pub use aut_file::{parse_aut, write_aut};
pub use floyd_file::{parse_floyd, write_floyd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Floyd(#[from] FloydError),
    #[error(transparent)]
    Aut(#[from] AutError),
}

/// `p/q` or `p`, with an optional leading minus sign and ASCII digits only.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let err = || ParseError::Rational(s.to_string());
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let body = s.strip_prefix('-').unwrap_or(s);
    let ok = match body.split_once('/') {
        Some((p, q)) => digits(p) && digits(q) && q.bytes().any(|b| b != b'0'),
        None => digits(body),
    };
    if !ok {
        return Err(err());
    }
    Rational::from_str(s).map_err(|_| err())
}

/// Comma-separated letters; the empty string is the empty word.
pub fn parse_letters(s: &str) -> Result<Vec<u32>, ParseError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            if !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit()) {
                t.parse().map_err(|_| ParseError::Point(s.to_string()))
            } else {
                Err(ParseError::Point(s.to_string()))
            }
        })
        .collect()
}

pub(crate) fn join_letters(letters: &[u32]) -> String {
    letters
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// `v:0,1`, `b:<pre>;<per>` or `e:<child>@<t>`. Letters are not checked
/// against a valency here; use [`crate::TreeConfig::check_point`].
pub fn parse_point(s: &str) -> Result<Point, ParseError> {
    let err = || ParseError::Point(s.to_string());
    if let Some(rest) = s.strip_prefix("v:") {
        return Ok(Point::Vertex(VertexAddress::new(parse_letters(rest)?)));
    }
    if let Some(rest) = s.strip_prefix("b:") {
        let (pre, per) = rest.split_once(';').ok_or_else(err)?;
        let period = parse_letters(per)?;
        if period.is_empty() {
            return Err(err());
        }
        let b = BoundaryAddress::canonicalize(parse_letters(pre)?, period);
        return Ok(Point::Boundary(b));
    }
    if let Some(rest) = s.strip_prefix("e:") {
        let (child, t) = rest.split_once('@').ok_or_else(err)?;
        let edge = EdgeRef::new(VertexAddress::new(parse_letters(child)?)).map_err(|_| err())?;
        let t = parse_rational(t).map_err(|_| err())?;
        if t <= Rational::zero() || t >= Rational::one() {
            return Err(err());
        }
        return Ok(Point::OnEdge(edge, t));
    }
    Err(err())
}

/// A significant line of a `key = value` file.
pub(crate) struct Line<'a> {
    pub number: usize,
    pub text: &'a str,
}

/// Non-blank lines that are not `#` comments, trimmed.
pub(crate) fn significant_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let text = raw.trim();
        (!text.is_empty() && !text.starts_with('#')).then_some(Line {
            number: i + 1,
            text,
        })
    })
}

pub(crate) fn split_key_value(line: &Line<'_>) -> Result<(String, String), ParseError> {
    let (k, v) = line
        .text
        .split_once('=')
        .ok_or_else(|| ParseError::Syntax {
            line: line.number,
            message: format!("expected `key = value`, got `{}`", line.text),
        })?;
    let key = k.split_whitespace().collect::<Vec<_>>().join(" ");
    Ok((key, v.trim().to_string()))
}

pub(crate) fn invalid(line: usize, key: &str, message: impl Into<String>) -> ParseError {
    ParseError::InvalidValue {
        line,
        key: key.to_string(),
        message: message.into(),
    }
}
