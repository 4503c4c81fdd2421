use std::collections::BTreeMap;

use super::{
    invalid, parse_letters, parse_rational, significant_lines, split_key_value, LoadError,
};
use crate::error::ParseError;
use crate::floyd::{FloydFunction, MetricSpec, Tail};
use crate::tree::{TreeConfig, VertexAddress};

const KEYS: [&str; 7] = [
    "n",
    "prefix",
    "base",
    "tail.kind",
    "tail.a",
    "tail.q",
    "tail.s",
];

/// Parses a Floyd function file into a metric specification.
///
/// ```text
/// n = 3
/// prefix = 1, 1/3
/// tail.kind = geometric
/// tail.a = 1
/// tail.q = 1/2
/// ```
///
/// `prefix` and `base` (a vertex in point syntax, default `v:`) are
/// optional; `tail.a`/`tail.q` belong to the geometric and subgeometric
/// kinds, `tail.s` to the power kind.
pub fn parse_floyd(text: &str) -> Result<MetricSpec, LoadError> {
    let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for line in significant_lines(text) {
        let (key, value) = split_key_value(&line)?;
        if !KEYS.contains(&key.as_str()) {
            return Err(ParseError::UnknownKey {
                line: line.number,
                key,
            }
            .into());
        }
        if entries.contains_key(&key) {
            return Err(ParseError::DuplicateKey {
                line: line.number,
                key,
            }
            .into());
        }
        entries.insert(key, (line.number, value));
    }
    let take = |key: &str| -> Result<(usize, String), ParseError> {
        entries
            .get(key)
            .cloned()
            .ok_or_else(|| ParseError::MissingKey(key.to_string()))
    };

    let (line, n) = take("n")?;
    let n: u32 = n
        .parse()
        .map_err(|_| invalid(line, "n", "expected an integer"))?;

    let prefix = match entries.get("prefix") {
        None => Vec::new(),
        Some((line, v)) => v
            .split(',')
            .map(|t| parse_rational(t.trim()).map_err(|e| invalid(*line, "prefix", e.to_string())))
            .collect::<Result<_, _>>()?,
    };

    let base = match entries.get("base") {
        None => VertexAddress::root(),
        Some((line, v)) => {
            let letters = v
                .strip_prefix("v:")
                .ok_or_else(|| invalid(*line, "base", "expected a vertex `v:...`"))?;
            VertexAddress::new(
                parse_letters(letters).map_err(|e| invalid(*line, "base", e.to_string()))?,
            )
        }
    };

    let (kind_line, kind) = take("tail.kind")?;
    let rational = |key: &str| -> Result<_, ParseError> {
        let (line, v) = take(key)?;
        parse_rational(&v).map_err(|e| invalid(line, key, e.to_string()))
    };
    let (tail, used): (Tail, &[&str]) = match kind.as_str() {
        "geometric" => (
            Tail::Geometric {
                a: rational("tail.a")?,
                q: rational("tail.q")?,
            },
            &["tail.a", "tail.q"],
        ),
        "subgeometric" => (
            Tail::SubGeometric {
                a: rational("tail.a")?,
                q: rational("tail.q")?,
            },
            &["tail.a", "tail.q"],
        ),
        "power" => {
            let (line, v) = take("tail.s")?;
            let s = v
                .parse()
                .map_err(|_| invalid(line, "tail.s", "expected an integer exponent"))?;
            (Tail::Power { s }, &["tail.s"])
        }
        other => {
            return Err(invalid(kind_line, "tail.kind", format!("unknown kind `{other}`")).into());
        }
    };
    for key in ["tail.a", "tail.q", "tail.s"] {
        if let Some((line, _)) = entries.get(key) {
            if !used.contains(&key) {
                return Err(invalid(*line, key, format!("not used by tail kind `{kind}`")).into());
            }
        }
    }

    let tree = TreeConfig::new(n)?;
    let h = FloydFunction::new(prefix, tail)?;
    Ok(MetricSpec::with_base(tree, h, base)?)
}

/// Canonical form: fixed key order, optional keys only when non-default.
pub fn write_floyd(spec: &MetricSpec) -> String {
    let mut out = format!("n = {}\n", spec.tree.valency());
    let prefix = spec.h.prefix();
    if !prefix.is_empty() {
        let items: Vec<String> = prefix.iter().map(|x| x.to_string()).collect();
        out += &format!("prefix = {}\n", items.join(", "));
    }
    if !spec.base.is_root() {
        out += &format!("base = {}\n", spec.base);
    }
    match spec.h.tail() {
        Tail::Geometric { a, q } => {
            out += &format!("tail.kind = geometric\ntail.a = {a}\ntail.q = {q}\n")
        }
        Tail::SubGeometric { a, q } => {
            out += &format!("tail.kind = subgeometric\ntail.a = {a}\ntail.q = {q}\n")
        }
        Tail::Power { s } => out += &format!("tail.kind = power\ntail.s = {s}\n"),
    }
    out
}
