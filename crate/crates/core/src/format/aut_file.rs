use std::collections::BTreeMap;

use super::{join_letters, parse_letters, significant_lines, LoadError};
use crate::aut::{AutWord, FinitaryPortrait, Generator, LocalPermutation};
use crate::error::ParseError;
use crate::tree::{TreeConfig, VertexAddress};

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses an automorphism file. Generators listed first act last; an empty
/// file is the identity.
///
/// ```text
/// portrait {
///   perm - = 1,0,2
///   perm 0 = 1,0
/// }
/// sigma
/// ```
pub fn parse_aut(text: &str, tree: TreeConfig) -> Result<AutWord, LoadError> {
    let mut gens = Vec::new();
    // Entries of the open portrait block, with the line that opened it.
    let mut block: Option<(usize, BTreeMap<VertexAddress, LocalPermutation>)> = None;
    for line in significant_lines(text) {
        let n = line.number;
        match (&mut block, line.text) {
            (None, "sigma") => gens.push(Generator::Sigma),
            (None, "sigma_inv") => gens.push(Generator::SigmaInv),
            (None, "portrait {") => block = Some((n, BTreeMap::new())),
            (Some(_), "}") => {
                let (_, perms) = block.take().expect("inside a block");
                gens.push(Generator::Portrait(FinitaryPortrait::new(tree, perms)?));
            }
            (Some((_, perms)), text) => {
                let rest = text.strip_prefix("perm ").ok_or_else(|| {
                    syntax(
                        n,
                        format!("expected `perm <address> = <images>`, got `{text}`"),
                    )
                })?;
                let (addr, images) = rest
                    .split_once('=')
                    .ok_or_else(|| syntax(n, "missing `=`"))?;
                let addr = addr.trim();
                let vertex = if addr == "-" {
                    VertexAddress::root()
                } else {
                    VertexAddress::new(
                        parse_letters(addr)
                            .map_err(|_| syntax(n, format!("bad address `{addr}`")))?,
                    )
                };
                let images = parse_letters(images.trim())
                    .map_err(|_| syntax(n, format!("bad permutation `{}`", images.trim())))?;
                if perms.contains_key(&vertex) {
                    return Err(ParseError::DuplicateKey {
                        line: n,
                        key: format!("perm {addr}"),
                    }
                    .into());
                }
                perms.insert(vertex, LocalPermutation::new(images)?);
            }
            (None, text) => return Err(syntax(n, format!("unexpected `{text}`")).into()),
        }
    }
    if let Some((opened, _)) = block {
        return Err(syntax(opened, "portrait block is never closed").into());
    }
    Ok(AutWord::new(tree, gens)?)
}

/// One generator per line, portrait entries sorted by address.
pub fn write_aut(g: &AutWord) -> String {
    let mut out = String::new();
    for gen in g.generators() {
        match gen {
            Generator::Sigma => out += "sigma\n",
            Generator::SigmaInv => out += "sigma_inv\n",
            Generator::Portrait(p) => {
                out += "portrait {\n";
                for (u, perm) in p.perms() {
                    let addr = if u.is_root() {
                        "-".to_string()
                    } else {
                        join_letters(u.letters())
                    };
                    out += &format!("  perm {addr} = {}\n", join_letters(perm.images()));
                }
                out += "}\n";
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::AutError;

    fn t3() -> TreeConfig {
        TreeConfig::new(3).unwrap()
    }

    #[test]
    fn documented_block_and_order() {
        let text = "portrait {\n  perm - = 1,0,2\n  perm 0 = 1,0\n}\nsigma\n";
        let g = parse_aut(text, t3()).unwrap();
        assert_eq!(g.generators().len(), 2);
        assert_eq!(g.generators()[1], Generator::Sigma);
        // Sigma acts first: root -> (0), then the portrait swaps 0 and 1.
        let v = g.apply_vertex(&VertexAddress::root());
        assert_eq!(v, VertexAddress::new(vec![1]));
        assert_eq!(write_aut(&g), text);
    }

    #[test]
    fn empty_file_is_the_identity() {
        let g = parse_aut("# nothing\n\n", t3()).unwrap();
        assert!(g.is_identity_word());
        assert_eq!(write_aut(&g), "");
    }

    #[test]
    fn normalization_is_a_fixed_point() {
        let text = "sigma_inv\nportrait {\nperm 1 = 1,0\n   perm 0 = 0,1\nperm -=2,0,1\n}\n";
        let once = write_aut(&parse_aut(text, t3()).unwrap());
        assert_eq!(
            once,
            "sigma_inv\nportrait {\n  perm - = 2,0,1\n  perm 1 = 1,0\n}\n"
        );
        assert_eq!(write_aut(&parse_aut(&once, t3()).unwrap()), once);
    }

    #[test]
    fn malformed_and_invalid_files() {
        let parse_err = |t: &str| matches!(parse_aut(t, t3()), Err(LoadError::Parse(_)));
        assert!(parse_err("tau\n"));
        assert!(parse_err("portrait {\nperm - = 1,0,2\n"));
        assert!(parse_err("}\n"));
        assert!(parse_err("portrait {\nperm - 1,0,2\n}\n"));
        assert!(parse_err("portrait {\nswap - = 1,0,2\n}\n"));
        assert!(parse_err("portrait {\nperm - = 1,0,2\nperm - = 0,2,1\n}\n"));
        assert!(parse_err("portrait {\nperm x = 1,0\n}\n"));
        assert!(parse_err("portrait {\nportrait {\n}\n"));
        assert!(matches!(
            parse_aut("portrait {\nperm - = 1,1,0\n}\n", t3()),
            Err(LoadError::Aut(AutError::NotABijection(_)))
        ));
        assert!(matches!(
            parse_aut("portrait {\nperm 0 = 1,0,2\n}\n", t3()),
            Err(LoadError::Aut(AutError::ArityMismatch { .. }))
        ));
        assert!(matches!(
            parse_aut("portrait {\nperm 0,2 = 1,0\n}\n", t3()),
            Err(LoadError::Aut(AutError::Tree(_)))
        ));
    }
}
