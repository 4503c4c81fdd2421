use std::fmt;

use super::word::AutWord;
use crate::error::AutError;
use crate::tree::{EdgeRef, VertexAddress};

/// Elliptic (fixes a vertex), inversion (swaps the endpoints of one edge) or
/// translation along a unique axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Classification {
    EllipticVertex {
        fixed: VertexAddress,
    },
    Inversion {
        edge: EdgeRef,
    },
    Translation {
        length: u64,
        /// Axis vertex nearest the root.
        axis_point: VertexAddress,
        /// Distance from the root to the axis.
        d0: usize,
    },
}

impl Classification {
    pub fn translation_length(&self) -> u64 {
        match self {
            Classification::Translation { length, .. } => *length,
            _ => 0,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::EllipticVertex { fixed } => write!(f, "elliptic fixed={fixed}"),
            Classification::Inversion { edge } => write!(f, "inversion edge={edge}"),
            Classification::Translation {
                length,
                axis_point,
                d0,
            } => write!(f, "translation T={length} axis={axis_point} d0={d0}"),
        }
    }
}

impl AutWord {
    /// Classifies from the orbit of the root alone:
    /// `T = max(0, d(x₀, g²x₀) - d(x₀, g x₀))`, with the axis point (or fixed
    /// vertex, or inverted edge) located on the geodesic from `x₀` to `g x₀`.
    /// The located object is re-checked against the action.
    pub fn classify(&self) -> Result<Classification, AutError> {
        let root = VertexAddress::root();
        let image = self.apply_vertex(&root);
        let k1 = image.depth();
        let k2 = self.apply_vertex(&image).depth();
        let path = root.geodesic(&image);

        if k2 > k1 {
            let t = k2 - k1;
            if !(k1 - t).is_multiple_of(2) {
                return Err(AutError::ClassificationCheck(format!(
                    "displacement parity: k1 = {k1}, T = {t}"
                )));
            }
            let d0 = (k1 - t) / 2;
            let axis_point = path[d0].clone();
            if self.displacement(&axis_point) != t {
                return Err(AutError::ClassificationCheck(format!(
                    "axis point {axis_point} is not displaced by {t}"
                )));
            }
            return Ok(Classification::Translation {
                length: t as u64,
                axis_point,
                d0,
            });
        }

        if k1.is_multiple_of(2) {
            let fixed = path[k1 / 2].clone();
            if self.apply_vertex(&fixed) != fixed {
                return Err(AutError::ClassificationCheck(format!(
                    "{fixed} is not fixed"
                )));
            }
            Ok(Classification::EllipticVertex { fixed })
        } else {
            let (a, b) = (&path[k1 / 2], &path[k1 / 2 + 1]);
            if &self.apply_vertex(a) != b || &self.apply_vertex(b) != a {
                return Err(AutError::ClassificationCheck(format!(
                    "edge {a} - {b} is not inverted"
                )));
            }
            let edge = EdgeRef::between(a, b).expect("consecutive geodesic vertices");
            Ok(Classification::Inversion { edge })
        }
    }

    pub fn translation_length(&self) -> Result<u64, AutError> {
        Ok(self.classify()?.translation_length())
    }

    /// Axis vertices `y_0, …, y_len` toward the attracting end, `y_0` being the
    /// axis vertex nearest the root, so `depth(y_i) = d0 + i`.
    pub fn axis_path(&self, len: usize) -> Result<Vec<VertexAddress>, AutError> {
        let Classification::Translation { axis_point, .. } = self.classify()? else {
            return Err(AutError::NotATranslation);
        };
        let mut path = vec![axis_point.clone()];
        let mut current = axis_point;
        while path.len() <= len {
            let next = self.apply_vertex(&current);
            path.extend(current.geodesic(&next).into_iter().skip(1));
            current = next;
        }
        path.truncate(len + 1);
        Ok(path)
    }

    /// The depth-`k` vertex on the ray from the root to the attracting end of the axis.
    pub fn axis_ray_prefix(&self, k: usize) -> Result<VertexAddress, AutError> {
        let Classification::Translation { axis_point, d0, .. } = self.classify()? else {
            return Err(AutError::NotATranslation);
        };
        if k <= d0 {
            return Ok(axis_point.prefix(k));
        }
        let path = self.axis_path(k - d0)?;
        let v = path[k - d0].clone();
        if v.depth() != k {
            return Err(AutError::ClassificationCheck(format!(
                "axis vertex {v} should have depth {k}"
            )));
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::FinitaryPortrait;
    use crate::tree::TreeConfig;

    fn t3() -> TreeConfig {
        TreeConfig::new(3).unwrap()
    }

    fn v(letters: &[u32]) -> VertexAddress {
        VertexAddress::new(letters.to_vec())
    }

    fn root_perm(images: &[u32]) -> AutWord {
        AutWord::portrait(FinitaryPortrait::at_root(t3(), images.to_vec()).unwrap())
    }

    /// Minimum displacement over vertices and edge midpoints of a ball.
    fn brute_force_translation_length(g: &AutWord, radius: usize) -> usize {
        let ball = t3().vertices_up_to(radius);
        let at_vertices = ball.iter().map(|x| g.displacement(x)).min().unwrap();
        let at_midpoints = ball
            .iter()
            .filter_map(|c| c.parent().map(|p| (p, c.clone())))
            .map(|(p, c)| {
                let (gp, gc) = (g.apply_vertex(&p), g.apply_vertex(&c));
                if (gp == c && gc == p) || (gp == p && gc == c) {
                    0
                } else {
                    [&p, &c]
                        .iter()
                        .flat_map(|x| [&gp, &gc].map(|y| x.distance(y)))
                        .min()
                        .unwrap()
                        + 1
                }
            })
            .min()
            .unwrap_or(usize::MAX);
        at_vertices.min(at_midpoints)
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            AutWord::identity(t3()).classify().unwrap(),
            Classification::EllipticVertex { fixed: v(&[]) }
        );
        assert_eq!(
            AutWord::sigma(t3()).classify().unwrap(),
            Classification::Translation {
                length: 1,
                axis_point: v(&[]),
                d0: 0
            }
        );
        assert_eq!(brute_force_translation_length(&AutWord::sigma(t3()), 3), 1);
        let inversion = root_perm(&[1, 0, 2]).compose(&AutWord::sigma(t3()));
        assert_eq!(
            inversion.classify().unwrap(),
            Classification::Inversion {
                edge: EdgeRef::new(v(&[1])).unwrap()
            }
        );
        assert_eq!(
            inversion.classify().unwrap().to_string(),
            "inversion edge=v:1"
        );
    }

    #[test]
    fn translation_length_examples() {
        let s = AutWord::sigma(t3());
        assert_eq!(AutWord::identity(t3()).translation_length().unwrap(), 0);
        assert_eq!(s.power(2).translation_length().unwrap(), 2);
        assert_eq!(brute_force_translation_length(&s.power(2), 4), 2);
        let inversion = root_perm(&[1, 0, 2]).compose(&s);
        assert_eq!(inversion.translation_length().unwrap(), 0);
        assert_eq!(brute_force_translation_length(&inversion, 3), 0);
    }

    #[test]
    fn elliptic_away_from_the_root() {
        // Conjugating a root stabilizer by σ fixes z_1 = (0) and moves the root.
        let g = AutWord::sigma(t3()).conjugate(&root_perm(&[0, 2, 1]));
        let c = g.classify().unwrap();
        assert_eq!(c, Classification::EllipticVertex { fixed: v(&[0]) });
        assert_ne!(g.apply_vertex(&v(&[])), v(&[]));
    }

    #[test]
    fn axis_prefix_examples() {
        assert_eq!(
            AutWord::sigma(t3()).axis_ray_prefix(4).unwrap(),
            v(&[0, 0, 0, 0])
        );
        assert_eq!(
            AutWord::sigma_inv(t3()).axis_ray_prefix(3).unwrap(),
            v(&[1, 0, 0])
        );
        let p = root_perm(&[2, 1, 0]);
        let g = p.conjugate(&AutWord::sigma(t3()));
        let prefix = g.axis_ray_prefix(3).unwrap();
        assert_eq!(prefix, v(&[2, 0, 0]));
        // g moves each axis vertex one step forward along the path.
        let path = g.axis_path(5).unwrap();
        for w in path.windows(2) {
            assert_eq!(g.apply_vertex(&w[0]), w[1]);
        }
        assert!(root_perm(&[1, 0, 2]).axis_ray_prefix(2).is_err());
    }

    #[test]
    fn axis_off_the_root() {
        let tau = AutWord::sigma(t3()).compose(&root_perm(&[0, 2, 1]));
        let g = tau.conjugate(&AutWord::sigma(t3()));
        let Classification::Translation {
            length,
            axis_point,
            d0,
        } = g.classify().unwrap()
        else {
            panic!("expected a translation");
        };
        assert_eq!((length, d0), (1, 1));
        assert_eq!(axis_point, v(&[0]));
        // Shallow prefixes come from the climb to the axis.
        assert_eq!(g.axis_ray_prefix(1).unwrap(), v(&[0]));
        let deep = g.axis_ray_prefix(6).unwrap();
        assert_eq!(deep.depth(), 6);
        let path = g.axis_path(8).unwrap();
        assert!(path.iter().enumerate().all(|(i, y)| y.depth() == 1 + i));
        assert_eq!(path[5], deep);
    }
}
