use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::FloydError;
use crate::Rational;

/// Parametric tail of a Floyd function, valid from index `m` (the prefix length) on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tail {
    /// `h(r) = a · q^(r-m)`
    Geometric { a: Rational, q: Rational },
    /// `h(r) = (r+1)^(-s)`
    Power { s: u32 },
    /// `h(r) = a · q^((r-m)²)`
    SubGeometric { a: Rational, q: Rational },
}

/// A summable, strictly positive edge-length profile: an explicit prefix
/// `h(0..m)` followed by a parametric tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FloydFunction {
    prefix: Vec<Rational>,
    tail: Tail,
}

fn unit_interval(q: &Rational) -> bool {
    *q > Rational::zero() && *q < Rational::one()
}

impl FloydFunction {
    pub fn new(prefix: Vec<Rational>, tail: Tail) -> Result<Self, FloydError> {
        if let Some(i) = prefix.iter().position(|x| *x <= Rational::zero()) {
            return Err(FloydError::NonPositivePrefix(i));
        }
        match &tail {
            Tail::Geometric { a, q } | Tail::SubGeometric { a, q } => {
                if *a <= Rational::zero() {
                    return Err(FloydError::InvalidTail(format!("a = {a} must be positive")));
                }
                if !unit_interval(q) {
                    return Err(FloydError::InvalidTail(format!(
                        "q = {q} must lie in (0, 1)"
                    )));
                }
            }
            Tail::Power { s } => {
                if *s < 2 {
                    return Err(FloydError::InvalidTail(format!(
                        "s = {s} must be an integer >= 2"
                    )));
                }
            }
        }
        Ok(FloydFunction { prefix, tail })
    }

    pub fn geometric(a: Rational, q: Rational) -> Result<Self, FloydError> {
        Self::new(Vec::new(), Tail::Geometric { a, q })
    }

    pub fn power(s: u32) -> Result<Self, FloydError> {
        Self::new(Vec::new(), Tail::Power { s })
    }

    pub fn sub_geometric(a: Rational, q: Rational) -> Result<Self, FloydError> {
        Self::new(Vec::new(), Tail::SubGeometric { a, q })
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// Index where the tail formula takes over.
    pub fn tail_start(&self) -> usize {
        self.prefix.len()
    }

    pub fn at(&self, r: usize) -> Rational {
        if let Some(x) = self.prefix.get(r) {
            return x.clone();
        }
        let j = r - self.prefix.len();
        match &self.tail {
            Tail::Geometric { a, q } => a * pow(q, j as u64),
            Tail::Power { s } => power_term(r, *s),
            Tail::SubGeometric { a, q } => a * pow(q, (j as u64) * (j as u64)),
        }
    }
}

pub(crate) fn pow(q: &Rational, e: u64) -> Rational {
    Pow::pow(q, BigInt::from(e))
}

/// `(r+1)^(-s)`.
pub(crate) fn power_term(r: usize, s: u32) -> Rational {
    Rational::new(BigInt::one(), Pow::pow(BigInt::from(r + 1), s))
}

/// Index attaining the infimum of adjacent ratios, or `Limit` when the
/// infimum is only approached as `r → ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaWitness {
    Index(usize),
    Limit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaInf {
    pub eta_star: Rational,
    pub witness: EtaWitness,
}

/// Largest `η` with `h(r+1) >= η·h(r)` for all `r`, i.e. `inf_r h(r+1)/h(r)`.
pub fn eta_inf(h: &FloydFunction) -> EtaInf {
    let m = h.tail_start();
    if let Tail::SubGeometric { .. } = h.tail() {
        // Tail ratios a·q^(2k+1) tend to 0 and are never attained.
        return EtaInf {
            eta_star: Rational::zero(),
            witness: EtaWitness::Limit,
        };
    }
    // Ratios are explicit up to and including the first tail ratio r = m;
    // beyond it geometric ratios are constant and power ratios increase.
    let mut best: Option<(Rational, usize)> = None;
    for r in 0..=m {
        let ratio = h.at(r + 1) / h.at(r);
        if best.as_ref().is_none_or(|(b, _)| ratio < *b) {
            best = Some((ratio, r));
        }
    }
    let (eta_star, r) = best.expect("at least one ratio");
    EtaInf {
        eta_star,
        witness: EtaWitness::Index(r),
    }
}

/// The compactification is Lipschitz exactly when adjacent ratios stay
/// bounded away from zero.
pub fn is_lipschitz_compactification(h: &FloydFunction) -> bool {
    eta_inf(h).eta_star > Rational::zero()
}

/// Least constant `C >= 1` with `C⁻¹·h2(r) <= h1(r) <= C·h2(r)` for all `r`,
/// together with an index where it is attained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub constant: Rational,
    pub witness: usize,
}

pub fn comparability(h1: &FloydFunction, h2: &FloydFunction) -> Option<Comparison> {
    let (m1, m2) = (h1.tail_start(), h2.tail_start());
    let tails_match = match (h1.tail(), h2.tail()) {
        (Tail::Geometric { q: q1, .. }, Tail::Geometric { q: q2, .. }) => q1 == q2,
        (Tail::Power { s: s1 }, Tail::Power { s: s2 }) => s1 == s2,
        // With equal q but shifted starts the ratio is a·q^((m2-m1)(2r-m1-m2)).
        (Tail::SubGeometric { q: q1, .. }, Tail::SubGeometric { q: q2, .. }) => {
            q1 == q2 && m1 == m2
        }
        _ => false,
    };
    if !tails_match {
        return None;
    }
    // Past max(m1, m2) the pointwise ratio is constant, so one more index covers it.
    let mut best = Comparison {
        constant: Rational::one(),
        witness: 0,
    };
    for r in 0..=m1.max(m2) {
        let ratio = h1.at(r) / h2.at(r);
        let c = if ratio >= Rational::one() {
            ratio
        } else {
            ratio.recip()
        };
        if c > best.constant {
            best = Comparison {
                constant: c,
                witness: r,
            };
        }
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn geo(a: Rational, ratio: Rational) -> FloydFunction {
        FloydFunction::geometric(a, ratio).unwrap()
    }

    #[test]
    fn h_examples() {
        let h = geo(q(1, 1), q(1, 2));
        // Closed form against repeated multiplication.
        let mut x = q(1, 1);
        for _ in 0..3 {
            x *= q(1, 2);
        }
        assert_eq!(h.at(3), x);
        assert_eq!(h.at(3), q(1, 8));

        let h = FloydFunction::new(vec![q(1, 1), q(1, 3)], Tail::Power { s: 2 }).unwrap();
        assert_eq!(h.at(1), q(1, 3));
        assert_eq!(FloydFunction::power(2).unwrap().at(2), q(1, 9));
    }

    #[test]
    fn sub_geometric_values() {
        let h = FloydFunction::new(
            vec![q(5, 1)],
            Tail::SubGeometric {
                a: q(1, 1),
                q: q(1, 2),
            },
        )
        .unwrap();
        assert_eq!(h.at(0), q(5, 1));
        assert_eq!(h.at(1), q(1, 1));
        assert_eq!(h.at(3), q(1, 16));
    }

    #[test]
    fn invalid_parameters() {
        assert!(FloydFunction::geometric(q(1, 1), q(1, 1)).is_err());
        assert!(FloydFunction::geometric(q(0, 1), q(1, 2)).is_err());
        assert!(FloydFunction::sub_geometric(q(1, 1), q(3, 2)).is_err());
        assert!(FloydFunction::power(1).is_err());
        assert_eq!(
            FloydFunction::new(vec![q(1, 1), q(-1, 2)], Tail::Power { s: 2 }),
            Err(FloydError::NonPositivePrefix(1))
        );
    }

    #[test]
    fn eta_examples() {
        let e = eta_inf(&geo(q(1, 1), q(1, 2)));
        assert_eq!(e.eta_star, q(1, 2));
        assert!(matches!(e.witness, EtaWitness::Index(_)));

        let e = eta_inf(&FloydFunction::power(2).unwrap());
        assert_eq!(e.eta_star, q(1, 4));
        assert_eq!(e.witness, EtaWitness::Index(0));

        let e = eta_inf(&FloydFunction::sub_geometric(q(1, 1), q(1, 2)).unwrap());
        assert_eq!(e.eta_star, q(0, 1));
        assert_eq!(e.witness, EtaWitness::Limit);
    }

    #[test]
    fn eta_sees_prefix_and_junction() {
        // Ratios: 1/10 (prefix), 10 (junction into a = 1), then 1/2.
        let h = FloydFunction::new(
            vec![q(1, 1), q(1, 10)],
            Tail::Geometric {
                a: q(1, 1),
                q: q(1, 2),
            },
        )
        .unwrap();
        let e = eta_inf(&h);
        assert_eq!(e.eta_star, q(1, 10));
        assert_eq!(e.witness, EtaWitness::Index(0));
    }

    #[test]
    fn lipschitz_verdicts() {
        assert!(is_lipschitz_compactification(&geo(q(1, 1), q(1, 2))));
        assert!(is_lipschitz_compactification(
            &FloydFunction::power(2).unwrap()
        ));
        assert!(!is_lipschitz_compactification(
            &FloydFunction::sub_geometric(q(1, 1), q(1, 2)).unwrap()
        ));
    }

    #[test]
    fn eta_lower_bounds_every_ratio() {
        let family = [
            geo(q(1, 1), q(1, 2)),
            FloydFunction::power(3).unwrap(),
            FloydFunction::new(vec![q(2, 1), q(3, 1), q(1, 7)], Tail::Power { s: 2 }).unwrap(),
            FloydFunction::new(
                vec![q(1, 5)],
                Tail::Geometric {
                    a: q(4, 1),
                    q: q(2, 3),
                },
            )
            .unwrap(),
        ];
        for h in &family {
            let e = eta_inf(h);
            for r in 0..=50 {
                assert!(h.at(r + 1) >= &e.eta_star * h.at(r));
            }
            if let EtaWitness::Index(r) = e.witness {
                assert_eq!(h.at(r + 1) / h.at(r), e.eta_star);
            }
        }
    }

    #[test]
    fn comparability_examples() {
        let h = geo(q(1, 1), q(1, 2));
        assert_eq!(comparability(&h, &h).unwrap().constant, q(1, 1));
        assert_eq!(
            comparability(&h, &geo(q(3, 1), q(1, 2))).unwrap().constant,
            q(3, 1)
        );
        assert!(comparability(&h, &geo(q(1, 1), q(1, 3))).is_none());
    }

    #[test]
    fn mixed_families_are_never_comparable() {
        let g = geo(q(1, 1), q(1, 2));
        let p = FloydFunction::power(2).unwrap();
        let s = FloydFunction::sub_geometric(q(1, 1), q(1, 2)).unwrap();
        assert!(comparability(&g, &p).is_none());
        assert!(comparability(&p, &s).is_none());
        assert!(comparability(&s, &g).is_none());
        assert!(comparability(&p, &FloydFunction::power(3).unwrap()).is_none());
    }

    #[test]
    fn sub_geometric_needs_aligned_tails() {
        let s = FloydFunction::sub_geometric(q(1, 1), q(1, 2)).unwrap();
        let scaled = FloydFunction::sub_geometric(q(1, 5), q(1, 2)).unwrap();
        assert_eq!(comparability(&s, &scaled).unwrap().constant, q(5, 1));
        let shifted = FloydFunction::new(
            vec![q(1, 1)],
            Tail::SubGeometric {
                a: q(1, 1),
                q: q(1, 2),
            },
        )
        .unwrap();
        assert!(comparability(&s, &shifted).is_none());
    }

    #[test]
    fn comparability_constant_is_sound_and_least() {
        let pairs = [
            (
                FloydFunction::new(
                    vec![q(1, 1), q(1, 9)],
                    Tail::Geometric {
                        a: q(1, 3),
                        q: q(1, 2),
                    },
                )
                .unwrap(),
                geo(q(2, 1), q(1, 2)),
            ),
            (
                FloydFunction::new(vec![q(7, 1)], Tail::Power { s: 2 }).unwrap(),
                FloydFunction::power(2).unwrap(),
            ),
        ];
        for (h1, h2) in &pairs {
            let c = comparability(h1, h2).unwrap();
            for r in 0..=50 {
                assert!(h2.at(r) / &c.constant <= h1.at(r));
                assert!(h1.at(r) <= &c.constant * h2.at(r));
            }
            let w = h1.at(c.witness) / h2.at(c.witness);
            assert!(w == c.constant || w.recip() == c.constant);
        }
    }
}
