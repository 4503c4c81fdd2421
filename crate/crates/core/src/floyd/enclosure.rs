use std::fmt;
use std::ops::Add;

use num_traits::{Signed, Zero};

use crate::Rational;

/// An exact value or a certified bracket `[lo, hi]` containing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Enclosure {
    Exact(Rational),
    Interval { lo: Rational, hi: Rational },
}

impl Enclosure {
    pub fn zero() -> Self {
        Enclosure::Exact(Rational::zero())
    }

    pub fn interval(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Enclosure::Interval { lo, hi }
    }

    pub fn lo(&self) -> &Rational {
        match self {
            Enclosure::Exact(x) => x,
            Enclosure::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &Rational {
        match self {
            Enclosure::Exact(x) => x,
            Enclosure::Interval { hi, .. } => hi,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Enclosure::Exact(x) => Some(x),
            Enclosure::Interval { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Enclosure::Exact(_))
    }

    pub fn width(&self) -> Rational {
        self.hi() - self.lo()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo() <= x && x <= self.hi()
    }

    /// Whether the two enclosures can denote the same value.
    pub fn overlaps(&self, other: &Enclosure) -> bool {
        self.lo() <= other.hi() && other.lo() <= self.hi()
    }

    /// `self <= other` is consistent with both enclosures.
    pub fn possibly_le(&self, other: &Enclosure) -> bool {
        self.lo() <= other.hi()
    }

    /// `self <= other` holds for every value in both enclosures.
    pub fn certainly_le(&self, other: &Enclosure) -> bool {
        self.hi() <= other.lo()
    }

    pub fn scale(&self, k: &Rational) -> Enclosure {
        match self {
            Enclosure::Exact(x) => Enclosure::Exact(x * k),
            Enclosure::Interval { lo, hi } => {
                let (a, b) = (lo * k, hi * k);
                if k.is_negative() {
                    Enclosure::interval(b, a)
                } else {
                    Enclosure::interval(a, b)
                }
            }
        }
    }

    /// Quotient of two positive enclosures.
    pub fn ratio(&self, denom: &Enclosure) -> Enclosure {
        match (self, denom) {
            (Enclosure::Exact(a), Enclosure::Exact(b)) => Enclosure::Exact(a / b),
            _ => Enclosure::interval(self.lo() / denom.hi(), self.hi() / denom.lo()),
        }
    }
}

impl Add for &Enclosure {
    type Output = Enclosure;

    fn add(self, rhs: &Enclosure) -> Enclosure {
        match (self, rhs) {
            (Enclosure::Exact(a), Enclosure::Exact(b)) => Enclosure::Exact(a + b),
            _ => Enclosure::interval(self.lo() + rhs.lo(), self.hi() + rhs.hi()),
        }
    }
}

impl Add for Enclosure {
    type Output = Enclosure;

    fn add(self, rhs: Enclosure) -> Enclosure {
        &self + &rhs
    }
}

impl Add<&Rational> for Enclosure {
    type Output = Enclosure;

    fn add(self, rhs: &Rational) -> Enclosure {
        match self {
            Enclosure::Exact(a) => Enclosure::Exact(a + rhs),
            Enclosure::Interval { lo, hi } => Enclosure::interval(lo + rhs, hi + rhs),
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Enclosure::Exact(x) => write!(f, "exact {x}"),
            Enclosure::Interval { lo, hi } => write!(f, "interval [{lo}, {hi}]"),
        }
    }
}
