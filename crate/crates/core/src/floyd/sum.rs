//! Certified tail sums `S(R) = Σ_{r≥R} h(r)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::function::{pow, FloydFunction, Tail};
use super::Enclosure;
use crate::error::FloydError;
use crate::Rational;

/// Maximum number of explicitly summed terms before a tolerance is declared unattainable.
pub const TERM_BUDGET: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SumMode {
    /// Closed forms where available (geometric tails), brackets otherwise.
    #[default]
    Auto,
    /// Always bracket, even when a closed form exists.
    ForceInterval,
}

pub fn tail_sum(h: &FloydFunction, from: usize, tol: &Rational) -> Result<Enclosure, FloydError> {
    tail_sum_with(h, from, tol, SumMode::Auto)
}

pub fn tail_sum_with(
    h: &FloydFunction,
    from: usize,
    tol: &Rational,
    mode: SumMode,
) -> Result<Enclosure, FloydError> {
    if *tol <= Rational::zero() {
        return Err(FloydError::InvalidTolerance);
    }
    let m = h.tail_start();
    let head = (from..m).fold(Rational::zero(), |acc, r| acc + h.at(r));
    let start = from.max(m);
    let offset = (start - m) as u64;
    let tail = match (h.tail(), mode) {
        (Tail::Geometric { a, q }, SumMode::Auto) => {
            Enclosure::Exact(a * pow(q, offset) / (Rational::one() - q))
        }
        (Tail::Geometric { a, q }, SumMode::ForceInterval) => geometric_bracket(a, q, offset, tol)?,
        (Tail::Power { s }, _) => power_bracket(*s, start, tol)?,
        (Tail::SubGeometric { a, q }, _) => sub_geometric_bracket(a, q, offset, tol)?,
    };
    Ok(tail + &head)
}

/// Σ_{j≥j0} a·q^j, summed explicitly and closed with the first-term / series bracket.
fn geometric_bracket(
    a: &Rational,
    q: &Rational,
    j0: u64,
    tol: &Rational,
) -> Result<Enclosure, FloydError> {
    let one_minus_q = Rational::one() - q;
    let mut partial = Rational::zero();
    let mut term = a * pow(q, j0);
    for _ in 0..TERM_BUDGET {
        // Remainder Σ_{j≥k} lies in [term, term/(1-q)].
        let upper = &term / &one_minus_q;
        if &upper - &term <= *tol {
            return Ok(Enclosure::interval(&partial + &term, partial + upper));
        }
        partial += &term;
        term *= q;
    }
    Err(FloydError::ToleranceUnattainable {
        budget: TERM_BUDGET,
    })
}

/// `1 / ((s-1) · x^(s-1))`, the integral of `t^(-s)` from `x` to infinity.
fn power_integral(x: usize, s: u32) -> Rational {
    Rational::new(
        BigInt::one(),
        BigInt::from(s - 1) * Pow::pow(BigInt::from(x), s - 1),
    )
}

/// Σ_{r≥start} (r+1)^(-s) = Σ_{k>start} k^(-s).
///
/// Terms `k = start+1..=N` are summed on a dyadic grid with outward rounding,
/// the remainder `Σ_{k>N}` is bracketed by `∫_{N+1}^∞` and `∫_N^∞`.
fn power_bracket(s: u32, start: usize, tol: &Rational) -> Result<Enclosure, FloydError> {
    let half = tol / Rational::from_integer(2.into());
    let mut n = start.max(1);
    while power_integral(n, s) - power_integral(n + 1, s) > half {
        n *= 2;
        if n - start > TERM_BUDGET {
            return Err(FloydError::ToleranceUnattainable {
                budget: TERM_BUDGET,
            });
        }
    }
    let count = n - start;
    let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
    if count > 0 {
        // Grid 1/D with count/D <= tol/4.
        let target = (BigInt::from(4 * count) * tol.denom()).div_ceil(tol.numer());
        let grid = BigInt::one() << target.bits();
        let (mut lo_num, mut hi_num) = (BigInt::zero(), BigInt::zero());
        for k in start + 1..=n {
            let denom: BigInt = Pow::pow(BigInt::from(k), s);
            let (quot, rem) = grid.div_rem(&denom);
            if !rem.is_zero() {
                hi_num += 1;
            }
            lo_num += &quot;
            hi_num += quot;
        }
        lo = Rational::new(lo_num, grid.clone());
        hi = Rational::new(hi_num, grid);
    }
    Ok(Enclosure::interval(
        lo + power_integral(n + 1, s),
        hi + power_integral(n, s),
    ))
}

/// Σ_{j≥j0} a·q^(j²), closed with the majorant a·q^(k²)/(1 - q^(2k+1)).
fn sub_geometric_bracket(
    a: &Rational,
    q: &Rational,
    j0: u64,
    tol: &Rational,
) -> Result<Enclosure, FloydError> {
    let mut partial = Rational::zero();
    for k in j0..j0 + TERM_BUDGET as u64 {
        let term = a * pow(q, k * k);
        let upper = &term / (Rational::one() - pow(q, 2 * k + 1));
        if &upper - &term <= *tol {
            return Ok(Enclosure::interval(&partial + &term, partial + upper));
        }
        partial += term;
    }
    Err(FloydError::ToleranceUnattainable {
        budget: TERM_BUDGET,
    })
}
