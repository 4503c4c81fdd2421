//! Finite checks of how automorphisms and base changes distort a Floyd metric.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::aut::{AutWord, Classification};
use crate::error::{AutError, EstimateError, FloydError};
use crate::floyd::{Enclosure, FloydFunction, FloydMetric, MetricSpec};
use crate::tree::{BoundaryAddress, EdgeRef, Point, TreeConfig, VertexAddress};
use crate::Rational;

/// Seeded random boundary points appended after the deterministic sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleExtension {
    pub seed: u64,
    pub count: usize,
}

/// All vertices up to `vertex_depth`, then every canonical boundary point
/// with a preperiod of at most `boundary_preperiod_max` letters and a period
/// of at most `boundary_period_max` letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSpec {
    pub vertex_depth: usize,
    pub boundary_preperiod_max: usize,
    pub boundary_period_max: usize,
    pub extension: Option<SampleExtension>,
}

impl SampleSpec {
    pub fn new(
        vertex_depth: usize,
        boundary_preperiod_max: usize,
        boundary_period_max: usize,
    ) -> Self {
        SampleSpec {
            vertex_depth,
            boundary_preperiod_max,
            boundary_period_max,
            extension: None,
        }
    }

    /// Depth 4, preperiod ≤ 1, period ≤ 2.
    pub fn standard() -> Self {
        SampleSpec::new(4, 1, 2)
    }

    pub fn with_extension(self, seed: u64, count: usize) -> Self {
        SampleSpec {
            extension: Some(SampleExtension { seed, count }),
            ..self
        }
    }

    pub fn points(&self, tree: TreeConfig) -> Vec<Point> {
        let mut points: Vec<Point> = tree
            .vertices_up_to(self.vertex_depth)
            .into_iter()
            .map(Point::Vertex)
            .collect();
        let boundary = boundary_points(tree, self.boundary_preperiod_max, self.boundary_period_max);
        points.extend(boundary.iter().cloned().map(Point::Boundary));
        if let Some(ext) = self.extension {
            points.extend(
                extension_points(tree, ext, &boundary)
                    .into_iter()
                    .map(Point::Boundary),
            );
        }
        points
    }
}

fn words(tree: TreeConfig, offset: usize, len: usize) -> Vec<Vec<u32>> {
    (0..len).fold(vec![Vec::new()], |acc, i| {
        let arity = tree.arity_at(offset + i);
        acc.into_iter()
            .flat_map(|w| {
                (0..arity).map(move |c| {
                    let mut next = w.clone();
                    next.push(c);
                    next
                })
            })
            .collect()
    })
}

/// Canonical boundary points with bounded preperiod and period, sorted.
pub fn boundary_points(
    tree: TreeConfig,
    pre_max: usize,
    per_max: usize,
) -> BTreeSet<BoundaryAddress> {
    let mut out = BTreeSet::new();
    for pre_len in 0..=pre_max {
        for pre in words(tree, 0, pre_len) {
            for per_len in 1..=per_max {
                // Period letters recur, so they never sit at the root.
                for per in words(tree, 1, per_len) {
                    out.insert(
                        tree.canonical_boundary(pre.clone(), per)
                            .expect("enumerated letters are in range"),
                    );
                }
            }
        }
    }
    out
}

fn extension_points(
    tree: TreeConfig,
    ext: SampleExtension,
    existing: &BTreeSet<BoundaryAddress>,
) -> Vec<BoundaryAddress> {
    const MAX_LEN: usize = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(ext.seed);
    let mut seen = existing.clone();
    let mut out = Vec::new();
    // The pool is finite, so give up after a generous number of draws.
    for _ in 0..ext.count.saturating_mul(64) {
        if out.len() == ext.count {
            break;
        }
        let pre_len = rng.gen_range(0..=MAX_LEN);
        let per_len = rng.gen_range(1..=MAX_LEN);
        let pre: Vec<u32> = (0..pre_len)
            .map(|i| rng.gen_range(0..tree.arity_at(i)))
            .collect();
        let per: Vec<u32> = (0..per_len)
            .map(|_| rng.gen_range(0..tree.arity_at(1)))
            .collect();
        let b = tree
            .canonical_boundary(pre, per)
            .expect("sampled letters are in range");
        if seen.insert(b.clone()) {
            out.push(b);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub sup: Enclosure,
    pub inf: Enclosure,
    pub sup_witness: (Point, Point),
    pub inf_witness: (Point, Point),
}

impl RatioReport {
    fn from_ratios(
        ratios: impl IntoIterator<Item = (Enclosure, (Point, Point))>,
    ) -> Result<Self, EstimateError> {
        let mut it = ratios.into_iter();
        let (first, pair) = it.next().ok_or(EstimateError::Empty)?;
        let mut report = RatioReport {
            sup: first.clone(),
            inf: first,
            sup_witness: pair.clone(),
            inf_witness: pair,
        };
        // Strict comparisons keep the first witness on ties.
        for (r, pair) in it {
            if r.hi() > report.sup.hi() {
                report.sup = r.clone();
                report.sup_witness = pair.clone();
            }
            if r.lo() < report.inf.lo() {
                report.inf = r;
                report.inf_witness = pair;
            }
        }
        Ok(report)
    }
}

fn write_bound(
    f: &mut fmt::Formatter<'_>,
    name: &str,
    e: &Enclosure,
    w: &(Point, Point),
) -> fmt::Result {
    match e {
        Enclosure::Exact(x) => write!(f, "{name} = {x}"),
        Enclosure::Interval { lo, hi } => write!(f, "{name} in [{lo}, {hi}]"),
    }?;
    write!(f, " @ ({}, {})", w.0, w.1)
}

impl fmt::Display for RatioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bound(f, "sup", &self.sup, &self.sup_witness)?;
        writeln!(f)?;
        write_bound(f, "inf", &self.inf, &self.inf_witness)
    }
}

/// `max |depth(g v) - depth(v)|` over vertices of depth at most `depth`.
pub fn depth_change_bound(g: &AutWord, depth: usize) -> usize {
    g.tree()
        .vertices_up_to(depth)
        .iter()
        .map(|v| g.apply_vertex(v).depth().abs_diff(v.depth()))
        .max()
        .unwrap_or(0)
}

/// Sup and inf of `h(depth(g e)) / h(depth(e))` over edges of depth below
/// `depth`. Witnesses are the edge endpoints, which reproduce the ratio in the
/// rooted metric.
pub fn edge_ratio_bound(
    g: &AutWord,
    h: &FloydFunction,
    depth: usize,
) -> Result<RatioReport, EstimateError> {
    let ratios = g.tree().edges_below(depth).into_iter().map(|e| {
        let (p, c) = (e.parent(), e.child().clone());
        let image = EdgeRef::between(&g.apply_vertex(&p), &g.apply_vertex(&c))
            .expect("automorphisms map edges to edges");
        let ratio = h.at(image.depth()) / h.at(e.depth());
        (
            Enclosure::Exact(ratio),
            (Point::Vertex(p), Point::Vertex(c)),
        )
    });
    RatioReport::from_ratios(ratios)
}

/// `δ(y_r, y_{r+1}) / δ(y_{r+1}, y_{r+2})` along the attracting ray of a
/// unitary translation, `y_0` being the axis vertex nearest the root.
pub fn axis_adjacent_ratio(g: &AutWord, h: &FloydFunction, r: usize) -> Result<Rational, AutError> {
    match g.classify()? {
        Classification::Translation { length: 1, .. } => {}
        Classification::Translation { length, .. } => return Err(AutError::NotUnitary(length)),
        _ => return Err(AutError::NotATranslation),
    }
    let spec = MetricSpec::rooted(g.tree(), h.clone());
    let y = g.axis_path(r + 2)?;
    let length = |a: &VertexAddress, b: &VertexAddress| {
        spec.edge_length(&EdgeRef::between(a, b).expect("axis vertices are adjacent"))
    };
    Ok(length(&y[r], &y[r + 1]) / length(&y[r + 1], &y[r + 2]))
}

fn pair_ratios<F>(points: &[Point], ratio: F) -> Result<RatioReport, EstimateError>
where
    F: Fn(usize, usize) -> Result<Enclosure, EstimateError> + Sync,
{
    // Rows are evaluated in parallel and reduced in enumeration order.
    let rows: Vec<Result<Vec<Enclosure>, EstimateError>> = (0..points.len())
        .into_par_iter()
        .map(|i| (i + 1..points.len()).map(|j| ratio(i, j)).collect())
        .collect();
    let mut all = Vec::new();
    for (i, row) in rows.into_iter().enumerate() {
        for (k, r) in row?.into_iter().enumerate() {
            all.push((r, (points[i].clone(), points[i + 1 + k].clone())));
        }
    }
    RatioReport::from_ratios(all)
}

fn quotient(
    num: Enclosure,
    den: Enclosure,
    p: &Point,
    q: &Point,
) -> Result<Enclosure, EstimateError> {
    if !den.lo().is_positive() || num.lo().is_negative() || den.hi().is_zero() {
        return Err(EstimateError::Unresolved(p.to_string(), q.to_string()));
    }
    Ok(num.ratio(&den))
}

/// Sup and inf of `δ(g p, g q) / δ(p, q)` over distinct sample pairs.
pub fn empirical_bilipschitz(
    g: &AutWord,
    spec: &MetricSpec,
    sample: &SampleSpec,
    tol: &Rational,
) -> Result<RatioReport, EstimateError> {
    if g.tree() != spec.tree {
        return Err(FloydError::TreeMismatch.into());
    }
    let metric = FloydMetric::new(spec.clone(), tol.clone())?;
    let points = sample.points(spec.tree);
    let images: Vec<Point> = points.iter().map(|p| g.apply_point(p)).collect();
    pair_ratios(&points, |i, j| {
        let before = metric.distance(&points[i], &points[j])?;
        let after = metric.distance(&images[i], &images[j])?;
        quotient(after, before, &points[i], &points[j])
    })
}

/// Sup and inf of `δ₁(p, q) / δ₂(p, q)` over distinct sample pairs.
pub fn identity_map_bilipschitz(
    spec1: &MetricSpec,
    spec2: &MetricSpec,
    sample: &SampleSpec,
    tol: &Rational,
) -> Result<RatioReport, EstimateError> {
    if spec1.tree != spec2.tree {
        return Err(FloydError::TreeMismatch.into());
    }
    let m1 = FloydMetric::new(spec1.clone(), tol.clone())?;
    let m2 = FloydMetric::new(spec2.clone(), tol.clone())?;
    let points = sample.points(spec1.tree);
    pair_ratios(&points, |i, j| {
        let (p, q) = (&points[i], &points[j]);
        quotient(m1.distance(p, q)?, m2.distance(p, q)?, p, q)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::FinitaryPortrait;
    use crate::floyd::eta_inf;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn t3() -> TreeConfig {
        TreeConfig::new(3).unwrap()
    }

    fn pow2(e: u32) -> Rational {
        Rational::from_integer(num_bigint::BigInt::from(2).pow(e))
    }

    fn geo() -> FloydFunction {
        FloydFunction::geometric(q(1, 1), q(1, 2)).unwrap()
    }

    fn subgeo() -> FloydFunction {
        FloydFunction::sub_geometric(q(1, 1), q(1, 2)).unwrap()
    }

    /// Unitary translation whose axis misses the root: d0 = 1.
    fn offset_translation() -> AutWord {
        let p = AutWord::portrait(FinitaryPortrait::at_root(t3(), vec![0, 2, 1]).unwrap());
        let s = AutWord::sigma(t3());
        s.compose(&p).conjugate(&s)
    }

    #[test]
    fn sample_enumeration() {
        let small = SampleSpec::new(0, 1, 2).points(t3());
        // Root plus 12 boundary points.
        assert_eq!(small.len(), 13);
        let boundary = boundary_points(t3(), 1, 2);
        assert!(boundary.iter().all(|b| t3().check_boundary(b).is_ok()));
        assert!(boundary
            .iter()
            .zip(boundary.iter().skip(1))
            .all(|(a, b)| a < b));
        // Brute force over raw words: each canonical form is reached.
        let mut raw = BTreeSet::new();
        for pre_len in 0..=1usize {
            for pre in 0..3u32.pow(pre_len as u32) {
                let pre_word: Vec<u32> = if pre_len == 1 { vec![pre] } else { vec![] };
                for per in [
                    vec![0],
                    vec![1],
                    vec![0, 0],
                    vec![0, 1],
                    vec![1, 0],
                    vec![1, 1],
                ] {
                    if let Ok(b) = t3().canonical_boundary(pre_word.clone(), per) {
                        raw.insert(b);
                    }
                }
            }
        }
        assert_eq!(raw, boundary);
    }

    #[test]
    fn sample_extension_is_seeded_and_disjoint() {
        let base = SampleSpec::new(2, 1, 1);
        let a = base.with_extension(9, 5).points(t3());
        let b = base.with_extension(9, 5).points(t3());
        assert_eq!(a, b);
        let plain = base.points(t3());
        assert_eq!(a.len(), plain.len() + 5);
        assert_eq!(&a[..plain.len()], &plain[..]);
        let unique: BTreeSet<String> = a.iter().map(|p| p.to_string()).collect();
        assert_eq!(unique.len(), a.len());
    }

    #[test]
    fn depth_change_examples() {
        assert_eq!(depth_change_bound(&AutWord::identity(t3()), 6), 0);
        assert_eq!(depth_change_bound(&AutWord::sigma(t3()), 8), 1);
        let g = offset_translation();
        assert_eq!(g.classify().unwrap().translation_length(), 1);
        assert!(depth_change_bound(&g, 8) <= 3);
    }

    #[test]
    fn edge_ratio_examples() {
        let id = edge_ratio_bound(&AutWord::identity(t3()), &geo(), 5).unwrap();
        assert_eq!(
            (id.sup.clone(), id.inf),
            (Enclosure::Exact(q(1, 1)), Enclosure::Exact(q(1, 1)))
        );
        let s = AutWord::sigma(t3());
        let r = edge_ratio_bound(&s, &geo(), 10).unwrap();
        assert_eq!(r.sup, Enclosure::Exact(q(2, 1)));
        assert_eq!(r.inf, Enclosure::Exact(q(1, 2)));
        // h(r-1)/h(r) = 2^(2r-1) for the deepest repelling edge.
        assert_eq!(
            edge_ratio_bound(&s, &subgeo(), 6).unwrap().sup,
            Enclosure::Exact(pow2(9))
        );
        assert_eq!(
            edge_ratio_bound(&s, &subgeo(), 7).unwrap().sup,
            Enclosure::Exact(pow2(11))
        );
        assert_eq!(edge_ratio_bound(&s, &geo(), 0), Err(EstimateError::Empty));
    }

    #[test]
    fn edge_ratio_witness_reproduces_the_ratio() {
        let s = AutWord::sigma(t3());
        let spec = MetricSpec::rooted(t3(), subgeo());
        let r = edge_ratio_bound(&s, &subgeo(), 6).unwrap();
        let (p, c) = &r.sup_witness;
        let tol = q(1, 1 << 20);
        let metric = FloydMetric::new(spec, tol).unwrap();
        let before = metric.distance(p, c).unwrap();
        let after = metric
            .distance(&s.apply_point(p), &s.apply_point(c))
            .unwrap();
        assert_eq!(after.ratio(&before), r.sup);
    }

    #[test]
    fn sufficiency_bound_on_translations() {
        for (g, d0) in [(AutWord::sigma(t3()), 0u32), (offset_translation(), 1)] {
            for h in [geo(), FloydFunction::power(2).unwrap()] {
                let eta = eta_inf(&h).eta_star;
                let bound = (Rational::from_integer(1.into()) / eta).pow(1 + 2 * d0 as i32);
                for depth in 1..=8 {
                    let r = edge_ratio_bound(&g, &h, depth).unwrap();
                    assert!(r.sup.hi() <= &bound, "d0 = {d0}, depth = {depth}");
                }
            }
        }
    }

    #[test]
    fn axis_ratio_examples() {
        let s = AutWord::sigma(t3());
        for r in 0..5 {
            assert_eq!(axis_adjacent_ratio(&s, &geo(), r).unwrap(), q(2, 1));
        }
        let power = FloydFunction::power(2).unwrap();
        assert_eq!(axis_adjacent_ratio(&s, &power, 0).unwrap(), q(4, 1));
        assert_eq!(axis_adjacent_ratio(&s, &subgeo(), 5).unwrap(), pow2(11));
        assert_eq!(
            axis_adjacent_ratio(&s.power(2), &geo(), 0),
            Err(AutError::NotUnitary(2))
        );
        assert_eq!(
            axis_adjacent_ratio(&AutWord::identity(t3()), &geo(), 0),
            Err(AutError::NotATranslation)
        );
    }

    #[test]
    fn axis_ratio_matches_h_with_offset() {
        let g = offset_translation();
        let h = FloydFunction::new(
            vec![q(5, 1), q(1, 3), q(1, 1)],
            crate::floyd::Tail::Power { s: 3 },
        )
        .unwrap();
        for r in 0..6 {
            assert_eq!(
                axis_adjacent_ratio(&g, &h, r).unwrap(),
                h.at(r + 1) / h.at(r + 2)
            );
        }
    }

    #[test]
    fn portraits_are_isometries_of_the_rooted_metric() {
        let p = FinitaryPortrait::new(
            t3(),
            [(vec![], vec![2, 0, 1]), (vec![1], vec![1, 0])]
                .into_iter()
                .map(|(v, images)| {
                    (
                        VertexAddress::new(v),
                        crate::aut::LocalPermutation::new(images).unwrap(),
                    )
                })
                .collect(),
        )
        .unwrap();
        let spec = MetricSpec::rooted(t3(), geo());
        let r = empirical_bilipschitz(
            &AutWord::portrait(p),
            &spec,
            &SampleSpec::new(2, 1, 2),
            &q(1, 1000),
        )
        .unwrap();
        assert_eq!(r.sup, Enclosure::Exact(q(1, 1)));
        assert_eq!(r.inf, Enclosure::Exact(q(1, 1)));
    }

    #[test]
    fn sigma_on_geometric_sample() {
        let spec = MetricSpec::rooted(t3(), geo());
        let r = empirical_bilipschitz(
            &AutWord::sigma(t3()),
            &spec,
            &SampleSpec::standard(),
            &q(1, 1000),
        )
        .unwrap();
        assert!(r.sup.hi() <= &q(2, 1));
        assert!(r.inf.lo() >= &q(1, 2));
        assert!(r.inf.lo() <= r.sup.hi());
    }

    #[test]
    fn identity_map_examples() {
        let sample = SampleSpec::new(3, 1, 2);
        let tol = q(1, 1000);
        let a = MetricSpec::rooted(t3(), geo());
        let same = identity_map_bilipschitz(&a, &a, &sample, &tol).unwrap();
        assert_eq!(
            (same.sup, same.inf),
            (Enclosure::Exact(q(1, 1)), Enclosure::Exact(q(1, 1)))
        );
        let b = MetricSpec::rooted(t3(), FloydFunction::geometric(q(3, 1), q(1, 2)).unwrap());
        let scaled = identity_map_bilipschitz(&a, &b, &sample, &tol).unwrap();
        assert_eq!(
            (scaled.sup, scaled.inf),
            (Enclosure::Exact(q(1, 3)), Enclosure::Exact(q(1, 3)))
        );
        let other = MetricSpec::with_base(t3(), geo(), VertexAddress::new(vec![0])).unwrap();
        let moved = identity_map_bilipschitz(&a, &other, &SampleSpec::standard(), &tol).unwrap();
        assert!(moved.sup.hi() <= &q(2, 1) && moved.inf.lo() >= &q(1, 2));
        let t4 = MetricSpec::rooted(TreeConfig::new(4).unwrap(), geo());
        assert_eq!(
            identity_map_bilipschitz(&a, &t4, &sample, &tol),
            Err(EstimateError::Floyd(FloydError::TreeMismatch))
        );
    }

    #[test]
    fn enlarging_the_sample_widens_the_report() {
        let spec = MetricSpec::rooted(t3(), subgeo());
        let tol = q(1, 1 << 40);
        let mut last: Option<RatioReport> = None;
        for sample in [
            SampleSpec::new(1, 0, 1),
            SampleSpec::new(2, 1, 1),
            SampleSpec::new(3, 1, 2),
        ] {
            let r = empirical_bilipschitz(&AutWord::sigma(t3()), &spec, &sample, &tol).unwrap();
            if let Some(prev) = &last {
                assert!(r.sup.hi() >= prev.sup.hi());
                assert!(r.inf.lo() <= prev.inf.lo());
            }
            last = Some(r);
        }
    }

    #[test]
    fn report_display() {
        let r = edge_ratio_bound(&AutWord::sigma(t3()), &geo(), 2).unwrap();
        assert_eq!(
            r.to_string(),
            "sup = 2 @ (v:1, v:1,0)\ninf = 1/2 @ (v:, v:0)"
        );
    }
}
