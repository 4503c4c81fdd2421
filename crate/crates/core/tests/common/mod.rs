#![allow(dead_code)]

use floyd_core::aut::LocalPermutation;
use floyd_core::{
    AutWord, EdgeRef, FinitaryPortrait, FloydFunction, Generator, Point, Rational, Tail,
    TreeConfig, VertexAddress,
};
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn letters(n: u32, offset: usize, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..n, len).prop_map(move |raw| {
        raw.into_iter()
            .enumerate()
            .map(|(i, c)| if offset + i == 0 { c } else { c % (n - 1) })
            .collect()
    })
}

pub fn vertex(n: u32, max_depth: usize) -> impl Strategy<Value = VertexAddress> {
    letters(n, 0, 0..max_depth + 1).prop_map(VertexAddress::new)
}

pub fn point(n: u32) -> impl Strategy<Value = Point> {
    let tree = TreeConfig::new(n).unwrap();
    prop_oneof![
        vertex(n, 5).prop_map(Point::Vertex),
        (letters(n, 0, 1..6), 1i64..8).prop_map(|(w, k)| {
            Point::on_edge(EdgeRef::new(VertexAddress::new(w)).unwrap(), q(k, 8)).unwrap()
        }),
        (letters(n, 0, 0..4), letters(n, 1, 1..4)).prop_map(move |(pre, per)| {
            Point::Boundary(tree.canonical_boundary(pre, per).unwrap())
        }),
    ]
}

pub fn portrait(n: u32, max_depth: usize) -> impl Strategy<Value = FinitaryPortrait> {
    let tree = TreeConfig::new(n).unwrap();
    let vertices = tree.vertices_up_to(max_depth.saturating_sub(1));
    let count = vertices.len();
    prop::collection::vec((any::<bool>(), any::<prop::sample::Index>()), count).prop_map(
        move |choices| {
            let perms = vertices
                .iter()
                .zip(choices)
                .filter(|(_, (keep, _))| *keep)
                .map(|(v, (_, idx))| {
                    let k = tree.arity_at(v.depth()) as usize;
                    (
                        v.clone(),
                        LocalPermutation::new(nth_permutation(k, idx.index(factorial(k)))).unwrap(),
                    )
                })
                .collect();
            FinitaryPortrait::new(tree, perms).unwrap()
        },
    )
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

/// Lehmer-code decoding of the `i`-th permutation of `0..k`.
fn nth_permutation(k: usize, mut i: usize) -> Vec<u32> {
    let mut pool: Vec<u32> = (0..k as u32).collect();
    let mut out = Vec::with_capacity(k);
    for j in (1..=k).rev() {
        let f = factorial(j - 1);
        out.push(pool.remove(i / f));
        i %= f;
    }
    out
}

pub fn generator(n: u32) -> impl Strategy<Value = Generator> {
    prop_oneof![
        Just(Generator::Sigma),
        Just(Generator::SigmaInv),
        portrait(n, 3).prop_map(Generator::Portrait),
    ]
}

pub fn word(n: u32) -> impl Strategy<Value = AutWord> {
    prop::collection::vec(generator(n), 0..5)
        .prop_map(move |gens| AutWord::new(TreeConfig::new(n).unwrap(), gens).unwrap())
}

/// Profiles with a short random prefix and one of the three tail families.
pub fn profile() -> impl Strategy<Value = FloydFunction> {
    let prefix = prop::collection::vec((1i64..6, 1i64..6).prop_map(|(n, d)| q(n, d)), 0..3);
    let tail = prop_oneof![
        (1i64..4, 1i64..4).prop_map(|(a, k)| Tail::Geometric {
            a: q(a, 1),
            q: q(k, k + 1)
        }),
        (2u32..5).prop_map(|s| Tail::Power { s }),
        (1i64..4, 1i64..4).prop_map(|(a, k)| Tail::SubGeometric {
            a: q(a, 1),
            q: q(k, k + 1)
        }),
    ];
    (prefix, tail).prop_map(|(p, t)| FloydFunction::new(p, t).unwrap())
}
