#![allow(dead_code)]

use groupmatch_core::sample::{for_each_instance, random_instance};
use groupmatch_core::{Deltoid, Element, GroupSet, GroupSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn group(lit: &str) -> GroupSpec {
    lit.parse().unwrap()
}

pub fn set(g: &GroupSpec, xs: &[i64]) -> GroupSet {
    let coords: Vec<[i64; 1]> = xs.iter().map(|&x| [x]).collect();
    GroupSet::from_coords(g, &coords).unwrap()
}

pub fn example() -> Deltoid {
    let g = group("Z12");
    Deltoid::new(
        set(&g, &[0, 1, 2, 4, 6, 8, 10, 11]),
        set(&g, &[1, 2, 3, 4, 6, 8, 10, 11]),
    )
    .unwrap()
}

/// Every instance in Z/6 with |A| = |B| in {1, 2, 3}.
pub fn z6_sweep() -> Vec<Deltoid> {
    let g = group("Z6");
    let mut out = Vec::new();
    for size in 1..=3 {
        for_each_instance(&g, size, |d| out.push(d)).unwrap();
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` random instances with sizes in `1..=max_size`.
pub fn random_sweep(lit: &str, count: usize, max_size: usize, seed: u64) -> Vec<Deltoid> {
    use rand::Rng;
    let g = group(lit);
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let size = r.gen_range(1..=max_size);
            random_instance(&mut r, &g, size, 3).unwrap()
        })
        .collect()
}

/// Elements of `xs` selected by the bits of `mask`.
pub fn subset(g: &GroupSpec, xs: &[Element], mask: u64) -> GroupSet {
    GroupSet::new(
        g.clone(),
        xs.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x.clone()),
    )
    .unwrap()
}

/// `|Δ(S)|` straight from the group operation.
pub fn brute_delta(d: &Deltoid, s: &GroupSet) -> usize {
    let g = d.group();
    d.b()
        .iter()
        .filter(|b| s.iter().any(|x| !d.a().contains(&g.compose(x, b).unwrap())))
        .count()
}

/// All subsets S of A with their |Δ(S)|, by direct evaluation.
pub fn brute_subsets(d: &Deltoid) -> Vec<(GroupSet, usize)> {
    let a = d.a().elements();
    (0..1u64 << a.len())
        .map(|m| {
            let s = subset(d.group(), a, m);
            let delta = brute_delta(d, &s);
            (s, delta)
        })
        .collect()
}

/// Every pair (S, R) with S ⊆ A, R ⊆ B ∪ {0}, S + R = S, as (|S|, |B \ R|, |R \ {0}|).
pub fn brute_stabilizer_pairs(d: &Deltoid) -> Vec<(usize, usize, usize)> {
    let g = d.group();
    let a = d.a().elements();
    let rs: Vec<Element> = d.b().insert(g.identity()).unwrap().elements().to_vec();
    let mut out = Vec::new();
    for sm in 0..1u64 << a.len() {
        let s = subset(g, a, sm);
        for rm in 0..1u64 << rs.len() {
            let r = subset(g, &rs, rm);
            if s.sumset(&r) == s {
                let outside = d.b().difference(&r).len();
                let nonzero = r.iter().filter(|x| **x != g.identity()).count();
                out.push((s.len(), outside, nonzero));
            }
        }
    }
    out
}
