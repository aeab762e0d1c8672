//! Instance generators for sweeps: every instance of a given size in a
//! finite group, or random instances in any group.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};
use crate::setalg::{Deltoid, GroupSet};

/// Calls `f` on every `k`-subset of `0..n`, in lexicographic order.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every deltoid `(A, B)` of the given size in a finite group.
pub fn for_each_instance(g: &GroupSpec, size: usize, mut f: impl FnMut(Deltoid)) -> Result<()> {
    let all = g.elements()?;
    let nonzero: Vec<Element> = all
        .iter()
        .filter(|x| **x != g.identity())
        .cloned()
        .collect();
    let mut b_sets = Vec::new();
    for_each_combination(nonzero.len(), size, |ix| {
        b_sets.push(pick(g, &nonzero, ix));
    });
    let mut failure = None;
    for_each_combination(all.len(), size, |ix| {
        let a = pick(g, &all, ix);
        for b in &b_sets {
            match Deltoid::new(a.clone(), b.clone()) {
                Ok(d) => f(d),
                Err(e) => failure = Some(e),
            }
        }
    });
    failure.map_or(Ok(()), Err)
}

fn pick(g: &GroupSpec, from: &[Element], ix: &[usize]) -> GroupSet {
    GroupSet::new(g.clone(), ix.iter().map(|&i| from[i].clone())).expect("canonical elements")
}

/// A uniformly random element; free coordinates are drawn from
/// `-radius..=radius`.
pub fn random_element<R: Rng>(rng: &mut R, g: &GroupSpec, radius: i64) -> Element {
    let mut coords: Vec<i64> = g
        .torsion()
        .iter()
        .map(|&n| rng.gen_range(0..n as i64))
        .collect();
    coords.extend((0..g.free_rank()).map(|_| rng.gen_range(-radius..=radius)));
    g.element(coords).expect("dimension matches")
}

fn random_set<R: Rng>(
    rng: &mut R,
    g: &GroupSpec,
    size: usize,
    radius: i64,
    exclude_identity: bool,
) -> Result<GroupSet> {
    if let Some(order) = g.order().finite() {
        let pool: Vec<Element> = g
            .elements()?
            .into_iter()
            .filter(|x| !exclude_identity || *x != g.identity())
            .collect();
        if size > pool.len() {
            return Err(Error::InvalidParameters(format!(
                "cannot draw {size} elements from a group of order {order}"
            )));
        }
        let ix: Vec<usize> = sample(rng, pool.len(), size).into_iter().collect();
        return Ok(pick(g, &pool, &ix));
    }
    let space = (2 * radius + 1) as usize * g.torsion().iter().product::<u64>() as usize;
    if size + 1 > space {
        return Err(Error::InvalidParameters(format!(
            "radius {radius} leaves too few elements for size {size}"
        )));
    }
    let mut chosen = BTreeSet::new();
    while chosen.len() < size {
        let x = random_element(rng, g, radius);
        if !(exclude_identity && x == g.identity()) {
            chosen.insert(x);
        }
    }
    GroupSet::new(g.clone(), chosen)
}

/// A random deltoid of the given size. `B` avoids the identity.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    g: &GroupSpec,
    size: usize,
    radius: i64,
) -> Result<Deltoid> {
    let a = random_set(rng, g, size, radius, false)?;
    let b = random_set(rng, g, size, radius, true)?;
    Deltoid::new(a, b)
}
