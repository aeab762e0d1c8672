//! Obstruction witnesses certifying `δ(A, B) > ℓ`, and the existence
//! criterion and construction for deficient pairs of prescribed size.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{full_cosets_within, GroupSpec, Order, Subgroup, SubgroupLimits};
use crate::setalg::{Deltoid, GroupSet};
use crate::transform::subgroup_terms_with;

/// A decomposition `A = S ⊎ Y`, `B = R ⊎ Z` with `R` nonempty, `S` a nonempty
/// union of `<R>`-cosets and `|Y| < |R| - level`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionWitness {
    #[serde(rename = "S")]
    pub s: GroupSet,
    #[serde(rename = "R")]
    pub r: GroupSet,
    #[serde(rename = "Y")]
    pub y: GroupSet,
    #[serde(rename = "Z")]
    pub z: GroupSet,
    pub level: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessViolation {
    NotAPartitionOfA,
    NotAPartitionOfB,
    EmptyR,
    EmptyS,
    InfiniteSubgroup,
    NotUnionOfCosets,
    TooLarge { y: usize, r: usize, level: usize },
}

impl fmt::Display for WitnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotAPartitionOfA => f.write_str("S and Y do not partition A"),
            Self::NotAPartitionOfB => f.write_str("R and Z do not partition B"),
            Self::EmptyR => f.write_str("R is empty"),
            Self::EmptyS => f.write_str("S is empty"),
            Self::InfiniteSubgroup => f.write_str("<R> is infinite"),
            Self::NotUnionOfCosets => f.write_str("S is not a union of <R>-cosets"),
            Self::TooLarge { y, r, level } => {
                write!(f, "|Y| = {y} is not below |R| - level = {r} - {level}")
            }
        }
    }
}

fn is_partition(whole: &GroupSet, left: &GroupSet, right: &GroupSet) -> bool {
    left.group() == whole.group()
        && right.group() == whole.group()
        && left.is_disjoint(right)
        && left.len() + right.len() == whole.len()
        && left.is_subset(whole)
        && right.is_subset(whole)
}

/// Checks every witness condition. Success certifies `δ(A, B) > level`
/// without computing a matching.
pub fn verify_witness(
    d: &Deltoid,
    w: &ObstructionWitness,
) -> std::result::Result<(), WitnessViolation> {
    if !is_partition(d.a(), &w.s, &w.y) {
        return Err(WitnessViolation::NotAPartitionOfA);
    }
    if !is_partition(d.b(), &w.r, &w.z) {
        return Err(WitnessViolation::NotAPartitionOfB);
    }
    if w.r.is_empty() {
        return Err(WitnessViolation::EmptyR);
    }
    if w.s.is_empty() {
        return Err(WitnessViolation::EmptyS);
    }
    let h = d
        .group()
        .generate_subgroup(w.r.iter())
        .map_err(|_| WitnessViolation::InfiniteSubgroup)?;
    if full_cosets_within(&w.s, &h) != w.s {
        return Err(WitnessViolation::NotUnionOfCosets);
    }
    if w.y.len() + w.level >= w.r.len() {
        return Err(WitnessViolation::TooLarge {
            y: w.y.len(),
            r: w.r.len(),
            level: w.level,
        });
    }
    Ok(())
}

pub fn find_witness(d: &Deltoid, level: usize) -> Result<Option<ObstructionWitness>> {
    find_witness_with(d, level, SubgroupLimits::default())
}

/// Searches subgroups `H` in canonical order with `R = B ∩ H` and `S` the
/// full `H`-cosets inside `A`. Present iff `δ(A, B) > level`.
pub fn find_witness_with(
    d: &Deltoid,
    level: usize,
    limits: SubgroupLimits,
) -> Result<Option<ObstructionWitness>> {
    for t in subgroup_terms_with(d, limits)? {
        let (s, r) = (t.full_cosets, t.b_in_subgroup);
        if r.is_empty() || s.is_empty() {
            continue;
        }
        let y = d.a().difference(&s);
        if y.len() + level < r.len() {
            let z = d.b().difference(&r);
            return Ok(Some(ObstructionWitness { s, r, y, z, level }));
        }
    }
    Ok(None)
}

/// Smallest order of a nontrivial proper subgroup, if one exists.
pub fn smallest_proper_subgroup_order(g: &GroupSpec) -> Result<Option<usize>> {
    let subgroups = g.enumerate_subgroups()?;
    let total = subgroups.last().map_or(1, Subgroup::len);
    Ok(subgroups
        .iter()
        .map(Subgroup::len)
        .find(|&m| m > 1 && m < total))
}

fn check_existence_params(g: &GroupSpec, n: usize) -> Result<Vec<Subgroup>> {
    let order = match g.order() {
        Order::Infinite => return Err(Error::UnsupportedInfiniteGroup(g.clone())),
        Order::Finite(o) => o as usize,
    };
    let subgroups = g.enumerate_subgroups()?;
    let n0 = subgroups
        .iter()
        .map(Subgroup::len)
        .find(|&m| m > 1 && m < order)
        .ok_or_else(|| {
            Error::InvalidParameters(format!("{g} has no nontrivial proper subgroup"))
        })?;
    if n < n0 || n >= order {
        return Err(Error::InvalidParameters(format!(
            "n = {n} must satisfy {n0} <= n < {order}"
        )));
    }
    Ok(subgroups)
}

/// A subgroup `H` with `|H| <= n` and `|H|` dividing none of
/// `n+1, ..., n+level+1`; the smallest such in canonical order.
pub fn existence_predicate(g: &GroupSpec, n: usize, level: usize) -> Result<Option<Subgroup>> {
    let subgroups = check_existence_params(g, n)?;
    Ok(subgroups.into_iter().find(|h| {
        let m = h.len();
        m <= n && (1..=level + 1).all(|j| !(n + j).is_multiple_of(m))
    }))
}

/// Output of [`construct_deficient_pair`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeficientPair {
    pub a: GroupSet,
    pub b: GroupSet,
    pub subgroup: Subgroup,
    pub witness: ObstructionWitness,
}

/// Builds `A, B` with `|A| = |B| = n`, `0 ∉ B` and `δ(A, B) > level`:
/// `S` is the first `q` cosets of `H`, `Y` the first `r` elements outside `S`
/// (with `n = q|H| + r`), `R = H \ {0}` and `Z` the first `n - |H| + 1`
/// elements outside `R ∪ {0}`.
pub fn construct_deficient_pair(g: &GroupSpec, n: usize, level: usize) -> Result<DeficientPair> {
    let h = existence_predicate(g, n, level)?.ok_or(Error::NoConstruction)?;
    let all = g.elements()?;
    let m = h.len();
    let (q, rem) = (n / m, n % m);

    let mut s = GroupSet::empty(g.clone());
    for x in &all {
        if s.len() == q * m {
            break;
        }
        if !s.contains(x) {
            s = s.union(&h.to_set().translate(x));
        }
    }
    let y_elems = all.iter().filter(|x| !s.contains(x)).take(rem).cloned();
    let y = GroupSet::new(g.clone(), y_elems)?;

    let identity = g.identity();
    let r = h.to_set().filter(|x| *x != identity);
    let z_elems = all
        .iter()
        .filter(|x| **x != identity && !r.contains(x))
        .take(n + 1 - m)
        .cloned();
    let z = GroupSet::new(g.clone(), z_elems)?;

    if s.len() != q * m || y.len() != rem || z.len() != n + 1 - m {
        return Err(Error::Internal(
            "not enough group elements for the construction".into(),
        ));
    }
    let a = s.union(&y);
    let b = r.union(&z);
    let witness = ObstructionWitness { s, r, y, z, level };
    let d = Deltoid::new(a.clone(), b.clone())?;
    verify_witness(&d, &witness)
        .map_err(|v| Error::Internal(format!("constructed witness rejected: {v}")))?;
    Ok(DeficientPair {
        a,
        b,
        subgroup: h,
        witness,
    })
}
