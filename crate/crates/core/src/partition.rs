//! Left and right partition numbers and constructive partitions of `A` and
//! `B` into admissible sets.
//!
//! A partition into `k` classes is built from a capacity-`k` assignment
//! (each element of the partitioned side to one neighbour, each neighbour
//! used at most `k` times). The `i`-th preimage of every neighbour goes to
//! class `i`, which makes each class the domain (left) or range (right) of a
//! partial matching.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::assign::max_assignment;
use crate::error::{Error, Result};
use crate::group::SubgroupLimits;
use crate::matching::{verify_matching, MatchingViolation, PartialMatching, SubsetProfile};
use crate::setalg::{Deltoid, GroupSet};
use crate::structure::{verify_witness, ObstructionWitness};
use crate::transform::subgroup_terms_with;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PartitionNumber {
    Finite(usize),
    Infinite,
}

impl PartitionNumber {
    pub fn finite(self) -> Option<usize> {
        match self {
            Self::Finite(k) => Some(k),
            Self::Infinite => None,
        }
    }
}

impl fmt::Display for PartitionNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(k) => write!(f, "{k}"),
            Self::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for PartitionNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(k) => s.serialize_u64(*k as u64),
            Self::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// One class of a partition together with the matching that certifies it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleClass {
    pub elements: GroupSet,
    pub matching: PartialMatching,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissiblePartition {
    pub side: Side,
    pub classes: Vec<AdmissibleClass>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionViolation {
    NotDisjoint,
    DoesNotCover,
    Matching(usize, MatchingViolation),
    /// The class is not the domain (left) or range (right) of its matching.
    ClassMismatch(usize),
}

impl fmt::Display for PartitionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotDisjoint => f.write_str("classes overlap"),
            Self::DoesNotCover => f.write_str("classes do not cover the partitioned set"),
            Self::Matching(i, v) => write!(f, "class {i}: {v}"),
            Self::ClassMismatch(i) => write!(f, "class {i} does not match its certificate"),
        }
    }
}

/// Checks disjointness, coverage and every class certificate.
pub fn verify_partition(
    d: &Deltoid,
    p: &AdmissiblePartition,
) -> std::result::Result<(), PartitionViolation> {
    let whole = match p.side {
        Side::Left => d.a(),
        Side::Right => d.b(),
    };
    let mut union = GroupSet::empty(d.group().clone());
    let mut total = 0;
    for (i, class) in p.classes.iter().enumerate() {
        verify_matching(d, &class.matching).map_err(|v| PartitionViolation::Matching(i, v))?;
        let certified: Vec<_> = match p.side {
            Side::Left => class.matching.domain().cloned().collect(),
            Side::Right => class.matching.range().cloned().collect(),
        };
        let certified = GroupSet::new(d.group().clone(), certified)
            .map_err(|_| PartitionViolation::ClassMismatch(i))?;
        if certified != class.elements {
            return Err(PartitionViolation::ClassMismatch(i));
        }
        total += class.elements.len();
        union = union.union(&class.elements);
    }
    if union.len() != total {
        return Err(PartitionViolation::NotDisjoint);
    }
    if &union != whole {
        return Err(PartitionViolation::DoesNotCover);
    }
    Ok(())
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// `ρ` from the subset sweep: infinite when `A + x = A` for some `x ∈ B`,
/// else the maximum of `⌈|U_S| / (|A| - |S|)⌉` over proper `S ⊊ A`.
pub fn rho(d: &Deltoid) -> Result<PartitionNumber> {
    Ok(rho_from_profile(d, &SubsetProfile::compute(d)?))
}

/// `p` must be the profile of `d`; the infinite case is read off `d`'s
/// columns, which the profile does not see.
pub fn rho_from_profile(d: &Deltoid, p: &SubsetProfile) -> PartitionNumber {
    if d.stabilizing_element().is_some() {
        return PartitionNumber::Infinite;
    }
    let n = p.size();
    let k = (0..n)
        .map(|s| ceil_div(n - p.min_delta(s), n - s))
        .max()
        .unwrap_or(1);
    PartitionNumber::Finite(k.max(1))
}

/// `λ` from the subset sweep: the maximum of `⌈|S| / |Δ(S)|⌉` over nonempty `S`.
pub fn lambda(d: &Deltoid) -> Result<PartitionNumber> {
    lambda_from_profile(&SubsetProfile::compute(d)?)
}

pub fn lambda_from_profile(p: &SubsetProfile) -> Result<PartitionNumber> {
    let mut best = 1;
    for s in 1..=p.size() {
        let delta = p.min_delta(s);
        if delta == 0 {
            return Err(Error::Internal(format!(
                "a nonempty subset of size {s} has empty Δ(S)"
            )));
        }
        best = best.max(ceil_div(s, delta));
    }
    Ok(PartitionNumber::Finite(best))
}

/// `λ` as the least feasible `k` for [`partition_left`]. No subset sweep, so
/// it works for any `|A|`.
pub fn lambda_by_search(d: &Deltoid) -> usize {
    let (mut lo, mut hi) = (1, d.size());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if left_assignment(d, mid).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// `ρ` as the least feasible `k` for [`partition_right`]; infinite when no
/// `k` works.
pub fn rho_by_search(d: &Deltoid) -> PartitionNumber {
    if d.stabilizing_element().is_some() {
        return PartitionNumber::Infinite;
    }
    let columns = d.columns();
    let (mut lo, mut hi) = (1, d.size());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if right_assignment(d, &columns, mid).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    PartitionNumber::Finite(lo)
}

fn left_assignment(d: &Deltoid, k: usize) -> Option<Vec<usize>> {
    let assigned = max_assignment(d.rows(), d.size(), k);
    assigned.into_iter().collect()
}

fn right_assignment(d: &Deltoid, columns: &[FixedBitSet], k: usize) -> Option<Vec<usize>> {
    let assigned = max_assignment(columns, d.size(), k);
    assigned.into_iter().collect()
}

/// Splits `owner -> target` into classes: the `i`-th owner of each target
/// lands in class `i`. Returns `(owner, target)` lists per class.
fn split_round_robin(targets: &[usize], n_targets: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    let mut load = vec![0usize; n_targets];
    let mut classes = vec![Vec::new(); k];
    for (owner, &t) in targets.iter().enumerate() {
        classes[load[t]].push((owner, t));
        load[t] += 1;
    }
    classes
}

fn finish(side: Side, mut classes: Vec<AdmissibleClass>) -> AdmissiblePartition {
    classes.sort_by(|x, y| {
        y.elements
            .len()
            .cmp(&x.elements.len())
            .then_with(|| x.elements.elements().cmp(y.elements.elements()))
    });
    AdmissiblePartition { side, classes }
}

/// Partition of `A` into `k` left-admissible sets, if one exists. Classes
/// beyond those needed are empty.
pub fn partition_left(d: &Deltoid, k: usize) -> Option<AdmissiblePartition> {
    if k == 0 {
        return None;
    }
    let targets = left_assignment(d, k)?;
    let (a, b) = (d.a().elements(), d.b().elements());
    let classes = split_round_robin(&targets, d.size(), k)
        .into_iter()
        .map(|pairs| {
            let mut pairs: Vec<_> = pairs
                .into_iter()
                .map(|(i, j)| (a[i].clone(), b[j].clone()))
                .collect();
            pairs.sort();
            AdmissibleClass {
                elements: GroupSet::new(d.group().clone(), pairs.iter().map(|p| p.0.clone()))
                    .expect("elements of A are canonical"),
                matching: PartialMatching {
                    defect: d.size() - pairs.len(),
                    pairs,
                },
            }
        })
        .collect();
    Some(finish(Side::Left, classes))
}

/// Partition of `B` into `k` right-admissible sets, if one exists. Classes
/// beyond those needed are empty.
pub fn partition_right(d: &Deltoid, k: usize) -> Option<AdmissiblePartition> {
    if k == 0 {
        return None;
    }
    let columns = d.columns();
    let targets = right_assignment(d, &columns, k)?;
    let (a, b) = (d.a().elements(), d.b().elements());
    let classes = split_round_robin(&targets, d.size(), k)
        .into_iter()
        .map(|pairs| {
            let mut pairs: Vec<_> = pairs
                .into_iter()
                .map(|(j, i)| (a[i].clone(), b[j].clone()))
                .collect();
            pairs.sort();
            AdmissibleClass {
                elements: GroupSet::new(d.group().clone(), pairs.iter().map(|p| p.1.clone()))
                    .expect("elements of B are canonical"),
                matching: PartialMatching {
                    defect: d.size() - pairs.len(),
                    pairs,
                },
            }
        })
        .collect();
    Some(finish(Side::Right, classes))
}

pub fn rho_by_pairs(d: &Deltoid) -> Result<PartitionNumber> {
    rho_by_pairs_with(d, SubgroupLimits::default())
}

/// `ρ` as the maximum of `⌈|B ∩ H| / (|A| - |S_H|)⌉` over subgroups `H`
/// meeting `B`, where `S_H` is the union of full `H`-cosets in `A`.
pub fn rho_by_pairs_with(d: &Deltoid, limits: SubgroupLimits) -> Result<PartitionNumber> {
    if d.stabilizing_element().is_some() {
        return Err(Error::InfiniteRho);
    }
    let mut best = 1;
    for t in subgroup_terms_with(d, limits)? {
        if t.b_in_subgroup.is_empty() {
            continue;
        }
        let room = d.size() - t.full_cosets.len();
        if room == 0 {
            return Err(Error::Internal(
                "a subgroup meeting B stabilizes A although ρ is finite".into(),
            ));
        }
        best = best.max(ceil_div(t.b_in_subgroup.len(), room));
    }
    Ok(PartitionNumber::Finite(best))
}

pub fn lambda_lower_bound(d: &Deltoid) -> Result<usize> {
    lambda_lower_bound_with(d, SubgroupLimits::default())
}

/// The maximum of `⌈|S_H| / (|B| - |B ∩ H|)⌉` over subgroups `H` whose full
/// cosets in `A` are nonempty. Never exceeds `λ`.
pub fn lambda_lower_bound_with(d: &Deltoid, limits: SubgroupLimits) -> Result<usize> {
    let mut best = 1;
    for t in subgroup_terms_with(d, limits)? {
        if t.full_cosets.is_empty() {
            continue;
        }
        let room = d.size() - t.b_in_subgroup.len();
        if room == 0 {
            return Err(Error::Internal(
                "B lies inside a subgroup whose cosets fill part of A".into(),
            ));
        }
        best = best.max(ceil_div(t.full_cosets.len(), room));
    }
    Ok(best)
}

/// `⌈|R| / |Y|⌉`, a lower bound for `ρ` read off a valid witness.
pub fn rho_estimate_from_witness(d: &Deltoid, w: &ObstructionWitness) -> Result<usize> {
    verify_witness(d, w).map_err(|v| Error::InvalidWitness(v.to_string()))?;
    if d.stabilizing_element().is_some() {
        return Err(Error::InfiniteRho);
    }
    if w.y.is_empty() {
        return Err(Error::Internal(
            "witness has empty Y although ρ is finite".into(),
        ));
    }
    Ok(ceil_div(w.r.len(), w.y.len()))
}
