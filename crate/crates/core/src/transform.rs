//! Dyson's e-transform, stabilization to `S + R = S`, and the deficiency as
//! a maximum over stabilizer pairs.
//!
//! A stabilizer pair `(S, R)` with `S ⊆ A`, `R ⊆ B ∪ {0}` and `S + R = S`
//! makes `S` a union of `<R>`-cosets. For a fixed subgroup `H` the largest
//! admissible choices are `S = ` full `H`-cosets inside `A` and
//! `R = (B ∩ H) ∪ {0}`, and both can be taken at once, so every pair-indexed
//! maximum reduces to a maximum over subgroups.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{full_cosets_within, Element, Subgroup, SubgroupLimits};
use crate::setalg::{Deltoid, GroupSet};

/// A pair `(S, R)` with `S + R = S`, scored by `|S| - |B \ R|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerPair {
    #[serde(rename = "S")]
    pub s: GroupSet,
    #[serde(rename = "R")]
    pub r: GroupSet,
    pub value: i64,
}

impl StabilizerPair {
    /// Checks `S + R ⊆ S`, `S ⊆ A`, `R ⊆ B ∪ {0}` and the recorded value.
    pub fn is_valid_for(&self, d: &Deltoid) -> bool {
        let g = d.group();
        let closed = self.s.iter().all(|x| {
            self.r
                .iter()
                .all(|y| self.s.contains(&g.compose_unchecked(x, y)))
        });
        let r_ok = self
            .r
            .iter()
            .all(|y| d.b().contains(y) || *y == g.identity());
        let outside = d.b().difference(&self.r).len() as i64;
        closed && self.s.is_subset(d.a()) && r_ok && self.value == self.s.len() as i64 - outside
    }
}

/// One step `S1 = S ∪ (e + R)`, `R1 = R ∩ (S - e)`, triggered by `e ∈ S`,
/// `r ∈ R` with `e + r ∉ S`.
pub fn e_transform_step(
    s: &GroupSet,
    r: &GroupSet,
    e: &Element,
    witness: &Element,
) -> Result<(GroupSet, GroupSet)> {
    let g = s.group();
    if r.group() != g {
        return Err(Error::GroupMismatch(g.clone(), r.group().clone()));
    }
    if !r.contains(&g.identity()) {
        return Err(Error::InvalidWitness("R must contain the identity".into()));
    }
    if !s.contains(e) {
        return Err(Error::InvalidWitness(format!("{e} is not in S")));
    }
    if !r.contains(witness) {
        return Err(Error::InvalidWitness(format!("{witness} is not in R")));
    }
    if s.contains(&g.compose_unchecked(e, witness)) {
        return Err(Error::InvalidWitness(format!(
            "{e} + {witness} already lies in S"
        )));
    }
    let s1 = s.union(&r.translate(e));
    let shifted = s.translate(&g.invert_unchecked(e));
    let r1 = r.intersection(&shifted);
    Ok((s1, r1))
}

fn first_escape(s: &GroupSet, r: &GroupSet) -> Option<(Element, Element)> {
    let g = s.group();
    s.iter().find_map(|e| {
        r.iter()
            .find(|x| !s.contains(&g.compose_unchecked(e, x)))
            .map(|x| (e.clone(), x.clone()))
    })
}

/// Repeats [`e_transform_step`] until `S' + R' = S'`. The result satisfies
/// `S ⊆ S' + R' = S' ⊆ A`, `0 ∈ R' ⊆ R` and `|S'| + |R'| = |S| + |R|`.
pub fn stabilize(a: &GroupSet, s: &GroupSet, r: &GroupSet) -> Result<(GroupSet, GroupSet)> {
    let g = a.group();
    if s.group() != g || r.group() != g {
        return Err(Error::GroupMismatch(g.clone(), s.group().clone()));
    }
    if s.is_empty() || r.is_empty() {
        return Err(Error::InvalidInput("S and R must be nonempty".into()));
    }
    if !r.contains(&g.identity()) {
        return Err(Error::InvalidInput("R must contain the identity".into()));
    }
    if !s.sumset(r).is_subset(a) {
        return Err(Error::InvalidInput("S + R is not contained in A".into()));
    }
    let (mut s, mut r) = (s.clone(), r.clone());
    while let Some((e, x)) = first_escape(&s, &r) {
        let (s1, r1) = e_transform_step(&s, &r, &e, &x)?;
        if s1.len() <= s.len() || !s1.is_subset(a) {
            return Err(Error::Internal(
                "e-transform failed to grow S inside A".into(),
            ));
        }
        (s, r) = (s1, r1);
    }
    Ok((s, r))
}

/// The data one subgroup `H` contributes to every pair-indexed maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupTerm {
    pub subgroup: Subgroup,
    /// Union of the `H`-cosets contained in `A`.
    pub full_cosets: GroupSet,
    /// `B ∩ H`.
    pub b_in_subgroup: GroupSet,
}

impl SubgroupTerm {
    /// `|full cosets| - |B| + |B ∩ H|`.
    pub fn deficiency_value(&self, d: &Deltoid) -> i64 {
        self.full_cosets.len() as i64 - d.size() as i64 + self.b_in_subgroup.len() as i64
    }

    /// The maximal stabilizer pair for this subgroup.
    pub fn pair(&self, d: &Deltoid) -> StabilizerPair {
        let r = self
            .b_in_subgroup
            .insert(d.group().identity())
            .expect("identity is canonical");
        StabilizerPair {
            s: self.full_cosets.clone(),
            r,
            value: self.deficiency_value(d),
        }
    }
}

pub fn subgroup_terms(d: &Deltoid) -> Result<Vec<SubgroupTerm>> {
    subgroup_terms_with(d, SubgroupLimits::default())
}

/// One [`SubgroupTerm`] per subgroup of `G`, in canonical subgroup order.
pub fn subgroup_terms_with(d: &Deltoid, limits: SubgroupLimits) -> Result<Vec<SubgroupTerm>> {
    let subgroups = d.group().enumerate_subgroups_with(limits)?;
    Ok(subgroups
        .into_iter()
        .map(|h| SubgroupTerm {
            full_cosets: full_cosets_within(d.a(), &h),
            b_in_subgroup: d.b().filter(|x| h.contains(x)),
            subgroup: h,
        })
        .collect())
}

/// `δ(A, B)` as the maximum of `|S| - |B \ R|` over stabilizer pairs.
pub fn deficiency_by_subgroups(d: &Deltoid) -> Result<usize> {
    Ok(best_stabilizer_pair(d)?.value as usize)
}

/// The first pair, in canonical subgroup order, attaining the maximum.
pub fn best_stabilizer_pair(d: &Deltoid) -> Result<StabilizerPair> {
    best_stabilizer_pair_with(d, SubgroupLimits::default())
}

pub fn best_stabilizer_pair_with(d: &Deltoid, limits: SubgroupLimits) -> Result<StabilizerPair> {
    let terms = subgroup_terms_with(d, limits)?;
    let mut best: Option<&SubgroupTerm> = None;
    for t in &terms {
        if best.is_none_or(|b| t.deficiency_value(d) > b.deficiency_value(d)) {
            best = Some(t);
        }
    }
    let pair = best
        .ok_or_else(|| Error::Internal("no subgroups enumerated".into()))?
        .pair(d);
    if pair.value < 0 {
        return Err(Error::Internal("trivial subgroup term must be zero".into()));
    }
    Ok(pair)
}
