//! Finite subsets of a group and the deltoid `(A, Δ, B)` with
//! `Δ = {(a, b) : a + b ∉ A}`.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, Order};

/// A finite, deduplicated, canonically ordered set of group elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSet {
    group: GroupSpec,
    elements: Vec<Element>,
}

impl GroupSet {
    pub fn new(group: GroupSpec, elements: impl IntoIterator<Item = Element>) -> Result<Self> {
        let elements: Vec<Element> = elements.into_iter().collect();
        for x in &elements {
            group.check(x)?;
        }
        Ok(Self::from_unsorted_unchecked(group, elements))
    }

    pub fn empty(group: GroupSpec) -> Self {
        Self {
            group,
            elements: Vec::new(),
        }
    }

    /// Canonicalizes raw coordinate vectors, then sorts and deduplicates.
    pub fn from_coords<C: AsRef<[i64]>>(group: &GroupSpec, coords: &[C]) -> Result<Self> {
        let elements = coords
            .iter()
            .map(|c| group.element(c.as_ref().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_unsorted_unchecked(group.clone(), elements))
    }

    pub(crate) fn from_unsorted_unchecked(group: GroupSpec, mut elements: Vec<Element>) -> Self {
        elements.sort();
        elements.dedup();
        Self { group, elements }
    }

    pub(crate) fn from_sorted_unchecked(group: GroupSpec, elements: Vec<Element>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self { group, elements }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.elements.iter()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub(crate) fn get(&self, x: &Element) -> Option<&Element> {
        self.index_of(x).map(|i| &self.elements[i])
    }

    pub fn is_subset(&self, other: &GroupSet) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }

    pub fn is_disjoint(&self, other: &GroupSet) -> bool {
        self.elements.iter().all(|x| !other.contains(x))
    }

    pub fn union(&self, other: &GroupSet) -> GroupSet {
        let mut all = self.elements.clone();
        all.extend(other.elements.iter().cloned());
        Self::from_unsorted_unchecked(self.group.clone(), all)
    }

    pub fn intersection(&self, other: &GroupSet) -> GroupSet {
        self.filter(|x| other.contains(x))
    }

    pub fn difference(&self, other: &GroupSet) -> GroupSet {
        self.filter(|x| !other.contains(x))
    }

    pub fn filter(&self, mut keep: impl FnMut(&Element) -> bool) -> GroupSet {
        let elements = self.elements.iter().filter(|x| keep(x)).cloned().collect();
        Self::from_sorted_unchecked(self.group.clone(), elements)
    }

    pub fn insert(&self, x: Element) -> Result<GroupSet> {
        self.group.check(&x)?;
        let mut all = self.elements.clone();
        all.push(x);
        Ok(Self::from_unsorted_unchecked(self.group.clone(), all))
    }

    /// `x + self`.
    pub fn translate(&self, x: &Element) -> GroupSet {
        let moved = self
            .elements
            .iter()
            .map(|y| self.group.compose_unchecked(x, y))
            .collect();
        Self::from_unsorted_unchecked(self.group.clone(), moved)
    }

    /// The sumset `self + other`.
    pub fn sumset(&self, other: &GroupSet) -> GroupSet {
        let mut all = Vec::with_capacity(self.len() * other.len());
        for x in &self.elements {
            for y in &other.elements {
                all.push(self.group.compose_unchecked(x, y));
            }
        }
        Self::from_unsorted_unchecked(self.group.clone(), all)
    }

    /// Picks the elements at the given positions.
    pub fn subset_by_indices(&self, indices: impl IntoIterator<Item = usize>) -> GroupSet {
        let picked = indices
            .into_iter()
            .map(|i| self.elements[i].clone())
            .collect();
        Self::from_unsorted_unchecked(self.group.clone(), picked)
    }

    fn same_group(&self, other: &GroupSet) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(
                self.group.clone(),
                other.group.clone(),
            ));
        }
        Ok(())
    }
}

impl Serialize for GroupSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}

impl<'a> IntoIterator for &'a GroupSet {
    type Item = &'a Element;
    type IntoIter = std::slice::Iter<'a, Element>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// A validated instance `(A, B)` with `|A| = |B| >= 1`, identity not in `B`,
/// and its adjacency materialized as one bitset row per element of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deltoid {
    a: GroupSet,
    b: GroupSet,
    rows: Vec<FixedBitSet>,
}

impl Deltoid {
    pub fn new(a: GroupSet, b: GroupSet) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptySet("A"));
        }
        if b.is_empty() {
            return Err(Error::EmptySet("B"));
        }
        a.same_group(&b)?;
        if a.len() != b.len() {
            return Err(Error::SizeMismatch {
                a: a.len(),
                b: b.len(),
            });
        }
        if b.contains(&b.group.identity()) {
            return Err(Error::IdentityInB);
        }
        let g = a.group().clone();
        let rows = a
            .iter()
            .map(|x| {
                let mut row = FixedBitSet::with_capacity(b.len());
                for (j, y) in b.iter().enumerate() {
                    if !a.contains(&g.compose_unchecked(x, y)) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Ok(Self { a, b, rows })
    }

    pub fn a(&self) -> &GroupSet {
        &self.a
    }

    pub fn b(&self) -> &GroupSet {
        &self.b
    }

    pub fn group(&self) -> &GroupSpec {
        self.a.group()
    }

    /// `|A| = |B|`.
    pub fn size(&self) -> usize {
        self.a.len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[FixedBitSet] {
        &self.rows
    }

    /// Adjacency read column-wise: one bitset over `A` per element of `B`.
    pub fn columns(&self) -> Vec<FixedBitSet> {
        let mut cols = vec![FixedBitSet::with_capacity(self.size()); self.size()];
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                cols[j].insert(i);
            }
        }
        cols
    }

    /// Positions in `A` of the elements of `s`.
    pub fn indices_in_a(&self, s: &GroupSet) -> Result<Vec<usize>> {
        s.iter()
            .map(|x| self.a.index_of(x).ok_or(Error::NotASubset("S", "A")))
            .collect()
    }

    /// `Δ(S)` as a bitset over `B`, for `S` given by row positions.
    pub fn delta_bits(&self, rows: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.size());
        for i in rows {
            out.union_with(&self.rows[i]);
        }
        out
    }

    /// `Δ(S) = {b ∈ B : S + b ⊄ A}`.
    pub fn delta_set(&self, s: &GroupSet) -> Result<GroupSet> {
        let bits = self.delta_bits(self.indices_in_a(s)?);
        Ok(self.b.subset_by_indices(bits.ones()))
    }

    /// `U_S = {b ∈ B : S + b ⊆ A} = B \ Δ(S)`.
    pub fn u_set(&self, s: &GroupSet) -> Result<GroupSet> {
        let mut bits = self.delta_bits(self.indices_in_a(s)?);
        bits.toggle_range(..);
        Ok(self.b.subset_by_indices(bits.ones()))
    }

    /// Some `x ∈ B` with `A + x = A`, i.e. an all-false adjacency column.
    pub fn stabilizing_element(&self) -> Option<&Element> {
        let mut covered = FixedBitSet::with_capacity(self.size());
        for row in &self.rows {
            covered.union_with(row);
        }
        covered.toggle_range(..);
        covered.ones().next().map(|j| &self.b.elements()[j])
    }
}

/// Longest progression `a, a+x, ..., a+(n-1)x` inside `A`, with `n <= o(x)`.
pub fn max_progression_length(a: &GroupSet, x: &Element) -> Result<usize> {
    let g = a.group();
    let cap = match g.order_of(x)? {
        Order::Finite(o) => o as usize,
        Order::Infinite => usize::MAX,
    };
    let mut best = 0;
    for start in a {
        let mut len = 1;
        let mut cur = g.compose_unchecked(start, x);
        while len < cap && a.contains(&cur) {
            len += 1;
            cur = g.compose_unchecked(&cur, x);
        }
        best = best.max(len);
        if best == cap {
            break;
        }
    }
    Ok(best)
}

/// Least `d` such that `B` is a `d`-defective Chowla set: the number of
/// elements whose order is at most `|B|`.
pub fn chowla_defect(b: &GroupSet) -> usize {
    let n = b.len() as u64;
    b.iter()
        .filter(|x| b.group().order_of(x).map(|o| o.at_most(n)).unwrap_or(false))
        .count()
}
