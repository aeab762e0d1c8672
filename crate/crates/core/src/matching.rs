//! Partial matchings of a deltoid: maximum matchings by augmenting paths,
//! the deficiency, and the exhaustive subset sweep used as an oracle.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::assign::max_assignment;
use crate::error::{Error, Result};
use crate::group::Element;
use crate::setalg::Deltoid;

/// Default ceiling on `|A|` for sweeps over all `2^|A|` subsets.
pub const DEFAULT_SUBSET_BOUND: usize = 22;

/// An injective partial map `A -> B` with `a + f(a) ∉ A`, plus its defect.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialMatching {
    pub pairs: Vec<(Element, Element)>,
    pub defect: usize,
}

impl PartialMatching {
    pub fn empty(size: usize) -> Self {
        Self {
            pairs: Vec::new(),
            defect: size,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Element> {
        self.pairs.iter().map(|(a, _)| a)
    }

    pub fn range(&self) -> impl Iterator<Item = &Element> {
        self.pairs.iter().map(|(_, b)| b)
    }
}

/// Why a claimed matching is not a partial matching of the deltoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingViolation {
    NotInA(Element),
    NotInB(Element),
    RepeatedDomain(Element),
    RepeatedRange(Element),
    NotAdjacent(Element, Element),
    WrongDefect { claimed: usize, actual: usize },
}

impl fmt::Display for MatchingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotInA(a) => write!(f, "{a} is not in A"),
            Self::NotInB(b) => write!(f, "{b} is not in B"),
            Self::RepeatedDomain(a) => write!(f, "{a} is matched twice"),
            Self::RepeatedRange(b) => write!(f, "{b} is used twice"),
            Self::NotAdjacent(a, b) => write!(f, "{a} + {b} lies in A"),
            Self::WrongDefect { claimed, actual } => {
                write!(f, "defect recorded as {claimed}, actual {actual}")
            }
        }
    }
}

/// Checks injectivity, the adjacency condition and the defect bookkeeping.
pub fn verify_matching(
    d: &Deltoid,
    f: &PartialMatching,
) -> std::result::Result<(), MatchingViolation> {
    let g = d.group();
    let mut dom = BTreeSet::new();
    let mut ran = BTreeSet::new();
    for (a, b) in &f.pairs {
        if !d.a().contains(a) {
            return Err(MatchingViolation::NotInA(a.clone()));
        }
        if !d.b().contains(b) {
            return Err(MatchingViolation::NotInB(b.clone()));
        }
        if !dom.insert(a) {
            return Err(MatchingViolation::RepeatedDomain(a.clone()));
        }
        if !ran.insert(b) {
            return Err(MatchingViolation::RepeatedRange(b.clone()));
        }
        if d.a().contains(&g.compose_unchecked(a, b)) {
            return Err(MatchingViolation::NotAdjacent(a.clone(), b.clone()));
        }
    }
    let actual = d.size() - f.pairs.len();
    if f.defect != actual {
        return Err(MatchingViolation::WrongDefect {
            claimed: f.defect,
            actual,
        });
    }
    Ok(())
}

pub(crate) fn matching_from_assignment(d: &Deltoid, assigned: &[Option<usize>]) -> PartialMatching {
    let pairs: Vec<(Element, Element)> = assigned
        .iter()
        .enumerate()
        .filter_map(|(i, j)| j.map(|j| (d.a().elements()[i].clone(), d.b().elements()[j].clone())))
        .collect();
    PartialMatching {
        defect: d.size() - pairs.len(),
        pairs,
    }
}

/// A maximum partial matching; its defect is the deficiency.
pub fn max_matching(d: &Deltoid) -> PartialMatching {
    let assigned = max_assignment(d.rows(), d.size(), 1);
    matching_from_assignment(d, &assigned)
}

/// `δ(A, B)`: the least defect of a partial matching.
pub fn deficiency(d: &Deltoid) -> usize {
    max_matching(d).defect
}

/// A partial matching with defect exactly `defect`, if one exists.
pub fn partial_matching_with_defect(d: &Deltoid, defect: usize) -> Result<Option<PartialMatching>> {
    if defect > d.size() {
        return Err(Error::InvalidDefect {
            d: defect,
            max: d.size(),
        });
    }
    let mut best = max_matching(d);
    if defect < best.defect {
        return Ok(None);
    }
    best.pairs.truncate(d.size() - defect);
    best.defect = defect;
    Ok(Some(best))
}

/// For each subset size `s`, the least `|Δ(S)|` over `S ⊆ A` with `|S| = s`.
///
/// Every subset-indexed quantity in this crate (the deficiency, both
/// partition numbers and the two partition criteria) depends on `S` only
/// through `|S|` and `|Δ(S)|`, so one sweep serves them all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetProfile {
    size: usize,
    min_delta: Vec<usize>,
    argmin: Vec<u64>,
}

impl SubsetProfile {
    pub fn compute(d: &Deltoid) -> Result<Self> {
        Self::compute_bounded(d, DEFAULT_SUBSET_BOUND)
    }

    pub fn compute_bounded(d: &Deltoid, bound: usize) -> Result<Self> {
        let n = d.size();
        let limit = bound.min(63);
        if n > limit {
            return Err(Error::ResourceLimit {
                what: "|A| for the subset sweep",
                actual: n as u64,
                limit: limit as u64,
            });
        }
        let rows: Vec<u64> = d
            .rows()
            .iter()
            .map(|r| r.ones().fold(0u64, |m, j| m | (1 << j)))
            .collect();
        let mut profile = Self {
            size: n,
            min_delta: vec![usize::MAX; n + 1],
            argmin: vec![0; n + 1],
        };
        profile.sweep(&rows, 0, 0, 0, 0);
        Ok(profile)
    }

    fn sweep(&mut self, rows: &[u64], from: usize, chosen: u64, count: usize, delta: u64) {
        let dsize = delta.count_ones() as usize;
        if dsize < self.min_delta[count] {
            self.min_delta[count] = dsize;
            self.argmin[count] = chosen;
        }
        for j in from..rows.len() {
            self.sweep(rows, j + 1, chosen | (1 << j), count + 1, delta | rows[j]);
        }
    }

    /// `|A|`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Least `|Δ(S)|` over subsets of size `s`.
    pub fn min_delta(&self, s: usize) -> usize {
        self.min_delta[s]
    }

    /// Row positions of a subset of size `s` attaining [`Self::min_delta`].
    pub fn minimizer(&self, s: usize) -> Vec<usize> {
        let m = self.argmin[s];
        (0..self.size).filter(|&i| m >> i & 1 == 1).collect()
    }

    /// `max_S |S| - |Δ(S)|`, with the size attaining it.
    pub fn deficiency(&self) -> (usize, usize) {
        (0..=self.size)
            .map(|s| (s.saturating_sub(self.min_delta[s]), s))
            .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)))
            .expect("profile is never empty")
    }

    /// `|S| <= k |Δ(S)|` for every `S ⊆ A`.
    pub fn left_criterion(&self, k: usize) -> bool {
        (0..=self.size).all(|s| s <= k * self.min_delta[s])
    }

    /// `k |S| + |B| <= k |A| + |Δ(S)|` for every `S ⊆ A`.
    pub fn right_criterion(&self, k: usize) -> bool {
        (0..=self.size).all(|s| k * s + self.size <= k * self.size + self.min_delta[s])
    }
}

/// `δ(A, B)` as `max_S |S| - |Δ(S)|` over all `2^|A|` subsets.
pub fn deficiency_by_subsets(d: &Deltoid) -> Result<usize> {
    deficiency_by_subsets_bounded(d, DEFAULT_SUBSET_BOUND)
}

pub fn deficiency_by_subsets_bounded(d: &Deltoid, bound: usize) -> Result<usize> {
    Ok(SubsetProfile::compute_bounded(d, bound)?.deficiency().0)
}
