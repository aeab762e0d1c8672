//! Finitely generated abelian groups `Z/n1 x ... x Z/nk x Z^r`.
//!
//! The group operation is written additively: elements are integer vectors,
//! torsion coordinates are reduced into `0..n_i`, free coordinates are plain
//! integers, and the identity is the zero vector.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setalg::GroupSet;

/// Default ceiling on `|G|` for subgroup enumeration.
pub const DEFAULT_MAX_GROUP_ORDER: u64 = 10_000;
/// Default ceiling on the number of subgroups produced by one enumeration.
pub const DEFAULT_MAX_SUBGROUPS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubgroupLimits {
    pub max_group_order: u64,
    pub max_subgroups: usize,
}

impl Default for SubgroupLimits {
    fn default() -> Self {
        Self {
            max_group_order: DEFAULT_MAX_GROUP_ORDER,
            max_subgroups: DEFAULT_MAX_SUBGROUPS,
        }
    }
}

/// Order of a group or of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }

    /// `true` iff this order is at most `n` (infinite orders never are).
    pub fn at_most(self, n: u64) -> bool {
        matches!(self, Order::Finite(m) if m <= n)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

/// An abelian group presented as a product of cyclic factors plus a free part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    torsion: Vec<u64>,
    free_rank: usize,
}

/// A canonical group element. Construct through [`GroupSpec::element`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(Vec<i64>);

impl Element {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl GroupSpec {
    pub fn new(torsion: Vec<u64>, free_rank: usize) -> Result<Self> {
        if let Some(&bad) = torsion.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!(
                "cyclic factor modulus must be at least 2, got {bad}"
            )));
        }
        Ok(Self { torsion, free_rank })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n], 0)
    }

    pub fn trivial() -> Self {
        Self {
            torsion: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Length of every element's coordinate vector.
    pub fn dim(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// `|G|`; saturates at `u64::MAX` for absurdly large products.
    pub fn order(&self) -> Order {
        if self.free_rank > 0 {
            return Order::Infinite;
        }
        Order::Finite(
            self.torsion
                .iter()
                .fold(1u64, |acc, &n| acc.saturating_mul(n)),
        )
    }

    pub fn identity(&self) -> Element {
        Element(vec![0; self.dim()])
    }

    /// Builds the canonical element with the given coordinates, reducing
    /// torsion coordinates.
    pub fn element(&self, coords: impl Into<Vec<i64>>) -> Result<Element> {
        let mut coords = coords.into();
        if coords.len() != self.dim() {
            return Err(self.dim_error(coords.len()));
        }
        for (c, &n) in coords.iter_mut().zip(&self.torsion) {
            *c = c.rem_euclid(n as i64);
        }
        Ok(Element(coords))
    }

    fn dim_error(&self, found: usize) -> Error {
        Error::InvalidElement {
            group: self.clone(),
            reason: format!("expected {} coordinates, found {found}", self.dim()),
        }
    }

    /// Checks that `x` is a canonical element of this group.
    pub fn check(&self, x: &Element) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(self.dim_error(x.dim()));
        }
        for (i, (&c, &n)) in x.0.iter().zip(&self.torsion).enumerate() {
            if c < 0 || c >= n as i64 {
                return Err(Error::InvalidElement {
                    group: self.clone(),
                    reason: format!("coordinate {i} = {c} is not reduced modulo {n}"),
                });
            }
        }
        Ok(())
    }

    /// `x + y`, or `x . y` in multiplicative notation.
    pub fn compose(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.compose_unchecked(x, y))
    }

    pub(crate) fn compose_unchecked(&self, x: &Element, y: &Element) -> Element {
        let t = self.torsion.len();
        let coords =
            x.0.iter()
                .zip(&y.0)
                .enumerate()
                .map(|(i, (&a, &b))| {
                    if i < t {
                        let n = self.torsion[i] as i64;
                        (a + b) % n
                    } else {
                        a + b
                    }
                })
                .collect();
        Element(coords)
    }

    pub fn invert(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(self.invert_unchecked(x))
    }

    pub(crate) fn invert_unchecked(&self, x: &Element) -> Element {
        let t = self.torsion.len();
        let coords =
            x.0.iter()
                .enumerate()
                .map(|(i, &a)| {
                    if i < t {
                        (self.torsion[i] as i64 - a) % self.torsion[i] as i64
                    } else {
                        -a
                    }
                })
                .collect();
        Element(coords)
    }

    /// Order of `x`: infinite iff a free coordinate is nonzero, otherwise
    /// `lcm_i n_i / gcd(n_i, x_i)`.
    pub fn order_of(&self, x: &Element) -> Result<Order> {
        self.check(x)?;
        let t = self.torsion.len();
        if x.0[t..].iter().any(|&c| c != 0) {
            return Ok(Order::Infinite);
        }
        let o = self
            .torsion
            .iter()
            .zip(&x.0)
            .fold(1u64, |acc, (&n, &c)| lcm(acc, n / gcd(n, c as u64)));
        Ok(Order::Finite(o))
    }

    /// All elements of a finite group in canonical order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        let indexer = Indexer::new(self)?;
        Ok((0..indexer.size).map(|i| indexer.decode(i)).collect())
    }

    /// The subgroup generated by `gens`. Fails when a generator has a nonzero
    /// free coordinate, since the closure would be infinite.
    pub fn generate_subgroup<'a>(
        &self,
        gens: impl IntoIterator<Item = &'a Element>,
    ) -> Result<Subgroup> {
        let t = self.torsion.len();
        let mut members: BTreeSet<Element> = BTreeSet::from([self.identity()]);
        for g in gens {
            self.check(g)?;
            if g.0[t..].iter().any(|&c| c != 0) {
                return Err(Error::InfiniteSubgroup(g.0.clone()));
            }
            if members.contains(g) {
                continue;
            }
            // <H, g> is the union of the cosets H + kg for k below the index of H in it.
            let base: Vec<Element> = members.iter().cloned().collect();
            let mut step = g.clone();
            while !base.binary_search(&step).is_ok() {
                members.extend(base.iter().map(|h| self.compose_unchecked(h, &step)));
                step = self.compose_unchecked(&step, g);
            }
        }
        Ok(Subgroup {
            ambient: self.clone(),
            elements: members.into_iter().collect(),
        })
    }

    pub fn enumerate_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.enumerate_subgroups_with(SubgroupLimits::default())
    }

    /// Every subgroup exactly once, ordered by size and then by the sorted
    /// element list.
    pub fn enumerate_subgroups_with(&self, limits: SubgroupLimits) -> Result<Vec<Subgroup>> {
        let order = match self.order() {
            Order::Infinite => return Err(Error::UnsupportedInfiniteGroup(self.clone())),
            Order::Finite(n) => n,
        };
        if order > limits.max_group_order {
            return Err(Error::ResourceLimit {
                what: "group order",
                actual: order,
                limit: limits.max_group_order,
            });
        }
        let ix = Indexer::new(self)?;
        let n = ix.size;

        // Cyclic subgroups, each found once by skipping known generators.
        let mut is_generator = FixedBitSet::with_capacity(n);
        let mut cyclics: Vec<(usize, FixedBitSet)> = Vec::new();
        for x in 0..n {
            if is_generator.contains(x) {
                continue;
            }
            let mut orbit = vec![0usize];
            let mut cur = x;
            while cur != 0 {
                orbit.push(cur);
                cur = ix.add(cur, x);
            }
            let o = orbit.len() as u64;
            let mut bits = FixedBitSet::with_capacity(n);
            for (k, &y) in orbit.iter().enumerate() {
                bits.insert(y);
                if gcd(k as u64, o) == 1 {
                    is_generator.insert(y);
                }
            }
            cyclics.push((x, bits));
        }

        let mut trivial = FixedBitSet::with_capacity(n);
        trivial.insert(0);
        let mut seen: HashSet<FixedBitSet> = HashSet::from([trivial.clone()]);
        let mut found = vec![trivial.clone()];
        let mut queue = VecDeque::from([trivial]);
        while let Some(h) = queue.pop_front() {
            for (g, c) in &cyclics {
                if c.is_subset(&h) {
                    continue;
                }
                let joined = ix.join(&h, *g);
                if seen.insert(joined.clone()) {
                    if found.len() >= limits.max_subgroups {
                        return Err(Error::ResourceLimit {
                            what: "subgroup count",
                            actual: found.len() as u64 + 1,
                            limit: limits.max_subgroups as u64,
                        });
                    }
                    found.push(joined.clone());
                    queue.push_back(joined);
                }
            }
        }

        let mut subgroups: Vec<Subgroup> = found
            .into_iter()
            .map(|bits| Subgroup {
                ambient: self.clone(),
                elements: bits.ones().map(|i| ix.decode(i)).collect(),
            })
            .collect();
        subgroups.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.elements.cmp(&b.elements))
        });
        Ok(subgroups)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 0 {
            return f.write_str("1");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|n| format!("Z{n}")).collect();
        parts.extend(std::iter::repeat_n("Z".to_string(), self.free_rank));
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses literals such as `Z12`, `Z2xZ4`, `Z2xZ` and `1` (trivial group).
    /// Cyclic factors must precede free factors.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::trivial());
        }
        let mut torsion = Vec::new();
        let mut free_rank = 0;
        for part in s.split(['x', 'X']) {
            let part = part.trim();
            let rest = part
                .strip_prefix('Z')
                .ok_or_else(|| Error::InvalidGroup(format!("bad factor {part:?} in {s:?}")))?;
            if rest.is_empty() {
                free_rank += 1;
                continue;
            }
            if free_rank > 0 {
                return Err(Error::InvalidGroup(format!(
                    "cyclic factor {part:?} follows a free factor in {s:?}"
                )));
            }
            let n: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidGroup(format!("bad modulus {rest:?} in {s:?}")))?;
            torsion.push(n);
        }
        Self::new(torsion, free_rank)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite subgroup, stored as its sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    ambient: GroupSpec,
    elements: Vec<Element>,
}

impl Subgroup {
    pub fn ambient(&self) -> &GroupSpec {
        &self.ambient
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn to_set(&self) -> GroupSet {
        GroupSet::from_sorted_unchecked(self.ambient.clone(), self.elements.clone())
    }

    /// Direct check of identity membership and closure under the group
    /// operation and inversion.
    pub fn is_closed(&self) -> bool {
        let g = &self.ambient;
        self.contains(&g.identity())
            && self.elements.iter().all(|x| {
                self.contains(&g.invert_unchecked(x))
                    && self
                        .elements
                        .iter()
                        .all(|y| self.contains(&g.compose_unchecked(x, y)))
            })
    }
}

/// Union of the `H`-cosets that lie entirely inside `a`.
pub fn full_cosets_within(a: &GroupSet, h: &Subgroup) -> GroupSet {
    let g = a.group();
    let mut kept = Vec::new();
    let mut visited: BTreeSet<&Element> = BTreeSet::new();
    for x in a.iter() {
        if visited.contains(x) {
            continue;
        }
        let coset: Vec<Element> = h
            .elements()
            .iter()
            .map(|y| g.compose_unchecked(x, y))
            .collect();
        let inside = coset.iter().all(|y| a.contains(y));
        for y in &coset {
            if let Some(member) = a.get(y) {
                visited.insert(member);
            }
        }
        if inside {
            kept.extend(coset);
        }
    }
    GroupSet::from_unsorted_unchecked(g.clone(), kept)
}

/// Mixed-radix indexing of a finite group, used for bitset-based subgroup work.
struct Indexer {
    moduli: Vec<u64>,
    size: usize,
    ambient: GroupSpec,
}

impl Indexer {
    fn new(g: &GroupSpec) -> Result<Self> {
        let size = match g.order() {
            Order::Infinite => return Err(Error::UnsupportedInfiniteGroup(g.clone())),
            Order::Finite(n) => usize::try_from(n).map_err(|_| Error::ResourceLimit {
                what: "group order",
                actual: n,
                limit: usize::MAX as u64,
            })?,
        };
        Ok(Self {
            moduli: g.torsion.clone(),
            size,
            ambient: g.clone(),
        })
    }

    fn decode(&self, mut i: usize) -> Element {
        let mut coords = vec![0i64; self.moduli.len()];
        for (c, &n) in coords.iter_mut().zip(&self.moduli).rev() {
            *c = (i % n as usize) as i64;
            i /= n as usize;
        }
        debug_assert_eq!(coords.len(), self.ambient.dim());
        Element(coords)
    }

    fn add(&self, mut i: usize, mut j: usize) -> usize {
        let mut out = 0usize;
        let mut scale = 1usize;
        for &n in self.moduli.iter().rev() {
            let n = n as usize;
            out += ((i % n + j % n) % n) * scale;
            i /= n;
            j /= n;
            scale *= n;
        }
        out
    }

    fn join(&self, h: &FixedBitSet, g: usize) -> FixedBitSet {
        let base: Vec<usize> = h.ones().collect();
        let mut out = h.clone();
        let mut step = g;
        while !h.contains(step) {
            for &x in &base {
                out.insert(self.add(x, step));
            }
            step = self.add(step, g);
        }
        out
    }
}
