//! Subsets of a finite carrier, stored as bitsets indexed by individual position.

use std::fmt;

use fixedbitset::FixedBitSet;

/// A subset of a carrier of fixed size. Individuals are dense indices in
/// `0..universe()`; two sets are only comparable when their universes agree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndSet(FixedBitSet);

impl IndSet {
    pub fn empty(universe: usize) -> Self {
        IndSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        IndSet(bits)
    }

    pub fn singleton(universe: usize, member: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(member);
        s
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Self {
        let mut s = Self::empty(universe);
        for m in members {
            s.insert(m);
        }
        s
    }

    /// Bit `i` of `mask` becomes member `i`. Only valid for universes of at most 64.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= 64);
        Self::from_members(universe, (0..universe).filter(|i| mask >> i & 1 == 1))
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.0.is_full()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.0.remove(i);
    }

    pub fn union(&self, other: &IndSet) -> IndSet {
        let mut out = self.0.clone();
        out.union_with(&other.0);
        IndSet(out)
    }

    pub fn intersection(&self, other: &IndSet) -> IndSet {
        let mut out = self.0.clone();
        out.intersect_with(&other.0);
        IndSet(out)
    }

    pub fn difference(&self, other: &IndSet) -> IndSet {
        let mut out = self.0.clone();
        out.difference_with(&other.0);
        IndSet(out)
    }

    pub fn complement(&self) -> IndSet {
        let mut out = self.0.clone();
        out.toggle_range(..);
        IndSet(out)
    }

    pub fn union_with(&mut self, other: &IndSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &IndSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn is_subset(&self, other: &IndSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &IndSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn first(&self) -> Option<usize> {
        self.0.minimum()
    }

    /// Members in ascending (carrier) order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    /// Ordering used wherever families of subsets are listed: by cardinality,
    /// then lexicographically on the ascending member lists.
    pub fn cardinality_order(&self, other: &IndSet) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }

    /// Every subset of a universe of size `n`, in [`IndSet::cardinality_order`].
    pub fn all_subsets(n: usize) -> Vec<IndSet> {
        assert!(n < 32, "refusing to enumerate 2^{n} subsets");
        let mut out: Vec<IndSet> = (0u64..(1u64 << n))
            .map(|mask| IndSet::from_mask(n, mask))
            .collect();
        out.sort_by(|a, b| a.cardinality_order(b));
        out
    }
}

impl fmt::Debug for IndSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
