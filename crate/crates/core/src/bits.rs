//! Single-word vertex sets and the subset iterators the rest of the crate is
//! built on. Vertices are 0-based positions `0..64`; the JSON layer converts to
//! and from the 1-based labels users see.

use std::fmt;

/// Hard cap on the ground set of any enumerated family.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices stored as a bitmask. Ordering is the integer order of the
/// mask, which is the canonical storage order of edges inside a [`Family`].
///
/// [`Family`]: crate::setfam::Family
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(pub u64);

/// An edge of a uniform family.
pub type Edge = VertexSet;

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    /// Builds a set from 0-based vertex indices. Panics on an index >= 64.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        let mut m = 0u64;
        for v in vs {
            assert!(v < MAX_VERTICES, "vertex {v} exceeds the 64-vertex cap");
            m |= 1u64 << v;
        }
        VertexSet(m)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn meets(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    /// Largest vertex, if any.
    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    /// 1-based, matching the JSON and the usual textbook notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, ")")
    }
}

/// Iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Members {}

/// All `size`-subsets of `pool`, in increasing mask order.
pub fn subsets_of(pool: VertexSet, size: usize) -> SubsetsOf {
    let elems = pool.to_vec();
    let idx = if size <= elems.len() {
        Some((0..size).collect())
    } else {
        None
    };
    SubsetsOf { elems, idx }
}

/// Combination iterator over a fixed list of vertices. The index vector walks
/// the last-position-first order so the produced masks increase.
pub struct SubsetsOf {
    elems: Vec<usize>,
    idx: Option<Vec<usize>>,
}

impl Iterator for SubsetsOf {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let idx = self.idx.as_mut()?;
        let out = VertexSet(idx.iter().fold(0u64, |m, &i| m | 1u64 << self.elems[i]));
        // Colex successor: bump the lowest position that can move up.
        let r = idx.len();
        let n = self.elems.len();
        let mut advanced = false;
        for p in 0..r {
            let limit = if p + 1 < r { idx[p + 1] } else { n };
            if idx[p] + 1 < limit {
                idx[p] += 1;
                for (q, slot) in idx.iter_mut().enumerate().take(p) {
                    *slot = q;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.idx = None;
        }
        Some(out)
    }
}

/// All `k`-subsets of `{0..n-1}` in increasing mask order.
pub fn k_subsets(n: usize, k: usize) -> SubsetsOf {
    subsets_of(VertexSet::full(n), k)
}

/// Number of `k`-subsets of an `n`-set as `u128`, saturating on overflow.
pub fn binom_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_come_out_in_mask_order() {
        let all: Vec<u64> = k_subsets(6, 3).map(|s| s.bits()).collect();
        assert_eq!(all.len(), 20);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|m| m.count_ones() == 3));
    }

    #[test]
    fn subsets_of_sparse_pool() {
        let pool = VertexSet::from_vertices([1, 4, 9, 63]);
        let got: Vec<VertexSet> = subsets_of(pool, 2).collect();
        assert_eq!(got.len(), 6);
        assert!(got.iter().all(|s| s.is_subset(pool) && s.len() == 2));
        assert!(got.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn degenerate_sizes() {
        assert_eq!(k_subsets(4, 0).collect::<Vec<_>>(), vec![VertexSet::EMPTY]);
        assert_eq!(k_subsets(3, 4).count(), 0);
        assert_eq!(k_subsets(64, 1).count(), 64);
        assert_eq!(k_subsets(64, 64).next(), Some(VertexSet(u64::MAX)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_u128(6, 3), 20);
        assert_eq!(binom_u128(3, 5), 0);
        assert_eq!(binom_u128(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(VertexSet::from_vertices([0, 2]).to_string(), "(1,3)");
    }
}
