//! Finite uniform set families on a ground set of at most 64 vertices and the
//! functionals defined on them: links, restrictions, maximum degrees,
//! diversity, covering and matching numbers, bases and saturation.

mod functionals;
mod saturation;
mod stats;
pub mod transversal;

pub use stats::FamilyStats;
pub use transversal::Cover;

use crate::bits::{k_subsets, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// A `k`-uniform family on `[n]`. Edges are kept strictly increasing in mask
/// order, which makes equality of families equality of edge vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Family {
    n: usize,
    k: usize,
    edges: Vec<VertexSet>,
}

/// The restriction query `F(S̄, T)`: members avoiding `avoid` and containing
/// `require`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetQuery {
    pub avoid: VertexSet,
    pub require: VertexSet,
}

impl SubsetQuery {
    pub fn new(avoid: VertexSet, require: VertexSet) -> Result<Self> {
        if avoid.meets(require) {
            return Err(Error::OverlappingQuery);
        }
        Ok(SubsetQuery { avoid, require })
    }

    pub fn avoiding(avoid: VertexSet) -> Self {
        SubsetQuery {
            avoid,
            require: VertexSet::EMPTY,
        }
    }

    #[inline]
    pub fn matches(&self, e: VertexSet) -> bool {
        e.is_disjoint(self.avoid) && self.require.is_subset(e)
    }
}

impl Family {
    /// Validates and normalises: every edge must have `k` vertices below `n`;
    /// duplicates are dropped.
    pub fn new<I: IntoIterator<Item = VertexSet>>(n: usize, k: usize, edges: I) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::GroundTooLarge { n });
        }
        let ground = VertexSet::full(n);
        let mut edges: Vec<VertexSet> = edges.into_iter().collect();
        for &e in &edges {
            if !e.is_subset(ground) {
                let vertex = e.difference(ground).min().unwrap_or(0) + 1;
                return Err(Error::VertexOutOfRange {
                    edge: e.to_string(),
                    vertex,
                    n,
                });
            }
            if e.len() != k {
                return Err(Error::NotUniform {
                    edge: e.to_string(),
                    size: e.len(),
                    k,
                });
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Family { n, k, edges })
    }

    /// Convenience constructor from 1-based vertex lists.
    pub fn from_one_based(n: usize, k: usize, sets: &[&[usize]]) -> Result<Self> {
        let mut edges = Vec::with_capacity(sets.len());
        for s in sets {
            let mut m = VertexSet::EMPTY;
            for &v in s.iter() {
                if v == 0 || v > n || v > MAX_VERTICES {
                    return Err(Error::VertexOutOfRange {
                        edge: format!("{s:?}"),
                        vertex: v,
                        n,
                    });
                }
                m.insert(v - 1);
            }
            if m.len() != s.len() {
                return Err(Error::NotUniform {
                    edge: format!("{s:?}"),
                    size: m.len(),
                    k,
                });
            }
            edges.push(m);
        }
        Family::new(n, k, edges)
    }

    pub fn empty(n: usize, k: usize) -> Result<Self> {
        Family::new(n, k, std::iter::empty())
    }

    /// `C([n], k)`.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::GroundTooLarge { n });
        }
        Family::new(n, k, k_subsets(n, k))
    }

    /// Trusted constructor for edges already sorted, unique and uniform.
    pub(crate) fn from_sorted_unchecked(n: usize, k: usize, edges: Vec<VertexSet>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.len() == k));
        Family { n, k, edges }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Union of all edges.
    pub fn support(&self) -> VertexSet {
        self.edges
            .iter()
            .fold(VertexSet::EMPTY, |acc, &e| acc.union(e))
    }

    pub fn contains(&self, e: VertexSet) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Number of edges containing every vertex of `s`.
    pub fn degree(&self, s: VertexSet) -> usize {
        self.edges.iter().filter(|e| s.is_subset(**e)).count()
    }

    /// Number of edges disjoint from `s`.
    pub fn count_avoiding(&self, s: VertexSet) -> usize {
        self.edges.iter().filter(|e| e.is_disjoint(s)).count()
    }

    /// Vertex degrees indexed by vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for v in e.iter() {
                d[v] += 1;
            }
        }
        d
    }

    /// Same family on a larger ground set.
    pub fn with_ground(&self, n: usize) -> Result<Family> {
        Family::new(n, self.k, self.edges.iter().copied())
    }

    /// Image under `perm`, where `perm[v]` is the new label of vertex `v`.
    /// `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Family {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let edges = self
            .edges
            .iter()
            .map(|e| VertexSet::from_vertices(e.iter().map(|v| perm[v])));
        Family::new(self.n, self.k, edges).expect("relabeling preserves uniformity")
    }

    /// `C([n],k) \ F`.
    pub fn complement_in_complete(&self) -> Result<Family> {
        Family::new(
            self.n,
            self.k,
            k_subsets(self.n, self.k).filter(|e| !self.contains(*e)),
        )
    }

    /// `{[n] \ F : F ∈ F}` as an `(n-k)`-uniform family.
    pub fn complements(&self) -> Family {
        let ground = VertexSet::full(self.n);
        Family::new(
            self.n,
            self.n - self.k,
            self.edges.iter().map(|e| ground.difference(*e)),
        )
        .expect("complements are uniform")
    }

    /// Union of two families on the same ground set and uniformity.
    pub fn union(&self, other: &Family) -> Result<Family> {
        if self.k != other.k {
            return Err(Error::OutOfRange(format!(
                "union of {}-uniform and {}-uniform families",
                self.k, other.k
            )));
        }
        Family::new(
            self.n.max(other.n),
            self.k,
            self.edges.iter().chain(other.edges.iter()).copied(),
        )
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.edges.iter().all(|e| other.contains(*e))
    }

    /// Edges as 1-based sorted vertex lists.
    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.edges
            .iter()
            .map(|e| e.iter().map(|v| v + 1).collect())
            .collect()
    }
}

/// A family of sets of mixed sizes. Used for bases, which are antichains of
/// transversals of size at most `k`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SetSystem {
    pub n: usize,
    /// Sorted by size, then by mask.
    pub sets: Vec<VertexSet>,
}

impl SetSystem {
    pub fn new(n: usize, sets: impl IntoIterator<Item = VertexSet>) -> Self {
        let mut sets: Vec<VertexSet> = sets.into_iter().collect();
        sets.sort_unstable_by_key(|s| (s.len(), *s));
        sets.dedup();
        SetSystem { n, sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Members of size exactly `r`.
    pub fn level(&self, r: usize) -> Vec<VertexSet> {
        self.sets.iter().copied().filter(|s| s.len() == r).collect()
    }

    /// Members of size at most `r`.
    pub fn up_to(&self, r: usize) -> Vec<VertexSet> {
        self.sets.iter().copied().filter(|s| s.len() <= r).collect()
    }

    pub fn is_antichain(&self) -> bool {
        self.sets.iter().enumerate().all(|(i, a)| {
            self.sets
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.is_subset(*b))
        })
    }

    pub fn is_intersecting(&self) -> bool {
        transversal::pairwise_intersecting(&self.sets)
    }

    /// `{H ∈ C([n],k) : some member is contained in H}`.
    pub fn up_closure(&self, k: usize) -> Result<Family> {
        if self.n > MAX_VERTICES {
            return Err(Error::GroundTooLarge { n: self.n });
        }
        let ground = VertexSet::full(self.n);
        let mut edges = Vec::new();
        for &b in &self.sets {
            if b.len() > k {
                continue;
            }
            for extra in crate::bits::subsets_of(ground.difference(b), k - b.len()) {
                edges.push(b.union(extra));
            }
        }
        Family::new(self.n, k, edges)
    }

    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.sets
            .iter()
            .map(|e| e.iter().map(|v| v + 1).collect())
            .collect()
    }
}
