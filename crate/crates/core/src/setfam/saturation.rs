use super::transversal;
use super::Family;
use crate::bits::{binom_u128, k_subsets, subsets_of, VertexSet};
use crate::error::{Error, Result};

/// Largest `C(n, k)` that [`Family::saturate`] will scan.
pub const SATURATE_BUDGET: u128 = 50_000_000;

impl Family {
    /// True iff every `k`-set of `[n]` meeting all edges is already an edge.
    ///
    /// A `k`-set meets every edge exactly when it contains a minimal
    /// transversal of size at most `k`, so only supersets of those are checked.
    pub fn is_saturated(&self) -> bool {
        let ground = VertexSet::full(self.n);
        let mins = transversal::minimal_transversals(&self.edges, self.k);
        mins.iter().all(|&t| {
            subsets_of(ground.difference(t), self.k - t.len())
                .all(|extra| self.contains(t.union(extra)))
        })
    }

    /// Greedy completion: scan `C([n], k)` in increasing mask order and add
    /// every set that meets all edges collected so far.
    pub fn saturate(&self) -> Result<Family> {
        let count = binom_u128(self.n, self.k);
        if count > SATURATE_BUDGET {
            return Err(Error::Budget {
                count,
                budget: SATURATE_BUDGET,
            });
        }
        let mut edges = self.edges.clone();
        for cand in k_subsets(self.n, self.k) {
            if edges.iter().all(|e| e.meets(cand)) && !edges.contains(&cand) {
                edges.push(cand);
            }
        }
        Family::new(self.n, self.k, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_on_odd_ground_saturates_to_complete() {
        for k in 2..=4 {
            let n = 2 * k - 1;
            let f = Family::new(n, k, [VertexSet::full(k)]).unwrap();
            assert!(!f.is_saturated() || k == 1);
            let s = f.saturate().unwrap();
            assert_eq!(s, Family::complete(n, k).unwrap());
            assert!(s.is_saturated());
        }
    }

    #[test]
    fn single_edge_on_large_ground_is_not_saturated() {
        let f = Family::new(8, 3, [VertexSet::full(3)]).unwrap();
        assert!(!f.is_saturated());
        let s = f.saturate().unwrap();
        assert!(s.is_saturated());
        assert!(s.is_intersecting());
        assert!(f.is_subfamily_of(&s));
    }

    #[test]
    fn saturated_input_is_fixed() {
        let c = Family::complete(5, 3).unwrap();
        assert_eq!(c.saturate().unwrap(), c);
    }

    #[test]
    fn budget_guard() {
        let f = Family::empty(64, 10).unwrap();
        assert!(matches!(f.saturate(), Err(Error::Budget { .. })));
    }
}
