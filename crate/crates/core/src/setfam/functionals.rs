use std::collections::HashMap;

use super::transversal::{self, Cover};
use super::{Family, SetSystem, SubsetQuery};
use crate::bits::{subsets_of, VertexSet};
use crate::error::{Error, Result};

impl Family {
    /// `F(S̄, T)` on the same ground set.
    pub fn restrict(&self, q: &SubsetQuery) -> Family {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| q.matches(*e))
            .collect();
        Family::from_sorted_unchecked(self.n, self.k, edges)
    }

    /// `F(S̄)`.
    pub fn avoiding(&self, s: VertexSet) -> Family {
        self.restrict(&SubsetQuery::avoiding(s))
    }

    /// The link `F(S) = {F \ S : S ⊂ F ∈ F}`, a `(k - |S|)`-uniform family on
    /// the same ground set.
    pub fn link(&self, s: VertexSet) -> Result<Family> {
        if s.len() > self.k {
            return Err(Error::OutOfRange(format!(
                "link of a {}-set in a {}-uniform family",
                s.len(),
                self.k
            )));
        }
        // Removing the same S from supersets of S preserves the mask order.
        let edges = self
            .edges
            .iter()
            .filter(|e| s.is_subset(**e))
            .map(|e| e.difference(s))
            .collect();
        Ok(Family::from_sorted_unchecked(
            self.n,
            self.k - s.len(),
            edges,
        ))
    }

    /// `Δ_ℓ(F)`, counted over the `ℓ`-subsets of the edges themselves.
    pub fn max_degree(&self, ell: usize) -> usize {
        if self.edges.is_empty() || ell > self.k {
            return 0;
        }
        if ell == 0 {
            return self.edges.len();
        }
        let mut counts: HashMap<VertexSet, usize> = HashMap::new();
        for &e in &self.edges {
            for s in subsets_of(e, ell) {
                *counts.entry(s).or_default() += 1;
            }
        }
        counts.into_values().max().unwrap_or(0)
    }

    /// An `ℓ`-set attaining `Δ_ℓ`, smallest mask among the maximisers.
    pub fn max_degree_witness(&self, ell: usize) -> Option<VertexSet> {
        if self.edges.is_empty() || ell > self.k {
            return None;
        }
        let mut counts: HashMap<VertexSet, usize> = HashMap::new();
        for &e in &self.edges {
            for s in subsets_of(e, ell) {
                *counts.entry(s).or_default() += 1;
            }
        }
        counts
            .into_iter()
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .map(|(s, _)| s)
    }

    /// `γ_ℓ(F) = min |F(S̄)|` over `S ∈ C([n], ℓ)`.
    ///
    /// Vertices outside the support never remove an edge, so only the part of
    /// `S` inside the support matters, and taking as much of `S` inside the
    /// support as possible can only lower the count. The minimum is therefore
    /// over `min(ℓ, |support|)`-subsets of the support.
    pub fn diversity(&self, ell: usize) -> Result<usize> {
        Ok(self.diversity_witness(ell)?.0)
    }

    /// `γ_ℓ` together with a minimising `ℓ`-set (padded with the smallest
    /// vertices outside the support when the support is too small).
    pub fn diversity_witness(&self, ell: usize) -> Result<(usize, VertexSet)> {
        if ell >= self.n {
            return Err(Error::OutOfRange(format!(
                "diversity level {ell} needs ell < n = {}",
                self.n
            )));
        }
        let support = self.support();
        let inside = ell.min(support.len());
        let mut best = (usize::MAX, VertexSet::EMPTY);
        for t in subsets_of(support, inside) {
            let c = self.count_avoiding(t);
            if c < best.0 {
                best = (c, t);
                if c == 0 {
                    break;
                }
            }
        }
        let mut s = best.1;
        let outside = VertexSet::full(self.n).difference(support);
        for v in outside.iter().take(ell - inside) {
            s.insert(v);
        }
        Ok((best.0, s))
    }

    /// Minimum transversal. The empty family has `τ = 0`; a family containing
    /// the empty edge has no transversal and reports size `n + 1`.
    pub fn cover(&self) -> Cover {
        transversal::min_transversal(&self.edges).unwrap_or(Cover {
            size: self.n + 1,
            witness: VertexSet::EMPTY,
        })
    }

    pub fn covering_number(&self) -> usize {
        self.cover().size
    }

    pub fn matching_number(&self) -> usize {
        transversal::max_matching(&self.edges)
    }

    pub fn is_intersecting(&self) -> bool {
        transversal::pairwise_intersecting(&self.edges)
    }

    /// Inclusion-minimal transversals of size at most `k`.
    pub fn basis(&self) -> SetSystem {
        SetSystem::new(
            self.n,
            transversal::minimal_transversals(&self.edges, self.k),
        )
    }
}

impl SetSystem {
    /// Covering number of a mixed-size system; `n + 1` if it holds the empty set.
    pub fn covering_number(&self) -> usize {
        transversal::min_transversal(&self.sets).map_or(self.n + 1, |c| c.size)
    }
}
