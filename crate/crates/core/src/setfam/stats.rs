use std::collections::BTreeMap;

use serde::Serialize;

use super::Family;

/// Every functional of a family in one record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyStats {
    pub n: usize,
    pub k: usize,
    pub size: usize,
    /// `ℓ -> Δ_ℓ`.
    pub delta: BTreeMap<usize, usize>,
    /// `ℓ -> γ_ℓ`.
    pub gamma: BTreeMap<usize, usize>,
    pub tau: usize,
    pub tau_witness: Vec<usize>,
    pub nu: usize,
    pub intersecting: bool,
    /// Only defined for intersecting families.
    pub saturated: Option<bool>,
    /// Minimal transversals of size at most `k`, 1-based; intersecting only.
    pub basis: Option<Vec<Vec<usize>>>,
}

impl Family {
    /// Levels `1..k` (at least level 1), each reported where defined.
    pub fn stats(&self) -> FamilyStats {
        let top = self.k.saturating_sub(1).max(1);
        let mut delta = BTreeMap::new();
        let mut gamma = BTreeMap::new();
        for ell in 1..=top {
            delta.insert(ell, self.max_degree(ell));
            if let Ok(g) = self.diversity(ell) {
                gamma.insert(ell, g);
            }
        }
        let cover = self.cover();
        let intersecting = self.is_intersecting();
        let (saturated, basis) = if intersecting {
            (Some(self.is_saturated()), Some(self.basis().to_one_based()))
        } else {
            (None, None)
        };
        FamilyStats {
            n: self.n,
            k: self.k,
            size: self.len(),
            delta,
            gamma,
            tau: cover.size,
            tau_witness: cover.witness.iter().map(|v| v + 1).collect(),
            nu: self.matching_number(),
            intersecting,
            saturated,
            basis,
        }
    }
}
