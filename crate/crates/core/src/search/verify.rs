//! Brute-force re-checks of search results, sharing no code with the
//! branch-and-bound routines in `setfam`.

use super::{Mode, SearchTask};
use crate::bits::{k_subsets, subsets_of, VertexSet};
use crate::setfam::Family;

pub fn brute_intersecting(fam: &Family) -> bool {
    let e = fam.edges();
    (0..e.len()).all(|i| (0..e.len()).all(|j| e[i].bits() & e[j].bits() != 0))
}

/// Minimum over every `ℓ`-subset of the whole ground set.
pub fn brute_diversity(fam: &Family, ell: usize) -> usize {
    k_subsets(fam.n(), ell)
        .map(|s| {
            fam.edges()
                .iter()
                .filter(|e| e.bits() & s.bits() == 0)
                .count()
        })
        .min()
        .unwrap_or(0)
}

/// Smallest `r` such that some `r`-subset of the ground set meets every edge.
pub fn brute_covering_number(fam: &Family) -> usize {
    (0..=fam.n())
        .find(|&r| {
            k_subsets(fam.n(), r).any(|t| fam.edges().iter().all(|e| e.bits() & t.bits() != 0))
        })
        .unwrap_or(fam.n() + 1)
}

/// Re-derives the values a witness was reported with and checks it meets
/// the task's constraints.
pub(super) fn revalidate(task: &SearchTask, fam: &Family, gamma: usize, tau: usize) -> bool {
    let g = brute_diversity(fam, task.ell);
    let t = brute_covering_number(fam);
    if !brute_intersecting(fam) || g != gamma || t != tau || t < task.tau_min {
        return false;
    }
    match task.mode {
        Mode::MaxGamma | Mode::Counterexample => g >= task.gamma_min,
        Mode::Classify => fam.edges().iter().all(|&e| {
            subsets_of(e, task.ell).all(|s: VertexSet| {
                fam.edges()
                    .iter()
                    .filter(|f| f.bits() & s.bits() == 0)
                    .count()
                    >= task.gamma_min
            })
        }),
    }
}
