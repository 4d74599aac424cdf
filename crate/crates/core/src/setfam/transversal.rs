//! Exact branch-and-bound routines over plain slices of sets, shared by
//! uniform families and mixed-size bases.

use crate::bits::VertexSet;
use std::collections::BTreeSet;

/// A minimum transversal and its size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cover {
    pub size: usize,
    pub witness: VertexSet,
}

pub fn pairwise_intersecting(sets: &[VertexSet]) -> bool {
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if a.is_disjoint(*b) {
                return false;
            }
        }
    }
    true
}

pub fn is_transversal(t: VertexSet, sets: &[VertexSet]) -> bool {
    sets.iter().all(|s| s.meets(t))
}

/// Number of pairwise disjoint sets picked greedily among those missed by
/// `chosen`. Any transversal extending `chosen` needs that many more vertices.
fn disjoint_lower_bound(sets: &[VertexSet], chosen: VertexSet) -> usize {
    let mut used = VertexSet::EMPTY;
    let mut count = 0;
    for &s in sets {
        if s.is_disjoint(chosen) && s.is_disjoint(used) {
            used = used.union(s);
            count += 1;
        }
    }
    count
}

/// Minimum transversal by branching on the vertices of the lowest-index
/// uncovered set, in ascending order, with best-found pruning.
///
/// Returns `None` when some set is empty (no transversal exists). The empty
/// slice has the empty transversal.
pub fn min_transversal(sets: &[VertexSet]) -> Option<Cover> {
    if sets.iter().any(|s| s.is_empty()) {
        return None;
    }
    let mut best = Cover {
        size: usize::MAX,
        witness: VertexSet::EMPTY,
    };
    cover_rec(sets, VertexSet::EMPTY, 0, &mut best);
    Some(best)
}

fn cover_rec(sets: &[VertexSet], chosen: VertexSet, depth: usize, best: &mut Cover) {
    let Some(&open) = sets.iter().find(|s| s.is_disjoint(chosen)) else {
        if depth < best.size {
            *best = Cover {
                size: depth,
                witness: chosen,
            };
        }
        return;
    };
    if depth + disjoint_lower_bound(sets, chosen) >= best.size {
        return;
    }
    for v in open.iter() {
        let mut next = chosen;
        next.insert(v);
        cover_rec(sets, next, depth + 1, best);
    }
}

/// Size of the largest subfamily of pairwise disjoint sets.
pub fn max_matching(sets: &[VertexSet]) -> usize {
    let mut best = 0;
    match_rec(sets, 0, VertexSet::EMPTY, 0, &mut best);
    best
}

fn match_rec(sets: &[VertexSet], from: usize, used: VertexSet, count: usize, best: &mut usize) {
    if count > *best {
        *best = count;
    }
    let rest: Vec<usize> = (from..sets.len())
        .filter(|&i| sets[i].is_disjoint(used))
        .collect();
    if count + rest.len() <= *best {
        return;
    }
    let free = 64 - used.len();
    let smallest = rest
        .iter()
        .map(|&i| sets[i].len().max(1))
        .min()
        .unwrap_or(1);
    if count + free / smallest <= *best {
        return;
    }
    for (pos, &i) in rest.iter().enumerate() {
        if count + (rest.len() - pos) <= *best {
            break;
        }
        match_rec(sets, i + 1, used.union(sets[i]), count + 1, best);
    }
}

/// All inclusion-minimal transversals with at most `max_size` vertices, sorted
/// by size and then mask. Every minimal transversal lies inside the support.
pub fn minimal_transversals(sets: &[VertexSet], max_size: usize) -> Vec<VertexSet> {
    if sets.iter().any(|s| s.is_empty()) {
        return Vec::new();
    }
    let mut found = BTreeSet::new();
    minimal_rec(sets, VertexSet::EMPTY, max_size, &mut found);
    let mut out: Vec<VertexSet> = found.into_iter().collect();
    out.sort_unstable_by_key(|s| (s.len(), *s));
    out
}

fn minimal_rec(
    sets: &[VertexSet],
    chosen: VertexSet,
    max_size: usize,
    found: &mut BTreeSet<VertexSet>,
) {
    let Some(&open) = sets.iter().find(|s| s.is_disjoint(chosen)) else {
        if is_minimal_transversal(chosen, sets) {
            found.insert(chosen);
        }
        return;
    };
    if chosen.len() == max_size {
        return;
    }
    for v in open.iter() {
        let mut next = chosen;
        next.insert(v);
        minimal_rec(sets, next, max_size, found);
    }
}

pub fn is_minimal_transversal(t: VertexSet, sets: &[VertexSet]) -> bool {
    is_transversal(t, sets)
        && t.iter().all(|v| {
            let mut smaller = t;
            smaller.remove(v);
            !is_transversal(smaller, sets)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::k_subsets;

    fn brute_tau(sets: &[VertexSet], n: usize) -> usize {
        (0..=n)
            .find(|&r| k_subsets(n, r).any(|t| is_transversal(t, sets)))
            .unwrap()
    }

    fn brute_nu(sets: &[VertexSet]) -> usize {
        let m = sets.len();
        let mut best = 0;
        for mask in 0u32..(1 << m) {
            let chosen: Vec<VertexSet> = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| sets[i])
                .collect();
            let disjoint = chosen
                .iter()
                .enumerate()
                .all(|(i, a)| chosen[i + 1..].iter().all(|b| a.is_disjoint(*b)));
            if disjoint {
                best = best.max(chosen.len());
            }
        }
        best
    }

    #[test]
    fn cover_of_complete_triples() {
        let sets: Vec<VertexSet> = k_subsets(5, 3).collect();
        let c = min_transversal(&sets).unwrap();
        assert_eq!(c.size, 3);
        assert!(is_transversal(c.witness, &sets));
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(min_transversal(&[]).unwrap().size, 0);
        assert_eq!(min_transversal(&[VertexSet::EMPTY]), None);
        assert_eq!(max_matching(&[]), 0);
    }

    #[test]
    fn matching_on_complete_triples_of_six() {
        let sets: Vec<VertexSet> = k_subsets(6, 3).collect();
        assert_eq!(max_matching(&sets), 2);
    }

    #[test]
    fn small_random_families_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(3..=7);
            let k = rng.gen_range(1..=3.min(n));
            let all: Vec<VertexSet> = k_subsets(n, k).collect();
            let sets: Vec<VertexSet> = all
                .into_iter()
                .filter(|_| rng.gen_bool(0.35))
                .take(12)
                .collect();
            assert_eq!(min_transversal(&sets).unwrap().size, brute_tau(&sets, n));
            assert_eq!(max_matching(&sets), brute_nu(&sets));
        }
    }

    #[test]
    fn minimal_transversals_of_a_triangle() {
        let tri: Vec<VertexSet> = k_subsets(3, 2).collect();
        let mins = minimal_transversals(&tri, 2);
        assert_eq!(mins, tri);
    }
}
