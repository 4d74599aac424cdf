//! Seeded random families for property checks and certificate corpora.

use crate::bits::{k_subsets, VertexSet};
use crate::constructions;
use crate::error::Result;
use crate::setfam::Family;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Walks the `k`-subsets of `[n]` in random order and keeps each one that
/// meets everything kept so far, stopping at `max_edges`. Never empty.
pub fn random_intersecting(rng: &mut CorpusRng, n: usize, k: usize, max_edges: usize) -> Family {
    let mut all: Vec<VertexSet> = k_subsets(n, k).collect();
    all.shuffle(rng);
    let mut kept: Vec<VertexSet> = Vec::new();
    for e in all {
        if kept.len() >= max_edges.max(1) {
            break;
        }
        if kept.iter().all(|f| f.meets(e)) {
            kept.push(e);
        }
    }
    Family::new(n, k, kept).expect("subsets of [n] are valid edges")
}

/// Random `k`-family on `[n]`, not necessarily intersecting: each edge is
/// kept with probability `p`.
pub fn random_family(rng: &mut CorpusRng, n: usize, k: usize, p: f64) -> Family {
    let edges: Vec<VertexSet> = k_subsets(n, k).filter(|_| rng.gen_bool(p)).collect();
    Family::new(n, k, edges).expect("subsets of [n] are valid edges")
}

/// Saturated intersecting families: the named constructions that are
/// already saturated (or small enough to saturate), generated families at
/// small `n`, and saturations of `random` intersecting seeds.
pub fn saturated_corpus(seed: u64, random: usize) -> Result<Vec<(String, Family)>> {
    let mut out: Vec<(String, Family)> = Vec::new();
    let mut push = |name: String, f: Family| -> Result<()> {
        let s = if f.is_saturated() { f } else { f.saturate()? };
        out.push((name, s));
        Ok(())
    };
    push("fano".into(), constructions::fano())?;
    push("t0".into(), constructions::t0())?;
    push("triangle".into(), constructions::triangle())?;
    push("example-4-2".into(), constructions::example_4_2())?;
    push("example-4-3".into(), constructions::example_4_3())?;
    push("example-4-4".into(), constructions::example_4_4())?;
    push("complete(5,3)".into(), Family::complete(5, 3)?)?;
    push("complete(7,4)".into(), Family::complete(7, 4)?)?;
    push("star(7,3)".into(), constructions::star(7, 3, 0)?)?;
    for (name, gen, n, k) in [
        ("fano", constructions::fano(), 8, 4),
        ("fano", constructions::fano(), 9, 4),
        ("t0", constructions::t0(), 8, 4),
        ("t0", constructions::t0(), 10, 5),
    ] {
        let f = constructions::generated(&gen, n, k)?.enumerate()?;
        push(format!("{name}-generated({n},{k})"), f)?;
    }
    let mut rng = rng(seed);
    for i in 0..random {
        let k = 3 + i % 2;
        let n = 2 * k + rng.gen_range(0..=2);
        let cap = 3 + rng.gen_range(0..5);
        let seed_fam = random_intersecting(&mut rng, n, k, cap);
        push(format!("random#{i}(n={n},k={k})"), seed_fam)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = random_intersecting(&mut rng(5), 7, 3, 6);
        let b = random_intersecting(&mut rng(5), 7, 3, 6);
        assert_eq!(a, b);
        assert!(a.is_intersecting());
    }

    #[test]
    fn corpus_is_saturated_and_intersecting() {
        let c = saturated_corpus(1, 12).unwrap();
        assert!(c.len() >= 20);
        for (name, f) in &c {
            assert!(f.is_intersecting(), "{name}");
            assert!(f.is_saturated(), "{name}");
        }
    }
}
