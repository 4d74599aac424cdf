//! Weighted branching certificates for saturated intersecting families.
//!
//! Given a saturated intersecting family with basis `ℬ`, covering number `t`
//! and an `ℓ < t`, we pick an `ℓ`-set `U` and check
//!
//! `Σ_{r≤j≤k} |ℬ^(j)(Ū)| / k^{j−ℓ−1} ≤ (t−1)·r·(r−1)^{ℓ−1}`
//!
//! exactly, where `r` is the least level with `τ(ℬ^(≤r)) ≥ ℓ+1`. The pair
//! variant fixes `ℓ = 2`, `t = 4` and checks every pair inside a basis
//! 4-set against the constant 24.

use crate::bits::{subsets_of, VertexSet};
use crate::error::{Error, Result};
use crate::setfam::{Family, SetSystem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Which selection rule produced `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    /// `r > t`: `U` is a transversal of `ℬ^(≤r−1)`.
    #[serde(rename = "i")]
    Transversal,
    /// `r = t`: `U` attains `γ_ℓ(ℬ^(t))`.
    #[serde(rename = "ii")]
    Diversity,
}

/// Output of [`select_u`]. `u` is 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub u: VertexSet,
    pub case: Case,
    pub r: usize,
    pub t: usize,
    /// `|ℬ^(r)(Ū)|`, the quantity `U` minimises.
    pub level_r_avoiding: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchingCertificate {
    pub k: usize,
    pub ell: usize,
    pub t: usize,
    pub r: usize,
    pub case: Case,
    /// 1-based.
    #[serde(rename = "U")]
    pub u: Vec<usize>,
    pub per_level: BTreeMap<usize, usize>,
    /// Exact value as `p/q`.
    pub weighted_sum: String,
    pub weighted_sum_approx: f64,
    pub bound: String,
    pub holds: bool,
    pub tie_break: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<BranchingTrace>,
}

/// One pair `V ⊂ B₁` of the `t = 4` variant.
#[derive(Clone, Debug, Serialize)]
pub struct PairCertificate {
    #[serde(rename = "V")]
    pub v: Vec<usize>,
    #[serde(rename = "B1")]
    pub b1: Vec<usize>,
    pub per_level: BTreeMap<usize, usize>,
    pub weighted_sum: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairBranchingCertificate {
    pub k: usize,
    pub t: usize,
    pub level4_cover: usize,
    pub bound: String,
    pub pairs: Vec<PairCertificate>,
    /// Largest weighted sum over all pairs.
    pub worst: String,
    pub holds: bool,
}

/// Checks the input and returns its basis. The basis must regenerate the
/// family exactly, or no certificate is issued.
fn checked_basis(fam: &Family) -> Result<SetSystem> {
    if !fam.is_intersecting() {
        return Err(Error::NotIntersecting);
    }
    if fam.n() <= fam.k() {
        return Err(Error::NotApplicable(format!(
            "need n > k, got n = {}, k = {}",
            fam.n(),
            fam.k()
        )));
    }
    if !fam.is_saturated() {
        return Err(Error::NotSaturated);
    }
    let basis = fam.basis();
    if basis.up_closure(fam.k())? != *fam {
        return Err(Error::NotSaturated);
    }
    Ok(basis)
}

fn avoiding_count(sets: &[VertexSet], u: VertexSet) -> usize {
    sets.iter().filter(|b| b.is_disjoint(u)).count()
}

/// `ℓ`-sets that may realise the lexicographically first minimiser: every
/// subset of the basis support, topped up with the first outside vertices.
fn candidate_pool(basis: &SetSystem, n: usize, ell: usize) -> VertexSet {
    let support = basis.sets.iter().fold(VertexSet::EMPTY, |a, &b| a.union(b));
    let outside = VertexSet::full(n).difference(support);
    outside.iter().take(ell).fold(support, |mut acc, v| {
        acc.insert(v);
        acc
    })
}

/// Lexicographic order on sorted vertex lists.
fn lex_key(s: VertexSet) -> Vec<usize> {
    s.to_vec()
}

fn select_from_basis(fam: &Family, basis: &SetSystem, ell: usize) -> Result<Selection> {
    if ell == 0 || ell >= fam.k() {
        return Err(Error::OutOfRange(format!(
            "ell = {ell} must lie in 1..k = {}",
            fam.k()
        )));
    }
    let t = fam.covering_number();
    if t < ell + 1 {
        return Err(Error::NotApplicable(format!(
            "covering number {t} is below ell + 1 = {}",
            ell + 1
        )));
    }
    let r = (1..=fam.k())
        .find(|&r| {
            let low = basis.up_to(r);
            !low.is_empty() && SetSystem::new(fam.n(), low).covering_number() > ell
        })
        .ok_or_else(|| Error::NotApplicable("basis has covering number at most ell".into()))?;
    let below = basis.up_to(r - 1);
    let level = basis.level(r);
    let pool = candidate_pool(basis, fam.n(), ell);
    let mut best: Option<(usize, VertexSet)> = None;
    for u in subsets_of(pool, ell) {
        if !below.iter().all(|b| b.meets(u)) {
            continue;
        }
        let c = avoiding_count(&level, u);
        let better = match &best {
            None => true,
            Some((bc, bu)) => c < *bc || (c == *bc && lex_key(u) < lex_key(*bu)),
        };
        if better {
            best = Some((c, u));
        }
    }
    let (level_r_avoiding, u) = best.ok_or_else(|| {
        Error::NotApplicable(format!(
            "no {ell}-set is a transversal of the levels below {r}"
        ))
    })?;
    let case = if r > t {
        Case::Transversal
    } else {
        Case::Diversity
    };
    Ok(Selection {
        u,
        case,
        r,
        t,
        level_r_avoiding,
    })
}

/// Chooses `U` by the two selection rules, breaking ties by the
/// lexicographically smallest sorted vertex list.
pub fn select_u(fam: &Family, ell: usize) -> Result<Selection> {
    let basis = checked_basis(fam)?;
    select_from_basis(fam, &basis, ell)
}

fn pow_big(k: usize, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(k), e)
}

/// `Σ_{j ≥ lo} counts[j] / k^{j−shift}` as an exact rational, accumulated term by term.
fn weighted_rational(counts: &BTreeMap<usize, usize>, k: usize, shift: usize) -> BigRational {
    counts.iter().fold(BigRational::zero(), |acc, (&j, &c)| {
        acc + BigRational::new(BigInt::from(c), pow_big(k, j - shift))
    })
}

/// The same sum over the common denominator `k^{k−shift}`, as an integer
/// numerator.
fn weighted_numerator(counts: &BTreeMap<usize, usize>, k: usize) -> BigInt {
    counts
        .iter()
        .map(|(&j, &c)| BigInt::from(c) * pow_big(k, k - j))
        .sum()
}

/// Returns `(sum, holds)` after checking both evaluations agree.
fn weighted_check(
    counts: &BTreeMap<usize, usize>,
    k: usize,
    shift: usize,
    bound: &BigInt,
) -> (BigRational, bool) {
    let sum = weighted_rational(counts, k, shift);
    let denom = pow_big(k, k - shift);
    let num = weighted_numerator(counts, k);
    assert_eq!(
        BigRational::new(num.clone(), denom.clone()),
        sum,
        "weighted sum disagrees between rational and integer evaluation"
    );
    let holds_int = num <= bound * &denom;
    let holds_rat = sum <= BigRational::from_integer(bound.clone());
    assert_eq!(holds_int, holds_rat);
    (sum, holds_rat)
}

fn ratio_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn ratio_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn per_level(basis: &SetSystem, from: usize, k: usize, u: VertexSet) -> BTreeMap<usize, usize> {
    (from..=k)
        .map(|j| (j, avoiding_count(&basis.level(j), u)))
        .collect()
}

/// Certificate for a single `ℓ`. `holds = false` means the implementation
/// disagrees with a proven inequality.
pub fn verify_branching(fam: &Family, ell: usize) -> Result<BranchingCertificate> {
    verify_branching_traced(fam, ell, false)
}

pub fn verify_branching_traced(
    fam: &Family,
    ell: usize,
    trace: bool,
) -> Result<BranchingCertificate> {
    let basis = checked_basis(fam)?;
    let sel = select_from_basis(fam, &basis, ell)?;
    let k = fam.k();
    let counts = per_level(&basis, sel.r, k, sel.u);
    let bound = BigInt::from(sel.t - 1) * BigInt::from(sel.r) * pow_big(sel.r - 1, ell - 1);
    let (sum, holds) = weighted_check(&counts, k, ell + 1, &bound);
    let trace = if trace {
        Some(simulate(fam, &basis, &sel, ell)?)
    } else {
        None
    };
    Ok(BranchingCertificate {
        k,
        ell,
        t: sel.t,
        r: sel.r,
        case: sel.case,
        u: sel.u.iter().map(|v| v + 1).collect(),
        per_level: counts,
        weighted_sum: ratio_string(&sum),
        weighted_sum_approx: ratio_f64(&sum),
        bound: bound.to_string(),
        holds,
        tie_break: "lexicographically smallest sorted vertex list among minimisers",
        trace,
    })
}

/// Admissible `ℓ` for a family: `1 ≤ ℓ < k` and `ℓ + 1 ≤ τ`.
pub fn admissible_ells(fam: &Family) -> Vec<usize> {
    let t = fam.covering_number();
    (1..fam.k()).filter(|&ell| ell < t).collect()
}

/// Pair variant: `τ = 4`, `τ(ℬ^(4)) ≥ 3`, every pair `V` inside some
/// `B₁ ∈ ℬ^(4)` must give `Σ_{4≤j≤k} |ℬ^(j)(V̄)|/k^{j−3} ≤ 24`.
pub fn verify_branching_33(fam: &Family) -> Result<PairBranchingCertificate> {
    let basis = checked_basis(fam)?;
    let k = fam.k();
    let t = fam.covering_number();
    if t != 4 {
        return Err(Error::NotApplicable(format!(
            "covering number is {t}, need 4"
        )));
    }
    let level4 = basis.level(4);
    let level4_cover = SetSystem::new(fam.n(), level4.iter().copied()).covering_number();
    if level4.is_empty() || level4_cover < 3 {
        return Err(Error::NotApplicable(format!(
            "level-4 basis has covering number {level4_cover}, need at least 3"
        )));
    }
    let mut jobs: Vec<(VertexSet, VertexSet)> = Vec::new();
    for &b1 in &level4 {
        for v in subsets_of(b1, 2) {
            jobs.push((v, b1));
        }
    }
    let bound = BigInt::from(24);
    let results: Vec<(BigRational, PairCertificate)> = jobs
        .par_iter()
        .map(|&(v, b1)| {
            let counts = per_level(&basis, 4, k, v);
            let (sum, holds) = weighted_check(&counts, k, 3, &bound);
            let cert = PairCertificate {
                v: v.iter().map(|x| x + 1).collect(),
                b1: b1.iter().map(|x| x + 1).collect(),
                per_level: counts,
                weighted_sum: ratio_string(&sum),
                holds,
            };
            (sum, cert)
        })
        .collect();
    let worst = results
        .iter()
        .map(|(s, _)| s.clone())
        .max()
        .unwrap_or_else(BigRational::zero);
    let holds = results.iter().all(|(_, c)| c.holds);
    Ok(PairBranchingCertificate {
        k,
        t,
        level4_cover,
        bound: bound.to_string(),
        pairs: results.into_iter().map(|(_, c)| c).collect(),
        worst: ratio_string(&worst),
        holds,
    })
}

/// Cap on live sequences in the simulated process.
pub const TRACE_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct StageLog {
    pub stage: usize,
    pub sequences: usize,
    pub total_weight: String,
}

/// Result of running the weighted sequence expansion to completion.
#[derive(Clone, Debug, Serialize)]
pub struct BranchingTrace {
    /// 1-based; the vertex of `U` used at the first stage.
    pub u1: usize,
    #[serde(rename = "B1")]
    pub b1: Vec<usize>,
    pub stages: Vec<StageLog>,
    /// Surviving sequences by length.
    pub survivors: BTreeMap<usize, usize>,
    pub discarded: usize,
    pub final_weight: String,
    /// Every `B ∈ ℬ^(j)(Ū)` with `j ≥ r` appears as the set of some survivor.
    pub covers_basis: bool,
    /// Each survivor of length `j` has weight at least
    /// `1/((t−1)·r·(r−1)^{ℓ−1}·k^{j−ℓ−1})`.
    pub weights_bounded: bool,
    pub anomalies: Vec<String>,
}

struct Seq {
    set: VertexSet,
    len: usize,
    w: BigRational,
}

fn total_weight(seqs: &[Seq]) -> BigRational {
    seqs.iter().fold(BigRational::zero(), |a, s| a + &s.w)
}

fn expand(s: &Seq, b: VertexSet, u: VertexSet, out: &mut Vec<Seq>) {
    let choices = b.difference(u);
    if choices.is_empty() {
        return;
    }
    let w = &s.w / BigRational::from_integer(BigInt::from(choices.len()));
    for y in choices.iter() {
        let mut set = s.set;
        set.insert(y);
        out.push(Seq {
            set,
            len: s.len + 1,
            w: w.clone(),
        });
    }
}

/// Runs the sequence expansion stage by stage, always taking the first
/// eligible basis set in (size, mask) order.
fn simulate(
    fam: &Family,
    basis: &SetSystem,
    sel: &Selection,
    ell: usize,
) -> Result<BranchingTrace> {
    let u = sel.u;
    let (t, r, k) = (sel.t, sel.r, fam.k());
    let low = basis.up_to(r);
    let mut anomalies = Vec::new();
    let mut stages = Vec::new();

    let level_t = basis.level(t);
    let (u1, b1) = u
        .iter()
        .find_map(|x| level_t.iter().find(|b| b.contains(x)).map(|&b| (x, b)))
        .ok_or_else(|| {
            Error::NotApplicable("no vertex of U lies in a basis set of size t".into())
        })?;

    let root = Seq {
        set: VertexSet::EMPTY,
        len: 0,
        w: BigRational::one(),
    };
    let mut live = Vec::new();
    expand(&root, b1, u, &mut live);
    let log = |stage: usize, seqs: &[Seq], stages: &mut Vec<StageLog>| {
        stages.push(StageLog {
            stage,
            sequences: seqs.len(),
            total_weight: ratio_string(&total_weight(seqs)),
        });
    };
    log(1, &live, &mut stages);

    for stage in 2..=ell + 1 {
        let mut next = Vec::new();
        for s in &live {
            let pick = low
                .iter()
                .find(|b| b.is_disjoint(s.set) && (stage == ell + 1 || b.meets(u)));
            match pick {
                Some(&b) => expand(s, b, u, &mut next),
                None => {
                    anomalies.push(format!(
                        "stage {stage}: no eligible basis set for {:?}",
                        s.set.iter().map(|v| v + 1).collect::<Vec<_>>()
                    ));
                    next.push(Seq {
                        set: s.set,
                        len: s.len,
                        w: s.w.clone(),
                    });
                }
            }
            if next.len() > TRACE_BUDGET {
                return Err(Error::Budget {
                    count: next.len() as u128,
                    budget: TRACE_BUDGET as u128,
                });
            }
        }
        live = next;
        log(stage, &live, &mut stages);
    }

    let mut survivors: Vec<Seq> = Vec::new();
    let mut discarded = 0;
    let mut stage = ell + 1;
    while !live.is_empty() {
        stage += 1;
        let mut next = Vec::new();
        for s in live {
            let open = basis.sets.iter().find(|b| b.is_disjoint(s.set));
            match open {
                None => survivors.push(s),
                Some(_) if s.len >= k && !fam.contains(s.set) => discarded += 1,
                Some(&b) => expand(&s, b, u, &mut next),
            }
            if next.len() > TRACE_BUDGET {
                return Err(Error::Budget {
                    count: next.len() as u128,
                    budget: TRACE_BUDGET as u128,
                });
            }
        }
        live = next;
        if !live.is_empty() {
            log(stage, &live, &mut stages);
        }
    }

    let mut by_len = BTreeMap::new();
    for s in &survivors {
        *by_len.entry(s.len).or_insert(0) += 1;
    }
    let covers_basis = basis
        .sets
        .iter()
        .filter(|b| b.len() >= r && b.is_disjoint(u))
        .all(|b| survivors.iter().any(|s| s.set == *b && s.len == b.len()));
    let base = BigInt::from(t - 1) * BigInt::from(r) * pow_big(r - 1, ell - 1);
    let weights_bounded = survivors.iter().all(|s| {
        s.len <= ell
            || s.w.clone() * BigRational::from_integer(&base * pow_big(k, s.len - ell - 1))
                >= BigRational::one()
    });
    Ok(BranchingTrace {
        u1: u1 + 1,
        b1: b1.iter().map(|v| v + 1).collect(),
        stages,
        survivors: by_len,
        discarded,
        final_weight: ratio_string(&total_weight(&survivors)),
        covers_basis,
        weights_bounded,
        anomalies,
    })
}
