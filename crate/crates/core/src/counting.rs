//! Exact big-integer counting: binomials with the vanishing convention,
//! inclusion-exclusion for generated families at any `n`, closed-form
//! diversity values, bound evaluators and the binomial inequalities used
//! for the triangle wreath products.
//!
//! Binomial convention throughout: `C(m, r) = 0` unless `0 <= r <= m`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bits::{subsets_of, VertexSet};
use crate::constructions::GeneratedFamily;
use crate::error::{Error, Result};

/// Exact nonnegative count.
pub type BigCount = BigUint;

/// `C(m, r)`, zero outside `0 <= r <= m`.
pub fn binom(m: i64, r: i64) -> BigCount {
    if r < 0 || m < 0 || r > m {
        return BigUint::zero();
    }
    let r = r.min(m - r) as u64;
    let m = m as u64;
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

fn binom_i(m: i64, r: i64) -> BigInt {
    BigInt::from(binom(m, r))
}

fn to_count(x: BigInt) -> BigCount {
    x.to_biguint().expect("count formulas are nonnegative")
}

/// `C(x, k)` for rational `x` as the falling-factorial polynomial
/// `x (x-1) .. (x-k+1) / k!`. Agrees with the integer binomial at integers.
pub fn binom_rational(x: &BigRational, k: u64) -> BigRational {
    let mut num = BigRational::one();
    for i in 0..k {
        num *= x - BigRational::from_integer(BigInt::from(i));
    }
    let mut fact = BigInt::one();
    for i in 1..=k {
        fact *= i;
    }
    num / BigRational::from_integer(fact)
}

/// `|F_E(S̄)|`: inclusion-exclusion over nonempty sets of generators that
/// avoid `S`, each contributing `±C(n - |S| - |∪G|, k - |∪G|)`. Branches stop
/// as soon as the union exceeds `k`, since every further term vanishes.
pub fn count_generated_avoiding(gf: &GeneratedFamily, avoid: VertexSet) -> BigCount {
    let gens: Vec<VertexSet> = gf
        .generators
        .iter()
        .copied()
        .filter(|g| g.is_disjoint(avoid))
        .collect();
    let free = gf.n as i64 - avoid.len() as i64;
    let mut total = BigInt::zero();
    inclusion_exclusion(&gens, 0, VertexSet::EMPTY, 0, free, gf.k, &mut total);
    to_count(total)
}

fn inclusion_exclusion(
    gens: &[VertexSet],
    from: usize,
    union: VertexSet,
    picked: usize,
    free: i64,
    k: usize,
    total: &mut BigInt,
) {
    for i in from..gens.len() {
        let u = union.union(gens[i]);
        if u.len() > k {
            continue;
        }
        let term = binom_i(free - u.len() as i64, (k - u.len()) as i64);
        if picked.is_multiple_of(2) {
            *total += term;
        } else {
            *total -= term;
        }
        inclusion_exclusion(gens, i + 1, u, picked + 1, free, k, total);
    }
}

/// `|F_E|`.
pub fn count_generated(gf: &GeneratedFamily) -> BigCount {
    count_generated_avoiding(gf, VertexSet::EMPTY)
}

/// `γ_ℓ(F_E)` with a minimising `S ∩ support` and the number of vertices of
/// `S` taken outside the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedDiversity {
    pub value: BigCount,
    pub inside: VertexSet,
    pub outside: usize,
}

/// `γ_ℓ(F_E)`. Vertices outside the generators' support are
/// interchangeable, so `S` is enumerated as a subset `T` of the support plus
/// a count `ℓ - |T|` of outside vertices.
pub fn generated_diversity(gf: &GeneratedFamily, ell: usize) -> Result<GeneratedDiversity> {
    if ell >= gf.n {
        return Err(Error::OutOfRange(format!(
            "diversity level {ell} needs ell < n = {}",
            gf.n
        )));
    }
    let support = gf.support();
    let s = support.len();
    let outside_room = gf.n - s;
    let mut best: Option<GeneratedDiversity> = None;
    for inside in ell.saturating_sub(outside_room)..=ell.min(s) {
        for t in subsets_of(support, inside) {
            let value = count_with_outside(gf, t, ell - inside);
            if best.as_ref().is_none_or(|b| value < b.value) {
                best = Some(GeneratedDiversity {
                    value,
                    inside: t,
                    outside: ell - inside,
                });
            }
        }
    }
    Ok(best.expect("at least one split of S exists"))
}

/// Count avoiding `t` and `outside` further vertices off the support. Those
/// vertices only shrink the free ground set.
fn count_with_outside(gf: &GeneratedFamily, t: VertexSet, outside: usize) -> BigCount {
    let shrunk = GeneratedFamily {
        n: gf.n - outside,
        k: gf.k,
        generators: gf.generators.clone(),
    };
    count_generated_avoiding(&shrunk, t)
}

/// `γ_2(F_L) = 2C(n-5, k-3) - C(n-7, k-5)` for the Fano `k`-graph.
pub fn fano_gamma2(n: i64, k: i64) -> BigCount {
    to_count(BigInt::from(2) * binom_i(n - 5, k - 3) - binom_i(n - 7, k - 5))
}

/// `γ_2(F_T0) = 2C(n-5, k-3) - C(n-6, k-4)`.
pub fn t0_gamma2(n: i64, k: i64) -> BigCount {
    to_count(BigInt::from(2) * binom_i(n - 5, k - 3) - binom_i(n - 6, k - 4))
}

/// `γ_3(F_L3) = 3C(n-7, k-4) - 3C(n-10, k-7) + C(n-13, k-10)`.
pub fn l3_gamma3(n: i64, k: i64) -> BigCount {
    let three = BigInt::from(3);
    to_count(
        &three * binom_i(n - 7, k - 4) - &three * binom_i(n - 10, k - 7) + binom_i(n - 13, k - 10),
    )
}

/// Parameters of the general upper bound on `γ_ℓ`. `m_value` is the
/// caller-supplied value of `m_ℓ(ℓ+1)` and `m_source` says where it comes
/// from.
#[derive(Clone, Debug, Serialize)]
pub struct BoundSpec {
    pub ell: u32,
    pub k: u64,
    pub n: u64,
    pub m_value: u64,
    pub m_source: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremBounds {
    /// `m C(n-2ℓ-1, k-ℓ-1) + (ℓ+1) ℓ^ℓ k C(n-2ℓ-2, k-ℓ-2)`.
    #[serde(serialize_with = "as_decimal")]
    pub main: BigCount,
    /// Same with `m - 1` in place of `m`.
    #[serde(serialize_with = "as_decimal")]
    pub reduced: BigCount,
    /// `(ℓ+2)(ℓ+1)^ℓ k C(n-2ℓ-2, k-ℓ-2)`, the bound when the basis has no
    /// small transversal at level `ℓ+1`.
    #[serde(serialize_with = "as_decimal")]
    pub case1: BigCount,
    /// Whether `k > ℓ >= 2` and
    /// `m n >= ((ℓ+2)(ℓ+1)^ℓ - (ℓ+1)ℓ^ℓ) k^2`, under which the bounds are proved.
    pub hypothesis_holds: bool,
    /// `((ℓ+2)(ℓ+1)^ℓ - (ℓ+1)ℓ^ℓ) / m` as a reduced fraction string.
    pub n_over_k2_threshold: String,
}

pub fn as_decimal<S: serde::Serializer>(
    x: &BigCount,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn pow(b: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(b), e as usize)
}

pub fn theorem_bounds(spec: &BoundSpec) -> TheoremBounds {
    let l = spec.ell as i64;
    let (n, k) = (spec.n as i64, spec.k as i64);
    let lead = binom_i(n - 2 * l - 1, k - l - 1);
    let tail_coeff = BigInt::from(l + 1) * pow(spec.ell as u64, spec.ell) * BigInt::from(k);
    let tail = &tail_coeff * binom_i(n - 2 * l - 2, k - l - 2);
    let m = BigInt::from(spec.m_value);
    let main = &m * &lead + &tail;
    let reduced = (&m - BigInt::one()) * &lead + &tail;
    let case1 = BigInt::from(l + 2)
        * pow(spec.ell as u64 + 1, spec.ell)
        * BigInt::from(k)
        * binom_i(n - 2 * l - 2, k - l - 2);
    let gap = BigInt::from(l + 2) * pow(spec.ell as u64 + 1, spec.ell)
        - BigInt::from(l + 1) * pow(spec.ell as u64, spec.ell);
    let hypothesis_holds = spec.m_value > 0
        && k > l
        && l >= 2
        && &m * BigInt::from(n) >= &gap * BigInt::from(k) * BigInt::from(k);
    let threshold = if spec.m_value == 0 {
        "undefined".to_string()
    } else {
        let r = BigRational::new(gap, m);
        r.to_string()
    };
    TheoremBounds {
        main: to_count(main),
        reduced: to_count(reduced.max(BigInt::zero())),
        case1: to_count(case1),
        hypothesis_holds,
        n_over_k2_threshold: threshold,
    }
}

/// Upper bound on `γ_3` for intersecting `k`-graphs with `n >= 71k^2`:
/// `3C(n-7, k-4) + 108k C(n-8, k-5)`.
pub fn triple_diversity_bound(n: i64, k: i64) -> BigCount {
    to_count(
        BigInt::from(3) * binom_i(n - 7, k - 4) + BigInt::from(108 * k) * binom_i(n - 8, k - 5),
    )
}

/// Upper bound on `γ_2` for intersecting `k`-graphs with `n >= 13k^2`,
/// attained exactly by the Fano `k`-graph.
pub fn double_diversity_bound(n: i64, k: i64) -> BigCount {
    fano_gamma2(n, k)
}

/// Upper bound `2ℓ^{ℓ-3}` on `m_{ℓ-1}(ℓ)` for `ℓ >= 4`.
pub fn codegree_constant_bound(ell: u32) -> Result<BigCount> {
    if ell < 4 {
        return Err(Error::OutOfRange(format!("needs ell >= 4, got {ell}")));
    }
    Ok(BigUint::from(2u32) * num_traits::pow(BigUint::from(ell), (ell - 3) as usize))
}

/// `C(p, k) C(q, k) > C(p-1, k) C(q+1, k)`.
pub fn check_key3(p: i64, q: i64, k: i64) -> bool {
    binom(p, k) * binom(q, k) > binom(p - 1, k) * binom(q + 1, k)
}

/// Result of evaluating `C((4k+1)/3, k) C((4k-5)/3, k) > C(2k-1, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Key4 {
    pub k: u64,
    /// Whether `(4k+1)/3` and `(4k-5)/3` are integers (`k ≡ 2 mod 3`).
    pub integral_arguments: bool,
    pub holds: bool,
}

/// Evaluates the inequality exactly with falling-factorial binomials, which
/// also covers the non-integral upper arguments.
pub fn check_key4(k: u64) -> Key4 {
    let third = |num: i64| BigRational::new(BigInt::from(num), BigInt::from(3));
    let ki = k as i64;
    let lhs = binom_rational(&third(4 * ki + 1), k) * binom_rational(&third(4 * ki - 5), k);
    let rhs = BigRational::from_integer(binom_i(2 * ki - 1, ki));
    Key4 {
        k,
        integral_arguments: k % 3 == 2,
        holds: lhs > rhs,
    }
}

/// Pascal rows `C(m, r)` for `0 <= r <= m <= max`.
pub struct PascalTable {
    rows: Vec<Vec<BigUint>>,
}

impl PascalTable {
    pub fn new(max: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max + 1);
        for m in 0..=max {
            let mut row = vec![BigUint::one(); m + 1];
            for r in 1..m {
                row[r] = &rows[m - 1][r - 1] + &rows[m - 1][r];
            }
            rows.push(row);
        }
        PascalTable { rows }
    }

    pub fn get(&self, m: i64, r: i64) -> BigUint {
        if r < 0 || m < 0 || r > m {
            return BigUint::zero();
        }
        self.rows[m as usize][r as usize].clone()
    }

    fn get_ref(&self, m: usize, r: usize) -> Option<&BigUint> {
        if r > m {
            None
        } else {
            Some(&self.rows[m][r])
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub checked: u64,
    pub failures: Vec<String>,
}

impl ScanReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `check_key3` for every `k_min <= k <= p <= q <= max`.
pub fn scan_key3(k_min: usize, max: usize) -> ScanReport {
    let table = PascalTable::new(max + 1);
    let zero = BigUint::zero();
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in k_min..=max {
        for p in k..=max {
            let cp = table.get_ref(p, k).unwrap_or(&zero);
            let cp1 = table.get_ref(p - 1, k).unwrap_or(&zero);
            for q in p..=max {
                let lhs = cp * table.get_ref(q, k).unwrap_or(&zero);
                let rhs = cp1 * table.get_ref(q + 1, k).unwrap_or(&zero);
                checked += 1;
                if lhs <= rhs {
                    failures.push(format!("p={p} q={q} k={k}"));
                }
            }
        }
    }
    ScanReport { checked, failures }
}

/// `check_key4` for every `k` in the range.
pub fn scan_key4(lo: u64, hi: u64) -> ScanReport {
    let mut failures = Vec::new();
    for k in lo..=hi {
        if !check_key4(k).holds {
            failures.push(format!("k={k}"));
        }
    }
    ScanReport {
        checked: hi.saturating_sub(lo) + 1,
        failures,
    }
}

/// `f(a,b,c) = C(a,k)C(b,k) + C(a,k)C(c,k) + C(b,k)C(c,k)`.
pub fn f_abc(a: i64, b: i64, c: i64, k: i64) -> BigCount {
    let (x, y, z) = (binom(a, k), binom(b, k), binom(c, k));
    &x * &y + &x * &z + &y * &z
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinF {
    #[serde(serialize_with = "as_decimal")]
    pub min: BigCount,
    pub argmin: (u64, u64, u64),
}

/// Minimum of `f(a,b,c)` over `a + b + c = 4k - 2`, `0 <= a <= b <= c <= 2k - 1`,
/// by scanning every composition. Ties go to the lexicographically first triple.
pub fn min_f_abc(k: u64) -> Result<MinF> {
    if k == 0 {
        return Err(Error::OutOfRange("min_f_abc needs k >= 1".into()));
    }
    let ki = k as i64;
    let total = 4 * ki - 2;
    let cap = 2 * ki - 1;
    let table = PascalTable::new(cap as usize);
    let mut best: Option<MinF> = None;
    for a in 0..=cap {
        for b in a..=cap {
            let c = total - a - b;
            if c < b || c > cap {
                continue;
            }
            let (x, y, z) = (table.get(a, ki), table.get(b, ki), table.get(c, ki));
            let v = &x * &y + &x * &z + &y * &z;
            if best.as_ref().is_none_or(|m| v < m.min) {
                best = Some(MinF {
                    min: v,
                    argmin: (a as u64, b as u64, c as u64),
                });
            }
        }
    }
    best.ok_or_else(|| Error::OutOfRange(format!("no admissible (a,b,c) for k={k}")))
}

/// `2C(2k-2, k) + 1`.
pub fn triangle_target(k: u64) -> BigCount {
    BigUint::from(2u32) * binom(2 * k as i64 - 2, k as i64) + 1u32
}

/// Ingredients of the lower bound `f(a,b,c) >= 2C(2k-2,k) + 1` for large `k`,
/// each checked exactly for one `k`.
#[derive(Clone, Debug, Serialize)]
pub struct TriangleChain {
    pub k: u64,
    /// The rational-argument inequality at `k`.
    pub key4: bool,
    /// `C(2k-1, k) >= 2C(2k-2, k) + 1`.
    pub ekr_dominates_target: bool,
    /// `check_key3` for every `k <= p <= q <= 4k - 2`.
    pub key3_range: bool,
    /// `C((4k-2)/3, k)^2 >= C((4k+1)/3, k) C((4k-5)/3, k)`.
    pub balanced_square_dominates: bool,
    /// Scan minimum equals the target.
    pub scan_matches: bool,
}

impl TriangleChain {
    pub fn holds(&self) -> bool {
        self.key4
            && self.ekr_dominates_target
            && self.key3_range
            && self.balanced_square_dominates
            && self.scan_matches
    }
}

pub fn triangle_chain(k: u64) -> Result<TriangleChain> {
    let ki = k as i64;
    let target = triangle_target(k);
    let third = |num: i64| BigRational::new(BigInt::from(num), BigInt::from(3));
    let sq = binom_rational(&third(4 * ki - 2), k);
    let sq = &sq * &sq;
    let prod = binom_rational(&third(4 * ki + 1), k) * binom_rational(&third(4 * ki - 5), k);
    let top = (4 * k - 2) as usize;
    let key3_range = scan_key3_fixed_k(k as usize, top);
    Ok(TriangleChain {
        k,
        key4: check_key4(k).holds,
        ekr_dominates_target: binom(2 * ki - 1, ki) >= target,
        key3_range,
        balanced_square_dominates: sq >= prod,
        scan_matches: min_f_abc(k)?.min == target,
    })
}

fn scan_key3_fixed_k(k: usize, max: usize) -> bool {
    let table = PascalTable::new(max + 1);
    let zero = BigUint::zero();
    (k..=max).all(|p| {
        (p..=max).all(|q| {
            let l = table.get_ref(p, k).unwrap_or(&zero) * table.get_ref(q, k).unwrap_or(&zero);
            let r =
                table.get_ref(p - 1, k).unwrap_or(&zero) * table.get_ref(q + 1, k).unwrap_or(&zero);
            l > r
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fano, generated, l3, t0};

    #[test]
    fn binomial_conventions() {
        assert_eq!(binom(6, 3), BigUint::from(20u32));
        assert_eq!(binom(0, -2), BigUint::zero());
        assert_eq!(binom(-3, 0), BigUint::zero());
        assert_eq!(binom(3, 5), BigUint::zero());
        assert_eq!(binom(10, 6), BigUint::from(210u32));
        assert_eq!(triangle_target(6), BigUint::from(421u32));
    }

    #[test]
    fn rational_binomial_agrees_at_integers() {
        for m in 0..12i64 {
            for r in 0..8u64 {
                let x = BigRational::from_integer(BigInt::from(m));
                assert_eq!(
                    binom_rational(&x, r),
                    BigRational::from_integer(binom_i(m, r as i64))
                );
            }
        }
    }

    #[test]
    fn fano_generated_counts() {
        let g = generated(&fano(), 8, 4).unwrap();
        assert_eq!(count_generated(&g), BigUint::from(35u32));
        let g10 = generated(&fano(), 10, 4).unwrap();
        assert_eq!(
            generated_diversity(&g10, 2).unwrap().value,
            BigUint::from(10u32)
        );
        assert_eq!(fano_gamma2(10, 4), BigUint::from(10u32));
        assert_eq!(
            count_generated_avoiding(&g10, VertexSet::full(7)),
            BigUint::zero()
        );
    }

    #[test]
    fn closed_forms_at_spot_values() {
        let g = generated(&t0(), 9, 4).unwrap();
        assert_eq!(
            generated_diversity(&g, 2).unwrap().value,
            BigUint::from(7u32)
        );
        assert_eq!(t0_gamma2(9, 4), BigUint::from(7u32));
        let h = generated(&l3(), 14, 5).unwrap();
        assert_eq!(
            generated_diversity(&h, 3).unwrap().value,
            BigUint::from(21u32)
        );
        assert_eq!(l3_gamma3(14, 5), BigUint::from(21u32));
        assert_eq!(
            generated_diversity(&h, 0).unwrap().value,
            count_generated(&h)
        );
    }

    #[test]
    fn theorem_bound_spot_values() {
        let b = theorem_bounds(&BoundSpec {
            ell: 2,
            k: 3,
            n: 117,
            m_value: 2,
            m_source: "test".into(),
        });
        assert_eq!(b.main, BigUint::from(2u32));
        assert!(b.hypothesis_holds);
        assert_eq!(b.n_over_k2_threshold, "12");
        assert_eq!(triple_diversity_bound(71 * 16, 4), BigUint::from(3u32));
        // The specialised triple bound is the generic one with ell = m = 3.
        for n in 20..60 {
            for k in 4..8 {
                let g = theorem_bounds(&BoundSpec {
                    ell: 3,
                    k,
                    n,
                    m_value: 3,
                    m_source: "test".into(),
                });
                assert_eq!(g.main, triple_diversity_bound(n as i64, k as i64));
            }
        }
        assert_eq!(codegree_constant_bound(5).unwrap(), BigUint::from(50u32));
    }

    #[test]
    fn key_inequalities() {
        assert!(check_key3(5, 7, 3));
        for k in 1..10 {
            assert!(check_key3(k, k, k));
        }
        let k4 = check_key4(24);
        assert!(k4.holds);
        assert!(!k4.integral_arguments);
        assert!(check_key4(26).integral_arguments);
        assert!(scan_key3(3, 40).all_hold());
    }

    #[test]
    fn min_f_small_values() {
        let m = min_f_abc(6).unwrap();
        assert_eq!(m.min, BigUint::from(421u32));
        assert_eq!(min_f_abc(2).unwrap().min, BigUint::from(3u32));
        assert_eq!(min_f_abc(3).unwrap().min, BigUint::from(9u32));
        assert_eq!(
            f_abc(m.argmin.0 as i64, m.argmin.1 as i64, m.argmin.2 as i64, 6),
            m.min
        );
    }

    #[test]
    fn chain_at_24() {
        let c = triangle_chain(24).unwrap();
        assert!(c.holds(), "{c:?}");
    }
}
