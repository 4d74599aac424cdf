//! Named families. Fixed labelings follow the listing order of each
//! construction; the same labelings are shipped as JSON under `fixtures/`.

use crate::bits::{binom_u128, k_subsets, subsets_of, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::setfam::Family;

/// Largest `C(n, k)` that [`GeneratedFamily::enumerate`] accepts by default.
pub const ENUMERATION_BUDGET: u128 = 10_000_000;

/// `{F ∈ C([n], k) : F ⊇ G for some generator G}`, kept symbolic so that `n`
/// may exceed the 64-vertex cap. Counting goes through
/// [`crate::counting`]; enumeration is available for small `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedFamily {
    pub n: usize,
    pub k: usize,
    pub generators: Vec<VertexSet>,
}

impl GeneratedFamily {
    pub fn new(
        n: usize,
        k: usize,
        generators: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self> {
        let mut generators: Vec<VertexSet> = generators.into_iter().collect();
        generators.sort_unstable();
        generators.dedup();
        for g in &generators {
            if g.len() > k {
                return Err(Error::OutOfRange(format!(
                    "generator {g} has {} vertices but k = {k}",
                    g.len()
                )));
            }
            if let Some(v) = (*g).max() {
                if v >= n {
                    return Err(Error::VertexOutOfRange {
                        edge: g.to_string(),
                        vertex: v + 1,
                        n,
                    });
                }
            }
        }
        Ok(GeneratedFamily { n, k, generators })
    }

    pub fn support(&self) -> VertexSet {
        self.generators
            .iter()
            .fold(VertexSet::EMPTY, |acc, &g| acc.union(g))
    }

    /// Lists every member. Fails above 64 vertices or when `C(n, k)` exceeds
    /// `budget`.
    pub fn enumerate_with_budget(&self, budget: u128) -> Result<Family> {
        if self.n > MAX_VERTICES {
            return Err(Error::GroundTooLarge { n: self.n });
        }
        let count = binom_u128(self.n, self.k);
        if count > budget {
            return Err(Error::Budget { count, budget });
        }
        let ground = VertexSet::full(self.n);
        let mut edges = Vec::new();
        for &g in &self.generators {
            for extra in subsets_of(ground.difference(g), self.k - g.len()) {
                edges.push(g.union(extra));
            }
        }
        Family::new(self.n, self.k, edges)
    }

    pub fn enumerate(&self) -> Result<Family> {
        self.enumerate_with_budget(ENUMERATION_BUDGET)
    }
}

/// `F_E` for the edges of `gen`, on `[n]` with uniformity `k`.
pub fn generated(gen: &Family, n: usize, k: usize) -> Result<GeneratedFamily> {
    GeneratedFamily::new(n, k, gen.edges().iter().copied())
}

fn from_lists(n: usize, k: usize, lists: &[[usize; 3]]) -> Family {
    let sets: Vec<&[usize]> = lists.iter().map(|s| s.as_slice()).collect();
    Family::from_one_based(n, k, &sets).expect("fixed listing is valid")
}

/// The seven lines of the Fano plane on `[7]`.
pub fn fano() -> Family {
    from_lists(
        7,
        3,
        &[
            [1, 2, 3],
            [1, 4, 5],
            [1, 6, 7],
            [2, 4, 6],
            [2, 5, 7],
            [3, 5, 6],
            [3, 4, 7],
        ],
    )
}

/// The ten triples on `[6]` with every point in five triples and every pair
/// in two.
pub fn t0() -> Family {
    from_lists(
        6,
        3,
        &[
            [1, 2, 3],
            [1, 2, 4],
            [3, 4, 5],
            [3, 4, 6],
            [1, 5, 6],
            [2, 5, 6],
            [1, 3, 5],
            [2, 4, 5],
            [1, 4, 6],
            [2, 3, 6],
        ],
    )
}

/// Lines of the projective plane of order 3: `{i, i+1, i+3, i+9}` mod 13,
/// with residue `i` stored as vertex `i` (label `i + 1`).
pub fn l3() -> Family {
    let edges = (0..13).map(|i| VertexSet::from_vertices([0, 1, 3, 9].map(|d| (i + d) % 13)));
    Family::new(13, 4, edges).expect("difference-set lines are 4-sets")
}

/// Wreath product: one copy of `a`'s ground set per vertex of `b`, vertex
/// `x` of copy `i` stored as `i * a.n() + x`. For each edge `B` of `b`, every
/// choice of one `a`-edge inside each copy indexed by `B` gives an edge.
pub fn wreath(a: &Family, b: &Family) -> Result<Family> {
    let n = a.n() * b.n();
    if n > MAX_VERTICES {
        return Err(Error::GroundTooLarge { n });
    }
    let shift = |e: VertexSet, i: usize| VertexSet(e.bits() << (i * a.n()));
    let mut edges = Vec::new();
    for &be in b.edges() {
        let mut partial = vec![VertexSet::EMPTY];
        for i in be.iter() {
            partial = partial
                .iter()
                .flat_map(|&p| a.edges().iter().map(move |&e| p.union(shift(e, i))))
                .collect();
        }
        edges.extend(partial);
    }
    Family::new(n, a.k() * b.k(), edges)
}

/// Labels `a0 a1 b0 b1 c0 c1 d0 d1 e0 e1 e2` are vertices `1..=11`.
/// Pairs from `{A, B, C, D}` joined with pairs from `E`, plus the eight
/// transversals `{a_i, b_j, c_k, d_l}` with `i + j + k` odd.
pub fn example_4_2() -> Family {
    let e = VertexSet::from_vertices([8, 9, 10]);
    let mut edges = Vec::new();
    for block in 0..4 {
        let x = VertexSet::from_vertices([2 * block, 2 * block + 1]);
        for y in subsets_of(e, 2) {
            edges.push(x.union(y));
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                if (i + j + k) % 2 == 1 {
                    for l in 0..2 {
                        edges.push(VertexSet::from_vertices([i, 2 + j, 4 + k, 6 + l]));
                    }
                }
            }
        }
    }
    Family::new(11, 4, edges).expect("listing is 4-uniform")
}

/// `U_1 = {1,2,3}`, `U_2 = {4,5,6}`, `U_3 = {7,8,9}`; edges are unions of a
/// pair from one block and a pair from another.
pub fn example_4_3() -> Family {
    let block = |i: usize| VertexSet::from_vertices([3 * i, 3 * i + 1, 3 * i + 2]);
    let mut edges = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            for p in subsets_of(block(i), 2) {
                for q in subsets_of(block(j), 2) {
                    edges.push(p.union(q));
                }
            }
        }
    }
    Family::new(9, 4, edges).expect("listing is 4-uniform")
}

/// Labels `x0 x1 x2 y0 .. y4 z0 z1` are vertices `1..=10`.
pub fn example_4_4() -> Family {
    let x = VertexSet::from_vertices([0, 1, 2]);
    let y = |i: usize| 3 + i % 5;
    let z = VertexSet::from_vertices([8, 9]);
    let mut edges = Vec::new();
    for a in subsets_of(x, 2) {
        for i in 0..5 {
            edges.push(a.union(VertexSet::from_vertices([y(i), y(i + 1)])));
        }
        edges.push(a.union(z));
    }
    for i in 0..5 {
        let c = VertexSet::from_vertices([y(i), y(i + 1), y(i + 3)]);
        for v in z.iter() {
            let mut e = c;
            e.insert(v);
            edges.push(e);
        }
    }
    Family::new(10, 4, edges).expect("listing is 4-uniform")
}

/// Three copies of the pentagon `{i, i+1}` and of `{i, i+1, i+3}` (mod 5);
/// edges join a pentagon edge in copy `j` with a triple in copy `j + 1`
/// (mod 3). Vertex `i` of copy `j` is `5j + i`.
pub fn pentagon_h() -> Family {
    let at = |j: usize, i: usize| 5 * j + i % 5;
    let mut edges = Vec::new();
    for j in 0..3 {
        let nj = (j + 1) % 3;
        for p in 0..5 {
            for r in 0..5 {
                edges.push(VertexSet::from_vertices([
                    at(j, p),
                    at(j, p + 1),
                    at(nj, r),
                    at(nj, r + 1),
                    at(nj, r + 3),
                ]));
            }
        }
    }
    Family::new(15, 5, edges).expect("listing is 5-uniform")
}

/// The triangle `C([3], 2)`.
pub fn triangle() -> Family {
    Family::complete(3, 2).expect("small")
}

/// `t0 ∘ C([3], 2)`: 6-uniform on 18 vertices.
pub fn t0_triangle() -> Family {
    wreath(&t0(), &triangle()).expect("18 vertices fit")
}

/// `C([2k-1], k) ∘ C([3], 2)`, a `2k`-uniform family on `3(2k-1)` vertices.
/// Limited to `1 <= k <= 10`.
pub fn ekr_triangle(k: usize) -> Result<Family> {
    if k == 0 || k > 10 {
        return Err(Error::OutOfRange(format!(
            "ekr_triangle needs 1 <= k <= 10, got {k}; use counting::min_f_abc for larger k"
        )));
    }
    wreath(&Family::complete(2 * k - 1, k)?, &triangle())
}

/// All `k`-sets of `[n]` through vertex `x`.
pub fn star(n: usize, k: usize, x: usize) -> Result<Family> {
    Family::new(n, k, k_subsets(n, k).filter(|e| e.contains(x)))
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "fano",
    "t0",
    "l3",
    "example-4-2",
    "example-4-3",
    "example-4-4",
    "pentagon-h",
    "t0-triangle",
    "ekr-triangle",
    "triangle",
];

/// Builds a named family; `k` is only used by `ekr-triangle`.
pub fn by_name(name: &str, k: Option<usize>) -> Result<Family> {
    Ok(match name {
        "fano" => fano(),
        "t0" => t0(),
        "l3" => l3(),
        "example-4-2" => example_4_2(),
        "example-4-3" => example_4_3(),
        "example-4-4" => example_4_4(),
        "pentagon-h" => pentagon_h(),
        "t0-triangle" => t0_triangle(),
        "triangle" => triangle(),
        "ekr-triangle" => {
            ekr_triangle(k.ok_or_else(|| Error::OutOfRange("ekr-triangle needs --k".into()))?)?
        }
        other => {
            return Err(Error::OutOfRange(format!(
                "unknown construction `{other}`; expected one of {}",
                NAMES.join(", ")
            )))
        }
    })
}

/// Vertex names used by the fixed labelings, when they have any.
pub fn labels(name: &str) -> Option<Vec<String>> {
    let v = |s: &[&str]| Some(s.iter().map(|x| x.to_string()).collect());
    match name {
        "example-4-2" => v(&[
            "a0", "a1", "b0", "b1", "c0", "c1", "d0", "d1", "e0", "e1", "e2",
        ]),
        "example-4-3" => v(&[
            "u1a", "u1b", "u1c", "u2a", "u2b", "u2c", "u3a", "u3b", "u3c",
        ]),
        "example-4-4" => v(&["x0", "x1", "x2", "y0", "y1", "y2", "y3", "y4", "z0", "z1"]),
        "pentagon-h" => Some(
            (0..3)
                .flat_map(|j| (0..5).map(move |i| format!("x{j}_{i}")))
                .collect(),
        ),
        "l3" => Some((0..13).map(|i| i.to_string()).collect()),
        _ => None,
    }
}
