//! Canonical labeling of uniform families.
//!
//! The canonical form of a family is the lexicographically smallest sorted
//! edge-mask list over all relabelings of its support onto `{0, .., s-1}`.
//! It is computed by assigning labels `0, 1, 2, ..` one vertex at a time.
//! Once labels `0..=j` are placed, the edges whose largest label is `j` are
//! fixed, and they occupy a fixed slice of the final sorted list, so two
//! partial labelings can be compared level by level. Branches are cut when
//! their level is worse than the best seen, and sibling vertices that an
//! already-found automorphism maps onto each other are explored only once.
//!
//! Because this is the true minimum (not a minimum over a refined subset of
//! labelings), removing the largest edge of a canonical family leaves a
//! canonical family, which is the property orderly generation relies on.

use std::cmp::Ordering;
use std::fmt;

use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::setfam::Family;

/// Stored automorphisms beyond this are discarded; pruning stays sound.
const MAX_GENERATORS: usize = 256;
const UNLABELED: u8 = u8::MAX;

/// Isomorphism fingerprint of a family: support size, uniformity and the
/// minimal sorted edge list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    support: usize,
    k: usize,
    masks: Vec<u64>,
}

impl CanonicalForm {
    /// Wraps masks already known to be a canonical edge list.
    pub(crate) fn from_canonical_masks(support: usize, k: usize, masks: Vec<u64>) -> Self {
        CanonicalForm { support, k, masks }
    }

    pub fn support_size(&self) -> usize {
        self.support
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// The canonical representative itself, on ground set `[support]`.
    pub fn to_family(&self) -> Family {
        Family::new(
            self.support,
            self.k,
            self.masks.iter().map(|&m| VertexSet(m)),
        )
        .expect("canonical masks are valid edges")
    }

    fn mask_bytes(&self) -> usize {
        self.support.div_ceil(8).max(1)
    }

    /// Byte layout: support size, k, edge count (u32 big-endian), then each
    /// mask big-endian in `ceil(support / 8)` bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let w = self.mask_bytes();
        let mut out = Vec::with_capacity(6 + w * self.masks.len());
        out.push(self.support as u8);
        out.push(self.k as u8);
        out.extend_from_slice(&(self.masks.len() as u32).to_be_bytes());
        for &m in &self.masks {
            out.extend_from_slice(&m.to_be_bytes()[8 - w..]);
        }
        out
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.to_bytes())
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let bytes = hex::decode(s).map_err(|e| Error::Json(format!("bad canonical hex: {e}")))?;
        if bytes.len() < 6 {
            return Err(Error::Json("canonical form too short".into()));
        }
        let support = bytes[0] as usize;
        let k = bytes[1] as usize;
        let m = u32::from_be_bytes([bytes[2], bytes[3], bytes[4], bytes[5]]) as usize;
        let w = support.div_ceil(8).max(1);
        if support > 64 || bytes.len() != 6 + w * m {
            return Err(Error::Json("canonical form has the wrong length".into()));
        }
        let masks = bytes[6..]
            .chunks(w)
            .map(|c| c.iter().fold(0u64, |acc, &b| acc << 8 | b as u64))
            .collect();
        Ok(CanonicalForm { support, k, masks })
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Lexicographic comparison of one level of edges. A level that extends the
/// other is smaller: its extra edge precedes everything on later levels.
fn cmp_level(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    b.len().cmp(&a.len())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Minimise,
    /// Abort as soon as anything beats the input's own labeling.
    Check,
    /// Count every optimal labeling; no orbit pruning.
    Count,
}

struct Labeler {
    k: usize,
    support: Vec<usize>,
    /// Edges through each vertex, as original masks.
    incident: Vec<Vec<u64>>,
    label: [u8; 64],
    order: Vec<usize>,
    labeled: u64,
    best: Vec<Vec<u64>>,
    valid: usize,
    pending: bool,
    best_order: Vec<usize>,
    generators: Vec<[u8; 64]>,
    mode: Mode,
    optimal_leaves: u64,
    beaten: bool,
}

impl Labeler {
    fn new(fam: &Family, mode: Mode) -> Self {
        let support: Vec<usize> = fam.support().to_vec();
        let mut incident = vec![Vec::new(); 64];
        for e in fam.edges() {
            for v in e.iter() {
                incident[v].push(e.bits());
            }
        }
        let s = support.len();
        Labeler {
            k: fam.k(),
            support,
            incident,
            label: [UNLABELED; 64],
            order: Vec::with_capacity(s),
            labeled: 0,
            best: vec![Vec::new(); s],
            valid: 0,
            pending: false,
            best_order: Vec::new(),
            generators: Vec::new(),
            mode,
            optimal_leaves: 0,
            beaten: false,
        }
    }

    /// Seeds the incumbent with the family's own labels, which must already
    /// be `0..s`.
    fn seed_identity(&mut self, fam: &Family) {
        let s = self.support.len();
        for e in fam.edges() {
            let top = (*e).max().unwrap_or(0);
            self.best[top].push(e.bits());
        }
        self.valid = s;
        self.best_order = (0..s).collect();
    }

    fn level_for(&self, v: usize, j: usize) -> Vec<u64> {
        let mut lvl: Vec<u64> = self.incident[v]
            .iter()
            .filter_map(|&e| {
                let rest = e & !(1u64 << v);
                if rest & !self.labeled != 0 {
                    return None;
                }
                Some(
                    VertexSet(rest)
                        .iter()
                        .fold(1u64 << j, |m, u| m | 1u64 << self.label[u]),
                )
            })
            .collect();
        lvl.sort_unstable();
        lvl
    }

    fn place(&mut self, v: usize) {
        self.label[v] = self.order.len() as u8;
        self.order.push(v);
        self.labeled |= 1u64 << v;
    }

    fn unplace(&mut self, v: usize) {
        self.label[v] = UNLABELED;
        self.order.pop();
        self.labeled &= !(1u64 << v);
    }

    fn leaf(&mut self) {
        if self.pending {
            self.pending = false;
            self.best_order = self.order.clone();
            self.optimal_leaves = 1;
            return;
        }
        self.optimal_leaves += 1;
        if self.mode != Mode::Count && self.generators.len() < MAX_GENERATORS {
            // Both labelings give the same list, so best⁻¹ ∘ current is an
            // automorphism.
            let mut g = [UNLABELED; 64];
            for (i, slot) in g.iter_mut().enumerate() {
                *slot = i as u8;
            }
            for &v in &self.support {
                g[v] = self.best_order[self.label[v] as usize] as u8;
            }
            self.generators.push(g);
        }
    }

    /// Orbit representative of `v` under the stored automorphisms that fix
    /// the current prefix pointwise.
    fn orbit_roots(&self) -> [u8; 64] {
        let mut parent = [0u8; 64];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        fn find(p: &mut [u8; 64], mut x: usize) -> usize {
            while p[x] as usize != x {
                p[x] = p[p[x] as usize];
                x = p[x] as usize;
            }
            x
        }
        for g in &self.generators {
            if self.order.iter().any(|&u| g[u] as usize != u) {
                continue;
            }
            for &v in &self.support {
                let (a, b) = (find(&mut parent, v), find(&mut parent, g[v] as usize));
                if a != b {
                    let (lo, hi) = (a.min(b), a.max(b));
                    parent[hi] = lo as u8;
                }
            }
        }
        let mut roots = [0u8; 64];
        for &v in &self.support {
            roots[v] = find(&mut parent, v) as u8;
        }
        roots
    }

    fn search(&mut self) {
        if self.beaten {
            return;
        }
        let j = self.order.len();
        if j == self.support.len() {
            self.leaf();
            return;
        }
        // Below level k-1 no edge can be complete yet; only prefixes that sit
        // inside some edge can lead to the smallest first edge.
        let candidates: Vec<usize> = self
            .support
            .iter()
            .copied()
            .filter(|&v| self.label[v] == UNLABELED)
            .filter(|&v| {
                j + 1 >= self.k || self.incident[v].iter().any(|&e| self.labeled & !e == 0)
            })
            .collect();
        let mut levels: Vec<(usize, Vec<u64>)> = candidates
            .into_iter()
            .map(|v| (v, self.level_for(v, j)))
            .collect();
        let Some(top) = levels
            .iter()
            .map(|(_, l)| l)
            .min_by(|a, b| cmp_level(a, b))
            .cloned()
        else {
            return;
        };
        levels.retain(|(_, l)| cmp_level(l, &top) == Ordering::Equal);

        if j < self.valid {
            match cmp_level(&top, &self.best[j]) {
                Ordering::Greater => return,
                Ordering::Less => {
                    if self.mode == Mode::Check {
                        self.beaten = true;
                        return;
                    }
                    self.best[j] = top;
                    self.valid = j + 1;
                    self.pending = true;
                }
                Ordering::Equal => {}
            }
        } else {
            self.best[j] = top;
            self.valid = j + 1;
            self.pending = true;
        }

        let mut explored: Vec<usize> = Vec::new();
        for (v, _) in levels {
            if self.mode != Mode::Count && !explored.is_empty() {
                let roots = self.orbit_roots();
                if explored.iter().any(|&u| roots[u] == roots[v]) {
                    continue;
                }
            }
            self.place(v);
            self.search();
            self.unplace(v);
            if self.beaten {
                return;
            }
            explored.push(v);
        }
    }

    fn form(&self, fam: &Family) -> CanonicalForm {
        let mut masks: Vec<u64> = self.best.iter().flatten().copied().collect();
        masks.sort_unstable();
        CanonicalForm {
            support: self.support.len(),
            k: fam.k(),
            masks,
        }
    }
}

/// Minimal relabeling of the support; isolated vertices are ignored.
pub fn canonical_form(fam: &Family) -> CanonicalForm {
    canonical_labeling(fam).0
}

/// Canonical form together with the labeling that produces it:
/// `order[i]` is the original vertex that receives label `i`.
pub fn canonical_labeling(fam: &Family) -> (CanonicalForm, Vec<usize>) {
    let mut lab = Labeler::new(fam, Mode::Minimise);
    lab.search();
    (lab.form(fam), lab.best_order.clone())
}

/// True iff the family already equals its canonical form, i.e. its support
/// is `{0, .., s-1}` and no relabeling gives a smaller sorted edge list.
pub fn is_canonical(fam: &Family) -> bool {
    let s = fam.support();
    if s.bits() != VertexSet::full(s.len()).bits() {
        return false;
    }
    let mut lab = Labeler::new(fam, Mode::Check);
    lab.seed_identity(fam);
    lab.search();
    !lab.beaten
}

/// Number of permutations of the support that map the family onto itself.
/// Enumerates every optimal labeling, so it is meant for moderate groups.
pub fn automorphism_count(fam: &Family) -> u64 {
    let mut lab = Labeler::new(fam, Mode::Count);
    lab.search();
    lab.optimal_leaves
}

/// Sorted `(degree, sorted co-degrees with neighbours)` per support vertex.
fn vertex_invariants(fam: &Family) -> Vec<(usize, Vec<usize>)> {
    let support = fam.support();
    let mut out: Vec<(usize, Vec<usize>)> = support
        .iter()
        .map(|v| {
            let mut co: Vec<usize> = support
                .iter()
                .filter(|&u| u != v)
                .map(|u| fam.degree(VertexSet::from_vertices([u, v])))
                .filter(|&d| d > 0)
                .collect();
            co.sort_unstable();
            (fam.degree(VertexSet::singleton(v)), co)
        })
        .collect();
    out.sort();
    out
}

/// Isomorphism of supports, after a cheap invariant prefilter.
pub fn is_isomorphic(a: &Family, b: &Family) -> bool {
    if a.k() != b.k() || a.len() != b.len() || a.support().len() != b.support().len() {
        return false;
    }
    let mut da: Vec<usize> = a.degrees().into_iter().filter(|&d| d > 0).collect();
    let mut db: Vec<usize> = b.degrees().into_iter().filter(|&d| d > 0).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db || vertex_invariants(a) != vertex_invariants(b) {
        return false;
    }
    canonical_form(a) == canonical_form(b)
}
