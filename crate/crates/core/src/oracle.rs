//! Brute-force reference for concepts and Hasse edges.
//!
//! Everything here works on private bitsets rebuilt from the raw rows of a
//! context; nothing from [`crate::engine`] or [`crate::builders`] is used.
//! Results are ordered canonically (descending support, then ascending
//! intent), the same order as [`crate::ConceptLattice::canonical`].

use std::cmp::Reverse;
use std::collections::HashSet;

use crate::context::{AttrSet, Concept, Context, ObjectSet};
use crate::error::{Error, Result};

/// Upper bound on the number of extents the fixpoint may produce.
pub const EXTENT_GUARD: usize = 1_000_000;

/// Largest attribute count accepted by [`exhaustive_extents`].
pub const EXHAUSTIVE_MAX_M: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn full(len: usize) -> Self {
        let mut b = Self::empty(len);
        for k in 0..len {
            b.set(k);
        }
        b
    }

    fn set(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }

    fn get(&self, k: usize) -> bool {
        self.0[k / 64] >> (k % 64) & 1 == 1
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn ids(&self, len: usize) -> Vec<u32> {
        (0..len).filter(|&k| self.get(k)).map(|k| k as u32).collect()
    }
}

/// The incidence as bit rows and bit columns.
struct Table {
    n: usize,
    m: usize,
    rows: Vec<Bits>,
    cols: Vec<Bits>,
}

impl Table {
    fn new(ctx: &Context) -> Self {
        let (n, m) = (ctx.n(), ctx.m());
        let mut rows = vec![Bits::empty(m); n];
        let mut cols = vec![Bits::empty(n); m];
        for (g, row) in ctx.rows().iter().enumerate() {
            for &i in row {
                rows[g].set(i as usize);
                cols[i as usize].set(g);
            }
        }
        Self { n, m, rows, cols }
    }

    fn intent_of(&self, extent: &Bits) -> Bits {
        let mut out = Bits::full(self.m);
        for (g, row) in self.rows.iter().enumerate() {
            if extent.get(g) {
                out = out.and(row);
            }
        }
        out
    }

    fn extent_of(&self, intent: &Bits) -> Bits {
        let mut out = Bits::full(self.n);
        for (i, col) in self.cols.iter().enumerate() {
            if intent.get(i) {
                out = out.and(col);
            }
        }
        out
    }

    fn concept(&self, extent: &Bits) -> Concept {
        Concept::new(
            ObjectSet::from_sorted(extent.ids(self.n)),
            AttrSet::from_sorted(self.intent_of(extent).ids(self.m)),
        )
    }
}

fn sorted_extents(table: &Table, found: HashSet<Bits>) -> Vec<ObjectSet> {
    let mut out: Vec<ObjectSet> = found
        .into_iter()
        .map(|b| ObjectSet::from_sorted(b.ids(table.n)))
        .collect();
    out.sort();
    out
}

/// All concept extents: `O` plus every intersection of columns, computed
/// to a fixpoint. Fails with a resource error past [`EXTENT_GUARD`].
pub fn oracle_extents(ctx: &Context) -> Result<Vec<ObjectSet>> {
    let table = Table::new(ctx);
    Ok(sorted_extents(&table, fixpoint(&table)?))
}

fn fixpoint(table: &Table) -> Result<HashSet<Bits>> {
    let top = Bits::full(table.n);
    let mut found = HashSet::from([top.clone()]);
    let mut work = vec![top];
    while let Some(e) = work.pop() {
        for col in &table.cols {
            let x = e.and(col);
            if !found.contains(&x) {
                if found.len() >= EXTENT_GUARD {
                    return Err(Error::Resource(format!(
                        "more than {EXTENT_GUARD} extents"
                    )));
                }
                found.insert(x.clone());
                work.push(x);
            }
        }
    }
    Ok(found)
}

/// All concept extents obtained by closing every one of the `2^m`
/// attribute subsets. Only for `m ≤ 15`.
pub fn exhaustive_extents(ctx: &Context) -> Result<Vec<ObjectSet>> {
    if ctx.m() > EXHAUSTIVE_MAX_M {
        return Err(Error::invalid(format!(
            "exhaustive closure needs m <= {EXHAUSTIVE_MAX_M}, got {}",
            ctx.m()
        )));
    }
    let table = Table::new(ctx);
    let mut found = HashSet::new();
    for mask in 0u32..(1 << table.m) {
        let mut intent = Bits::empty(table.m);
        for i in 0..table.m {
            if mask >> i & 1 == 1 {
                intent.set(i);
            }
        }
        found.insert(table.extent_of(&intent));
    }
    Ok(sorted_extents(&table, found))
}

/// Every formal concept, including `(∅, M)` when `obj(M) = ∅`, in
/// canonical order.
pub fn oracle_concepts(ctx: &Context) -> Result<Vec<Concept>> {
    let table = Table::new(ctx);
    let mut concepts: Vec<Concept> = fixpoint(&table)?.iter().map(|e| table.concept(e)).collect();
    concepts.sort_by(|a, b| (Reverse(a.support()), &a.intent).cmp(&(Reverse(b.support()), &b.intent)));
    Ok(concepts)
}

/// Covering pairs `(pred, succ)` by index into `concepts`: `ext(succ)` is a
/// maximal extent strictly inside `ext(pred)`.
pub fn oracle_hasse(concepts: &[Concept]) -> Vec<(u32, u32)> {
    let n = concepts
        .iter()
        .flat_map(|c| c.extent.last())
        .max()
        .map_or(0, |&g| g as usize + 1);
    let bits: Vec<Bits> = concepts
        .iter()
        .map(|c| {
            let mut b = Bits::empty(n);
            c.extent.iter().for_each(|&g| b.set(g as usize));
            b
        })
        .collect();
    let mut by_size: Vec<usize> = (0..concepts.len()).collect();
    by_size.sort_by_key(|&k| Reverse(bits[k].count()));

    let mut edges = Vec::new();
    for (p, pb) in bits.iter().enumerate() {
        let size = pb.count();
        let mut covers: Vec<usize> = Vec::new();
        for &d in &by_size {
            let db = &bits[d];
            if db.count() >= size || !db.subset_of(pb) {
                continue;
            }
            if covers.iter().all(|&c| !db.subset_of(&bits[c])) {
                covers.push(d);
            }
        }
        edges.extend(covers.into_iter().map(|d| (p as u32, d as u32)));
    }
    edges.sort_unstable();
    edges
}

/// Concepts and Hasse edges of the complete lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub concepts: Vec<Concept>,
    pub hasse: Vec<(u32, u32)>,
}

impl OracleResult {
    pub fn of(ctx: &Context) -> Result<Self> {
        let concepts = oracle_concepts(ctx)?;
        let hasse = oracle_hasse(&concepts);
        Ok(Self { concepts, hasse })
    }

    /// The lattice restricted to concepts with support at least
    /// `min_support`, with induced edges and ids renumbered.
    pub fn filtered(&self, min_support: usize) -> OracleResult {
        let keep: Vec<usize> = (0..self.concepts.len())
            .filter(|&k| self.concepts[k].support() >= min_support)
            .collect();
        let mut new_id = vec![u32::MAX; self.concepts.len()];
        for (new, &old) in keep.iter().enumerate() {
            new_id[old] = new as u32;
        }
        let hasse = self
            .hasse
            .iter()
            .filter(|&&(p, s)| new_id[p as usize] != u32::MAX && new_id[s as usize] != u32::MAX)
            .map(|&(p, s)| (new_id[p as usize], new_id[s as usize]))
            .collect();
        OracleResult {
            concepts: keep.iter().map(|&k| self.concepts[k].clone()).collect(),
            hasse,
        }
    }
}
