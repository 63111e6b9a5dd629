use std::cmp::Reverse;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::context::{is_subset, Concept, Context};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BottomMode {
    /// Only what the BFS produces; `(∅, M)` is absent.
    Natural,
    /// A unique minimum is present (appended if needed).
    Completed,
}

impl BottomMode {
    pub fn name(self) -> &'static str {
        match self {
            BottomMode::Natural => "natural",
            BottomMode::Completed => "completed",
        }
    }
}

/// Concepts plus the Hasse diagram, with edges pointing from predecessor
/// to successor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptLattice {
    pub concepts: Vec<Concept>,
    /// Sorted `(pred_id, succ_id)` pairs.
    pub edges: Vec<(u32, u32)>,
    pub top_id: Option<u32>,
    pub bottom_id: Option<u32>,
    pub bottom_mode: BottomMode,
}

impl ConceptLattice {
    pub fn empty() -> Self {
        Self {
            concepts: Vec::new(),
            edges: Vec::new(),
            top_id: None,
            bottom_id: None,
            bottom_mode: BottomMode::Natural,
        }
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn successors(&self, id: u32) -> impl Iterator<Item = u32> + '_ {
        let start = self.edges.partition_point(|&(p, _)| p < id);
        self.edges[start..]
            .iter()
            .take_while(move |&&(p, _)| p == id)
            .map(|&(_, s)| s)
    }

    /// Re-indexes concepts by (descending support, ascending intent) and
    /// sorts edges, so equal lattices compare equal field by field.
    pub fn canonical(&self) -> ConceptLattice {
        let mut order: Vec<usize> = (0..self.concepts.len()).collect();
        order.sort_by(|&a, &b| {
            let (ca, cb) = (&self.concepts[a], &self.concepts[b]);
            (Reverse(ca.support()), &ca.intent).cmp(&(Reverse(cb.support()), &cb.intent))
        });
        let mut rank = vec![0u32; order.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new as u32;
        }
        let mut edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .map(|&(p, s)| (rank[p as usize], rank[s as usize]))
            .collect();
        edges.sort_unstable();
        ConceptLattice {
            concepts: order.iter().map(|&i| self.concepts[i].clone()).collect(),
            edges,
            top_id: self.top_id.map(|t| rank[t as usize]),
            bottom_id: self.bottom_id.map(|b| rank[b as usize]),
            bottom_mode: self.bottom_mode,
        }
    }

    /// Checks the lattice invariants against `ctx`: valid concepts, distinct
    /// extents and intents, and edges that are exactly covering pairs.
    /// Returns the first violation found.
    pub fn validate(&self, ctx: &Context) -> Result<(), String> {
        let mut extents = HashSet::new();
        let mut intents = HashSet::new();
        for (id, c) in self.concepts.iter().enumerate() {
            if !c.is_valid_in(ctx) {
                return Err(format!("concept {id} {c} is not closed"));
            }
            if !extents.insert(&c.extent) || !intents.insert(&c.intent) {
                return Err(format!("concept {id} {c} is duplicated"));
            }
        }
        let n = self.concepts.len() as u32;
        for &(p, s) in &self.edges {
            if p >= n || s >= n {
                return Err(format!("edge ({p}, {s}) out of range"));
            }
            let (pe, se) = (&self.concepts[p as usize].extent, &self.concepts[s as usize].extent);
            if !(se.len() < pe.len() && is_subset(se, pe)) {
                return Err(format!("edge ({p}, {s}) is not a strict extent inclusion"));
            }
            if let Some(mid) = self.concepts.iter().position(|e| {
                se.len() < e.extent.len()
                    && e.extent.len() < pe.len()
                    && is_subset(se, &e.extent)
                    && is_subset(&e.extent, pe)
            }) {
                return Err(format!("edge ({p}, {s}) skips concept {mid}"));
            }
        }
        if self.bottom_mode == BottomMode::Completed {
            let minima = (0..n).filter(|&id| self.successors(id).next().is_none()).count();
            if minima != 1 {
                return Err(format!("completed lattice has {minima} minimal elements"));
            }
        }
        Ok(())
    }
}
