//! Lattice builders driving the engine.
//!
//! All builders process concepts in strict FIFO order starting from the top
//! concept, and assign concept ids in confirmation order. The lattice they
//! produce is "natural": it holds every concept with a nonempty extent (plus
//! the top), but not `(∅, M)`; see [`complete_bottom`].

mod bfs;
mod bottom;
mod lattice;

use serde::{Deserialize, Serialize};

use crate::context::{Concept, Context};
use crate::error::{Error, Result};

pub use bottom::complete_bottom;
pub use lattice::{BottomMode, ConceptLattice};

/// How child lists of newly confirmed concepts are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Sprout over raw rows, skipping the current intent.
    Basic,
    /// Sprout over the parent's condensed adjacency lists.
    Condensed,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Basic => "basic",
            Algorithm::Condensed => "condensed",
        }
    }
}

/// Existence/closure strategy for iceberg lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IcebergMode {
    /// Extent dictionary with the decreasing-size closure test.
    ExtentDict,
    /// Intent dictionary for existence, sibling subset testing for closure.
    IntentDict,
}

/// Self-checks performed while building; enabled by [`LatticeBuilder::audit`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    /// Dictionary entries re-verified against `attr(extent)` after mutation.
    pub dict_checks: u64,
    pub dict_violations: u64,
    /// Children whose dictionary verdict was compared with subset testing.
    pub closure_checks: u64,
    pub closure_disagreements: u64,
    /// Sprouts whose touch counter was compared with the view size formula.
    pub touch_checks: u64,
    pub touch_mismatches: u64,
    /// Every candidate `(obj(XS), XS)` rejected as not closed, in order.
    pub eliminated: Vec<Concept>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.dict_violations == 0 && self.closure_disagreements == 0 && self.touch_mismatches == 0
    }
}

/// Work counters of one build.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildStats {
    /// Touches of the sprout that produced each concept's child list, by id.
    pub per_concept_touches: Vec<u64>,
    /// The concept whose view was used for each concept's sprout (`None` for the top).
    pub discovered_by: Vec<Option<u32>>,
    pub total_touches: u64,
    pub dict_lookups: u64,
    pub eliminations: u64,
    pub queue_high_water: usize,
    /// Enumeration only: candidates dropped because a left class contains them.
    pub canonicity_rejections: u64,
    pub audit: Option<AuditReport>,
}

/// Builder entry point with options. The free functions below cover the
/// common cases.
#[derive(Debug, Clone)]
pub struct LatticeBuilder<'c> {
    ctx: &'c Context,
    algorithm: Algorithm,
    audit: bool,
}

impl<'c> LatticeBuilder<'c> {
    pub fn new(ctx: &'c Context) -> Self {
        Self {
            ctx,
            algorithm: Algorithm::Condensed,
            audit: false,
        }
    }

    pub fn algorithm(mut self, algorithm: Algorithm) -> Self {
        self.algorithm = algorithm;
        self
    }

    /// Re-verify dictionary entries, closure verdicts and touch counters
    /// during the build. Slow; meant for tests.
    pub fn audit(mut self, audit: bool) -> Self {
        self.audit = audit;
        self
    }

    pub fn build(&self) -> (ConceptLattice, BuildStats) {
        bfs::Run::new(self.ctx, bfs::Mode::Lattice(self.algorithm), self.audit).lattice()
    }

    pub fn enumerate(&self) -> (Vec<Concept>, BuildStats) {
        bfs::Run::new(self.ctx, bfs::Mode::Enumerate, self.audit).concepts()
    }

    pub fn iceberg(&self, min_support: usize, mode: IcebergMode) -> Result<(ConceptLattice, BuildStats)> {
        if min_support < 1 {
            return Err(Error::invalid("min_support must be at least 1"));
        }
        let mode = bfs::Mode::Iceberg { min_support, mode };
        Ok(bfs::Run::new(self.ctx, mode, self.audit).lattice())
    }
}

/// Two-level BFS construction over condensed adjacency lists.
pub fn build_lattice_two_level(ctx: &Context) -> (ConceptLattice, BuildStats) {
    LatticeBuilder::new(ctx).algorithm(Algorithm::Condensed).build()
}

/// BFS construction sprouting every concept over the raw rows.
pub fn build_lattice_bfs_basic(ctx: &Context) -> (ConceptLattice, BuildStats) {
    LatticeBuilder::new(ctx).algorithm(Algorithm::Basic).build()
}

/// Every concept with a nonempty extent (and the top), each exactly once,
/// without the order relation.
pub fn enumerate_concepts(ctx: &Context) -> Vec<Concept> {
    LatticeBuilder::new(ctx).enumerate().0
}

/// The lattice of concepts whose support is at least `min_support`.
pub fn build_iceberg(ctx: &Context, min_support: usize, mode: IcebergMode) -> Result<ConceptLattice> {
    Ok(LatticeBuilder::new(ctx).iceberg(min_support, mode)?.0)
}
