//! Comparison of every builder against the oracle.

use std::collections::BTreeMap;
use std::fmt;

use crate::builders::{complete_bottom, Algorithm, ConceptLattice, IcebergMode, LatticeBuilder};
use crate::context::{Concept, Context};
use crate::error::Result;
use crate::formats::canonical_serialization;
use crate::oracle::OracleResult;

/// The builders under test. [`Builders::standard`] wires in the real ones;
/// tests substitute broken implementations to check that mismatches are
/// caught.
#[derive(Clone, Copy)]
pub struct Builders {
    pub lattice: fn(&Context, Algorithm) -> ConceptLattice,
    pub enumerate: fn(&Context) -> Vec<Concept>,
    pub iceberg: fn(&Context, usize, IcebergMode) -> Result<ConceptLattice>,
}

impl Builders {
    pub fn standard() -> Self {
        Self {
            lattice: |ctx, alg| LatticeBuilder::new(ctx).algorithm(alg).build().0,
            enumerate: |ctx| LatticeBuilder::new(ctx).enumerate().0,
            iceberg: |ctx, theta, mode| Ok(LatticeBuilder::new(ctx).iceberg(theta, mode)?.0),
        }
    }
}

/// Which thresholds the iceberg builders are checked at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Thresholds {
    /// Only `θ = 1`.
    One,
    /// Every `θ ∈ 1..=max(n, 1)`.
    All,
}

/// The first difference found between a builder and the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub subject: String,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, self.detail)
    }
}

/// Result of checking one context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub concepts: usize,
    pub edges: usize,
    pub mismatch: Option<Mismatch>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

pub fn check_context(ctx: &Context) -> Result<CheckReport> {
    check_context_with(ctx, &Builders::standard(), Thresholds::All)
}

/// Checks both lattice builders (completed), their equivalence in natural
/// mode, the enumerator and both iceberg modes. Fails only if the oracle
/// itself cannot run.
pub fn check_context_with(ctx: &Context, builders: &Builders, thresholds: Thresholds) -> Result<CheckReport> {
    let oracle = OracleResult::of(ctx)?;
    let report = |mismatch| CheckReport {
        concepts: oracle.concepts.len(),
        edges: oracle.hasse.len(),
        mismatch,
    };
    Ok(report(first_mismatch(ctx, builders, thresholds, &oracle)))
}

fn first_mismatch(ctx: &Context, builders: &Builders, thresholds: Thresholds, oracle: &OracleResult) -> Option<Mismatch> {
    let fail = |subject: &str, detail: String| {
        Some(Mismatch {
            subject: subject.to_string(),
            detail,
        })
    };

    let mut natural = Vec::new();
    for alg in [Algorithm::Basic, Algorithm::Condensed] {
        let lat = (builders.lattice)(ctx, alg);
        let completed = complete_bottom(lat.clone(), ctx);
        if let Some(detail) = compare_lattice(&completed, &oracle.concepts, &oracle.hasse) {
            return fail(&format!("{} builder", alg.name()), detail);
        }
        natural.push(canonical_serialization(&lat, ctx));
    }
    if natural[0] != natural[1] {
        return fail(
            "builder equivalence",
            "basic and condensed serializations differ".to_string(),
        );
    }

    let expected: Vec<&Concept> = oracle
        .concepts
        .iter()
        .filter(|c| !c.extent.is_empty() || ctx.n() == 0)
        .collect();
    let emitted = (builders.enumerate)(ctx);
    if let Some(detail) = compare_multiset(&emitted, &expected) {
        return fail("enumerate", detail);
    }

    let thetas = match thresholds {
        Thresholds::One => 1..=1,
        Thresholds::All => 1..=ctx.n().max(1),
    };
    for theta in thetas {
        let want = oracle.filtered(theta);
        for mode in [IcebergMode::ExtentDict, IcebergMode::IntentDict] {
            let subject = format!("iceberg {mode:?} min_support={theta}");
            match (builders.iceberg)(ctx, theta, mode) {
                Err(e) => return fail(&subject, e.to_string()),
                Ok(lat) => {
                    if let Some(detail) = compare_lattice(&lat, &want.concepts, &want.hasse) {
                        return fail(&subject, detail);
                    }
                }
            }
        }
    }
    None
}

/// Compares a lattice (after canonicalization) with expected canonical
/// concepts and edges.
pub fn compare_lattice(lat: &ConceptLattice, concepts: &[Concept], edges: &[(u32, u32)]) -> Option<String> {
    if lat.top_id.is_some_and(|t| t as usize >= lat.concepts.len()) {
        return Some("top id out of range".to_string());
    }
    let canon = lat.canonical();
    let got: Vec<&Concept> = canon.concepts.iter().collect();
    let want: Vec<&Concept> = concepts.iter().collect();
    if let Some(detail) = compare_multiset(&canon.concepts, &want) {
        return Some(detail);
    }
    if got != want {
        return Some("concept order differs after canonicalization".to_string());
    }
    let describe = |(p, s): (u32, u32)| format!("{} -> {}", concepts[p as usize], concepts[s as usize]);
    if let Some(&e) = edges.iter().find(|e| canon.edges.binary_search(e).is_err()) {
        return Some(format!("missing edge {}", describe(e)));
    }
    if let Some(&e) = canon.edges.iter().find(|e| edges.binary_search(e).is_err()) {
        return Some(format!("unexpected edge {}", describe(e)));
    }
    if canon.edges.len() != edges.len() {
        return Some("duplicate edges".to_string());
    }
    None
}

fn compare_multiset(got: &[Concept], want: &[&Concept]) -> Option<String> {
    let mut counts: BTreeMap<&Concept, i64> = BTreeMap::new();
    for c in want {
        *counts.entry(c).or_default() -= 1;
    }
    for c in got {
        *counts.entry(c).or_default() += 1;
    }
    for (c, k) in counts {
        match k {
            0 => {}
            k if k < 0 => return Some(format!("missing concept {c}")),
            1.. if want.contains(&c) => return Some(format!("concept {c} emitted {} times", k + 1)),
            _ => return Some(format!("unexpected concept {c}")),
        }
    }
    None
}
