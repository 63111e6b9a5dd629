//! The shared BFS driver behind every builder.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::context::{intersect, union, AttrId, AttrSet, Concept, Context, ObjId, ObjectSet};
use crate::engine::{
    classify_child, is_closed_by_siblings, ChildEntry, ChildList, ClosureVerdict, CondensedView,
    ExtentDict, SproutScope, Sprouter,
};

use super::{Algorithm, AuditReport, BottomMode, BuildStats, ConceptLattice, IcebergMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Mode {
    Lattice(Algorithm),
    Enumerate,
    Iceberg { min_support: usize, mode: IcebergMode },
}

impl Mode {
    fn min_support(self) -> usize {
        match self {
            Mode::Iceberg { min_support, .. } => min_support,
            _ => 1,
        }
    }

    fn uses_view(self) -> bool {
        self != Mode::Lattice(Algorithm::Basic)
    }

    fn intent_keyed(self) -> bool {
        matches!(
            self,
            Mode::Iceberg {
                mode: IcebergMode::IntentDict,
                ..
            }
        )
    }
}

/// A confirmed concept waiting for its children to be classified.
struct Pending {
    id: u32,
    children: ChildList,
    /// Enumeration only: attributes of classes to the left of this
    /// concept's own class, accumulated along its discovery path.
    forbidden: Vec<AttrId>,
}

pub(super) struct Run<'c> {
    ctx: &'c Context,
    mode: Mode,
    audit: Option<AuditReport>,
    sprouter: Sprouter,
    view: CondensedView,
    dict: ExtentDict,
    intents: FxHashMap<Box<[AttrId]>, u32>,
    concepts: Vec<Concept>,
    edges: Vec<(u32, u32)>,
    queue: VecDeque<Pending>,
    stats: BuildStats,
}

impl<'c> Run<'c> {
    pub(super) fn new(ctx: &'c Context, mode: Mode, audit: bool) -> Self {
        let mut run = Self {
            ctx,
            mode,
            audit: audit.then(AuditReport::default),
            sprouter: Sprouter::new(),
            view: CondensedView::with_objects(ctx.n()),
            dict: ExtentDict::new(),
            intents: FxHashMap::default(),
            concepts: Vec::new(),
            edges: Vec::new(),
            queue: VecDeque::new(),
            stats: BuildStats::default(),
        };
        run.execute();
        run
    }

    pub(super) fn lattice(self) -> (ConceptLattice, BuildStats) {
        let mut edges = self.edges;
        // Parents are processed in id order, so only each parent's run needs sorting.
        for run in edges.chunk_by_mut(|a, b| a.0 == b.0) {
            run.sort_unstable();
        }
        debug_assert!(edges.is_sorted());
        let top_id = (!self.concepts.is_empty()).then_some(0);
        let lattice = ConceptLattice {
            concepts: self.concepts,
            edges,
            top_id,
            bottom_id: None,
            bottom_mode: BottomMode::Natural,
        };
        let mut stats = self.stats;
        stats.audit = self.audit;
        (lattice, stats)
    }

    pub(super) fn concepts(self) -> (Vec<Concept>, BuildStats) {
        let mut stats = self.stats;
        stats.audit = self.audit;
        (self.concepts, stats)
    }

    fn execute(&mut self) {
        let top = self.ctx.top_concept();
        if matches!(self.mode, Mode::Iceberg { .. }) && top.support() < self.mode.min_support() {
            return;
        }
        let (children, touches) = if self.mode.uses_view() {
            self.view = CondensedView::root(self.ctx, &top.intent);
            let out = self
                .sprouter
                .condensed(&self.view, &top.extent, SproutScope::All, top.intent.len());
            self.audit_touches_view(&top.extent, SproutScope::All, out.1);
            out
        } else {
            let out = self.sprouter.raw(self.ctx, &top.extent, &top.intent);
            self.audit_touches_raw(&top.extent, &top.intent, out.1);
            out
        };
        let Concept { extent, intent } = top;
        self.admit(extent, intent, None, children, touches, Vec::new());

        while let Some(node) = self.queue.pop_front() {
            self.process(node);
        }
    }

    /// Records a newly confirmed concept together with its (already
    /// computed) child list and queues it.
    fn admit(
        &mut self,
        extent: ObjectSet,
        intent: AttrSet,
        parent: Option<u32>,
        mut children: ChildList,
        touches: u64,
        forbidden: Vec<AttrId>,
    ) -> u32 {
        let id = self.concepts.len() as u32;
        if self.mode.intent_keyed() {
            self.intents.insert(intent.as_slice().into(), id);
        } else {
            self.dict.confirm(&extent, &intent, id);
            self.audit_dict(&extent);
        }
        if let Some(p) = parent {
            self.edges.push((p, id));
        }
        self.stats.per_concept_touches.push(touches);
        self.stats.discovered_by.push(parent);
        self.stats.total_touches += touches;

        let min_support = self.mode.min_support();
        if min_support > 1 {
            children.retain_min_support(min_support);
        }
        if !self.mode.intent_keyed() {
            for child in children.iter() {
                self.dict.offer(child.extent, &intent, child.class_attrs);
            }
            if self.audit.is_some() {
                for k in 0..children.len() {
                    self.audit_dict(children.get(k).extent);
                }
            }
        }
        self.concepts.push(Concept::new(extent, intent));
        self.queue.push_back(Pending {
            id,
            children,
            forbidden,
        });
        self.stats.queue_high_water = self.stats.queue_high_water.max(self.queue.len());
        id
    }

    fn process(&mut self, mut node: Pending) {
        // Borrowed out of the concept for the duration of the scan.
        let intent = std::mem::take(&mut self.concepts[node.id as usize].intent);
        node.children.sort();
        if self.mode.uses_view() {
            self.view.rebuild(&node.children);
        }
        let enumerate = self.mode == Mode::Enumerate;
        let mut forbidden = if enumerate {
            std::mem::take(&mut node.forbidden)
        } else {
            Vec::new()
        };

        for k in 0..node.children.len() {
            let child = node.children.get(k);
            self.stats.dict_lookups += 1;
            let verdict = self.classify(&child, &node.children, &intent);
            match verdict {
                ClosureVerdict::NotClosed => {
                    self.stats.eliminations += 1;
                    if let Some(audit) = self.audit.as_mut() {
                        let intent = AttrSet::from_sorted(union(&intent, child.class_attrs));
                        audit.eliminated.push(Concept::new(child.extent_set(), intent));
                    }
                }
                ClosureVerdict::ClosedExisting(id) => {
                    if !enumerate {
                        self.edges.push((node.id, id));
                    }
                }
                ClosureVerdict::ClosedNew => {
                    if enumerate && !is_canonical(self.ctx, child.extent, &forbidden) {
                        self.stats.canonicity_rejections += 1;
                    } else {
                        let child_intent = AttrSet::from_sorted(union(&intent, child.class_attrs));
                        let (grand, touches) = self.sprout_child(&child, k as u32, &child_intent);
                        let child_forbidden = if enumerate { forbidden.clone() } else { Vec::new() };
                        let parent = (!enumerate).then_some(node.id);
                        let id = self.admit(
                            child.extent_set(),
                            child_intent,
                            parent,
                            grand,
                            touches,
                            child_forbidden,
                        );
                        if enumerate {
                            self.stats.discovered_by[id as usize] = Some(node.id);
                        }
                    }
                }
            }
            if enumerate {
                forbidden = union(&forbidden, child.class_attrs);
            }
        }
        self.concepts[node.id as usize].intent = intent;
        self.sprouter.recycle(node.children);
    }

    fn classify(&mut self, child: &ChildEntry<'_>, siblings: &ChildList, parent_intent: &[AttrId]) -> ClosureVerdict {
        if self.mode.intent_keyed() {
            if !is_closed_by_siblings(child, siblings) {
                return ClosureVerdict::NotClosed;
            }
            let intent = union(parent_intent, child.class_attrs);
            return match self.intents.get(intent.as_slice()) {
                Some(&id) => ClosureVerdict::ClosedExisting(id),
                None => ClosureVerdict::ClosedNew,
            };
        }
        let verdict = classify_child(child, parent_intent.len(), &self.dict);
        if self.mode != Mode::Enumerate {
            if let Some(audit) = self.audit.as_mut() {
                audit.closure_checks += 1;
                if verdict.is_closed() != is_closed_by_siblings(child, siblings) {
                    audit.closure_disagreements += 1;
                }
            }
        }
        verdict
    }

    fn sprout_child(&mut self, child: &ChildEntry<'_>, index: u32, intent: &AttrSet) -> (ChildList, u64) {
        match self.mode {
            Mode::Lattice(Algorithm::Basic) => {
                let out = self.sprouter.raw(self.ctx, child.extent, intent);
                self.audit_touches_raw(child.extent, intent, out.1);
                out
            }
            mode => {
                let scope = if mode == Mode::Enumerate {
                    SproutScope::RightOf(index)
                } else {
                    SproutScope::Except(index)
                };
                let out = self
                    .sprouter
                    .condensed(&self.view, child.extent, scope, intent.len());
                self.audit_touches_view(child.extent, scope, out.1);
                out
            }
        }
    }

    fn audit_dict(&mut self, extent: &[ObjId]) {
        if let Some(audit) = self.audit.as_mut() {
            audit.dict_checks += 1;
            if !self.dict.dominated_at(self.ctx, extent) {
                audit.dict_violations += 1;
            }
        }
    }

    fn audit_touches_view(&mut self, extent: &[ObjId], scope: SproutScope, touches: u64) {
        let Some(audit) = self.audit.as_mut() else {
            return;
        };
        let expected: usize = extent
            .iter()
            .map(|&a| {
                let row = self.view.cnbr(a);
                match scope {
                    SproutScope::All => row.len(),
                    SproutScope::Except(s) => row.len() - row.iter().filter(|&&j| j == s).count(),
                    SproutScope::RightOf(s) => row.iter().filter(|&&j| j > s).count(),
                }
            })
            .sum();
        audit.touch_checks += 1;
        if expected as u64 != touches {
            audit.touch_mismatches += 1;
        }
    }

    fn audit_touches_raw(&mut self, extent: &[ObjId], intent: &[AttrId], touches: u64) {
        let Some(audit) = self.audit.as_mut() else {
            return;
        };
        let expected: usize = extent
            .iter()
            .map(|&a| {
                let row = self.ctx.row(a);
                row.len() - intersect(row, intent).len()
            })
            .sum();
        audit.touch_checks += 1;
        if expected as u64 != touches {
            audit.touch_mismatches += 1;
        }
    }
}

/// True if no forbidden attribute is shared by every object of `extent`,
/// i.e. the candidate was not reachable through a class further left.
fn is_canonical(ctx: &Context, extent: &[ObjId], forbidden: &[AttrId]) -> bool {
    let Some((&first, rest)) = extent.split_first() else {
        return true;
    };
    intersect(ctx.row(first), forbidden)
        .into_iter()
        .all(|f| !rest.iter().all(|&g| ctx.has(g, f)))
}
