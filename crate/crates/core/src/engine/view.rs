use crate::context::{is_subset, AttrId, Context, ObjId, ObjectSet};

use super::ChildList;

/// Condensed adjacency lists of one parent concept.
///
/// `cnbr(a)` lists, for an object `a` of the parent extent, the indices of
/// the parent's children whose extent contains `a`; `content(i)` holds the
/// original attributes of child `i`. The root view is the raw context with
/// the top intent removed and one symbol per attribute.
///
/// Rows are stored in CSR form. The object-to-row map is sized to the
/// object universe and stamped per rebuild, so one view can be refilled for
/// every parent of a build without clearing.
#[derive(Debug, Clone, Default)]
pub struct CondensedView {
    row_of: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
    offsets: Vec<u32>,
    entries: Vec<u32>,
    cursor: Vec<u32>,
    content_offsets: Vec<u32>,
    content: Vec<AttrId>,
}

impl CondensedView {
    /// An empty view able to hold objects `0..n`.
    pub fn with_objects(n: usize) -> Self {
        Self {
            row_of: vec![0; n],
            stamp: vec![0; n],
            epoch: 0,
            offsets: vec![0],
            content_offsets: vec![0],
            ..Self::default()
        }
    }

    /// The view used by the top concept: `cnbr(a) = nbr(a) \ top_intent`
    /// and `content(i) = {i}`.
    pub fn root(ctx: &Context, top_intent: &[AttrId]) -> Self {
        let mut view = Self::with_objects(ctx.n());
        view.begin();
        let mut skip = vec![false; ctx.m()];
        for &i in top_intent {
            skip[i as usize] = true;
        }
        for g in 0..ctx.n() as ObjId {
            view.row_of[g as usize] = g;
            view.stamp[g as usize] = view.epoch;
            view.entries
                .extend(ctx.row(g).iter().copied().filter(|&i| !skip[i as usize]));
            view.offsets.push(view.entries.len() as u32);
        }
        for i in 0..ctx.m() as AttrId {
            view.content.push(i);
            view.content_offsets.push(view.content.len() as u32);
        }
        view
    }

    fn begin(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.offsets.clear();
        self.offsets.push(0);
        self.entries.clear();
        self.content_offsets.clear();
        self.content_offsets.push(0);
        self.content.clear();
    }

    fn ensure_objects(&mut self, n: usize) {
        if self.row_of.len() < n {
            self.row_of.resize(n, 0);
            self.stamp.resize(n, 0);
        }
    }

    /// Refills the view from `children` (in their current order).
    /// Costs `O(Σ_i |extent(child i)|)`.
    pub fn rebuild(&mut self, children: &ChildList) {
        self.begin();
        // First pass: assign rows and count entries per row into `cursor`.
        self.cursor.clear();
        for child in children.iter() {
            if let Some(&last) = child.extent.last() {
                self.ensure_objects(last as usize + 1);
            }
            for &a in child.extent {
                let a = a as usize;
                if self.stamp[a] != self.epoch {
                    self.stamp[a] = self.epoch;
                    self.row_of[a] = self.cursor.len() as u32;
                    self.cursor.push(0);
                }
                self.cursor[self.row_of[a] as usize] += 1;
            }
        }
        let mut total = 0u32;
        for row in 0..self.cursor.len() {
            let count = self.cursor[row];
            self.cursor[row] = total;
            total += count;
            self.offsets.push(total);
        }
        self.entries.resize(total as usize, 0);
        for (index, child) in children.iter().enumerate() {
            for &a in child.extent {
                let row = self.row_of[a as usize] as usize;
                self.entries[self.cursor[row] as usize] = index as u32;
                self.cursor[row] += 1;
            }
            self.content.extend_from_slice(child.class_attrs);
            self.content_offsets.push(self.content.len() as u32);
        }
    }

    /// Condensed adjacency of object `a`; empty for objects outside the view.
    pub fn cnbr(&self, a: ObjId) -> &[u32] {
        let a = a as usize;
        if a >= self.stamp.len() || self.stamp[a] != self.epoch {
            return &[];
        }
        let row = self.row_of[a] as usize;
        &self.entries[self.offsets[row] as usize..self.offsets[row + 1] as usize]
    }

    /// Original attributes represented by symbol `i`.
    pub fn content(&self, i: u32) -> &[AttrId] {
        let i = i as usize;
        &self.content[self.content_offsets[i] as usize..self.content_offsets[i + 1] as usize]
    }

    pub fn num_symbols(&self) -> usize {
        self.content_offsets.len() - 1
    }

    /// `Σ_a |cnbr(a)|` over the objects in the view.
    pub fn total_len(&self) -> usize {
        self.entries.len()
    }
}

/// Builds the condensed view of `children`, which must all be subsets of
/// `parent_extent`.
pub fn condense(children: &ChildList, parent_extent: &ObjectSet) -> CondensedView {
    debug_assert!(children.iter().all(|c| is_subset(c.extent, parent_extent)));
    let n = parent_extent.last().map_or(0, |&a| a as usize + 1);
    let mut view = CondensedView::with_objects(n);
    view.rebuild(children);
    view
}
