use rustc_hash::FxHashMap;

use crate::context::{hash_ids, AttrId, Context, ObjId};

use super::{ChildList, CondensedView};

/// Which symbols of a view a sprout may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SproutScope {
    /// Every symbol (the root call).
    All,
    /// Every symbol except the scanned concept's own class index.
    Except(u32),
    /// Only symbols strictly greater than the given class index.
    RightOf(u32),
}

/// Adjacency that the sprout kernel scans: rows of symbols per object and
/// the attributes each symbol stands for.
trait Adjacency {
    fn neighbors(&self, a: ObjId) -> &[u32];
    fn num_symbols(&self) -> usize;
    fn extend_content(&self, symbol: u32, out: &mut Vec<AttrId>);
    fn content_len(&self, symbol: u32) -> usize;
}

impl Adjacency for CondensedView {
    fn neighbors(&self, a: ObjId) -> &[u32] {
        self.cnbr(a)
    }

    fn num_symbols(&self) -> usize {
        CondensedView::num_symbols(self)
    }

    fn extend_content(&self, symbol: u32, out: &mut Vec<AttrId>) {
        out.extend_from_slice(self.content(symbol));
    }

    fn content_len(&self, symbol: u32) -> usize {
        self.content(symbol).len()
    }
}

impl Adjacency for Context {
    fn neighbors(&self, a: ObjId) -> &[u32] {
        self.row(a)
    }

    fn num_symbols(&self) -> usize {
        self.m()
    }

    fn extend_content(&self, symbol: u32, out: &mut Vec<AttrId>) {
        out.push(symbol);
    }

    fn content_len(&self, _symbol: u32) -> usize {
        1
    }
}

#[derive(Debug, Clone, Copy)]
struct Group {
    representative: u32,
    head: u32,
    tail: u32,
}

const NIL: u32 = u32::MAX;

/// Reusable scratch state for computing child lists.
///
/// Per call it accumulates `C_i` (the scanned objects adjacent to symbol
/// `i`), then groups symbols with identical accumulated sets through a
/// call-local hash index. Buffers are kept between calls; only the touched
/// entries are cleared.
#[derive(Debug, Default)]
pub struct Sprouter {
    acc: Vec<Vec<ObjId>>,
    touched: Vec<u32>,
    index: FxHashMap<u64, u32>,
    groups: Vec<Group>,
    chain: Vec<u32>,
    next_symbol: Vec<u32>,
    mask: Vec<bool>,
    attrs: Vec<AttrId>,
    spare: Vec<ChildList>,
}

impl Sprouter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Hands back a list that is no longer needed so a later call can reuse
    /// its buffers.
    pub fn recycle(&mut self, list: ChildList) {
        self.spare.push(list);
    }

    /// Children of the concept whose extent is `objects`, computed in a
    /// parent's condensed view. Returns the list and the number of element
    /// touches (appends into the `C_i`).
    pub fn condensed(
        &mut self,
        view: &CondensedView,
        objects: &[ObjId],
        scope: SproutScope,
        parent_intent_size: usize,
    ) -> (ChildList, u64) {
        let touches = self.accumulate(view, objects, scope, false);
        (self.collect(view, parent_intent_size), touches)
    }

    /// Children computed from the raw rows of `ctx`, skipping the attributes
    /// of `intent`.
    pub fn raw(&mut self, ctx: &Context, objects: &[ObjId], intent: &[AttrId]) -> (ChildList, u64) {
        if self.mask.len() < ctx.m() {
            self.mask.resize(ctx.m(), false);
        }
        for &i in intent {
            self.mask[i as usize] = true;
        }
        let touches = self.accumulate(ctx, objects, SproutScope::All, true);
        for &i in intent {
            self.mask[i as usize] = false;
        }
        (self.collect(ctx, intent.len()), touches)
    }

    fn accumulate<A: Adjacency>(
        &mut self,
        adj: &A,
        objects: &[ObjId],
        scope: SproutScope,
        masked: bool,
    ) -> u64 {
        if self.acc.len() < adj.num_symbols() {
            self.acc.resize_with(adj.num_symbols(), Vec::new);
        }
        let mut touches = 0u64;
        for &a in objects {
            let row = adj.neighbors(a);
            let row = match scope {
                SproutScope::RightOf(s) => &row[row.partition_point(|&j| j <= s)..],
                _ => row,
            };
            for &j in row {
                if scope == SproutScope::Except(j) || (masked && self.mask[j as usize]) {
                    continue;
                }
                let bucket = &mut self.acc[j as usize];
                if bucket.is_empty() {
                    self.touched.push(j);
                }
                bucket.push(a);
                touches += 1;
            }
        }
        self.touched.sort_unstable();
        touches
    }

    fn bucket(&self, j: u32) -> &[ObjId] {
        &self.acc[j as usize]
    }

    fn collect<A: Adjacency>(&mut self, adj: &A, parent_intent_size: usize) -> ChildList {
        self.index.clear();
        self.groups.clear();
        self.chain.clear();
        self.next_symbol.clear();
        self.next_symbol.resize(self.touched.len(), NIL);

        for pos in 0..self.touched.len() {
            let extent = self.bucket(self.touched[pos]);
            let hash = hash_ids(extent);
            let mut cursor = self.index.get(&hash).copied().unwrap_or(NIL);
            let mut found = NIL;
            while cursor != NIL {
                let group = self.groups[cursor as usize];
                if self.bucket(self.touched[group.representative as usize]) == extent {
                    found = cursor;
                    break;
                }
                cursor = self.chain[cursor as usize];
            }
            if found == NIL {
                let id = self.groups.len() as u32;
                self.groups.push(Group {
                    representative: pos as u32,
                    head: pos as u32,
                    tail: pos as u32,
                });
                self.chain.push(self.index.insert(hash, id).unwrap_or(NIL));
            } else {
                let group = &mut self.groups[found as usize];
                self.next_symbol[group.tail as usize] = pos as u32;
                group.tail = pos as u32;
            }
        }

        let objects = self
            .groups
            .iter()
            .map(|g| self.bucket(self.touched[g.representative as usize]).len())
            .sum();
        let attrs = self.touched.iter().map(|&j| adj.content_len(j)).sum();
        let mut out = match self.spare.pop() {
            Some(mut list) => {
                list.reset(parent_intent_size);
                list.reserve(self.groups.len(), objects, attrs);
                list
            }
            None => ChildList::with_capacity(parent_intent_size, self.groups.len(), objects, attrs),
        };
        for group in &self.groups {
            self.attrs.clear();
            let mut pos = group.head;
            while pos != NIL {
                adj.extend_content(self.touched[pos as usize], &mut self.attrs);
                pos = self.next_symbol[pos as usize];
            }
            self.attrs.sort_unstable();
            out.push(self.bucket(self.touched[group.representative as usize]), &self.attrs);
        }

        for &j in &self.touched {
            self.acc[j as usize].clear();
        }
        self.touched.clear();
        out
    }
}

/// Computes the child list of the concept with extent `parent_extent` in a
/// condensed view, leaving out `excluded_index` (the concept's own class in
/// its parent's view). Candidate intent sizes are relative to an empty base;
/// use [`ChildList::set_parent_intent_size`] to set the real one.
pub fn sprout(
    parent_extent: &[ObjId],
    excluded_index: Option<u32>,
    view: &CondensedView,
) -> ChildList {
    let scope = excluded_index.map_or(SproutScope::All, SproutScope::Except);
    Sprouter::new().condensed(view, parent_extent, scope, 0).0
}

/// Like [`sprout`] but only symbols to the right of `index` are used.
pub fn sprout_right_of(parent_extent: &[ObjId], index: u32, view: &CondensedView) -> ChildList {
    Sprouter::new()
        .condensed(view, parent_extent, SproutScope::RightOf(index), 0)
        .0
}

/// `Child(extent, intent)` computed from the raw context. `intent` must be
/// the intent that belongs to `extent`.
pub fn children_of(ctx: &Context, extent: &[ObjId], intent: &[AttrId]) -> ChildList {
    Sprouter::new().raw(ctx, extent, intent).0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Context {
        Context::from_rows(4, vec![vec![0, 2], vec![0, 1, 3], vec![0, 2], vec![1, 3]]).unwrap()
    }

    fn pairs(list: &ChildList) -> Vec<(Vec<u32>, Vec<u32>)> {
        let mut out: Vec<_> = list
            .iter()
            .map(|c| (c.extent.to_vec(), c.class_attrs.to_vec()))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn root_children_group_equal_columns() {
        let ctx = square();
        let list = children_of(&ctx, &[0, 1, 2, 3], &[]);
        assert_eq!(
            pairs(&list),
            vec![
                (vec![0, 1, 2], vec![0]),
                (vec![0, 2], vec![2]),
                (vec![1, 3], vec![1, 3]),
            ]
        );
    }

    #[test]
    fn condensed_and_raw_agree() {
        let ctx = square();
        let view = CondensedView::root(&ctx, &[]);
        let mut root = sprout(&[0, 1, 2, 3], None, &view);
        root.sort();
        let mut child_view = CondensedView::with_objects(ctx.n());
        child_view.rebuild(&root);
        // (abc, 1) sits at index 0 after sorting.
        let first = root.get(0);
        let condensed = sprout(first.extent, Some(0), &child_view);
        let raw = children_of(&ctx, first.extent, first.class_attrs);
        assert_eq!(pairs(&condensed), pairs(&raw));
    }

    #[test]
    fn singleton_without_remaining_symbols() {
        let mut list = ChildList::new(0);
        list.push(&[3], &[5]);
        let mut view = CondensedView::with_objects(4);
        view.rebuild(&list);
        assert!(sprout(&[3], Some(0), &view).is_empty());
    }

    #[test]
    fn touches_count_appends() {
        let ctx = square();
        let (_, touches) = Sprouter::new().raw(&ctx, &[0, 1, 2, 3], &[]);
        assert_eq!(touches as usize, ctx.incidence_count());
        let (_, touches) = Sprouter::new().raw(&ctx, &[0, 1, 2], &[0]);
        assert_eq!(touches, 4);
    }
}
