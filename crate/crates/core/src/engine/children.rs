use std::cmp::Reverse;

use crate::context::{AttrId, AttrSet, ObjId, ObjectSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Slot {
    ext_start: u32,
    ext_len: u32,
    attr_start: u32,
    attr_len: u32,
}

/// The candidate children of one parent concept.
///
/// Extents and class attributes are stored in two flat buffers; entries
/// index into them, so sorting and filtering only move small slots.
#[derive(Debug, Clone, Default)]
pub struct ChildList {
    slots: Vec<Slot>,
    objects: Vec<ObjId>,
    attrs: Vec<AttrId>,
    parent_intent_size: usize,
}

/// A borrowed candidate child `(obj(XS), S)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChildEntry<'a> {
    pub extent: &'a [ObjId],
    /// The class `S`, in original attribute ids. Disjoint from the parent intent.
    pub class_attrs: &'a [AttrId],
    /// `|X| + |S|`.
    pub candidate_intent_size: usize,
}

impl ChildEntry<'_> {
    pub fn extent_set(&self) -> ObjectSet {
        ObjectSet::from_sorted(self.extent.to_vec())
    }

    pub fn class_set(&self) -> AttrSet {
        AttrSet::from_sorted(self.class_attrs.to_vec())
    }
}

impl ChildList {
    pub fn new(parent_intent_size: usize) -> Self {
        Self {
            parent_intent_size,
            ..Self::default()
        }
    }

    /// An empty list with room for `children` entries holding `objects`
    /// extent elements and `attrs` class attributes in total.
    pub fn with_capacity(parent_intent_size: usize, children: usize, objects: usize, attrs: usize) -> Self {
        Self {
            slots: Vec::with_capacity(children),
            objects: Vec::with_capacity(objects),
            attrs: Vec::with_capacity(attrs),
            parent_intent_size,
        }
    }

    /// Empties the list, keeping its buffers.
    pub fn reset(&mut self, parent_intent_size: usize) {
        self.slots.clear();
        self.objects.clear();
        self.attrs.clear();
        self.parent_intent_size = parent_intent_size;
    }

    pub(crate) fn reserve(&mut self, children: usize, objects: usize, attrs: usize) {
        self.slots.reserve(children);
        self.objects.reserve(objects);
        self.attrs.reserve(attrs);
    }

    pub fn parent_intent_size(&self) -> usize {
        self.parent_intent_size
    }

    pub fn set_parent_intent_size(&mut self, size: usize) {
        self.parent_intent_size = size;
    }

    /// Appends a child. `extent` and `class_attrs` must be strictly increasing.
    pub fn push(&mut self, extent: &[ObjId], class_attrs: &[AttrId]) {
        let slot = Slot {
            ext_start: self.objects.len() as u32,
            ext_len: extent.len() as u32,
            attr_start: self.attrs.len() as u32,
            attr_len: class_attrs.len() as u32,
        };
        self.objects.extend_from_slice(extent);
        self.attrs.extend_from_slice(class_attrs);
        self.slots.push(slot);
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn get(&self, index: usize) -> ChildEntry<'_> {
        self.entry(self.slots[index])
    }

    fn entry(&self, slot: Slot) -> ChildEntry<'_> {
        let ext = slot.ext_start as usize..(slot.ext_start + slot.ext_len) as usize;
        let attrs = slot.attr_start as usize..(slot.attr_start + slot.attr_len) as usize;
        ChildEntry {
            extent: &self.objects[ext],
            class_attrs: &self.attrs[attrs],
            candidate_intent_size: self.parent_intent_size + slot.attr_len as usize,
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = ChildEntry<'_>> + '_ {
        self.slots.iter().map(|&slot| self.entry(slot))
    }

    /// `Σ_i |extent(child i)|`.
    pub fn total_extent_len(&self) -> usize {
        self.slots.iter().map(|s| s.ext_len as usize).sum()
    }

    /// Orders children by descending extent size, ties by the smallest
    /// class attribute. Classes are disjoint, so keys are unique.
    pub fn sort(&mut self) {
        let attrs = &self.attrs;
        self.slots
            .sort_unstable_by_key(|s| (Reverse(s.ext_len), attrs[s.attr_start as usize]));
    }

    /// Drops children whose extent is smaller than `min_support`. The flat
    /// buffers keep the removed data; only the slots go.
    pub fn retain_min_support(&mut self, min_support: usize) {
        self.slots.retain(|s| s.ext_len as usize >= min_support);
    }
}

/// Sorts by descending extent size, then ascending smallest class attribute.
pub fn sort_children(mut children: ChildList) -> ChildList {
    children.sort();
    children
}
