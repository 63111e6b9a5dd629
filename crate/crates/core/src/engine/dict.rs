use hashbrown::HashTable;

use crate::context::{hash_ids, is_subset, union_into, AttrId, AttrSet, Concept, Context, ObjId, ObjectSet};

use super::{ChildEntry, ChildList};

/// What the dictionary knows about one extent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DictEntry<'a> {
    /// Largest intent registered for the extent so far. Always a subset of
    /// `attr(extent)`; equal to it once confirmed.
    pub best_intent: &'a [AttrId],
    pub confirmed: bool,
    pub concept_id: Option<u32>,
}

#[derive(Debug, Clone, Copy)]
struct Slot {
    hash: u64,
    ext_start: usize,
    intent_start: usize,
    ext_len: u32,
    intent_len: u32,
    /// Concept id once confirmed.
    id: Option<u32>,
}

impl Slot {
    fn extent(&self) -> std::ops::Range<usize> {
        self.ext_start..self.ext_start + self.ext_len as usize
    }

    fn intent(&self) -> std::ops::Range<usize> {
        self.intent_start..self.intent_start + self.intent_len as usize
    }
}

/// Global dictionary from canonical extents to their best-known intents.
///
/// Extents enter either tentatively, when a confirmed concept's children are
/// registered, or by confirmation. Tentative intents let the decreasing-size
/// closure test see grandchildren of earlier siblings.
///
/// Keys and intents live in two append-only arenas; a replaced intent stays
/// behind as garbage.
#[derive(Debug, Default, Clone)]
pub struct ExtentDict {
    table: HashTable<Slot>,
    objects: Vec<ObjId>,
    attrs: Vec<AttrId>,
}

/// Outcome of testing a candidate child.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureVerdict {
    ClosedNew,
    ClosedExisting(u32),
    NotClosed,
}

impl ClosureVerdict {
    pub fn is_closed(self) -> bool {
        !matches!(self, ClosureVerdict::NotClosed)
    }
}

impl ExtentDict {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    fn find(&self, hash: u64, extent: &[ObjId]) -> Option<&Slot> {
        let objects = &self.objects;
        self.table
            .find(hash, |s| s.hash == hash && objects[s.extent()] == *extent)
    }

    fn entry(&self, slot: &Slot) -> DictEntry<'_> {
        DictEntry {
            best_intent: &self.attrs[slot.intent()],
            confirmed: slot.id.is_some(),
            concept_id: slot.id,
        }
    }

    pub fn get(&self, extent: &[ObjId]) -> Option<DictEntry<'_>> {
        self.find(hash_ids(extent), extent).map(|s| self.entry(s))
    }

    /// Offers `parent_intent ∪ class_attrs` as an intent for `extent`,
    /// keeping the larger one (ties keep the existing entry). Returns true
    /// if the entry changed.
    pub fn offer(&mut self, extent: &[ObjId], parent_intent: &[AttrId], class_attrs: &[AttrId]) -> bool {
        let size = parent_intent.len() + class_attrs.len();
        let hash = hash_ids(extent);
        let intent_start = self.attrs.len();
        let objects = &self.objects;
        let found = self
            .table
            .find_mut(hash, |s| s.hash == hash && objects[s.extent()] == *extent);
        match found {
            Some(slot) => {
                if size <= slot.intent_len as usize {
                    return false;
                }
                debug_assert!(slot.id.is_none(), "confirmed intent is maximal");
                slot.intent_start = intent_start;
                slot.intent_len = size as u32;
            }
            None => {
                let slot = Slot {
                    hash,
                    ext_start: self.objects.len(),
                    intent_start,
                    ext_len: extent.len() as u32,
                    intent_len: size as u32,
                    id: None,
                };
                self.objects.extend_from_slice(extent);
                self.table.insert_unique(hash, slot, |s| s.hash);
            }
        }
        union_into(parent_intent, class_attrs, &mut self.attrs);
        true
    }

    /// Marks `extent` as the concept `id` with the given (closed) intent.
    pub fn confirm(&mut self, extent: &[ObjId], intent: &[AttrId], id: u32) {
        let hash = hash_ids(extent);
        let objects = &self.objects;
        let found = self
            .table
            .find_mut(hash, |s| s.hash == hash && objects[s.extent()] == *extent);
        match found {
            Some(slot) => {
                debug_assert!(slot.id.is_none());
                debug_assert!(slot.intent_len as usize <= intent.len());
                slot.id = Some(id);
                if slot.intent_len as usize == intent.len() {
                    // Same size and both inside attr(extent), so same set.
                    return;
                }
                slot.intent_start = self.attrs.len();
                slot.intent_len = intent.len() as u32;
            }
            None => {
                let slot = Slot {
                    hash,
                    ext_start: self.objects.len(),
                    intent_start: self.attrs.len(),
                    ext_len: extent.len() as u32,
                    intent_len: intent.len() as u32,
                    id: Some(id),
                };
                self.objects.extend_from_slice(extent);
                self.table.insert_unique(hash, slot, |s| s.hash);
            }
        }
        self.attrs.extend_from_slice(intent);
    }

    /// Checks `best_intent ⊆ attr(extent)` for one entry, and equality for
    /// confirmed entries.
    pub fn dominated_at(&self, ctx: &Context, extent: &[ObjId]) -> bool {
        let Some(entry) = self.get(extent) else {
            return true;
        };
        let Ok(closed) = ctx.derive_attr(extent) else {
            return false;
        };
        if entry.confirmed {
            entry.best_intent == closed.as_slice()
        } else {
            is_subset(entry.best_intent, &closed)
        }
    }

    /// Checks [`Self::dominated_at`] over every entry.
    pub fn dominated(&self, ctx: &Context) -> bool {
        self.table
            .iter()
            .all(|s| self.dominated_at(ctx, &self.objects[s.extent()]))
    }

    /// Confirmed concepts ordered by concept id.
    pub fn into_concepts(self) -> Vec<Concept> {
        let mut confirmed: Vec<(u32, Concept)> = self
            .table
            .iter()
            .filter_map(|s| {
                s.id.map(|id| {
                    let extent = ObjectSet::from_sorted(self.objects[s.extent()].to_vec());
                    let intent = AttrSet::from_sorted(self.attrs[s.intent()].to_vec());
                    (id, Concept::new(extent, intent))
                })
            })
            .collect();
        confirmed.sort_unstable_by_key(|(id, _)| *id);
        confirmed.into_iter().map(|(_, c)| c).collect()
    }
}

/// Decides closedness and existence of `XS` from the dictionary alone.
///
/// Children must be classified in decreasing extent size, and every
/// confirmed concept must have had its children registered; then any
/// strictly larger sibling that witnesses non-closedness has already put an
/// intent larger than `|XS|` under `obj(XS)`.
pub fn classify_child(child: &ChildEntry<'_>, parent_intent_size: usize, dict: &ExtentDict) -> ClosureVerdict {
    let size = parent_intent_size + child.class_attrs.len();
    match dict.get(child.extent) {
        None => ClosureVerdict::ClosedNew,
        Some(entry) if entry.best_intent.len() > size => ClosureVerdict::NotClosed,
        Some(DictEntry {
            concept_id: Some(id), ..
        }) => ClosureVerdict::ClosedExisting(id),
        Some(_) => ClosureVerdict::ClosedNew,
    }
}

/// Registers the children of a just-confirmed concept with tentative
/// intents `parent_intent ∪ S`.
pub fn register_children(dict: &mut ExtentDict, children: &ChildList, parent_intent: &[AttrId]) {
    for child in children.iter() {
        dict.offer(child.extent, parent_intent, child.class_attrs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry<'a>(extent: &'a [u32], class: &'a [u32]) -> ChildEntry<'a> {
        ChildEntry {
            extent,
            class_attrs: class,
            candidate_intent_size: class.len(),
        }
    }

    #[test]
    fn absent_extent_is_new() {
        let dict = ExtentDict::new();
        assert_eq!(classify_child(&entry(&[1], &[3]), 2, &dict), ClosureVerdict::ClosedNew);
    }

    #[test]
    fn larger_registered_intent_rejects() {
        let mut dict = ExtentDict::new();
        dict.offer(&[1, 2], &[0, 5], &[3]);
        assert_eq!(classify_child(&entry(&[1, 2], &[3]), 0, &dict), ClosureVerdict::NotClosed);
        assert_eq!(classify_child(&entry(&[1, 2], &[3]), 2, &dict), ClosureVerdict::ClosedNew);
        dict.confirm(&[1, 2], &[0, 3, 5], 7);
        assert_eq!(
            classify_child(&entry(&[1, 2], &[0, 5]), 1, &dict),
            ClosureVerdict::ClosedExisting(7)
        );
    }

    #[test]
    fn offer_keeps_larger_and_ties_keep_existing() {
        let mut dict = ExtentDict::new();
        assert!(dict.offer(&[4], &[0], &[1]));
        assert!(!dict.offer(&[4], &[2], &[3]));
        assert_eq!(dict.get(&[4]).unwrap().best_intent, &[0, 1]);
        assert!(dict.offer(&[4], &[0, 2], &[3]));
        assert_eq!(dict.get(&[4]).unwrap().best_intent, &[0, 2, 3]);
        assert!(!dict.get(&[4]).unwrap().confirmed);
    }

    #[test]
    fn into_concepts_orders_by_id() {
        let mut dict = ExtentDict::new();
        dict.confirm(&[0], &[1], 1);
        dict.confirm(&[0, 1], &[], 0);
        dict.offer(&[1], &[], &[2]);
        let concepts = dict.into_concepts();
        assert_eq!(concepts.len(), 2);
        assert_eq!(concepts[0].extent.as_slice(), &[0, 1]);
    }
}
