//! Formal contexts, derivation operators and closure predicates.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ObjId = u32;
pub type AttrId = u32;

macro_rules! id_set {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(Vec<u32>);

        impl $name {
            pub fn new() -> Self {
                Self(Vec::new())
            }

            /// Builds a set from arbitrary ids, sorting and removing duplicates.
            pub fn from_ids(ids: impl IntoIterator<Item = u32>) -> Self {
                let mut ids: Vec<u32> = ids.into_iter().collect();
                ids.sort_unstable();
                ids.dedup();
                Self(ids)
            }

            /// Wraps an already strictly increasing sequence.
            pub fn from_sorted(ids: Vec<u32>) -> Self {
                debug_assert!(is_strictly_increasing(&ids));
                Self(ids)
            }

            pub fn as_slice(&self) -> &[u32] {
                &self.0
            }

            pub fn into_vec(self) -> Vec<u32> {
                self.0
            }

            pub fn is_subset(&self, other: &Self) -> bool {
                is_subset(&self.0, &other.0)
            }
        }

        impl Deref for $name {
            type Target = [u32];

            fn deref(&self) -> &[u32] {
                &self.0
            }
        }

        impl From<Vec<u32>> for $name {
            fn from(ids: Vec<u32>) -> Self {
                Self::from_ids(ids)
            }
        }

        impl<const N: usize> From<[u32; N]> for $name {
            fn from(ids: [u32; N]) -> Self {
                Self::from_ids(ids)
            }
        }

        impl FromIterator<u32> for $name {
            fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
                Self::from_ids(iter)
            }
        }
    };
}

id_set!(
    /// A canonical (strictly increasing) set of object ids.
    ObjectSet
);
id_set!(
    /// A canonical (strictly increasing) set of attribute ids.
    AttrSet
);

/// A formal concept: an extent and an intent that derive each other.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Concept {
    pub extent: ObjectSet,
    pub intent: AttrSet,
}

impl Concept {
    pub fn new(extent: ObjectSet, intent: AttrSet) -> Self {
        Self { extent, intent }
    }

    pub fn support(&self) -> usize {
        self.extent.len()
    }

    /// True iff `attr(extent) = intent` and `obj(intent) = extent` in `ctx`.
    pub fn is_valid_in(&self, ctx: &Context) -> bool {
        match (ctx.derive_attr(&self.extent), ctx.derive_obj(&self.intent)) {
            (Ok(intent), Ok(extent)) => intent == self.intent && extent == self.extent,
            _ => false,
        }
    }
}

/// An immutable bipartite incidence between objects and attributes.
///
/// `rows[g]` lists the attributes of object `g` and `cols[i]` the objects
/// having attribute `i`; both are strictly increasing and exact transposes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    object_names: Vec<String>,
    attr_names: Vec<String>,
    rows: Vec<Vec<AttrId>>,
    cols: Vec<Vec<ObjId>>,
}

impl Context {
    /// Builds a context from per-object attribute lists. Rows may be given in
    /// any order and with repeats; they are canonicalized.
    pub fn new(
        object_names: Vec<String>,
        attr_names: Vec<String>,
        rows: Vec<Vec<AttrId>>,
    ) -> Result<Self> {
        if object_names.len() != rows.len() {
            return Err(Error::invalid(format!(
                "{} object names for {} rows",
                object_names.len(),
                rows.len()
            )));
        }
        let m = attr_names.len();
        let mut cols = vec![Vec::new(); m];
        let mut canonical = Vec::with_capacity(rows.len());
        for (g, mut row) in rows.into_iter().enumerate() {
            row.sort_unstable();
            row.dedup();
            if let Some(&i) = row.last() {
                if i as usize >= m {
                    return Err(Error::invalid(format!(
                        "object {g} references attribute {i}, but m = {m}"
                    )));
                }
            }
            for &i in &row {
                cols[i as usize].push(g as ObjId);
            }
            canonical.push(row);
        }
        Ok(Self {
            object_names,
            attr_names,
            rows: canonical,
            cols,
        })
    }

    /// A context with generated names `g<k>` / `m<k>`.
    pub fn from_rows(m: usize, rows: Vec<Vec<AttrId>>) -> Result<Self> {
        let objects = (0..rows.len()).map(|g| format!("g{g}")).collect();
        let attrs = (0..m).map(|i| format!("m{i}")).collect();
        Self::new(objects, attrs, rows)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.cols.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.object_names
    }

    pub fn attr_names(&self) -> &[String] {
        &self.attr_names
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.object_names
            .iter()
            .position(|n| n == name)
            .map(|g| g as ObjId)
    }

    pub fn attr_id(&self, name: &str) -> Option<AttrId> {
        self.attr_names
            .iter()
            .position(|n| n == name)
            .map(|i| i as AttrId)
    }

    /// `nbr(g)`: the attributes of object `g`.
    pub fn row(&self, g: ObjId) -> &[AttrId] {
        &self.rows[g as usize]
    }

    /// `nbr(i)`: the objects having attribute `i`.
    pub fn col(&self, i: AttrId) -> &[ObjId] {
        &self.cols[i as usize]
    }

    pub fn rows(&self) -> &[Vec<AttrId>] {
        &self.rows
    }

    pub fn cols(&self) -> &[Vec<ObjId>] {
        &self.cols
    }

    pub fn incidence_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn has(&self, g: ObjId, i: AttrId) -> bool {
        self.rows[g as usize].binary_search(&i).is_ok()
    }

    pub fn all_objects(&self) -> ObjectSet {
        ObjectSet::from_sorted((0..self.n() as ObjId).collect())
    }

    pub fn all_attrs(&self) -> AttrSet {
        AttrSet::from_sorted((0..self.m() as AttrId).collect())
    }

    fn check_objects(&self, objects: &[ObjId]) -> Result<()> {
        check_ids(objects, self.n(), "object")
    }

    fn check_attrs(&self, attrs: &[AttrId]) -> Result<()> {
        check_ids(attrs, self.m(), "attribute")
    }

    /// `attr(X)`: attributes common to all objects of `objects`; `M` for `∅`.
    pub fn derive_attr(&self, objects: &[ObjId]) -> Result<AttrSet> {
        self.check_objects(objects)?;
        Ok(match objects.split_first() {
            None => self.all_attrs(),
            Some((&first, rest)) => AttrSet::from_sorted(intersect_all(
                self.row(first),
                rest.iter().map(|&g| self.row(g)),
            )),
        })
    }

    /// `obj(J)`: objects having every attribute of `attrs`; `O` for `∅`.
    pub fn derive_obj(&self, attrs: &[AttrId]) -> Result<ObjectSet> {
        self.check_attrs(attrs)?;
        Ok(match attrs.split_first() {
            None => self.all_objects(),
            Some((&first, rest)) => ObjectSet::from_sorted(intersect_all(
                self.col(first),
                rest.iter().map(|&i| self.col(i)),
            )),
        })
    }

    /// `attr(obj(J))`.
    pub fn close_attrs(&self, attrs: &[AttrId]) -> Result<AttrSet> {
        let extent = self.derive_obj(attrs)?;
        self.derive_attr(&extent)
    }

    /// `obj(attr(X))`.
    pub fn close_objs(&self, objects: &[ObjId]) -> Result<ObjectSet> {
        let intent = self.derive_attr(objects)?;
        self.derive_obj(&intent)
    }

    pub fn is_closed_attrs(&self, attrs: &[AttrId]) -> Result<bool> {
        let canonical = AttrSet::from_ids(attrs.iter().copied());
        Ok(self.close_attrs(&canonical)? == canonical)
    }

    pub fn is_closed_objs(&self, objects: &[ObjId]) -> Result<bool> {
        let canonical = ObjectSet::from_ids(objects.iter().copied());
        Ok(self.close_objs(&canonical)? == canonical)
    }

    /// `(O, attr(O))`, the maximum of the lattice order.
    pub fn top_concept(&self) -> Concept {
        let extent = self.all_objects();
        let intent = self
            .derive_attr(&extent)
            .expect("all objects are in range");
        Concept::new(extent, intent)
    }
}

fn check_ids(ids: &[u32], bound: usize, what: &str) -> Result<()> {
    if let Some(&bad) = ids.iter().find(|&&x| x as usize >= bound) {
        return Err(Error::invalid(format!(
            "{what} id {bad} out of range (< {bound})"
        )));
    }
    Ok(())
}

fn intersect_all<'a>(first: &[u32], rest: impl Iterator<Item = &'a [u32]>) -> Vec<u32> {
    let mut acc = first.to_vec();
    for other in rest {
        if acc.is_empty() {
            break;
        }
        acc = intersect(&acc, other);
    }
    acc
}

/// Sorted-sequence intersection.
pub(crate) fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Sorted-sequence union of two disjoint or overlapping sets.
pub(crate) fn union(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    union_into(a, b, &mut out);
    out
}

/// Appends the sorted union of `a` and `b` to `out`.
pub(crate) fn union_into(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.reserve(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Fx hash of a length-prefixed id sequence.
pub(crate) fn hash_ids(ids: &[u32]) -> u64 {
    use std::hash::Hasher;
    let mut hasher = rustc_hash::FxHasher::default();
    hasher.write_usize(ids.len());
    for &x in ids {
        hasher.write_u32(x);
    }
    hasher.finish()
}

/// `a ⊆ b` for sorted sequences.
pub(crate) fn is_subset(a: &[u32], b: &[u32]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

pub(crate) fn is_strictly_increasing(ids: &[u32]) -> bool {
    ids.windows(2).all(|w| w[0] < w[1])
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.extent.as_slice(), self.intent.as_slice())
    }
}
