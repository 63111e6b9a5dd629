use crate::context::{intersect, is_subset, AttrId, Concept, Context, ObjectSet};
use crate::error::{Error, Result};

use super::{ChildEntry, ChildList};

/// Subset-testing closure check: `XS` is closed iff no sibling's extent
/// strictly contains `obj(XS)`.
pub fn is_closed_by_siblings(child: &ChildEntry<'_>, siblings: &ChildList) -> bool {
    !siblings.iter().any(|other| {
        other.extent.len() > child.extent.len() && is_subset(child.extent, other.extent)
    })
}

/// `ext(c) ∩ nbr(i)` for `i ∉ int(c)`, or `None` when empty. A nonempty
/// result is always a closed object set.
pub fn prop1_child_extent(c: &Concept, i: AttrId, ctx: &Context) -> Result<Option<ObjectSet>> {
    if i as usize >= ctx.m() {
        return Err(Error::invalid(format!("attribute id {i} out of range")));
    }
    if c.intent.binary_search(&i).is_ok() {
        return Err(Error::invalid(format!("attribute {i} is in the intent")));
    }
    let extent = intersect(&c.extent, ctx.col(i));
    Ok((!extent.is_empty()).then(|| ObjectSet::from_sorted(extent)))
}
