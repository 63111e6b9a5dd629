//! Child generation, adjacency condensation, the extent dictionary and the
//! two closure tests.
//!
//! For a concept `(obj(X), X)` the attributes in `res(X)` split into classes
//! of attributes whose columns agree on `obj(X)`. Each class `S` yields a
//! candidate child `(obj(XS), XS)`; the candidates of one parent form a
//! [`ChildList`]. A [`CondensedView`] re-expresses the adjacency of the
//! parent's objects with one symbol per class, which is what makes the
//! two-level builder cheaper than scanning raw rows.

mod children;
mod closure;
mod dict;
mod sprout;
mod view;

pub use children::{sort_children, ChildEntry, ChildList};
pub use closure::{is_closed_by_siblings, prop1_child_extent};
pub use dict::{classify_child, register_children, ClosureVerdict, DictEntry, ExtentDict};
pub use sprout::{children_of, sprout, sprout_right_of, SproutScope, Sprouter};
pub use view::{condense, CondensedView};
