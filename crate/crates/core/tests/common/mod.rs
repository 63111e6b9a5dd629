#![allow(dead_code)]

use galois_core::formats::parse_cxt;
use galois_core::{AttrSet, Concept, Context, ObjectSet};

pub fn fixture(name: &str) -> Context {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    parse_cxt(&text).unwrap()
}

pub fn square() -> Context {
    fixture("square.cxt")
}

pub fn wide() -> Context {
    fixture("wide.cxt")
}

/// Object set from single-character names, e.g. `"abc"`.
pub fn objs(ctx: &Context, names: &str) -> ObjectSet {
    ObjectSet::from_ids(names.chars().map(|c| ctx.object_id(&c.to_string()).expect("object name")))
}

/// Attribute set from single-character names, e.g. `"146"`.
pub fn attrs(ctx: &Context, names: &str) -> AttrSet {
    AttrSet::from_ids(names.chars().map(|c| ctx.attr_id(&c.to_string()).expect("attribute name")))
}

/// A concept written as `("abc", "16")`; `""` is the empty set.
pub fn concept(ctx: &Context, extent: &str, intent: &str) -> Concept {
    Concept::new(objs(ctx, extent), attrs(ctx, intent))
}

pub fn sorted(mut concepts: Vec<Concept>) -> Vec<Concept> {
    concepts.sort();
    concepts
}
