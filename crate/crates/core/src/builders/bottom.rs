use crate::context::{Concept, Context};

use super::{BottomMode, ConceptLattice};

/// Turns a natural lattice into the full concept lattice of `ctx`.
///
/// If a concept with extent `obj(M)` is already present it becomes the
/// bottom; otherwise `(∅, M)` is appended below every concept without
/// successors. An empty lattice (an iceberg whose top failed the threshold)
/// is returned unchanged apart from the mode.
pub fn complete_bottom(lat: ConceptLattice, ctx: &Context) -> ConceptLattice {
    let mut lat = lat;
    if lat.bottom_mode == BottomMode::Completed {
        return lat;
    }
    lat.bottom_mode = BottomMode::Completed;
    if lat.concepts.is_empty() {
        return lat;
    }
    let all = ctx.all_attrs();
    let minimum = ctx.derive_obj(&all).expect("attribute ids are in range");
    if let Some(id) = lat.concepts.iter().position(|c| c.extent == minimum) {
        lat.bottom_id = Some(id as u32);
        return lat;
    }
    let bottom = lat.concepts.len() as u32;
    let mut has_successor = vec![false; lat.concepts.len()];
    for &(p, _) in &lat.edges {
        has_successor[p as usize] = true;
    }
    lat.edges.extend(
        has_successor
            .iter()
            .enumerate()
            .filter(|(_, &has)| !has)
            .map(|(id, _)| (id as u32, bottom)),
    );
    lat.edges.sort_unstable();
    lat.concepts.push(Concept::new(minimum, all));
    lat.bottom_id = Some(bottom);
    lat
}
