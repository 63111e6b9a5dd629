#![allow(clippy::needless_range_loop)]

use galois_core::engine::children_of;
use galois_core::formats::{canonical_serialization, parse_cxt, write_cxt};
use galois_core::oracle::{exhaustive_extents, oracle_extents, OracleResult};
use galois_core::verify::{check_context_with, Builders, Thresholds};
use galois_core::{
    build_lattice_bfs_basic, build_lattice_two_level, complete_bottom, enumerate_concepts, AttrId,
    Context, ObjId,
};
use proptest::prelude::*;

fn contexts(max_n: usize, max_m: usize) -> impl Strategy<Value = Context> {
    (0..=max_n, 0..=max_m).prop_flat_map(|(n, m)| {
        proptest::collection::vec(proptest::collection::btree_set(0..m.max(1) as AttrId, 0..=m), n)
            .prop_map(move |rows| {
                let rows = rows.into_iter().map(|r| r.into_iter().filter(|&i| (i as usize) < m).collect()).collect();
                Context::from_rows(m, rows).unwrap()
            })
    })
}

fn subset(ids: Vec<bool>) -> Vec<u32> {
    ids.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u32).collect()
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn galois_connection(ctx in contexts(8, 7), xs in proptest::collection::vec(any::<bool>(), 16), js in proptest::collection::vec(any::<bool>(), 16)) {
        let x: Vec<ObjId> = subset(xs[..ctx.n()].to_vec());
        let j: Vec<AttrId> = subset(js[..ctx.m()].to_vec());
        let ax = ctx.derive_attr(&x).unwrap();
        prop_assert!(is_subset(&x, &ctx.derive_obj(&ax).unwrap()));
        let oj = ctx.derive_obj(&j).unwrap();
        prop_assert!(is_subset(&j, &ctx.derive_attr(&oj).unwrap()));
        prop_assert_eq!(ctx.derive_attr(&ctx.derive_obj(&ax).unwrap()).unwrap(), ax.clone());
        // Antitone: a smaller set derives a larger one.
        let half: Vec<ObjId> = x.iter().copied().step_by(2).collect();
        prop_assert!(is_subset(&ax, &ctx.derive_attr(&half).unwrap()));
    }

    #[test]
    fn closed_sets_form_concepts(ctx in contexts(8, 7), js in proptest::collection::vec(any::<bool>(), 16)) {
        let j: Vec<AttrId> = subset(js[..ctx.m()].to_vec());
        let closed = ctx.close_attrs(&j).unwrap();
        let extent = ctx.derive_obj(&closed).unwrap();
        prop_assert!(galois_core::Concept::new(extent.clone(), closed).is_valid_in(&ctx));
        let intent = ctx.derive_attr(&extent).unwrap();
        prop_assert!(galois_core::Concept::new(ctx.close_objs(&extent).unwrap(), intent).is_valid_in(&ctx));
    }

    #[test]
    fn oracle_strategies_agree(ctx in contexts(8, 7)) {
        prop_assert_eq!(oracle_extents(&ctx).unwrap(), exhaustive_extents(&ctx).unwrap());
    }

    #[test]
    fn builders_match_oracle(ctx in contexts(8, 7)) {
        let report = check_context_with(&ctx, &Builders::standard(), Thresholds::All).unwrap();
        prop_assert!(report.passed(), "{:?}", report.mismatch);
    }

    #[test]
    fn lattice_order_is_anti_isomorphic(ctx in contexts(8, 7)) {
        let lat = complete_bottom(build_lattice_two_level(&ctx).0, &ctx);
        prop_assert!(lat.validate(&ctx).is_ok());
        for c in &lat.concepts {
            for d in &lat.concepts {
                prop_assert_eq!(c.extent.is_subset(&d.extent), d.intent.is_subset(&c.intent));
            }
        }
    }

    #[test]
    fn hasse_closure_is_strict_inclusion(ctx in contexts(7, 6)) {
        let oracle = OracleResult::of(&ctx).unwrap();
        let k = oracle.concepts.len();
        let mut reach = vec![vec![false; k]; k];
        for &(p, s) in &oracle.hasse {
            reach[p as usize][s as usize] = true;
        }
        for via in 0..k {
            for a in 0..k {
                if reach[a][via] {
                    for b in 0..k {
                        if reach[via][b] {
                            reach[a][b] = true;
                        }
                    }
                }
            }
        }
        for a in 0..k {
            prop_assert!(!reach[a][a]);
            for b in 0..k {
                let strict = a != b && oracle.concepts[b].extent.is_subset(&oracle.concepts[a].extent);
                prop_assert_eq!(reach[a][b], strict);
            }
        }
    }

    #[test]
    fn child_classes_partition_the_residual(ctx in contexts(8, 7)) {
        let top = ctx.top_concept();
        let list = children_of(&ctx, &top.extent, &top.intent);
        let mut seen: Vec<AttrId> = list.iter().flat_map(|c| c.class_attrs.to_vec()).collect();
        seen.sort_unstable();
        let before = seen.len();
        seen.dedup();
        prop_assert_eq!(before, seen.len());
        let residual: Vec<AttrId> = (0..ctx.m() as AttrId)
            .filter(|&i| !top.intent.contains(&i) && !ctx.col(i).is_empty())
            .collect();
        prop_assert_eq!(seen, residual);
        for child in list.iter() {
            for &i in child.class_attrs {
                prop_assert_eq!(ctx.col(i), child.extent);
            }
        }
    }

    #[test]
    fn algorithms_serialize_identically(ctx in contexts(9, 8)) {
        let basic = canonical_serialization(&build_lattice_bfs_basic(&ctx).0, &ctx);
        let condensed = canonical_serialization(&build_lattice_two_level(&ctx).0, &ctx);
        prop_assert_eq!(basic, condensed);
    }

    #[test]
    fn enumeration_has_no_duplicates(ctx in contexts(9, 8)) {
        let mut concepts = enumerate_concepts(&ctx);
        let total = concepts.len();
        concepts.sort();
        concepts.dedup();
        prop_assert_eq!(total, concepts.len());
    }

    #[test]
    fn cxt_round_trip(ctx in contexts(8, 7)) {
        prop_assert_eq!(parse_cxt(&write_cxt(&ctx)).unwrap(), ctx);
    }
}
