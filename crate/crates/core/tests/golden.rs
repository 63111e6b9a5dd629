mod common;

use common::{attrs, concept, square, wide, objs, sorted};
use galois_core::engine::{
    classify_child, is_closed_by_siblings, prop1_child_extent, register_children, sort_children,
    sprout, ChildList, ClosureVerdict, CondensedView, ExtentDict,
};
use galois_core::formats::{
    parse_fimi, write_lattice, LatticeDocument, OutputKind,
};
use galois_core::oracle::{oracle_extents, OracleResult};
use galois_core::{
    build_iceberg, build_lattice_bfs_basic, build_lattice_two_level, complete_bottom,
    enumerate_concepts, Concept, Context, IcebergMode, LatticeBuilder, ObjectSet,
};

fn pairs(ctx: &Context, list: &ChildList) -> Vec<(ObjectSet, galois_core::AttrSet)> {
    let _ = ctx;
    let mut out: Vec<_> = list.iter().map(|c| (c.extent_set(), c.class_set())).collect();
    out.sort();
    out
}

fn expect_pairs(ctx: &Context, wanted: &[(&str, &str)]) -> Vec<(ObjectSet, galois_core::AttrSet)> {
    let mut out: Vec<_> = wanted.iter().map(|(e, s)| (objs(ctx, e), attrs(ctx, s))).collect();
    out.sort();
    out
}

fn root_children(ctx: &Context) -> ChildList {
    let top = ctx.top_concept();
    let view = CondensedView::root(ctx, &top.intent);
    sprout(&top.extent, None, &view)
}

#[test]
fn derivations_on_square() {
    let ctx = square();
    assert_eq!(ctx.derive_attr(&objs(&ctx, "ac")).unwrap(), attrs(&ctx, "13"));
    assert_eq!(ctx.derive_attr(&[]).unwrap(), attrs(&ctx, "1234"));
    assert!(ctx.derive_attr(&objs(&ctx, "abcd")).unwrap().is_empty());
    assert_eq!(ctx.derive_obj(&attrs(&ctx, "1")).unwrap(), objs(&ctx, "abc"));
    assert_eq!(ctx.derive_obj(&[]).unwrap(), objs(&ctx, "abcd"));
    assert_eq!(ctx.derive_obj(&attrs(&ctx, "24")).unwrap(), objs(&ctx, "bd"));
    assert_eq!(ctx.close_attrs(&attrs(&ctx, "3")).unwrap(), attrs(&ctx, "13"));
    assert_eq!(ctx.close_attrs(&attrs(&ctx, "13")).unwrap(), attrs(&ctx, "13"));
    assert!(ctx.is_closed_attrs(&attrs(&ctx, "24")).unwrap());
    assert!(ctx.is_closed_attrs(&[]).unwrap());
    assert!(!ctx.is_closed_attrs(&attrs(&ctx, "3")).unwrap());
    assert!(ctx.derive_attr(&[4]).is_err());
    assert!(ctx.derive_obj(&[4]).is_err());
    assert_eq!(ctx.top_concept(), concept(&ctx, "abcd", ""));
}

#[test]
fn closure_on_wide() {
    let ctx = wide();
    assert_eq!(ctx.close_attrs(&attrs(&ctx, "4")).unwrap(), attrs(&ctx, "146"));
    assert_eq!(ctx.top_concept(), concept(&ctx, "abcde", ""));
}

#[test]
fn square_child_lists() {
    let ctx = square();
    let root = root_children(&ctx);
    assert_eq!(pairs(&ctx, &root), expect_pairs(&ctx, &[("abc", "1"), ("bd", "24"), ("ac", "3")]));

    let sorted_root = sort_children(root);
    let order: Vec<_> = sorted_root.iter().map(|c| c.class_set()).collect();
    assert_eq!(order, vec![attrs(&ctx, "1"), attrs(&ctx, "24"), attrs(&ctx, "3")]);

    let mut view = CondensedView::with_objects(ctx.n());
    view.rebuild(&sorted_root);
    let abc = sorted_root.get(0);
    let children = sprout(abc.extent, Some(0), &view);
    // Classes come back without the parent intent; add it for comparison.
    let with_parent: Vec<_> = children
        .iter()
        .map(|c| {
            let mut ids = c.class_attrs.to_vec();
            ids.extend_from_slice(abc.class_attrs);
            (c.extent_set(), galois_core::AttrSet::from_ids(ids))
        })
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    assert_eq!(with_parent, expect_pairs(&ctx, &[("ac", "13"), ("b", "124")]));
}

#[test]
fn wide_root_children_and_condensation() {
    let ctx = wide();
    let root = root_children(&ctx);
    assert_eq!(
        pairs(&ctx, &root),
        expect_pairs(&ctx, &[("abc", "16"), ("de", "2"), ("bd", "35"), ("bc", "4"), ("e", "7")])
    );
    let root = sort_children(root);
    assert_eq!(root.get(0).extent_set(), objs(&ctx, "abc"));
    assert_eq!(root.get(root.len() - 1).extent_set(), objs(&ctx, "e"));

    let view = galois_core::engine::condense(&root, &ctx.all_objects());
    let b = ctx.object_id("b").unwrap();
    let a = ctx.object_id("a").unwrap();
    assert_eq!(ctx.row(b).len(), 5);
    let contents: Vec<_> = view.cnbr(b).iter().map(|&i| view.content(i).to_vec()).collect();
    assert_eq!(
        contents,
        vec![attrs(&ctx, "16").into_vec(), attrs(&ctx, "35").into_vec(), attrs(&ctx, "4").into_vec()]
    );
    assert_eq!(view.cnbr(a).len(), 1);
    assert_eq!(view.content(view.cnbr(a)[0]), attrs(&ctx, "16").as_slice());
    assert_eq!(view.total_len(), root.total_extent_len());
}

#[test]
fn wide_dictionary_steps() {
    let ctx = wide();
    let root = sort_children(root_children(&ctx));
    let mut view = CondensedView::with_objects(ctx.n());
    view.rebuild(&root);
    let mut dict = ExtentDict::new();
    register_children(&mut dict, &root, &[]);

    // Sprout (abc,16) and register its children.
    let abc = root.get(0);
    assert_eq!(abc.class_set(), attrs(&ctx, "16"));
    let abc_children = sprout(abc.extent, Some(0), &view);
    register_children(&mut dict, &abc_children, abc.class_attrs);
    assert_eq!(dict.get(&objs(&ctx, "bc")).unwrap().best_intent, attrs(&ctx, "146").as_slice());

    // (bc,4) is eliminated.
    let bc = root.iter().position(|c| c.extent == objs(&ctx, "bc").as_slice()).unwrap();
    assert_eq!(classify_child(&root.get(bc), 0, &dict), ClosureVerdict::NotClosed);
    assert!(!is_closed_by_siblings(&root.get(bc), &root));

    // Registering Child(bd,35) lifts b to 13456.
    assert_eq!(dict.get(&objs(&ctx, "b")).unwrap().best_intent, attrs(&ctx, "1356").as_slice());
    let bd = root.iter().position(|c| c.extent == objs(&ctx, "bd").as_slice()).unwrap();
    let bd_entry = root.get(bd);
    let bd_children = sprout(bd_entry.extent, Some(bd as u32), &view);
    register_children(&mut dict, &bd_children, bd_entry.class_attrs);
    assert_eq!(dict.get(&objs(&ctx, "b")).unwrap().best_intent, attrs(&ctx, "13456").as_slice());

    // An absent extent is new.
    let mut fresh = ChildList::new(0);
    fresh.push(&objs(&ctx, "ae"), &attrs(&ctx, "7"));
    assert_eq!(classify_child(&fresh.get(0), 0, &dict), ClosureVerdict::ClosedNew);

    // (b,1356) against b ↦ 13456.
    let mut candidate = ChildList::new(0);
    candidate.push(&objs(&ctx, "b"), &attrs(&ctx, "1356"));
    assert_eq!(classify_child(&candidate.get(0), 0, &dict), ClosureVerdict::NotClosed);

    // (e,7) is not closed: e ⊂ de.
    let e = root.iter().position(|c| c.extent == objs(&ctx, "e").as_slice()).unwrap();
    assert!(!is_closed_by_siblings(&root.get(e), &root));
}

#[test]
fn equal_size_registration_keeps_existing() {
    let mut dict = ExtentDict::new();
    let mut list = ChildList::new(1);
    list.push(&[0, 1], &[2]);
    register_children(&mut dict, &list, &[0]);
    let mut other = ChildList::new(1);
    other.push(&[0, 1], &[3]);
    register_children(&mut dict, &other, &[1]);
    assert_eq!(dict.get(&[0, 1]).unwrap().best_intent, &[0, 2]);
}

#[test]
fn square_sibling_closure() {
    let ctx = square();
    let root = root_children(&ctx);
    let ac = root.iter().find(|c| c.extent == objs(&ctx, "ac").as_slice()).unwrap();
    assert!(!is_closed_by_siblings(&ac, &root));
    let abc = root.iter().find(|c| c.extent == objs(&ctx, "abc").as_slice()).unwrap();
    assert!(is_closed_by_siblings(&abc, &root));
}

#[test]
fn prop1_examples() {
    let ctx = square();
    let top = ctx.top_concept();
    let e: Vec<_> = (0..4)
        .map(|i| prop1_child_extent(&top, i, &ctx).unwrap().unwrap())
        .collect();
    assert_eq!(e, vec![objs(&ctx, "abc"), objs(&ctx, "bd"), objs(&ctx, "ac"), objs(&ctx, "bd")]);

    let ctx2 = wide();
    let c = concept(&ctx2, "abc", "16");
    let four = ctx2.attr_id("4").unwrap();
    assert_eq!(prop1_child_extent(&c, four, &ctx2).unwrap(), Some(objs(&ctx2, "bc")));
    let one = ctx2.attr_id("1").unwrap();
    assert!(prop1_child_extent(&c, one, &ctx2).is_err());
}

fn wide_natural(ctx: &Context) -> Vec<Concept> {
    sorted(vec![
        concept(ctx, "abcde", ""),
        concept(ctx, "abc", "16"),
        concept(ctx, "bd", "35"),
        concept(ctx, "de", "2"),
        concept(ctx, "bc", "146"),
        concept(ctx, "b", "13456"),
        concept(ctx, "d", "235"),
        concept(ctx, "e", "27"),
    ])
}

#[test]
fn wide_lattice() {
    let ctx = wide();
    let (lat, stats) = build_lattice_two_level(&ctx);
    assert_eq!(sorted(lat.concepts.clone()), wide_natural(&ctx));
    assert_eq!(lat.edges.len(), 9);
    assert_eq!(stats.eliminations, 3);
    lat.validate(&ctx).unwrap();

    let (basic, basic_stats) = build_lattice_bfs_basic(&ctx);
    assert_eq!(basic.canonical(), lat.canonical());
    assert!(basic_stats.total_touches >= stats.total_touches);

    let completed = complete_bottom(lat, &ctx);
    assert_eq!(completed.concepts.len(), 9);
    assert_eq!(completed.edges.len(), 12);
    completed.validate(&ctx).unwrap();
    let bottom = completed.bottom_id.unwrap() as usize;
    assert_eq!(completed.concepts[bottom], concept(&ctx, "", "1234567"));
    let mut preds: Vec<_> = completed
        .edges
        .iter()
        .filter(|e| e.1 as usize == bottom)
        .map(|e| completed.concepts[e.0 as usize].clone())
        .collect();
    preds.sort();
    assert_eq!(
        preds,
        sorted(vec![concept(&ctx, "b", "13456"), concept(&ctx, "d", "235"), concept(&ctx, "e", "27")])
    );
}

#[test]
fn square_lattice() {
    let ctx = square();
    let (lat, _) = build_lattice_two_level(&ctx);
    let expected = sorted(vec![
        concept(&ctx, "abcd", ""),
        concept(&ctx, "abc", "1"),
        concept(&ctx, "bd", "24"),
        concept(&ctx, "ac", "13"),
        concept(&ctx, "b", "124"),
    ]);
    assert_eq!(sorted(lat.concepts.clone()), expected);
    let id = |c: Concept| lat.concepts.iter().position(|x| *x == c).unwrap() as u32;
    let mut edges = vec![
        (id(concept(&ctx, "abcd", "")), id(concept(&ctx, "abc", "1"))),
        (id(concept(&ctx, "abcd", "")), id(concept(&ctx, "bd", "24"))),
        (id(concept(&ctx, "abc", "1")), id(concept(&ctx, "ac", "13"))),
        (id(concept(&ctx, "abc", "1")), id(concept(&ctx, "b", "124"))),
        (id(concept(&ctx, "bd", "24")), id(concept(&ctx, "b", "124"))),
    ];
    edges.sort();
    assert_eq!(lat.edges, edges);

    let completed = complete_bottom(lat, &ctx);
    assert_eq!((completed.concepts.len(), completed.edges.len()), (6, 7));
    assert!(completed.concepts.contains(&concept(&ctx, "", "1234")));
}

#[test]
fn empty_relation() {
    let ctx = Context::from_rows(3, vec![vec![], vec![], vec![]]).unwrap();
    let (lat, stats) = build_lattice_two_level(&ctx);
    assert_eq!(lat.concepts, vec![ctx.top_concept()]);
    assert!(lat.edges.is_empty());
    let (_, basic) = build_lattice_bfs_basic(&ctx);
    assert_eq!((stats.total_touches, basic.total_touches), (0, 0));
    assert_eq!(enumerate_concepts(&ctx).len(), 1);
    assert_eq!(oracle_extents(&ctx).unwrap().len(), 2);
}

#[test]
fn one_object_with_everything_keeps_bottom() {
    let ctx = Context::from_rows(3, vec![vec![0, 1, 2], vec![0]]).unwrap();
    let (lat, _) = build_lattice_two_level(&ctx);
    let before = lat.concepts.len();
    let completed = complete_bottom(lat, &ctx);
    assert_eq!(completed.concepts.len(), before);
    let bottom = &completed.concepts[completed.bottom_id.unwrap() as usize];
    assert_eq!(bottom.intent.len(), 3);
}

#[test]
fn enumerate_golden() {
    let ctx = wide();
    let (emitted, _) = LatticeBuilder::new(&ctx).enumerate();
    assert_eq!(emitted.len(), 8);
    assert_eq!(sorted(emitted), wide_natural(&ctx));
    assert_eq!(enumerate_concepts(&square()).len(), 5);
}

#[test]
fn iceberg_golden() {
    let ctx = wide();
    for mode in [IcebergMode::ExtentDict, IcebergMode::IntentDict] {
        let lat = build_iceberg(&ctx, 2, mode).unwrap();
        assert_eq!(
            sorted(lat.concepts.clone()),
            sorted(vec![
                concept(&ctx, "abcde", ""),
                concept(&ctx, "abc", "16"),
                concept(&ctx, "bd", "35"),
                concept(&ctx, "de", "2"),
                concept(&ctx, "bc", "146"),
            ])
        );
        assert_eq!(lat.edges.len(), 4);
        let full = build_iceberg(&ctx, 1, mode).unwrap();
        assert_eq!(full.canonical(), build_lattice_two_level(&ctx).0.canonical());
        assert!(build_iceberg(&ctx, 6, mode).unwrap().is_empty());
        assert!(build_iceberg(&ctx, 0, mode).is_err());
    }

    let fimi = parse_fimi("1 3\n1 2 4\n1 3\n2 4\n", None).unwrap();
    let lat = build_iceberg(&fimi, 2, IcebergMode::ExtentDict).unwrap();
    let expected: Vec<Concept> = [(vec![0, 1, 2, 3], vec![]), (vec![0, 1, 2], vec![1]), (vec![1, 3], vec![2, 4]), (vec![0, 2], vec![1, 3])]
        .into_iter()
        .map(|(e, i)| Concept::new(e.into(), i.into()))
        .collect();
    assert_eq!(sorted(lat.concepts), sorted(expected));
}

#[test]
fn oracle_golden() {
    let ctx = square();
    let extents = oracle_extents(&ctx).unwrap();
    let mut expected = vec![
        objs(&ctx, "abcd"),
        objs(&ctx, "abc"),
        objs(&ctx, "bd"),
        objs(&ctx, "ac"),
        objs(&ctx, "b"),
        ObjectSet::new(),
    ];
    expected.sort();
    assert_eq!(extents, expected);

    let ctx2 = wide();
    let mut expected2: Vec<ObjectSet> = ["abcde", "abc", "de", "bd", "bc", "b", "d", "e", ""]
        .iter()
        .map(|s| objs(&ctx2, s))
        .collect();
    expected2.sort();
    assert_eq!(oracle_extents(&ctx2).unwrap(), expected2);
    let result = OracleResult::of(&ctx).unwrap();
    assert_eq!((result.concepts.len(), result.hasse.len()), (6, 7));
}

#[test]
fn writers_golden() {
    let ctx = square();
    let (lat, _) = build_lattice_two_level(&ctx);
    let doc = LatticeDocument::from_lattice(&lat, &ctx, "condensed", None);
    let text = write_lattice(&doc, OutputKind::Text);
    assert_eq!(text.lines().next(), Some("abcd | ∅ | 4"));
    assert_eq!(text.lines().count(), 5);

    let ctx2 = wide();
    let (lat2, _) = build_lattice_two_level(&ctx2);
    let json = write_lattice(&LatticeDocument::from_lattice(&lat2, &ctx2, "condensed", None), OutputKind::Json);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["concepts"].as_array().unwrap().len(), 8);
    assert_eq!(value["edges"].as_array().unwrap().len(), 9);
    assert_eq!(value["meta"]["bottom_mode"], "natural");

    let single = Context::from_rows(0, vec![vec![]]).unwrap();
    let (lat3, _) = build_lattice_two_level(&single);
    let dot = write_lattice(&LatticeDocument::from_lattice(&lat3, &single, "condensed", None), OutputKind::Dot);
    assert_eq!(dot, "digraph lattice {\n  0 [label=\"g0|∅\"];\n}\n");
}
