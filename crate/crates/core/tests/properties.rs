//! Randomized invariants: canonical forms, label independence, generator
//! output validity, and the text format round trip.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;

use polymap::audit::fixtures;
use polymap::{
    check_polyhedral, classify_cycle, contractible_prefilter, enumerate_hamiltonian_cycles,
    equivelar_type, generate_equivelar_torus, is_isomorphic, parse_map, relabel,
    validate_surface, write_map, CycleClass, CycleSpec, EquivelarType, Label, SurfaceMap,
};

fn m1_with_cycles() -> &'static (SurfaceMap, Vec<CycleSpec>) {
    static CACHE: OnceLock<(SurfaceMap, Vec<CycleSpec>)> = OnceLock::new();
    CACHE.get_or_init(|| {
        let m = parse_map(fixtures::M1).unwrap();
        let cycles = enumerate_hamiltonian_cycles(&m, false).unwrap();
        (m, cycles)
    })
}

/// Maps the text round trip is tried against.
fn pool() -> &'static Vec<SurfaceMap> {
    static CACHE: OnceLock<Vec<SurfaceMap>> = OnceLock::new();
    CACHE.get_or_init(|| {
        vec![
            parse_map(fixtures::TET).unwrap(),
            parse_map(fixtures::M1).unwrap(),
            parse_map(fixtures::K1).unwrap(),
            parse_map(fixtures::K2).unwrap(),
            generate_equivelar_torus(EquivelarType { p: 4, q: 4 }, 3, 3, 0).unwrap(),
            generate_equivelar_torus(EquivelarType { p: 6, q: 3 }, 3, 4, 1).unwrap(),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_rotation_and_direction(
        pick: prop::sample::Index,
        start: prop::sample::Index,
        flip: bool,
    ) {
        let (m, cycles) = m1_with_cycles();
        let cycle = &cycles[pick.index(cycles.len())];
        let verts = cycle.vertices();
        let n = verts.len();
        let offset = start.index(n);
        let mut order: Vec<Label> =
            (0..n).map(|k| verts[(offset + k) % n].clone()).collect();
        if flip {
            order.reverse();
        }
        let rebuilt = CycleSpec::new(m, order).unwrap();
        prop_assert_eq!(&rebuilt, cycle);
    }

    #[test]
    fn relabeling_preserves_shape_and_class(names in Just([
        "w1", "w2", "w3", "w4", "w5", "w6", "w7",
    ].to_vec()).prop_shuffle()) {
        let (m, _) = m1_with_cycles();
        let table: BTreeMap<Label, Label> = m
            .vertices()
            .iter()
            .zip(&names)
            .map(|(old, new)| (old.clone(), Label::new(*new).unwrap()))
            .collect();
        let relabeled = relabel(m, &table).unwrap();

        prop_assert!(validate_surface(&relabeled).is_valid());
        prop_assert!(check_polyhedral(&relabeled).is_polyhedral);
        prop_assert_eq!(equivelar_type(&relabeled), Some(EquivelarType { p: 3, q: 6 }));
        prop_assert!(is_isomorphic(m, &relabeled).unwrap());

        let image: Vec<Label> = ["u11", "u14", "u15", "u13", "u17", "u12", "u16"]
            .iter()
            .map(|s| table[&Label::new(*s).unwrap()].clone())
            .collect();
        let cycle = CycleSpec::new(&relabeled, image).unwrap();
        prop_assert_eq!(
            classify_cycle(&relabeled, &cycle).unwrap(),
            CycleClass::Contractible
        );
    }

    #[test]
    fn generator_yields_valid_quotients_or_rejects(
        kind in 0..3usize,
        rows in 1..=5usize,
        cols in 1..=8usize,
        shift in -12..=12i64,
    ) {
        let p_q = [
            EquivelarType { p: 3, q: 6 },
            EquivelarType { p: 4, q: 4 },
            EquivelarType { p: 6, q: 3 },
        ][kind];
        match generate_equivelar_torus(p_q, rows, cols, shift) {
            Ok(m) => {
                prop_assert!(validate_surface(&m).is_valid());
                prop_assert!(check_polyhedral(&m).is_polyhedral);
                prop_assert_eq!(equivelar_type(&m), Some(p_q));
                prop_assert_eq!(m.euler_characteristic(), 0);
            }
            Err(polymap::Error::BadParameters(_)) => {}
            Err(other) => prop_assert!(false, "unexpected error: {other}"),
        }
    }

    #[test]
    fn map_text_round_trips(pick: prop::sample::Index) {
        let maps = pool();
        let m = &maps[pick.index(maps.len())];
        let text = write_map(m);
        let reparsed = parse_map(&text).unwrap();
        prop_assert_eq!(write_map(&reparsed), text);
        prop_assert_eq!(reparsed.vertex_count(), m.vertex_count());
        prop_assert_eq!(reparsed.edge_count(), m.edge_count());
        prop_assert_eq!(reparsed.face_count(), m.face_count());
        prop_assert_eq!(equivelar_type(&reparsed), equivelar_type(m));
    }
}

/// The arithmetic screen must never veto a class that actually occurs:
/// on maps where it fails, no enumerated cycle may classify contractible.
#[test]
fn prefilter_blocks_nothing_real() {
    let square = generate_equivelar_torus(EquivelarType { p: 4, q: 4 }, 3, 3, 0).unwrap();
    assert!(!contractible_prefilter(9, 4));
    for cycle in enumerate_hamiltonian_cycles(&square, false).unwrap() {
        assert_ne!(
            classify_cycle(&square, &cycle).unwrap(),
            CycleClass::Contractible,
            "{cycle}"
        );
    }

    let hex = generate_equivelar_torus(EquivelarType { p: 6, q: 3 }, 3, 4, 1).unwrap();
    assert_eq!(hex.vertex_count(), 24);
    assert!(!contractible_prefilter(24, 6));
    for cycle in enumerate_hamiltonian_cycles(&hex, false).unwrap() {
        assert_ne!(
            classify_cycle(&hex, &cycle).unwrap(),
            CycleClass::Contractible,
            "{cycle}"
        );
    }
}
