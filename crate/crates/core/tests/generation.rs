mod common;

use std::collections::BTreeSet;

use common::{all_maps, generate, n1, seeds_for};
use surfmaps::classes::{embedding_class, is_closed_2cell, is_polyhedral, is_triangulation};
use surfmaps::pipeline::{count_table, generate_codes, ClassFilter, GenerationConfig, Generator};
use surfmaps::transforms::{add_corner_edge, is_face_irreducible, removable_with, CornerRef};
use surfmaps::{canonical_code, CanonicalCode, EmbeddedMap, GenerationError, SurfaceClass};

fn codes(maps: &[EmbeddedMap]) -> BTreeSet<CanonicalCode> {
    maps.iter().map(canonical_code).collect()
}

#[test]
fn no_duplicates_and_right_surface() {
    for s in [SurfaceClass::SPHERE, n1()] {
        for n in 3..=6 {
            let maps = all_maps(s, n);
            assert_eq!(codes(&maps).len(), maps.len());
            for m in &maps {
                assert_eq!(m.surface_class(), s);
                assert_eq!(m.vertex_count(), n);
                assert!(m.is_connected());
            }
        }
    }
}

#[test]
fn closed_under_edge_removal() {
    for s in [SurfaceClass::SPHERE, n1()] {
        for n in 3..=6 {
            let maps = all_maps(s, n);
            let set = codes(&maps);
            for m in &maps {
                let labels = m.face_labels();
                for e in (0..m.edge_count()).filter(|&e| removable_with(&labels, e)) {
                    let child = surfmaps::transforms::remove_edge(m, e).unwrap();
                    assert!(set.contains(&canonical_code(&child)));
                }
            }
        }
    }
}

#[test]
fn every_reducible_map_has_a_corner_edge() {
    for s in [SurfaceClass::SPHERE, n1()] {
        for n in 3..=6 {
            for m in all_maps(s, n).iter().filter(|m| !is_face_irreducible(m)) {
                let faces = m.trace_faces();
                let reducible = faces.iter().enumerate().any(|(fi, f)| {
                    (0..f.size()).any(|pos| add_corner_edge(m, CornerRef { face: fi, pos }).is_ok())
                });
                assert!(reducible);
            }
        }
    }
}

#[test]
fn class_runs_match_filtered_output() {
    for (s, n) in [(SurfaceClass::SPHERE, 6), (n1(), 6)] {
        let all = all_maps(s, n);
        let pick = |f: fn(&EmbeddedMap) -> bool| codes(&all.iter().filter(|m| f(m)).cloned().collect::<Vec<_>>());
        assert_eq!(codes(&generate(s, n, ClassFilter::Closed2Cell)), pick(is_closed_2cell));
        assert_eq!(codes(&generate(s, n, ClassFilter::Polyhedral)), pick(is_polyhedral));
        assert_eq!(codes(&generate(s, n, ClassFilter::Triangulation)), pick(is_triangulation));
        assert_eq!(codes(&generate(s, n, ClassFilter::FaceIrreducible)), pick(is_face_irreducible));
    }
    let irr = generate(n1(), 5, ClassFilter::Irreducible);
    assert_eq!(irr.len(), 2);
}

#[test]
fn closed_maps_are_two_connected_and_polyhedral_maps_three_connected() {
    for s in [SurfaceClass::SPHERE, n1()] {
        for n in 3..=6 {
            for m in all_maps(s, n) {
                let class = embedding_class(&m);
                if is_closed_2cell(&m) {
                    assert!(common::is_k_connected(&m, 2));
                }
                if is_polyhedral(&m) {
                    assert!(common::is_k_connected(&m, 3));
                    assert!(is_closed_2cell(&m));
                }
                assert_eq!(class >= surfmaps::classes::EmbeddingClass::Closed2Cell, is_closed_2cell(&m));
            }
        }
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads| {
        let cfg = GenerationConfig {
            threads,
            ..GenerationConfig::new(n1(), ClassFilter::All)
        };
        generate_codes(&cfg, seeds_for(n1()), 6).unwrap()
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn count_table_rows() {
    let cfg = GenerationConfig::new(SurfaceClass::SPHERE, ClassFilter::All);
    let t = count_table(&cfg, seeds_for(SurfaceClass::SPHERE), 3..=5).unwrap();
    let open: Vec<_> = t.rows.iter().map(|r| r.maps[2]).collect();
    assert_eq!(open, [Some(2), Some(6), Some(25)]);
    let text = t.to_string();
    assert!(text.contains("polyhedral"));
    for r in &t.rows {
        let c = r.cells();
        assert!(c[3] <= c[4] && c[4] <= c[5]);
        assert!(c[6] <= c[7] && c[7] <= c[8]);
    }
}

#[test]
fn generator_errors() {
    let cfg = GenerationConfig::new(SurfaceClass::TORUS, ClassFilter::All);
    assert!(matches!(
        Generator::new(cfg, seeds_for(n1())),
        Err(GenerationError::SurfaceMismatch { .. })
    ));
    let cfg = GenerationConfig {
        level_cap: Some(1000),
        ..GenerationConfig::new(n1(), ClassFilter::All)
    };
    assert!(matches!(
        generate_codes(&cfg, seeds_for(n1()), 6),
        Err(GenerationError::LevelCapExceeded { .. })
    ));
}
