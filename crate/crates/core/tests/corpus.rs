//! Named examples for the transforms, the seeds and the generator.

mod common;

use std::collections::BTreeSet;

use common::{all_maps, face_sizes, n1, seeds_for};
use surfmaps::classes::{is_closed_2cell, is_triangulation};
use surfmaps::seeds::{load_seeds, seeds_from_text, triangular_embeddings, SimpleGraph};
use surfmaps::smt::write_smt;
use surfmaps::transforms::{
    add_corner_edge, classify_3cycle, contract_edge, cut_and_cap, is_contractible,
    is_face_irreducible, is_irreducible_face, is_irreducible_map, remove_edge, split_vertex,
    three_cycles, CornerRef,
};
use surfmaps::{canonical_code, EmbeddedMap, SeedError, SurfaceClass, TransformError};

fn k4() -> EmbeddedMap {
    EmbeddedMap::from_neighbor_rotations(
        &[vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]],
        &[],
    )
    .unwrap()
}

fn facial_triangles(m: &EmbeddedMap) -> BTreeSet<[usize; 3]> {
    m.trace_faces()
        .iter()
        .filter(|f| f.size() == 3)
        .map(|f| {
            let mut t = [f.vertex(0), f.vertex(1), f.vertex(2)];
            t.sort_unstable();
            t
        })
        .collect()
}

fn k6_seed() -> EmbeddedMap {
    seeds_for(n1())
        .triangulations
        .iter()
        .find(|m| m.vertex_count() == 6)
        .unwrap()
        .clone()
}

fn irreducible_with(n: usize) -> EmbeddedMap {
    seeds_for(n1())
        .irreducible
        .iter()
        .find(|m| m.vertex_count() == n)
        .unwrap()
        .clone()
}

fn k7_torus() -> EmbeddedMap {
    let found = triangular_embeddings(&SimpleGraph::complete(7), SurfaceClass::TORUS);
    assert_eq!(found.len(), 1);
    found[0].clone()
}

#[test]
fn k6_nonfacial_triangles_are_one_sided() {
    let m = k6_seed();
    let facial = facial_triangles(&m);
    let cycles = three_cycles(&m);
    assert_eq!((cycles.len(), facial.len()), (20, 10));
    for c in cycles.iter().filter(|c| !facial.contains(*c)) {
        let class = classify_3cycle(&m, *c).unwrap();
        assert!(class.one_sided && class.essential && !class.separating);
        let capped = cut_and_cap(&m, *c).unwrap();
        assert_eq!(
            (capped.vertex_count(), capped.edge_count(), capped.face_count()),
            (10, 24, 16)
        );
        assert_eq!(capped.surface_class(), SurfaceClass::SPHERE);
        assert!(is_triangulation(&capped));
    }
}

#[test]
fn k7_torus_two_sided_cut() {
    let m = k7_torus();
    assert!((0..m.edge_count()).all(|e| !is_contractible(&m, e)));
    let facial = facial_triangles(&m);
    let mut cut = 0;
    for c in three_cycles(&m).into_iter().filter(|c| !facial.contains(c)) {
        let class = classify_3cycle(&m, c).unwrap();
        assert!(!class.one_sided && class.essential);
        if !class.separating {
            let capped = cut_and_cap(&m, c).unwrap();
            assert_eq!(
                (capped.vertex_count(), capped.edge_count(), capped.face_count()),
                (10, 24, 16)
            );
            assert_eq!(capped.surface_class(), SurfaceClass::SPHERE);
            cut += 1;
        }
    }
    assert!(cut > 0);
}

#[test]
fn facial_triangles_bound_disks() {
    for m in [k6_seed(), k7_torus(), k4()] {
        for t in facial_triangles(&m) {
            let class = classify_3cycle(&m, t).unwrap();
            assert!(!class.essential && class.separating && !class.one_sided);
            assert_eq!(cut_and_cap(&m, t), Err(TransformError::SeparatingCycle(t)));
        }
    }
    for n in 3..=6 {
        for m in all_maps(SurfaceClass::SPHERE, n) {
            for c in three_cycles(&m) {
                assert!(!classify_3cycle(&m, c).unwrap().essential);
            }
        }
    }
    assert!(matches!(
        classify_3cycle(&k4().vertex_flip(0), [0, 1, 4]),
        Err(TransformError::NotAThreeCycle(_))
    ));
}

#[test]
fn splitting_seeds() {
    let m = k4();
    let mut codes = BTreeSet::new();
    for v in 0..4 {
        let darts: Vec<_> = m.rotation(v).collect();
        for (i, &a) in darts.iter().enumerate() {
            for &b in &darts[i + 1..] {
                let s = split_vertex(&m, a, b).unwrap();
                assert!(is_triangulation(&s));
                codes.insert(canonical_code(&s));
            }
        }
    }
    assert_eq!(codes.len(), 1);

    let k6 = k6_seed();
    let mut seven: BTreeSet<_> = seeds_for(n1())
        .triangulations
        .iter()
        .filter(|t| t.vertex_count() == 7)
        .map(canonical_code)
        .collect();
    for v in 0..6 {
        let darts: Vec<_> = k6.rotation(v).collect();
        for (i, &a) in darts.iter().enumerate() {
            for &b in &darts[i + 1..] {
                let s = split_vertex(&k6, a, b).unwrap();
                assert_eq!(s.surface_class(), n1());
                if is_triangulation(&s) {
                    seven.insert(canonical_code(&s));
                }
            }
        }
    }
    assert_eq!(seven.len(), 3);
    assert_eq!(
        split_vertex(&k6, 0, 0),
        Err(TransformError::SimplicityViolation)
    );
}

#[test]
fn contraction_refusals() {
    assert_eq!(contract_edge(&k4(), 0), Err(TransformError::K4SphereException));
    let p2 = seeds_for(n1())
        .triangulations
        .iter()
        .find(|m| m.vertex_count() == 7)
        .unwrap();
    for e in 0..p2.edge_count() {
        assert_eq!(contract_edge(p2, e), Err(TransformError::NotContractible(e)));
    }
    let five = all_maps(SurfaceClass::SPHERE, 5)
        .into_iter()
        .find(is_triangulation)
        .unwrap();
    for e in (0..five.edge_count()).filter(|&e| is_contractible(&five, e)) {
        assert_eq!(canonical_code(&contract_edge(&five, e).unwrap()), canonical_code(&k4()));
    }
}

#[test]
fn corner_edges() {
    // K4 on N1 is complete: every corner is blocked.
    let p4 = irreducible_with(4);
    assert_eq!(p4.edge_count(), 6);
    for (fi, f) in p4.trace_faces().iter().enumerate() {
        assert_eq!(f.size(), 4);
        assert!(is_irreducible_face(&p4.adjacency(), f));
        for pos in 0..4 {
            assert_eq!(
                add_corner_edge(&p4, CornerRef { face: fi, pos }),
                Err(TransformError::CornerBlocked)
            );
        }
    }
    // The triangle on N1 has one hexagonal face walking the triangle twice.
    let p3 = irreducible_with(3);
    let faces = p3.trace_faces();
    let hex = faces.iter().find(|f| f.size() == 6).unwrap();
    assert!(is_irreducible_face(&p3.adjacency(), hex));
    assert!(is_face_irreducible(&p3) && !is_closed_2cell(&p3));

    // A path a-c-b has face walk a c b c; the only chord is a-b.
    let star = EmbeddedMap::from_neighbor_rotations(&[vec![2], vec![2], vec![0, 1]], &[]).unwrap();
    for pos in 0..4 {
        let tri = add_corner_edge(&star, CornerRef { face: 0, pos }).unwrap();
        assert_eq!(face_sizes(&tri), [3, 3]);
    }
    assert_eq!(
        remove_edge(&star, 0),
        Err(TransformError::SameFaceBothSides(0))
    );

    let square = remove_edge(&k4(), 0).unwrap();
    assert_eq!(face_sizes(&square), [3, 3, 4]);
    assert!(!is_face_irreducible(&square));
    assert_eq!(
        add_corner_edge(&square, CornerRef { face: 0, pos: 9 }),
        Err(TransformError::BadCorner)
    );
}

#[test]
fn irreducible_maps_of_the_projective_plane() {
    let seeds = seeds_for(n1());
    assert_eq!(seeds.triangulations.len(), 2);
    assert_eq!(seeds.irreducible.len(), 7);
    assert!(seeds.irreducible.iter().all(is_irreducible_map));
    let k6 = k6_seed();
    let codes: BTreeSet<_> = seeds.irreducible.iter().map(canonical_code).collect();
    for v in 0..6 {
        if let Ok(m) = k6.delete_vertices(&[v]) {
            assert_eq!(is_irreducible_map(&m), codes.contains(&canonical_code(&m)));
        }
    }
    // Sphere triangulations beyond K4 always have a contractible edge.
    for n in 5..=6 {
        for m in all_maps(SurfaceClass::SPHERE, n) {
            assert!(!is_irreducible_map(&m));
        }
    }
}

#[test]
fn seed_files() {
    let k7 = k7_torus();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("torus.smt");
    std::fs::write(&path, write_smt("k7", &k7)).unwrap();
    let set = load_seeds(&path, SurfaceClass::TORUS).unwrap();
    assert_eq!(set.triangulations.len(), 1);
    assert!(set.irreducible.iter().any(|m| canonical_code(m) == canonical_code(&k7)));
    assert!(set.irreducible.iter().all(is_irreducible_map));

    assert!(matches!(
        load_seeds(&path, SurfaceClass::KLEIN_BOTTLE),
        Err(SeedError::SurfaceMismatch { .. })
    ));
    let five = all_maps(SurfaceClass::SPHERE, 5)
        .into_iter()
        .find(is_triangulation)
        .unwrap();
    assert!(matches!(
        seeds_from_text(&write_smt("five", &five), "mem", SurfaceClass::SPHERE),
        Err(SeedError::InvariantViolation { .. })
    ));
    assert!(matches!(
        load_seeds(&dir.path().join("missing.smt"), SurfaceClass::TORUS),
        Err(SeedError::Io(_))
    ));
}
