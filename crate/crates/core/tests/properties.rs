mod common;

use common::{face_sizes, random_map, relabel, rotate_lists};
use proptest::prelude::*;
use surfmaps::signed_code::{read_signed_code, write_signed_code};
use surfmaps::smt::{parse_smt, write_smt};
use surfmaps::transforms::{
    add_corner_edge, contract_edge, is_k4_sphere, remove_edge, split_vertex, CornerRef,
};
use surfmaps::{canonical_code, EmbeddedMap};

fn arb_map() -> impl Strategy<Value = EmbeddedMap> {
    (any::<u64>(), 2usize..8, 0.0f64..0.8).prop_map(|(seed, n, p)| random_map(seed, n, p))
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn code_ignores_labels(m in arb_map(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut perm: Vec<usize> = (0..m.vertex_count()).collect();
        perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        prop_assert_eq!(canonical_code(&relabel(&m, &perm)), canonical_code(&m));
        prop_assert_eq!(canonical_code(&rotate_lists(&m, seed as usize)), canonical_code(&m));
    }

    #[test]
    fn code_ignores_flips_and_reflection(m in arb_map(), mask in any::<u32>()) {
        let mut w = m.clone();
        for v in 0..m.vertex_count() {
            if mask >> v & 1 == 1 {
                w = w.vertex_flip(v);
            }
        }
        prop_assert_eq!(w.surface_class(), m.surface_class());
        prop_assert_eq!(canonical_code(&w), canonical_code(&m));
        prop_assert_eq!(canonical_code(&m.mirror()), canonical_code(&m));
        prop_assert_eq!(canonical_code(&m.normalize_signatures()), canonical_code(&m));
    }

    #[test]
    fn code_decodes_to_an_isomorphic_map(m in arb_map()) {
        let c = canonical_code(&m);
        let back = c.to_map();
        prop_assert_eq!(back.surface_class(), m.surface_class());
        prop_assert_eq!(face_sizes(&back), face_sizes(&m));
        prop_assert_eq!(canonical_code(&back), c);
    }

    #[test]
    fn text_and_binary_round_trips(m in arb_map()) {
        let text = write_smt("m", &m);
        let parsed = parse_smt(&text, "mem").unwrap();
        prop_assert_eq!(canonical_code(&parsed[0].map), canonical_code(&m));
        prop_assert_eq!(parsed[0].surface, m.surface_class());
        let bytes = write_signed_code([&m]).unwrap();
        let read = read_signed_code(&bytes).unwrap();
        prop_assert_eq!(read.len(), 1);
        prop_assert_eq!(canonical_code(&read[0]), canonical_code(&m));
        prop_assert_eq!(write_signed_code([&read[0]]).unwrap(), bytes);
    }

    #[test]
    fn split_then_contract(m in arb_map(), pick in any::<(u16, u16, u16)>()) {
        let v = pick.0 as usize % m.vertex_count();
        let darts: Vec<_> = m.rotation(v).collect();
        prop_assume!(darts.len() >= 2);
        let a = pick.1 as usize % darts.len();
        let b = (a + 1 + pick.2 as usize % (darts.len() - 1)) % darts.len();
        let s = split_vertex(&m, darts[a], darts[b]).unwrap();
        prop_assert_eq!(s.surface_class(), m.surface_class());
        prop_assert_eq!(
            (s.vertex_count(), s.edge_count(), s.face_count()),
            (m.vertex_count() + 1, m.edge_count() + 3, m.face_count() + 2)
        );
        // K4 on the sphere is never contracted.
        prop_assume!(!is_k4_sphere(&s));
        let back = contract_edge(&s, m.edge_count() + 1).unwrap();
        prop_assert_eq!(canonical_code(&back), canonical_code(&m));
    }

    #[test]
    fn add_then_remove(m in arb_map()) {
        let faces = m.trace_faces();
        for (fi, f) in faces.iter().enumerate() {
            for pos in 0..f.size() {
                if let Ok(w) = add_corner_edge(&m, CornerRef { face: fi, pos }) {
                    prop_assert_eq!(w.surface_class(), m.surface_class());
                    // One large face shrinks by one, a triangle appears.
                    let mut want = face_sizes(&m);
                    let i = want.iter().position(|&s| s == f.size()).unwrap();
                    want[i] -= 1;
                    want.push(3);
                    want.sort_unstable();
                    prop_assert_eq!(face_sizes(&w), want);
                    let back = remove_edge(&w, m.edge_count()).unwrap();
                    prop_assert_eq!(canonical_code(&back), canonical_code(&m));
                }
            }
        }
    }
}
