//! Membership tests for triangulations, closed 2-cell and polyhedral maps.

use crate::embedding::{EmbeddedMap, FaceWalk};

/// Position of a map in the hierarchy polyhedral ⊂ closed 2-cell ⊂ open
/// 2-cell. Whether the map is a triangulation is orthogonal; see
/// [`is_triangulation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EmbeddingClass {
    Open2Cell,
    Closed2Cell,
    Polyhedral,
}

pub fn embedding_class(m: &EmbeddedMap) -> EmbeddingClass {
    let faces = m.trace_faces();
    if !faces.iter().all(is_simple_walk) {
        EmbeddingClass::Open2Cell
    } else if faces_meet_properly(m, &faces) {
        EmbeddingClass::Polyhedral
    } else {
        EmbeddingClass::Closed2Cell
    }
}

/// Every face is bounded by a 3-cycle, excluding the lone triangle on the
/// sphere.
pub fn is_triangulation(m: &EmbeddedMap) -> bool {
    if m.vertex_count() == 3 && m.edge_count() == 3 && m.euler_characteristic() == 2 {
        return false;
    }
    m.edge_count() > 0 && m.trace_faces().iter().all(|f| f.size() == 3)
}

fn is_simple_walk(f: &FaceWalk) -> bool {
    let mut seen = f.vertices.clone();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

/// No vertex occurs twice on any face boundary.
pub fn is_closed_2cell(m: &EmbeddedMap) -> bool {
    m.trace_faces().iter().all(is_simple_walk)
}

/// Closed 2-cell, and any two faces meet in nothing, one vertex, or one edge.
pub fn is_polyhedral(m: &EmbeddedMap) -> bool {
    let faces = m.trace_faces();
    faces.iter().all(is_simple_walk) && faces_meet_properly(m, &faces)
}

/// Assumes every face walk is simple.
fn faces_meet_properly(m: &EmbeddedMap, faces: &[FaceWalk]) -> bool {
    let nf = faces.len();
    let words = m.vertex_count().div_ceil(64).max(1);
    let mut sets = vec![0u64; nf * words];
    for (i, f) in faces.iter().enumerate() {
        for &v in &f.vertices {
            sets[i * words + v / 64] |= 1 << (v % 64);
        }
    }
    let labels = m.face_labels();
    let mut shared_edges = vec![0u8; nf * nf];
    for e in 0..m.edge_count() {
        let a = labels.face_of_flag[4 * e] as usize;
        let b = labels.face_of_flag[4 * e + 1] as usize;
        if a == b {
            return false;
        }
        shared_edges[a * nf + b] = shared_edges[a * nf + b].saturating_add(1);
        shared_edges[b * nf + a] = shared_edges[b * nf + a].saturating_add(1);
    }
    // face_labels and trace_faces number faces identically: both scan flags
    // in increasing order.
    for a in 0..nf {
        for b in a + 1..nf {
            let common: u32 = (0..words)
                .map(|w| (sets[a * words + w] & sets[b * words + w]).count_ones())
                .sum();
            let edges = shared_edges[a * nf + b];
            let ok = match common {
                0 | 1 => edges == 0,
                2 => edges == 1,
                _ => false,
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> EmbeddedMap {
        EmbeddedMap::from_neighbor_rotations(
            &[vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]],
            &[],
        )
        .unwrap()
    }

    #[test]
    fn k4_is_everything() {
        let m = k4();
        assert!(is_triangulation(&m));
        assert!(is_closed_2cell(&m));
        assert!(is_polyhedral(&m));
        assert_eq!(embedding_class(&m), EmbeddingClass::Polyhedral);
    }

    #[test]
    fn lone_triangle_and_path() {
        let tri = EmbeddedMap::from_neighbor_rotations(&[vec![1, 2], vec![2, 0], vec![0, 1]], &[])
            .unwrap();
        assert!(!is_triangulation(&tri));
        assert!(is_closed_2cell(&tri));
        // The two faces share three vertices.
        assert!(!is_polyhedral(&tri));
        let path =
            EmbeddedMap::from_neighbor_rotations(&[vec![1], vec![0, 2], vec![1]], &[]).unwrap();
        assert_eq!(embedding_class(&path), EmbeddingClass::Open2Cell);
    }

    #[test]
    fn square_on_sphere_is_closed_not_polyhedral() {
        let c4 = EmbeddedMap::from_neighbor_rotations(
            &[vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]],
            &[],
        )
        .unwrap();
        assert_eq!(embedding_class(&c4), EmbeddingClass::Closed2Cell);
        assert!(!is_triangulation(&c4));
    }
}
