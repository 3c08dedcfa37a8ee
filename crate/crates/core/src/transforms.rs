//! Local deformations of maps: contraction, vertex splitting, edge removal,
//! corner edges and cutting along 3-cycles.

use crate::embedding::{mate, Adjacency, Dart, Edge, EmbeddedMap, FaceLabels, FaceWalk, Vertex};
use crate::error::TransformError;

/// A corner of a face walk: the step at position `pos` of face `face`, with
/// faces numbered as in [`EmbeddedMap::trace_faces`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CornerRef {
    pub face: usize,
    pub pos: usize,
}

/// Topological type of a 3-cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleClass {
    pub one_sided: bool,
    pub separating: bool,
    /// False iff the cycle bounds a disk.
    pub essential: bool,
}

pub fn is_k4_sphere(m: &EmbeddedMap) -> bool {
    m.vertex_count() == 4 && m.edge_count() == 6 && m.euler_characteristic() == 2
}

/// Third vertex of the face on `side` of dart `d`, if that face is a triangle.
fn triangle_apex(m: &EmbeddedMap, d: Dart, side: usize) -> Option<Vertex> {
    let f = 2 * d + side;
    if m.face_len_upto(f, 3) != Some(3) {
        return None;
    }
    let g = m.face_step(m.face_step(f));
    Some(m.vertex_of(g >> 1))
}

/// Both incident faces are triangles with distinct apexes, and the endpoints
/// have no other common neighbour.
pub fn is_contractible(m: &EmbeddedMap, e: Edge) -> bool {
    contractible_with(m, &m.adjacency(), e)
}

pub(crate) fn contractible_with(m: &EmbeddedMap, adj: &Adjacency, e: Edge) -> bool {
    let d = 2 * e;
    let (Some(a), Some(b)) = (triangle_apex(m, d, 0), triangle_apex(m, d, 1)) else {
        return false;
    };
    let (u, v) = m.endpoints(e);
    a != b && adj.common_neighbors(u, v) == 2
}

/// Contracts edge `e`, merging its endpoints. The merged vertex keeps the
/// number of the first endpoint; the last vertex is renumbered into the
/// freed slot.
pub fn contract_edge(m: &EmbeddedMap, e: Edge) -> Result<EmbeddedMap, TransformError> {
    if e >= m.edge_count() || !is_contractible(m, e) {
        return Err(TransformError::NotContractible(e));
    }
    if is_k4_sphere(m) {
        return Err(TransformError::K4SphereException);
    }
    let mut w = m.clone();
    let d = 2 * e;
    let (u, v) = w.endpoints(e);
    if w.is_twisted(e) {
        w.flip_in_place(v);
    }
    // u = (d, a, P.., b), v = (d', c1, Q.., c2) with c1 towards head(b) and
    // c2 towards head(a); merged rotation is (a, P.., b, Q..).
    let dm = mate(d);
    let b = w.prev(d);
    let c1 = w.next(dm);
    let c2 = w.prev(dm);
    debug_assert_eq!(w.head(c1), w.head(b));
    debug_assert_eq!(w.head(c2), w.head(w.next(d)));
    let mut q = Vec::new();
    let mut x = w.next(c1);
    while x != c2 {
        q.push(x);
        x = w.next(x);
    }
    let mut after = b;
    for x in q {
        w.relocate_dart(x, u, Some(after));
        after = x;
    }
    let mut doomed = [e, c1 >> 1, c2 >> 1];
    doomed.sort_unstable();
    for &g in doomed.iter().rev() {
        w.unlink_edge(g);
    }
    w.remove_isolated_vertex(v);
    debug_assert_eq!(w.surface_class(), m.surface_class());
    Ok(w)
}

/// Splits the vertex of the hinge darts `ha`, `hb` into two adjacent
/// vertices. With rotation `(ha, A.., hb, B..)` the old vertex keeps
/// `ha, A.., hb` and the new vertex (numbered last) gets `B..`; both become
/// adjacent to the heads of the hinges, so the new edge is contractible.
pub fn split_vertex(m: &EmbeddedMap, ha: Dart, hb: Dart) -> Result<EmbeddedMap, TransformError> {
    if ha >= m.dart_count() {
        return Err(TransformError::BadHinge(ha));
    }
    if hb >= m.dart_count() || m.vertex_of(hb) != m.vertex_of(ha) {
        return Err(TransformError::BadHinge(hb));
    }
    if ha == hb {
        return Err(TransformError::SimplicityViolation);
    }
    let mut w = m.clone();
    let v = w.vertex_of(ha);
    let (u1, u2) = (w.head(ha), w.head(hb));
    let (ta, tb) = (w.is_twisted(ha >> 1), w.is_twisted(hb >> 1));
    let mut moved = Vec::new();
    let mut x = w.next(hb);
    while x != ha {
        moved.push(x);
        x = w.next(x);
    }
    let nv = w.push_vertex();
    let mut last = None;
    for x in moved {
        w.relocate_dart(x, nv, last);
        last = Some(x);
    }
    // The copy of v-u1 sits next to v-u1 at u1, on the side facing v's
    // successor arc; likewise at u2.
    let at_u1 = if ta { w.prev(mate(ha)) } else { mate(ha) };
    let e1 = w.push_edge(nv, last, u1, Some(at_u1), ta);
    let e0 = w.push_edge(v, Some(hb), nv, Some(2 * e1), false);
    let at_u2 = if tb { mate(hb) } else { w.prev(mate(hb)) };
    w.push_edge(nv, Some(2 * e0 + 1), u2, Some(at_u2), tb);
    debug_assert_eq!(w.surface_class(), m.surface_class());
    Ok(w)
}

/// Removal of `e` keeps the surface iff `e` separates two distinct faces;
/// the pipeline additionally requires one of them to be a triangle.
pub fn removable_with(labels: &FaceLabels, e: Edge) -> bool {
    let (f0, f1) = (4 * e, 4 * e + 1);
    labels.face_of_flag[f0] != labels.face_of_flag[f1]
        && (labels.size_at(f0) == 3 || labels.size_at(f1) == 3)
}

/// Deletes edge `e`, which must lie on a triangular face and border two
/// distinct faces. The last edge is renumbered to `e`.
pub fn remove_edge(m: &EmbeddedMap, e: Edge) -> Result<EmbeddedMap, TransformError> {
    if e >= m.edge_count() {
        return Err(TransformError::NoThreeFaceOnEdge(e));
    }
    let labels = m.face_labels();
    let (f0, f1) = (4 * e, 4 * e + 1);
    if labels.face_of_flag[f0] == labels.face_of_flag[f1] {
        return Err(TransformError::SameFaceBothSides(e));
    }
    if labels.size_at(f0) != 3 && labels.size_at(f1) != 3 {
        return Err(TransformError::NoThreeFaceOnEdge(e));
    }
    let mut w = m.clone();
    w.unlink_edge(e);
    Ok(w)
}

/// Endpoints of the chord that [`add_corner_edge`] would insert at `c`:
/// normally `v_i v_{i+2}`, or `v_{i+1} v_{i+3}` when `v_i = v_{i+2}`.
pub fn corner_chord(face: &FaceWalk, pos: usize) -> (usize, Vertex, Vertex) {
    let j = if face.vertex(pos) == face.vertex(pos + 2) {
        pos + 1
    } else {
        pos
    };
    (j, face.vertex(j), face.vertex(j + 2))
}

/// Inserts the chord of face `c.face` at corner `c.pos`, cutting off a
/// triangle. Inverse of a removal.
pub fn add_corner_edge(m: &EmbeddedMap, c: CornerRef) -> Result<EmbeddedMap, TransformError> {
    let faces = m.trace_faces();
    let face = faces.get(c.face).ok_or(TransformError::BadCorner)?;
    add_corner_edge_in(m, &m.adjacency(), face, c)
}

pub(crate) fn add_corner_edge_in(
    m: &EmbeddedMap,
    adj: &Adjacency,
    face: &FaceWalk,
    c: CornerRef,
) -> Result<EmbeddedMap, TransformError> {
    let k = face.size();
    if c.pos >= k {
        return Err(TransformError::BadCorner);
    }
    if k < 4 {
        return Err(TransformError::FaceNotLarge(c.face));
    }
    let (j, x, y) = corner_chord(face, c.pos);
    if x == y || adj.contains(x, y) {
        return Err(TransformError::CornerBlocked);
    }
    let fx = face.steps[j % k];
    let fy = face.steps[(j + 2) % k];
    let slot = |f: usize| {
        let d = f >> 1;
        if f & 1 == 1 {
            m.prev(d)
        } else {
            d
        }
    };
    let (ax, ay) = (slot(fx), slot(fy));
    let mut w = m.clone();
    w.push_edge(x, Some(ax), y, Some(ay), (fx & 1) != (fy & 1));
    debug_assert_eq!(w.surface_class(), m.surface_class());
    Ok(w)
}

/// A face is irreducible when it has at least four steps and every corner
/// chord `v_i v_{i+2}` already exists (in particular `v_i != v_{i+2}`).
pub fn is_irreducible_face(adj: &Adjacency, face: &FaceWalk) -> bool {
    let k = face.size();
    k >= 4
        && (0..k).all(|i| {
            let (a, b) = (face.vertex(i), face.vertex(i + 2));
            a != b && adj.contains(a, b)
        })
}

/// Every face is a triangle or irreducible.
pub fn is_face_irreducible(m: &EmbeddedMap) -> bool {
    let adj = m.adjacency();
    m.trace_faces()
        .iter()
        .all(|f| f.size() == 3 || is_irreducible_face(&adj, f))
}

/// Face-irreducible with no contractible edge.
pub fn is_irreducible_map(m: &EmbeddedMap) -> bool {
    let adj = m.adjacency();
    m.trace_faces()
        .iter()
        .all(|f| f.size() == 3 || is_irreducible_face(&adj, f))
        && (0..m.edge_count()).all(|e| !contractible_with(m, &adj, e))
}

/// All 3-cycles `[a, b, c]` with `a < b < c`.
pub fn three_cycles(m: &EmbeddedMap) -> Vec<[Vertex; 3]> {
    let adj = m.adjacency();
    let n = m.vertex_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in m.neighbors(a).filter(|&b| b > a) {
            for c in m.neighbors(b).filter(|&c| c > b) {
                if adj.contains(a, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Result of cutting the surface open along a 3-cycle.
struct Cut {
    map: EmbeddedMap,
    one_sided: bool,
}

fn cycle_darts(m: &EmbeddedMap, cyc: [Vertex; 3]) -> Result<[(Dart, Dart); 3], TransformError> {
    let mut out = [(0, 0); 3];
    for i in 0..3 {
        let (w, wn, wp) = (cyc[i], cyc[(i + 1) % 3], cyc[(i + 2) % 3]);
        let bad = TransformError::NotAThreeCycle(cyc);
        if w >= m.vertex_count() || wn >= m.vertex_count() || w == wn {
            return Err(bad);
        }
        let fwd = m.dart_between(w, wn).ok_or(bad.clone())?;
        let back = m.dart_between(w, wp).ok_or(bad)?;
        out[i] = (fwd, back);
    }
    Ok(out)
}

/// Darts strictly between `from` and `to` in rotation order.
fn arc(m: &EmbeddedMap, from: Dart, to: Dart) -> Vec<Dart> {
    let mut out = Vec::new();
    let mut x = m.next(from);
    while x != to {
        out.push(x);
        x = m.next(x);
    }
    out
}

/// Cuts along the cycle and caps the holes. A two-sided cycle leaves two
/// triangular holes, which simply become faces; a one-sided cycle leaves a
/// hexagonal hole, filled by a wheel around a new vertex.
fn cut(m: &EmbeddedMap, cyc: [Vertex; 3]) -> Result<Cut, TransformError> {
    let mut w = m.clone();
    let d = cycle_darts(&w, cyc)?;
    if w.is_twisted(d[0].0 >> 1) {
        w.flip_in_place(cyc[1]);
    }
    if w.is_twisted(d[1].0 >> 1) {
        w.flip_in_place(cyc[2]);
    }
    let one_sided = w.is_twisted(d[2].0 >> 1);
    let raw_rot = |v: Vertex| -> Vec<Dart> { w.rotation(v).collect() };
    let mut rots: Vec<Vec<Dart>> = (0..w.vertex_count()).map(raw_rot).collect();
    let mut twisted: Vec<bool> = (0..w.edge_count()).map(|e| w.is_twisted(e)).collect();
    let n = w.vertex_count();
    let ne = w.edge_count();
    let left: Vec<Vec<Dart>> = (0..3).map(|i| arc(&w, d[i].0, d[i].1)).collect();
    let right: Vec<Vec<Dart>> = (0..3).map(|i| arc(&w, d[i].1, d[i].0)).collect();
    let with = |head: Dart, mid: &[Dart], tail: &[Dart]| -> Vec<Dart> {
        let mut r = vec![head];
        r.extend_from_slice(mid);
        r.extend_from_slice(tail);
        r
    };
    if !one_sided {
        // Copy edges ne + i join r_i and r_{i+1}; r_i = (back', R_i.., fwd').
        for i in 0..3 {
            rots[cyc[i]] = with(d[i].0, &left[i], &[d[i].1]);
            let fwd = 2 * (ne + i);
            let back = 2 * (ne + (i + 2) % 3) + 1;
            rots.push(with(back, &right[i], &[fwd]));
        }
        twisted.extend([false; 3]);
    } else {
        // Copies: c12 = ne (w1R-w2R), c23 = ne+1 (w2R-w3R), c31 = ne+2
        // (w3R-w1L). Spokes ne+3+k join the cap vertex (dart 2(ne+3+k)) to
        // hole vertex k of (w1L, w2L, w3L, w1R, w2R, w3R).
        let spoke = |k: usize| 2 * (ne + 3 + k) + 1;
        let (c12, c23, c31) = (ne, ne + 1, ne + 2);
        let [(f1, b1), (f2, b2), (f3, b3)] = d;
        rots[cyc[0]] = with(f1, &left[0], &[2 * c31 + 1, spoke(0)]);
        rots[cyc[1]] = with(f2, &left[1], &[b2, spoke(1)]);
        rots[cyc[2]] = with(f3, &left[2], &[b3, spoke(2)]);
        rots.push(with(b1, &right[0], &[2 * c12, spoke(3)]));
        rots.push(with(2 * c12 + 1, &right[1], &[2 * c23, spoke(4)]));
        rots.push(with(2 * c23 + 1, &right[2], &[2 * c31, spoke(5)]));
        rots.push((0..6).map(|k| 2 * (ne + 3 + k)).collect());
        twisted.extend([false; 9]);
        let cap = n + 3;
        let provisional = EmbeddedMap::from_dart_rotations(&rots, twisted.clone());
        // Each new edge borders a cap triangle; read its signature off the
        // sides on which the cap neighbour appears.
        let side_towards = |d: Dart, z: Vertex| -> usize {
            if provisional.head(provisional.next(d)) == z {
                0
            } else {
                1
            }
        };
        for e in ne..ne + 3 {
            let (p, q) = (2 * e, 2 * e + 1);
            twisted[e] = side_towards(p, cap) == side_towards(q, cap);
        }
        for k in 0..6 {
            let e = ne + 3 + k;
            let (p, q) = (2 * e, 2 * e + 1);
            let z = provisional.head(provisional.next(p));
            twisted[e] = side_towards(q, z) == 0;
        }
        debug_assert_eq!(provisional.vertex_count(), cap + 1);
    }
    let map = EmbeddedMap::from_dart_rotations(&rots, twisted);
    Ok(Cut { map, one_sided })
}

/// Connected components as vertex lists.
fn components(m: &EmbeddedMap) -> Vec<Vec<Vertex>> {
    let n = m.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            i += 1;
            for u in m.neighbors(v) {
                if comp[u] == usize::MAX {
                    comp[u] = id;
                    members.push(u);
                }
            }
        }
        out.push(members);
    }
    out
}

fn split_components(m: &EmbeddedMap) -> Vec<EmbeddedMap> {
    let comps = components(m);
    if comps.len() == 1 {
        return vec![m.clone()];
    }
    comps
        .iter()
        .map(|c| {
            let mut keep_v = vec![false; m.vertex_count()];
            for &v in c {
                keep_v[v] = true;
            }
            let keep_e: Vec<bool> = (0..m.edge_count())
                .map(|e| keep_v[m.endpoints(e).0])
                .collect();
            m.submap(&keep_v, &keep_e)
        })
        .collect()
}

/// Sidedness, separation and essentiality of the 3-cycle on `cyc`.
pub fn classify_3cycle(m: &EmbeddedMap, cyc: [Vertex; 3]) -> Result<CycleClass, TransformError> {
    let c = cut(m, cyc)?;
    if c.one_sided {
        return Ok(CycleClass {
            one_sided: true,
            separating: false,
            essential: true,
        });
    }
    let parts = split_components(&c.map);
    let separating = parts.len() > 1;
    let bounds_disk = separating && parts.iter().any(|p| p.euler_characteristic() == 2);
    Ok(CycleClass {
        one_sided: false,
        separating,
        essential: !bounds_disk,
    })
}

/// Cuts the surface along a non-separating 3-cycle and caps the holes.
/// Two-sided cycles gain two triangular faces (χ rises by 2); one-sided
/// cycles leave a hexagonal hole that is filled with a wheel (χ rises by 1).
pub fn cut_and_cap(m: &EmbeddedMap, cyc: [Vertex; 3]) -> Result<EmbeddedMap, TransformError> {
    let c = cut(m, cyc)?;
    if !c.one_sided && !c.map.is_connected() {
        return Err(TransformError::SeparatingCycle(cyc));
    }
    Ok(c.map)
}

/// True iff some essential 3-cycle passes through both endpoints of `e`.
pub fn on_essential_3cycle(m: &EmbeddedMap, e: Edge) -> bool {
    let (u, v) = m.endpoints(e);
    let adj = m.adjacency();
    (0..m.vertex_count())
        .filter(|&z| z != u && z != v && adj.contains(u, z) && adj.contains(v, z))
        .any(|z| classify_3cycle(m, [u, v, z]).is_ok_and(|c| c.essential))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::SurfaceClass;
    use crate::flags::is_isomorphic;

    fn k4() -> EmbeddedMap {
        EmbeddedMap::from_neighbor_rotations(
            &[vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]],
            &[],
        )
        .unwrap()
    }

    fn octahedron() -> EmbeddedMap {
        // Poles 0 and 5 around the square 1 2 3 4.
        EmbeddedMap::from_neighbor_rotations(
            &[
                vec![1, 2, 3, 4],
                vec![0, 4, 5, 2],
                vec![0, 1, 5, 3],
                vec![0, 2, 5, 4],
                vec![0, 3, 5, 1],
                vec![1, 4, 3, 2],
            ],
            &[],
        )
        .unwrap()
    }

    #[test]
    fn octahedron_is_a_sphere_triangulation() {
        let m = octahedron();
        assert_eq!(m.surface_class(), SurfaceClass::SPHERE);
        assert!(m.trace_faces().iter().all(|f| f.size() == 3));
    }

    #[test]
    fn k4_edges_contractible_but_guarded() {
        let m = k4();
        for e in 0..6 {
            assert!(is_contractible(&m, e));
            assert_eq!(contract_edge(&m, e), Err(TransformError::K4SphereException));
        }
    }

    #[test]
    fn split_then_contract_round_trips() {
        let m = octahedron();
        assert!((0..m.edge_count()).all(|e| is_contractible(&m, e)));
        let split = split_vertex(&m, m.first_dart(0), m.next(m.next(m.first_dart(0)))).unwrap();
        assert_eq!(split.vertex_count(), 7);
        assert_eq!(split.surface_class(), SurfaceClass::SPHERE);
        let new_edge = (0..split.edge_count())
            .find(|&e| split.endpoints(e) == (0, 6))
            .unwrap();
        assert!(is_contractible(&split, new_edge));
        let back = contract_edge(&split, new_edge).unwrap();
        assert!(is_isomorphic(&back, &m));
    }

    #[test]
    fn remove_and_add_corner_are_inverse() {
        let m = octahedron();
        let r = remove_edge(&m, 0).unwrap();
        assert_eq!(r.surface_class(), SurfaceClass::SPHERE);
        let faces = r.trace_faces();
        let (fi, quad) = faces.iter().enumerate().find(|(_, f)| f.size() == 4).unwrap();
        let (u, v) = m.endpoints(0);
        let pos = (0..4)
            .find(|&i| {
                let (_, x, y) = corner_chord(quad, i);
                (x, y) == (u, v) || (x, y) == (v, u)
            })
            .unwrap();
        let back = add_corner_edge(&r, CornerRef { face: fi, pos }).unwrap();
        assert!(is_isomorphic(&back, &m));
        // The other diagonal is a flip of the removed edge.
        let flipped = add_corner_edge(&r, CornerRef { face: fi, pos: pos + 1 }).unwrap();
        assert_eq!(flipped.surface_class(), SurfaceClass::SPHERE);
        assert!(!is_isomorphic(&flipped, &m));
    }

    #[test]
    fn facial_triangle_is_separating_and_inessential() {
        let m = octahedron();
        let c = classify_3cycle(&m, [0, 1, 2]).unwrap();
        assert_eq!(
            c,
            CycleClass {
                one_sided: false,
                separating: true,
                essential: false
            }
        );
        assert_eq!(cut_and_cap(&m, [0, 1, 2]), Err(TransformError::SeparatingCycle([0, 1, 2])));
        assert!(matches!(
            classify_3cycle(&m, [0, 1, 5]),
            Err(TransformError::NotAThreeCycle(_))
        ));
    }
}
