//! Signed rotation systems.
//!
//! An [`EmbeddedMap`] stores, for every vertex, the cyclic order of its darts
//! (edge ends) together with a per-edge signature. A signature of `-1`
//! ("twisted") means the local orientations of the two endpoints disagree
//! across that edge, which is how nonorientable surfaces are encoded.
//!
//! Darts are dense: edge `e` owns darts `2e` and `2e + 1`, and the mate of a
//! dart is `d ^ 1`.
//!
//! Flags are encoded as `2 * dart + side`, where side `0` is the side of the
//! dart facing its rotation successor and side `1` the side facing its
//! rotation predecessor. The three flag involutions are [`EmbeddedMap::s0`]
//! (other end of the edge, same face), [`EmbeddedMap::s1`] (other edge at the
//! corner, same face) and [`EmbeddedMap::s2`] (other side of the edge).

use std::collections::HashMap;
use std::fmt;

use crate::error::{MapError, Rejection};

pub type Vertex = usize;
pub type Dart = usize;
pub type Edge = usize;
pub type Flag = usize;

const NONE: usize = usize::MAX;

#[inline]
pub fn mate(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> Edge {
    d >> 1
}

/// Euler characteristic plus orientability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceClass {
    euler_characteristic: i32,
    orientable: bool,
}

impl SurfaceClass {
    pub const SPHERE: SurfaceClass = SurfaceClass {
        euler_characteristic: 2,
        orientable: true,
    };
    pub const PROJECTIVE_PLANE: SurfaceClass = SurfaceClass {
        euler_characteristic: 1,
        orientable: false,
    };
    pub const TORUS: SurfaceClass = SurfaceClass {
        euler_characteristic: 0,
        orientable: true,
    };
    pub const KLEIN_BOTTLE: SurfaceClass = SurfaceClass {
        euler_characteristic: 0,
        orientable: false,
    };

    pub fn new(euler_characteristic: i32, orientable: bool) -> Result<Self, MapError> {
        let ok = euler_characteristic <= 2
            && (!orientable || euler_characteristic % 2 == 0)
            && (orientable || euler_characteristic <= 1);
        if ok {
            Ok(SurfaceClass {
                euler_characteristic,
                orientable,
            })
        } else {
            Err(MapError::InvalidSurface {
                chi: euler_characteristic,
                orientable,
            })
        }
    }

    pub fn euler_characteristic(self) -> i32 {
        self.euler_characteristic
    }

    pub fn is_orientable(self) -> bool {
        self.orientable
    }

    /// Orientable genus for `S_g`, crosscap number for `N_g`.
    pub fn genus(self) -> u32 {
        if self.orientable {
            ((2 - self.euler_characteristic) / 2) as u32
        } else {
            (2 - self.euler_characteristic) as u32
        }
    }

    pub fn euler_genus(self) -> u32 {
        (2 - self.euler_characteristic) as u32
    }

    /// `S<g>` or `N<g>`.
    pub fn symbol(self) -> String {
        if self.orientable {
            format!("S{}", self.genus())
        } else {
            format!("N{}", self.genus())
        }
    }

    pub fn common_name(self) -> Option<&'static str> {
        match (self.euler_characteristic, self.orientable) {
            (2, true) => Some("sphere"),
            (1, false) => Some("projective plane"),
            (0, true) => Some("torus"),
            (0, false) => Some("Klein bottle"),
            _ => None,
        }
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.common_name() {
            Some(name) => write!(f, "{} ({})", self.symbol(), name),
            None => write!(f, "{}", self.symbol()),
        }
    }
}

/// An unchecked candidate embedding: dart rotations per vertex and one
/// signature per edge. Dart `d` belongs to edge `d / 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawEmbedding {
    pub rotations: Vec<Vec<Dart>>,
    pub signatures: Vec<i8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    DartInvolution,
    Simplicity,
    Connectivity,
    SignatureDomain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: Check,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn passed(&self, check: Check) -> bool {
        self.outcomes
            .iter()
            .filter(|o| o.check == check)
            .all(|o| o.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for o in self.outcomes.iter().filter(|o| !o.passed) {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "{:?}", o.check)?;
            if let Some(detail) = &o.detail {
                write!(f, " ({detail})")?;
            }
        }
        if first {
            write!(f, "ok")?;
        }
        Ok(())
    }
}

/// Checks every structural invariant of a candidate embedding.
pub fn validate_map(raw: &RawEmbedding) -> ValidationReport {
    let edge_count = raw.signatures.len();
    let dart_count = 2 * edge_count;
    let mut outcomes = Vec::with_capacity(4);

    // every dart exactly once, vertices non-empty
    let mut owner = vec![NONE; dart_count];
    let mut involution = None;
    if raw.rotations.is_empty() {
        involution = Some("no vertices".to_string());
    }
    'outer: for (v, rot) in raw.rotations.iter().enumerate() {
        for &d in rot {
            if d >= dart_count {
                involution = Some(format!("dart {d} at vertex {v} has no edge"));
                break 'outer;
            }
            if owner[d] != NONE {
                involution = Some(format!("dart {d} appears twice"));
                break 'outer;
            }
            owner[d] = v;
        }
    }
    if involution.is_none() {
        if let Some(d) = owner.iter().position(|&o| o == NONE) {
            involution = Some(format!("dart {d} is in no rotation"));
        }
    }
    let darts_ok = involution.is_none();
    outcomes.push(CheckOutcome {
        check: Check::DartInvolution,
        passed: darts_ok,
        detail: involution,
    });

    let mut simple = None;
    if darts_ok {
        let mut seen = HashMap::new();
        for e in 0..edge_count {
            let (a, b) = (owner[2 * e], owner[2 * e + 1]);
            if a == b {
                simple = Some(format!("edge {e} is a loop at {a}"));
                break;
            }
            if let Some(other) = seen.insert((a.min(b), a.max(b)), e) {
                simple = Some(format!("edges {other} and {e} join {a} and {b}"));
                break;
            }
        }
    } else {
        simple = Some("dart structure broken".into());
    }
    outcomes.push(CheckOutcome {
        check: Check::Simplicity,
        passed: simple.is_none(),
        detail: simple,
    });

    let mut connected = None;
    if darts_ok && !raw.rotations.is_empty() {
        let n = raw.rotations.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &d in &raw.rotations[v] {
                let w = owner[mate(d)];
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        if count != n {
            connected = Some(format!("{count} of {n} vertices reachable"));
        }
    } else {
        connected = Some("dart structure broken".into());
    }
    outcomes.push(CheckOutcome {
        check: Check::Connectivity,
        passed: connected.is_none(),
        detail: connected,
    });

    let bad_sig = raw
        .signatures
        .iter()
        .position(|&s| s != 1 && s != -1)
        .map(|e| format!("edge {e} has signature {}", raw.signatures[e]));
    outcomes.push(CheckOutcome {
        check: Check::SignatureDomain,
        passed: bad_sig.is_none(),
        detail: bad_sig,
    });

    ValidationReport { outcomes }
}

/// One face boundary walk.
///
/// Each step is a flag `(dart, side)` whose dart leaves the current vertex
/// along the boundary. Vertices along the walk need not be distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWalk {
    pub steps: Vec<Flag>,
    pub vertices: Vec<Vertex>,
}

impl FaceWalk {
    pub fn size(&self) -> usize {
        self.steps.len()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.steps.iter().map(|&f| f >> 1)
    }

    /// Vertex at position `i`, indices taken modulo the size.
    pub fn vertex(&self, i: usize) -> Vertex {
        self.vertices[i % self.vertices.len()]
    }
}

/// Face id per flag plus face sizes; the cheap form of [`EmbeddedMap::trace_faces`].
#[derive(Clone, Debug)]
pub struct FaceLabels {
    pub face_of_flag: Vec<u32>,
    pub sizes: Vec<u32>,
}

impl FaceLabels {
    pub fn face_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn size_at(&self, f: Flag) -> usize {
        self.sizes[self.face_of_flag[f] as usize] as usize
    }
}

/// A connected simple graph with a signed rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedMap {
    next: Vec<Dart>,
    prev: Vec<Dart>,
    vert: Vec<Vertex>,
    first: Vec<Dart>,
    degree: Vec<usize>,
    twisted: Vec<bool>,
}

impl EmbeddedMap {
    /// Builds a map from dart rotations, validating every invariant.
    pub fn from_raw(raw: &RawEmbedding) -> Result<Self, MapError> {
        let report = validate_map(raw);
        if !report.is_valid() {
            return Err(MapError::Invalid(report));
        }
        let twisted = raw.signatures.iter().map(|&s| s == -1).collect();
        Ok(Self::from_dart_rotations(&raw.rotations, twisted))
    }

    /// Builds a map from neighbour lists in rotation order; edges listed in
    /// `twisted` get signature -1.
    pub fn from_neighbor_rotations(
        rotations: &[Vec<Vertex>],
        twisted: &[(Vertex, Vertex)],
    ) -> Result<Self, MapError> {
        let raw = raw_from_neighbor_rotations(rotations, twisted)?;
        Self::from_raw(&raw)
    }

    /// Internal constructor; the caller guarantees validity.
    pub(crate) fn from_dart_rotations(rotations: &[Vec<Dart>], twisted: Vec<bool>) -> Self {
        let dart_count = 2 * twisted.len();
        let mut next = vec![NONE; dart_count];
        let mut prev = vec![NONE; dart_count];
        let mut vert = vec![NONE; dart_count];
        let mut first = Vec::with_capacity(rotations.len());
        let mut degree = Vec::with_capacity(rotations.len());
        for (v, rot) in rotations.iter().enumerate() {
            let k = rot.len();
            first.push(rot.first().copied().unwrap_or(NONE));
            degree.push(k);
            for i in 0..k {
                let d = rot[i];
                vert[d] = v;
                next[d] = rot[(i + 1) % k];
                prev[d] = rot[(i + k - 1) % k];
            }
        }
        EmbeddedMap {
            next,
            prev,
            vert,
            first,
            degree,
            twisted,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.first.len()
    }

    pub fn edge_count(&self) -> usize {
        self.twisted.len()
    }

    pub fn dart_count(&self) -> usize {
        self.next.len()
    }

    pub fn flag_count(&self) -> usize {
        2 * self.next.len()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.degree[v]
    }

    pub fn vertex_of(&self, d: Dart) -> Vertex {
        self.vert[d]
    }

    /// Vertex at the far end of `d`.
    pub fn head(&self, d: Dart) -> Vertex {
        self.vert[d ^ 1]
    }

    pub fn next(&self, d: Dart) -> Dart {
        self.next[d]
    }

    pub fn prev(&self, d: Dart) -> Dart {
        self.prev[d]
    }

    pub fn first_dart(&self, v: Vertex) -> Dart {
        self.first[v]
    }

    pub fn is_twisted(&self, e: Edge) -> bool {
        self.twisted[e]
    }

    /// `+1` or `-1`.
    pub fn signature(&self, e: Edge) -> i8 {
        if self.twisted[e] {
            -1
        } else {
            1
        }
    }

    pub fn endpoints(&self, e: Edge) -> (Vertex, Vertex) {
        (self.vert[2 * e], self.vert[2 * e + 1])
    }

    /// Darts around `v` in rotation order.
    pub fn rotation(&self, v: Vertex) -> Rotation<'_> {
        Rotation {
            map: self,
            start: self.first[v],
            cur: self.first[v],
            remaining: self.degree[v],
        }
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.rotation(v).map(move |d| self.vert[d ^ 1])
    }

    /// Dart at `u` pointing to `v`, if the edge exists.
    pub fn dart_between(&self, u: Vertex, v: Vertex) -> Option<Dart> {
        self.rotation(u).find(|&d| self.vert[d ^ 1] == v)
    }

    pub fn find_edge(&self, u: Vertex, v: Vertex) -> Option<Edge> {
        self.dart_between(u, v).map(edge_of)
    }

    pub fn adjacency(&self) -> Adjacency {
        let mut adj = Adjacency::new(self.vertex_count());
        for e in 0..self.edge_count() {
            let (a, b) = self.endpoints(e);
            adj.set(a, b);
        }
        adj
    }

    pub fn neighbor_rotations(&self) -> Vec<Vec<Vertex>> {
        (0..self.vertex_count())
            .map(|v| self.neighbors(v).collect())
            .collect()
    }

    /// Twisted edges as `(u, v)` with `u < v`, sorted.
    pub fn twisted_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<_> = (0..self.edge_count())
            .filter(|&e| self.twisted[e])
            .map(|e| {
                let (a, b) = self.endpoints(e);
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn to_raw(&self) -> RawEmbedding {
        RawEmbedding {
            rotations: (0..self.vertex_count())
                .map(|v| self.rotation(v).collect())
                .collect(),
            signatures: (0..self.edge_count()).map(|e| self.signature(e)).collect(),
        }
    }

    // ---- flags ----

    #[inline]
    pub fn s0(&self, f: Flag) -> Flag {
        let d = f >> 1;
        let flip = (!self.twisted[d >> 1]) as usize;
        ((d ^ 1) << 1) | ((f & 1) ^ flip)
    }

    #[inline]
    pub fn s1(&self, f: Flag) -> Flag {
        let d = f >> 1;
        if f & 1 == 0 {
            (self.next[d] << 1) | 1
        } else {
            self.prev[d] << 1
        }
    }

    #[inline]
    pub fn s2(&self, f: Flag) -> Flag {
        f ^ 1
    }

    /// Next step along a face boundary walk.
    #[inline]
    pub fn face_step(&self, f: Flag) -> Flag {
        self.s1(self.s0(f))
    }

    /// Length of the face walk through `f`, giving up after `limit` steps.
    pub fn face_len_upto(&self, f: Flag, limit: usize) -> Option<usize> {
        let mut g = f;
        for k in 1..=limit {
            g = self.face_step(g);
            if g == f {
                return Some(k);
            }
        }
        None
    }

    /// Boundary walks of all faces.
    ///
    /// Walk order and starting steps are deterministic: faces are found by
    /// scanning flags in increasing order.
    pub fn trace_faces(&self) -> Vec<FaceWalk> {
        let nf = self.flag_count();
        if nf == 0 {
            return vec![FaceWalk {
                steps: Vec::new(),
                vertices: Vec::new(),
            }];
        }
        let mut seen = vec![false; nf];
        let mut faces = Vec::new();
        for f in 0..nf {
            if seen[f] {
                continue;
            }
            let mut steps = Vec::new();
            let mut g = f;
            loop {
                seen[g] = true;
                seen[self.s0(g)] = true;
                steps.push(g);
                g = self.face_step(g);
                if g == f {
                    break;
                }
            }
            let vertices = steps.iter().map(|&s| self.vert[s >> 1]).collect();
            faces.push(FaceWalk { steps, vertices });
        }
        faces
    }

    /// Face id of every flag. Both a step flag and its `s0` image get the id.
    pub fn face_labels(&self) -> FaceLabels {
        let nf = self.flag_count();
        let mut face_of_flag = vec![u32::MAX; nf];
        let mut sizes = Vec::new();
        for f in 0..nf {
            if face_of_flag[f] != u32::MAX {
                continue;
            }
            let id = sizes.len() as u32;
            let mut g = f;
            let mut len = 0;
            loop {
                face_of_flag[g] = id;
                face_of_flag[self.s0(g)] = id;
                len += 1;
                g = self.face_step(g);
                if g == f {
                    break;
                }
            }
            sizes.push(len);
        }
        FaceLabels {
            face_of_flag,
            sizes,
        }
    }

    pub fn face_count(&self) -> usize {
        if self.edge_count() == 0 {
            return 1;
        }
        self.face_labels().face_count()
    }

    pub fn euler_characteristic(&self) -> i32 {
        self.vertex_count() as i32 - self.edge_count() as i32 + self.face_count() as i32
    }

    /// True iff the flag graph is bipartite with every involution swapping colours.
    pub fn is_orientable(&self) -> bool {
        let nf = self.flag_count();
        let mut color = vec![u8::MAX; nf];
        for start in 0..nf {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut stack = vec![start];
            while let Some(f) = stack.pop() {
                let c = color[f];
                for g in [self.s0(f), self.s1(f), self.s2(f)] {
                    if color[g] == u8::MAX {
                        color[g] = c ^ 1;
                        stack.push(g);
                    } else if color[g] == c {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn surface_class(&self) -> SurfaceClass {
        SurfaceClass {
            euler_characteristic: self.euler_characteristic(),
            orientable: self.is_orientable(),
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    // ---- whole-map transformations ----

    /// Reverses the local orientation at `v`: its rotation is reversed and
    /// every incident edge signature toggled. The embedding is unchanged.
    pub fn vertex_flip(&self, v: Vertex) -> EmbeddedMap {
        let mut out = self.clone();
        out.flip_in_place(v);
        out
    }

    /// Flips vertices so that the edges of a breadth-first spanning tree
    /// from vertex 0 have signature +1. On an orientable surface this makes
    /// every signature +1.
    pub fn normalize_signatures(&self) -> EmbeddedMap {
        let mut out = self.clone();
        let n = self.vertex_count();
        if n == 0 {
            return out;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            let darts: Vec<Dart> = out.rotation(v).collect();
            for d in darts {
                let w = out.head(d);
                if !seen[w] {
                    seen[w] = true;
                    if out.twisted[d >> 1] {
                        out.flip_in_place(w);
                    }
                    queue.push_back(w);
                }
            }
        }
        out
    }

    pub(crate) fn flip_in_place(&mut self, v: Vertex) {
        let darts: Vec<Dart> = self.rotation(v).collect();
        for &d in &darts {
            std::mem::swap(&mut self.next[d], &mut self.prev[d]);
            self.twisted[d >> 1] = !self.twisted[d >> 1];
        }
    }

    /// Reverses every rotation and keeps signatures: the mirror image.
    pub fn mirror(&self) -> EmbeddedMap {
        let mut out = self.clone();
        std::mem::swap(&mut out.next, &mut out.prev);
        out
    }

    /// Removes the vertices in `removed` together with their edges.
    ///
    /// The result is accepted only if it is connected and still 2-cell on
    /// the same surface, which for a connected graph is equivalent to the
    /// Euler characteristic and orientability being unchanged.
    pub fn delete_vertices(&self, removed: &[Vertex]) -> Result<EmbeddedMap, Rejection> {
        let n = self.vertex_count();
        let mut keep = vec![true; n];
        for &v in removed {
            keep[v] = false;
        }
        if !keep.iter().any(|&k| k) {
            return Err(Rejection::EmptyResult);
        }
        if removed.is_empty() {
            return Ok(self.clone());
        }
        let keep_edge: Vec<bool> = (0..self.edge_count())
            .map(|e| {
                let (a, b) = self.endpoints(e);
                keep[a] && keep[b]
            })
            .collect();
        let out = self.submap(&keep, &keep_edge);
        if !out.is_connected() {
            return Err(Rejection::Disconnected);
        }
        if out.surface_class() != self.surface_class() {
            return Err(Rejection::NotTwoCell);
        }
        Ok(out)
    }

    /// Restriction to kept vertices and edges; vertices and edges are
    /// renumbered in increasing order. May be disconnected.
    pub(crate) fn submap(&self, keep_vertex: &[bool], keep_edge: &[bool]) -> EmbeddedMap {
        let mut edge_id = vec![NONE; self.edge_count()];
        let mut twisted = Vec::new();
        for e in 0..self.edge_count() {
            if keep_edge[e] {
                edge_id[e] = twisted.len();
                twisted.push(self.twisted[e]);
            }
        }
        let rotations: Vec<Vec<Dart>> = (0..self.vertex_count())
            .filter(|&v| keep_vertex[v])
            .map(|v| {
                self.rotation(v)
                    .filter(|&d| keep_edge[d >> 1])
                    .map(|d| 2 * edge_id[d >> 1] + (d & 1))
                    .collect()
            })
            .collect();
        EmbeddedMap::from_dart_rotations(&rotations, twisted)
    }

    // ---- low-level mutation used by the transforms ----

    /// Removes edge `e` in place. The last edge is renumbered to `e`.
    pub(crate) fn unlink_edge(&mut self, e: Edge) {
        for d in [2 * e, 2 * e + 1] {
            let v = self.vert[d];
            let (p, n) = (self.prev[d], self.next[d]);
            if self.degree[v] == 1 {
                self.first[v] = NONE;
            } else {
                self.next[p] = n;
                self.prev[n] = p;
                if self.first[v] == d {
                    self.first[v] = n;
                }
            }
            self.degree[v] -= 1;
        }
        let last = self.edge_count() - 1;
        if e != last {
            for j in 0..2 {
                let from = 2 * last + j;
                let to = 2 * e + j;
                self.move_dart(from, to);
            }
            self.twisted[e] = self.twisted[last];
        }
        self.twisted.pop();
        self.next.truncate(2 * last);
        self.prev.truncate(2 * last);
        self.vert.truncate(2 * last);
    }

    fn move_dart(&mut self, from: Dart, to: Dart) {
        let v = self.vert[from];
        let (p, n) = (self.prev[from], self.next[from]);
        self.vert[to] = v;
        if p == from {
            self.next[to] = to;
            self.prev[to] = to;
        } else {
            self.next[to] = n;
            self.prev[to] = p;
            self.next[p] = to;
            self.prev[n] = to;
        }
        if self.first[v] == from {
            self.first[v] = to;
        }
    }

    /// Appends a new edge `u`-`v`; the new dart at `u` goes right after `after_u`
    /// (or becomes the only dart if `after_u` is `None`), likewise at `v`.
    pub(crate) fn push_edge(
        &mut self,
        u: Vertex,
        after_u: Option<Dart>,
        v: Vertex,
        after_v: Option<Dart>,
        twisted: bool,
    ) -> Edge {
        let e = self.twisted.len();
        self.twisted.push(twisted);
        for _ in 0..2 {
            self.next.push(NONE);
            self.prev.push(NONE);
            self.vert.push(NONE);
        }
        self.attach(2 * e, u, after_u);
        self.attach(2 * e + 1, v, after_v);
        e
    }

    fn attach(&mut self, d: Dart, v: Vertex, after: Option<Dart>) {
        self.vert[d] = v;
        match after {
            Some(a) => {
                let n = self.next[a];
                self.next[a] = d;
                self.prev[d] = a;
                self.next[d] = n;
                self.prev[n] = d;
            }
            None => {
                self.next[d] = d;
                self.prev[d] = d;
                self.first[v] = d;
            }
        }
        self.degree[v] += 1;
    }

    /// Moves dart `d` from its vertex to vertex `to`, right after `after`
    /// (or as the only dart).
    pub(crate) fn relocate_dart(&mut self, d: Dart, to: Vertex, after: Option<Dart>) {
        let v = self.vert[d];
        let (p, n) = (self.prev[d], self.next[d]);
        if self.degree[v] == 1 {
            self.first[v] = NONE;
        } else {
            self.next[p] = n;
            self.prev[n] = p;
            if self.first[v] == d {
                self.first[v] = n;
            }
        }
        self.degree[v] -= 1;
        self.attach(d, to, after);
    }

    pub(crate) fn push_vertex(&mut self) -> Vertex {
        self.first.push(NONE);
        self.degree.push(0);
        self.first.len() - 1
    }

    /// Drops a degree-0 vertex; the last vertex takes its number.
    pub(crate) fn remove_isolated_vertex(&mut self, v: Vertex) {
        debug_assert_eq!(self.degree[v], 0);
        let last = self.vertex_count() - 1;
        if v != last {
            let darts: Vec<Dart> = self.rotation(last).collect();
            for d in darts {
                self.vert[d] = v;
            }
            self.first[v] = self.first[last];
            self.degree[v] = self.degree[last];
        }
        self.first.pop();
        self.degree.pop();
    }
}

/// Iterator over the darts of one vertex in rotation order.
pub struct Rotation<'a> {
    map: &'a EmbeddedMap,
    start: Dart,
    cur: Dart,
    remaining: usize,
}

impl Iterator for Rotation<'_> {
    type Item = Dart;

    fn next(&mut self) -> Option<Dart> {
        if self.remaining == 0 {
            return None;
        }
        let d = self.cur;
        self.cur = self.map.next[d];
        self.remaining -= 1;
        debug_assert!(self.remaining > 0 || self.cur == self.start);
        Some(d)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for Rotation<'_> {}

/// Dense adjacency bit matrix.
#[derive(Clone, Debug)]
pub struct Adjacency {
    words: usize,
    bits: Vec<u64>,
}

impl Adjacency {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Adjacency {
            words,
            bits: vec![0; words * n],
        }
    }

    pub fn set(&mut self, a: Vertex, b: Vertex) {
        self.bits[a * self.words + b / 64] |= 1 << (b % 64);
        self.bits[b * self.words + a / 64] |= 1 << (a % 64);
    }

    #[inline]
    pub fn contains(&self, a: Vertex, b: Vertex) -> bool {
        self.bits[a * self.words + b / 64] & (1 << (b % 64)) != 0
    }

    pub fn common_neighbors(&self, a: Vertex, b: Vertex) -> usize {
        let ra = &self.bits[a * self.words..(a + 1) * self.words];
        let rb = &self.bits[b * self.words..(b + 1) * self.words];
        ra.iter()
            .zip(rb)
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }
}

/// Builds a dart-level candidate from neighbour lists, pairing the k-th
/// occurrence of `v` at `u` with the k-th occurrence of `u` at `v`
/// (consecutive occurrences of `u` at `u` form a loop).
pub fn raw_from_neighbor_rotations(
    rotations: &[Vec<Vertex>],
    twisted: &[(Vertex, Vertex)],
) -> Result<RawEmbedding, MapError> {
    let n = rotations.len();
    // (u, v, k) -> dart at u for the k-th occurrence of v in u's list
    let mut slot: HashMap<(usize, usize, usize), Dart> = HashMap::new();
    let mut pair_edges: HashMap<(usize, usize), Vec<Edge>> = HashMap::new();
    let mut out = vec![Vec::new(); n];
    let mut edge_count = 0;
    for (u, rot) in rotations.iter().enumerate() {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for &v in rot {
            if v >= n {
                return Err(MapError::NeighborOutOfRange {
                    vertex: u,
                    neighbor: v,
                });
            }
            let k = seen.entry(v).or_insert(0);
            let occ = *k;
            *k += 1;
            let d = if u < v || (u == v && occ % 2 == 0) {
                let e = edge_count;
                edge_count += 1;
                pair_edges.entry((u.min(v), u.max(v))).or_default().push(e);
                if u == v {
                    slot.insert((u, u, occ + 1), 2 * e + 1);
                } else {
                    slot.insert((v, u, occ), 2 * e + 1);
                }
                2 * e
            } else {
                let key = (u, v, occ);
                slot.remove(&key).ok_or(MapError::AsymmetricNeighbors(u, v))?
            };
            out[u].push(d);
        }
    }
    if let Some(&(u, v, _)) = slot.keys().next() {
        return Err(MapError::AsymmetricNeighbors(u, v));
    }
    let mut signatures = vec![1i8; edge_count];
    for &(a, b) in twisted {
        let edges = pair_edges
            .get(&(a.min(b), a.max(b)))
            .ok_or(MapError::UnknownTwistedEdge(a, b))?;
        for &e in edges {
            signatures[e] = -1;
        }
    }
    Ok(RawEmbedding {
        rotations: out,
        signatures,
    })
}
