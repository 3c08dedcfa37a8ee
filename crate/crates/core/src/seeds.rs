//! Irreducible triangulations used to start generation, and the irreducible
//! maps obtained from them by deleting vertices.

use std::collections::BTreeMap;
use std::path::Path;

use crate::classes::is_triangulation;
use crate::embedding::{EmbeddedMap, SurfaceClass, Vertex};
use crate::error::SeedError;
use crate::flags::{canonical_code, CanonicalCode};
use crate::smt::parse_smt;
use crate::transforms::{is_contractible, is_irreducible_map, is_k4_sphere};

/// Undirected simple graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<Vertex>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            assert!(u != v && u < n && v < n, "bad edge {u}-{v}");
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        SimpleGraph { adj }
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::new(n, &edges)
    }

    /// Same graph without the listed edges.
    pub fn without(&self, removed: &[(Vertex, Vertex)]) -> Self {
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| !removed.contains(&(u, v)) && !removed.contains(&(v, u)))
            .collect();
        Self::new(self.vertex_count(), &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }
}

/// Backtracking state: which triangles are chosen, and the partial link of
/// every vertex (`link[x][y]` holds the link neighbours of `y` around `x`).
struct TriangleSearch<'a> {
    g: &'a SimpleGraph,
    n: usize,
    triangles: Vec<[Vertex; 3]>,
    by_edge: BTreeMap<(Vertex, Vertex), Vec<usize>>,
    chosen: Vec<bool>,
    uses: BTreeMap<(Vertex, Vertex), u8>,
    link: Vec<Vec<Vec<Vertex>>>,
    found: Vec<Vec<[Vertex; 3]>>,
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

impl TriangleSearch<'_> {
    fn uses(&self, u: Vertex, v: Vertex) -> u8 {
        self.uses[&key(u, v)]
    }

    /// Adding link edge y-z at x would close a cycle shorter than deg(x).
    fn closes_early(&self, x: Vertex, y: Vertex, z: Vertex) -> bool {
        // y has at most one link neighbour yet, so this walks a path.
        let mut prev = usize::MAX;
        let mut cur = y;
        let mut len = 0;
        while let Some(w) = self.link[x][cur].iter().copied().find(|&w| w != prev) {
            len += 1;
            if w == z {
                return len + 1 < self.g.neighbors(x).len();
            }
            prev = cur;
            cur = w;
        }
        false
    }

    fn viable(&self, t: usize) -> bool {
        if self.chosen[t] {
            return false;
        }
        let [a, b, c] = self.triangles[t];
        self.uses(a, b) < 2
            && self.uses(b, c) < 2
            && self.uses(a, c) < 2
            && !self.closes_early(a, b, c)
            && !self.closes_early(b, a, c)
            && !self.closes_early(c, a, b)
    }

    fn apply(&mut self, t: usize, on: bool) {
        self.chosen[t] = on;
        let [a, b, c] = self.triangles[t];
        for (x, y, z) in [(a, b, c), (b, a, c), (c, a, b)] {
            if on {
                self.link[x][y].push(z);
                self.link[x][z].push(y);
            } else {
                self.link[x][y].retain(|&w| w != z);
                self.link[x][z].retain(|&w| w != y);
            }
        }
        for e in [key(a, b), key(b, c), key(a, c)] {
            let u = self.uses.get_mut(&e).unwrap();
            if on {
                *u += 1;
            } else {
                *u -= 1;
            }
        }
    }

    fn run(&mut self) {
        // Most constrained unfinished edge.
        let mut best: Option<(usize, Vec<usize>)> = None;
        for (e, ts) in &self.by_edge {
            if self.uses[e] == 2 {
                continue;
            }
            let opts: Vec<usize> = ts.iter().copied().filter(|&t| self.viable(t)).collect();
            if best.as_ref().is_none_or(|(k, _)| opts.len() < *k) {
                let done = opts.is_empty();
                best = Some((opts.len(), opts));
                if done {
                    break;
                }
            }
        }
        let Some((_, opts)) = best else {
            let set = (0..self.triangles.len())
                .filter(|&t| self.chosen[t])
                .map(|t| self.triangles[t])
                .collect();
            self.found.push(set);
            return;
        };
        for t in opts {
            if self.viable(t) {
                self.apply(t, true);
                self.run();
                self.apply(t, false);
            }
        }
    }
}

/// Turns a set of triangles, in which every edge lies on two triangles and
/// every vertex link is one cycle, into a map whose faces are those
/// triangles.
fn map_from_triangles(n: usize, tris: &[[Vertex; 3]]) -> Option<EmbeddedMap> {
    let mut link = vec![vec![Vec::new(); n]; n];
    for &[a, b, c] in tris {
        for (x, y, z) in [(a, b, c), (b, a, c), (c, a, b)] {
            link[x][y].push(z);
            link[x][z].push(y);
        }
    }
    let mut rotations = Vec::with_capacity(n);
    for x in 0..n {
        let start = (0..n).find(|&y| !link[x][y].is_empty())?;
        let mut rot = vec![start];
        let mut prev = start;
        let mut cur = *link[x][start].iter().min()?;
        while cur != start {
            rot.push(cur);
            let nxt = link[x][cur].iter().copied().find(|&w| w != prev)?;
            prev = cur;
            cur = nxt;
        }
        rotations.push(rot);
    }
    // Signature from the triangle rule: the apex following v around u must
    // precede u around v for an untwisted edge.
    let pos = |x: Vertex, y: Vertex| rotations[x].iter().position(|&w| w == y).unwrap();
    let succ = |x: Vertex, y: Vertex| {
        let r = &rotations[x];
        r[(pos(x, y) + 1) % r.len()]
    };
    let mut twisted = Vec::new();
    for u in 0..n {
        for &v in &rotations[u] {
            if v > u && succ(u, v) == succ(v, u) {
                twisted.push((u, v));
            }
        }
    }
    EmbeddedMap::from_neighbor_rotations(&rotations, &twisted).ok()
}

/// All triangular embeddings of `g` on `target`, one per isomorphism class,
/// found by exhaustive search over triangle sets.
pub fn triangular_embeddings(g: &SimpleGraph, target: SurfaceClass) -> Vec<EmbeddedMap> {
    let n = g.vertex_count();
    let mut triangles = Vec::new();
    for a in 0..n {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > b) {
                if g.has_edge(a, c) {
                    triangles.push([a, b, c]);
                }
            }
        }
    }
    let mut by_edge: BTreeMap<(Vertex, Vertex), Vec<usize>> =
        g.edges().map(|e| (e, Vec::new())).collect();
    for (t, &[a, b, c]) in triangles.iter().enumerate() {
        for e in [(a, b), (b, c), (a, c)] {
            by_edge.get_mut(&e).unwrap().push(t);
        }
    }
    let uses = g.edges().map(|e| (e, 0)).collect();
    let mut search = TriangleSearch {
        g,
        n,
        chosen: vec![false; triangles.len()],
        triangles,
        by_edge,
        uses,
        link: vec![vec![Vec::new(); n]; n],
        found: Vec::new(),
    };
    search.run();
    let mut out: BTreeMap<CanonicalCode, EmbeddedMap> = BTreeMap::new();
    for set in &search.found {
        if let Some(m) = map_from_triangles(search.n, set) {
            if m.surface_class() == target {
                let code = canonical_code(&m);
                out.entry(code).or_insert_with_key(|c| c.to_map());
            }
        }
    }
    out.into_values().collect()
}

/// Starting triangulations for one surface and the irreducible maps derived
/// from them.
#[derive(Clone, Debug)]
pub struct SeedSet {
    pub surface: SurfaceClass,
    pub triangulations: Vec<EmbeddedMap>,
    /// Empty until [`derive_irreducible_maps`] has run.
    pub irreducible: Vec<EmbeddedMap>,
}

fn tetrahedron() -> EmbeddedMap {
    EmbeddedMap::from_neighbor_rotations(
        &[vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]],
        &[],
    )
    .expect("tetrahedron is a valid map")
}

/// K4 on the sphere, with its derived irreducible maps.
pub fn sphere_seed() -> SeedSet {
    derive_irreducible_maps(&SeedSet {
        surface: SurfaceClass::SPHERE,
        triangulations: vec![canonical_code(&tetrahedron()).to_map()],
        irreducible: Vec::new(),
    })
}

/// The two irreducible triangulations of the projective plane, built by
/// searching for triangular embeddings of K6 and of K7 minus a triangle.
pub fn projective_seeds() -> Result<SeedSet, SeedError> {
    let k6 = SimpleGraph::complete(6);
    let k7t = SimpleGraph::complete(7).without(&[(0, 5), (0, 6), (5, 6)]);
    let mut triangulations = Vec::new();
    for (label, g) in [("K6", k6), ("K7 minus a triangle", k7t)] {
        let found = triangular_embeddings(&g, SurfaceClass::PROJECTIVE_PLANE);
        let irreducible: Vec<_> = found.into_iter().filter(no_contractible_edge).collect();
        if irreducible.len() != 1 {
            return Err(SeedError::Bootstrap(format!(
                "{label}: expected one irreducible projective triangulation, found {}",
                irreducible.len()
            )));
        }
        triangulations.extend(irreducible);
    }
    Ok(derive_irreducible_maps(&SeedSet {
        surface: SurfaceClass::PROJECTIVE_PLANE,
        triangulations,
        irreducible: Vec::new(),
    }))
}

fn no_contractible_edge(m: &EmbeddedMap) -> bool {
    (0..m.edge_count()).all(|e| !is_contractible(m, e))
}

/// Reads and validates a seed catalog. Every map must be an irreducible
/// triangulation of `declared`; duplicates are dropped.
pub fn load_seeds(path: &Path, declared: SurfaceClass) -> Result<SeedSet, SeedError> {
    let text = std::fs::read_to_string(path)?;
    seeds_from_text(&text, &path.display().to_string(), declared)
}

pub fn seeds_from_text(text: &str, label: &str, declared: SurfaceClass) -> Result<SeedSet, SeedError> {
    let mut codes = BTreeMap::new();
    for rec in parse_smt(text, label)? {
        let found = rec.map.surface_class();
        if found != rec.surface || found != declared {
            return Err(SeedError::SurfaceMismatch {
                name: rec.name,
                found,
                declared: if found != rec.surface { rec.surface } else { declared },
            });
        }
        if !is_triangulation(&rec.map) {
            return Err(SeedError::InvariantViolation {
                name: rec.name,
                check: "not a triangulation".into(),
            });
        }
        if !is_k4_sphere(&rec.map) && !no_contractible_edge(&rec.map) {
            return Err(SeedError::InvariantViolation {
                name: rec.name,
                check: "has a contractible edge".into(),
            });
        }
        codes.entry(canonical_code(&rec.map)).or_insert(());
    }
    Ok(derive_irreducible_maps(&SeedSet {
        surface: declared,
        triangulations: codes.into_keys().map(|c| c.to_map()).collect(),
        irreducible: Vec::new(),
    }))
}

/// Deletes every vertex subset of every seed and keeps the irreducible
/// results, deduplicated. The seeds themselves are always included.
/// Output is in canonical form, sorted by vertex count then code.
pub fn derive_irreducible_maps(seeds: &SeedSet) -> SeedSet {
    let mut found: BTreeMap<(usize, CanonicalCode), ()> = BTreeMap::new();
    for t in &seeds.triangulations {
        found.insert((t.vertex_count(), canonical_code(t)), ());
        let n = t.vertex_count();
        for mask in 1u64..(1 << n) - 1 {
            let removed: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if let Ok(m) = t.delete_vertices(&removed) {
                if is_irreducible_map(&m) {
                    found.insert((m.vertex_count(), canonical_code(&m)), ());
                }
            }
        }
    }
    SeedSet {
        surface: seeds.surface,
        triangulations: seeds.triangulations.clone(),
        irreducible: found.into_keys().map(|(_, c)| c.to_map()).collect(),
    }
}
