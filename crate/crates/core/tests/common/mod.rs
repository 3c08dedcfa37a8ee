#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};
use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use surfmaps::pipeline::{generate_codes, ClassFilter, GenerationConfig};
use surfmaps::seeds::{projective_seeds, sphere_seed, SeedSet};
use surfmaps::{EmbeddedMap, SurfaceClass};

pub fn n1() -> SurfaceClass {
    SurfaceClass::PROJECTIVE_PLANE
}

pub fn seeds_for(s: SurfaceClass) -> &'static SeedSet {
    static N1: OnceLock<SeedSet> = OnceLock::new();
    static S0: OnceLock<SeedSet> = OnceLock::new();
    if s == SurfaceClass::SPHERE {
        S0.get_or_init(sphere_seed)
    } else {
        N1.get_or_init(|| projective_seeds().expect("bootstrap"))
    }
}

/// All maps with `n` vertices on the sphere or N1, from the pipeline.
pub fn all_maps(s: SurfaceClass, n: usize) -> Vec<EmbeddedMap> {
    generate(s, n, ClassFilter::All)
}

pub fn generate(s: SurfaceClass, n: usize, class: ClassFilter) -> Vec<EmbeddedMap> {
    let cfg = GenerationConfig::new(s, class);
    generate_codes(&cfg, seeds_for(s), n)
        .expect("generation")
        .iter()
        .map(|c| c.to_map())
        .collect()
}

/// Renumbers vertices: old vertex `v` becomes `perm[v]`.
pub fn relabel(m: &EmbeddedMap, perm: &[usize]) -> EmbeddedMap {
    let rots = m.neighbor_rotations();
    let mut out = vec![Vec::new(); rots.len()];
    for (v, rot) in rots.iter().enumerate() {
        out[perm[v]] = rot.iter().map(|&u| perm[u]).collect();
    }
    let tw: Vec<_> = m.twisted_edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    EmbeddedMap::from_neighbor_rotations(&out, &tw).expect("relabelled map")
}

/// Same map with every rotation list started at a different neighbour.
pub fn rotate_lists(m: &EmbeddedMap, shift: usize) -> EmbeddedMap {
    let rots: Vec<Vec<usize>> = m
        .neighbor_rotations()
        .into_iter()
        .map(|mut r| {
            if !r.is_empty() {
                let k = shift % r.len();
                r.rotate_left(k);
            }
            r
        })
        .collect();
    EmbeddedMap::from_neighbor_rotations(&rots, &m.twisted_edges()).expect("rotated map")
}

/// A random connected simple graph with random rotations and signatures.
pub fn random_map(seed: u64, n: usize, extra: f64) -> EmbeddedMap {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut edges = BTreeMap::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v), ());
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(extra) {
                edges.insert((u, v), ());
            }
        }
    }
    let mut rots = vec![Vec::new(); n];
    for &(u, v) in edges.keys() {
        rots[u].push(v);
        rots[v].push(u);
    }
    for r in &mut rots {
        r.shuffle(&mut rng);
    }
    let tw: Vec<_> = edges.keys().copied().filter(|_| rng.gen_bool(0.3)).collect();
    EmbeddedMap::from_neighbor_rotations(&rots, &tw).expect("random map")
}

fn connected_without(m: &EmbeddedMap, gone: &[usize]) -> bool {
    let n = m.vertex_count();
    let Some(start) = (0..n).find(|v| !gone.contains(v)) else {
        return true;
    };
    let mut seen = vec![false; n];
    for &g in gone {
        seen[g] = true;
    }
    seen[start] = true;
    let mut q = VecDeque::from([start]);
    while let Some(v) = q.pop_front() {
        for w in m.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                q.push_back(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// At least `k + 1` vertices and no separating set of fewer than `k`
/// vertices (k ≤ 3).
pub fn is_k_connected(m: &EmbeddedMap, k: usize) -> bool {
    let n = m.vertex_count();
    if n <= k {
        return false;
    }
    if !connected_without(m, &[]) {
        return false;
    }
    for a in 0..n {
        if k >= 2 && !connected_without(m, &[a]) {
            return false;
        }
        if k >= 3 {
            for b in a + 1..n {
                if !connected_without(m, &[a, b]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Sorted face sizes.
pub fn face_sizes(m: &EmbeddedMap) -> Vec<usize> {
    let mut s: Vec<_> = m.trace_faces().iter().map(|f| f.size()).collect();
    s.sort_unstable();
    s
}
