//! Brute-force enumeration of every map with a handful of vertices: all
//! connected labelled graphs, all rotation systems, all edge signatures.
//! Independent of the transforms and the generation pipeline, so it can be
//! used to check them.

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::embedding::{EmbeddedMap, SurfaceClass, Vertex};
use crate::error::OracleError;
use crate::flags::{CanonicalCode, Canonicalizer};

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Upper bound on the number of labelled candidates examined.
    pub budget: u128,
    /// Fix the signatures of spanning-tree edges to +1. Every embedding is
    /// still reached, since flipping vertices realises any tree signature.
    pub normalize_tree: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            budget: 100_000_000,
            normalize_tree: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub surface: SurfaceClass,
    pub vertices: usize,
    /// Sorted and pairwise distinct.
    pub codes: Vec<CanonicalCode>,
}

impl OracleResult {
    pub fn count(&self) -> usize {
        self.codes.len()
    }
}

pub fn enumerate_all_maps(surface: SurfaceClass, n: usize) -> Result<OracleResult, OracleError> {
    enumerate_with(surface, n, OracleConfig::default())
}

struct Graph {
    edges: Vec<(Vertex, Vertex)>,
    nbrs: Vec<Vec<Vertex>>,
    /// Indices into `edges` of the co-tree edges.
    cotree: Vec<usize>,
}

fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = (0..pairs.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let mut nbrs = vec![Vec::new(); n];
        for &(u, v) in &edges {
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
        // Breadth-first spanning tree from vertex 0.
        let mut seen = vec![false; n];
        let mut tree = FxHashSet::default();
        let mut queue = vec![0];
        seen[0] = true;
        while let Some(u) = queue.pop() {
            for &v in &nbrs[u] {
                if !seen[v] {
                    seen[v] = true;
                    tree.insert((u.min(v), u.max(v)));
                    queue.push(v);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            let cotree = (0..edges.len())
                .filter(|&i| !tree.contains(&edges[i]))
                .collect();
            out.push(Graph {
                edges,
                nbrs,
                cotree,
            });
        }
    }
    out
}

/// Cyclic orders of `items` with the first element fixed.
fn cyclic_orders(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    fn rec(prefix: &mut Vec<Vertex>, rest: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    match items.split_first() {
        None => out.push(Vec::new()),
        Some((&head, tail)) => rec(&mut vec![head], &mut tail.to_vec(), &mut out),
    }
    out
}

fn free_edges<'a>(g: &'a Graph, cfg: &OracleConfig) -> Box<dyn Iterator<Item = usize> + 'a> {
    if cfg.normalize_tree {
        Box::new(g.cotree.iter().copied())
    } else {
        Box::new(0..g.edges.len())
    }
}

fn candidates(g: &Graph, cfg: &OracleConfig) -> u128 {
    let rotations: u128 = g
        .nbrs
        .iter()
        .map(|ns| (1..ns.len().max(1) as u128).product::<u128>())
        .product();
    rotations << free_edges(g, cfg).count()
}

pub fn enumerate_with(
    surface: SurfaceClass,
    n: usize,
    cfg: OracleConfig,
) -> Result<OracleResult, OracleError> {
    let graphs = if n >= 2 { connected_graphs(n) } else { Vec::new() };
    let total: u128 = graphs.iter().map(|g| candidates(g, &cfg)).sum();
    if total > cfg.budget {
        return Err(OracleError::BudgetExceeded {
            candidates: total,
            budget: cfg.budget,
        });
    }
    let chi = surface.euler_characteristic();
    let codes: FxHashSet<CanonicalCode> = graphs
        .par_iter()
        .filter(|g| {
            // Euler's formula needs at least one face.
            chi - n as i32 + g.edges.len() as i32 >= 1
        })
        .map_init(Canonicalizer::new, |canon, g| {
            let mut found = FxHashSet::default();
            let per_vertex: Vec<Vec<Vec<Vertex>>> =
                g.nbrs.iter().map(|ns| cyclic_orders(ns)).collect();
            let free: Vec<usize> = free_edges(g, &cfg).collect();
            let mut choice = vec![0usize; n];
            let mut rot: Vec<Vec<Vertex>> = per_vertex.iter().map(|r| r[0].clone()).collect();
            loop {
                for bits in 0u64..1 << free.len() {
                    let twisted: Vec<(Vertex, Vertex)> = (0..free.len())
                        .filter(|&i| bits >> i & 1 == 1)
                        .map(|i| g.edges[free[i]])
                        .collect();
                    let m = EmbeddedMap::from_neighbor_rotations(&rot, &twisted)
                        .expect("labelled candidate is a valid rotation system");
                    if m.surface_class() == surface {
                        found.insert(canon.code(&m));
                    }
                }
                // Advance the mixed-radix counter over rotation choices.
                let mut v = 0;
                while v < n && choice[v] + 1 == per_vertex[v].len() {
                    choice[v] = 0;
                    rot[v].clone_from(&per_vertex[v][0]);
                    v += 1;
                }
                if v == n {
                    break;
                }
                choice[v] += 1;
                rot[v].clone_from(&per_vertex[v][choice[v]]);
            }
            found
        })
        .reduce(FxHashSet::default, |mut a, b| {
            a.extend(b);
            a
        });
    let mut codes: Vec<_> = codes.into_iter().collect();
    codes.sort_unstable();
    Ok(OracleResult {
        surface,
        vertices: n,
        codes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n1() -> SurfaceClass {
        SurfaceClass::new(1, false).unwrap()
    }

    #[test]
    fn small_projective_counts() {
        let counts: Vec<usize> = (3..=4)
            .map(|n| enumerate_all_maps(n1(), n).unwrap().count())
            .collect();
        assert_eq!(counts, [1, 6]);
    }

    #[test]
    fn sphere_small() {
        // A path and a triangle on three vertices.
        assert_eq!(enumerate_all_maps(SurfaceClass::SPHERE, 3).unwrap().count(), 2);
        assert_eq!(enumerate_all_maps(SurfaceClass::SPHERE, 2).unwrap().count(), 1);
    }

    #[test]
    fn normalization_loses_nothing() {
        for s in [SurfaceClass::SPHERE, n1()] {
            let a = enumerate_all_maps(s, 4).unwrap();
            let full = OracleConfig {
                normalize_tree: false,
                ..OracleConfig::default()
            };
            let b = enumerate_with(s, 4, full).unwrap();
            assert_eq!(a.codes, b.codes);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let tiny = OracleConfig {
            budget: 10,
            ..OracleConfig::default()
        };
        assert!(matches!(
            enumerate_with(SurfaceClass::SPHERE, 4, tiny),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }
}
