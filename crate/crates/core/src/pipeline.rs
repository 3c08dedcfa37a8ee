//! Generation of all maps with a given number of vertices: vertex splitting
//! from irreducible maps up to face-irreducible maps, then edge removal from
//! triangular faces. Isomorphs are rejected with per-level sets of canonical
//! codes.

use std::collections::BTreeMap;
use std::fmt;
use std::io;

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::classes::{embedding_class, is_closed_2cell, is_triangulation, EmbeddingClass};
use crate::embedding::{Adjacency, EmbeddedMap, SurfaceClass, Vertex};
use crate::error::GenerationError;
use crate::flags::{CanonicalCode, Canonicalizer};
use crate::seeds::SeedSet;
use crate::transforms::{is_irreducible_face, removable_with, split_vertex};

/// Which maps a run emits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassFilter {
    All,
    Closed2Cell,
    Polyhedral,
    Triangulation,
    FaceIrreducible,
    Irreducible,
}

impl ClassFilter {
    pub fn name(self) -> &'static str {
        match self {
            ClassFilter::All => "all",
            ClassFilter::Closed2Cell => "closed2cell",
            ClassFilter::Polyhedral => "polyhedral",
            ClassFilter::Triangulation => "triangulation",
            ClassFilter::FaceIrreducible => "face-irreducible",
            ClassFilter::Irreducible => "irreducible",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GenerationConfig {
    pub surface: SurfaceClass,
    pub class: ClassFilter,
    /// Sort every level by canonical code so output order does not depend
    /// on scheduling or hashing.
    pub deterministic: bool,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    /// Approximate memory bound for one level of the dedup store, in bytes.
    pub level_cap: Option<usize>,
}

impl GenerationConfig {
    pub fn new(surface: SurfaceClass, class: ClassFilter) -> Self {
        GenerationConfig {
            surface,
            class,
            deterministic: true,
            threads: 0,
            level_cap: None,
        }
    }
}

/// One row of a count table. `None` marks a column the run did not compute.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CountRow {
    pub vertices: usize,
    /// Triangular, closed 2-cell, open 2-cell.
    pub irreducible: [Option<u64>; 3],
    /// Triangular, closed 2-cell, open 2-cell.
    pub face_irreducible: [Option<u64>; 3],
    /// Polyhedral, closed 2-cell, open 2-cell.
    pub maps: [Option<u64>; 3],
}

impl CountRow {
    pub fn cells(&self) -> [Option<u64>; 9] {
        let mut out = [None; 9];
        out[..3].copy_from_slice(&self.irreducible);
        out[3..6].copy_from_slice(&self.face_irreducible);
        out[6..].copy_from_slice(&self.maps);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub surface: SurfaceClass,
    pub rows: Vec<CountRow>,
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# maps on {}", self.surface)?;
        writeln!(
            f,
            "{:>3} | {:>5} {:>7} {:>7} | {:>9} {:>9} {:>9} | {:>10} {:>12} {:>12}",
            "n", "tri", "closed", "open", "tri", "closed", "open", "polyhedral", "closed", "open"
        )?;
        writeln!(
            f,
            "{:>3} | {:^21} | {:^29} | {:^36}",
            "", "irreducible", "face-irreducible", "maps"
        )?;
        for r in &self.rows {
            let c: Vec<String> = r
                .cells()
                .iter()
                .map(|x| x.map_or_else(|| "-".to_string(), |v| v.to_string()))
                .collect();
            writeln!(
                f,
                "{:>3} | {:>5} {:>7} {:>7} | {:>9} {:>9} {:>9} | {:>10} {:>12} {:>12}",
                r.vertices, c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7], c[8]
            )?;
        }
        Ok(())
    }
}

fn level_bytes(count: usize, code_len: usize) -> usize {
    // Boxed code plus hash-set slot overhead.
    count * (code_len + 40)
}

fn check_cap(
    cfg: &GenerationConfig,
    count: usize,
    code_len: usize,
    vertices: usize,
    edges: usize,
) -> Result<(), GenerationError> {
    match cfg.level_cap {
        Some(cap) if level_bytes(count, code_len) > cap => Err(GenerationError::LevelCapExceeded {
            vertices,
            edges,
            cap,
        }),
        _ => Ok(()),
    }
}

fn sorted(set: FxHashSet<CanonicalCode>, deterministic: bool) -> Vec<CanonicalCode> {
    let mut v: Vec<_> = set.into_iter().collect();
    if deterministic {
        v.sort_unstable();
    }
    v
}

fn pool(cfg: &GenerationConfig) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .expect("thread pool")
}

/// Faces through `a` or `b` are triangles or irreducible.
fn faces_near_are_irreducible(m: &EmbeddedMap, a: Vertex, b: Vertex) -> bool {
    let mut adj: Option<Adjacency> = None;
    m.trace_faces().iter().all(|f| {
        if f.size() == 3 || !f.vertices.iter().any(|&x| x == a || x == b) {
            return true;
        }
        let adj = adj.get_or_insert_with(|| m.adjacency());
        is_irreducible_face(adj, f)
    })
}

/// Every child of `m` under vertex splitting that stays face-irreducible.
fn split_children(m: &EmbeddedMap, canon: &mut Canonicalizer, out: &mut Vec<CanonicalCode>) {
    let nv = m.vertex_count();
    for v in 0..m.vertex_count() {
        let darts: Vec<_> = m.rotation(v).collect();
        for (i, &ha) in darts.iter().enumerate() {
            for &hb in &darts[i + 1..] {
                let child = split_vertex(m, ha, hb).expect("hinges at one vertex");
                if faces_near_are_irreducible(&child, v, nv) {
                    out.push(canon.code(&child));
                }
            }
        }
    }
}

/// Face-irreducible maps for every vertex count up to `max_n`, as sorted
/// canonical codes. With `triangulations_only` the roots are restricted to
/// the triangulation seeds, so every level holds exactly the triangulations.
pub fn expand_to_face_irreducible(
    seeds: &SeedSet,
    max_n: usize,
    triangulations_only: bool,
    cfg: &GenerationConfig,
) -> Result<BTreeMap<usize, Vec<CanonicalCode>>, GenerationError> {
    let roots: &[EmbeddedMap] = if triangulations_only {
        &seeds.triangulations
    } else {
        &seeds.irreducible
    };
    let mut canon = Canonicalizer::new();
    let mut by_n: BTreeMap<usize, FxHashSet<CanonicalCode>> = BTreeMap::new();
    for m in roots.iter().filter(|m| m.vertex_count() <= max_n) {
        by_n.entry(m.vertex_count())
            .or_default()
            .insert(canon.code(m));
    }
    let mut out = BTreeMap::new();
    let Some(&lo) = by_n.keys().next() else {
        return Ok(out);
    };
    let pool = pool(cfg);
    for k in lo..=max_n {
        let level = sorted(by_n.remove(&k).unwrap_or_default(), true);
        if k < max_n && !level.is_empty() {
            let children: Vec<Vec<CanonicalCode>> = pool.install(|| {
                level
                    .par_iter()
                    .map_init(Canonicalizer::new, |canon, code| {
                        let mut kids = Vec::new();
                        split_children(&code.to_map(), canon, &mut kids);
                        kids
                    })
                    .collect()
            });
            let next = by_n.entry(k + 1).or_default();
            for c in children.into_iter().flatten() {
                next.insert(c);
            }
            let len = next.iter().next().map_or(0, |c| c.as_bytes().len());
            check_cap(cfg, next.len(), len, k + 1, 0)?;
        }
        out.insert(k, level);
    }
    Ok(out)
}

/// Classification of an emitted map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapInfo {
    pub class: EmbeddingClass,
}

/// Explores edge removals from the face-irreducible `roots` (all with the
/// same vertex count), breadth first by decreasing edge count. Each map
/// reachable by removing edges of triangular faces is visited once, in
/// canonical form. When `prune` is set, maps below that class in the
/// hierarchy are neither visited nor expanded; removing an edge never moves
/// a map up the hierarchy.
pub fn expand_edge_removals<F>(
    roots: &[CanonicalCode],
    prune: Option<EmbeddingClass>,
    cfg: &GenerationConfig,
    mut visit: F,
) -> Result<(), GenerationError>
where
    F: FnMut(&EmbeddedMap, MapInfo) -> io::Result<()>,
{
    const CHUNK: usize = 4096;
    let mut by_edges: BTreeMap<usize, FxHashSet<CanonicalCode>> = BTreeMap::new();
    for c in roots {
        by_edges.entry(c.edge_count()).or_default().insert(c.clone());
    }
    let pool = pool(cfg);
    let vertices = roots.first().map_or(0, |c| c.to_map().vertex_count());
    while let Some((edges, level)) = by_edges.pop_last() {
        let level = sorted(level, cfg.deterministic);
        let mut next: FxHashSet<CanonicalCode> = by_edges.remove(&(edges - 1)).unwrap_or_default();
        for chunk in level.chunks(CHUNK) {
            let done: Vec<(EmbeddedMap, EmbeddingClass, Vec<CanonicalCode>)> = pool.install(|| {
                chunk
                    .par_iter()
                    .map_init(Canonicalizer::new, |canon, code| {
                        let m = code.to_map();
                        let class = embedding_class(&m);
                        let mut kids = Vec::new();
                        if prune.is_none_or(|p| class >= p) {
                            let labels = m.face_labels();
                            let mut w = m.clone();
                            for e in 0..m.edge_count() {
                                if removable_with(&labels, e) {
                                    w.unlink_edge(e);
                                    kids.push(canon.code(&w));
                                    w.clone_from(&m);
                                }
                            }
                        }
                        (m, class, kids)
                    })
                    .collect()
            });
            for (m, class, kids) in done {
                if prune.is_none_or(|p| class >= p) {
                    visit(&m, MapInfo { class })?;
                }
                next.extend(kids);
            }
            let len = next.iter().next().map_or(0, |c| c.as_bytes().len());
            check_cap(cfg, next.len(), len, vertices, edges - 1)?;
        }
        if !next.is_empty() {
            by_edges.insert(edges - 1, next);
        }
    }
    Ok(())
}

fn irreducible_cells(seeds: &SeedSet, n: usize) -> [Option<u64>; 3] {
    let mut c = [0u64; 3];
    for m in seeds.irreducible.iter().filter(|m| m.vertex_count() == n) {
        c[0] += u64::from(is_triangulation(m));
        c[1] += u64::from(is_closed_2cell(m));
        c[2] += 1;
    }
    c.map(Some)
}

/// Shared state for generating several vertex counts in one run.
pub struct Generator<'a> {
    cfg: GenerationConfig,
    seeds: &'a SeedSet,
    face_irreducible: BTreeMap<usize, Vec<CanonicalCode>>,
    built_to: usize,
}

impl<'a> Generator<'a> {
    pub fn new(cfg: GenerationConfig, seeds: &'a SeedSet) -> Result<Self, GenerationError> {
        if seeds.surface != cfg.surface {
            return Err(GenerationError::SurfaceMismatch {
                found: seeds.surface,
                requested: cfg.surface,
            });
        }
        if seeds.irreducible.is_empty() {
            return Err(GenerationError::MissingSeeds(cfg.surface));
        }
        Ok(Generator {
            cfg,
            seeds,
            face_irreducible: BTreeMap::new(),
            built_to: 0,
        })
    }

    pub fn config(&self) -> &GenerationConfig {
        &self.cfg
    }

    fn face_irreducible_level(&mut self, n: usize) -> Result<&[CanonicalCode], GenerationError> {
        if n > self.built_to {
            let tri_only = self.cfg.class == ClassFilter::Triangulation;
            self.face_irreducible = expand_to_face_irreducible(self.seeds, n, tri_only, &self.cfg)?;
            self.built_to = n;
        }
        Ok(self.face_irreducible.get(&n).map_or(&[], |v| v.as_slice()))
    }

    /// Generates the maps with `n` vertices of the configured class, passing
    /// each to `sink`, and returns their counts.
    pub fn run<F>(&mut self, n: usize, mut sink: F) -> Result<CountRow, GenerationError>
    where
        F: FnMut(&EmbeddedMap) -> io::Result<()>,
    {
        let class = self.cfg.class;
        let mut row = CountRow {
            vertices: n,
            irreducible: irreducible_cells(self.seeds, n),
            ..CountRow::default()
        };
        if class == ClassFilter::Irreducible {
            for m in self.seeds.irreducible.iter().filter(|m| m.vertex_count() == n) {
                sink(m)?;
            }
            return Ok(row);
        }
        let level = self.face_irreducible_level(n)?.to_vec();
        let mut fi = [0u64; 3];
        for code in &level {
            let m = code.to_map();
            let tri = is_triangulation(&m);
            fi[0] += u64::from(tri);
            if class != ClassFilter::Triangulation {
                fi[1] += u64::from(is_closed_2cell(&m));
            }
            fi[2] += 1;
            match class {
                ClassFilter::FaceIrreducible => sink(&m)?,
                ClassFilter::Triangulation if tri => sink(&m)?,
                _ => {}
            }
        }
        if class == ClassFilter::Triangulation {
            row.face_irreducible = [Some(fi[0]), None, None];
            return Ok(row);
        }
        row.face_irreducible = fi.map(Some);
        if class == ClassFilter::FaceIrreducible {
            return Ok(row);
        }
        let prune = match class {
            ClassFilter::Closed2Cell => Some(EmbeddingClass::Closed2Cell),
            ClassFilter::Polyhedral => Some(EmbeddingClass::Polyhedral),
            _ => None,
        };
        let mut counts = [0u64; 3];
        expand_edge_removals(&level, prune, &self.cfg, |m, info| {
            counts[0] += u64::from(info.class == EmbeddingClass::Polyhedral);
            counts[1] += u64::from(info.class >= EmbeddingClass::Closed2Cell);
            counts[2] += 1;
            let emit = match class {
                ClassFilter::Closed2Cell => info.class >= EmbeddingClass::Closed2Cell,
                ClassFilter::Polyhedral => info.class == EmbeddingClass::Polyhedral,
                _ => true,
            };
            if emit {
                sink(m)
            } else {
                Ok(())
            }
        })?;
        row.maps = match class {
            ClassFilter::All => counts.map(Some),
            ClassFilter::Closed2Cell => [Some(counts[0]), Some(counts[1]), None],
            _ => [Some(counts[0]), None, None],
        };
        Ok(row)
    }
}

/// Runs [`Generator::run`] for every `n` in `range`, discarding the maps.
pub fn count_table(
    cfg: &GenerationConfig,
    seeds: &SeedSet,
    range: std::ops::RangeInclusive<usize>,
) -> Result<CountTable, GenerationError> {
    let mut g = Generator::new(cfg.clone(), seeds)?;
    let mut rows = Vec::new();
    for n in range {
        rows.push(g.run(n, |_| Ok(()))?);
    }
    Ok(CountTable {
        surface: cfg.surface,
        rows,
    })
}

/// Collects the canonical codes of all generated maps with `n` vertices.
pub fn generate_codes(
    cfg: &GenerationConfig,
    seeds: &SeedSet,
    n: usize,
) -> Result<Vec<CanonicalCode>, GenerationError> {
    let mut g = Generator::new(cfg.clone(), seeds)?;
    let mut canon = Canonicalizer::new();
    let mut out = Vec::new();
    g.run(n, |m| {
        out.push(canon.code(m));
        Ok(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeds::{projective_seeds, sphere_seed};

    fn row(cells: [u64; 9]) -> [Option<u64>; 9] {
        cells.map(Some)
    }

    #[test]
    fn projective_rows_3_to_6() {
        let seeds = projective_seeds().unwrap();
        let cfg = GenerationConfig::new(SurfaceClass::PROJECTIVE_PLANE, ClassFilter::All);
        let t = count_table(&cfg, &seeds, 3..=6).unwrap();
        let cells: Vec<_> = t.rows.iter().map(|r| r.cells()).collect();
        assert_eq!(cells[0], row([0, 0, 1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cells[1], row([0, 1, 1, 0, 1, 2, 0, 1, 6]));
        assert_eq!(cells[2], row([0, 2, 2, 0, 2, 4, 0, 9, 65]));
        assert_eq!(cells[3], row([1, 2, 2, 1, 5, 11, 1, 188, 1128]));
    }

    #[test]
    fn sphere_small_rows() {
        let seeds = sphere_seed();
        let cfg = GenerationConfig::new(SurfaceClass::SPHERE, ClassFilter::All);
        let t = count_table(&cfg, &seeds, 3..=4).unwrap();
        assert_eq!(t.rows[0].maps[2], Some(2));
    }

    #[test]
    fn level_cap_aborts() {
        let seeds = projective_seeds().unwrap();
        let mut cfg = GenerationConfig::new(SurfaceClass::PROJECTIVE_PLANE, ClassFilter::All);
        cfg.level_cap = Some(1000);
        assert!(matches!(
            count_table(&cfg, &seeds, 6..=6),
            Err(GenerationError::LevelCapExceeded { .. })
        ));
    }
}
