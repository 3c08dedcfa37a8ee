//! Flag systems and canonical codes.
//!
//! Two maps are homeomorphic (reflections included) exactly when their flag
//! systems are isomorphic. The canonical code numbers flags breadth-first
//! from a start flag, visiting the involutions in the fixed order
//! `s0, s1, s2`, and records the number of each neighbour; the code of a map
//! is the lexicographically least such record.
//!
//! Only start flags from one isomorphism-invariant class are tried: flags
//! are keyed by local degrees and face sizes, and the key class with the
//! fewest members (ties to the smallest key) supplies the starts.

use std::fmt;

use crate::embedding::{EmbeddedMap, RawEmbedding};
use crate::error::MapError;

/// Three fixed-point-free involutions on `4 * edge_count` flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagSystem {
    pub s0: Vec<u32>,
    pub s1: Vec<u32>,
    pub s2: Vec<u32>,
}

impl FlagSystem {
    pub fn len(&self) -> usize {
        self.s0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s0.is_empty()
    }

    /// Number of orbits of the subgroup generated by `s_i` and `s_j`.
    pub fn orbit_count(&self, i: usize, j: usize) -> usize {
        let inv = [&self.s0, &self.s1, &self.s2];
        let (a, b) = (inv[i], inv[j]);
        let mut seen = vec![false; self.len()];
        let mut count = 0;
        for f in 0..self.len() {
            if seen[f] {
                continue;
            }
            count += 1;
            let mut stack = vec![f];
            seen[f] = true;
            while let Some(g) = stack.pop() {
                for h in [a[g] as usize, b[g] as usize] {
                    if !seen[h] {
                        seen[h] = true;
                        stack.push(h);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(g) = stack.pop() {
            for h in [self.s0[g], self.s1[g], self.s2[g]] {
                let h = h as usize;
                if !seen[h] {
                    seen[h] = true;
                    count += 1;
                    stack.push(h);
                }
            }
        }
        count == self.len()
    }

    /// Rebuilds a signed rotation system. Vertices are numbered by their
    /// smallest flag; each vertex takes its local orientation from that flag.
    pub fn to_map(&self) -> Result<EmbeddedMap, MapError> {
        let nf = self.len();
        const UNSET: usize = usize::MAX;
        let mut dart_of = vec![UNSET; nf];
        let mut side = vec![0u8; nf];
        let mut side0_flag = Vec::with_capacity(nf / 2);
        let mut vertex_darts: Vec<Vec<usize>> = Vec::new();
        for g0 in 0..nf {
            if dart_of[g0] != UNSET {
                continue;
            }
            let mut darts = Vec::new();
            let mut g = g0;
            loop {
                let t = side0_flag.len();
                side0_flag.push(g);
                let g2 = self.s2[g] as usize;
                if dart_of[g] != UNSET || dart_of[g2] != UNSET {
                    return Err(inconsistent());
                }
                dart_of[g] = t;
                dart_of[g2] = t;
                side[g] = 0;
                side[g2] = 1;
                darts.push(t);
                g = self.s2[self.s1[g] as usize] as usize;
                if g == g0 {
                    break;
                }
            }
            vertex_darts.push(darts);
        }
        let tcount = side0_flag.len();
        let mut final_id = vec![UNSET; tcount];
        let mut signatures = Vec::with_capacity(tcount / 2);
        for t in 0..tcount {
            if final_id[t] != UNSET {
                continue;
            }
            let g = side0_flag[t];
            let h = self.s0[g] as usize;
            let u = dart_of[h];
            if u == t || final_id[u] != UNSET {
                return Err(inconsistent());
            }
            let k = signatures.len();
            final_id[t] = 2 * k;
            final_id[u] = 2 * k + 1;
            signatures.push(if side[h] == 0 { -1 } else { 1 });
        }
        let raw = RawEmbedding {
            rotations: vertex_darts
                .iter()
                .map(|ds| ds.iter().map(|&t| final_id[t]).collect())
                .collect(),
            signatures,
        };
        EmbeddedMap::from_raw(&raw)
    }

    pub fn from_code(code: &CanonicalCode) -> FlagSystem {
        let entries = code.entries();
        let nf = entries.len() / 3;
        let mut fs = FlagSystem {
            s0: Vec::with_capacity(nf),
            s1: Vec::with_capacity(nf),
            s2: Vec::with_capacity(nf),
        };
        for chunk in entries.chunks_exact(3) {
            fs.s0.push(chunk[0]);
            fs.s1.push(chunk[1]);
            fs.s2.push(chunk[2]);
        }
        fs
    }
}

fn inconsistent() -> MapError {
    MapError::Invalid(crate::embedding::ValidationReport {
        outcomes: vec![crate::embedding::CheckOutcome {
            check: crate::embedding::Check::DartInvolution,
            passed: false,
            detail: Some("flag involutions are inconsistent".into()),
        }],
    })
}

pub fn flags_of(m: &EmbeddedMap) -> FlagSystem {
    let nf = m.flag_count();
    FlagSystem {
        s0: (0..nf).map(|f| m.s0(f) as u32).collect(),
        s1: (0..nf).map(|f| m.s1(f) as u32).collect(),
        s2: (0..nf).map(|f| m.s2(f) as u32).collect(),
    }
}

/// Byte string identifying a map up to homeomorphism.
///
/// Layout: one width byte (1 or 2), then `3 * flag_count` entries of that
/// many bytes each, big-endian.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Box<[u8]>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: &[u8]) -> Self {
        CanonicalCode(bytes.into())
    }

    pub fn flag_count(&self) -> usize {
        (self.0.len() - 1) / (3 * self.0[0] as usize)
    }

    pub fn edge_count(&self) -> usize {
        self.flag_count() / 4
    }

    pub fn entries(&self) -> Vec<u32> {
        let width = self.0[0] as usize;
        self.0[1..]
            .chunks_exact(width)
            .map(|c| c.iter().fold(0u32, |acc, &b| (acc << 8) | b as u32))
            .collect()
    }

    /// The representative map this code describes.
    pub fn to_map(&self) -> EmbeddedMap {
        FlagSystem::from_code(self)
            .to_map()
            .expect("canonical codes describe valid maps")
    }

    fn encode(entries: &[u32], flag_count: usize) -> Self {
        let width = if flag_count <= 256 { 1 } else { 2 };
        let mut out = Vec::with_capacity(1 + width * entries.len());
        out.push(width as u8);
        for &x in entries {
            if width == 1 {
                out.push(x as u8);
            } else {
                out.extend_from_slice(&(x as u16).to_be_bytes());
            }
        }
        CanonicalCode(out.into_boxed_slice())
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode(")?;
        for b in self.0.iter().take(24) {
            write!(f, "{b:02x}")?;
        }
        if self.0.len() > 24 {
            write!(f, "..+{}", self.0.len() - 24)?;
        }
        write!(f, ")")
    }
}

/// Reusable scratch space for canonical codes.
#[derive(Default)]
pub struct Canonicalizer {
    s0: Vec<u32>,
    s1: Vec<u32>,
    keys: Vec<u64>,
    sorted: Vec<u64>,
    starts: Vec<u32>,
    number: Vec<u32>,
    stamp: Vec<u32>,
    queue: Vec<u32>,
    best: Vec<u32>,
    face_of: Vec<u32>,
    face_size: Vec<u32>,
    current: u32,
}

impl Canonicalizer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn code(&mut self, m: &EmbeddedMap) -> CanonicalCode {
        let nf = m.flag_count();
        self.prepare(m);
        self.select_starts(m);
        self.best.clear();
        self.best.resize(3 * nf, 0);
        let starts = std::mem::take(&mut self.starts);
        let mut first = true;
        for &s in &starts {
            self.run(s as usize, nf, first);
            first = false;
        }
        self.starts = starts;
        CanonicalCode::encode(&self.best, nf)
    }

    fn prepare(&mut self, m: &EmbeddedMap) {
        let nf = m.flag_count();
        self.s0.clear();
        self.s1.clear();
        self.s0.extend((0..nf).map(|f| m.s0(f) as u32));
        self.s1.extend((0..nf).map(|f| m.s1(f) as u32));
        if self.number.len() < nf {
            self.number.resize(nf, 0);
            self.stamp.resize(nf, 0);
            self.queue.resize(nf, 0);
        }
        // face ids along s1∘s0 orbits
        self.face_of.clear();
        self.face_of.resize(nf, u32::MAX);
        self.face_size.clear();
        for f in 0..nf {
            if self.face_of[f] != u32::MAX {
                continue;
            }
            let id = self.face_size.len() as u32;
            let mut g = f;
            let mut len = 0;
            loop {
                self.face_of[g] = id;
                let h = self.s0[g] as usize;
                self.face_of[h] = id;
                len += 1;
                g = self.s1[h] as usize;
                if g == f {
                    break;
                }
            }
            self.face_size.push(len);
        }
    }

    fn select_starts(&mut self, m: &EmbeddedMap) {
        let nf = m.flag_count();
        self.keys.clear();
        for f in 0..nf {
            let d = f >> 1;
            let dv = m.degree(m.vertex_of(d)).min(255) as u64;
            let dw = m.degree(m.head(d)).min(255) as u64;
            let here = self.face_size[self.face_of[f] as usize].min(0xffff) as u64;
            let there = self.face_size[self.face_of[f ^ 1] as usize].min(0xffff) as u64;
            self.keys.push((dv << 48) | (dw << 40) | (here << 16) | there);
        }
        self.sorted.clear();
        self.sorted.extend_from_slice(&self.keys);
        self.sorted.sort_unstable();
        let mut best_key = 0;
        let mut best_count = usize::MAX;
        let mut i = 0;
        while i < self.sorted.len() {
            let mut j = i;
            while j < self.sorted.len() && self.sorted[j] == self.sorted[i] {
                j += 1;
            }
            if j - i < best_count {
                best_count = j - i;
                best_key = self.sorted[i];
            }
            i = j;
        }
        self.starts.clear();
        for f in 0..nf {
            if self.keys[f] == best_key {
                self.starts.push(f as u32);
            }
        }
    }

    /// Breadth-first numbering from `start`, compared on the fly against the
    /// best record so far.
    fn run(&mut self, start: usize, nf: usize, mut better: bool) {
        self.current = self.current.wrapping_add(1);
        if self.current == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.current = 1;
        }
        let cur = self.current;
        let (s0, s1) = (&self.s0, &self.s1);
        let (number, stamp, queue, best) = (
            &mut self.number,
            &mut self.stamp,
            &mut self.queue,
            &mut self.best,
        );
        stamp[start] = cur;
        number[start] = 0;
        queue[0] = start as u32;
        let mut next = 1u32;
        for i in 0..nf {
            let f = queue[i] as usize;
            let nbrs = [s0[f], s1[f], (f ^ 1) as u32];
            for (j, &g) in nbrs.iter().enumerate() {
                let g = g as usize;
                let num = if stamp[g] == cur {
                    number[g]
                } else {
                    stamp[g] = cur;
                    number[g] = next;
                    queue[next as usize] = g as u32;
                    next += 1;
                    next - 1
                };
                let pos = 3 * i + j;
                if better {
                    best[pos] = num;
                } else if num != best[pos] {
                    if num > best[pos] {
                        return;
                    }
                    better = true;
                    best[pos] = num;
                }
            }
        }
    }
}

pub fn canonical_code(m: &EmbeddedMap) -> CanonicalCode {
    Canonicalizer::new().code(m)
}

pub fn is_isomorphic(a: &EmbeddedMap, b: &EmbeddedMap) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_code(a) == canonical_code(b)
}

/// Relabelled copy of `m` determined only by its isomorphism class.
pub fn canonical_form(m: &EmbeddedMap) -> EmbeddedMap {
    canonical_code(m).to_map()
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
    fn k4_flag_orbits() {
        let fs = flags_of(&k4());
        assert_eq!(fs.len(), 24);
        assert_eq!(fs.orbit_count(1, 2), 4);
        assert_eq!(fs.orbit_count(0, 2), 6);
        assert_eq!(fs.orbit_count(0, 1), 4);
        assert!(fs.is_connected());
    }

    #[test]
    fn flag_system_round_trips() {
        let m = k4().vertex_flip(1);
        let back = flags_of(&m).to_map().unwrap();
        assert_eq!(canonical_code(&back), canonical_code(&m));
    }

    #[test]
    fn decoded_code_reproduces_itself() {
        let c = canonical_code(&k4());
        let m = c.to_map();
        assert_eq!(canonical_code(&m), c);
        assert_eq!(c.edge_count(), 6);
    }

    #[test]
    fn flips_and_mirror_preserve_code() {
        let m = k4();
        let c = canonical_code(&m);
        for v in 0..4 {
            assert_eq!(canonical_code(&m.vertex_flip(v)), c);
        }
        assert_eq!(canonical_code(&m.mirror()), c);
    }

    #[test]
    fn path_and_triangle_differ() {
        let path = EmbeddedMap::from_neighbor_rotations(&[vec![1], vec![0, 2], vec![1]], &[])
            .unwrap();
        let tri =
            EmbeddedMap::from_neighbor_rotations(&[vec![1, 2], vec![2, 0], vec![0, 1]], &[])
                .unwrap();
        assert!(!is_isomorphic(&path, &tri));
        assert_ne!(canonical_code(&path), canonical_code(&tri));
    }
}
