//! C interface to `surfmaps`. Maps and generators are opaque handles owned
//! by the caller and released with the matching `*_free` function. Every
//! fallible call returns an [`SmStatus`]; the message for the most recent
//! failure on the calling thread is available from
//! [`sm_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, c_void, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::slice;

use surfmaps::classes::{embedding_class, is_triangulation, EmbeddingClass};
use surfmaps::pipeline::{ClassFilter, GenerationConfig, Generator};
use surfmaps::seeds::{load_seeds, projective_seeds, sphere_seed, SeedSet};
use surfmaps::smt::write_smt;
use surfmaps::{canonical_code, EmbeddedMap, GenerationError, SurfaceClass};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidMap = 2,
    InvalidArgument = 3,
    MissingSeeds = 4,
    SeedError = 5,
    ResourceLimit = 6,
    BufferTooSmall = 7,
    CallbackAborted = 8,
    Panic = 9,
}

/// Position of a map in the embedding hierarchy.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmEmbeddingClass {
    Open = 0,
    Closed = 1,
    Polyhedral = 2,
}

pub const SM_CLASS_ALL: u32 = 0;
pub const SM_CLASS_CLOSED_2CELL: u32 = 1;
pub const SM_CLASS_POLYHEDRAL: u32 = 2;
pub const SM_CLASS_TRIANGULATION: u32 = 3;
pub const SM_CLASS_FACE_IRREDUCIBLE: u32 = 4;
pub const SM_CLASS_IRREDUCIBLE: u32 = 5;

/// Opaque map handle.
pub struct SmMap(EmbeddedMap);

/// Opaque generator handle: a surface, a class filter and its seeds.
pub struct SmGenerator {
    seeds: Box<SeedSet>,
    cfg: GenerationConfig,
}

/// Called once per generated map. Returning nonzero stops generation with
/// [`SmStatus::CallbackAborted`]. The map is only valid during the call.
pub type SmMapCallback = Option<unsafe extern "C" fn(ctx: *mut c_void, map: *const SmMap) -> c_int>;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: SmStatus, msg: impl Into<String>) -> SmStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> SmStatus) -> SmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(SmStatus::Panic, "internal panic"),
    }
}

fn generation_status(e: &GenerationError) -> SmStatus {
    match e {
        GenerationError::MissingSeeds(_) => SmStatus::MissingSeeds,
        GenerationError::LevelCapExceeded { .. } => SmStatus::ResourceLimit,
        GenerationError::Io(_) => SmStatus::CallbackAborted,
        _ => SmStatus::InvalidArgument,
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a map from neighbour lists in rotation order. Vertex `v`'s
/// neighbours are `neighbors[offsets[v] .. offsets[v + 1]]`, so `offsets`
/// has `vertex_count + 1` entries. `twisted` holds `twisted_count` vertex
/// pairs whose edges get signature -1.
///
/// # Safety
/// Every pointer must be valid for the lengths described above; `twisted`
/// may be null when `twisted_count` is 0.
#[no_mangle]
pub unsafe extern "C" fn sm_map_from_rotations(
    vertex_count: usize,
    offsets: *const u32,
    neighbors: *const u32,
    twisted: *const u32,
    twisted_count: usize,
    out: *mut *mut SmMap,
) -> SmStatus {
    guard(|| {
        if offsets.is_null() || out.is_null() || (neighbors.is_null() && vertex_count > 0) {
            return fail(SmStatus::NullArgument, "null argument");
        }
        if twisted.is_null() && twisted_count > 0 {
            return fail(SmStatus::NullArgument, "null twisted list");
        }
        let offsets = slice::from_raw_parts(offsets, vertex_count + 1);
        if offsets.windows(2).any(|w| w[0] > w[1]) {
            return fail(SmStatus::InvalidArgument, "offsets must be nondecreasing");
        }
        let total = offsets[vertex_count] as usize;
        let nbrs = if total == 0 { &[][..] } else { slice::from_raw_parts(neighbors, total) };
        let rotations: Vec<Vec<usize>> = offsets
            .windows(2)
            .map(|w| nbrs[w[0] as usize..w[1] as usize].iter().map(|&u| u as usize).collect())
            .collect();
        let tw: Vec<(usize, usize)> = if twisted_count == 0 {
            Vec::new()
        } else {
            slice::from_raw_parts(twisted, 2 * twisted_count)
                .chunks(2)
                .map(|p| (p[0] as usize, p[1] as usize))
                .collect()
        };
        match EmbeddedMap::from_neighbor_rotations(&rotations, &tw) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(SmMap(m)));
                SmStatus::Ok
            }
            Err(e) => fail(SmStatus::InvalidMap, e.to_string()),
        }
    })
}

/// Copies a map.
///
/// # Safety
/// `map` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sm_map_clone(map: *const SmMap) -> *mut SmMap {
    match map.as_ref() {
        Some(m) => Box::into_raw(Box::new(SmMap(m.0.clone()))),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `map` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sm_map_free(map: *mut SmMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// # Safety
/// `map` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sm_map_vertex_count(map: *const SmMap) -> usize {
    map.as_ref().map_or(0, |m| m.0.vertex_count())
}

/// # Safety
/// `map` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sm_map_edge_count(map: *const SmMap) -> usize {
    map.as_ref().map_or(0, |m| m.0.edge_count())
}

/// # Safety
/// `map` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sm_map_face_count(map: *const SmMap) -> usize {
    map.as_ref().map_or(0, |m| m.0.face_count())
}

/// Writes the surface's Euler characteristic and orientability (0 or 1).
///
/// # Safety
/// `map` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn sm_map_surface(
    map: *const SmMap,
    euler_characteristic: *mut i32,
    orientable: *mut u8,
) -> SmStatus {
    guard(|| {
        let (Some(m), false, false) = (map.as_ref(), euler_characteristic.is_null(), orientable.is_null())
        else {
            return fail(SmStatus::NullArgument, "null argument");
        };
        let s = m.0.surface_class();
        *euler_characteristic = s.euler_characteristic();
        *orientable = u8::from(s.is_orientable());
        SmStatus::Ok
    })
}

/// # Safety
/// `map` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sm_map_embedding_class(
    map: *const SmMap,
    out: *mut SmEmbeddingClass,
) -> SmStatus {
    guard(|| {
        let (Some(m), false) = (map.as_ref(), out.is_null()) else {
            return fail(SmStatus::NullArgument, "null argument");
        };
        *out = match embedding_class(&m.0) {
            EmbeddingClass::Open2Cell => SmEmbeddingClass::Open,
            EmbeddingClass::Closed2Cell => SmEmbeddingClass::Closed,
            EmbeddingClass::Polyhedral => SmEmbeddingClass::Polyhedral,
        };
        SmStatus::Ok
    })
}

/// 1 if the map is a triangulation, 0 otherwise (including a null handle).
///
/// # Safety
/// `map` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sm_map_is_triangulation(map: *const SmMap) -> c_int {
    map.as_ref().map_or(0, |m| c_int::from(is_triangulation(&m.0)))
}

/// Writes the canonical code into `buf`. The required length is always
/// stored in `len`; if `capacity` is too small nothing else is written and
/// [`SmStatus::BufferTooSmall`] is returned. Two maps are isomorphic iff
/// their codes are equal.
///
/// # Safety
/// `map` and `len` must be valid; `buf` must hold `capacity` bytes.
#[no_mangle]
pub unsafe extern "C" fn sm_map_canonical_code(
    map: *const SmMap,
    buf: *mut u8,
    capacity: usize,
    len: *mut usize,
) -> SmStatus {
    guard(|| {
        let (Some(m), false) = (map.as_ref(), len.is_null()) else {
            return fail(SmStatus::NullArgument, "null argument");
        };
        let code = canonical_code(&m.0);
        let bytes = code.as_bytes();
        *len = bytes.len();
        if capacity < bytes.len() || buf.is_null() {
            return fail(SmStatus::BufferTooSmall, "buffer too small for canonical code");
        }
        ptr::copy_nonoverlapping(bytes.as_ptr(), buf, bytes.len());
        SmStatus::Ok
    })
}

/// 1 if the maps are isomorphic (reflections included), 0 if not or if
/// either handle is null.
///
/// # Safety
/// Both handles must be live or null.
#[no_mangle]
pub unsafe extern "C" fn sm_map_is_isomorphic(a: *const SmMap, b: *const SmMap) -> c_int {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => c_int::from(canonical_code(&a.0) == canonical_code(&b.0)),
        _ => 0,
    }
}

/// Renders the map in the SMT text format. Release with
/// [`sm_string_free`].
///
/// # Safety
/// `map` must be live; `name` must be a NUL-terminated string or null.
#[no_mangle]
pub unsafe extern "C" fn sm_map_to_smt(map: *const SmMap, name: *const c_char) -> *mut c_char {
    let Some(m) = map.as_ref() else {
        set_error("null map");
        return ptr::null_mut();
    };
    let name = if name.is_null() {
        "map".into()
    } else {
        CStr::from_ptr(name).to_string_lossy()
    };
    CString::new(write_smt(&name, &m.0)).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a generator for one surface and class (one of the `SM_CLASS_*`
/// constants). `seed_path` names an SMT file of irreducible triangulations;
/// it may be null for the sphere and the projective plane.
///
/// # Safety
/// `seed_path` must be NUL-terminated or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sm_generator_new(
    euler_characteristic: i32,
    orientable: u8,
    class: u32,
    seed_path: *const c_char,
    out: *mut *mut SmGenerator,
) -> SmStatus {
    guard(|| {
        if out.is_null() {
            return fail(SmStatus::NullArgument, "null argument");
        }
        let surface = match SurfaceClass::new(euler_characteristic, orientable != 0) {
            Ok(s) => s,
            Err(e) => return fail(SmStatus::InvalidArgument, e.to_string()),
        };
        let class = match class {
            SM_CLASS_ALL => ClassFilter::All,
            SM_CLASS_CLOSED_2CELL => ClassFilter::Closed2Cell,
            SM_CLASS_POLYHEDRAL => ClassFilter::Polyhedral,
            SM_CLASS_TRIANGULATION => ClassFilter::Triangulation,
            SM_CLASS_FACE_IRREDUCIBLE => ClassFilter::FaceIrreducible,
            SM_CLASS_IRREDUCIBLE => ClassFilter::Irreducible,
            other => return fail(SmStatus::InvalidArgument, format!("unknown class {other}")),
        };
        let seeds = if !seed_path.is_null() {
            let path = CStr::from_ptr(seed_path).to_string_lossy().into_owned();
            load_seeds(Path::new(&path), surface)
        } else if surface == SurfaceClass::SPHERE {
            Ok(sphere_seed())
        } else if surface == SurfaceClass::PROJECTIVE_PLANE {
            projective_seeds()
        } else {
            return fail(SmStatus::MissingSeeds, format!("no seeds available for {surface}"));
        };
        match seeds {
            Ok(seeds) => {
                let cfg = GenerationConfig::new(surface, class);
                *out = Box::into_raw(Box::new(SmGenerator {
                    seeds: Box::new(seeds),
                    cfg,
                }));
                SmStatus::Ok
            }
            Err(e) => fail(SmStatus::SeedError, e.to_string()),
        }
    })
}

/// Worker threads for later runs; 0 uses all cores.
///
/// # Safety
/// `gen` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sm_generator_set_threads(gen: *mut SmGenerator, threads: usize) -> SmStatus {
    match gen.as_mut() {
        Some(g) => {
            g.cfg.threads = threads;
            SmStatus::Ok
        }
        None => fail(SmStatus::NullArgument, "null generator"),
    }
}

/// # Safety
/// `gen` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sm_generator_free(gen: *mut SmGenerator) {
    if !gen.is_null() {
        drop(Box::from_raw(gen));
    }
}

/// Generates every map with `n` vertices of the generator's class, calling
/// `callback` for each, and stores the nine count-table cells in `counts`
/// (irreducible, face-irreducible and maps, each as three columns). Cells
/// the run did not compute are set to `UINT64_MAX`. `callback` and `counts`
/// may be null.
///
/// # Safety
/// `gen` must be live; `counts` must hold 9 values when non-null.
#[no_mangle]
pub unsafe extern "C" fn sm_generator_run(
    gen: *const SmGenerator,
    n: usize,
    callback: SmMapCallback,
    ctx: *mut c_void,
    counts: *mut u64,
) -> SmStatus {
    guard(|| {
        let Some(g) = gen.as_ref() else {
            return fail(SmStatus::NullArgument, "null generator");
        };
        if n < 3 {
            return fail(SmStatus::InvalidArgument, "vertex count must be at least 3");
        }
        let mut runner = match Generator::new(g.cfg.clone(), &g.seeds) {
            Ok(r) => r,
            Err(e) => return fail(generation_status(&e), e.to_string()),
        };
        let row = runner.run(n, |m| {
            if let Some(cb) = callback {
                let handle = SmMap(m.clone());
                if cb(ctx, &handle) != 0 {
                    return Err(std::io::Error::other("callback aborted"));
                }
            }
            Ok(())
        });
        match row {
            Ok(row) => {
                if !counts.is_null() {
                    let out = slice::from_raw_parts_mut(counts, 9);
                    for (o, c) in out.iter_mut().zip(row.cells()) {
                        *o = c.unwrap_or(u64::MAX);
                    }
                }
                SmStatus::Ok
            }
            Err(e) => fail(generation_status(&e), e.to_string()),
        }
    })
}
