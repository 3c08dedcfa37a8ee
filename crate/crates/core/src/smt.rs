//! Line-oriented text format for exchanging maps:
//!
//! ```text
//! # comment
//! map k4
//! surface chi=2 orientable=1
//! vertex 0: 1 2 3
//! vertex 1: 0 3 2
//! vertex 2: 0 1 3
//! vertex 3: 0 2 1
//! twisted: 0-1 2-3
//! end
//! ```
//!
//! Neighbours are listed in rotation order; edges not named on the optional
//! `twisted:` line have signature +1.

use std::fmt::Write as _;

use crate::embedding::{EmbeddedMap, SurfaceClass, Vertex};
use crate::error::{MapError, SeedError};

/// One map read from a file, with its declared surface.
#[derive(Clone, Debug)]
pub struct SmtRecord {
    pub name: String,
    pub surface: SurfaceClass,
    pub map: EmbeddedMap,
}

struct Cursor<'a> {
    path: &'a str,
    line: usize,
}

impl Cursor<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> SeedError {
        SeedError::Parse {
            path: self.path.to_string(),
            line: self.line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Default)]
struct Pending {
    name: String,
    start_line: usize,
    surface: Option<SurfaceClass>,
    rotations: Vec<Vec<Vertex>>,
    twisted: Vec<(Vertex, Vertex)>,
}

/// Parses every map in `text`. `path` is only used in error messages.
pub fn parse_smt(text: &str, path: &str) -> Result<Vec<SmtRecord>, SeedError> {
    let mut out = Vec::new();
    let mut cur: Option<Pending> = None;
    let mut at = Cursor { path, line: 0 };
    for (i, raw_line) in text.lines().enumerate() {
        at.line = i + 1;
        let line = raw_line.split('#').next().unwrap_or("");
        let indent = line.len() - line.trim_start().len();
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest_col = indent + keyword.len() + 2;
        match keyword {
            "map" => {
                if cur.is_some() {
                    return Err(at.err(indent + 1, "`map` inside an unterminated map"));
                }
                let name = rest.trim();
                if name.is_empty() {
                    return Err(at.err(rest_col, "missing map name"));
                }
                cur = Some(Pending {
                    name: name.to_string(),
                    start_line: at.line,
                    ..Pending::default()
                });
            }
            "end" => {
                let p = cur
                    .take()
                    .ok_or_else(|| at.err(indent + 1, "`end` without `map`"))?;
                out.push(finish(p, &at)?);
            }
            _ => {
                let p = cur
                    .as_mut()
                    .ok_or_else(|| at.err(indent + 1, format!("`{keyword}` outside a map")))?;
                match keyword {
                    "surface" => p.surface = Some(parse_surface(rest, &at, rest_col)?),
                    "vertex" => parse_vertex(line, p, &at, indent)?,
                    "twisted:" => parse_twisted(rest, p, &at, rest_col)?,
                    _ => return Err(at.err(indent + 1, format!("unknown keyword `{keyword}`"))),
                }
            }
        }
    }
    if let Some(p) = cur {
        at.line = p.start_line;
        return Err(at.err(1, format!("map `{}` has no `end`", p.name)));
    }
    Ok(out)
}

fn parse_surface(rest: &str, at: &Cursor, col: usize) -> Result<SurfaceClass, SeedError> {
    let mut chi = None;
    let mut orientable = None;
    for tok in rest.split_whitespace() {
        match tok.split_once('=') {
            Some(("chi", v)) => {
                chi = Some(v.parse::<i32>().map_err(|_| at.err(col, "bad chi"))?);
            }
            Some(("orientable", "0")) => orientable = Some(false),
            Some(("orientable", "1")) => orientable = Some(true),
            _ => return Err(at.err(col, format!("bad surface field `{tok}`"))),
        }
    }
    match (chi, orientable) {
        (Some(c), Some(o)) => SurfaceClass::new(c, o).map_err(|e| at.err(col, e.to_string())),
        _ => Err(at.err(col, "surface needs chi and orientable")),
    }
}

fn parse_vertex(line: &str, p: &mut Pending, at: &Cursor, indent: usize) -> Result<(), SeedError> {
    let (head, tail) = line
        .split_once(':')
        .ok_or_else(|| at.err(indent + 1, "expected `vertex <v>: ...`"))?;
    let id_text = head["vertex".len()..].trim();
    let v: usize = id_text
        .parse()
        .map_err(|_| at.err(indent + 8, format!("bad vertex id `{id_text}`")))?;
    if v != p.rotations.len() {
        return Err(at.err(
            indent + 8,
            format!("expected vertex {}, found {v}", p.rotations.len()),
        ));
    }
    let col = indent + head.len() + 2;
    let mut rot = Vec::new();
    for tok in tail.split_whitespace() {
        rot.push(
            tok.parse::<usize>()
                .map_err(|_| at.err(col, format!("bad neighbour `{tok}`")))?,
        );
    }
    p.rotations.push(rot);
    Ok(())
}

fn parse_twisted(rest: &str, p: &mut Pending, at: &Cursor, col: usize) -> Result<(), SeedError> {
    for tok in rest.split_whitespace() {
        let pair = tok
            .split_once('-')
            .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)));
        match pair {
            Some(e) => p.twisted.push(e),
            None => return Err(at.err(col, format!("bad edge `{tok}`"))),
        }
    }
    Ok(())
}

fn finish(p: Pending, at: &Cursor) -> Result<SmtRecord, SeedError> {
    let surface = p
        .surface
        .ok_or_else(|| at.err(1, format!("map `{}` has no surface line", p.name)))?;
    let map = EmbeddedMap::from_neighbor_rotations(&p.rotations, &p.twisted).map_err(|e| {
        match e {
            MapError::Invalid(report) => SeedError::InvariantViolation {
                name: p.name.clone(),
                check: report.to_string(),
            },
            other => SeedError::InvariantViolation {
                name: p.name.clone(),
                check: other.to_string(),
            },
        }
    })?;
    Ok(SmtRecord {
        name: p.name,
        surface,
        map,
    })
}

/// Renders one map; the declared surface is the map's own.
pub fn write_smt(name: &str, m: &EmbeddedMap) -> String {
    let s = m.surface_class();
    let mut out = String::new();
    let _ = writeln!(out, "map {name}");
    let _ = writeln!(
        out,
        "surface chi={} orientable={}",
        s.euler_characteristic(),
        u8::from(s.is_orientable())
    );
    for (v, rot) in m.neighbor_rotations().iter().enumerate() {
        let _ = write!(out, "vertex {v}:");
        for u in rot {
            let _ = write!(out, " {u}");
        }
        out.push('\n');
    }
    let tw = m.twisted_edges();
    if !tw.is_empty() {
        out.push_str("twisted:");
        for (u, v) in tw {
            let _ = write!(out, " {u}-{v}");
        }
        out.push('\n');
    }
    out.push_str("end\n");
    out
}
