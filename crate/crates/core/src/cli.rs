//! The `surfgen` command line.

use std::ffi::OsString;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::embedding::SurfaceClass;
use crate::error::{GenerationError, SeedError, SignedCodeError};
use crate::pipeline::{ClassFilter, CountTable, GenerationConfig, Generator};
use crate::seeds::{load_seeds, projective_seeds, sphere_seed, SeedSet};
use crate::signed_code::SignedCodeWriter;
use crate::smt::write_smt;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISSING_SEEDS: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;
pub const EXIT_BAD_SEEDS: i32 = 5;
const EXIT_IO: i32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Class {
    All,
    #[value(name = "closed2cell")]
    Closed2Cell,
    Polyhedral,
    Triangulation,
    FaceIrreducible,
    Irreducible,
}

impl From<Class> for ClassFilter {
    fn from(c: Class) -> Self {
        match c {
            Class::All => ClassFilter::All,
            Class::Closed2Cell => ClassFilter::Closed2Cell,
            Class::Polyhedral => ClassFilter::Polyhedral,
            Class::Triangulation => ClassFilter::Triangulation,
            Class::FaceIrreducible => ClassFilter::FaceIrreducible,
            Class::Irreducible => ClassFilter::Irreducible,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Smt,
    SignedCode,
    None,
}

/// Generate every map with a given number of vertices on a surface, up to
/// isomorphism.
#[derive(Debug, Parser)]
#[command(name = "surfgen", version)]
struct Args {
    /// sphere, projective, torus, klein, or chi=<int>:orientable=<0|1>
    #[arg(long, value_parser = parse_surface)]
    surface: SurfaceClass,
    /// <n> or <lo>..<hi>
    #[arg(long, value_parser = parse_vertices)]
    vertices: RangeInclusive<usize>,
    #[arg(long, value_enum, default_value = "all")]
    class: Class,
    /// Irreducible triangulations in SMT format; required except on the
    /// sphere and the projective plane.
    #[arg(long)]
    seeds: Option<PathBuf>,
    /// Defaults to smt, or none when --count is given.
    #[arg(long, value_enum)]
    output: Option<Output>,
    /// Print the count table.
    #[arg(long)]
    count: bool,
    /// Emit maps in canonical-code order.
    #[arg(long)]
    deterministic: bool,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Abort when one level of the duplicate store would exceed this many bytes.
    #[arg(long)]
    level_cap: Option<usize>,
}

fn parse_surface(s: &str) -> Result<SurfaceClass, String> {
    match s {
        "sphere" => return Ok(SurfaceClass::SPHERE),
        "projective" => return Ok(SurfaceClass::PROJECTIVE_PLANE),
        "torus" => return Ok(SurfaceClass::TORUS),
        "klein" => return Ok(SurfaceClass::KLEIN_BOTTLE),
        _ => {}
    }
    let bad = || format!("unknown surface `{s}`");
    let (chi, ori) = s.split_once(':').ok_or_else(bad)?;
    let chi: i32 = chi
        .strip_prefix("chi=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(bad)?;
    let orientable = match ori.strip_prefix("orientable=") {
        Some("0") => false,
        Some("1") => true,
        _ => return Err(bad()),
    };
    SurfaceClass::new(chi, orientable).map_err(|e| e.to_string())
}

fn parse_vertices(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad vertex count `{t}`"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b)?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo < 3 || lo > hi {
        return Err(format!("vertex range `{s}` must satisfy 3 <= lo <= hi"));
    }
    Ok(lo..=hi)
}

/// Expected catalog sizes of irreducible triangulations, used only for a
/// warning.
fn expected_seed_count(s: SurfaceClass) -> Option<usize> {
    match s {
        SurfaceClass::TORUS => Some(21),
        SurfaceClass::KLEIN_BOTTLE => Some(29),
        _ => None,
    }
}

enum Failure {
    Seeds(SeedError),
    Generation(GenerationError),
    Output(SignedCodeError),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Seeds(_) => EXIT_BAD_SEEDS,
            Failure::Generation(GenerationError::MissingSeeds(_)) => EXIT_MISSING_SEEDS,
            Failure::Generation(GenerationError::LevelCapExceeded { .. }) => EXIT_RESOURCE,
            Failure::Generation(GenerationError::Unsupported(_)) => EXIT_USAGE,
            Failure::Generation(_) => EXIT_IO,
            Failure::Output(SignedCodeError::VertexCountOverflow(_)) => EXIT_USAGE,
            Failure::Output(_) => EXIT_IO,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Seeds(e) => e.to_string(),
            Failure::Generation(e) => e.to_string(),
            Failure::Output(e) => e.to_string(),
        }
    }
}

fn seeds_for(args: &Args, err: &mut dyn Write) -> Result<SeedSet, Failure> {
    if let Some(path) = &args.seeds {
        let set = load_seeds(path, args.surface).map_err(Failure::Seeds)?;
        if let Some(want) = expected_seed_count(args.surface) {
            if set.triangulations.len() != want {
                let _ = writeln!(
                    err,
                    "warning: {} holds {} irreducible triangulations; the complete catalog for {} has {want}",
                    path.display(),
                    set.triangulations.len(),
                    args.surface
                );
            }
        }
        return Ok(set);
    }
    match args.surface {
        SurfaceClass::SPHERE => Ok(sphere_seed()),
        SurfaceClass::PROJECTIVE_PLANE => projective_seeds().map_err(Failure::Seeds),
        s => Err(Failure::Generation(GenerationError::MissingSeeds(s))),
    }
}

enum Sink<W: Write> {
    Smt(W),
    Signed(SignedCodeWriter<W>),
    Discard(W),
}

impl<W: Write> Sink<W> {
    fn finish(self) -> io::Result<W> {
        match self {
            Sink::Smt(mut w) | Sink::Discard(mut w) => {
                w.flush()?;
                Ok(w)
            }
            Sink::Signed(w) => w.finish(),
        }
    }
}

fn execute(args: &Args, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let seeds = seeds_for(args, err)?;
    let cfg = GenerationConfig {
        deterministic: args.deterministic,
        threads: args.threads,
        level_cap: args.level_cap,
        ..GenerationConfig::new(args.surface, args.class.into())
    };
    let output = args
        .output
        .unwrap_or(if args.count { Output::None } else { Output::Smt });
    let mut gen = Generator::new(cfg, &seeds).map_err(Failure::Generation)?;
    let w = BufWriter::new(&mut *out);
    let mut sink = match output {
        Output::Smt => Sink::Smt(w),
        Output::SignedCode => Sink::Signed(SignedCodeWriter::new(w)),
        Output::None => Sink::Discard(w),
    };
    let mut rows = Vec::new();
    let mut encode_error = None;
    for n in args.vertices.clone() {
        let mut index = 0usize;
        let row = gen
            .run(n, |m| {
                index += 1;
                let m = &m.normalize_signatures();
                match &mut sink {
                    Sink::Smt(w) => w.write_all(write_smt(&format!("n{n}_{index}"), m).as_bytes()),
                    Sink::Signed(w) => w.write_map(m).map_err(|e| match e {
                        SignedCodeError::Io(e) => e,
                        other => {
                            encode_error = Some(other);
                            io::Error::other("encoding failed")
                        }
                    }),
                    Sink::Discard(_) => Ok(()),
                }
            })
            .map_err(|e| match encode_error.take() {
                Some(enc) => Failure::Output(enc),
                None => Failure::Generation(e),
            })?;
        rows.push(row);
    }
    sink.finish()
        .map_err(|e| Failure::Generation(GenerationError::Io(e)))?;
    if args.count {
        let table = CountTable {
            surface: args.surface,
            rows,
        };
        let rendered = table.to_string();
        let res = match output {
            // Keep a binary stream on stdout clean.
            Output::SignedCode => err.write_all(rendered.as_bytes()),
            // Comment lines keep the stream readable as SMT.
            Output::Smt => rendered.lines().try_for_each(|l| {
                if l.starts_with('#') {
                    writeln!(out, "{l}")
                } else {
                    writeln!(out, "# {l}")
                }
            }),
            Output::None => out.write_all(rendered.as_bytes()),
        };
        res.map_err(|e| Failure::Generation(GenerationError::Io(e)))?;
    }
    Ok(())
}

/// Runs the command line with explicit streams; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(&args, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "surfgen: {}", f.message());
            f.exit_code()
        }
    }
}

/// Runs the command line against the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surfaces_and_ranges() {
        assert_eq!(parse_surface("klein").unwrap(), SurfaceClass::KLEIN_BOTTLE);
        assert_eq!(
            parse_surface("chi=-1:orientable=0").unwrap(),
            SurfaceClass::new(-1, false).unwrap()
        );
        assert!(parse_surface("chi=1:orientable=1").is_err());
        assert!(parse_surface("mobius").is_err());
        assert_eq!(parse_vertices("3..8").unwrap(), 3..=8);
        assert_eq!(parse_vertices("6").unwrap(), 6..=6);
        assert!(parse_vertices("8..3").is_err());
        assert!(parse_vertices("2").is_err());
    }
}
