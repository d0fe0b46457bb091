//! `delannoy-kit` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or validation error.

pub mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use delannoy_core::counting::{
    count_delannoy, count_delannoy_by_e, count_kimberling, count_kimberling_by_vertices,
    enumerate_delannoy, enumerate_delannoy_with_e, enumerate_kimberling,
    enumerate_kimberling_with_interior, schroder, DelannoySampler,
};
use delannoy_core::geometry::{
    d_counts_before, diagonal_flags, east_ends, is_subdiagonal_delannoy, is_subdiagonal_kimberling,
    is_subdiagonal_kimberling_to, proof_cases,
};
use delannoy_core::harness::{self, Check, Execution, DEFAULT_N_MAX};
use delannoy_core::{
    phi, phi_inverse_traced, step_labels, DelannoyPath, KimberlingPath, SampleSeed,
};

use render::{render_pair, RenderSpec, DEFAULT_CELL};

pub const THREADS_ENV: &str = "DELANNOY_KIT_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "delannoy-kit",
    version,
    about = "Central Delannoy paths, Kimberling paths, and the bijection between them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Map a central Delannoy word to its Kimberling vertex list
    Map(MapArgs),
    /// Map a Kimberling vertex list back to its Delannoy word
    Unmap(UnmapArgs),
    /// Print exact counts
    Count(CountArgs),
    /// Stream every path of a family, one per line
    Enumerate(EnumerateArgs),
    /// Draw uniform random central Delannoy paths
    Sample(SampleArgs),
    /// Subdiagonal and per-step diagonal report for one word, as JSON
    Classify(ClassifyArgs),
    /// Run the exhaustive verification sweeps
    Verify(VerifyArgs),
    /// Write an SVG of a path and its image
    Render(RenderArgs),
}

#[derive(Debug, Args)]
struct MapArgs {
    word: String,
    /// Output the compact "(x,y);..." form instead of JSON
    #[arg(long)]
    compact: bool,
    /// Emit one JSON object with word, n, k and vertices
    #[arg(long)]
    json: bool,
    /// Print the step labels to stderr
    #[arg(long)]
    debug: bool,
}

#[derive(Debug, Args)]
struct UnmapArgs {
    /// Vertex list, JSON `[[0,0],...]` or compact `(0,0);...`
    vertices: String,
    #[arg(long)]
    json: bool,
    /// Print the A, B, C sets and the merged sequence to stderr
    #[arg(long)]
    debug: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CountFamily {
    Delannoy,
    Kimberling,
    Schroder,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PathFamily {
    Delannoy,
    Kimberling,
}

#[derive(Debug, Args)]
struct CountArgs {
    family: CountFamily,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    i: Option<u32>,
    #[arg(long)]
    j: Option<u32>,
    /// Restrict to paths with k East steps / k interior vertices
    #[arg(long)]
    k: Option<u32>,
    /// Print the refined row, one "k count" line per k
    #[arg(long)]
    k_only: bool,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    family: PathFamily,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    i: Option<u32>,
    #[arg(long)]
    j: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// Keep only subdiagonal paths
    #[arg(long)]
    subdiagonal: bool,
    #[arg(long)]
    compact: bool,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long)]
    word: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    n_max: u32,
    /// roundtrip, counts, subdiagonal, per-step, or all
    #[arg(long, default_value = "all")]
    check: String,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct RenderArgs {
    word: String,
    #[arg(long, default_value_t = DEFAULT_CELL)]
    cell: u32,
    #[arg(long)]
    no_grid: bool,
    #[arg(long)]
    no_diagonal: bool,
    #[arg(long)]
    labels: bool,
    /// Write to a file instead of stdout
    #[arg(long, short)]
    output: Option<std::path::PathBuf>,
}

/// Usage or validation problem; reported on stderr with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, UsageError>;

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Map(a) => map(a, out, err),
        Command::Unmap(a) => unmap(a, out, err),
        Command::Count(a) => count(a, out),
        Command::Enumerate(a) => enumerate(a, out),
        Command::Sample(a) => sample(a, out),
        Command::Classify(a) => classify(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Render(a) => render(a, out),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn join(values: &[u32]) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn map(a: MapArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let path = DelannoyPath::parse(&a.word)?;
    let central = path.central_index()?;
    let image = phi(&path)?;
    if a.debug {
        let labels = step_labels(&path, central);
        writeln!(err, "N labels (x): {{{}}}", join(&labels.a_labels))?;
        writeln!(err, "E labels (y): {{{}}}", join(&labels.b_labels))?;
        writeln!(err, "D labels:     {{{}}}", join(&labels.c_labels))?;
    }
    if a.json {
        let v = json!({
            "word": path.to_string(),
            "n": central.n,
            "k": central.k,
            "vertices": image,
        });
        writeln!(out, "{v}")?;
    } else {
        let text = if a.compact {
            image.to_compact()
        } else {
            image.to_json()
        };
        writeln!(out, "{text}")?;
        writeln!(err, "n={} k={}", central.n, central.k)?;
    }
    Ok(EXIT_OK)
}

fn unmap(a: UnmapArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let kpath = KimberlingPath::parse(&a.vertices)?;
    let trace = phi_inverse_traced(&kpath)?;
    let k = trace.a.len();
    let merged: Vec<String> = trace.merged.iter().map(|t| t.to_string()).collect();
    if a.debug {
        writeln!(err, "A = {{{}}}", join(&trace.a))?;
        writeln!(err, "B = {{{}}}", join(&trace.b))?;
        writeln!(err, "C = {{{}}}", join(&trace.c))?;
        writeln!(err, "merged = {}", merged.join(" "))?;
    }
    if a.json {
        let mut v = json!({ "word": trace.word, "n": trace.n, "k": k });
        if a.debug {
            v["a"] = json!(trace.a);
            v["b"] = json!(trace.b);
            v["c"] = json!(trace.c);
            v["merged"] = json!(merged);
        }
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "{}", trace.word)?;
        writeln!(err, "n={} k={k}", trace.n)?;
    }
    Ok(EXIT_OK)
}

fn need(v: Option<u32>, flag: &str, family: &str) -> std::result::Result<u32, UsageError> {
    v.ok_or_else(|| UsageError(format!("{family} requires --{flag}")))
}

/// `(i, j)` from `--i/--j`, or `(n+1, n)` from `--n`.
fn kimberling_end(
    n: Option<u32>,
    i: Option<u32>,
    j: Option<u32>,
) -> std::result::Result<(u32, u32), UsageError> {
    match (n, i, j) {
        (_, Some(i), Some(j)) => Ok((i, j)),
        (Some(n), None, None) => Ok((n + 1, n)),
        _ => Err(UsageError(
            "kimberling requires --i and --j (or --n for K_(n+1,n))".into(),
        )),
    }
}

fn count(a: CountArgs, out: &mut dyn Write) -> CmdResult {
    match a.family {
        CountFamily::Delannoy => {
            let n = need(a.n, "n", "delannoy")?;
            if a.k_only {
                for k in 0..=n {
                    writeln!(out, "{k} {}", count_delannoy_by_e(n, k))?;
                }
            } else {
                let c = match a.k {
                    Some(k) => count_delannoy_by_e(n, k),
                    None => count_delannoy(n),
                };
                writeln!(out, "{c}")?;
            }
        }
        CountFamily::Kimberling => {
            let (i, j) = kimberling_end(a.n, a.i, a.j)?;
            if a.k_only {
                for k in 0..=i.saturating_sub(1) {
                    writeln!(out, "{k} {}", count_kimberling_by_vertices(i, j, k))?;
                }
            } else {
                let c = match a.k {
                    Some(k) => count_kimberling_by_vertices(i, j, k),
                    None => count_kimberling(i, j),
                };
                writeln!(out, "{c}")?;
            }
        }
        CountFamily::Schroder => {
            let n = need(a.n, "n", "schroder")?;
            writeln!(out, "{}", schroder(n))?;
        }
    }
    Ok(EXIT_OK)
}

fn enumerate(a: EnumerateArgs, out: &mut dyn Write) -> CmdResult {
    match a.family {
        PathFamily::Delannoy => {
            let n = need(a.n, "n", "delannoy")?;
            let stream: Box<dyn Iterator<Item = DelannoyPath>> = match a.k {
                Some(k) => Box::new(enumerate_delannoy_with_e(n, k)),
                None => Box::new(enumerate_delannoy(n)),
            };
            for p in stream.filter(|p| !a.subdiagonal || is_subdiagonal_delannoy(p)) {
                writeln!(out, "{p}")?;
            }
        }
        PathFamily::Kimberling => {
            let (i, j) = kimberling_end(a.n, a.i, a.j)?;
            let stream = match a.k {
                Some(k) => enumerate_kimberling_with_interior(i, j, k),
                None => enumerate_kimberling(i, j),
            };
            for p in stream.filter(|p| !a.subdiagonal || is_subdiagonal_kimberling_to(p)) {
                let line = if a.compact {
                    p.to_compact()
                } else {
                    p.to_json()
                };
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn sample(a: SampleArgs, out: &mut dyn Write) -> CmdResult {
    for p in DelannoySampler::new(a.n, SampleSeed(a.seed)).take(a.count as usize) {
        writeln!(out, "{p}")?;
    }
    Ok(EXIT_OK)
}

fn classify(a: ClassifyArgs, out: &mut dyn Write) -> CmdResult {
    let path = DelannoyPath::parse(&a.word)?;
    let central = path.central_index()?;
    let image = phi(&path)?;
    let flags = diagonal_flags(&path)?;
    let steps: Vec<_> = east_ends(&path)
        .iter()
        .zip(image.interior_vertices())
        .zip(d_counts_before(&path))
        .zip(proof_cases(&path))
        .enumerate()
        .map(|(idx, (((east, vertex), (u, v)), case))| {
            json!({
                "i": east.index,
                "east_end": east.point,
                "vertex": vertex,
                "east_weakly_above": flags.east_weakly_above[idx],
                "vertex_strictly_above": flags.vertex_strictly_above[idx],
                "u": u,
                "v": v,
                "case": case.as_str(),
            })
        })
        .collect();
    let v = json!({
        "word": path.to_string(),
        "n": central.n,
        "k": central.k,
        "image": image,
        "subdiagonal_delannoy": is_subdiagonal_delannoy(&path),
        "subdiagonal_kimberling": is_subdiagonal_kimberling(&image)?,
        "steps": steps,
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
    Ok(EXIT_OK)
}

fn thread_cap() -> std::result::Result<usize, UsageError> {
    match std::env::var(THREADS_ENV) {
        Ok(s) if !s.trim().is_empty() => s
            .trim()
            .parse()
            .map_err(|e| UsageError(format!("{THREADS_ENV}={s:?}: {e}"))),
        _ => Ok(0),
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let checks: Vec<Check> = if a.check == "all" {
        Check::ALL.to_vec()
    } else {
        vec![a.check.parse::<Check>()?]
    };
    let threads = thread_cap()?;
    let exec = if threads == 1 {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let reports = harness::with_threads(threads, || harness::verify(&checks, a.n_max, exec));
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
    } else {
        for r in &reports {
            write!(out, "{r}")?;
        }
    }
    Ok(if reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn render(a: RenderArgs, out: &mut dyn Write) -> CmdResult {
    let path = DelannoyPath::parse(&a.word)?;
    let spec = RenderSpec {
        show_grid: !a.no_grid,
        show_diagonal: !a.no_diagonal,
        label_steps: a.labels,
        ..RenderSpec::with_cell(a.cell)?
    };
    let svg = render_pair(&path, &spec)?;
    match a.output {
        Some(file) => std::fs::write(file, svg)?,
        None => out.write_all(svg.as_bytes())?,
    }
    Ok(EXIT_OK)
}
