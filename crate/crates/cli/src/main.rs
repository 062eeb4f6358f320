//! `automorphic`: evaluation, invariance checks, reduction and embedding scans.
//!
//! Exit codes: 0 success, 1 invariance failure, 2 parse error, 3 domain
//! error, 4 search failure. `AUTOMORPHIC_THREADS` sets the worker count.

use automorphic::embeddings::{
    find_base_thetas, invariance_test, lambda_map, octa_map, parse_tuple, sample_points, CharTuple, FnId,
};
use automorphic::error::Error;
use automorphic::groups::{find_cusp_word, Cusp, GroupSpec, Reducer};
use automorphic::halfspace::Point;
use automorphic::hypergeometric::{gauss_2f1, schwarz_map_inf, HGParams};
use automorphic::parse::{parse_char, parse_complex, parse_gauss_int, parse_point, parse_tau};
use automorphic::theta::{siegel_theta, TauMat, ThetaChar};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

const THREADS_VAR: &str = "AUTOMORPHIC_THREADS";

#[derive(Parser, Debug)]
#[command(name = "automorphic", version, about = "Automorphic functions on hyperbolic 3-space")]
struct Cli {
    #[command(flatten)]
    cfg: Config,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone, Debug)]
struct Config {
    /// Truncation budget for series evaluation.
    #[arg(long, global = true, default_value_t = 1e-12)]
    eps: f64,
    /// Pass/fail threshold for invariance checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Word-length bound for reduction searches.
    #[arg(long, global = true, default_value_t = 8)]
    depth: usize,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
    Mesh,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MapKind {
    Octa,
    Lambda,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Theta values with characteristics.
    Theta {
        #[command(subcommand)]
        cmd: ThetaCmd,
    },
    /// Invariance report of a function under a group, as JSON.
    Check {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 30)]
        elems: usize,
    },
    /// Reduced sample points with their octahedron or quadric coordinates.
    ScanEmbedding {
        #[arg(long, value_enum, default_value_t = MapKind::Octa)]
        map: MapKind,
        /// `c0|c1|c2|c3`; searched for when omitted.
        #[arg(long)]
        tuple: Option<String>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Word-length bound of the level-2 reduction applied to samples.
        #[arg(long, default_value_t = 4)]
        reduce_depth: usize,
    },
    /// Reads a scan file (CSV or mesh) back and summarizes it as JSON.
    ScanCheck {
        #[arg(long)]
        input: PathBuf,
    },
    /// Reduction of a point towards a fundamental domain.
    Reduce {
        #[arg(long)]
        point: String,
        #[arg(long, default_value = "whitehead")]
        group: String,
    },
    /// Gauss hypergeometric series and the Schwarz map.
    Hg {
        #[command(subcommand)]
        cmd: HgCmd,
    },
    /// Admissible characteristic 4-tuples for the octahedron map.
    FindBaseThetas {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 30)]
        elems: usize,
    },
    /// The 256 level-2 characteristics with their odd/even annotation.
    Catalog,
    /// Searches short words mapping one cusp to another.
    CuspSearch {
        #[arg(long, default_value = "whitehead")]
        group: String,
        /// Gaussian integer or `inf`.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ThetaCmd {
    Eval {
        /// `a1,a2;b1,b2`.
        #[arg(long = "char")]
        chr: String,
        /// `re,im,t`.
        #[arg(long, conflicts_with = "tau")]
        point: Option<String>,
        /// `t11,t12;t21,t22`.
        #[arg(long)]
        tau: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum HgCmd {
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    Schwarz {
        #[arg(long)]
        x: f64,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        Self { code, msg: msg.into() }
    }
}

fn code_of(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::NoTupleFound(_) => 4,
        _ => 3,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(code_of(&e), e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(3, format!("i/o: {e}"))
    }
}

/// Prefixes an error with the flag it came from; any failure while reading
/// a flag value is an input error.
fn flag<T>(name: &str, r: Result<T, Error>) -> Result<T, Failure> {
    r.map_err(|e| Failure::new(2, format!("--{name}: {e}")))
}

fn group(name: &str) -> Result<GroupSpec, Failure> {
    flag("group", GroupSpec::by_name(name))
}

struct Run<'a> {
    cfg: &'a Config,
    argv: Vec<String>,
}

impl Run<'_> {
    fn format(&self, default: Format) -> Format {
        self.cfg.format.unwrap_or(default)
    }

    fn config_json(&self, default: Format) -> serde_json::Value {
        json!({
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.argv.join(" "),
            "eps": self.cfg.eps,
            "tol": self.cfg.tol,
            "seed": self.cfg.seed,
            "depth": self.cfg.depth,
            "format": format!("{:?}", self.format(default)).to_lowercase(),
            "output": self.cfg.output.as_ref().map(|p| p.display().to_string()),
        })
    }

    fn header(&self, default: Format, extra: &[(&str, String)]) -> String {
        let mut h = format!(
            "# automorphic {}\n# command: {}\n# config: eps={:e} tol={:e} seed={} depth={} format={} output={}\n",
            env!("CARGO_PKG_VERSION"),
            self.argv.join(" "),
            self.cfg.eps,
            self.cfg.tol,
            self.cfg.seed,
            self.cfg.depth,
            format!("{:?}", self.format(default)).to_lowercase(),
            self.cfg.output.as_ref().map_or("-".to_string(), |p| p.display().to_string()),
        );
        for (k, v) in extra {
            h.push_str(&format!("# {k}: {v}\n"));
        }
        h
    }

    fn sink(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.cfg.output {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).map_err(|e| Failure::new(3, format!("--output {}: {e}", p.display())))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

fn theta_eval(run: &Run, chr: &str, point: Option<&str>, tau: Option<&str>) -> Result<u8, Failure> {
    let c: ThetaChar = flag("char", parse_char(chr))?;
    let tau: TauMat<f64> = match (point, tau) {
        (Some(p), None) => TauMat::from_point(&flag("point", parse_point(p))?),
        (None, Some(t)) => flag("tau", parse_tau(t))?,
        _ => return Err(Failure::new(2, "exactly one of --point and --tau is required")),
    };
    let ev = siegel_theta(&c, &tau, run.cfg.eps)?;
    let mut out = run.sink()?;
    write!(out, "{}", run.header(Format::Csv, &[]))?;
    writeln!(out, "value = {}", ev.value.re)?;
    writeln!(out, "imag = {}", ev.value.im)?;
    writeln!(out, "tail_bound = {:e}", ev.tail_bound)?;
    writeln!(out, "radius = {}", ev.radius)?;
    writeln!(out, "terms = {}", ev.terms)?;
    out.flush()?;
    Ok(0)
}

fn check(run: &Run, function: &str, group_name: &str, samples: usize, elems: usize) -> Result<u8, Failure> {
    let f: FnId = flag("fn", function.parse())?;
    let spec = group(group_name)?;
    let report = invariance_test(&f, &spec, samples, elems, run.cfg.seed)?;
    let pass = report.max_abs_deviation < run.cfg.tol;
    let doc = json!({
        "config": run.config_json(Format::Json),
        "report": report,
        "pass": pass,
    });
    let mut out = run.sink()?;
    writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(|e| Failure::new(3, e.to_string()))?)?;
    out.flush()?;
    Ok(if pass { 0 } else { 1 })
}

fn scan_embedding(
    run: &Run,
    map: MapKind,
    tuple: Option<&str>,
    samples: usize,
    reduce_depth: usize,
) -> Result<u8, Failure> {
    let fmt = run.format(Format::Csv);
    if fmt == Format::Json {
        return Err(Failure::new(2, "--format: scan-embedding writes csv or mesh"));
    }
    let chars: CharTuple = match tuple {
        Some(t) => flag("tuple", parse_tuple(t))?,
        None => find_base_thetas(200, 30, 1e-8, run.cfg.seed)?[0],
    };
    let spec = GroupSpec::by_name("gammaT2")?;
    let reducer = Reducer::new(&spec, reduce_depth.max(1));
    let eps = run.cfg.eps;
    let rows = sample_points(samples, run.cfg.seed)
        .par_iter()
        .map(|p| {
            let q = reducer.reduce(p).point;
            let image = match map {
                MapKind::Octa => octa_map(&q, &chars, eps)?.to_array().to_vec(),
                MapKind::Lambda => lambda_map(&q, &chars, eps)?.to_array().to_vec(),
            };
            Ok((q, image))
        })
        .collect::<Result<Vec<(Point<f64>, Vec<f64>)>, Error>>()?;
    let tuple_text = chars.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("|");
    let mut out = run.sink()?;
    write!(
        out,
        "{}",
        run.header(
            Format::Csv,
            &[
                ("map", format!("{map:?}").to_lowercase()),
                ("tuple", tuple_text),
                ("samples", samples.to_string()),
                ("reduce_depth", reduce_depth.to_string()),
            ]
        )
    )?;
    let cols = match map {
        MapKind::Octa => "t1,t2,t3",
        MapKind::Lambda => "l1,l2,l3,l4",
    };
    if fmt == Format::Csv {
        writeln!(out, "re_z,im_z,t,{cols}")?;
    }
    for (q, image) in rows {
        let image: Vec<String> = image.iter().map(|v| format!("{v:e}")).collect();
        match fmt {
            Format::Mesh => writeln!(out, "v {}", image.join(" "))?,
            _ => writeln!(out, "{:e},{:e},{:e},{}", q.z.re, q.z.im, q.t, image.join(","))?,
        }
    }
    out.flush()?;
    Ok(0)
}

/// Image columns of a scan file, CSV or mesh.
fn load_scan(path: &PathBuf) -> Result<Vec<Vec<f64>>, Failure> {
    let file = File::open(path).map_err(|e| Failure::new(3, format!("--input {}: {e}", path.display())))?;
    let bad = |n: usize| Failure::new(2, format!("--input {}: malformed line {n}", path.display()));
    let mut rows = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("re_z") {
            continue;
        }
        let cells: Vec<&str> = match line.strip_prefix("v ") {
            Some(rest) => rest.split_whitespace().collect(),
            None => line.split(',').skip(3).collect(),
        };
        let vals = cells.iter().map(|c| c.parse::<f64>()).collect::<Result<Vec<_>, _>>().map_err(|_| bad(n + 1))?;
        if vals.is_empty() {
            return Err(bad(n + 1));
        }
        rows.push(vals);
    }
    Ok(rows)
}

fn scan_check(run: &Run, input: &PathBuf) -> Result<u8, Failure> {
    let rows = load_scan(input)?;
    let width = rows.first().map_or(0, |r| r.len());
    let max_l1 = rows.iter().map(|r| r.iter().take(3).map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    let quadric = rows
        .iter()
        .filter(|r| r.len() == 4)
        .map(|r| (r[1] * r[2] - r[3] * r[3]).abs() / (r[3] * r[3]).max(1.0))
        .fold(0.0, f64::max);
    let doc = json!({
        "config": run.config_json(Format::Json),
        "rows": rows.len(),
        "columns": width,
        "max_l1": if width == 3 { Some(max_l1) } else { None },
        "max_quadric_residual": if width == 4 { Some(quadric) } else { None },
    });
    let mut out = run.sink()?;
    writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(|e| Failure::new(3, e.to_string()))?)?;
    out.flush()?;
    Ok(0)
}

fn reduce(run: &Run, point: &str, group_name: &str) -> Result<u8, Failure> {
    let p: Point<f64> = flag("point", parse_point(point))?;
    let spec = group(group_name)?;
    if run.cfg.depth == 0 {
        return Err(Failure::new(3, "--depth: must be at least 1"));
    }
    let r = Reducer::new(&spec, run.cfg.depth).reduce(&p);
    let doc = json!({
        "config": run.config_json(Format::Json),
        "point": [r.point.z.re, r.point.z.im, r.point.t],
        "word": r.word,
        "height_history": r.height_history,
    });
    let mut out = run.sink()?;
    writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(|e| Failure::new(3, e.to_string()))?)?;
    out.flush()?;
    Ok(0)
}

fn plain_complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        format!("{re}")
    } else {
        format!("{re} {im}")
    }
}

fn hg(run: &Run, cmd: &HgCmd) -> Result<u8, Failure> {
    let text = match cmd {
        HgCmd::Eval { a, b, c, x } => {
            let x = flag("x", parse_complex::<f64>(x))?;
            let v = gauss_2f1(&HGParams::new(*a, *b, *c), x, run.cfg.eps)?;
            plain_complex(v.re, v.im)
        }
        HgCmd::Schwarz { x } => {
            let t = flag("x", schwarz_map_inf(*x, run.cfg.eps))?;
            plain_complex(t.re, t.im)
        }
    };
    let mut out = run.sink()?;
    writeln!(out, "{text}")?;
    out.flush()?;
    Ok(0)
}

fn base_thetas(run: &Run, samples: usize, elems: usize) -> Result<u8, Failure> {
    let tuples = find_base_thetas(samples, elems, run.cfg.tol, run.cfg.seed)?;
    let mut out = run.sink()?;
    write!(out, "{}", run.header(Format::Csv, &[("samples", samples.to_string()), ("elems", elems.to_string())]))?;
    for t in tuples {
        writeln!(out, "{}|{}|{}|{}", t[0], t[1], t[2], t[3])?;
    }
    out.flush()?;
    Ok(0)
}

fn catalog(run: &Run) -> Result<u8, Failure> {
    let mut out = run.sink()?;
    write!(out, "{}", run.header(Format::Csv, &[]))?;
    for e in automorphic::embeddings::deep_theta_catalog() {
        writeln!(out, "{} {}", e.chr, if e.odd { "odd" } else { "even" })?;
    }
    out.flush()?;
    Ok(0)
}

fn parse_cusp(name: &str, s: &str) -> Result<Cusp, Failure> {
    match s.trim() {
        "inf" | "∞" => Ok(Cusp::Infinity),
        t => Ok(Cusp::At(flag(name, parse_gauss_int(t))?)),
    }
}

fn cusp_search(run: &Run, group_name: &str, from: &str, to: &str, max_len: usize) -> Result<u8, Failure> {
    let spec = group(group_name)?;
    let (a, b) = (parse_cusp("from", from)?, parse_cusp("to", to)?);
    let mut out = run.sink()?;
    match find_cusp_word(&spec, a, b, max_len) {
        Some(e) => writeln!(out, "found word {:?} with matrix {}", e.word, e.matrix)?,
        None => writeln!(out, "no word of length <= {max_len} found (this does not rule out longer words)")?,
    }
    out.flush()?;
    Ok(0)
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v.parse().map_err(|_| Failure::new(2, format!("{THREADS_VAR}={v:?} is not a thread count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::new(3, format!("{THREADS_VAR}: {e}")))?;
    }
    Ok(())
}

fn dispatch(cli: &Cli, argv: Vec<String>) -> Result<u8, Failure> {
    configure_threads()?;
    let run = Run { cfg: &cli.cfg, argv };
    match &cli.cmd {
        Command::Theta { cmd: ThetaCmd::Eval { chr, point, tau } } => {
            theta_eval(&run, chr, point.as_deref(), tau.as_deref())
        }
        Command::Check { function, group, samples, elems } => check(&run, function, group, *samples, *elems),
        Command::ScanEmbedding { map, tuple, samples, reduce_depth } => {
            scan_embedding(&run, *map, tuple.as_deref(), *samples, *reduce_depth)
        }
        Command::ScanCheck { input } => scan_check(&run, input),
        Command::Reduce { point, group } => reduce(&run, point, group),
        Command::Hg { cmd } => hg(&run, cmd),
        Command::FindBaseThetas { samples, elems } => base_thetas(&run, *samples, *elems),
        Command::Catalog => catalog(&run),
        Command::CuspSearch { group, from, to, max_len } => cusp_search(&run, group, from, to, *max_len),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::iter::once("automorphic".to_string()).chain(std::env::args().skip(1)).collect();
    let cli = Cli::parse();
    match dispatch(&cli, argv) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
