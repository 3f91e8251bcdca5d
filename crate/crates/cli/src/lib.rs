//! Argument model and dispatcher behind the `eccentra` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eccentra::characterize::{least_minus2_predicate, smith_check, table1, theorem1_check, theorem1_predicate, theorem2_check, ClassReport, LeastMinusTwo};
use eccentra::extension::StarGrid;
use eccentra::hlindex::{hl_agreement, hl_closed_form, hl_numeric, HLResult};
use eccentra::spectral::{anti_adjacency, char_poly_exact, closed_form_spectrum, spectrum_with, EIGEN_TOLERANCE, GROUP_TOLERANCE, MAX_EXACT_ORDER};
use eccentra::verify::{
    enumerate_connected, enumerate_connected_dedup, verify_closed_forms, verify_hl, verify_interlacing, verify_nullity_paths, verify_smith,
    verify_table1, verify_theorem1, verify_theorem2, ClosedFormGrid, RunConfig, Shard, VerifyReport,
};
use eccentra::{parse_graph6, recognize_star_extension, star_extension, to_graph6, ExactPoly, Graph, Spectrum, StarParams};
use serde::Serialize;

pub mod symbolic;

pub const DEFAULT_SEED: u64 = 0;

#[derive(Parser, Debug)]
#[command(name = "eccentra", version, about = "Anti-adjacency spectra, characterizations of star extensions, and exhaustive checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Emit a human-readable summary.
    #[arg(long, global = true)]
    pub text: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

/// Exactly one graph source.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Graph in graph6 format.
    #[arg(long)]
    pub g6: Option<String>,
    /// File holding one graph6 line.
    #[arg(long = "g6-file")]
    pub g6_file: Option<PathBuf>,
    /// Star extension literal such as "S(5,-3)" or "S(3,-1,2^4)".
    #[arg(long)]
    pub params: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    Theorem1,
    Theorem2,
    #[value(name = "least-2")]
    LeastMinusTwo,
    Smith,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Theorem1,
    Theorem2,
    Smith,
    ClosedForms,
    Hl,
    Table1,
    Interlacing,
    Nullity,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Anti-adjacency spectrum, with exact values where they are integers or quadratic surds.
    Spectrum {
        #[command(flatten)]
        input: Input,
        /// Jacobi stopping tolerance relative to the Frobenius norm.
        #[arg(long, default_value_t = EIGEN_TOLERANCE)]
        tolerance: f64,
    },
    /// Spectral and structural sides of a characterization.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Theorem::Theorem1)]
        theorem: Theorem,
    },
    /// HL-index, with the regime prediction for family members.
    Hl {
        #[command(flatten)]
        input: Input,
    },
    /// graph6 of a star extension.
    Build {
        #[arg(long)]
        params: String,
    },
    /// Second largest eigenvalues of the forbidden fixtures.
    Table1 {
        #[arg(long)]
        csv: bool,
    },
    /// Run a verification and emit its report.
    Verify {
        #[arg(value_enum)]
        target: Target,
        /// Largest order (exhaustive runs, interlacing samples) or largest k (nullity).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, env = "ECCENTRA_WORKERS", default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Qualifying pairs for interlacing.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Check one graph per isomorphism class.
        #[arg(long)]
        dedup: bool,
        /// Include wall-clock duration (breaks byte-identical reruns).
        #[arg(long)]
        timing: bool,
        /// Permit exhaustive runs at n = 8.
        #[arg(long = "allow-n8")]
        allow_n8: bool,
    },
    /// List connected graphs in graph6.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dedup: bool,
        /// Bitmask range `i/k`, the i-th of k shards (0-based).
        #[arg(long)]
        shard: Option<String>,
    },
}

#[derive(Debug)]
pub struct CliError(pub String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

impl From<eccentra::Error> for CliError {
    fn from(e: eccentra::Error) -> Self {
        CliError(e.to_string())
    }
}

/// Exit code and text written to stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub fn parse_star_params(text: &str) -> Result<StarParams, CliError> {
    text.parse().map_err(|e: eccentra::Error| CliError(e.to_string()))
}

struct Resolved {
    graph: Graph,
    params: Option<StarParams>,
}

fn resolve(input: &Input) -> Result<Resolved, CliError> {
    if let Some(p) = &input.params {
        let sp = parse_star_params(p)?;
        return Ok(Resolved { graph: star_extension(&sp), params: Some(sp) });
    }
    let text = match (&input.g6, &input.g6_file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => {
            let body = std::fs::read_to_string(path).map_err(|e| CliError(format!("reading {}: {e}", path.display())))?;
            let lines: Vec<&str> = body.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
            match lines.as_slice() {
                [one] => one.to_string(),
                _ => return Err(CliError(format!("{} must hold exactly one graph6 line, found {}", path.display(), lines.len()))),
            }
        }
        (None, None) => return Err(CliError("one of --g6, --g6-file, --params is required".into())),
    };
    let graph = parse_graph6(&text)?;
    Ok(Resolved { graph, params: None })
}

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_spectrum(s: &Spectrum) -> Spectrum {
    Spectrum {
        values: s.values.iter().map(|&v| sig12(v)).collect(),
        groups: s.groups.iter().map(|&(v, m)| (sig12(v), m)).collect(),
        annotations: s.annotations.clone(),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("outputs serialize") + "\n"
}

#[derive(Serialize)]
struct SpectrumOutput {
    graph6: String,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<String>,
    spectrum: Spectrum,
    /// Symbolic value per group when known.
    exact: Vec<Option<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    char_poly: Option<String>,
}

fn spectrum_cmd(input: &Input, tolerance: f64, text: bool) -> Result<Outcome, CliError> {
    if !(tolerance > 0.0 && tolerance < 1.0) {
        return Err(CliError(format!("tolerance {tolerance} must lie in (0, 1)")));
    }
    let r = resolve(input)?;
    let m = anti_adjacency(&r.graph)?;
    let mut spec = spectrum_with(&m.to_f64(), tolerance, GROUP_TOLERANCE);
    if let Some(sp) = r.params.as_ref().filter(|sp| theorem1_predicate(sp)) {
        let cf = closed_form_spectrum(sp)?;
        if cf.spectrum.groups.len() == spec.groups.len() {
            spec.annotations = cf.spectrum.annotations;
        }
    }
    let poly: Option<ExactPoly> = (r.graph.n() <= MAX_EXACT_ORDER).then(|| char_poly_exact(&m)).transpose()?;
    let exact = match &poly {
        Some(p) => symbolic::label_groups(p, &spec.groups),
        None => vec![None; spec.groups.len()],
    };
    let out = SpectrumOutput {
        graph6: to_graph6(&r.graph),
        n: r.graph.n(),
        params: r.params.map(|s| s.to_string()),
        spectrum: round_spectrum(&spec),
        exact,
        char_poly: poly.map(|p| p.to_string()),
    };
    let stdout = if text {
        let mut s = format!("{} (n = {})\n", out.graph6, out.n);
        if let Some(p) = &out.char_poly {
            let _ = writeln!(s, "char poly: {p}");
        }
        for (i, &(v, m)) in out.spectrum.groups.iter().enumerate() {
            let label = out.exact[i].as_deref().map(|e| format!(" = {e}")).unwrap_or_default();
            let _ = writeln!(s, "  {v}{label}  x{m}");
        }
        s
    } else {
        to_json(&out)
    };
    Ok(Outcome { code: EXIT_OK, stdout })
}

#[derive(Serialize)]
struct ClassifyOutput<T: Serialize> {
    verdict: bool,
    graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<String>,
    report: T,
}

fn class_text(verdict: bool, r: &ClassReport) -> String {
    let mut s = format!(
        "{} {}: verdict {verdict} (spectral {}, structural {}, agree {})\n",
        r.theorem, r.graph, r.spectral.member, r.structural.member, r.agree
    );
    if let Some(p) = &r.structural.params {
        let _ = writeln!(s, "  structure: {p}");
    }
    for w in &r.witnesses {
        let _ = writeln!(s, "  witness: {w}");
    }
    s
}

fn classify_cmd(input: &Input, theorem: Theorem, text: bool) -> Result<Outcome, CliError> {
    let r = resolve(input)?;
    let g6 = to_graph6(&r.graph);
    let params = r.params.as_ref().map(ToString::to_string);
    let (verdict, stdout) = match theorem {
        Theorem::LeastMinusTwo => {
            let rep: LeastMinusTwo = least_minus2_predicate(&r.graph)?;
            let verdict = rep.spectral && rep.structural;
            let s = if text {
                format!("least-2 {g6}: verdict {verdict} (spectral {}, structural {}, form {:?})\n", rep.spectral, rep.structural, rep.form)
            } else {
                to_json(&ClassifyOutput { verdict, graph6: g6, params, report: rep })
            };
            (verdict, s)
        }
        t => {
            let rep = match t {
                Theorem::Theorem1 => theorem1_check(&r.graph)?,
                Theorem::Theorem2 => theorem2_check(&r.graph)?,
                _ => smith_check(&r.graph)?,
            };
            let verdict = rep.spectral.member && rep.structural.member;
            let s = if text { class_text(verdict, &rep) } else { to_json(&ClassifyOutput { verdict, graph6: g6, params, report: rep }) };
            (verdict, s)
        }
    };
    Ok(Outcome { code: if verdict { EXIT_OK } else { EXIT_NEGATIVE }, stdout })
}

#[derive(Serialize)]
struct HlOutput {
    graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<String>,
    numeric: HLResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<HLResult>,
}

fn round_hl(mut r: HLResult) -> HLResult {
    r.xi_h = sig12(r.xi_h);
    r.xi_l = sig12(r.xi_l);
    r.r = sig12(r.r);
    if let Some(m) = r.mismatch.as_mut() {
        m.numeric.iter_mut().for_each(|v| *v = sig12(*v));
        m.closed_form.iter_mut().for_each(|v| *v = sig12(*v));
    }
    r
}

fn hl_cmd(input: &Input, text: bool) -> Result<Outcome, CliError> {
    let r = resolve(input)?;
    let params = match r.params {
        Some(sp) => Some(sp),
        None => recognize_star_extension(&r.graph)?,
    }
    .filter(theorem1_predicate);
    let (numeric, closed_form) = match &params {
        Some(sp) => (hl_agreement(sp)?, Some(hl_closed_form(sp)?)),
        None => (hl_numeric(&eccentra::spectral::eigenvalues(&anti_adjacency(&r.graph)?), r.graph.n())?, None),
    };
    let code = if numeric.agreement == Some(false) { EXIT_NEGATIVE } else { EXIT_OK };
    let out = HlOutput { graph6: to_graph6(&r.graph), params: params.map(|s| s.to_string()), numeric: round_hl(numeric), closed_form: closed_form.map(round_hl) };
    let stdout = if text {
        let n = &out.numeric;
        let mut s = format!("{} (n = {}): H = {}, L = {}, xi_H = {}, xi_L = {}, R = {}\n", out.graph6, n.n, n.h_index, n.l_index, n.xi_h, n.xi_l, n.r);
        if let (Some(reg), Some(pred)) = (&n.regime, &n.prediction) {
            let _ = writeln!(s, "  regime {reg} predicts {pred}; agreement {}", n.agreement.unwrap_or(false));
        }
        s
    } else {
        to_json(&out)
    };
    Ok(Outcome { code, stdout })
}

fn build_cmd(params: &str, text: bool) -> Result<Outcome, CliError> {
    let sp = parse_star_params(params)?;
    let g = star_extension(&sp);
    #[derive(Serialize)]
    struct Built {
        params: String,
        n: usize,
        graph6: String,
    }
    let b = Built { params: sp.to_string(), n: g.n(), graph6: to_graph6(&g) };
    let stdout = if text { format!("{}\n", b.graph6) } else { to_json(&b) };
    Ok(Outcome { code: EXIT_OK, stdout })
}

#[derive(Serialize)]
struct Table1Row {
    label: String,
    params: String,
    n: usize,
    printed: String,
    xi2: f64,
    exact: Option<String>,
    matches: bool,
}

fn table1_rows() -> Result<Vec<Table1Row>, CliError> {
    let report = verify_table1()?;
    table1()
        .iter()
        .map(|fx| {
            let sp = fx.params();
            let g = star_extension(&sp);
            let m = anti_adjacency(&g)?;
            let spec = eccentra::spectral::eigenvalues(&m);
            let exact = symbolic::label_groups(&char_poly_exact(&m)?, &spec.groups);
            let second = if spec.groups[0].1 > 1 { 0 } else { 1 };
            Ok(Table1Row {
                label: fx.label.clone(),
                params: fx.graph.clone(),
                n: g.n(),
                printed: fx.printed.clone(),
                xi2: sig12(spec.xi(2)),
                exact: exact[second].clone(),
                matches: report.verdict(&fx.label).is_some_and(|v| v.pass),
            })
        })
        .collect()
}

fn table1_cmd(csv_out: bool, text: bool) -> Result<Outcome, CliError> {
    let rows = table1_rows()?;
    let all = rows.iter().all(|r| r.matches);
    let stdout = if csv_out {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &rows {
            w.serialize(r).map_err(|e| CliError(e.to_string()))?;
        }
        String::from_utf8(w.into_inner().map_err(|e| CliError(e.to_string()))?).expect("csv output is UTF-8")
    } else if text {
        rows.iter()
            .map(|r| format!("{:<4} {:<18} xi2 = {:<16} printed {:<16} {}\n", r.label, r.params, r.xi2, r.printed, if r.matches { "ok" } else { "MISMATCH" }))
            .collect()
    } else {
        to_json(&rows)
    };
    Ok(Outcome { code: if all { EXIT_OK } else { EXIT_NEGATIVE }, stdout })
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    target: Target,
    n: Option<usize>,
    workers: usize,
    seed: u64,
    samples: usize,
    dedup: bool,
    timing: bool,
    allow_n8: bool,
) -> Result<VerifyReport, CliError> {
    let cfg = RunConfig { workers: workers.max(1), dedup, timing };
    let exhaustive_n = || -> Result<usize, CliError> {
        let n = n.unwrap_or(7);
        if n == 8 && !allow_n8 {
            return Err(CliError("n = 8 needs --allow-n8 (268M labeled graphs)".into()));
        }
        Ok(n)
    };
    let report = match target {
        Target::Theorem1 => verify_theorem1(exhaustive_n()?, cfg)?,
        Target::Theorem2 => verify_theorem2(exhaustive_n()?, cfg)?,
        Target::Smith => verify_smith(exhaustive_n()?, cfg)?,
        Target::ClosedForms => verify_closed_forms(ClosedFormGrid::default(), cfg)?,
        Target::Hl => verify_hl(StarGrid { t0_max: 5, p_max: 8, parts_total_max: 10, n_max: 20 }, cfg)?,
        Target::Table1 => verify_table1()?,
        Target::Interlacing => verify_interlacing(samples, seed, n.unwrap_or(10))?,
        Target::Nullity => verify_nullity_paths(3, n.unwrap_or(12))?,
    };
    Ok(report)
}

fn parse_shard(s: &str) -> Result<Shard, CliError> {
    let bad = || CliError(format!("shard {s:?} must look like i/k with i < k"));
    let (i, k) = s.split_once('/').ok_or_else(bad)?;
    let (index, count) = (i.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?);
    if count == 0 || index >= count {
        return Err(bad());
    }
    Ok(Shard { index, count })
}

fn enumerate_cmd(n: usize, dedup: bool, shard: Option<&str>, text: bool) -> Result<Outcome, CliError> {
    let shard = shard.map(parse_shard).transpose()?;
    if dedup && shard.is_some() {
        return Err(CliError("--dedup and --shard cannot be combined".into()));
    }
    let graphs: Vec<String> = if dedup {
        enumerate_connected_dedup(n)?.iter().map(to_graph6).collect()
    } else {
        enumerate_connected(n, shard)?.map(|g| to_graph6(&g)).collect()
    };
    let stdout = if text {
        graphs.iter().map(|g| format!("{g}\n")).collect()
    } else {
        #[derive(Serialize)]
        struct Listing<'a> {
            n: usize,
            dedup: bool,
            shard: Option<Shard>,
            count: usize,
            graph6: &'a [String],
        }
        to_json(&Listing { n, dedup, shard, count: graphs.len(), graph6: &graphs })
    };
    Ok(Outcome { code: EXIT_OK, stdout })
}

/// Runs a parsed command.
pub fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let text = cli.text;
    match &cli.command {
        Command::Spectrum { input, tolerance } => spectrum_cmd(input, *tolerance, text),
        Command::Classify { input, theorem } => classify_cmd(input, *theorem, text),
        Command::Hl { input } => hl_cmd(input, text),
        Command::Build { params } => build_cmd(params, text),
        Command::Table1 { csv } => table1_cmd(*csv, text),
        Command::Verify { target, n, workers, seed, samples, dedup, timing, allow_n8 } => {
            let report = verify_cmd(*target, *n, *workers, *seed, *samples, *dedup, *timing, *allow_n8)?;
            let stdout = if text { report.to_text() } else { report.to_json() + "\n" };
            Ok(Outcome { code: if report.pass { EXIT_OK } else { EXIT_NEGATIVE }, stdout })
        }
        Command::Enumerate { n, dedup, shard } => enumerate_cmd(*n, *dedup, shard.as_deref(), text),
    }
}

fn emit(o: Outcome, path: Option<&std::path::Path>) -> Result<Outcome, CliError> {
    match path {
        None => Ok(o),
        Some(p) => {
            std::fs::write(p, &o.stdout).map_err(|e| CliError(format!("writing {}: {e}", p.display())))?;
            Ok(Outcome { code: o.code, stdout: String::new() })
        }
    }
}

/// Parses `args` (including the program name) and dispatches; usage and
/// input errors map to exit code 2 with the message on stderr.
pub fn run<I, T>(args: I) -> (Outcome, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => match dispatch(&cli).and_then(|o| emit(o, cli.output.as_deref())) {
            Ok(o) => (o, String::new()),
            Err(e) => (Outcome { code: EXIT_USAGE, stdout: String::new() }, format!("error: {e}\n")),
        },
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                (Outcome { code, stdout: rendered }, String::new())
            } else {
                (Outcome { code, stdout: String::new() }, rendered)
            }
        }
    }
}

/// JSON Schema for `verify` reports.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");
