//! Command-line surface over the matpoly library.
//!
//! Subcommands map one-to-one onto library modules: `compute` renders
//! invariants of a single matroid, `dual` the coboundary polynomial of its
//! dual, `zeta` the zeta coefficients, `reconstruct` recovers a coboundary
//! polynomial from a Mobius pair, `verify` runs the identity suite, and
//! `search` drives the randomized counterexample search.
//!
//! Exit codes: 0 success, 1 error or failed verification, 2 counterexample
//! found by `search` (a discovery, not a failure).

use clap::{Args, Parser, Subcommand, ValueEnum};
use matpoly::error::{Error, Result};
use matpoly::invariants::{
    coboundary, mobius_poly, tutte, CoboundaryPoly, PolyDocument, TuttePoly,
};
use matpoly::matroid::Matroid;
use matpoly::reconstruct::{
    reconstruct_linear, reconstruct_zeta, Outcome, ReconstructionReport,
};
use matpoly::search::{run_search, summarize, SearchConfig};
use matpoly::verify::verify_matroid;
use matpoly::zeta::{zeta_from_chi, ZetaPoly};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(name = "matpoly", version, about = "Exact matroid polynomial toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Chi,
    Mu,
    Tutte,
    Zeta,
    Params,
    All,
}

#[derive(Args)]
struct Source {
    /// Matrix or rank-table file; the header line tells them apart.
    #[arg(long, value_name = "FILE", conflicts_with = "uniform")]
    input: Option<PathBuf>,
    /// Uniform matroid U(k, n), written "k,n".
    #[arg(long, value_name = "K,N")]
    uniform: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of one matroid; the parameter line is always included.
    Compute {
        #[command(flatten)]
        source: Source,
        /// Which invariants to render.
        #[arg(long, value_enum, default_value_t = What::All)]
        what: What,
    },
    /// Coboundary polynomial of the dual matroid.
    Dual {
        #[command(flatten)]
        source: Source,
    },
    /// Zeta coefficients P_0 .. P_r.
    Zeta {
        #[command(flatten)]
        source: Source,
    },
    /// Recover the coboundary polynomial from a Mobius polynomial pair.
    Reconstruct {
        /// JSON document with the Mobius polynomial of the matroid.
        #[arg(long, value_name = "FILE")]
        mu: PathBuf,
        /// JSON document with the Mobius polynomial of the dual.
        #[arg(long = "mu-dual", value_name = "FILE")]
        mu_dual: PathBuf,
        /// Which reconstruction to run.
        #[arg(long, default_value = "both", value_parser = ["linear", "zeta", "both"])]
        method: String,
    },
    /// Run every identity check; exit 0 only if all pass.
    Verify {
        #[command(flatten)]
        source: Source,
    },
    /// Randomized search for matroids sharing (mu, mu*) but not chi.
    Search {
        /// Field size (prime).
        #[arg(long)]
        q: u64,
        /// Rank of the sampled matrices.
        #[arg(long)]
        k: usize,
        /// Number of columns.
        #[arg(long)]
        n: usize,
        /// Required minimum cocircuit size.
        #[arg(long)]
        d: usize,
        /// Required minimum circuit size.
        #[arg(long)]
        dstar: usize,
        /// Number of accepted samples to collect.
        #[arg(long)]
        trials: usize,
        /// RNG seed; together with the attempt index it fixes every sample.
        #[arg(long)]
        seed: u64,
        /// Append-only JSONL record file; reruns resume from it.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Abort after this many attempts (default 1000 per trial).
        #[arg(long, value_name = "N")]
        attempt_cap: Option<u64>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

/// Applies MATPOLY_THREADS to the global rayon pool; 0 or unset = automatic.
fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var("MATPOLY_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| {
        Error::Invalid(format!("MATPOLY_THREADS must be a number, got {raw:?}"))
    })?;
    if n == 0 {
        return Ok(());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Invalid(format!("cannot size the thread pool: {e}")))
}

fn run(cli: Cli) -> Result<i32> {
    let format = cli.format;
    match cli.command {
        Command::Compute { source, what } => {
            let m = source.load()?;
            print!("{}", render_compute(&m, what, format)?);
            Ok(0)
        }
        Command::Dual { source } => {
            let m = source.load()?;
            print!("{}", render_dual(&m, format)?);
            Ok(0)
        }
        Command::Zeta { source } => {
            let m = source.load()?;
            print!("{}", render_compute(&m, What::Zeta, format)?);
            Ok(0)
        }
        Command::Reconstruct { mu, mu_dual, method } => {
            print!("{}", render_reconstruct(&mu, &mu_dual, &method, format)?);
            Ok(0)
        }
        Command::Verify { source } => {
            let m = source.load()?;
            let report = verify_matroid(&m);
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{:#}", report.to_json()),
            }
            Ok(if report.pass() { 0 } else { 1 })
        }
        Command::Search { q, k, n, d, dstar, trials, seed, out, attempt_cap } => {
            let config = SearchConfig { q, k, n, d, dstar, trials, seed, attempt_cap };
            let started = Instant::now();
            let report = run_search(&config, out.as_deref())?;
            let summary = summarize(&report)?;
            // The summary is the machine-readable artifact; timing is
            // diagnostic only and must not perturb stdout determinism.
            println!(
                "{:#}",
                serde_json::to_value(&summary)
                    .map_err(|e| Error::Invalid(format!("summary serialization: {e}")))?
            );
            eprintln!(
                "search finished in {} ms ({} attempts)",
                started.elapsed().as_millis(),
                summary.attempted
            );
            Ok(if summary.counterexamples.is_empty() { 0 } else { 2 })
        }
    }
}

impl Source {
    fn load(&self) -> Result<Matroid> {
        match (&self.input, &self.uniform) {
            (Some(path), None) => load_matroid_file(path),
            (None, Some(spec)) => parse_uniform(spec),
            _ => Err(Error::Invalid(
                "provide exactly one of --input or --uniform".into(),
            )),
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

/// Loads a matroid from a matrix file (`q k n` header) or an explicit rank
/// table (`ranks n` header).
fn load_matroid_file(path: &Path) -> Result<Matroid> {
    Matroid::parse_any(&read_file(path)?)
}

fn parse_uniform(spec: &str) -> Result<Matroid> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [k, n] = parts[..] else {
        return Err(Error::Parse(format!(
            "--uniform expects \"k,n\", got {spec:?}"
        )));
    };
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad uniform parameter {s:?}")))
    };
    Matroid::uniform(parse(k)?, parse(n)?)
}

/// The zeta polynomial of a matroid, routed through its coboundary
/// polynomial and (d, d*) profile.
fn zeta_of(m: &Matroid, chi: &CoboundaryPoly) -> Result<ZetaPoly> {
    let p = m.params();
    let (Some(d), Some(dstar)) = (p.d, p.dstar) else {
        return Err(Error::Invalid(
            "the zeta polynomial needs both a circuit and a cocircuit \
             (0 < k < n)"
                .into(),
        ));
    };
    zeta_from_chi(chi, d, dstar)
}

fn zeta_line(z: &ZetaPoly) -> String {
    let mut parts = vec![format!("r={}", z.r())];
    for (i, p) in z.coeffs.iter().enumerate() {
        parts.push(format!("P_{i} = {}", p.to_text()));
    }
    parts.join(", ")
}

fn zeta_json(z: &ZetaPoly) -> Value {
    json!({
        "n": z.n,
        "k": z.k,
        "d": z.d,
        "r": z.r(),
        "coeffs": z.coeff_parts(),
    })
}

fn poly_lines(name: &str, polys: &[matpoly::poly::PolyT]) -> String {
    let mut out = String::new();
    for (j, p) in polys.iter().enumerate() {
        out.push_str(&format!("{name}_{j} = {}\n", p.to_text()));
    }
    out
}

fn render_compute(m: &Matroid, what: What, format: Format) -> Result<String> {
    let params = m.params();
    let wants = |w: What| what == w || what == What::All;

    let chi = if wants(What::Chi) || wants(What::Zeta) {
        Some(coboundary(m)?)
    } else {
        None
    };
    let mu = if wants(What::Mu) { Some(mobius_poly(m)?) } else { None };
    let tutte_poly: Option<TuttePoly> =
        if wants(What::Tutte) { Some(tutte(m)?) } else { None };
    // Under --what all a matroid without circuits (k = n) still renders;
    // the zeta line just records why it is absent. An explicit --what zeta
    // propagates the error instead.
    let zeta = match chi.as_ref() {
        Some(c) if wants(What::Zeta) => match zeta_of(m, c) {
            Ok(z) => Some(Ok(z)),
            Err(e) if what == What::All => Some(Err(e)),
            Err(e) => return Err(e),
        },
        _ => None,
    };

    match format {
        Format::Text => {
            let mut out = params.to_line();
            out.push('\n');
            if let (true, Some(c)) = (wants(What::Chi), chi.as_ref()) {
                out.push_str(&poly_lines("chi", &c.chi));
            }
            if let Some(mu) = mu.as_ref() {
                out.push_str(&poly_lines("mu", &mu.mu));
            }
            if let Some(t) = tutte_poly.as_ref() {
                out.push_str(&format!("tutte = {}\n", t.to_text()));
            }
            match zeta.as_ref() {
                Some(Ok(z)) => out.push_str(&format!("{}\n", zeta_line(z))),
                Some(Err(e)) => out.push_str(&format!("zeta: {e}\n")),
                None => {}
            }
            Ok(out)
        }
        Format::Json => {
            let mut doc = json!({
                "n": params.n,
                "k": params.k,
                "params": params,
            });
            let obj = doc.as_object_mut().expect("document is an object");
            if let (true, Some(c)) = (wants(What::Chi), chi.as_ref()) {
                obj.insert("chi".into(), json!(c.coeff_strings()));
            }
            if let Some(mu) = mu.as_ref() {
                obj.insert("mu".into(), json!(mu.coeff_strings()));
            }
            if let Some(t) = tutte_poly.as_ref() {
                obj.insert("tutte".into(), json!(t.coeff_strings()));
            }
            match zeta {
                Some(Ok(z)) => {
                    obj.insert("zeta".into(), zeta_json(&z));
                }
                Some(Err(e)) => {
                    obj.insert("zeta".into(), json!({ "error": e.to_string() }));
                }
                None => {}
            }
            Ok(format!("{doc:#}\n"))
        }
    }
}

/// Renders the coboundary polynomial of the dual, computed directly from
/// the dual matroid's lattice of flats.
fn render_dual(m: &Matroid, format: Format) -> Result<String> {
    let dual = m.dual();
    let params = dual.params();
    let chi = coboundary(&dual)?;
    match format {
        Format::Text => {
            let mut out = params.to_line();
            out.push('\n');
            out.push_str(&poly_lines("chi", &chi.chi));
            Ok(out)
        }
        Format::Json => {
            let doc = json!({
                "n": params.n,
                "k": params.k,
                "params": params,
                "chi": chi.coeff_strings(),
            });
            Ok(format!("{doc:#}\n"))
        }
    }
}

fn read_mu_document(path: &Path) -> Result<matpoly::invariants::MobiusPoly> {
    PolyDocument::from_json(&read_file(path)?)?.mu()
}

fn render_reconstruct(
    mu_path: &Path,
    mu_dual_path: &Path,
    method: &str,
    format: Format,
) -> Result<String> {
    let mu = read_mu_document(mu_path)?;
    let mu_dual = read_mu_document(mu_dual_path)?;

    let mut reports: Vec<ReconstructionReport> = Vec::new();
    if method == "linear" || method == "both" {
        reports.push(reconstruct_linear(&mu, &mu_dual)?);
    }
    if method == "zeta" || method == "both" {
        reports.push(reconstruct_zeta(&mu, &mu_dual)?);
    }

    let chis: Vec<&CoboundaryPoly> = reports
        .iter()
        .filter_map(|r| match &r.outcome {
            Outcome::Unique { chi } => Some(chi),
            Outcome::Underdetermined { .. } => None,
        })
        .collect();
    if chis.len() == 2 && chis[0] != chis[1] {
        return Err(Error::Integrity(
            "the linear and zeta reconstructions disagree".into(),
        ));
    }
    let agree = reports.len() < 2 || {
        let unique: Vec<bool> = reports
            .iter()
            .map(|r| matches!(r.outcome, Outcome::Unique { .. }))
            .collect();
        unique[0] == unique[1] && (chis.len() < 2 || chis[0] == chis[1])
    };

    match format {
        Format::Text => {
            let mut out = String::new();
            for report in &reports {
                out.push_str(&report.to_text());
            }
            if reports.len() == 2 {
                out.push_str(&format!("methods agree: {agree}\n"));
            }
            Ok(out)
        }
        Format::Json => {
            let chi_doc = chis.first().map(|chi| {
                json!({
                    "n": chi.n,
                    "k": chi.k,
                    "chi": chi.coeff_strings(),
                })
            });
            let doc = json!({
                "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                "methods_agree": agree,
                "chi": chi_doc,
            });
            Ok(format!("{doc:#}\n"))
        }
    }
}
