//! `ulog` — principal logarithms, log-set structure, and geodesic distances
//! on SVD-closed subgroups of the unitary group.
//!
//! Machine-readable results go to stdout; human diagnostics go to stderr.
//! Identical command lines (including `--seed`) produce byte-identical
//! output. Exit codes: 0 success, 1 invalid input, 2 numerical-tolerance
//! failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ulog::cmatrix::CMatrix;
use ulog::error::Error;
use ulog::geodesy;
use ulog::group::{MatrixGroup, Registry};
use ulog::plog::check_plog;
use ulog::svd::svd_decompose;
use ulog::tol::Tolerances;
use ulog::verify::run_suite;

#[derive(Parser)]
#[command(
    name = "ulog",
    version,
    about = "Principal logarithms and geodesics on SVD-closed matrix groups",
    after_help = "Group selectors take the form FAMILY:ARG, e.g. unitary:4, \
special-orthogonal:3, compact-symplectic:2, quaternion-unitary:2, \
centralizer:v.json, twisted:q.json. Matrix files hold JSON objects \
{\"n\": N, \"entries\": [[[re, im], ...], ...]}."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GroupArg {
    /// Group selector, FAMILY:ARG (matrix-valued ARG is a JSON file path).
    #[arg(long)]
    group: String,
    /// Override the relative unitarity/membership tolerance.
    #[arg(long)]
    tol_unitary: Option<f64>,
    /// Override the eigenvalue-angle clustering tolerance.
    #[arg(long)]
    tol_angle: Option<f64>,
}

impl GroupArg {
    fn build(&self) -> Result<Box<dyn MatrixGroup>, Error> {
        let mut tols = Tolerances::default();
        if let Some(u) = self.tol_unitary {
            tols.unitary_rel = u;
        }
        if let Some(a) = self.tol_angle {
            tols.angle = a;
        }
        Registry::standard().build_with(&self.group, &tols)
    }
}

#[derive(Args)]
struct OutArg {
    /// Write the result to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decompose a nonzero matrix into its weighted SVD system.
    Decompose {
        /// Matrix to decompose (JSON file).
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Compute the principal logarithm of a group member.
    Plog {
        #[command(flatten)]
        group: GroupArg,
        /// Group member to take the logarithm of (JSON file).
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Report the component census of a member's logarithm set.
    Structure {
        #[command(flatten)]
        group: GroupArg,
        /// Group member whose logarithm set is analyzed (JSON file).
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Geodesic distance between two group members.
    Distance {
        #[command(flatten)]
        group: GroupArg,
        /// First endpoint (JSON file).
        #[arg(long)]
        from: PathBuf,
        /// Second endpoint (JSON file).
        #[arg(long)]
        to: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Geodesic diameter of the group.
    Diameter {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Sample the canonical minimizing geodesic between two members as CSV.
    Geodesic {
        #[command(flatten)]
        group: GroupArg,
        /// Start point (JSON file).
        #[arg(long)]
        from: PathBuf,
        /// End point (JSON file).
        #[arg(long)]
        to: PathBuf,
        /// Number of parameter steps; the CSV has steps+1 rows.
        #[arg(long, default_value_t = 16)]
        steps: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run a named invariant suite and report pass/fail per invariant.
    Verify {
        /// Suite: svd-closure, plog-minimality, metric-axioms,
        /// component-census, or embeddings.
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        group: GroupArg,
        /// Number of randomized trials.
        #[arg(long, default_value_t = 25)]
        samples: usize,
        /// RNG seed; falls back to the ULOG_SEED environment variable.
        #[arg(long, env = "ULOG_SEED", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

fn emit(out: &OutArg, payload: &str) -> Result<(), Error> {
    match &out.out {
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| Error::validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn json_payload<T: serde::Serialize>(value: &T) -> Result<String, Error> {
    let body = serde_json::to_string(value)
        .map_err(|e| Error::validation(format!("serialization failed: {e}")))?;
    Ok(format!("{body}\n"))
}

/// Flatten a path of matrices into CSV with 17-significant-digit entries.
fn geodesic_csv(points: &[(f64, CMatrix)]) -> String {
    let n = points.first().map(|(_, m)| m.n()).unwrap_or(0);
    let mut head = String::from("t");
    for i in 0..n {
        for j in 0..n {
            head.push_str(&format!(",re_{i}_{j},im_{i}_{j}"));
        }
    }
    let mut body = head;
    body.push('\n');
    for (t, m) in points {
        body.push_str(&format!("{t:.16e}"));
        for i in 0..n {
            for j in 0..n {
                let z = m.at(i, j);
                body.push_str(&format!(",{:.16e},{:.16e}", z.re, z.im));
            }
        }
        body.push('\n');
    }
    body
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Decompose { input, out } => {
            let m = CMatrix::read_json_file(&input)?;
            let sys = svd_decompose(&m)?;
            emit(&out, &json_payload(&sys)?)?;
        }
        Cmd::Plog { group, input, out } => {
            let g = group.build()?;
            let m = CMatrix::read_json_file(&input)?;
            let element = g.plog(&m)?;
            let diagnostics = check_plog(g.as_ref(), &element.log, &m)?;
            let payload = json!({
                "element": element,
                "diagnostics": diagnostics,
            });
            emit(&out, &json_payload(&payload)?)?;
        }
        Cmd::Structure { group, input, out } => {
            let g = group.build()?;
            let m = CMatrix::read_json_file(&input)?;
            let structure = g.plog_structure(&m)?;
            emit(&out, &json_payload(&structure)?)?;
        }
        Cmd::Distance { group, from, to, out } => {
            let g = group.build()?;
            let p0 = CMatrix::read_json_file(&from)?;
            let p1 = CMatrix::read_json_file(&to)?;
            let d = geodesy::distance(g.as_ref(), &p0, &p1)?;
            emit(&out, &json_payload(&d)?)?;
        }
        Cmd::Diameter { group, out } => {
            let g = group.build()?;
            emit(&out, &json_payload(&g.diameter())?)?;
        }
        Cmd::Geodesic { group, from, to, steps, out } => {
            if steps == 0 {
                return Err(Error::validation("--steps must be at least 1"));
            }
            let g = group.build()?;
            let p0 = CMatrix::read_json_file(&from)?;
            let p1 = CMatrix::read_json_file(&to)?;
            let family = geodesy::minimizing_geodesics(g.as_ref(), &p0, &p1)?;
            let geo = family.canonical();
            let mut points = Vec::with_capacity(steps + 1);
            for k in 0..=steps {
                let t = k as f64 / steps as f64;
                points.push((t, geodesy::geodesic_point(&geo, t)?));
            }
            eprintln!(
                "geodesic length {:.12e}; log set has {} component(s)",
                geo.length, family.structure.count
            );
            emit(&out, &geodesic_csv(&points))?;
        }
        Cmd::Verify { suite, group, samples, seed, out } => {
            let g = group.build()?;
            let report = run_suite(g.as_ref(), &suite, samples, seed)?;
            eprint!("{}", report.table());
            let passed = report.passed;
            emit(&out, &json_payload(&report)?)?;
            if !passed {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            println!("{}", json!({ "error": e.to_string() }));
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            println!("{}", json!({ "error": e.to_string() }));
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
