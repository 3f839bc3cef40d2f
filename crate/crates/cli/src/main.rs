//! `octoplane`: runs the verification suites and a few point utilities.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage
//! or input errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use octoplane_core::isometry::apply_composition;
use octoplane_core::plane::{self, ChartPoint};
use octoplane_core::report::{self, RunConfig, Suite, VerificationReport, SCHEMA};
use octoplane_core::tolerances::SECOND_JET_STEP;
use octoplane_core::{HomogeneousTriple, IsometryComposition, PlaneKind};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "octoplane", version, about = "Verify the octonionic plane geometries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report every check.
    Verify {
        suite: SuiteArg,
        #[arg(long, default_value = "all")]
        plane: PlaneArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Override every check's tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Override the finite-difference step.
        #[arg(long)]
        fd_step: Option<f64>,
        /// Only print failing checks.
        #[arg(long, short)]
        quiet: bool,
    },
    /// Print the nonzero curvature components at the base point as JSON.
    DumpCurvature {
        #[arg(long)]
        plane: PlaneName,
        #[arg(long, default_value_t = SECOND_JET_STEP)]
        fd_step: f64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Normalize a homogeneous triple `[[8 reals], [8 reals], [8 reals]]`.
    Normalize {
        #[arg(long)]
        plane: PlaneName,
        triple: String,
    },
    /// Apply an isometry composition (a JSON list of steps) to a triple.
    Apply {
        #[arg(long)]
        plane: PlaneName,
        #[arg(long)]
        steps: String,
        triple: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Algebra,
    Metric,
    Isometry,
    Curvature,
    Osserman,
    Spectrum,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::All => Suite::ALL.to_vec(),
            SuiteArg::Algebra => vec![Suite::Algebra],
            SuiteArg::Metric => vec![Suite::Metric],
            SuiteArg::Isometry => vec![Suite::Isometry],
            SuiteArg::Curvature => vec![Suite::Curvature],
            SuiteArg::Osserman => vec![Suite::Osserman],
            SuiteArg::Spectrum => vec![Suite::Spectrum],
        }
    }

    fn name(self) -> &'static str {
        match self {
            SuiteArg::All => "all",
            SuiteArg::Algebra => "algebra",
            SuiteArg::Metric => "metric",
            SuiteArg::Isometry => "isometry",
            SuiteArg::Curvature => "curvature",
            SuiteArg::Osserman => "osserman",
            SuiteArg::Spectrum => "spectrum",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PlaneName {
    Op2,
    Para,
    Op11,
    Oh2,
}

impl From<PlaneName> for PlaneKind {
    fn from(p: PlaneName) -> PlaneKind {
        match p {
            PlaneName::Op2 => PlaneKind::Op2,
            PlaneName::Para => PlaneKind::ParaOp2,
            PlaneName::Op11 => PlaneKind::Op11,
            PlaneName::Oh2 => PlaneKind::Oh2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PlaneArg {
    All,
    Op2,
    Para,
    Op11,
    Oh2,
}

impl PlaneArg {
    fn kinds(self) -> Vec<PlaneKind> {
        match self {
            PlaneArg::All => PlaneKind::ALL.to_vec(),
            PlaneArg::Op2 => vec![PlaneKind::Op2],
            PlaneArg::Para => vec![PlaneKind::ParaOp2],
            PlaneArg::Op11 => vec![PlaneKind::Op11],
            PlaneArg::Oh2 => vec![PlaneKind::Oh2],
        }
    }

    fn name(self) -> &'static str {
        match self {
            PlaneArg::All => "all",
            PlaneArg::Op2 => "op2",
            PlaneArg::Para => "para",
            PlaneArg::Op11 => "op11",
            PlaneArg::Oh2 => "oh2",
        }
    }
}

// Write to stdout, ignoring a closed pipe (e.g. `octoplane ... | head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { suite, plane, seed, samples, tol, json, fd_step, quiet } => {
            if tol.is_some_and(|t| t.is_nan() || t < 0.0) {
                return usage_error("--tol must be a non-negative number");
            }
            if fd_step.is_some_and(|h| h.is_nan() || h <= 0.0) {
                return usage_error("--fd-step must be positive");
            }
            let cfg = RunConfig { seed, samples, tol, fd_step };
            verify(suite, plane, &cfg, json, quiet)
        }
        Command::DumpCurvature { plane, fd_step, json } => {
            let kind = PlaneKind::from(plane);
            let records = report::curvature_dump(kind, fd_step);
            let doc = json!({ "schema": SCHEMA, "plane": kind, "fd_step": fd_step, "components": records });
            emit(&doc, json.as_ref())
        }
        Command::Normalize { plane, triple } => {
            let kind = PlaneKind::from(plane);
            let point = HomogeneousTriple::parse(kind.algebra(), &triple).and_then(|t| plane::normalize(kind, &t));
            match point {
                Ok(p) => emit(&point_json(&p), None),
                Err(e) => usage_error(e),
            }
        }
        Command::Apply { plane, steps, triple } => {
            let kind = PlaneKind::from(plane);
            let comp: IsometryComposition = match serde_json::from_str(&steps) {
                Ok(c) => c,
                Err(e) => return usage_error(format!("steps: {e}")),
            };
            let image = HomogeneousTriple::parse(kind.algebra(), &triple)
                .and_then(|t| plane::normalize(kind, &t))
                .and_then(|p| apply_composition(kind, &comp, &p));
            match image {
                Ok(p) => emit(&point_json(&p), None),
                Err(e) => usage_error(e),
            }
        }
    }
}

fn point_json(p: &ChartPoint) -> Value {
    json!({
        "plane": p.kind,
        "chart": p.chart,
        "u": p.u.coeffs(),
        "v": p.v.coeffs(),
        "triple": p.triple().coeff_arrays(),
    })
}

fn emit(doc: &Value, path: Option<&PathBuf>) -> ExitCode {
    let text = serde_json::to_string_pretty(doc).expect("reports serialize");
    match path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                return usage_error(format!("cannot write {}: {e}", path.display()));
            }
        }
        None => out!("{text}"),
    }
    ExitCode::SUCCESS
}

fn verify(suite: SuiteArg, plane: PlaneArg, cfg: &RunConfig, json: Option<PathBuf>, quiet: bool) -> ExitCode {
    let kinds = plane.kinds();
    let suites = suite.suites();
    // One thread per plane; reports are merged back in a fixed order.
    let reports: Vec<VerificationReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = kinds
            .iter()
            .map(|&kind| {
                let suites = &suites;
                scope.spawn(move || suites.iter().map(|&s| report::run_suite(s, kind, cfg)).collect::<Vec<_>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("suite thread panicked")).collect()
    });

    let pass = reports.iter().all(VerificationReport::pass);
    for r in &reports {
        print_report(r, quiet);
    }
    let failed = reports.iter().filter(|r| !r.pass()).count();
    out!("{}: {} of {} reports passed", if pass { "PASS" } else { "FAIL" }, reports.len() - failed, reports.len());

    if let Some(path) = json {
        let doc = json!({
            "schema": SCHEMA,
            "suite": suite.name(),
            "plane": plane.name(),
            "seed": cfg.seed,
            "samples": cfg.samples,
            "tol": cfg.tol,
            "fd_step": cfg.fd_step,
            "pass": pass,
            "reports": reports,
        });
        let code = emit(&doc, Some(&path));
        if code != ExitCode::SUCCESS {
            return code;
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_report(r: &VerificationReport, quiet: bool) {
    let status = if r.pass() { "PASS" } else { "FAIL" };
    out!("{status} {}/{} ({} checks, {:.2?})", r.suite, r.plane, r.checks.len(), r.wall_time);
    for c in &r.checks {
        if quiet && c.pass {
            continue;
        }
        out!(
            "  {} {:<24} worst {:<10.3e} tol {:<8.1e} {}",
            if c.pass { "ok  " } else { "FAIL" },
            c.name,
            c.worst_residual,
            c.tolerance,
            c.anchor
        );
    }
    if let Some(w) = &r.witness {
        if !quiet || !w.pass {
            out!(
                "  {} {:<24} kernel dim {} (full operator {}), kernel null residual {:.1e}, full J on kernel {:.1e}",
                if w.pass { "ok  " } else { "FAIL" },
                "non_isotropy_witness",
                w.restricted_kernel_dim,
                w.full_kernel_dim,
                w.kernel_null_residual,
                w.full_operator_on_kernel
            );
        }
    }
}
