//! `isodyn`: run the isodynamic point catalog, evaluate and mine figures,
//! and print center coordinates.
//!
//! JSON and tables go to stdout (or `--output`); progress and summaries go
//! to stderr. Exit status: 0 pass, 1 logic failure, 3 failure within the
//! numerical band only, 2 bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use isodyn_catalog::catalog::{
    discover, recheck, run_all, run_entry, run_program, Catalog, DiscoverConfig, RunConfig,
    RunReport, Tier, Verdict,
};
use isodyn_catalog::dsl::{parse, Program};
use isodyn_catalog::sampler::TriangleClass;
use isodyn_core::centers::{center, CenterId, Triangle};
use isodyn_core::formulas::{si_ratio_supremum, ExtremalConfig};
use isodyn_core::kernel::RelationKind;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "isodyn",
    version,
    about = "Randomized verification of first isodynamic point properties",
    allow_negative_numbers = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run catalog entries on random triangles and write a JSON report.
    Verify(VerifyArgs),
    /// Evaluate the assertions of a figure program.
    Eval(EvalArgs),
    /// Search a figure for relations that hold on every instance.
    Discover(DiscoverArgs),
    /// Maximize SI/R over triangle shapes.
    Extremal(ExtremalArgs),
    /// Print center coordinates for a triangle given by its sides.
    Centers(CentersArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every entry.
    #[arg(long, conflicts_with = "id", required_unless_present = "id")]
    all: bool,
    /// Entry to run; repeat for several.
    #[arg(long)]
    id: Vec<String>,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Leave the timestamp out of the report header.
    #[arg(long)]
    no_timestamp: bool,
    /// Catalog file to use instead of the built-in one.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Also run the negative controls.
    #[arg(long)]
    controls: bool,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, default_value_t = 50)]
    instances: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Triangle class, e.g. `generic`, `all-angles-lt-120`, `angle-at(A, 60)`.
    #[arg(long, default_value = "generic")]
    class: String,
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
}

#[derive(Args)]
struct EvalArgs {
    figure: PathBuf,
    #[command(flatten)]
    sample: SampleArgs,
}

#[derive(Args)]
struct DiscoverArgs {
    figure: PathBuf,
    /// Relation kinds to search, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "collinear,concyclic,concurrent,parallel,perpendicular,midpoint_of")]
    kinds: Vec<String>,
    #[command(flatten)]
    sample: SampleArgs,
}

#[derive(Args)]
struct ExtremalArgs {
    #[arg(long, default_value_t = 200)]
    starts: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct CentersArgs {
    /// Side lengths a,b,c.
    #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
    sides: Vec<f64>,
    /// Centers to print, e.g. X15,X16,Brocard1.
    #[arg(long, value_delimiter = ',', default_value = "X13,X14,X15,X16")]
    ids: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Eval(a) => eval(a),
        Command::Discover(a) => cmd_discover(a),
        Command::Extremal(a) => extremal(a),
        Command::Centers(a) => centers(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        bail!("--tol must be positive, got {tol}");
    }
    Ok(())
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(a: VerifyArgs) -> Result<u8> {
    check_tol(a.tol)?;
    let catalog = match &a.catalog {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Catalog::parse(&text).with_context(|| format!("loading {}", path.display()))?
        }
        None => Catalog::standard(),
    };
    let cfg = RunConfig {
        trials: a.trials,
        seed: a.seed,
        tol: a.tol,
    };
    let (mut entries, excluded) = if a.all {
        (run_all(&catalog, &cfg)?, catalog.excluded.clone())
    } else {
        let entries = a
            .id
            .iter()
            .map(|id| run_entry(&catalog, id, &cfg))
            .collect::<Result<Vec<_>, _>>()?;
        (entries, Vec::new())
    };
    if a.controls {
        entries.extend(run_all(&Catalog::negative_controls(), &cfg)?);
    }
    let stamp = (!a.no_timestamp).then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs())
    });
    let report = RunReport::new(cfg, entries, excluded, stamp);
    emit(&report.to_json(), a.output.as_deref())?;

    let s = &report.summary;
    for e in &report.entries {
        let flagged = match e.tier {
            Tier::Control => e.verdict != Verdict::Fail,
            _ => !matches!(e.verdict, Verdict::Pass | Verdict::PassVacuous),
        };
        if flagged {
            eprintln!("{:<16} {:<13} {:?}", e.id, e.tier.to_string(), e.verdict);
        }
    }
    eprintln!(
        "textual {} pass / {} fail; reconstructed {} pass / {} failed-reconstruction; controls {} failed / {} passed; {} excluded",
        s.textual_pass,
        s.textual_fail,
        s.reconstructed_pass,
        s.failed_reconstruction,
        s.controls_failed,
        s.controls_passed,
        s.excluded
    );
    Ok(report.outcome().exit_code() as u8)
}

fn load_figure(path: &Path) -> Result<Program> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("{}", path.display()))
}

fn parse_class(s: &str) -> Result<TriangleClass> {
    s.parse().map_err(|e: String| anyhow::anyhow!(e))
}

fn eval(a: EvalArgs) -> Result<u8> {
    check_tol(a.sample.tol)?;
    let program = load_figure(&a.figure)?;
    let class = parse_class(&a.sample.class)?;
    let calls: Vec<String> = program.assertions().map(ToString::to_string).collect();
    let tolerances = vec![a.sample.tol; calls.len()];
    let stats = run_program(&program, class, "eval", a.sample.instances, a.sample.seed, &tolerances)?;
    let assertions: Vec<_> = calls
        .iter()
        .enumerate()
        .map(|(i, call)| {
            json!({
                "call": call,
                "max_residual": stats.max_residuals[i],
                "failures": stats.failures[i],
            })
        })
        .collect();
    let out = json!({
        "figure": a.figure.display().to_string(),
        "instances": a.sample.instances,
        "completed": stats.completed,
        "skipped": stats.skipped,
        "skip_causes": stats.skip_causes,
        "tolerance": a.sample.tol,
        "assertions": assertions,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    let failed = stats.failures.iter().filter(|f| **f > 0).count();
    eprintln!(
        "{} of {} assertions hold on {} instances ({} skipped)",
        calls.len() - failed,
        calls.len(),
        stats.completed,
        stats.skipped
    );
    Ok(u8::from(failed > 0))
}

fn cmd_discover(a: DiscoverArgs) -> Result<u8> {
    check_tol(a.sample.tol)?;
    let program = load_figure(&a.figure)?;
    let kinds = a
        .kinds
        .iter()
        .map(|k| k.trim().parse::<RelationKind>().map_err(|e| anyhow::anyhow!(e)))
        .collect::<Result<Vec<_>>>()?;
    let cfg = DiscoverConfig {
        kinds,
        instances: a.sample.instances,
        seed: a.sample.seed,
        tol: a.sample.tol,
        class: parse_class(&a.sample.class)?,
    };
    let found = discover(&program, &cfg)?;
    let rejected = recheck(&program, &found, &cfg)?;
    let kept: Vec<String> = found
        .iter()
        .filter(|r| !rejected.contains(r))
        .map(ToString::to_string)
        .collect();
    let out = json!({
        "figure": a.figure.display().to_string(),
        "instances": cfg.instances,
        "recheck_instances": 10 * cfg.instances,
        "relations": kept,
        "rejected_on_recheck": rejected.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    eprintln!("{} relations, {} dropped on recheck", kept.len(), rejected.len());
    Ok(0)
}

fn extremal(a: ExtremalArgs) -> Result<u8> {
    if a.starts == 0 {
        bail!("--starts must be at least 1");
    }
    let best = si_ratio_supremum(&ExtremalConfig {
        starts: a.starts,
        seed: a.seed,
        ..ExtremalConfig::default()
    });
    let [wa, wb, wc] = best.angles;
    let out = json!({
        "k": best.k,
        "sextic_root": best.sextic_root,
        "gap": best.sextic_root - best.k,
        "witness_angles_deg": best.angles,
        "starts": a.starts,
        "seed": a.seed,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    eprintln!(
        "k = {:.10} (sextic root {:.10}) at A = {wa:.4}°, B = {wb:.4}°, C = {wc:.4}°",
        best.k, best.sextic_root
    );
    Ok(0)
}

fn centers(a: CentersArgs) -> Result<u8> {
    let [sa, sb, sc] = a.sides[..] else {
        bail!("--sides takes exactly three lengths, got {}", a.sides.len());
    };
    let t = Triangle::from_sides(sa, sb, sc).context("sides do not form a triangle")?;
    let ids = a
        .ids
        .iter()
        .map(|s| s.parse::<CenterId>())
        .collect::<Result<Vec<_>, _>>()?;
    for id in ids {
        let p = center(&t, id).with_context(|| format!("{id}"))?;
        println!("{id}\t{:.12}\t{:.12}", p.x, p.y);
    }
    Ok(0)
}
