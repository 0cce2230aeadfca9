#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use heisenberg_whitney::counterexample;
use heisenberg_whitney::extension::{extend, verify, VerifyTolerances};
use heisenberg_whitney::io::{read_json, segment_grid, write_csv, write_json, Manifest};
use heisenberg_whitney::luzin::{approximate, corner_curve, LuzinOptions, PiecewiseCurve};
use heisenberg_whitney::whitney::{validate, Tolerances, WhitneyJet};
use heisenberg_whitney::Error;

/// Whitney extension of horizontal jets in the Heisenberg group.
#[derive(Parser, Debug)]
#[command(name = "hwhitney", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Whitney, area and horizontality conditions of a jet.
    Validate(Common),
    /// Build the extension; writes a JSON manifest and a CSV of samples.
    Extend(Common),
    /// Re-run verification on a stored manifest.
    Verify(Common),
    /// Ratio and Whitney-bound table of the non-extendable jet.
    Counterexample(Common),
    /// C¹ approximation of a piecewise-polynomial horizontal curve.
    Luzin(Common),
    /// Evaluate a stored extension on a grid.
    Sample(Common),
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Validation tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Sampling density (per interval, per segment, or grid cells for `luzin`).
    #[arg(long)]
    samples: Option<usize>,
    /// Extension window `lo,hi`; defaults to the hull of K.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<[f64; 2]>,
    #[arg(long)]
    levels: Option<u32>,
    #[arg(long)]
    eps: Option<f64>,
    /// Build the extension even when validation rejects the jet.
    #[arg(long)]
    force: bool,
    /// With `sample`: draw this many uniform points instead of the segment grid.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// With `sample`: evaluate only at the sample points of K.
    #[arg(long)]
    on_k: bool,
    /// With `counterexample`: also write the truncated jet as JSON.
    #[arg(long)]
    jet: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Rejected(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Rejected { .. } => Failure::Rejected(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn parse_window(text: &str) -> std::result::Result<[f64; 2], String> {
    let parts: Vec<&str> = text.split(',').collect();
    let [lo, hi] = parts.as_slice() else {
        return Err(format!("expected lo,hi, got {text:?}"));
    };
    let lo: f64 = lo.trim().parse().map_err(|e| format!("bad lo: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("bad hi: {e}"))?;
    if !(lo <= hi) {
        return Err(format!("window needs lo <= hi, got {lo},{hi}"));
    }
    Ok([lo, hi])
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Validate(c) => run_validate(&c),
        Command::Extend(c) => run_extend(&c),
        Command::Verify(c) => run_verify(&c),
        Command::Counterexample(c) => run_counterexample(&c),
        Command::Luzin(c) => run_luzin(&c),
        Command::Sample(c) => run_sample(&c),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Rejected(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
    }
}

fn input(c: &Common) -> Result<&Path, Failure> {
    c.input.as_deref().ok_or_else(|| Failure::Usage("--input is required".into()))
}

fn output(c: &Common) -> Result<&Path, Failure> {
    c.output.as_deref().ok_or_else(|| Failure::Usage("--output is required".into()))
}

fn tolerances(c: &Common) -> Result<Tolerances, Failure> {
    let mut tol = Tolerances::default();
    if let Some(t) = c.tol {
        if !(t > 0.0) {
            return Err(Failure::Usage(format!("--tol must be positive, got {t}")));
        }
        tol.tol = t;
    }
    if let Some(s) = c.samples {
        tol.samples = s.max(2);
    }
    Ok(tol)
}

fn csv_path(manifest: &Path) -> PathBuf {
    manifest.with_extension("csv")
}

/// Writes JSON to `path`, or to stdout when no path is given.
fn emit_json<T: serde::Serialize>(path: Option<&Path>, value: &T) -> Outcome {
    match path {
        Some(p) => write_json(p, value)?,
        None => {
            let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
            println!("{text}");
        }
    }
    Ok(())
}

fn check_report(report: &heisenberg_whitney::VerificationReport) -> Outcome {
    let failures = report.failures(&VerifyTolerances::default());
    if failures.is_empty() {
        return Ok(());
    }
    let names: Vec<String> = failures.iter().map(|(name, v)| format!("{name} = {v:e}")).collect();
    Err(Failure::Verification(names.join("; ")))
}

fn run_validate(c: &Common) -> Outcome {
    let jet: WhitneyJet = read_json(input(c)?)?;
    let verdict = validate(&jet, &tolerances(c)?)?;
    emit_json(c.output.as_deref(), &verdict)?;
    if verdict.extendable {
        eprintln!("extendable");
        Ok(())
    } else {
        let names: Vec<String> = verdict.failing.iter().map(|f| format!("{f} condition fails")).collect();
        Err(Failure::Rejected(format!("rejected: {}", names.join(", "))))
    }
}

fn run_extend(c: &Common) -> Outcome {
    let jet: WhitneyJet = read_json(input(c)?)?;
    let out = output(c)?;
    let window = c.window.unwrap_or_else(|| jet.set().hull());
    let ext = extend(&jet, window, None, c.force, &tolerances(c)?)?;
    let per_segment = c.samples.unwrap_or(200);
    let report = verify(&ext, per_segment)?;
    let sampled = ext.sample(&segment_grid(&ext, per_segment))?;
    let manifest = Manifest { curve: ext, report };
    write_json(out, &manifest)?;
    let mut w = BufWriter::new(File::create(csv_path(out))?);
    write_csv(&mut w, &sampled)?;
    w.flush()?;
    check_report(&manifest.report)
}

fn run_verify(c: &Common) -> Outcome {
    let manifest: Manifest = read_json(input(c)?)?;
    let report = verify(&manifest.curve, c.samples.unwrap_or(200))?;
    emit_json(c.output.as_deref(), &report)?;
    check_report(&report)
}

fn run_counterexample(c: &Common) -> Outcome {
    let levels = c.levels.unwrap_or(11);
    let rows = counterexample::table(levels, c.samples.unwrap_or(8))?;
    let mut text =
        String::from("n,gap,ratio,expected_ratio,whitney_scale,whitney_measured,whitney_bound,whitney_holds\n");
    for r in &rows {
        let w = &r.whitney;
        text.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n, r.gap, r.ratio, r.expected_ratio, w.scale, w.measured, w.bound, w.holds
        ));
    }
    match c.output.as_deref() {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    if let Some(p) = &c.jet {
        write_json(p, &counterexample::build(levels)?)?;
    }
    Ok(())
}

fn run_luzin(c: &Common) -> Outcome {
    let curve: PiecewiseCurve = match c.input.as_deref() {
        Some(p) => read_json(p)?,
        None => corner_curve(),
    };
    let eps = c.eps.ok_or_else(|| Failure::Usage("--eps is required".into()))?;
    let mut opts = LuzinOptions::default();
    if let Some(g) = c.samples {
        opts.grid = g;
    }
    if let Some(l) = c.levels {
        opts.levels = l;
    }
    let result = approximate(&curve, eps, &opts)?;
    let out = output(c)?;
    write_json(out, &result)?;
    let ext = &result.extension;
    let sampled = ext.sample(&segment_grid(ext, 200))?;
    let mut w = BufWriter::new(File::create(csv_path(out))?);
    write_csv(&mut w, &sampled)?;
    w.flush()?;
    eprintln!("removed {} of budget {}", result.measure_removed, result.eps);
    check_report(&result.report)
}

fn run_sample(c: &Common) -> Outcome {
    let manifest: Manifest = read_json(input(c)?)?;
    let ext = &manifest.curve;
    let mut grid: Vec<f64> = if c.on_k {
        ext.jet().sample_points(c.samples.unwrap_or(64)).into_iter().map(|(_, s)| s).collect()
    } else if let Some(m) = c.random {
        let [lo, hi] = c.window.unwrap_or(ext.window());
        let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
        (0..m).map(|_| if lo == hi { lo } else { rng.gen_range(lo..=hi) }).collect()
    } else {
        segment_grid(ext, c.samples.unwrap_or(200))
    };
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let sampled = ext.sample(&grid)?;
    match c.output.as_deref() {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            write_csv(&mut w, &sampled)?;
            w.flush()?;
        }
        None => write_csv(io::stdout().lock(), &sampled)?,
    }
    Ok(())
}
