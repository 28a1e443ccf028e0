//! `nok` — construct, count, verify, and export the exact geometry.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use nok_core::fflv::{embed_fflv, AmbientFrame};
use nok_core::gz::embed_gz;
use nok_core::lattice::{self, Count};
use nok_core::lp::{self, DEFAULT_FM_ROW_CAP};
use nok_core::minkowski::MinkowskiSpec;
use nok_core::polytope::HPolytope;
use nok_core::rational::{Int, Rational};
use nok_core::verify::{
    self, character_dimensions, regression_example, sum_dilation_counts, verify_theorem, SumModel,
    VerificationReport,
};
use nok_core::weight::{BundleSpec, Weight};

use nok::json::{self, BundleSpecJson, HrepJson, MinkowskiSpecJson};
use nok::off;
use nok::text;

#[derive(Parser)]
#[command(
    name = "nok",
    version,
    about = "Exact lattice polytopes from dominant weights: construct, sum, count, verify, export",
    after_help = "Exit status: 0 success, 1 computation error, 2 usage error, 3 verification failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// H-representation of the first polytope model for one weight.
    Fflv(FactorArgs),
    /// H-representation of the interlacing polytope model for one weight.
    Gz(FactorArgs),
    /// Explicit H-representation of the Minkowski sum of the embedded
    /// factor polytopes (or of raw summands from a file).
    Msum(MsumArgs),
    /// Lattice-point count of a dilated sum or of a stored H-rep.
    Count(CountArgs),
    /// Ehrhart polynomial of a sum or of a stored H-rep.
    Ehrhart(EhrhartArgs),
    /// Nested Demazure character of a weight tuple.
    Gdc(GdcArgs),
    /// Cross-check lattice counts against character dimensions.
    Verify(VerifyArgs),
    /// Regression checks for the rank-3 worked example.
    Regress(RegressArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Off,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format (OFF only for 3-D H-rep producing commands).
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of standard output. With `--format off`
    /// an exact sidecar is also written next to it as `<FILE>.exact.json`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fractional digits for OFF vertex coordinates.
    #[arg(long, default_value_t = 6)]
    precision: usize,
    /// Append a generation timestamp to standard error (stdout stays
    /// byte-identical across runs).
    #[arg(long)]
    timestamp: bool,
}

#[derive(Args)]
struct EngineOpts {
    /// Row cap for intermediate projection systems; the environment
    /// variable NOK_FM_ROW_CAP overrides the built-in default.
    #[arg(long)]
    fm_row_cap: Option<usize>,
    /// Worker threads for independent column jobs (results do not depend
    /// on this).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl EngineOpts {
    fn row_cap(&self) -> Result<usize> {
        if let Some(cap) = self.fm_row_cap {
            return Ok(cap);
        }
        match std::env::var("NOK_FM_ROW_CAP") {
            Ok(text) => text
                .trim()
                .parse::<usize>()
                .map_err(|_| anyhow!("NOK_FM_ROW_CAP must be a positive integer, got {text:?}")),
            Err(_) => Ok(DEFAULT_FM_ROW_CAP),
        }
    }
}

#[derive(Args)]
struct FactorArgs {
    /// Ambient rank n (the factor slot is inferred from the weight size).
    #[arg(long)]
    n: usize,
    /// Comma-separated weight entries, non-increasing.
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
    #[command(flatten)]
    output: OutputOpts,
    #[command(flatten)]
    engine: EngineOpts,
}

#[derive(Args)]
struct SpecInput {
    /// Weight-tuple JSON file ({"n": ..., "weights": [...]}).
    #[arg(long, conflicts_with_all = ["n", "weights"])]
    spec: Option<PathBuf>,
    /// Ambient rank n (used with --weights).
    #[arg(long, requires = "weights")]
    n: Option<usize>,
    /// Semicolon-separated weights, comma-separated entries, e.g.
    /// "1,0,-1;1,0"; sizes must match the rank.
    #[arg(long, requires = "n", allow_hyphen_values = true)]
    weights: Option<String>,
}

impl SpecInput {
    fn load(&self) -> Result<BundleSpec> {
        if let Some(path) = &self.spec {
            let payload =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let parsed: BundleSpecJson =
                serde_json::from_str(&payload).context("parsing weight-tuple JSON")?;
            return json::spec_from_json(&parsed);
        }
        match (self.n, &self.weights) {
            (Some(n), Some(weights)) => parse_bundle_spec(n, weights),
            _ => bail!("provide either --spec FILE or both --n and --weights"),
        }
    }
}

#[derive(Args)]
struct MsumArgs {
    #[command(flatten)]
    input: SpecInput,
    /// Raw Minkowski-spec JSON file ({"dim": ..., "summands": [...]}).
    #[arg(long, conflicts_with_all = ["spec", "n", "weights"])]
    summands: Option<PathBuf>,
    /// Which factor model to sum when building from a weight tuple.
    #[arg(long, value_enum, default_value = "fflv")]
    model: Model,
    #[command(flatten)]
    output: OutputOpts,
    #[command(flatten)]
    engine: EngineOpts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    Fflv,
    Gz,
}

impl From<Model> for SumModel {
    fn from(m: Model) -> SumModel {
        match m {
            Model::Fflv => SumModel::Fflv,
            Model::Gz => SumModel::Gz,
        }
    }
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    input: SpecInput,
    /// Count a stored H-rep JSON file instead of a weight-tuple sum.
    #[arg(long, conflicts_with_all = ["spec", "n", "weights"])]
    hrep: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "fflv")]
    model: Model,
    /// Dilation factor k (counts k·P).
    #[arg(long, default_value_t = 1)]
    dilation: u32,
    #[command(flatten)]
    output: OutputOpts,
    #[command(flatten)]
    engine: EngineOpts,
}

#[derive(Args)]
struct EhrhartArgs {
    #[command(flatten)]
    input: SpecInput,
    #[arg(long, conflicts_with_all = ["spec", "n", "weights"])]
    hrep: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "fflv")]
    model: Model,
    /// Interpolation degree; defaults to the affine dimension.
    #[arg(long)]
    degree: Option<usize>,
    #[command(flatten)]
    output: OutputOpts,
    #[command(flatten)]
    engine: EngineOpts,
}

#[derive(Args)]
struct GdcArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    weights: String,
    /// Print only the dimension (a decimal integer).
    #[arg(long)]
    dim: bool,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: SpecInput,
    /// Largest dilation checked; defaults to d+2 for rank 3, 6 for rank 4,
    /// and 2 beyond that.
    #[arg(long)]
    max_dilation: Option<u32>,
    #[command(flatten)]
    output: OutputOpts,
    #[command(flatten)]
    engine: EngineOpts,
}

#[derive(Args)]
struct RegressArgs {
    /// First factor weight (rank 3), e.g. "1,0,-1". Without explicit
    /// weights the built-in trio of pairs is checked.
    #[arg(long, requires = "lambda2", allow_hyphen_values = true)]
    lambda1: Option<String>,
    /// Second factor weight (rank 2), e.g. "1,0".
    #[arg(long, requires = "lambda1", allow_hyphen_values = true)]
    lambda2: Option<String>,
    #[command(flatten)]
    output: OutputOpts,
    #[command(flatten)]
    engine: EngineOpts,
}

fn parse_weight(text: &str) -> Result<Weight> {
    let entries = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .with_context(|| format!("bad weight entry {t:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    Weight::new(entries).map_err(|e| anyhow!("{e}"))
}

fn parse_bundle_spec(n: usize, text: &str) -> Result<BundleSpec> {
    let weights = text
        .split(';')
        .map(parse_weight)
        .collect::<Result<Vec<_>>>()
        .context("parsing --weights")?;
    BundleSpec::new(n, weights).map_err(|e| anyhow!("{e}"))
}

fn load_hrep(path: &Path) -> Result<HPolytope> {
    let payload =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed: HrepJson = serde_json::from_str(&payload).context("parsing H-rep JSON")?;
    json::hrep_from_json(&parsed)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("writing standard output"),
    }
}

fn stamp(opts: &OutputOpts) {
    if opts.timestamp {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        eprintln!("# generated at unix time {now}");
    }
}

/// Shared exit for commands that print an H-rep in any of the formats.
fn emit_hrep(p: &HPolytope, labels: Option<Vec<String>>, output: &OutputOpts) -> Result<()> {
    stamp(output);
    match output.format {
        Format::Json => {
            let payload = json::hrep_to_json(p, labels)?;
            emit(&json::to_pretty_string(&payload)?, output.out.as_deref())
        }
        Format::Text => emit(
            &text::render_hrep(p, labels.as_deref()),
            output.out.as_deref(),
        ),
        Format::Off => {
            let (off_text, sidecar, _) = off::emit_off_3d(p, output.precision)?;
            emit(&off_text, output.out.as_deref())?;
            if let Some(path) = &output.out {
                let mut sidecar_path = path.as_os_str().to_owned();
                sidecar_path.push(".exact.json");
                fs::write(&sidecar_path, sidecar).with_context(|| {
                    format!("writing {}", PathBuf::from(&sidecar_path).display())
                })?;
            }
            Ok(())
        }
    }
}

/// The factor slot of a weight inside rank `n` is fixed by its size.
fn factor_slot(n: usize, weight: &Weight) -> Result<usize> {
    let m = weight.size();
    if m < 2 || m > n {
        bail!("a rank-{n} tuple takes weights of sizes 2..={n}, got {m}");
    }
    Ok(n - m + 1)
}

fn default_max_dilation(n: usize) -> u32 {
    let d = (n * (n - 1) / 2) as u32;
    match n {
        0..=3 => d + 2,
        4 => d,
        _ => 2,
    }
}

/// Runs the three verification columns on up to `jobs` threads; the report
/// is identical for every job count.
fn verify_with_jobs(
    spec: &BundleSpec,
    max_k: u32,
    row_cap: usize,
    jobs: usize,
) -> Result<VerificationReport> {
    if jobs <= 1 {
        return verify_theorem(spec, max_k, row_cap)
            .map_err(|e| anyhow!("verification aborted: {e:?}"));
    }
    let (fflv_counts, gz_counts, dims) = std::thread::scope(|scope| {
        let fflv = scope.spawn(|| sum_dilation_counts(spec, SumModel::Fflv, max_k, row_cap));
        let gz = scope.spawn(|| sum_dilation_counts(spec, SumModel::Gz, max_k, row_cap));
        let dims = scope.spawn(|| character_dimensions(spec, max_k));
        (fflv.join(), gz.join(), dims.join())
    });
    let fflv_counts = fflv_counts.map_err(|_| anyhow!("count worker panicked"))??;
    let gz_counts = gz_counts.map_err(|_| anyhow!("count worker panicked"))??;
    let dims = dims.map_err(|_| anyhow!("character worker panicked"))??;
    Ok(verify::assemble_report(
        spec,
        &fflv_counts,
        &gz_counts,
        &dims,
        row_cap,
    ))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Fflv(args) => {
            let weight = parse_weight(&args.weight)?;
            let frame = AmbientFrame::new(args.n);
            let i = factor_slot(args.n, &weight)?;
            let p = embed_fflv(frame, i, &weight);
            emit_hrep(&p, Some(frame.labels('u')), &args.output)?;
            Ok(0)
        }
        Command::Gz(args) => {
            let weight = parse_weight(&args.weight)?;
            let frame = AmbientFrame::new(args.n);
            let i = factor_slot(args.n, &weight)?;
            let p = embed_gz(frame, i, &weight);
            emit_hrep(&p, Some(frame.labels('z')), &args.output)?;
            Ok(0)
        }
        Command::Msum(args) => {
            let cap = args.engine.row_cap()?;
            let (sum, labels) = if let Some(path) = &args.summands {
                let payload = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let parsed: MinkowskiSpecJson =
                    serde_json::from_str(&payload).context("parsing Minkowski-spec JSON")?;
                let summands = parsed
                    .summands
                    .iter()
                    .map(json::hrep_from_json)
                    .collect::<Result<Vec<_>>>()?;
                (
                    MinkowskiSpec::new(parsed.dim, summands).map_err(|e| anyhow!("{e}"))?,
                    None,
                )
            } else {
                let spec = args.input.load()?;
                let frame = AmbientFrame::new(spec.n());
                let letter = match args.model {
                    Model::Fflv => 'u',
                    Model::Gz => 'z',
                };
                (
                    verify::embedded_sum(&spec, args.model.into()),
                    Some(frame.labels(letter)),
                )
            };
            let hrep = sum
                .explicit_hrep(cap)
                .map_err(|e| anyhow!("projection failed: {e} (raise --fm-row-cap)"))?;
            emit_hrep(&hrep, labels, &args.output)?;
            Ok(0)
        }
        Command::Count(args) => {
            let cap = args.engine.row_cap()?;
            let count: Count = if let Some(path) = &args.hrep {
                let p = load_hrep(path)?;
                let dilated = p.dilate(&Rational::from_integer(Int::from(args.dilation)));
                lattice::count_lattice_points(&dilated, cap).map_err(|e| anyhow!("{e}"))?
            } else {
                let spec = args.input.load()?;
                let sum = verify::embedded_sum(&spec, args.model.into());
                sum.count_sum(args.dilation, cap)
                    .map_err(|e| anyhow!("{e}"))?
            };
            stamp(&args.output);
            emit(&format!("{count}\n"), args.output.out.as_deref())?;
            Ok(0)
        }
        Command::Ehrhart(args) => {
            let cap = args.engine.row_cap()?;
            let p = if let Some(path) = &args.hrep {
                load_hrep(path)?
            } else {
                let spec = args.input.load()?;
                verify::embedded_sum(&spec, args.model.into())
                    .explicit_hrep(cap)
                    .map_err(|e| anyhow!("projection failed: {e} (raise --fm-row-cap)"))?
            };
            let degree = match args.degree {
                Some(d) => d,
                None => lp::affine_dim(&p).ok_or_else(|| anyhow!("polytope is empty"))?,
            };
            let poly = lattice::ehrhart(&p, degree, cap).map_err(|e| anyhow!("{e}"))?;
            stamp(&args.output);
            match args.output.format {
                Format::Text => {
                    let coeffs: Vec<String> = poly
                        .coefficients
                        .iter()
                        .map(nok_core::rational::format_rational)
                        .collect();
                    emit(
                        &format!(
                            "degree {}\ncoefficients {}\n",
                            poly.degree,
                            coeffs.join(" ")
                        ),
                        args.output.out.as_deref(),
                    )?;
                }
                _ => {
                    let payload = json::ehrhart_to_json(&poly);
                    emit(
                        &json::to_pretty_string(&payload)?,
                        args.output.out.as_deref(),
                    )?;
                }
            }
            Ok(0)
        }
        Command::Gdc(args) => {
            let spec = parse_bundle_spec(args.n, &args.weights)?;
            let report = nok_core::demazure::gdc(&spec);
            stamp(&args.output);
            if args.dim {
                emit(
                    &format!("{}\n", report.dimension),
                    args.output.out.as_deref(),
                )?;
            } else {
                match args.output.format {
                    Format::Text => {
                        let mut out = format!("dimension {}\n", report.dimension);
                        for (e, c) in report.polynomial.terms() {
                            out.push_str(&format!("{e:?} {c}\n"));
                        }
                        emit(&out, args.output.out.as_deref())?;
                    }
                    _ => {
                        let payload = json::character_to_json(&report)?;
                        emit(
                            &json::to_pretty_string(&payload)?,
                            args.output.out.as_deref(),
                        )?;
                    }
                }
            }
            Ok(0)
        }
        Command::Verify(args) => {
            let cap = args.engine.row_cap()?;
            let spec = args.input.load()?;
            let max_k = args
                .max_dilation
                .unwrap_or_else(|| default_max_dilation(spec.n()));
            let report = verify_with_jobs(&spec, max_k, cap, args.engine.jobs)?;
            stamp(&args.output);
            match args.output.format {
                Format::Text => emit(
                    &text::render_verification(&report),
                    args.output.out.as_deref(),
                )?,
                _ => {
                    let payload = json::verification_to_json(&report);
                    emit(
                        &json::to_pretty_string(&payload)?,
                        args.output.out.as_deref(),
                    )?;
                }
            }
            Ok(if report.verdict { 0 } else { 3 })
        }
        Command::Regress(args) => {
            let cap = args.engine.row_cap()?;
            let pairs: Vec<(Weight, Weight)> = match (&args.lambda1, &args.lambda2) {
                (Some(l1), Some(l2)) => vec![(parse_weight(l1)?, parse_weight(l2)?)],
                _ => vec![
                    (parse_weight("1,0,-1")?, parse_weight("0,0")?),
                    (parse_weight("1,0,-1")?, parse_weight("1,0")?),
                    (parse_weight("2,1,0")?, parse_weight("1,0")?),
                ],
            };
            let mut all_checks = Vec::new();
            let mut pass = true;
            for (l1, l2) in &pairs {
                if l1.size() != 3 || l2.size() != 2 {
                    bail!("regression weights have sizes 3 and 2");
                }
                let report = regression_example(l1, l2, cap);
                pass &= report.pass;
                for mut check in report.checks {
                    check.name = format!(
                        "({};{}) {}",
                        render_entries(l1),
                        render_entries(l2),
                        check.name
                    );
                    all_checks.push(check);
                }
            }
            let combined = nok_core::verify::RegressionReport {
                checks: all_checks,
                pass,
            };
            stamp(&args.output);
            match args.output.format {
                Format::Text => emit(
                    &text::render_regression(&combined),
                    args.output.out.as_deref(),
                )?,
                _ => {
                    let payload = json::regression_to_json(&combined);
                    emit(
                        &json::to_pretty_string(&payload)?,
                        args.output.out.as_deref(),
                    )?;
                }
            }
            Ok(if combined.pass { 0 } else { 3 })
        }
    }
}

fn render_entries(w: &Weight) -> String {
    w.entries()
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
