//! The `twrc` command-line front end.
//!
//! Subcommands emit plot data (CSV or JSON); rendering is left to external tools.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::channel::{db_to_linear, GaussianTwrc, SplitParams};
use crate::discrete::{self, SearchConfig, DEFAULT_MAX_ENUM};
use crate::error::{Result, TwrcError};
use crate::geometry::{RatePoint, RateRegion, R1Grid};
use crate::schemes::{self, IValues, RateConstraintSet, Scheme, SumBound, DEFAULT_GRID};

/// Environment variable capping the DM enumeration size.
pub const MAX_ENUM_VAR: &str = "TWRC_MAX_ENUM";

pub const EXIT_ARGUMENT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Default number of R1 columns in exported boundaries.
pub const DEFAULT_RESOLUTION: usize = 201;

/// A channel configuration with the schemes its figure compares.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigurePreset {
    pub name: &'static str,
    pub channel: GaussianTwrc,
    pub schemes: &'static [Scheme],
}

const PDF_SCHEMES: &[Scheme] = &[Scheme::Direct, Scheme::Df, Scheme::PartialDf];
const COMBINED_SCHEMES: &[Scheme] = &[Scheme::Df, Scheme::Cf, Scheme::Combined, Scheme::PartialDf, Scheme::Cutset];

const fn preset_channel(p1: f64, p2: f64, pr: f64, n1: f64, n2: f64, nr: f64) -> GaussianTwrc {
    GaussianTwrc { p1, p2, pr, n1, n2, nr }
}

pub const PRESETS: [FigurePreset; 4] = [
    FigurePreset {
        name: "fig-asym-pdf",
        channel: preset_channel(20.0, 20.0, 20.0, 2.0, 30.0, 6.0),
        schemes: PDF_SCHEMES,
    },
    FigurePreset {
        name: "fig-sym-pdf",
        channel: preset_channel(20.0, 20.0, 20.0, 12.0, 12.0, 6.0),
        schemes: PDF_SCHEMES,
    },
    FigurePreset {
        name: "fig-asym-combined",
        channel: preset_channel(50.0, 40.0, 20.0, 20.0, 40.0, 15.0),
        schemes: COMBINED_SCHEMES,
    },
    FigurePreset {
        name: "fig-sym-combined",
        channel: preset_channel(20.0, 20.0, 20.0, 8.0, 8.0, 6.0),
        schemes: COMBINED_SCHEMES,
    },
];

pub fn preset(name: &str) -> Result<FigurePreset> {
    PRESETS.iter().copied().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
        TwrcError::Argument(format!("unknown preset '{name}' (known: {})", names.join(", ")))
    })
}

#[derive(Debug, Parser)]
#[command(name = "twrc", version, about = "Rate regions for the full-duplex two-way relay channel")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep a scheme's parameters and export the region boundary
    Region(RegionArgs),
    /// Evaluate one scheme at fixed split parameters
    Point(PointArgs),
    /// Evaluate the partial decode-forward improvement condition
    CheckImprovement(CheckArgs),
    /// Export every scheme of a figure preset as CSV files
    Figure(FigureArgs),
    /// Search the achievable region of a discrete-memoryless channel
    Dm(DmArgs),
    /// List figure presets
    Presets,
}

#[derive(Debug, Clone, Args)]
pub struct ChannelArgs {
    /// Start from a named configuration; explicit flags override its values
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub p1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub p2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub pr: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub n1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub n2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub nr: Option<f64>,
    /// Interpret the explicit power and noise flags in dB
    #[arg(long)]
    pub db: bool,
}

impl ChannelArgs {
    pub fn resolve(&self) -> Result<GaussianTwrc> {
        let base = self.preset.as_deref().map(preset).transpose()?.map(|p| p.channel);
        let conv = |v: Option<f64>| v.map(|x| if self.db { db_to_linear(x) } else { x });
        let pick = |flag: Option<f64>, from_preset: Option<f64>, name: &str| {
            conv(flag).or(from_preset).ok_or_else(|| {
                TwrcError::Argument(format!("missing --{name} (give all six channel values or --preset)"))
            })
        };
        let ch = GaussianTwrc {
            p1: pick(self.p1, base.map(|c| c.p1), "p1")?,
            p2: pick(self.p2, base.map(|c| c.p2), "p2")?,
            pr: pick(self.pr, base.map(|c| c.pr), "pr")?,
            n1: pick(self.n1, base.map(|c| c.n1), "n1")?,
            n2: pick(self.n2, base.map(|c| c.n2), "n2")?,
            nr: pick(self.nr, base.map(|c| c.nr), "nr")?,
        };
        ch.validate()?;
        Ok(ch)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Direct,
    Df,
    PartialDf,
    Cf,
    Combined,
    Cutset,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Direct => Scheme::Direct,
            SchemeArg::Df => Scheme::Df,
            SchemeArg::PartialDf => Scheme::PartialDf,
            SchemeArg::Cf => Scheme::Cf,
            SchemeArg::Combined => Scheme::Combined,
            SchemeArg::Cutset => Scheme::Cutset,
        }
    }
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    /// Grid points per swept parameter
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    /// Number of R1 columns in the exported boundary
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long)]
    pub preset: String,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
    /// Directory receiving one `<preset>_<scheme>.csv` per scheme
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct DmArgs {
    #[arg(long)]
    pub channel_file: PathBuf,
    /// Probability step, as `1/k` or a decimal such as `0.25`
    #[arg(long, default_value = "1/2")]
    pub quantization: String,
    /// Auxiliary alphabet size for U1 and U2
    #[arg(long, default_value_t = 2)]
    pub u_size: usize,
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `1/k`, `k` (as steps) is not accepted; decimals must be a reciprocal of an integer.
pub fn parse_quantization(s: &str) -> Result<usize> {
    let bad = || TwrcError::Argument(format!("quantization '{s}' must be 1/k for a positive integer k"));
    let s = s.trim();
    if let Some(k) = s.strip_prefix("1/") {
        return k.trim().parse::<usize>().ok().filter(|&k| k > 0).ok_or_else(bad);
    }
    let step: f64 = s.parse().map_err(|_| bad())?;
    if !(step > 0.0 && step <= 1.0) {
        return Err(bad());
    }
    let k = (1.0 / step).round();
    if ((1.0 / k) - step).abs() > 1e-9 {
        return Err(bad());
    }
    Ok(k as usize)
}

/// Formats with 9 significant digits.
pub fn sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{}", if x == 0.0 { 0.0 } else { x });
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportPoint {
    pub r1: f64,
    pub r2: f64,
    /// Split parameters of a pentagon attaining this point (swept schemes only).
    pub params: Option<SplitParams>,
}

/// JSON document written by `twrc region`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub channel: GaussianTwrc,
    pub scheme: Scheme,
    pub grid: usize,
    pub resolution: usize,
    pub points: Vec<ReportPoint>,
}

/// JSON document written by `twrc point`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub channel: GaussianTwrc,
    pub scheme: Scheme,
    pub params: Option<SplitParams>,
    pub r1_max: f64,
    pub r2_max: f64,
    pub sum_max: SumBound,
    pub i_values: Option<IValues>,
}

/// Drops interior points lying on a straight segment between their neighbours.
fn drop_collinear(points: Vec<ReportPoint>) -> Vec<ReportPoint> {
    if points.len() <= 2 {
        return points;
    }
    let mut out: Vec<ReportPoint> = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if i == 0 || i + 1 == points.len() {
            out.push(p.clone());
            continue;
        }
        let (a, b) = (out.last().expect("first point kept"), &points[i + 1]);
        let cross = (p.r1 - a.r1) * (b.r2 - a.r2) - (p.r2 - a.r2) * (b.r1 - a.r1);
        let scale = (b.r1 - a.r1).abs().max((b.r2 - a.r2).abs()).max(1e-300);
        if cross.abs() > 1e-12 * scale * scale || p.params != a.params && p.params != b.params {
            out.push(p.clone());
        }
    }
    out
}

/// Pareto corners of a single pentagon, R1 strictly increasing.
fn pentagon_pareto(set: &RateConstraintSet) -> Vec<RatePoint> {
    let mut pts = set.corners();
    if pts.len() > 1 && pts[pts.len() - 1].r1 == pts[pts.len() - 2].r1 {
        pts.pop();
    }
    pts
}

/// Boundary points of a region for export.
pub fn region_points(region: &RateRegion, scheme: Scheme, resolution: usize) -> Result<Vec<ReportPoint>> {
    let swept = scheme.free_params() > 0;
    if region.pentagons.len() == 1 {
        let params = swept.then(|| region.params[0]);
        return Ok(pentagon_pareto(&region.pentagons[0])
            .into_iter()
            .map(|p| ReportPoint { r1: p.r1, r2: p.r2, params })
            .collect());
    }
    let grid = R1Grid::new(region.max_r1(), resolution)?;
    let boundary = crate::geometry::union_boundary_on(&region.pentagons, grid)?;
    let mut pts: Vec<ReportPoint> = Vec::with_capacity(boundary.points.len());
    for (p, &src) in boundary.points.iter().zip(&boundary.sources) {
        let params = swept.then(|| region.params[src]);
        match pts.last_mut() {
            Some(last) if last.r1 == p.r1 => {
                if p.r2 > last.r2 {
                    *last = ReportPoint { r1: p.r1, r2: p.r2, params };
                }
            }
            _ => pts.push(ReportPoint { r1: p.r1, r2: p.r2, params }),
        }
    }
    Ok(drop_collinear(pts))
}

pub fn csv_points(points: &[ReportPoint]) -> String {
    let mut out = String::from("r1,r2\n");
    for p in points {
        out.push_str(&sig9(p.r1));
        out.push(',');
        out.push_str(&sig9(p.r2));
        out.push('\n');
    }
    out
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| TwrcError::Io(e.to_string()))
}

fn emit(text: &str, out_path: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out_path {
        Some(path) => fs::write(path, text).map_err(|e| TwrcError::Io(format!("{}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| TwrcError::Io(e.to_string())),
    }
}

pub fn region_report(ch: &GaussianTwrc, scheme: Scheme, grid: usize, resolution: usize) -> Result<RegionReport> {
    let region = schemes::region_sweep(ch, scheme, grid)?;
    let points = region_points(&region, scheme, resolution)?;
    Ok(RegionReport { channel: *ch, scheme, grid, resolution, points })
}

fn cmd_region(args: &RegionArgs, stdout: &mut dyn Write) -> Result<()> {
    let ch = args.channel.resolve()?;
    let report = region_report(&ch, args.scheme.into(), args.grid, args.resolution)?;
    let text = match args.format {
        Format::Csv => csv_points(&report.points),
        Format::Json => to_json(&report)?,
    };
    emit(&text, args.out.as_deref(), stdout)
}

pub fn point_report(ch: &GaussianTwrc, scheme: Scheme, sp: Option<SplitParams>) -> Result<PointReport> {
    let needs_params = scheme.free_params() > 0;
    let sp = match (needs_params, sp) {
        (true, Some(sp)) => Some(sp),
        (true, None) => {
            return Err(TwrcError::Argument(format!("scheme {scheme} needs --alpha and --beta")));
        }
        (false, _) => None,
    };
    let set = scheme.evaluate(ch, &sp.unwrap_or_default());
    let i_values = (scheme == Scheme::Combined).then(|| IValues::evaluate(ch, &sp.unwrap_or_default()));
    Ok(PointReport {
        channel: *ch,
        scheme,
        params: sp,
        r1_max: set.r1_max,
        r2_max: set.r2_max,
        sum_max: set.sum_max,
        i_values,
    })
}

fn cmd_point(args: &PointArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let ch = args.channel.resolve()?;
    let scheme: Scheme = args.scheme.into();
    let warn = |stderr: &mut dyn Write, flag: &str| {
        let _ = writeln!(stderr, "warning: --{flag} has no effect for scheme {scheme}; ignored");
    };
    if args.gamma.is_some() && !scheme.uses_gamma() {
        warn(stderr, "gamma");
    }
    if scheme.free_params() == 0 {
        if args.alpha.is_some() {
            warn(stderr, "alpha");
        }
        if args.beta.is_some() {
            warn(stderr, "beta");
        }
    }
    let sp = match (args.alpha, args.beta) {
        (Some(a), Some(b)) => Some(SplitParams::new(a, b, if scheme.uses_gamma() { args.gamma.unwrap_or(0.0) } else { 0.0 })?),
        _ => None,
    };
    let report = point_report(&ch, scheme, sp)?;
    emit(&to_json(&report)?, None, stdout)
}

fn cmd_check(args: &CheckArgs, stdout: &mut dyn Write) -> Result<()> {
    let ch = args.channel.resolve()?;
    let chk = schemes::improvement_check(&ch);
    let text = if args.json {
        to_json(&chk)?
    } else {
        format!(
            "relay noisier: nr = {} > min(n1, n2) = {} -> {}\n\
             direct beats relay: C(p1/n2) + C(p2/n1) = {} > C((p1+p2)/nr) = {} -> {}\n\
             partial decode-forward strictly improves on decode-forward: {}\n",
            sig9(ch.nr),
            sig9(chk.min_user_noise),
            chk.relay_noisier,
            sig9(chk.direct_sum),
            sig9(chk.relay_mac_sum),
            chk.direct_beats_relay,
            chk.verdict
        )
    };
    emit(&text, None, stdout)
}

fn cmd_figure(args: &FigureArgs, stdout: &mut dyn Write) -> Result<()> {
    let fig = preset(&args.preset)?;
    fs::create_dir_all(&args.out_dir).map_err(|e| TwrcError::Io(format!("{}: {e}", args.out_dir.display())))?;
    for &scheme in fig.schemes {
        let report = region_report(&fig.channel, scheme, args.grid, args.resolution)?;
        let path = args.out_dir.join(format!("{}_{}.csv", fig.name, scheme.name()));
        emit(&csv_points(&report.points), Some(&path), stdout)?;
        let _ = writeln!(stdout, "{}", path.display());
    }
    Ok(())
}

fn max_enum_from_env() -> Result<u128> {
    match std::env::var(MAX_ENUM_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map_err(|_| TwrcError::Argument(format!("{MAX_ENUM_VAR}='{v}' is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_MAX_ENUM),
    }
}

fn cmd_dm(args: &DmArgs, stdout: &mut dyn Write) -> Result<()> {
    let text = fs::read_to_string(&args.channel_file)
        .map_err(|e| TwrcError::Argument(format!("{}: {e}", args.channel_file.display())))?;
    let dm = discrete::parse_channel_file(&text)?;
    let cfg = SearchConfig {
        steps: parse_quantization(&args.quantization)?,
        u_size: args.u_size,
        max_enum: max_enum_from_env()?,
    };
    let region = discrete::exhaustive_search(&dm, &cfg)?;
    let points = region_points(&region, Scheme::Direct, args.resolution)?;
    let text = match args.format {
        Format::Csv => csv_points(&points),
        Format::Json => to_json(&points)?,
    };
    emit(&text, args.out.as_deref(), stdout)
}

fn cmd_presets(stdout: &mut dyn Write) -> Result<()> {
    let mut text = String::new();
    for p in PRESETS {
        let c = p.channel;
        let names: Vec<&str> = p.schemes.iter().map(|s| s.name()).collect();
        text.push_str(&format!(
            "{}: p1={} p2={} pr={} n1={} n2={} nr={} schemes={}\n",
            p.name,
            c.p1,
            c.p2,
            c.pr,
            c.n1,
            c.n2,
            c.nr,
            names.join(",")
        ));
    }
    emit(&text, None, stdout)
}

pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Region(a) => cmd_region(a, stdout),
        Command::Point(a) => cmd_point(a, stdout, stderr),
        Command::CheckImprovement(a) => cmd_check(a, stdout),
        Command::Figure(a) => cmd_figure(a, stdout),
        Command::Dm(a) => cmd_dm(a, stdout),
        Command::Presets => cmd_presets(stdout),
    }
}

pub fn exit_code(err: &TwrcError) -> i32 {
    match err {
        TwrcError::Resource(_) => EXIT_RESOURCE,
        TwrcError::Io(_) => 1,
        _ => EXIT_ARGUMENT,
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(stderr, "{e}");
            return EXIT_ARGUMENT;
        }
        Err(e) => {
            // --help and --version
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match run(&cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
