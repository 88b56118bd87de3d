//! Command definitions and dispatch.
//!
//! Defaults reproduce the classic analysis: rings at 6.4/15/30/47 km/h,
//! eight orientation classes, a 25 km/h crosswind half-width, and the
//! 95% coverage threshold.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use windrose_core::{
    best_pair, bin_observations, coefficient_table, coverage_report, mc_overlap_oracle,
    render_rose_svg, runway_designator, AnnularSector, BandGeometry, CoefficientTable,
    DesignatorMode, OrientationClasses, PairMode, RenderOptions, RoseError, StormPolicy, Strip,
    WindRose, DEFAULT_HALF_WIDTH_KMH, DEFAULT_MC_SAMPLES, DEFAULT_MC_SEED,
    FAA_COVERAGE_THRESHOLD_PCT,
};

use crate::error::CliError;
use crate::formats::{
    self, parse_raw_csv, parse_rose_csv, source_token, write_coeffs_csv, write_rose_csv,
};
use crate::report::{orient_report, orient_text, to_json_six_decimals};

#[derive(Debug, Parser)]
#[command(
    name = "windrose",
    version,
    about = "Runway orientation analysis from wind observations"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bin raw observations into a wind rose
    Bin(BinArgs),
    /// Rank runway orientations by wind coverage
    Orient(OrientArgs),
    /// Print the overlap coefficient table
    Coeffs(CoeffsArgs),
    /// Draw a wind rose as SVG
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    /// Exact overlap fractions from the strip geometry
    Derived,
    /// Fixed legacy constants (default layout only)
    Paper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PairArg {
    /// Single runway only
    None,
    /// Partner perpendicular to the best orientation
    Perpendicular,
    /// Try every partner and keep the best
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DesignatorsArg {
    /// Azimuth rounded to the nearest ten degrees
    Standard,
    /// Legacy numbering by class index (8 classes only)
    Paper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

/// Rose layout flags shared by commands that bin raw observations.
#[derive(Debug, Args)]
struct GeometryArgs {
    /// Speed ring radii in km/h, innermost first
    #[arg(long, value_delimiter = ',', default_value = "6.4,15,30,47", value_name = "R,R,...")]
    bands: Vec<f64>,

    /// Number of runway orientation classes
    #[arg(long, default_value_t = 8, value_name = "N")]
    classes: usize,
}

impl GeometryArgs {
    fn build(&self) -> Result<(BandGeometry, OrientationClasses), CliError> {
        let geometry = BandGeometry::new(self.bands.clone()).map_err(flag_error)?;
        let classes = OrientationClasses::new(self.classes).map_err(flag_error)?;
        Ok((geometry, classes))
    }
}

#[derive(Debug, Args)]
struct BinArgs {
    /// Raw observation CSV, or `-` for standard input
    #[arg(default_value = "-")]
    input: String,

    #[command(flatten)]
    geometry: GeometryArgs,

    /// Count winds above the outermost ring as calm instead of tracking
    /// them separately
    #[arg(long)]
    fold_storm: bool,

    /// Output format; text is the binned rose CSV
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Write output here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OrientArgs {
    /// Binned rose CSV or raw observation CSV (detected by header), or
    /// `-` for standard input
    #[arg(default_value = "-")]
    input: String,

    /// Rose layout for raw input; a binned file keeps its own layout
    #[command(flatten)]
    geometry: GeometryArgs,

    /// Permissible crosswind component in km/h (strip half-width)
    #[arg(long, default_value_t = DEFAULT_HALF_WIDTH_KMH, value_name = "KMH")]
    crosswind: f64,

    /// Overlap coefficient source
    #[arg(long, value_enum, default_value_t = SourceArg::Derived)]
    coeffs: SourceArg,

    /// Minimum acceptable coverage percentage
    #[arg(long, default_value_t = FAA_COVERAGE_THRESHOLD_PCT, value_name = "PCT")]
    threshold: f64,

    /// Also pick a second runway to add to the best orientation
    #[arg(long, value_enum, default_value_t = PairArg::None)]
    pair: PairArg,

    /// Runway numbering scheme
    #[arg(long, value_enum, default_value_t = DesignatorsArg::Standard)]
    designators: DesignatorsArg,

    /// Count winds above the outermost ring as calm (raw input only)
    #[arg(long)]
    fold_storm: bool,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Also render the rose with the best runway's strip to this file
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,

    /// Write the report here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CoeffsArgs {
    #[command(flatten)]
    geometry: GeometryArgs,

    /// Permissible crosswind component in km/h (strip half-width)
    #[arg(long, default_value_t = DEFAULT_HALF_WIDTH_KMH, value_name = "KMH")]
    crosswind: f64,

    /// Overlap coefficient source
    #[arg(long, value_enum, default_value_t = SourceArg::Derived)]
    coeffs: SourceArg,

    /// Check the table against a Monte Carlo estimate and report the
    /// largest deviation
    #[arg(long)]
    verify: bool,

    /// Seed for the Monte Carlo check
    #[arg(long, default_value_t = DEFAULT_MC_SEED)]
    seed: u64,

    /// Sample count for the Monte Carlo check
    #[arg(long, default_value_t = DEFAULT_MC_SAMPLES, value_name = "N")]
    mc_samples: u64,

    /// Output format; text is the coefficient CSV
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Write output here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RenderArgs {
    /// Binned rose CSV or raw observation CSV (detected by header), or
    /// `-` for standard input
    #[arg(default_value = "-")]
    input: String,

    /// Rose layout for raw input; a binned file keeps its own layout
    #[command(flatten)]
    geometry: GeometryArgs,

    /// Count winds above the outermost ring as calm (raw input only)
    #[arg(long)]
    fold_storm: bool,

    /// Draw the runway strip at this axis azimuth in degrees
    #[arg(long, value_name = "DEG")]
    strip_azimuth: Option<f64>,

    /// Strip half-width in km/h
    #[arg(long, default_value_t = DEFAULT_HALF_WIDTH_KMH, value_name = "KMH")]
    crosswind: f64,

    /// Label cells with their percentages
    #[arg(long)]
    show_values: bool,

    /// Decimal places for value labels
    #[arg(long, default_value_t = 2, value_name = "N")]
    decimals: usize,

    /// Write the SVG here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

pub fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Bin(args) => cmd_bin(args),
        Command::Orient(args) => cmd_orient(args),
        Command::Coeffs(args) => cmd_coeffs(args),
        Command::Render(args) => cmd_render(args),
    }
}

fn flag_error(e: RoseError) -> CliError {
    CliError::Validation(e.to_string())
}

fn validation(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Io(format!("standard input: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
    }
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// A binned file announces itself with a `# bands=...` header before
/// any data; anything else is treated as raw observations.
fn looks_binned(text: &str) -> bool {
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        match line.strip_prefix('#') {
            Some(rest) => {
                if rest.trim_start().starts_with("bands=") {
                    return true;
                }
            }
            None => return false,
        }
    }
    false
}

fn storm_policy(fold_storm: bool) -> StormPolicy {
    if fold_storm {
        StormPolicy::FoldIntoCalm
    } else {
        StormPolicy::Track
    }
}

fn bin_raw(text: &str, geometry: &GeometryArgs, fold_storm: bool) -> Result<WindRose, CliError> {
    let observations = parse_raw_csv(text)?;
    let (geometry, classes) = geometry.build()?;
    bin_observations(&observations, &geometry, &classes, storm_policy(fold_storm))
        .map_err(formats::rose_error)
}

fn load_rose(text: &str, geometry: &GeometryArgs, fold_storm: bool) -> Result<WindRose, CliError> {
    if looks_binned(text) {
        parse_rose_csv(text)
    } else {
        bin_raw(text, geometry, fold_storm)
    }
}

/// Resolves the coefficient table, holding the fixed legacy constants
/// to the one layout they describe.
fn resolve_table(
    source: SourceArg,
    geometry: &BandGeometry,
    classes: &OrientationClasses,
    crosswind: f64,
) -> Result<CoefficientTable, CliError> {
    match source {
        SourceArg::Derived => {
            coefficient_table(geometry, classes, crosswind).map_err(validation)
        }
        SourceArg::Paper => {
            let default_bands = geometry.ring_radii() == [6.4, 15.0, 30.0, 47.0];
            if !default_bands || classes.count() != 8 || crosswind != DEFAULT_HALF_WIDTH_KMH {
                return Err(CliError::Validation(String::from(
                    "--coeffs paper is only defined for the default layout \
                     (--bands 6.4,15,30,47 --classes 8 --crosswind 25)",
                )));
            }
            Ok(CoefficientTable::compat())
        }
    }
}

#[derive(Debug, Serialize)]
struct RoseJson<'a> {
    schema_version: u32,
    bands: &'a [f64],
    classes: usize,
    cells: Vec<&'a [f64]>,
    above_max: f64,
    calm_pct: f64,
}

fn rose_json(rose: &WindRose) -> String {
    let body = RoseJson {
        schema_version: 1,
        bands: rose.geometry().ring_radii(),
        classes: rose.class_count(),
        cells: (0..rose.band_count()).map(|b| rose.band_row(b)).collect(),
        above_max: rose.above_max(),
        calm_pct: rose.calm_pct(),
    };
    let mut text = serde_json::to_string(&body).expect("rose serialization cannot fail");
    text.push('\n');
    text
}

fn cmd_bin(args: &BinArgs) -> Result<(), CliError> {
    let text = read_input(&args.input)?;
    let rose = bin_raw(&text, &args.geometry, args.fold_storm)?;
    let rendered = match args.format {
        FormatArg::Text => write_rose_csv(&rose),
        FormatArg::Json => rose_json(&rose),
    };
    write_output(args.out.as_ref(), &rendered)
}

fn cmd_orient(args: &OrientArgs) -> Result<(), CliError> {
    if !(args.threshold > 0.0 && args.threshold <= 100.0) {
        return Err(CliError::Validation(format!(
            "--threshold must be in (0, 100], got {}",
            args.threshold
        )));
    }
    let text = read_input(&args.input)?;
    let rose = load_rose(&text, &args.geometry, args.fold_storm)?;
    let classes = *rose.classes();
    let table = resolve_table(args.coeffs, rose.geometry(), &classes, args.crosswind)?;
    let mode = match args.designators {
        DesignatorsArg::Standard => DesignatorMode::Standard,
        DesignatorsArg::Paper => DesignatorMode::Compat,
    };
    let report = coverage_report(&rose, &table, mode, args.threshold).map_err(validation)?;
    let designators: Result<Vec<_>, _> = (0..classes.count())
        .map(|class| runway_designator(classes.axis_deg(class), mode, class, classes.count()))
        .collect();
    let designators = designators.map_err(validation)?;
    let pair = match args.pair {
        PairArg::None => None,
        PairArg::Perpendicular | PairArg::Exhaustive => {
            let mode = match args.pair {
                PairArg::Perpendicular => PairMode::Perpendicular,
                _ => PairMode::Exhaustive,
            };
            let ((_, partner), pct) =
                best_pair(&rose, report.best_class, mode, args.crosswind).map_err(validation)?;
            Some((mode, partner, pct))
        }
    };
    let body = orient_report(
        &report,
        &classes,
        &designators,
        args.crosswind,
        table.source(),
        pair,
    );
    if let Some(svg_path) = &args.svg {
        let strip = Strip::new(report.best_azimuth_deg, args.crosswind).map_err(validation)?;
        let options = RenderOptions { strip: Some(strip), ..RenderOptions::default() };
        let svg = render_rose_svg(&rose, &options).map_err(validation)?;
        fs::write(svg_path, svg)
            .map_err(|e| CliError::Io(format!("{}: {e}", svg_path.display())))?;
    }
    let rendered = match args.format {
        FormatArg::Json => to_json_six_decimals(&body),
        FormatArg::Text => orient_text(&body),
    };
    write_output(args.out.as_ref(), &rendered)
}

#[derive(Debug, Serialize)]
struct VerifyJson {
    seed: u64,
    samples: u64,
    max_abs_deviation: f64,
}

#[derive(Debug, Serialize)]
struct CoeffsJson<'a> {
    schema_version: u32,
    source: &'static str,
    bands: &'a [f64],
    classes: usize,
    crosswind_half_width_kmph: f64,
    rows: &'a [Vec<f64>],
    #[serde(skip_serializing_if = "Option::is_none")]
    verify: Option<VerifyJson>,
}

/// Largest absolute gap between the table and a Monte Carlo estimate
/// over every band and offset cell.
fn verify_against_mc(
    table: &CoefficientTable,
    geometry: &BandGeometry,
    classes: &OrientationClasses,
    crosswind: f64,
    samples: u64,
    seed: u64,
) -> Result<f64, CliError> {
    let strip = Strip::new(0.0, crosswind).map_err(validation)?;
    let width = classes.width_deg();
    let mut max_abs = 0.0f64;
    for band in 0..geometry.band_count() {
        let (r0, r1) = geometry.band_bounds(band);
        for offset in 0..classes.count() {
            let center = offset as f64 * width;
            let cell = AnnularSector::new(r0, r1, center - 0.5 * width, center + 0.5 * width)
                .map_err(validation)?;
            let estimate = mc_overlap_oracle(&cell, &strip, samples, seed).map_err(validation)?;
            max_abs = max_abs.max((table.get(band, offset) - estimate).abs());
        }
    }
    Ok(max_abs)
}

fn cmd_coeffs(args: &CoeffsArgs) -> Result<(), CliError> {
    let (geometry, classes) = args.geometry.build()?;
    let table = resolve_table(args.coeffs, &geometry, &classes, args.crosswind)?;
    let deviation = if args.verify {
        Some(verify_against_mc(
            &table,
            &geometry,
            &classes,
            args.crosswind,
            args.mc_samples,
            args.seed,
        )?)
    } else {
        None
    };
    let rendered = match args.format {
        FormatArg::Text => {
            let mut text = write_coeffs_csv(&table, &geometry, args.crosswind);
            if let Some(dev) = deviation {
                text.push_str(&format!(
                    "# verify max_abs_deviation={} samples={} seed={}\n",
                    formats::format_sig9(dev),
                    args.mc_samples,
                    args.seed
                ));
            }
            text
        }
        FormatArg::Json => {
            let body = CoeffsJson {
                schema_version: 1,
                source: source_token(table.source()),
                bands: geometry.ring_radii(),
                classes: classes.count(),
                crosswind_half_width_kmph: args.crosswind,
                rows: table.rows(),
                verify: deviation.map(|dev| VerifyJson {
                    seed: args.seed,
                    samples: args.mc_samples,
                    max_abs_deviation: dev,
                }),
            };
            let mut text =
                serde_json::to_string(&body).expect("table serialization cannot fail");
            text.push('\n');
            text
        }
    };
    write_output(args.out.as_ref(), &rendered)
}

fn cmd_render(args: &RenderArgs) -> Result<(), CliError> {
    let text = read_input(&args.input)?;
    let rose = load_rose(&text, &args.geometry, args.fold_storm)?;
    let strip = args
        .strip_azimuth
        .map(|azimuth| Strip::new(azimuth, args.crosswind))
        .transpose()
        .map_err(validation)?;
    let options = RenderOptions {
        strip,
        show_values: args.show_values,
        decimals: args.decimals,
        ..RenderOptions::default()
    };
    let svg = render_rose_svg(&rose, &options).map_err(validation)?;
    write_output(args.out.as_ref(), &svg)
}
