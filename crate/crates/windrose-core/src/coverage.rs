//! Coverage computation: circular correlation of a rose with a
//! coefficient table, best-orientation selection, the FAA threshold,
//! runway designators, and second-runway search.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::geometry::{self, AnnularSector, GeometryError, Strip};
use crate::rose::{fold_half_turn, WindRose};

/// Minimum wind coverage the FAA requires of a runway system, percent.
pub const FAA_COVERAGE_THRESHOLD_PCT: f64 = 95.0;

/// Where a coefficient table's entries come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientSource {
    /// Exact annular-sector/strip overlap fractions.
    Derived,
    /// The legacy constants measured from scale drawings, kept to
    /// reproduce established results verbatim.
    Compat,
}

/// Coverage and selection failures.
#[derive(Debug, Clone, PartialEq)]
pub enum CoverageError {
    DimensionMismatch {
        table_bands: usize,
        table_classes: usize,
        rose_bands: usize,
        rose_classes: usize,
    },
    BadTable(String),
    /// The compat designator numbering is defined for 8 classes only.
    CompatModeUnavailable { classes: usize },
    ClassOutOfRange { class: usize, count: usize },
    SameClass,
    /// Perpendicular pairing needs an even class count.
    OddClassCount { classes: usize },
    Geometry(GeometryError),
}

impl fmt::Display for CoverageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverageError::DimensionMismatch {
                table_bands,
                table_classes,
                rose_bands,
                rose_classes,
            } => write!(
                f,
                "coefficient table is {table_bands}x{table_classes} but the rose is {rose_bands}x{rose_classes}"
            ),
            CoverageError::BadTable(msg) => write!(f, "bad coefficient table: {msg}"),
            CoverageError::CompatModeUnavailable { classes } => write!(
                f,
                "compat runway numbering is defined for 8 classes, not {classes}"
            ),
            CoverageError::ClassOutOfRange { class, count } => {
                write!(f, "class {class} is out of range for {count} classes")
            }
            CoverageError::SameClass => write!(f, "a runway pair needs two distinct classes"),
            CoverageError::OddClassCount { classes } => write!(
                f,
                "perpendicular pairing needs an even class count, got {classes}"
            ),
            CoverageError::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CoverageError {}

impl From<GeometryError> for CoverageError {
    fn from(e: GeometryError) -> Self {
        CoverageError::Geometry(e)
    }
}

/// Per-band, per-offset overlap fractions between rose cells and a
/// runway strip. Entry `[band][k]` applies to cells `k` classes away
/// from the runway orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    source: CoefficientSource,
    rows: Vec<Vec<f64>>,
}

impl CoefficientTable {
    /// Builds a table from per-band rows, validating shape and range.
    pub fn new(source: CoefficientSource, rows: Vec<Vec<f64>>) -> Result<Self, CoverageError> {
        if rows.is_empty() {
            return Err(CoverageError::BadTable(String::from("no band rows")));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(CoverageError::BadTable(String::from("empty band row")));
        }
        for row in &rows {
            if row.len() != n {
                return Err(CoverageError::BadTable(String::from("ragged band rows")));
            }
            for &v in row {
                if !(0.0..=1.0).contains(&v) {
                    return Err(CoverageError::BadTable(String::from(
                        "entries must lie in [0, 1]",
                    )));
                }
            }
        }
        Ok(CoefficientTable { source, rows })
    }

    pub(crate) fn from_rows_unchecked(source: CoefficientSource, rows: Vec<Vec<f64>>) -> Self {
        CoefficientTable { source, rows }
    }

    /// The legacy compat table for the default layout: three bands above
    /// calm, eight classes, 25 km/h half-width. The innermost band is
    /// fully covered at every offset; the other rows hold the published
    /// constants, which differ slightly from the exact fractions.
    pub fn compat() -> Self {
        CoefficientTable {
            source: CoefficientSource::Compat,
            rows: alloc::vec![
                alloc::vec![1.0; 8],
                alloc::vec![1.0, 1.0, 1.0, 0.831353, 0.626081, 0.831353, 1.0, 1.0],
                alloc::vec![1.0, 1.0, 0.358123, 0.0, 0.0, 0.0, 0.358123, 1.0],
            ],
        }
    }

    pub fn source(&self) -> CoefficientSource {
        self.source
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn band_count(&self) -> usize {
        self.rows.len()
    }

    pub fn class_count(&self) -> usize {
        self.rows[0].len()
    }

    pub fn get(&self, band: usize, offset: usize) -> f64 {
        self.rows[band][offset]
    }
}

/// Wind coverage of every orientation class, percent of time.
///
/// `coverage[i] = calm + sum over cells of table[band][(j - i) mod n] *
/// cell[band][j]`: each cell counts toward orientation `i` by the overlap
/// fraction at its angular offset, and calm time counts toward every
/// orientation. Winds above the outermost ring count toward none.
///
/// Accumulation is in a fixed order (classes outer, bands inner, calm
/// added last), so results are reproducible bit for bit.
pub fn coverage_vector(
    rose: &WindRose,
    table: &CoefficientTable,
) -> Result<Vec<f64>, CoverageError> {
    let n = rose.class_count();
    let bands = rose.band_count();
    if table.band_count() != bands || table.class_count() != n {
        return Err(CoverageError::DimensionMismatch {
            table_bands: table.band_count(),
            table_classes: table.class_count(),
            rose_bands: bands,
            rose_classes: n,
        });
    }
    let calm = rose.calm_pct();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut add = 0.0;
        for j in 0..n {
            for band in 0..bands {
                add += table.get(band, (j + n - i) % n) * rose.cell(band, j);
            }
        }
        out.push(calm + add);
    }
    Ok(out)
}

/// Lowest class index attaining the maximum coverage, with its value.
///
/// A strict `>` scan from index 0, so earlier classes win ties.
///
/// # Panics
/// Panics on an empty vector.
pub fn best_orientation(coverage: &[f64]) -> (usize, f64) {
    assert!(!coverage.is_empty(), "coverage vector is empty");
    let mut best = 0;
    let mut max = coverage[0];
    for (i, &v) in coverage.iter().enumerate().skip(1) {
        if v > max {
            max = v;
            best = i;
        }
    }
    (best, max)
}

/// How runway numbers are assigned to an orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DesignatorMode {
    /// Azimuth over ten, rounded half up, zero rendered as 36.
    #[default]
    Standard,
    /// Legacy numbering by class index: class 0 is 18-36, class k is
    /// k paired with k+18. Defined for 8 classes only.
    Compat,
}

/// Paired runway numbers, rendered like `09-27`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunwayDesignator {
    low: u8,
}

impl RunwayDesignator {
    /// Builds from either end's number (1 to 36); the reciprocal end is
    /// 18 away and the pair is stored low end first.
    pub fn new(number: u8) -> Self {
        assert!((1..=36).contains(&number), "runway number out of range: {number}");
        let low = if number > 18 { number - 18 } else { number };
        RunwayDesignator { low }
    }

    pub fn low_number(&self) -> u8 {
        self.low
    }

    pub fn high_number(&self) -> u8 {
        self.low + 18
    }
}

impl fmt::Display for RunwayDesignator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02}-{:02}", self.low_number(), self.high_number())
    }
}

/// Assigns the runway number pair for an orientation.
///
/// Standard mode rounds the azimuth to the nearest ten degrees (half up,
/// 0 becoming 36). Compat mode numbers by class index and exists to
/// reproduce legacy tables; it contradicts standard numbering for every
/// class except 0.
pub fn runway_designator(
    azimuth_deg: f64,
    mode: DesignatorMode,
    class_index: usize,
    class_count: usize,
) -> Result<RunwayDesignator, CoverageError> {
    match mode {
        DesignatorMode::Standard => {
            let azimuth = fold_half_turn(azimuth_deg);
            let number = libm::floor(azimuth / 10.0 + 0.5) as u8;
            Ok(RunwayDesignator::new(if number == 0 { 36 } else { number }))
        }
        DesignatorMode::Compat => {
            if class_count != 8 {
                return Err(CoverageError::CompatModeUnavailable { classes: class_count });
            }
            if class_index >= class_count {
                return Err(CoverageError::ClassOutOfRange {
                    class: class_index,
                    count: class_count,
                });
            }
            Ok(if class_index == 0 {
                RunwayDesignator::new(18)
            } else {
                RunwayDesignator::new(class_index as u8)
            })
        }
    }
}

/// Coverage of every orientation plus the selected best runway.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub coverage: Vec<f64>,
    pub calm_pct: f64,
    pub best_class: usize,
    pub best_azimuth_deg: f64,
    pub designator: RunwayDesignator,
    pub meets_threshold: bool,
    pub threshold_pct: f64,
}

impl CoverageReport {
    /// Coverage of the selected best orientation.
    pub fn best_coverage(&self) -> f64 {
        self.coverage[self.best_class]
    }
}

/// Computes coverage for every class and selects the best orientation,
/// checked against the FAA threshold.
pub fn coverage_report(
    rose: &WindRose,
    table: &CoefficientTable,
    mode: DesignatorMode,
    threshold_pct: f64,
) -> Result<CoverageReport, CoverageError> {
    let coverage = coverage_vector(rose, table)?;
    let (best_class, _) = best_orientation(&coverage);
    let best_azimuth_deg = rose.classes().axis_deg(best_class);
    let designator = runway_designator(best_azimuth_deg, mode, best_class, rose.class_count())?;
    Ok(apply_threshold(
        CoverageReport {
            coverage,
            calm_pct: rose.calm_pct(),
            best_class,
            best_azimuth_deg,
            designator,
            meets_threshold: false,
            threshold_pct: FAA_COVERAGE_THRESHOLD_PCT,
        },
        threshold_pct,
    ))
}

/// Re-evaluates the threshold verdict; the comparison is inclusive, so
/// coverage exactly at the threshold passes.
pub fn apply_threshold(report: CoverageReport, threshold_pct: f64) -> CoverageReport {
    assert!(
        threshold_pct > 0.0 && threshold_pct <= 100.0,
        "threshold must be in (0, 100]: {threshold_pct}"
    );
    let meets = report.best_coverage() >= threshold_pct;
    CoverageReport { meets_threshold: meets, threshold_pct, ..report }
}

/// Combined coverage of two runways, percent of time.
///
/// Each cell counts by its overlap fraction with the union of the two
/// strips, always from exact geometry: the compat constants define no
/// union fractions.
pub fn pair_coverage(
    rose: &WindRose,
    class_a: usize,
    class_b: usize,
    half_width: f64,
) -> Result<f64, CoverageError> {
    let n = rose.class_count();
    for class in [class_a, class_b] {
        if class >= n {
            return Err(CoverageError::ClassOutOfRange { class, count: n });
        }
    }
    if class_a == class_b {
        return Err(CoverageError::SameClass);
    }
    let strip_a = Strip::new(rose.classes().axis_deg(class_a), half_width)?;
    let strip_b = Strip::new(rose.classes().axis_deg(class_b), half_width)?;
    let w = rose.classes().width_deg();
    let mut add = 0.0;
    for j in 0..n {
        let center = rose.classes().axis_deg(j);
        for band in 0..rose.band_count() {
            let (r0, r1) = rose.geometry().band_bounds(band);
            let cell = AnnularSector::new(r0, r1, center - 0.5 * w, center + 0.5 * w)?;
            let fraction = geometry::union_overlap_fraction(&cell, &strip_a, &strip_b)?;
            add += fraction * rose.cell(band, j);
        }
    }
    Ok(rose.calm_pct() + add)
}

/// How the second runway's orientation is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairMode {
    /// Quarter-turn from the primary: the conventional heuristic.
    #[default]
    Perpendicular,
    /// Scan every partner class and keep the best combined coverage.
    Exhaustive,
}

/// Chooses a second runway to accompany the primary orientation and
/// returns the pair with its combined coverage.
///
/// The primary stays fixed; only the partner varies. Exhaustive ties go
/// to the lowest partner index.
pub fn best_pair(
    rose: &WindRose,
    primary_class: usize,
    mode: PairMode,
    half_width: f64,
) -> Result<((usize, usize), f64), CoverageError> {
    let n = rose.class_count();
    if primary_class >= n {
        return Err(CoverageError::ClassOutOfRange { class: primary_class, count: n });
    }
    match mode {
        PairMode::Perpendicular => {
            if !n.is_multiple_of(2) {
                return Err(CoverageError::OddClassCount { classes: n });
            }
            let partner = (primary_class + n / 2) % n;
            let pct = pair_coverage(rose, primary_class, partner, half_width)?;
            Ok(((primary_class, partner), pct))
        }
        PairMode::Exhaustive => {
            let mut best: Option<(usize, f64)> = None;
            for partner in (0..n).filter(|&p| p != primary_class) {
                let pct = pair_coverage(rose, primary_class, partner, half_width)?;
                if best.is_none_or(|(_, b)| pct > b) {
                    best = Some((partner, pct));
                }
            }
            let (partner, pct) = best.expect("at least two classes");
            Ok(((primary_class, partner), pct))
        }
    }
}
