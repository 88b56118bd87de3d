//! Wind rose data model: speed bands, orientation classes, binned
//! percentages, and ingestion of raw observations.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Slack allowed when checking that percentages sum to at most 100.
pub const TOTAL_TOLERANCE: f64 = 1e-9;

/// Validation and ingestion failures for wind rose data.
#[derive(Debug, Clone, PartialEq)]
pub enum RoseError {
    /// Ring radii not finite, not strictly increasing, or fewer than two.
    BadGeometry(String),
    /// Cell matrix shape does not match the declared bands and classes.
    DimensionMismatch { expected_bands: usize, expected_classes: usize, got_bands: usize, got_classes: usize },
    NegativeCell { band: usize, class: usize, value: f64 },
    NegativeAboveMax { value: f64 },
    /// Recorded percentages exceed 100; the data is inconsistent and is
    /// rejected rather than renormalized.
    TotalExceeds100 { total: f64 },
    /// No observations, or all weights are zero.
    EmptyInput,
    NegativeWeight { index: usize },
    NegativeSpeed { index: usize },
    NotFinite { field: &'static str, index: usize },
}

impl fmt::Display for RoseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoseError::BadGeometry(msg) => write!(f, "bad band geometry: {msg}"),
            RoseError::DimensionMismatch { expected_bands, expected_classes, got_bands, got_classes } => write!(
                f,
                "cell matrix is {got_bands}x{got_classes}, expected {expected_bands}x{expected_classes}"
            ),
            RoseError::NegativeCell { band, class, value } => {
                write!(f, "cell [band {band}, class {class}] is negative: {value}")
            }
            RoseError::NegativeAboveMax { value } => {
                write!(f, "above-max share is negative: {value}")
            }
            RoseError::TotalExceeds100 { total } => {
                write!(f, "recorded percentages total {total}, which exceeds 100")
            }
            RoseError::EmptyInput => write!(f, "no observations with positive weight"),
            RoseError::NegativeWeight { index } => {
                write!(f, "observation {index} has a negative weight")
            }
            RoseError::NegativeSpeed { index } => {
                write!(f, "observation {index} has a negative speed")
            }
            RoseError::NotFinite { field, index } => {
                write!(f, "observation {index} has a non-finite {field}")
            }
        }
    }
}

impl core::error::Error for RoseError {}

/// Concentric speed rings; consecutive radii bound the speed bands.
///
/// The innermost radius doubles as the calm threshold: speeds strictly
/// below it count as calm. Radii are in km/h.
#[derive(Debug, Clone, PartialEq)]
pub struct BandGeometry {
    ring_radii: Vec<f64>,
}

impl BandGeometry {
    /// Builds a geometry from ring radii, which must be finite,
    /// non-negative, strictly increasing, and at least two.
    pub fn new(ring_radii: Vec<f64>) -> Result<Self, RoseError> {
        if ring_radii.len() < 2 {
            return Err(RoseError::BadGeometry(String::from(
                "need at least two ring radii to form a band",
            )));
        }
        for (i, &r) in ring_radii.iter().enumerate() {
            if !r.is_finite() {
                return Err(RoseError::BadGeometry(format!("ring radius {i} is not finite")));
            }
            if r < 0.0 {
                return Err(RoseError::BadGeometry(format!("ring radius {i} is negative: {r}")));
            }
            if i > 0 && r <= ring_radii[i - 1] {
                return Err(RoseError::BadGeometry(format!(
                    "ring radii must be strictly increasing, but radius {i} ({r}) does not exceed {}",
                    ring_radii[i - 1]
                )));
            }
        }
        Ok(BandGeometry { ring_radii })
    }

    /// Speed strictly below this counts as calm.
    pub fn calm_threshold(&self) -> f64 {
        self.ring_radii[0]
    }

    pub fn ring_radii(&self) -> &[f64] {
        &self.ring_radii
    }

    pub fn band_count(&self) -> usize {
        self.ring_radii.len() - 1
    }

    /// Half-open bounds `[lo, hi)` of a band, in km/h.
    pub fn band_bounds(&self, band: usize) -> (f64, f64) {
        (self.ring_radii[band], self.ring_radii[band + 1])
    }

    /// Radius of the outermost ring; speeds at or above it are storms.
    pub fn outermost(&self) -> f64 {
        *self.ring_radii.last().unwrap()
    }

    /// Classifies a speed into calm, a band index, or above the last ring.
    ///
    /// Bands are half-open: a speed equal to a ring radius belongs to the
    /// band outside that ring.
    pub fn bin_for_speed(&self, speed: f64) -> SpeedBin {
        if speed < self.calm_threshold() {
            return SpeedBin::Calm;
        }
        if speed >= self.outermost() {
            return SpeedBin::AboveMax;
        }
        // First ring radius strictly above `speed`; its band is the match.
        let idx = self.ring_radii.partition_point(|&r| r <= speed);
        SpeedBin::Band(idx - 1)
    }
}

impl Default for BandGeometry {
    /// The conventional rings at 6.4, 15, 30, and 47 km/h.
    fn default() -> Self {
        BandGeometry::new(vec![6.4, 15.0, 30.0, 47.0]).unwrap()
    }
}

/// Where a speed lands relative to the ring radii.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpeedBin {
    Calm,
    Band(usize),
    AboveMax,
}

/// Evenly spaced runway orientation classes over the half-circle.
///
/// Orientations 180 degrees apart serve the same runway, so class `k`
/// covers directions near `k * 180/count` degrees, folded modulo 180.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientationClasses {
    count: usize,
}

impl OrientationClasses {
    pub fn new(count: usize) -> Result<Self, RoseError> {
        if count < 2 {
            return Err(RoseError::BadGeometry(format!(
                "need at least two orientation classes, got {count}"
            )));
        }
        Ok(OrientationClasses { count })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Angular width of one class, in degrees.
    pub fn width_deg(&self) -> f64 {
        180.0 / self.count as f64
    }

    /// Axis azimuth of a class, in `[0, 180)` degrees.
    pub fn axis_deg(&self, class: usize) -> f64 {
        class as f64 * self.width_deg()
    }

    /// Maps a direction to its class. Sectors are half-open on the upper
    /// edge: a direction exactly on a boundary joins the higher class.
    pub fn class_for_direction(&self, direction_deg: f64) -> usize {
        let folded = fold_half_turn(direction_deg);
        let w = self.width_deg();
        libm::floor((folded + 0.5 * w) / w) as usize % self.count
    }
}

impl Default for OrientationClasses {
    fn default() -> Self {
        OrientationClasses { count: 8 }
    }
}

/// Folds a direction into `[0, 180)`. Exact for representable inputs:
/// `%` introduces no rounding and neither does the single add-back.
pub(crate) fn fold_half_turn(direction_deg: f64) -> f64 {
    let r = direction_deg % 180.0;
    if r < 0.0 {
        let f = r + 180.0;
        // Adding 180 to a tiny negative remainder can round up to 180 itself.
        if f >= 180.0 {
            0.0
        } else {
            f
        }
    } else {
        r
    }
}

/// One raw wind record: a direction the wind blows from, a speed, and an
/// optional statistical weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawObservation {
    /// Meteorological azimuth in `[0, 360)` degrees.
    pub direction_deg: f64,
    /// Speed in km/h, non-negative.
    pub speed: f64,
    /// Relative weight, non-negative; plain counts use 1.
    pub weight: f64,
}

impl RawObservation {
    pub fn new(direction_deg: f64, speed: f64) -> Self {
        Self::weighted(direction_deg, speed, 1.0)
    }

    /// Normalizes the direction into `[0, 360)`.
    pub fn weighted(direction_deg: f64, speed: f64, weight: f64) -> Self {
        let mut d = direction_deg % 360.0;
        if d < 0.0 {
            d += 360.0;
        }
        if d >= 360.0 {
            d = 0.0;
        }
        RawObservation { direction_deg: d, speed, weight }
    }
}

/// What to do with winds at or above the outermost ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StormPolicy {
    /// Keep their share in [`WindRose::above_max`]; such winds exceed any
    /// crosswind tolerance, so they count against every orientation.
    #[default]
    Track,
    /// Fold their share into calm, as legacy tabulations did.
    FoldIntoCalm,
}

/// Percent-of-time wind rose: one cell per speed band and orientation
/// class, plus the share of winds beyond the outermost ring.
///
/// Cells hold percentages of total observation time. The calm share is
/// not stored; it is whatever remains below 100.
#[derive(Debug, Clone, PartialEq)]
pub struct WindRose {
    geometry: BandGeometry,
    classes: OrientationClasses,
    /// Band-major: `cells[band * classes.count() + class]`.
    cells: Vec<f64>,
    above_max: f64,
}

impl WindRose {
    /// Builds a rose from per-band rows of class percentages.
    ///
    /// Shape is checked here; value checks live in [`WindRose::validate`],
    /// which this calls.
    pub fn new(
        geometry: BandGeometry,
        classes: OrientationClasses,
        rows: &[Vec<f64>],
        above_max: f64,
    ) -> Result<Self, RoseError> {
        let bands = geometry.band_count();
        let n = classes.count();
        if rows.len() != bands || rows.iter().any(|r| r.len() != n) {
            return Err(RoseError::DimensionMismatch {
                expected_bands: bands,
                expected_classes: n,
                got_bands: rows.len(),
                got_classes: rows.first().map_or(0, Vec::len),
            });
        }
        let mut cells = Vec::with_capacity(bands * n);
        for row in rows {
            cells.extend_from_slice(row);
        }
        let rose = WindRose { geometry, classes, cells, above_max };
        rose.validate()?;
        Ok(rose)
    }

    /// An all-calm rose: every cell zero.
    pub fn zeroed(geometry: BandGeometry, classes: OrientationClasses) -> Self {
        let cells = vec![0.0; geometry.band_count() * classes.count()];
        WindRose { geometry, classes, cells, above_max: 0.0 }
    }

    pub fn geometry(&self) -> &BandGeometry {
        &self.geometry
    }

    pub fn classes(&self) -> &OrientationClasses {
        &self.classes
    }

    pub fn band_count(&self) -> usize {
        self.geometry.band_count()
    }

    pub fn class_count(&self) -> usize {
        self.classes.count()
    }

    pub fn cell(&self, band: usize, class: usize) -> f64 {
        self.cells[band * self.classes.count() + class]
    }

    /// All class percentages of one band, in class order.
    pub fn band_row(&self, band: usize) -> &[f64] {
        let n = self.classes.count();
        &self.cells[band * n..(band + 1) * n]
    }

    /// Share of time with winds at or above the outermost ring.
    pub fn above_max(&self) -> f64 {
        self.above_max
    }

    /// Sum of all recorded shares: cells plus the above-max share.
    ///
    /// Summed class by class with bands innermost, then above-max last.
    /// Coverage sums walk cells in the same order, so identical inputs
    /// reproduce identical floating point results.
    pub fn total_recorded(&self) -> f64 {
        let mut total = 0.0;
        for class in 0..self.classes.count() {
            for band in 0..self.geometry.band_count() {
                total += self.cell(band, class);
            }
        }
        total + self.above_max
    }

    /// Calm share: whatever the recorded cells leave under 100, floored
    /// at zero so rounding noise cannot produce a negative calm.
    pub fn calm_pct(&self) -> f64 {
        (100.0 - self.total_recorded()).max(0.0)
    }

    /// Checks cell values: finite and non-negative everywhere, and a
    /// recorded total of at most 100 (within [`TOTAL_TOLERANCE`]).
    pub fn validate(&self) -> Result<(), RoseError> {
        let n = self.classes.count();
        for (i, &v) in self.cells.iter().enumerate() {
            if !v.is_finite() {
                return Err(RoseError::NotFinite { field: "cell", index: i });
            }
            if v < 0.0 {
                return Err(RoseError::NegativeCell { band: i / n, class: i % n, value: v });
            }
        }
        if !self.above_max.is_finite() {
            return Err(RoseError::NotFinite { field: "above_max", index: 0 });
        }
        if self.above_max < 0.0 {
            return Err(RoseError::NegativeAboveMax { value: self.above_max });
        }
        let total = self.total_recorded();
        if total > 100.0 + TOTAL_TOLERANCE {
            return Err(RoseError::TotalExceeds100 { total });
        }
        Ok(())
    }
}

/// Bins raw observations into a percent-of-time wind rose.
///
/// Each observation contributes its weight to the cell holding its speed
/// band and orientation class; calm winds and (under
/// [`StormPolicy::FoldIntoCalm`]) storms contribute only to the implicit
/// calm remainder. Cells are scaled so all shares sum to exactly 100.
pub fn bin_observations(
    observations: &[RawObservation],
    geometry: &BandGeometry,
    classes: &OrientationClasses,
    policy: StormPolicy,
) -> Result<WindRose, RoseError> {
    if observations.is_empty() {
        return Err(RoseError::EmptyInput);
    }
    let mut total_weight = 0.0;
    for (i, obs) in observations.iter().enumerate() {
        if !obs.direction_deg.is_finite() {
            return Err(RoseError::NotFinite { field: "direction", index: i });
        }
        if !obs.speed.is_finite() {
            return Err(RoseError::NotFinite { field: "speed", index: i });
        }
        if !obs.weight.is_finite() {
            return Err(RoseError::NotFinite { field: "weight", index: i });
        }
        if obs.speed < 0.0 {
            return Err(RoseError::NegativeSpeed { index: i });
        }
        if obs.weight < 0.0 {
            return Err(RoseError::NegativeWeight { index: i });
        }
        total_weight += obs.weight;
    }
    if total_weight <= 0.0 {
        return Err(RoseError::EmptyInput);
    }

    let n = classes.count();
    let mut cells = vec![0.0; geometry.band_count() * n];
    let mut above_max = 0.0;
    for obs in observations {
        match geometry.bin_for_speed(obs.speed) {
            SpeedBin::Calm => {}
            SpeedBin::Band(band) => {
                cells[band * n + classes.class_for_direction(obs.direction_deg)] += obs.weight;
            }
            SpeedBin::AboveMax => match policy {
                StormPolicy::Track => above_max += obs.weight,
                StormPolicy::FoldIntoCalm => {}
            },
        }
    }
    let scale = 100.0 / total_weight;
    for cell in &mut cells {
        *cell *= scale;
    }
    let rose = WindRose {
        geometry: geometry.clone(),
        classes: *classes,
        cells,
        above_max: above_max * scale,
    };
    rose.validate()?;
    Ok(rose)
}
