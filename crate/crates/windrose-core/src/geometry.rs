//! Overlap geometry between crosswind acceptance strips and rose cells.
//!
//! A runway accepts winds whose crosswind component stays within a
//! half-width `c`; in wind coordinates that region is an infinite strip
//! along the runway axis. A cell's coefficient is the exact area fraction
//! of its annular sector inside the strip, found by splitting the angular
//! range at every boundary crossing and integrating each piece in closed
//! form. A counter-based Monte Carlo oracle cross-checks the integrals.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::coverage::{CoefficientSource, CoefficientTable};
use crate::rose::{fold_half_turn, BandGeometry, OrientationClasses};

/// Crosswind tolerance conventionally used for light aircraft, in km/h.
pub const DEFAULT_HALF_WIDTH_KMH: f64 = 25.0;

/// Fixed seed for reproducible Monte Carlo runs ("WINDROSE" in ASCII).
pub const DEFAULT_MC_SEED: u64 = 0x5749_4e44_524f_5345;

/// Sample count at which the Monte Carlo oracle resolves the default
/// coefficients to about three decimal places.
pub const DEFAULT_MC_SAMPLES: u64 = 10_000_000;

/// Invalid strip or cell shapes.
#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    BadStrip(String),
    BadSector(String),
    /// Zero-measure cell: no radial or angular extent.
    DegenerateCell,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::BadStrip(msg) => write!(f, "bad strip: {msg}"),
            GeometryError::BadSector(msg) => write!(f, "bad sector: {msg}"),
            GeometryError::DegenerateCell => write!(f, "cell has zero area"),
        }
    }
}

impl core::error::Error for GeometryError {}

/// Infinite strip of half-width `half_width` along a runway axis.
///
/// Axes 180 degrees apart are the same runway, so the azimuth lives in
/// `[0, 180)` degrees. The half-width shares the rose's speed unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strip {
    pub axis_azimuth_deg: f64,
    pub half_width: f64,
}

impl Strip {
    /// Folds the axis into `[0, 180)`; the half-width must be positive.
    pub fn new(axis_azimuth_deg: f64, half_width: f64) -> Result<Self, GeometryError> {
        if !axis_azimuth_deg.is_finite() {
            return Err(GeometryError::BadStrip(String::from("axis azimuth is not finite")));
        }
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(GeometryError::BadStrip(String::from(
                "half-width must be positive and finite",
            )));
        }
        Ok(Strip { axis_azimuth_deg: fold_half_turn(axis_azimuth_deg), half_width })
    }

    fn check(&self) -> Result<(), GeometryError> {
        Strip::new(self.axis_azimuth_deg, self.half_width).map(|_| ())
    }
}

/// Annular sector between two rings and two azimuths, angles in degrees.
///
/// The span `angle_hi_deg - angle_lo_deg` must be positive and at most
/// 180; the absolute angles themselves are unconstrained, so sectors may
/// straddle 0 or exceed 360.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnularSector {
    pub r_inner: f64,
    pub r_outer: f64,
    pub angle_lo_deg: f64,
    pub angle_hi_deg: f64,
}

impl AnnularSector {
    pub fn new(
        r_inner: f64,
        r_outer: f64,
        angle_lo_deg: f64,
        angle_hi_deg: f64,
    ) -> Result<Self, GeometryError> {
        let cell = AnnularSector { r_inner, r_outer, angle_lo_deg, angle_hi_deg };
        cell.check()?;
        Ok(cell)
    }

    /// Angular span in degrees.
    pub fn width_deg(&self) -> f64 {
        self.angle_hi_deg - self.angle_lo_deg
    }

    pub fn area(&self) -> f64 {
        0.5 * (self.r_outer * self.r_outer - self.r_inner * self.r_inner)
            * self.width_deg().to_radians()
    }

    fn check(&self) -> Result<(), GeometryError> {
        for v in [self.r_inner, self.r_outer, self.angle_lo_deg, self.angle_hi_deg] {
            if !v.is_finite() {
                return Err(GeometryError::BadSector(String::from("sector bound is not finite")));
            }
        }
        if self.r_inner < 0.0 {
            return Err(GeometryError::BadSector(String::from("inner radius is negative")));
        }
        if self.r_inner == self.r_outer || self.angle_lo_deg == self.angle_hi_deg {
            return Err(GeometryError::DegenerateCell);
        }
        if self.r_inner > self.r_outer {
            return Err(GeometryError::BadSector(String::from(
                "inner radius exceeds outer radius",
            )));
        }
        if self.angle_lo_deg > self.angle_hi_deg {
            return Err(GeometryError::BadSector(String::from(
                "angular bounds are reversed",
            )));
        }
        if self.width_deg() > 180.0 {
            return Err(GeometryError::BadSector(String::from(
                "angular span exceeds 180 degrees",
            )));
        }
        Ok(())
    }
}

/// Largest radius still inside the strip at an angle `phi_deg` from the
/// strip axis: `half_width / |sin phi|`, infinite along the axis itself.
pub fn radial_bound(phi_deg: f64, strip: &Strip) -> f64 {
    if phi_deg % 180.0 == 0.0 {
        return f64::INFINITY;
    }
    let s = libm::fabs(libm::sin(phi_deg.to_radians()));
    if s == 0.0 {
        f64::INFINITY
    } else {
        strip.half_width / s
    }
}

/// Fraction of the cell's area inside the strip, in `[0, 1]`.
///
/// Exact up to rounding: cells entirely inside or outside return 1 or 0
/// without integrating, everything else integrates `half_width^2/sin^2`
/// in closed form between crossings.
pub fn sector_strip_overlap_fraction(
    cell: &AnnularSector,
    strip: &Strip,
) -> Result<f64, GeometryError> {
    strip.check()?;
    overlap_fraction(cell, &[(strip.axis_azimuth_deg.to_radians(), strip.half_width)])
}

/// Fraction of the cell's area inside the union of two strips.
pub fn union_overlap_fraction(
    cell: &AnnularSector,
    strip_a: &Strip,
    strip_b: &Strip,
) -> Result<f64, GeometryError> {
    strip_a.check()?;
    strip_b.check()?;
    overlap_fraction(
        cell,
        &[
            (strip_a.axis_azimuth_deg.to_radians(), strip_a.half_width),
            (strip_b.axis_azimuth_deg.to_radians(), strip_b.half_width),
        ],
    )
}

/// Shared engine: strips are `(axis_rad, half_width)` pairs, one or two.
fn overlap_fraction(cell: &AnnularSector, strips: &[(f64, f64)]) -> Result<f64, GeometryError> {
    cell.check()?;
    let (r0, r1) = (cell.r_inner, cell.r_outer);
    let lo = cell.angle_lo_deg.to_radians();
    let hi = cell.angle_hi_deg.to_radians();

    // A strip that contains the whole cell makes the union fraction
    // exactly 1; the max of r*|sin| over the cell sits at the outer ring.
    for &(theta, c) in strips {
        if r1 * max_abs_sin(lo - theta, hi - theta) <= c {
            return Ok(1.0);
        }
    }
    // Every strip misses the cell entirely: min of r*|sin| at least c.
    if r0 > 0.0
        && strips.iter().all(|&(theta, c)| {
            let s = min_abs_sin(lo - theta, hi - theta);
            s > 0.0 && r0 * s >= c
        })
    {
        return Ok(0.0);
    }

    let area = covered_area(r0, r1, lo, hi, strips);
    Ok((area / cell.area()).clamp(0.0, 1.0))
}

/// Area of the cell covered by the union of the strips.
///
/// Between crossings the covered radial slice is `[r0, min(b, r1)]` for
/// the pointwise-largest bound `b = c/|sin(phi - theta)|`, and each piece
/// is entirely full, empty, or governed by one strip's partial bound, so
/// `integral of c^2/sin^2 = -c^2*cot` evaluates it exactly.
fn covered_area(r0: f64, r1: f64, lo: f64, hi: f64, strips: &[(f64, f64)]) -> f64 {
    let mut cuts: Vec<f64> = Vec::with_capacity(16);
    for &(theta, c) in strips {
        // Axis poles, where the bound is infinite.
        push_half_turn_multiples(&mut cuts, theta, lo, hi);
        // Crossings of the rings: |sin| = c/r at asin offsets off the axis.
        if c < r1 {
            let psi = libm::asin(c / r1);
            push_half_turn_multiples(&mut cuts, theta + psi, lo, hi);
            push_half_turn_multiples(&mut cuts, theta - psi, lo, hi);
        }
        if r0 > 0.0 && c < r0 {
            let psi = libm::asin(c / r0);
            push_half_turn_multiples(&mut cuts, theta + psi, lo, hi);
            push_half_turn_multiples(&mut cuts, theta - psi, lo, hi);
        }
    }
    if let [(theta_a, ca), (theta_b, cb)] = *strips {
        // Angles where the two bounds tie, so the winner only changes at
        // a cut: ca*sin(phi - theta_b) = +/- cb*sin(phi - theta_a).
        for sign in [1.0, -1.0] {
            let y = ca * libm::sin(theta_b) - sign * cb * libm::sin(theta_a);
            let x = ca * libm::cos(theta_b) - sign * cb * libm::cos(theta_a);
            if y != 0.0 || x != 0.0 {
                push_half_turn_multiples(&mut cuts, libm::atan2(y, x), lo, hi);
            }
        }
    }
    cuts.sort_by(|a, b| a.total_cmp(b));

    let mut area = 0.0;
    let mut start = lo;
    let mut walk = |p: f64, q: f64| {
        if q <= p {
            return;
        }
        let mid = 0.5 * (p + q);
        // The strip whose bound wins at the midpoint wins on the piece.
        let (mut bound, mut axis, mut half_width) = (f64::NEG_INFINITY, 0.0, 0.0);
        for &(theta, c) in strips {
            let s = libm::fabs(libm::sin(mid - theta));
            let b = if s == 0.0 { f64::INFINITY } else { c / s };
            if b > bound {
                bound = b;
                axis = theta;
                half_width = c;
            }
        }
        if bound >= r1 {
            area += 0.5 * (r1 * r1 - r0 * r0) * (q - p);
        } else if bound > r0 {
            let cot = |x: f64| libm::cos(x) / libm::sin(x);
            area += 0.5
                * (half_width * half_width * (cot(p - axis) - cot(q - axis))
                    - r0 * r0 * (q - p));
        }
    };
    for &cut in &cuts {
        walk(start, cut);
        start = start.max(cut);
    }
    walk(start, hi);
    area
}

/// Pushes every `base + k*PI` strictly inside `(lo, hi)`.
fn push_half_turn_multiples(cuts: &mut Vec<f64>, base: f64, lo: f64, hi: f64) {
    let k0 = libm::floor((lo - base) / PI) as i64;
    for k in k0..=k0 + 3 {
        let x = base + k as f64 * PI;
        if x > lo && x < hi {
            cuts.push(x);
        }
    }
}

/// Is some `base + k*PI` inside `[lo, hi]`?
fn contains_half_turn_multiple(lo: f64, hi: f64, base: f64) -> bool {
    let k = libm::ceil((lo - base) / PI);
    base + k * PI <= hi
}

/// Max of `|sin|` over `[lo, hi]` (span at most PI): 1 if the range holds
/// an odd multiple of PI/2, otherwise an endpoint value.
fn max_abs_sin(lo: f64, hi: f64) -> f64 {
    if contains_half_turn_multiple(lo, hi, 0.5 * PI) {
        1.0
    } else {
        libm::fabs(libm::sin(lo)).max(libm::fabs(libm::sin(hi)))
    }
}

/// Min of `|sin|` over `[lo, hi]`: 0 if the range holds a multiple of PI,
/// otherwise an endpoint value.
fn min_abs_sin(lo: f64, hi: f64) -> f64 {
    if contains_half_turn_multiple(lo, hi, 0.0) {
        0.0
    } else {
        libm::fabs(libm::sin(lo)).min(libm::fabs(libm::sin(hi)))
    }
}

/// Monte Carlo estimate of [`sector_strip_overlap_fraction`].
///
/// Samples are area-uniform over the cell and generated from a counter,
/// so results are byte-identical for a given seed and sample count no
/// matter how the loop is executed.
pub fn mc_overlap_oracle(
    cell: &AnnularSector,
    strip: &Strip,
    samples: u64,
    seed: u64,
) -> Result<f64, GeometryError> {
    strip.check()?;
    mc_fraction(cell, &[(strip.axis_azimuth_deg.to_radians(), strip.half_width)], samples, seed)
}

/// Monte Carlo estimate of [`union_overlap_fraction`].
pub fn mc_union_oracle(
    cell: &AnnularSector,
    strip_a: &Strip,
    strip_b: &Strip,
    samples: u64,
    seed: u64,
) -> Result<f64, GeometryError> {
    strip_a.check()?;
    strip_b.check()?;
    mc_fraction(
        cell,
        &[
            (strip_a.axis_azimuth_deg.to_radians(), strip_a.half_width),
            (strip_b.axis_azimuth_deg.to_radians(), strip_b.half_width),
        ],
        samples,
        seed,
    )
}

fn mc_fraction(
    cell: &AnnularSector,
    strips: &[(f64, f64)],
    samples: u64,
    seed: u64,
) -> Result<f64, GeometryError> {
    cell.check()?;
    if samples == 0 {
        return Err(GeometryError::BadSector(String::from("sample count must be positive")));
    }
    let r0sq = cell.r_inner * cell.r_inner;
    let r1sq = cell.r_outer * cell.r_outer;
    let lo = cell.angle_lo_deg.to_radians();
    let span = cell.width_deg().to_radians();
    let mut hits: u64 = 0;
    for i in 0..samples {
        let u = unit_f64(mix64(seed, 2 * i));
        let v = unit_f64(mix64(seed, 2 * i + 1));
        // Uniform by area: the radius is uniform in r^2.
        let r = libm::sqrt(r0sq + u * (r1sq - r0sq));
        let phi = lo + v * span;
        if strips.iter().any(|&(theta, c)| r * libm::fabs(libm::sin(phi - theta)) <= c) {
            hits += 1;
        }
    }
    Ok(hits as f64 / samples as f64)
}

/// SplitMix64 finalizer over a per-draw counter.
fn mix64(seed: u64, counter: u64) -> u64 {
    let mut z = seed.wrapping_add(counter.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Top 53 bits to a float in `[0, 1)`.
fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// Computes the full coefficient table for a rose layout: entry
/// `[band][offset]` is the overlap fraction between a cell `offset`
/// classes away from the runway orientation and the runway's strip.
///
/// Only offsets up to half the class count are integrated; the rest are
/// mirror images across the strip axis.
pub fn coefficient_table(
    geometry: &BandGeometry,
    classes: &OrientationClasses,
    half_width: f64,
) -> Result<CoefficientTable, GeometryError> {
    let strip = Strip::new(0.0, half_width)?;
    let n = classes.count();
    let w = classes.width_deg();
    let mut rows = Vec::with_capacity(geometry.band_count());
    for band in 0..geometry.band_count() {
        let (r0, r1) = geometry.band_bounds(band);
        let mut row = alloc::vec![0.0; n];
        for offset in 0..=n / 2 {
            let center = offset as f64 * w;
            let cell = AnnularSector::new(r0, r1, center - 0.5 * w, center + 0.5 * w)?;
            let fraction = sector_strip_overlap_fraction(&cell, &strip)?;
            row[offset] = fraction;
            row[(n - offset) % n] = fraction;
        }
        rows.push(row);
    }
    Ok(CoefficientTable::from_rows_unchecked(CoefficientSource::Derived, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rose::{BandGeometry, OrientationClasses};

    fn assert_near(got: f64, want: f64, tol: f64) {
        assert!(
            (got - want).abs() <= tol,
            "got {got}, want {want} (diff {})",
            (got - want).abs()
        );
    }

    fn strip(axis: f64) -> Strip {
        Strip::new(axis, 25.0).unwrap()
    }

    #[test]
    fn strip_axis_folds() {
        assert_eq!(strip(190.0).axis_azimuth_deg, 10.0);
        assert_eq!(strip(-45.0).axis_azimuth_deg, 135.0);
        assert!(Strip::new(0.0, 0.0).is_err());
        assert!(Strip::new(0.0, -1.0).is_err());
        assert!(Strip::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn sector_constructor_rejects_bad_shapes() {
        assert!(AnnularSector::new(30.0, 47.0, 0.0, 22.5).is_ok());
        assert_eq!(
            AnnularSector::new(30.0, 30.0, 0.0, 22.5),
            Err(GeometryError::DegenerateCell)
        );
        assert_eq!(
            AnnularSector::new(30.0, 47.0, 10.0, 10.0),
            Err(GeometryError::DegenerateCell)
        );
        assert!(AnnularSector::new(47.0, 30.0, 0.0, 22.5).is_err());
        assert!(AnnularSector::new(-1.0, 30.0, 0.0, 22.5).is_err());
        assert!(AnnularSector::new(30.0, 47.0, 22.5, 0.0).is_err());
        assert!(AnnularSector::new(30.0, 47.0, 0.0, 181.0).is_err());
        assert!(AnnularSector::new(30.0, f64::INFINITY, 0.0, 22.5).is_err());
    }

    #[test]
    fn radial_bound_is_half_width_over_sine() {
        let s = strip(0.0);
        assert_eq!(radial_bound(0.0, &s), f64::INFINITY);
        assert_eq!(radial_bound(180.0, &s), f64::INFINITY);
        assert_eq!(radial_bound(-360.0, &s), f64::INFINITY);
        assert_eq!(radial_bound(90.0, &s), 25.0);
        assert_near(radial_bound(30.0, &s), 50.0, 1e-12);
        assert_near(radial_bound(150.0, &s), 50.0, 1e-12);
    }

    #[test]
    fn innermost_band_is_always_fully_covered() {
        // 15 km/h winds never exceed a 25 km/h crosswind tolerance.
        for offset in 0..8 {
            let lo = offset as f64 * 22.5 - 11.25;
            let cell = AnnularSector::new(6.4, 15.0, lo, lo + 22.5).unwrap();
            assert_eq!(sector_strip_overlap_fraction(&cell, &strip(0.0)).unwrap(), 1.0);
        }
    }

    #[test]
    fn default_middle_band_fractions_match_quadrature() {
        // Frozen values from high-precision numerical integration.
        let want = [
            1.0,
            1.0,
            1.0,
            0.773101042888,
            0.604678118832,
            0.773101042888,
            1.0,
            1.0,
        ];
        for (offset, &expected) in want.iter().enumerate() {
            let lo = offset as f64 * 22.5 - 11.25;
            let cell = AnnularSector::new(15.0, 30.0, lo, lo + 22.5).unwrap();
            let got = sector_strip_overlap_fraction(&cell, &strip(0.0)).unwrap();
            if expected == 1.0 {
                assert_eq!(got, 1.0, "offset {offset}");
            } else {
                assert_near(got, expected, 1e-9);
            }
        }
    }

    #[test]
    fn default_outer_band_fractions_match_quadrature() {
        let want = [
            1.0,
            0.994826946901,
            0.319696500342,
            1.31870719054469e-5,
            0.0,
            1.31870719054469e-5,
            0.319696500342,
            0.994826946901,
        ];
        for (offset, &expected) in want.iter().enumerate() {
            let lo = offset as f64 * 22.5 - 11.25;
            let cell = AnnularSector::new(30.0, 47.0, lo, lo + 22.5).unwrap();
            let got = sector_strip_overlap_fraction(&cell, &strip(0.0)).unwrap();
            if expected == 1.0 || expected == 0.0 {
                assert_eq!(got, expected, "offset {offset}");
            } else {
                assert_near(got, expected, 1e-9);
            }
        }
    }

    #[test]
    fn outer_band_perpendicular_cell_has_a_real_sliver() {
        // The cell two-and-a-half classes off axis dips inside the strip:
        // its closest corner sits at 30*sin(56.25 deg) < 25. The sliver is
        // tiny but not zero; only the fully perpendicular cell is empty.
        let cell = AnnularSector::new(30.0, 47.0, 56.25, 78.75).unwrap();
        let got = sector_strip_overlap_fraction(&cell, &strip(0.0)).unwrap();
        assert!(got > 0.0);
        assert_near(got, 1.31870719054469e-5, 1e-12);
    }

    #[test]
    fn partial_cell_matches_closed_form() {
        // One ring crossing at asin(25/47): full below it, partial above.
        let cell = AnnularSector::new(30.0, 47.0, 0.0, 40.0).unwrap();
        let got = sector_strip_overlap_fraction(&cell, &strip(0.0)).unwrap();
        let psi1 = libm::asin(25.0 / 47.0);
        let psi2 = 40f64.to_radians();
        let cot = |x: f64| libm::cos(x) / libm::sin(x);
        let area = 0.5 * (47.0 * 47.0 - 30.0 * 30.0) * psi1
            + 0.5 * (625.0 * (cot(psi1) - cot(psi2)) - 900.0 * (psi2 - psi1));
        assert_near(got, area / cell.area(), 1e-12);
    }

    #[test]
    fn middle_band_offset_two_is_just_inside() {
        // The far corner sits at 30*sin(56.25 deg) = 24.94 < 25, so the
        // whole cell is covered and the short-circuit returns exactly 1.
        let cell = AnnularSector::new(15.0, 30.0, 33.75, 56.25).unwrap();
        assert_eq!(sector_strip_overlap_fraction(&cell, &strip(0.0)).unwrap(), 1.0);
    }

    #[test]
    fn overlap_is_rotation_invariant() {
        for shift in [40.0, 90.0, 123.456, 311.0] {
            let base = AnnularSector::new(30.0, 47.0, 33.75, 56.25).unwrap();
            let turned =
                AnnularSector::new(30.0, 47.0, 33.75 + shift, 56.25 + shift).unwrap();
            let a = sector_strip_overlap_fraction(&base, &strip(0.0)).unwrap();
            let b = sector_strip_overlap_fraction(&turned, &strip(shift)).unwrap();
            assert_near(a, b, 1e-12);
        }
    }

    #[test]
    fn overlap_is_mirror_symmetric() {
        let right = AnnularSector::new(30.0, 47.0, 33.75, 56.25).unwrap();
        let left = AnnularSector::new(30.0, 47.0, -56.25, -33.75).unwrap();
        let a = sector_strip_overlap_fraction(&right, &strip(0.0)).unwrap();
        let b = sector_strip_overlap_fraction(&left, &strip(0.0)).unwrap();
        assert_near(a, b, 1e-12);
    }

    #[test]
    fn wide_strip_covers_everything() {
        let cell = AnnularSector::new(30.0, 47.0, 78.75, 101.25).unwrap();
        let wide = Strip::new(0.0, 47.0).unwrap();
        assert_eq!(sector_strip_overlap_fraction(&cell, &wide).unwrap(), 1.0);
    }

    #[test]
    fn union_of_perpendicular_strips_matches_quadrature() {
        let a = strip(0.0);
        let b = strip(90.0);
        // Diagonal cell, where both strips contribute and the winner
        // switches at 45 degrees.
        let diag = AnnularSector::new(30.0, 47.0, 33.75, 56.25).unwrap();
        assert_near(
            union_overlap_fraction(&diag, &a, &b).unwrap(),
            0.52004983798523,
            1e-9,
        );
        // One class off axis the second strip adds nothing new.
        let near = AnnularSector::new(30.0, 47.0, 11.25, 33.75).unwrap();
        assert_near(
            union_overlap_fraction(&near, &a, &b).unwrap(),
            0.994826946901,
            1e-9,
        );
        // In the middle band the second strip alone contains these cells.
        for lo in [33.75, 56.25] {
            let cell = AnnularSector::new(15.0, 30.0, lo, lo + 22.5).unwrap();
            assert_eq!(union_overlap_fraction(&cell, &a, &b).unwrap(), 1.0);
        }
    }

    #[test]
    fn union_never_loses_to_either_strip() {
        let a = strip(10.0);
        let b = Strip::new(77.0, 18.0).unwrap();
        for offset in 0..8 {
            let lo = offset as f64 * 22.5 - 11.25;
            for (r0, r1) in [(6.4, 15.0), (15.0, 30.0), (30.0, 47.0)] {
                let cell = AnnularSector::new(r0, r1, lo, lo + 22.5).unwrap();
                let fa = sector_strip_overlap_fraction(&cell, &a).unwrap();
                let fb = sector_strip_overlap_fraction(&cell, &b).unwrap();
                let fu = union_overlap_fraction(&cell, &a, &b).unwrap();
                assert!(fu >= fa.max(fb) - 1e-12);
                assert!(fu <= fa + fb + 1e-12);
            }
        }
    }

    #[test]
    fn identical_strips_union_to_the_single_fraction() {
        let s = strip(0.0);
        let cell = AnnularSector::new(30.0, 47.0, 33.75, 56.25).unwrap();
        let single = sector_strip_overlap_fraction(&cell, &s).unwrap();
        let both = union_overlap_fraction(&cell, &s, &s).unwrap();
        assert_near(both, single, 1e-12);
    }

    #[test]
    fn mc_oracle_is_deterministic_and_close() {
        let cell = AnnularSector::new(15.0, 30.0, 56.25, 78.75).unwrap();
        let s = strip(0.0);
        let exact = sector_strip_overlap_fraction(&cell, &s).unwrap();
        let est1 = mc_overlap_oracle(&cell, &s, 200_000, DEFAULT_MC_SEED).unwrap();
        let est2 = mc_overlap_oracle(&cell, &s, 200_000, DEFAULT_MC_SEED).unwrap();
        assert_eq!(est1, est2);
        assert_near(est1, exact, 5e-3);
        let other = mc_overlap_oracle(&cell, &s, 200_000, 7).unwrap();
        assert_near(other, exact, 5e-3);
    }

    #[test]
    fn mc_union_oracle_tracks_the_exact_union() {
        let cell = AnnularSector::new(30.0, 47.0, 33.75, 56.25).unwrap();
        let a = strip(0.0);
        let b = strip(90.0);
        let exact = union_overlap_fraction(&cell, &a, &b).unwrap();
        let est = mc_union_oracle(&cell, &a, &b, 200_000, DEFAULT_MC_SEED).unwrap();
        assert_near(est, exact, 5e-3);
    }

    #[test]
    fn mc_oracle_rejects_zero_samples() {
        let cell = AnnularSector::new(15.0, 30.0, 0.0, 22.5).unwrap();
        assert!(mc_overlap_oracle(&cell, &strip(0.0), 0, 1).is_err());
    }

    #[test]
    fn default_table_mirrors_and_bounds() {
        let table = coefficient_table(
            &BandGeometry::default(),
            &OrientationClasses::default(),
            DEFAULT_HALF_WIDTH_KMH,
        )
        .unwrap();
        assert_eq!(table.band_count(), 3);
        assert_eq!(table.class_count(), 8);
        for band in 0..3 {
            for offset in 0..8 {
                let v = table.get(band, offset);
                assert!((0.0..=1.0).contains(&v));
                assert_eq!(v, table.get(band, (8 - offset) % 8));
            }
        }
        assert_eq!(table.get(0, 3), 1.0);
        assert_near(table.get(1, 4), 0.604678118832, 1e-9);
    }

    #[test]
    fn odd_class_counts_fill_by_mirroring() {
        let classes = OrientationClasses::new(5).unwrap();
        let table =
            coefficient_table(&BandGeometry::default(), &classes, DEFAULT_HALF_WIDTH_KMH)
                .unwrap();
        assert_eq!(table.class_count(), 5);
        for band in 0..3 {
            assert_eq!(table.get(band, 1), table.get(band, 4));
            assert_eq!(table.get(band, 2), table.get(band, 3));
        }
    }

    #[test]
    fn mutated_sector_fields_are_caught_by_ops() {
        let mut cell = AnnularSector::new(30.0, 47.0, 0.0, 22.5).unwrap();
        cell.r_outer = 20.0;
        assert!(sector_strip_overlap_fraction(&cell, &strip(0.0)).is_err());
        cell.r_outer = f64::NAN;
        assert!(mc_overlap_oracle(&cell, &strip(0.0), 10, 1).is_err());
    }
}
