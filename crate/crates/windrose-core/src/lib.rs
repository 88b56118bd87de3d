//! Runway orientation analysis from binned wind data.
//!
//! A wind rose partitions observed winds into speed bands and orientation
//! classes. For every candidate runway orientation this crate computes the
//! percentage of time the crosswind component stays within a tolerance,
//! checks it against the FAA 95% coverage threshold, and searches for a
//! second runway when a single one falls short. Coefficients relating wind
//! cells to a runway's crosswind corridor come either from exact
//! annular-sector/strip geometry or from a fixed legacy table.
//!
//! The crate is `no_std` (with `alloc`); file formats, CLI, and other IO
//! live in the companion `windrose-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod coverage;
pub mod geometry;
pub mod render;
pub mod rose;

pub use coverage::{
    apply_threshold, best_orientation, best_pair, coverage_report, coverage_vector,
    pair_coverage, runway_designator, CoefficientSource, CoefficientTable, CoverageError,
    CoverageReport, DesignatorMode, PairMode, RunwayDesignator, FAA_COVERAGE_THRESHOLD_PCT,
};
pub use geometry::{
    coefficient_table, mc_overlap_oracle, mc_union_oracle, radial_bound,
    sector_strip_overlap_fraction, union_overlap_fraction, AnnularSector, GeometryError, Strip,
    DEFAULT_HALF_WIDTH_KMH, DEFAULT_MC_SAMPLES, DEFAULT_MC_SEED,
};
pub use render::{render_rose_svg, RenderError, RenderOptions};
pub use rose::{
    bin_observations, BandGeometry, OrientationClasses, RawObservation, RoseError, SpeedBin,
    StormPolicy, WindRose,
};
