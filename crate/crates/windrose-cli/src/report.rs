//! Report structures for the orient command, in JSON and plain text.
//!
//! JSON output is stable across platforms: fields appear in a fixed
//! order and every float is printed with exactly six decimal places.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use windrose_core::{
    CoefficientSource, CoverageReport, OrientationClasses, PairMode, RunwayDesignator,
};

use crate::formats::source_token;

#[derive(Debug, Serialize)]
pub struct ClassCoverage {
    pub class: usize,
    pub azimuth_deg: f64,
    pub designator: String,
    pub coverage_pct: f64,
}

#[derive(Debug, Serialize)]
pub struct PairReport {
    pub mode: &'static str,
    pub partner_class: usize,
    pub partner_azimuth_deg: f64,
    pub partner_designator: String,
    pub combined_coverage_pct: f64,
}

#[derive(Debug, Serialize)]
pub struct OrientReport {
    pub schema_version: u32,
    pub classes: usize,
    pub crosswind_half_width_kmph: f64,
    pub coefficient_source: &'static str,
    pub calm_pct: f64,
    pub coverage: Vec<ClassCoverage>,
    pub best: ClassCoverage,
    pub meets_threshold: bool,
    pub threshold_pct: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairReport>,
}

pub fn pair_mode_token(mode: PairMode) -> &'static str {
    match mode {
        PairMode::Perpendicular => "perpendicular",
        PairMode::Exhaustive => "exhaustive",
    }
}

/// Assembles the orient report from a computed coverage report plus the
/// designators and optional pair the command resolved.
pub fn orient_report(
    report: &CoverageReport,
    classes: &OrientationClasses,
    designators: &[RunwayDesignator],
    half_width: f64,
    source: CoefficientSource,
    pair: Option<(PairMode, usize, f64)>,
) -> OrientReport {
    let coverage: Vec<ClassCoverage> = report
        .coverage
        .iter()
        .enumerate()
        .map(|(class, &pct)| ClassCoverage {
            class,
            azimuth_deg: classes.axis_deg(class),
            designator: designators[class].to_string(),
            coverage_pct: pct,
        })
        .collect();
    let best = ClassCoverage {
        class: report.best_class,
        azimuth_deg: report.best_azimuth_deg,
        designator: designators[report.best_class].to_string(),
        coverage_pct: report.best_coverage(),
    };
    let pair = pair.map(|(mode, partner, combined)| PairReport {
        mode: pair_mode_token(mode),
        partner_class: partner,
        partner_azimuth_deg: classes.axis_deg(partner),
        partner_designator: designators[partner].to_string(),
        combined_coverage_pct: combined,
    });
    OrientReport {
        schema_version: 1,
        classes: classes.count(),
        crosswind_half_width_kmph: half_width,
        coefficient_source: source_token(source),
        calm_pct: report.calm_pct,
        coverage,
        best,
        meets_threshold: report.meets_threshold,
        threshold_pct: report.threshold_pct,
        pair,
    }
}

/// A compact JSON formatter that prints every float with six decimals.
struct SixDecimalFormatter;

impl Formatter for SixDecimalFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.6}")
    }
}

pub fn to_json_six_decimals(report: &OrientReport) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, SixDecimalFormatter);
    report.serialize(&mut ser).expect("report serialization cannot fail");
    let mut text = String::from_utf8(buf).expect("serde_json emits UTF-8");
    text.push('\n');
    text
}

const COMPASS_POINTS: [&str; 16] = [
    "N", "NNE", "NE", "ENE", "E", "ESE", "SE", "SSE", "S", "SSW", "SW", "WSW", "W", "WNW",
    "NW", "NNW",
];

/// Names the two-headed orientation for an axis azimuth, like `N-S` or
/// `NE-SW`, falling back to degrees off the 16-point compass.
pub fn compass_pair_name(axis_azimuth_deg: f64) -> String {
    let steps = axis_azimuth_deg / 22.5;
    let nearest = steps.round();
    if (steps - nearest).abs() < 1e-9 && (0.0..=8.0).contains(&nearest) {
        let i = (nearest as usize) % 8;
        return format!("{}-{}", COMPASS_POINTS[i], COMPASS_POINTS[i + 8]);
    }
    format!("{axis_azimuth_deg:.1} deg")
}

pub fn orient_text(report: &OrientReport) -> String {
    let mut out = String::new();
    out.push_str("class  orientation  azimuth  runway  coverage\n");
    for row in &report.coverage {
        out.push_str(&format!(
            "{:<5}  {:<11}  {:>7.2}  {:<6}  {:>7.3}%\n",
            row.class,
            compass_pair_name(row.azimuth_deg),
            row.azimuth_deg,
            row.designator,
            row.coverage_pct
        ));
    }
    out.push_str(&format!("calm: {:.3}%\n", report.calm_pct));
    out.push_str(&format!(
        "best: runway {} ({}, {:.2} deg) covering {:.3}%\n",
        report.best.designator,
        compass_pair_name(report.best.azimuth_deg),
        report.best.azimuth_deg,
        report.best.coverage_pct
    ));
    if let Some(pair) = &report.pair {
        out.push_str(&format!(
            "pair ({}): add runway {} ({}, {:.2} deg) for combined {:.3}%\n",
            pair.mode,
            pair.partner_designator,
            compass_pair_name(pair.partner_azimuth_deg),
            pair.partner_azimuth_deg,
            pair.combined_coverage_pct
        ));
    }
    if report.meets_threshold {
        out.push_str(&format!(
            "meets the {:.1}% coverage threshold\n",
            report.threshold_pct
        ));
    } else {
        out.push_str(&format!(
            "below the {:.1}% coverage threshold; consider a second runway\n",
            report.threshold_pct
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report(pair: Option<PairReport>) -> OrientReport {
        OrientReport {
            schema_version: 1,
            classes: 8,
            crosswind_half_width_kmph: 25.0,
            coefficient_source: "derived",
            calm_pct: 40.0,
            coverage: vec![ClassCoverage {
                class: 0,
                azimuth_deg: 0.0,
                designator: String::from("18-36"),
                coverage_pct: 77.564_86,
            }],
            best: ClassCoverage {
                class: 0,
                azimuth_deg: 0.0,
                designator: String::from("18-36"),
                coverage_pct: 77.564_86,
            },
            meets_threshold: false,
            threshold_pct: 95.0,
            pair,
        }
    }

    #[test]
    fn json_floats_use_six_decimals() {
        let text = to_json_six_decimals(&sample_report(None));
        assert!(text.contains("\"calm_pct\":40.000000"), "{text}");
        assert!(text.contains("\"coverage_pct\":77.564860"), "{text}");
        assert!(text.contains("\"schema_version\":1"), "{text}");
        assert!(!text.contains("\"pair\""), "{text}");
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn json_field_order_is_stable() {
        let text = to_json_six_decimals(&sample_report(None));
        let keys = [
            "schema_version",
            "classes",
            "crosswind_half_width_kmph",
            "coefficient_source",
            "calm_pct",
            "coverage",
            "best",
            "meets_threshold",
            "threshold_pct",
        ];
        let mut last = 0;
        for key in keys {
            let pos = text.find(&format!("\"{key}\"")).unwrap_or_else(|| panic!("{key}"));
            assert!(pos > last || last == 0, "{key} out of order");
            last = pos;
        }
    }

    #[test]
    fn pair_section_appears_when_present() {
        let pair = PairReport {
            mode: "perpendicular",
            partner_class: 4,
            partner_azimuth_deg: 90.0,
            partner_designator: String::from("09-27"),
            combined_coverage_pct: 99.5,
        };
        let text = to_json_six_decimals(&sample_report(Some(pair)));
        assert!(text.contains("\"pair\":{\"mode\":\"perpendicular\""), "{text}");
        assert!(text.contains("\"combined_coverage_pct\":99.500000"), "{text}");
    }

    #[test]
    fn compass_names_cover_the_sixteen_points() {
        assert_eq!(compass_pair_name(0.0), "N-S");
        assert_eq!(compass_pair_name(22.5), "NNE-SSW");
        assert_eq!(compass_pair_name(45.0), "NE-SW");
        assert_eq!(compass_pair_name(90.0), "E-W");
        assert_eq!(compass_pair_name(157.5), "SSE-NNW");
        assert_eq!(compass_pair_name(180.0), "N-S");
        assert_eq!(compass_pair_name(30.0), "30.0 deg");
    }

    #[test]
    fn text_report_lists_rows_and_verdict() {
        let text = orient_text(&sample_report(None));
        assert!(text.contains("18-36"), "{text}");
        assert!(text.contains("N-S"), "{text}");
        assert!(text.contains("77.565%"), "{text}");
        assert!(text.contains("below the 95.0%"), "{text}");
    }
}
