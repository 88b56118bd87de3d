//! File formats: raw observation CSV, binned rose CSV, and coefficient
//! table CSV.
//!
//! Rose CSV values are written with the shortest representation that
//! parses back to the identical float, so binning and re-reading round-
//! trips losslessly. All parsing is locale-independent with `.` decimals.

use std::fmt::Write;

use windrose_core::{
    BandGeometry, CoefficientSource, CoefficientTable, OrientationClasses, RawObservation,
    RoseError, WindRose,
};

use crate::error::CliError;

/// The CLI vocabulary for a coefficient source.
pub fn source_token(source: CoefficientSource) -> &'static str {
    match source {
        CoefficientSource::Derived => "derived",
        CoefficientSource::Compat => "paper",
    }
}

fn bad_line(line_no: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("line {line_no}: {msg}"))
}

fn parse_float(token: &str, line_no: usize, what: &str) -> Result<f64, CliError> {
    token
        .trim()
        .parse::<f64>()
        .map_err(|_| bad_line(line_no, format!("invalid {what} `{}`", token.trim())))
}

/// Parses raw observations: a `direction_deg,speed_kmph[,weight]` header,
/// then one observation per line. `#` lines and blank lines are skipped.
pub fn parse_raw_csv(text: &str) -> Result<Vec<RawObservation>, CliError> {
    let mut header_fields: Option<usize> = None;
    let mut observations = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let Some(expected) = header_fields else {
            match fields.as_slice() {
                ["direction_deg", "speed_kmph"] => header_fields = Some(2),
                ["direction_deg", "speed_kmph", "weight"] => header_fields = Some(3),
                _ => {
                    return Err(bad_line(
                        line_no,
                        "expected header `direction_deg,speed_kmph[,weight]`",
                    ))
                }
            }
            continue;
        };
        if fields.len() != expected {
            return Err(bad_line(
                line_no,
                format!("expected {expected} fields, got {}", fields.len()),
            ));
        }
        let direction = parse_float(fields[0], line_no, "direction")?;
        let speed = parse_float(fields[1], line_no, "speed")?;
        let weight =
            if expected == 3 { parse_float(fields[2], line_no, "weight")? } else { 1.0 };
        if !direction.is_finite() {
            return Err(bad_line(line_no, "direction must be finite"));
        }
        if !speed.is_finite() || speed < 0.0 {
            return Err(bad_line(line_no, format!("speed must be non-negative, got {speed}")));
        }
        if !weight.is_finite() || weight < 0.0 {
            return Err(bad_line(line_no, format!("weight must be non-negative, got {weight}")));
        }
        observations.push(RawObservation::weighted(direction, speed, weight));
    }
    if header_fields.is_none() {
        return Err(CliError::Io(String::from(
            "no observations: input has no header or data lines",
        )));
    }
    Ok(observations)
}

/// Parses a binned rose: a `# bands=<r0,r1,...> classes=<n>` header line,
/// one percentage row per band, and an optional trailing
/// `above_max,<pct>` row. Other `#` lines are comments.
pub fn parse_rose_csv(text: &str) -> Result<WindRose, CliError> {
    let mut bands: Option<Vec<f64>> = None;
    let mut classes: Option<usize> = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut above_max = 0.0;
    let mut above_max_seen = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if bands.is_none() && rest.trim_start().starts_with("bands=") {
                for token in rest.split_whitespace() {
                    if let Some(list) = token.strip_prefix("bands=") {
                        let parsed: Result<Vec<f64>, CliError> = list
                            .split(',')
                            .map(|t| parse_float(t, line_no, "ring radius"))
                            .collect();
                        bands = Some(parsed?);
                    } else if let Some(n) = token.strip_prefix("classes=") {
                        classes = Some(n.parse::<usize>().map_err(|_| {
                            bad_line(line_no, format!("invalid class count `{n}`"))
                        })?);
                    }
                }
                if classes.is_none() {
                    return Err(bad_line(line_no, "header is missing `classes=<n>`"));
                }
            }
            continue;
        }
        let (Some(_), Some(n)) = (&bands, classes) else {
            return Err(bad_line(
                line_no,
                "expected a `# bands=<r0,r1,...> classes=<n>` header before data",
            ));
        };
        if let Some(rest) = line.strip_prefix("above_max,") {
            if above_max_seen {
                return Err(bad_line(line_no, "duplicate above_max row"));
            }
            above_max = parse_float(rest, line_no, "above_max share")?;
            above_max_seen = true;
            continue;
        }
        if above_max_seen {
            return Err(bad_line(line_no, "band rows after the above_max row"));
        }
        let row: Result<Vec<f64>, CliError> =
            line.split(',').map(|t| parse_float(t, line_no, "percentage")).collect();
        let row = row?;
        if row.len() != n {
            return Err(bad_line(
                line_no,
                format!("expected {n} class percentages, got {}", row.len()),
            ));
        }
        rows.push(row);
    }

    let Some(bands) = bands else {
        return Err(CliError::Io(String::from(
            "missing `# bands=<r0,r1,...> classes=<n>` header",
        )));
    };
    let geometry = BandGeometry::new(bands).map_err(rose_error)?;
    let classes = OrientationClasses::new(classes.unwrap()).map_err(rose_error)?;
    if rows.len() != geometry.band_count() {
        return Err(CliError::Io(format!(
            "expected {} band rows, got {}",
            geometry.band_count(),
            rows.len()
        )));
    }
    WindRose::new(geometry, classes, &rows, above_max).map_err(rose_error)
}

/// Maps rose errors to exit codes: bad values in a structurally sound
/// file are validation failures; everything else is a parse failure.
pub fn rose_error(e: RoseError) -> CliError {
    match e {
        RoseError::NegativeCell { .. }
        | RoseError::NegativeAboveMax { .. }
        | RoseError::TotalExceeds100 { .. }
        | RoseError::NotFinite { .. } => CliError::Validation(e.to_string()),
        other => CliError::Io(other.to_string()),
    }
}

/// Writes the binned rose format; parsing it back yields the identical
/// rose. The above_max row appears only when the share is nonzero.
pub fn write_rose_csv(rose: &WindRose) -> String {
    let mut out = String::new();
    let bands: Vec<String> =
        rose.geometry().ring_radii().iter().map(f64::to_string).collect();
    writeln!(out, "# bands={} classes={}", bands.join(","), rose.class_count()).unwrap();
    for band in 0..rose.band_count() {
        let row: Vec<String> = rose.band_row(band).iter().map(f64::to_string).collect();
        writeln!(out, "{}", row.join(",")).unwrap();
    }
    if rose.above_max() > 0.0 {
        writeln!(out, "above_max,{}", rose.above_max()).unwrap();
    }
    out
}

/// Formats a value to 9 significant digits, trimming trailing zeros.
pub fn format_sig9(v: f64) -> String {
    if v == 0.0 {
        return String::from("0");
    }
    let decimals = (8 - v.abs().log10().floor() as i64).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Writes a coefficient table: one row per band, one column per offset.
pub fn write_coeffs_csv(
    table: &CoefficientTable,
    geometry: &BandGeometry,
    half_width: f64,
) -> String {
    let mut out = String::new();
    let bands: Vec<String> = geometry.ring_radii().iter().map(f64::to_string).collect();
    writeln!(
        out,
        "# source={} bands={} classes={} half_width={}",
        source_token(table.source()),
        bands.join(","),
        table.class_count(),
        half_width
    )
    .unwrap();
    for row in table.rows() {
        let formatted: Vec<String> = row.iter().copied().map(format_sig9).collect();
        writeln!(out, "{}", formatted.join(",")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use windrose_core::{bin_observations, StormPolicy};

    #[test]
    fn raw_csv_parses_with_comments_and_weights() {
        let text = "# survey data\ndirection_deg,speed_kmph,weight\n0,10,2\n190.5,20,1\n";
        let obs = parse_raw_csv(text).unwrap();
        assert_eq!(obs.len(), 2);
        assert_eq!(obs[0].weight, 2.0);
        assert_eq!(obs[1].direction_deg, 190.5);

        let no_weight = "direction_deg,speed_kmph\n45,12\n";
        let obs = parse_raw_csv(no_weight).unwrap();
        assert_eq!(obs[0].weight, 1.0);
    }

    #[test]
    fn raw_csv_errors_carry_line_numbers() {
        let negative = "direction_deg,speed_kmph\n0,10\n90,-3\n";
        let err = parse_raw_csv(negative).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        assert_eq!(err.exit_code(), 2);

        let garbled = "direction_deg,speed_kmph\nnot,numbers\n";
        let err = parse_raw_csv(garbled).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");

        let missing_header = "0,10\n";
        assert!(parse_raw_csv(missing_header).is_err());

        let empty = "# nothing\n";
        let err = parse_raw_csv(empty).unwrap_err();
        assert!(err.to_string().contains("no observations"), "{err}");
    }

    #[test]
    fn rose_csv_round_trips_exactly() {
        let obs = parse_raw_csv(
            "direction_deg,speed_kmph\n0,10\n95.5,20\n181,33.3\n250,5\n10,50\n",
        )
        .unwrap();
        let rose = bin_observations(
            &obs,
            &BandGeometry::default(),
            &OrientationClasses::default(),
            StormPolicy::Track,
        )
        .unwrap();
        let text = write_rose_csv(&rose);
        let back = parse_rose_csv(&text).unwrap();
        assert_eq!(rose, back);
        assert!(text.starts_with("# bands=6.4,15,30,47 classes=8\n"));
        assert!(text.contains("above_max,20\n"));
    }

    #[test]
    fn rose_csv_above_max_row_is_optional() {
        let text = "# bands=6.4,15,30,47 classes=2\n10,20\n0,0\n5,0\n";
        let rose = parse_rose_csv(text).unwrap();
        assert_eq!(rose.above_max(), 0.0);
        assert_eq!(rose.cell(0, 1), 20.0);
        assert!(!write_rose_csv(&rose).contains("above_max"));
    }

    #[test]
    fn rose_csv_shape_errors_are_io() {
        let missing_header = "1,2\n";
        assert_eq!(parse_rose_csv(missing_header).unwrap_err().exit_code(), 2);

        let short_row = "# bands=6.4,15 classes=4\n1,2,3\n";
        let err = parse_rose_csv(short_row).unwrap_err();
        assert!(err.to_string().contains("expected 4"), "{err}");

        let missing_rows = "# bands=6.4,15,30 classes=2\n1,2\n";
        let err = parse_rose_csv(missing_rows).unwrap_err();
        assert!(err.to_string().contains("band rows"), "{err}");
    }

    #[test]
    fn rose_csv_value_errors_are_validation() {
        let over_100 = "# bands=6.4,15 classes=2\n70,50\n";
        let err = parse_rose_csv(over_100).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("exceeds 100"), "{err}");

        let negative = "# bands=6.4,15 classes=2\n-1,5\n";
        assert_eq!(parse_rose_csv(negative).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn nine_significant_digits_trim_cleanly() {
        assert_eq!(format_sig9(1.0), "1");
        assert_eq!(format_sig9(0.0), "0");
        assert_eq!(format_sig9(0.831353), "0.831353");
        assert_eq!(format_sig9(0.773101042888), "0.773101043");
        assert_eq!(format_sig9(1.31870719054469e-5), "0.0000131870719");
        assert_eq!(format_sig9(47.0), "47");
    }

    #[test]
    fn coeffs_csv_lists_band_rows() {
        let table = CoefficientTable::compat();
        let text = write_coeffs_csv(&table, &BandGeometry::default(), 25.0);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "# source=paper bands=6.4,15,30,47 classes=8 half_width=25");
        assert_eq!(lines[1], "1,1,1,1,1,1,1,1");
        assert_eq!(lines[2], "1,1,1,0.831353,0.626081,0.831353,1,1");
        assert_eq!(lines[3], "1,1,0.358123,0,0,0,0.358123,1");
    }
}
