//! Deterministic SVG rendering of a wind rose with an optional runway
//! strip overlay.
//!
//! Output is byte-identical for identical inputs: fixed element order,
//! fixed two-decimal coordinates, no timestamps or generated ids.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::fmt::Write;

use crate::geometry::Strip;
use crate::rose::{RoseError, WindRose};

/// Rendering failures.
#[derive(Debug, Clone, PartialEq)]
pub enum RenderError {
    BadOptions(String),
    Rose(RoseError),
}

impl fmt::Display for RenderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenderError::BadOptions(msg) => write!(f, "bad render options: {msg}"),
            RenderError::Rose(e) => write!(f, "invalid rose: {e}"),
        }
    }
}

impl core::error::Error for RenderError {}

impl From<RoseError> for RenderError {
    fn from(e: RoseError) -> Self {
        RenderError::Rose(e)
    }
}

/// Canvas, scale, and overlay settings for [`render_rose_svg`].
#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub canvas_width_px: u32,
    pub canvas_height_px: u32,
    /// The outermost ring renders at this radius; inner rings scale
    /// linearly with their speed.
    pub outer_radius_px: f64,
    /// Runway strip to draw over the rose, if any.
    pub strip: Option<Strip>,
    /// Label each cell with its percentage, plus ring speeds and calm.
    pub show_values: bool,
    /// Decimal places for percentage labels.
    pub decimals: usize,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            canvas_width_px: 800,
            canvas_height_px: 800,
            outer_radius_px: 350.0,
            strip: None,
            show_values: false,
            decimals: 2,
        }
    }
}

/// Margin kept between the outer ring and the canvas edge, px.
const EDGE_MARGIN_PX: f64 = 20.0;

/// The strip rectangle extends past the outer ring by this factor.
const STRIP_OVERHANG: f64 = 1.05;

/// Renders the rose as an SVG document: a circle per ring, a spoke per
/// class boundary in both half-planes, optional value labels, and the
/// optional strip as a semi-transparent rectangle through the center.
pub fn render_rose_svg(rose: &WindRose, options: &RenderOptions) -> Result<String, RenderError> {
    rose.validate()?;
    check_options(options)?;

    let w = options.canvas_width_px as f64;
    let h = options.canvas_height_px as f64;
    let (cx, cy) = (0.5 * w, 0.5 * h);
    let scale = options.outer_radius_px / rose.geometry().outermost();
    let n = rose.class_count();
    let class_width = rose.classes().width_deg();

    // Screen position of polar (radius px, azimuth deg), north up,
    // azimuths clockwise.
    let point = |radius: f64, azimuth_deg: f64| {
        let a = azimuth_deg.to_radians();
        (cx + radius * libm::sin(a), cy - radius * libm::cos(a))
    };

    let mut svg = String::new();
    let out = &mut svg;
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">",
        options.canvas_width_px, options.canvas_height_px
    )
    .unwrap();
    writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{w:.2}\" height=\"{h:.2}\" fill=\"#ffffff\"/>")
        .unwrap();

    writeln!(out, "<g fill=\"none\" stroke=\"#555555\" stroke-width=\"1\">").unwrap();
    for &radius in rose.geometry().ring_radii() {
        writeln!(out, "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{:.2}\"/>", radius * scale)
            .unwrap();
    }
    writeln!(out, "</g>").unwrap();

    writeln!(out, "<g stroke=\"#999999\" stroke-width=\"0.75\">").unwrap();
    let calm_px = rose.geometry().calm_threshold() * scale;
    for k in 0..2 * n {
        let boundary = (k as f64 + 0.5) * class_width;
        let (x1, y1) = point(calm_px, boundary);
        let (x2, y2) = point(options.outer_radius_px, boundary);
        writeln!(out, "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\"/>")
            .unwrap();
    }
    writeln!(out, "</g>").unwrap();

    if let Some(strip) = &options.strip {
        let half_width_px = strip.half_width * scale;
        let half_length_px = options.outer_radius_px * STRIP_OVERHANG;
        writeln!(
            out,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#1976d2\" fill-opacity=\"0.30\" transform=\"rotate({:.2} {cx:.2} {cy:.2})\"/>",
            cx - half_width_px,
            cy - half_length_px,
            2.0 * half_width_px,
            2.0 * half_length_px,
            strip.axis_azimuth_deg,
        )
        .unwrap();
    }

    if options.show_values {
        writeln!(
            out,
            "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#333333\" text-anchor=\"middle\">"
        )
        .unwrap();
        for &radius in rose.geometry().ring_radii() {
            let (x, y) = point(radius * scale - 6.0, 0.0);
            writeln!(out, "<text x=\"{x:.2}\" y=\"{y:.2}\">{radius}</text>").unwrap();
        }
        for band in 0..rose.band_count() {
            let (r0, r1) = rose.geometry().band_bounds(band);
            let mid_px = 0.5 * (r0 + r1) * scale;
            for class in 0..n {
                let value = rose.cell(band, class);
                let axis = rose.classes().axis_deg(class);
                for azimuth in [axis, axis + 180.0] {
                    let (x, y) = point(mid_px, azimuth);
                    writeln!(
                        out,
                        "<text x=\"{x:.2}\" y=\"{y:.2}\">{value:.prec$}</text>",
                        prec = options.decimals
                    )
                    .unwrap();
                }
            }
        }
        writeln!(
            out,
            "<text x=\"{cx:.2}\" y=\"{cy:.2}\">{:.prec$}</text>",
            rose.calm_pct(),
            prec = options.decimals
        )
        .unwrap();
        writeln!(out, "</g>").unwrap();
    }

    writeln!(out, "</svg>").unwrap();
    Ok(svg)
}

fn check_options(options: &RenderOptions) -> Result<(), RenderError> {
    if !options.outer_radius_px.is_finite() || options.outer_radius_px <= 0.0 {
        return Err(RenderError::BadOptions(String::from(
            "outer radius must be positive and finite",
        )));
    }
    let min_side = options.canvas_width_px.min(options.canvas_height_px) as f64;
    if 0.5 * min_side < options.outer_radius_px + EDGE_MARGIN_PX {
        return Err(RenderError::BadOptions(format!(
            "canvas {}x{} too small for outer radius {} plus margin",
            options.canvas_width_px, options.canvas_height_px, options.outer_radius_px
        )));
    }
    if options.decimals > 12 {
        return Err(RenderError::BadOptions(String::from("too many decimal places")));
    }
    if let Some(strip) = &options.strip {
        Strip::new(strip.axis_azimuth_deg, strip.half_width)
            .map_err(|e| RenderError::BadOptions(format!("{e}")))?;
    }
    Ok(())
}
