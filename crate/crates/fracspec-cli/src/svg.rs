//! Deterministic SVG bar chart of FPS versus period: identical reports
//! produce byte-identical documents.

use std::fmt::Write;

use crate::report::{fmt_period_decimal, fmt_significant, SpectrumReport};
use crate::CliError;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 76.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 48.0;
const MARGIN_BOTTOM: f64 = 64.0;
const BAR_FILL: &str = "#4878a8";
const PEAK_FILL: &str = "#c44e52";
const AXIS_COLOR: &str = "#333333";
const GRID_COLOR: &str = "#dddddd";

pub fn render_svg(report: &SpectrumReport) -> Result<String, CliError> {
    if report.rows.is_empty() {
        return Err(CliError::Invalid(
            "cannot chart a report with no rows".to_string(),
        ));
    }
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let max_fps = report.rows.iter().map(|r| r.fps).fold(0.0_f64, f64::max);
    let scale = if max_fps > 0.0 { max_fps * 1.05 } else { 1.0 };
    let slot = plot_w / report.rows.len() as f64;
    let bar_w = slot * 0.7;
    let baseline = MARGIN_TOP + plot_h;
    let peak_k = report.peak_row().k;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##
    );
    let _ = writeln!(
        svg,
        r#"<text x="{x}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{title}</text>"#,
        x = coord(WIDTH / 2.0),
        title = xml_escape(&format!(
            "{} - FPS by period (modulus {})",
            report.input, report.modulus
        )),
    );

    // Horizontal grid and y-axis tick labels.
    for tick in 0..=4 {
        let value = scale * tick as f64 / 4.0;
        let y = baseline - plot_h * tick as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{x1}" y1="{y}" x2="{x2}" y2="{y}" stroke="{GRID_COLOR}" stroke-width="1"/>"#,
            x1 = coord(MARGIN_LEFT),
            x2 = coord(MARGIN_LEFT + plot_w),
            y = coord(y),
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="11" text-anchor="end">{label}</text>"#,
            x = coord(MARGIN_LEFT - 6.0),
            y = coord(y + 4.0),
            label = fmt_significant(value, 4),
        );
    }

    // Bars with period labels, ordered by k (periods descend left to
    // right).
    for (index, row) in report.rows.iter().enumerate() {
        let x = MARGIN_LEFT + slot * index as f64 + (slot - bar_w) / 2.0;
        let height = plot_h * row.fps / scale;
        let fill = if row.k == peak_k { PEAK_FILL } else { BAR_FILL };
        let _ = writeln!(
            svg,
            r#"<rect class="bar" x="{x}" y="{y}" width="{w}" height="{h}" fill="{fill}"/>"#,
            x = coord(x),
            y = coord(baseline - height),
            w = coord(bar_w),
            h = coord(height),
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="11" text-anchor="middle">{label}</text>"#,
            x = coord(x + bar_w / 2.0),
            y = coord(baseline + 16.0),
            label = fmt_period_decimal(row.period.as_f64()),
        );
    }

    // Axes.
    let _ = writeln!(
        svg,
        r#"<line x1="{x}" y1="{y1}" x2="{x}" y2="{y2}" stroke="{AXIS_COLOR}" stroke-width="1.5"/>"#,
        x = coord(MARGIN_LEFT),
        y1 = coord(MARGIN_TOP),
        y2 = coord(baseline),
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{x1}" y1="{y}" x2="{x2}" y2="{y}" stroke="{AXIS_COLOR}" stroke-width="1.5"/>"#,
        x1 = coord(MARGIN_LEFT),
        x2 = coord(MARGIN_LEFT + plot_w),
        y = coord(baseline),
    );
    let _ = writeln!(
        svg,
        r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="12" text-anchor="middle">period (l/k)</text>"#,
        x = coord(MARGIN_LEFT + plot_w / 2.0),
        y = coord(HEIGHT - 18.0),
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{y}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 18 {y})">FPS</text>"#,
        y = coord(MARGIN_TOP + plot_h / 2.0),
    );

    // Peak annotation above its bar.
    let peak = report.peak_row();
    let peak_index = peak.k - 1;
    let peak_x = MARGIN_LEFT + slot * peak_index as f64 + slot / 2.0;
    let peak_y = (baseline - plot_h * peak.fps / scale - 8.0).max(MARGIN_TOP - 4.0);
    let _ = writeln!(
        svg,
        r#"<text class="peak-label" x="{x}" y="{y}" font-family="sans-serif" font-size="12" text-anchor="{anchor}">peak {period} = {decimal}, FPS {fps}</text>"#,
        x = coord(peak_x.min(WIDTH - MARGIN_RIGHT - 4.0)),
        y = coord(peak_y),
        anchor = if peak_x > WIDTH - 220.0 {
            "end"
        } else {
            "middle"
        },
        period = peak.period,
        decimal = fmt_period_decimal(peak.period.as_f64()),
        fps = fmt_significant(peak.fps, 6),
    );

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn coord(value: f64) -> String {
    format!("{value:.2}")
}

fn xml_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(ch),
        }
    }
    out
}
