//! Deterministic SVG charts from analyze/simulate CSV files.
//!
//! The renderer is a pure function of the CSV bytes: fixed canvas, fixed
//! palette, fixed tick layout. Identical input yields identical output.

use std::fmt::Write as _;
use std::path::Path;

use crate::commands::{ANALYZE_HEADER, SIMULATE_HEADER};
use crate::error::CliError;
use crate::fmt::sig;

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 36.0;
const MARGIN_BOTTOM: f64 = 56.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

struct Series {
    label: String,
    color: &'static str,
    points: Vec<(f64, f64)>,
    dashed: bool,
    markers: bool,
    line: bool,
}

pub fn plot(csv_path: &Path, out_path: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(csv_path)
        .map_err(|e| CliError::Io(format!("{}: {e}", csv_path.display())))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| malformed(csv_path, "missing header row"))?
        .trim();
    let rows: Vec<Vec<&str>> = lines
        .filter(|line| !line.trim().is_empty())
        .map(|line| line.split(',').collect())
        .collect();
    if rows.is_empty() {
        return Err(malformed(csv_path, "no data rows"));
    }

    let (series, y_label) = if header == ANALYZE_HEADER {
        (analyze_series(csv_path, &rows)?, "aundt")
    } else if header == SIMULATE_HEADER {
        (simulate_series(csv_path, &rows)?, "empirical aundt")
    } else {
        return Err(malformed(csv_path, "unrecognized header"));
    };

    let svg = render(&series, "cluster size M", y_label);
    if let Some(parent) = out_path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)
            .map_err(|e| CliError::Io(format!("{}: {e}", parent.display())))?;
    }
    std::fs::write(out_path, svg).map_err(|e| CliError::Io(format!("{}: {e}", out_path.display())))?;
    println!("wrote chart to {}", out_path.display());
    Ok(())
}

fn malformed(path: &Path, detail: &str) -> CliError {
    CliError::InvalidConfig(format!("malformed csv {}: {detail}", path.display()))
}

fn field<'a>(path: &Path, row: &[&'a str], idx: usize) -> Result<&'a str, CliError> {
    row.get(idx)
        .copied()
        .ok_or_else(|| malformed(path, &format!("row has {} fields, need {}", row.len(), idx + 1)))
}

fn numeric(path: &Path, row: &[&str], idx: usize) -> Result<f64, CliError> {
    let raw = field(path, row, idx)?;
    raw.trim()
        .parse()
        .map_err(|_| malformed(path, &format!("non-numeric field {raw:?}")))
}

/// One polyline per (beta, lambda) group, in order of first appearance.
fn analyze_series(path: &Path, rows: &[Vec<&str>]) -> Result<Vec<Series>, CliError> {
    let mut series: Vec<(String, Series)> = Vec::new();
    for row in rows {
        let key = format!("{},{}", field(path, row, 0)?, field(path, row, 1)?);
        let x = numeric(path, row, 2)?;
        let y = numeric(path, row, 3)?;
        let entry = match series.iter_mut().find(|(k, _)| *k == key) {
            Some((_, s)) => s,
            None => {
                let color = PALETTE[series.len() % PALETTE.len()];
                let label = format!(
                    "beta={} lambda={}",
                    field(path, row, 0)?,
                    field(path, row, 1)?
                );
                series.push((
                    key,
                    Series {
                        label,
                        color,
                        points: Vec::new(),
                        dashed: false,
                        markers: false,
                        line: true,
                    },
                ));
                &mut series.last_mut().expect("just pushed").1
            }
        };
        entry.points.push((x, y));
    }
    Ok(series.into_iter().map(|(_, s)| s).collect())
}

/// Dashed analytic curve with empirical markers on top.
fn simulate_series(path: &Path, rows: &[Vec<&str>]) -> Result<Vec<Series>, CliError> {
    let mut analytic = Series {
        label: "analytic".to_string(),
        color: PALETTE[0],
        points: Vec::new(),
        dashed: true,
        markers: false,
        line: true,
    };
    let mut empirical = Series {
        label: "empirical".to_string(),
        color: PALETTE[1],
        points: Vec::new(),
        dashed: false,
        markers: true,
        line: false,
    };
    for row in rows {
        let x = numeric(path, row, 0)?;
        empirical.points.push((x, numeric(path, row, 1)?));
        analytic.points.push((x, numeric(path, row, 3)?));
    }
    Ok(vec![analytic, empirical])
}

fn render(series: &[Series], x_label: &str, y_label: &str) -> String {
    let xs: Vec<f64> = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.0))
        .collect();
    let ys: Vec<f64> = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .collect();
    let (x_lo, x_hi) = bounds(&xs, 0.0);
    let (y_lo, y_hi) = bounds(&ys, 0.05);

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let to_x = |v: f64| MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w;
    let to_y = |v: f64| MARGIN_TOP + (y_hi - v) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    // Axes.
    let _ = writeln!(
        svg,
        r#"<line x1="{l:.2}" y1="{b:.2}" x2="{r:.2}" y2="{b:.2}" stroke="black" stroke-width="1"/>"#,
        l = MARGIN_LEFT,
        r = WIDTH - MARGIN_RIGHT,
        b = HEIGHT - MARGIN_BOTTOM,
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{l:.2}" y1="{t:.2}" x2="{l:.2}" y2="{b:.2}" stroke="black" stroke-width="1"/>"#,
        l = MARGIN_LEFT,
        t = MARGIN_TOP,
        b = HEIGHT - MARGIN_BOTTOM,
    );

    // Ticks: every integer on x when the span is narrow, else 6 even steps.
    let x_span = x_hi - x_lo;
    let x_ticks: Vec<f64> = if x_span <= 16.0 && x_lo.fract() == 0.0 && x_span.fract() == 0.0 {
        (0..=x_span as i64).map(|i| x_lo + i as f64).collect()
    } else {
        (0..=6).map(|i| x_lo + x_span * f64::from(i) / 6.0).collect()
    };
    for tick in x_ticks {
        let x = to_x(tick);
        let y = HEIGHT - MARGIN_BOTTOM;
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{y:.2}" x2="{x:.2}" y2="{:.2}" stroke="black" stroke-width="1"/>"#,
            y + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.2}" font-family="monospace" font-size="12" text-anchor="middle">{}</text>"#,
            y + 20.0,
            sig(tick, 6)
        );
    }
    for i in 0..=5 {
        let tick = y_lo + (y_hi - y_lo) * f64::from(i) / 5.0;
        let y = to_y(tick);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{l:.2}" y2="{y:.2}" stroke="black" stroke-width="1"/>"#,
            MARGIN_LEFT - 5.0,
            l = MARGIN_LEFT,
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="12" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 9.0,
            y + 4.0,
            sig(tick, 6)
        );
    }

    // Axis labels.
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="13" text-anchor="middle">{x_label}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 12.0,
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{:.2}" font-family="monospace" font-size="13" text-anchor="middle" transform="rotate(-90 16 {0:.2})">{y_label}</text>"#,
        MARGIN_TOP + plot_h / 2.0,
    );

    // Series.
    for s in series {
        if s.line && s.points.len() > 1 {
            let points: Vec<String> = s
                .points
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", to_x(x), to_y(y)))
                .collect();
            let dash = if s.dashed {
                r#" stroke-dasharray="6,4""#
            } else {
                ""
            };
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"{dash}/>"#,
                points.join(" "),
                s.color,
            );
        }
        if s.markers {
            for &(x, y) in &s.points {
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="none" stroke="{}" stroke-width="1.5"/>"#,
                    to_x(x),
                    to_y(y),
                    s.color,
                );
            }
        }
    }

    // Legend, top-right inside the plot area.
    for (i, s) in series.iter().enumerate() {
        let y = MARGIN_TOP + 16.0 + 18.0 * i as f64;
        let x = WIDTH - MARGIN_RIGHT - 190.0;
        if s.line {
            let dash = if s.dashed {
                r#" stroke-dasharray="6,4""#
            } else {
                ""
            };
            let _ = writeln!(
                svg,
                r#"<line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="1.5"{dash}/>"#,
                x + 26.0,
                s.color,
            );
        } else {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.2}" cy="{y:.2}" r="4" fill="none" stroke="{}" stroke-width="1.5"/>"#,
                x + 13.0,
                s.color,
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="12">{}</text>"#,
            x + 32.0,
            y + 4.0,
            s.label,
        );
    }

    svg.push_str("</svg>\n");
    svg
}

/// Padded data bounds; degenerate ranges get a unit of slack so the scale
/// stays finite.
fn bounds(values: &[f64], pad: f64) -> (f64, f64) {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        return (lo - 1.0, hi + 1.0);
    }
    let span = hi - lo;
    (lo - span * pad, hi + span * pad)
}
