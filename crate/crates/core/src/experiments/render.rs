use std::fmt::Write as _;

use serde_json::Value;

use super::{ExperimentReport, Format};

pub fn render(report: &ExperimentReport, format: Format) -> String {
    match format {
        Format::Json => render_json(report),
        Format::Csv => render_csv(report),
        Format::Svg => render_svg(report),
    }
}

pub fn render_json(report: &ExperimentReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

pub fn render_csv(report: &ExperimentReport) -> String {
    let mut out = String::new();
    let header: Vec<String> = report.columns.iter().map(|c| csv_field(c)).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in &report.rows {
        let cells: Vec<String> = row
            .iter()
            .map(|v| match v {
                Value::Null => String::new(),
                Value::String(s) => csv_field(s),
                other => other.to_string(),
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 56.0;
const COLOURS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Line chart of the plotted columns against the x column, with the
/// asymptote (if any) as a dashed horizontal line.
pub fn render_svg(report: &ExperimentReport) -> String {
    let xs = report.column(&report.plot.x).unwrap_or_default();
    let series: Vec<(String, Vec<(f64, f64)>)> = report
        .plot
        .y
        .iter()
        .map(|name| {
            let ys = report.column(name).unwrap_or_default();
            let points = xs
                .iter()
                .zip(&ys)
                .filter_map(|(x, y)| Some(((*x)?, (*y)?)))
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .collect();
            (name.clone(), points)
        })
        .collect();
    let all: Vec<(f64, f64)> = series.iter().flat_map(|s| s.1.iter().copied()).collect();
    let (mut x0, mut x1) = bounds(all.iter().map(|p| p.0));
    let (mut y0, mut y1) = bounds(all.iter().map(|p| p.1).chain(report.asymptote));
    if x0 == x1 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if y0 == y1 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    writeln!(
        out,
        r#"<path class="axes" d="M{left} {top} L{left} {bottom} L{right} {bottom}" fill="none" stroke="black"/>"#
    )
    .unwrap();
    for (label, x) in [(num(x0), left), (num(x1), right)] {
        writeln!(out, r#"<text x="{x:.2}" y="{:.2}" font-size="12" text-anchor="middle">{label}</text>"#, bottom + 18.0).unwrap();
    }
    for (label, y) in [(num(y0), bottom), (num(y1), top)] {
        writeln!(out, r#"<text x="{:.2}" y="{y:.2}" font-size="12" text-anchor="end">{label}</text>"#, left - 6.0).unwrap();
    }
    writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0,
        escape(&report.plot.x)
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="14" y="{:.2}" font-size="13" text-anchor="middle" transform="rotate(-90 14 {:.2})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(&report.plot.y_label)
    )
    .unwrap();
    if let Some(a) = report.asymptote {
        writeln!(
            out,
            r#"<line class="asymptote" x1="{left}" y1="{y:.2}" x2="{right}" y2="{y:.2}" stroke="gray" stroke-dasharray="6 4"/>"#,
            y = sy(a)
        )
        .unwrap();
    }
    for (i, (name, points)) in series.iter().enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        if !points.is_empty() {
            let coords: Vec<String> = points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
            writeln!(
                out,
                r#"<polyline class="series" data-name="{}" points="{}" fill="none" stroke="{colour}" stroke-width="2"/>"#,
                escape(name),
                coords.join(" ")
            )
            .unwrap();
            for &(x, y) in points {
                writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{colour}"/>"#, sx(x), sy(y)).unwrap();
            }
        }
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" fill="{colour}">{}</text>"#,
            right - 120.0,
            top + 16.0 * (i as f64 + 1.0),
            escape(name)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if lo.is_finite() {
        (lo, hi)
    } else {
        (0.0, 1.0)
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
