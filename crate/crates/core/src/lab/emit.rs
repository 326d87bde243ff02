//! CSV and SVG emission for time series and scan results.
//!
//! CSV layout: `#`-prefixed metadata lines (the resolved configuration in
//! canonical order), then the fixed header `t,D_T,D_HS,D_B,D_H,D_JS`, then
//! one row per grid point with every value printed to 12 significant
//! digits. Identical configurations produce byte-identical files.
//!
//! The SVG plot is a single standalone document with one panel per
//! measure (the published figures show the measures in separate panels
//! because their scales differ by an order of magnitude), linear axes, one
//! polyline per panel and the metadata as a caption line.

use std::io::{self, Write};

use thiserror::Error;

use super::{ScanResult, TimeSeries};
use crate::distances::DistanceRecord;

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("nothing to plot: empty input")]
    Empty,
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn sig12(v: f64) -> String {
    format!("{v:.11e}")
}

fn write_meta(meta: &[(String, String)], kind: &str, sink: &mut (impl Write + ?Sized)) -> io::Result<()> {
    writeln!(sink, "# qdlab {kind}")?;
    for (k, v) in meta {
        writeln!(sink, "# {k} = {v}")?;
    }
    Ok(())
}

/// Writes a time series as CSV with the exact header
/// `t,D_T,D_HS,D_B,D_H,D_JS`.
pub fn emit_csv(series: &TimeSeries, sink: &mut (impl Write + ?Sized)) -> io::Result<()> {
    write_meta(&series.meta, "timeseries", sink)?;
    writeln!(sink, "t,D_T,D_HS,D_B,D_H,D_JS")?;
    for (t, rec) in &series.rows {
        writeln!(
            sink,
            "{},{},{},{},{},{}",
            sig12(*t),
            sig12(rec.d_t),
            sig12(rec.d_hs),
            sig12(rec.d_b),
            sig12(rec.d_h),
            sig12(rec.d_js),
        )?;
    }
    Ok(())
}

/// Writes a scan result as CSV; one row of per-measure `MAX[D(t) - D(0)]`
/// per axis value.
pub fn emit_scan_csv(scan: &ScanResult, sink: &mut (impl Write + ?Sized)) -> io::Result<()> {
    write_meta(&scan.meta, "scan", sink)?;
    writeln!(sink, "value,MAX_D_T,MAX_D_HS,MAX_D_B,MAX_D_H,MAX_D_JS")?;
    for (value, stats) in &scan.rows {
        write!(sink, "{}", sig12(*value))?;
        for s in stats {
            write!(sink, ",{}", sig12(*s))?;
        }
        writeln!(sink)?;
    }
    Ok(())
}

/// Input selector for [`emit_plot`].
pub enum PlotInput<'a> {
    Series(&'a TimeSeries),
    Scan(&'a ScanResult),
}

/// Renders the input as a standalone SVG document.
pub fn emit_plot(input: PlotInput<'_>, sink: &mut (impl Write + ?Sized)) -> Result<(), EmitError> {
    let (xlabel, ylabel, curves, meta) = match input {
        PlotInput::Series(series) => {
            if series.rows.is_empty() {
                return Err(EmitError::Empty);
            }
            let curves: Vec<(String, Vec<(f64, f64)>)> = (0..5)
                .map(|k| {
                    let pts = series
                        .rows
                        .iter()
                        .map(|(t, rec)| (*t, rec.as_array()[k]))
                        .collect();
                    (DistanceRecord::LABELS[k].to_string(), pts)
                })
                .collect();
            ("t", "D(t)", curves, &series.meta)
        }
        PlotInput::Scan(scan) => {
            if scan.rows.is_empty() {
                return Err(EmitError::Empty);
            }
            let curves: Vec<(String, Vec<(f64, f64)>)> = (0..5)
                .map(|k| {
                    let pts = scan.rows.iter().map(|(v, stats)| (*v, stats[k])).collect();
                    (format!("MAX[{} - {}(0)]", DistanceRecord::LABELS[k], DistanceRecord::LABELS[k]), pts)
                })
                .collect();
            (scan.axis.key(), "MAX[D(t) - D(0)]", curves, &scan.meta)
        }
    };
    let caption: String = meta
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    let svg = render_panels(xlabel, ylabel, &curves, &caption);
    sink.write_all(svg.as_bytes())?;
    Ok(())
}

const PANEL_W: f64 = 300.0;
const PANEL_H: f64 = 210.0;
const MARGIN_L: f64 = 58.0;
const MARGIN_B: f64 = 36.0;
const MARGIN_T: f64 = 26.0;
const MARGIN_R: f64 = 12.0;
const COLORS: [&str; 5] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"];

fn render_panels(
    xlabel: &str,
    ylabel: &str,
    curves: &[(String, Vec<(f64, f64)>)],
    caption: &str,
) -> String {
    let cols = 3usize;
    let rows = curves.len().div_ceil(cols);
    let width = cols as f64 * PANEL_W;
    let height = rows as f64 * PANEL_H + 22.0;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\" font-size=\"11\">\n"
    ));
    out.push_str(&format!(
        "<rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n"
    ));
    out.push_str(&format!(
        "<text x=\"6\" y=\"{}\" font-size=\"10\" fill=\"#555\">{}</text>\n",
        height - 8.0,
        xml_escape(caption)
    ));

    for (idx, (label, points)) in curves.iter().enumerate() {
        let ox = (idx % cols) as f64 * PANEL_W;
        let oy = (idx / cols) as f64 * PANEL_H;
        render_one_panel(&mut out, ox, oy, label, points, xlabel, ylabel, COLORS[idx % 5]);
    }
    out.push_str("</svg>\n");
    out
}

#[allow(clippy::too_many_arguments)]
fn render_one_panel(
    out: &mut String,
    ox: f64,
    oy: f64,
    label: &str,
    points: &[(f64, f64)],
    xlabel: &str,
    ylabel: &str,
    color: &str,
) {
    let plot_w = PANEL_W - MARGIN_L - MARGIN_R;
    let plot_h = PANEL_H - MARGIN_T - MARGIN_B;
    let (x0, x1) = span(points.iter().map(|p| p.0));
    let (y0, y1) = span(points.iter().map(|p| p.1));

    let to_x = |v: f64| ox + MARGIN_L + (v - x0) / (x1 - x0) * plot_w;
    let to_y = |v: f64| oy + MARGIN_T + plot_h - (v - y0) / (y1 - y0) * plot_h;

    // frame
    out.push_str(&format!(
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{plot_w:.2}\" height=\"{plot_h:.2}\" \
         fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n",
        ox + MARGIN_L,
        oy + MARGIN_T
    ));
    // panel label doubles as the legend entry
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-weight=\"bold\" fill=\"{color}\">{}</text>\n",
        ox + MARGIN_L,
        oy + MARGIN_T - 8.0,
        xml_escape(label)
    ));
    // axis labels and extreme ticks
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
        ox + MARGIN_L + plot_w / 2.0,
        oy + PANEL_H - 10.0,
        xml_escape(xlabel)
    ));
    out.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" \
         transform=\"rotate(-90 {:.2} {:.2})\">{}</text>\n",
        ox + 12.0,
        oy + MARGIN_T + plot_h / 2.0,
        ox + 12.0,
        oy + MARGIN_T + plot_h / 2.0,
        xml_escape(ylabel)
    ));
    for (v, anchor, x, y) in [
        (x0, "start", ox + MARGIN_L, oy + MARGIN_T + plot_h + 12.0),
        (x1, "end", ox + MARGIN_L + plot_w, oy + MARGIN_T + plot_h + 12.0),
    ] {
        out.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{y:.2}\" text-anchor=\"{anchor}\" font-size=\"9\">{v:.4}</text>\n"
        ));
    }
    for (v, y) in [(y0, oy + MARGIN_T + plot_h), (y1, oy + MARGIN_T + 4.0)] {
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{y:.2}\" text-anchor=\"end\" font-size=\"9\">{v:.4}</text>\n",
            ox + MARGIN_L - 4.0
        ));
    }

    let coords: Vec<String> = points
        .iter()
        .map(|(x, y)| format!("{:.2},{:.2}", to_x(*x), to_y(*y)))
        .collect();
    out.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.3\" points=\"{}\"/>\n",
        coords.join(" ")
    ));
}

fn span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !(lo.is_finite() && hi.is_finite()) {
        return (0.0, 1.0);
    }
    if lo == hi {
        // flat data still needs a non-degenerate axis
        let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.1 };
        (lo - pad, hi + pad)
    } else {
        (lo, hi)
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
