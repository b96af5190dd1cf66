//! Minimal self-contained SVG plots of delta histograms: bars or a line,
//! axes with ticks, and optional vertical annotation lines at reference
//! ordinates (to visualize deficits sitting on known zeros).

use anyhow::{bail, Result};
use std::fmt::Write;
use zerostats::DeltaHistogram;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 20.0;
const MARGIN_B: f64 = 45.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotStyle {
    Bars,
    Line,
}

#[derive(Debug, Clone)]
pub struct PlotSpec {
    /// Delta range to display.
    pub from: f64,
    pub to: f64,
    pub style: PlotStyle,
    /// Reference ordinates to mark with vertical lines.
    pub annotations: Vec<f64>,
}

pub fn render(hist: &DeltaHistogram, spec: &PlotSpec) -> Result<String> {
    if !(spec.from < spec.to) {
        bail!("empty plot range [{}, {}]", spec.from, spec.to);
    }
    if !hist.is_empty() && (spec.from >= hist.t_max() || spec.to <= 0.0) {
        bail!(
            "range [{}, {}] lies outside the histogram domain [0, {}]",
            spec.from,
            spec.to,
            hist.t_max()
        );
    }

    let eps = hist.bin_width();
    let k_lo = ((spec.from / eps).floor().max(0.0)) as usize;
    let k_hi = (((spec.to / eps).ceil()) as usize).min(hist.len());
    let slice: Vec<(f64, f64)> = (k_lo..k_hi)
        .map(|k| (hist.bin_start(k), hist.value(k)))
        .collect();

    let (mut y_min, mut y_max) = slice
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, v)| {
            (lo.min(v), hi.max(v))
        });
    if slice.is_empty() {
        y_min = 0.0;
        y_max = 1.0;
    }
    if y_min > 0.0 {
        y_min = 0.0;
    }
    if (y_max - y_min).abs() < 1e-12 {
        y_max = y_min + 1.0;
    }
    let pad = 0.04 * (y_max - y_min);
    let (y_min, y_max) = (y_min - if y_min < 0.0 { pad } else { 0.0 }, y_max + pad);

    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let x_of = |t: f64| MARGIN_L + (t - spec.from) / (spec.to - spec.from) * plot_w;
    let y_of = |v: f64| MARGIN_T + (y_max - v) / (y_max - y_min) * plot_h;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )?;
    writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    )?;

    // frame
    writeln!(
        s,
        r##"<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#333" stroke-width="1"/>"##
    )?;

    // x ticks
    for i in 0..=8 {
        let t = spec.from + (spec.to - spec.from) * i as f64 / 8.0;
        let x = x_of(t);
        writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#333"/>"##,
            MARGIN_T + plot_h,
            MARGIN_T + plot_h + 5.0
        )?;
        writeln!(
            s,
            r##"<text x="{x:.2}" y="{:.2}" font-size="12" text-anchor="middle" font-family="sans-serif">{t:.2}</text>"##,
            MARGIN_T + plot_h + 20.0
        )?;
    }
    // y ticks
    for i in 0..=5 {
        let v = y_min + (y_max - y_min) * i as f64 / 5.0;
        let y = y_of(v);
        writeln!(
            s,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{MARGIN_L}" y2="{y:.2}" stroke="#333"/>"##,
            MARGIN_L - 5.0
        )?;
        writeln!(
            s,
            r##"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="end" font-family="sans-serif">{v:.0}</text>"##,
            MARGIN_L - 8.0,
            y + 4.0
        )?;
    }

    // zero line for real-valued histograms dipping below 0
    if y_min < 0.0 {
        let y0 = y_of(0.0);
        writeln!(
            s,
            r##"<line x1="{MARGIN_L}" y1="{y0:.2}" x2="{:.2}" y2="{y0:.2}" stroke="#999" stroke-dasharray="3,3"/>"##,
            MARGIN_L + plot_w
        )?;
    }

    match spec.style {
        PlotStyle::Bars => {
            let bar_w = (plot_w / slice.len().max(1) as f64).max(0.5);
            for &(t, v) in &slice {
                let x = x_of(t);
                let (y0, y1) = if v >= 0.0 {
                    (y_of(v), y_of(0.0f64.max(y_min)))
                } else {
                    (y_of(0.0), y_of(v))
                };
                writeln!(
                    s,
                    r##"<rect x="{x:.2}" y="{y0:.2}" width="{bar_w:.2}" height="{:.2}" fill="#4878a8"/>"##,
                    (y1 - y0).abs()
                )?;
            }
        }
        PlotStyle::Line => {
            let mut d = String::new();
            for (i, &(t, v)) in slice.iter().enumerate() {
                let cmd = if i == 0 { 'M' } else { 'L' };
                write!(d, "{cmd}{:.2},{:.2} ", x_of(t), y_of(v))?;
            }
            writeln!(
                s,
                r##"<path d="{d}" fill="none" stroke="#4878a8" stroke-width="1.2"/>"##
            )?;
        }
    }

    for &a in &spec.annotations {
        if a < spec.from || a > spec.to {
            continue;
        }
        let x = x_of(a);
        writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{MARGIN_T}" x2="{x:.2}" y2="{:.2}" stroke="#c03030" stroke-width="1" stroke-dasharray="5,3"/>"##,
            MARGIN_T + plot_h
        )?;
    }

    writeln!(s, "</svg>")?;
    Ok(s)
}
