//! Minimal static line charts: 800×600, one polyline per method, legend,
//! linear or log10 x axis. No scripts, no external assets.

use std::fmt::Write;

use nlkg_core::analysis::SweepTable;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// Which per-method column a panel plots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PanelKind {
    Ratio,
    Delta,
}

impl PanelKind {
    fn y_label(self) -> &'static str {
        match self {
            PanelKind::Ratio => "Omega / Omega_exact",
            PanelKind::Delta => "log10 |relative error|",
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn tick(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-2 || v.abs() >= 1e4) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

pub fn render(table: &SweepTable, kind: PanelKind, title: &str, description: &str) -> String {
    let xmap = |x: f64| if table.log_x { x.log10() } else { x };

    // series of (x, y) per method; None breaks the line
    let series: Vec<Vec<Option<(f64, f64)>>> = (0..table.methods.len())
        .map(|i| {
            table
                .rows
                .iter()
                .map(|row| {
                    let cell = &row.cells[i];
                    let y = match kind {
                        PanelKind::Ratio => cell.ratio.as_ref().ok(),
                        PanelKind::Delta => cell.delta.as_ref().ok(),
                    };
                    y.copied()
                        .filter(|y| y.is_finite())
                        .map(|y| (xmap(row.x), y))
                })
                .collect()
        })
        .collect();

    let points = || series.iter().flatten().flatten();
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points() {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 - x0 <= 0.0 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if y1 - y0 <= 1e-12 * y0.abs().max(1.0) {
        let pad = 0.05 * y0.abs().max(1e-3);
        y0 -= pad;
        y1 += pad;
    }
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, "<desc>{}</desc>", escape(description));
    let _ = writeln!(out, r#"<rect width="800" height="600" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="400" y="30" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        escape(title)
    );

    let x_name = if table.log_x {
        format!("log10 {}", table.abscissa)
    } else {
        table.abscissa.to_string()
    };
    let base = HEIGHT - BOTTOM;
    for (x, anchor) in [(x0, "start"), (x1, "end")] {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="{anchor}" font-family="sans-serif" font-size="12">{}</text>"#,
            sx(x),
            base + 18.0,
            tick(x)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="400" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
        base + 40.0,
        escape(&x_name)
    );
    for y in [y0, y1] {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="12">{}</text>"#,
            LEFT - 6.0,
            sy(y) + 4.0,
            tick(y)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="20" y="300" transform="rotate(-90 20 300)" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
        kind.y_label()
    );

    for (i, (method, pts)) in table.methods.iter().zip(&series).enumerate() {
        let color = COLORS[i % COLORS.len()];
        for segment in pts.split(|p| p.is_none()) {
            if segment.is_empty() {
                continue;
            }
            let coords: Vec<String> = segment
                .iter()
                .flatten()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                coords.join(" ")
            );
        }
        let ly = TOP + 20.0 + 18.0 * i as f64;
        let lx = WIDTH - RIGHT - 120.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            lx + 24.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">{method}</text>"#,
            lx + 30.0,
            ly + 4.0
        );
    }
    out.push_str("</svg>\n");
    out
}
