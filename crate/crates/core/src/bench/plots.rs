use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use super::experiment::{Heuristic, RunReport};
use crate::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 160.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 56.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

/// Minimal self-contained SVG line chart.
#[derive(Debug, Clone, PartialEq)]
pub struct LineChart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

impl LineChart {
    pub fn to_svg(&self) -> String {
        let pts = self.series.iter().flat_map(|s| s.points.iter());
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if x0 > x1 {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        if x1 - x0 < 1e-12 {
            x1 = x0 + 1.0;
        }
        if y1 - y0 < 1e-12 {
            y1 = y0 + 1.0;
        }
        y0 = y0.min(0.0);
        let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let sx = |x: f64| MARGIN_LEFT + (x - x0) / (x1 - x0) * plot_w;
        let sy = |y: f64| MARGIN_TOP + plot_h - (y - y0) / (y1 - y0) * plot_h;

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
            MARGIN_LEFT + plot_w / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            svg,
            r#"<g class="axes" stroke="black"><line x1="{l}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{l}" y1="{t}" x2="{l}" y2="{b}"/></g>"#,
            l = MARGIN_LEFT,
            r = MARGIN_LEFT + plot_w,
            t = MARGIN_TOP,
            b = MARGIN_TOP + plot_h
        );
        for k in 0..=4 {
            let fx = x0 + (x1 - x0) * k as f64 / 4.0;
            let fy = y0 + (y1 - y0) * k as f64 / 4.0;
            let _ = writeln!(
                svg,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
                sx(fx),
                MARGIN_TOP + plot_h + 18.0,
                tick(fx)
            );
            let _ = writeln!(
                svg,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
                MARGIN_LEFT - 6.0,
                sy(fy) + 4.0,
                tick(fy)
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            MARGIN_LEFT + plot_w / 2.0,
            HEIGHT - 12.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            svg,
            r#"<text transform="translate(18 {:.1}) rotate(-90)" text-anchor="middle">{}</text>"#,
            MARGIN_TOP + plot_h / 2.0,
            escape(&self.y_label)
        );
        for (i, s) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let points: Vec<String> = s
                .points
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ = writeln!(
                svg,
                r#"<g class="series" data-name="{}" data-points="{}">"#,
                escape(&s.name),
                s.points.len()
            );
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
                points.join(" ")
            );
            for &(x, y) in &s.points {
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                    sx(x),
                    sy(y)
                );
            }
            let ly = MARGIN_TOP + 10.0 + 20.0 * i as f64;
            let lx = MARGIN_LEFT + plot_w + 14.0;
            let _ = writeln!(
                svg,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
                lx + 20.0,
                lx + 26.0,
                ly + 4.0,
                escape(&s.name)
            );
            svg.push_str("</g>\n");
        }
        svg.push_str("</svg>\n");
        svg
    }
}

fn tick(v: f64) -> String {
    if v.abs() >= 1e5 {
        format!("{v:.2e}")
    } else if (v - v.round()).abs() < 1e-9 {
        format!("{}", v.round())
    } else {
        format!("{v:.2}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// The three chart families: operations vs set size, final sum vs set size,
/// and mean distance per iteration at the largest set size.
pub fn render_plots(report: &RunReport) -> Result<Vec<(&'static str, LineChart)>> {
    if report.is_empty() {
        return Err(Error::Input("report has no rows".into()));
    }
    let mut ops: BTreeMap<Heuristic, Vec<(f64, f64)>> = BTreeMap::new();
    let mut quality: BTreeMap<Heuristic, Vec<(f64, f64)>> = BTreeMap::new();
    for s in &report.summary {
        ops.entry(s.heuristic)
            .or_default()
            .push((s.set_size as f64, s.mean_total_ops));
        quality
            .entry(s.heuristic)
            .or_default()
            .push((s.set_size as f64, s.mean_final_sum));
    }
    let to_series = |m: BTreeMap<Heuristic, Vec<(f64, f64)>>| {
        m.into_iter()
            .map(|(h, points)| Series {
                name: h.name().to_string(),
                points,
            })
            .collect()
    };

    // mean over repetitions of sum / size per iteration; finished runs hold their last value
    let largest = report.rows.iter().map(|r| r.set_size).max().unwrap_or(0);
    let mut per_run: BTreeMap<(Heuristic, usize), Vec<f64>> = BTreeMap::new();
    for r in report.rows.iter().filter(|r| r.set_size == largest) {
        per_run
            .entry((r.heuristic, r.rep))
            .or_default()
            .push(r.sum / r.set_size as f64);
    }
    let mut decrease: BTreeMap<Heuristic, Vec<Vec<f64>>> = BTreeMap::new();
    for ((h, _), sums) in per_run {
        decrease.entry(h).or_default().push(sums);
    }
    let decrease = decrease
        .into_iter()
        .map(|(h, runs)| {
            let len = runs.iter().map(Vec::len).max().unwrap_or(0);
            let points = (0..len)
                .map(|i| {
                    let mean =
                        runs.iter().map(|r| r[i.min(r.len() - 1)]).sum::<f64>() / runs.len() as f64;
                    (i as f64, mean)
                })
                .collect();
            Series {
                name: h.name().to_string(),
                points,
            }
        })
        .collect();

    Ok(vec![
        (
            "ops_vs_size.svg",
            LineChart {
                title: "Operations vs size of the set".into(),
                x_label: "set size".into(),
                y_label: "mean total operations".into(),
                series: to_series(ops),
            },
        ),
        (
            "quality_vs_size.svg",
            LineChart {
                title: "Median quality".into(),
                x_label: "set size".into(),
                y_label: "mean final sum of distances".into(),
                series: to_series(quality),
            },
        ),
        (
            "error_decrease.svg",
            LineChart {
                title: format!("Error decrease (set size {largest})"),
                x_label: "iteration".into(),
                y_label: "mean distance to the set".into(),
                series: decrease,
            },
        ),
    ])
}

/// Writes the charts of [`render_plots`] into `dir`, creating it if needed.
pub fn emit_plots(report: &RunReport, dir: impl AsRef<Path>) -> Result<()> {
    let charts = render_plots(report)?;
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    for (name, chart) in charts {
        std::fs::write(dir.join(name), chart.to_svg())?;
    }
    Ok(())
}
