//! Self-contained SVG renderings of `fig2.csv` and `fig3.csv`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{io_err, Fig2Row, HarnessError};
use crate::coloring::SolverTag;
use crate::evaluation::SolverStats;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

fn color(solver: SolverTag) -> &'static str {
    match solver {
        SolverTag::Greedy => "#d62728",
        SolverTag::Heat => "#1f77b4",
        SolverTag::Tabucol => "#2ca02c",
        SolverTag::Oracle => "#7f7f7f",
    }
}

/// Linear map from data range onto pixels.
struct Axis {
    lo: f64,
    hi: f64,
    px_lo: f64,
    px_hi: f64,
}

impl Axis {
    fn new(lo: f64, hi: f64, px_lo: f64, px_hi: f64) -> Self {
        let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5, lo + 0.5) };
        Self { lo, hi, px_lo, px_hi }
    }

    fn map(&self, v: f64) -> f64 {
        self.px_lo + (v - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo)
    }

    /// Roughly five ticks on 1-2-5 steps.
    fn ticks(&self) -> Vec<f64> {
        let raw = (self.hi - self.lo) / 5.0;
        let mag = 10f64.powf(raw.log10().floor());
        let step = [1.0, 2.0, 5.0, 10.0]
            .into_iter()
            .map(|m| m * mag)
            .find(|s| *s >= raw)
            .unwrap_or(10.0 * mag);
        let mut t = (self.lo / step).ceil() * step;
        let mut out = Vec::new();
        while t <= self.hi + step * 1e-9 {
            out.push(t);
            t += step;
        }
        out
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        escape(title)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn y_axis(out: &mut String, y: &Axis, label: &str) {
    let _ = writeln!(
        out,
        r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{}" stroke="black"/>"#,
        HEIGHT - BOTTOM
    );
    for t in y.ticks() {
        let py = y.map(t);
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{py:.2}" x2="{}" y2="{py:.2}" stroke="#ddd"/><text x="{}" y="{:.2}" text-anchor="end">{}</text>"##,
            LEFT,
            WIDTH - RIGHT,
            LEFT - 6.0,
            py + 4.0,
            fmt_tick(t)
        );
    }
    let cy = (TOP + HEIGHT - BOTTOM) / 2.0;
    let _ = writeln!(
        out,
        r#"<text x="18" y="{cy}" text-anchor="middle" transform="rotate(-90 18 {cy})">{}</text>"#,
        escape(label)
    );
}

fn fmt_tick(t: f64) -> String {
    if (t - t.round()).abs() < 1e-9 {
        format!("{}", t.round() as i64)
    } else {
        format!("{t:.2}")
    }
}

fn legend(out: &mut String, solvers: &[SolverTag]) {
    for (i, s) in solvers.iter().enumerate() {
        let y = TOP + 10.0 + 20.0 * i as f64;
        let x = WIDTH - RIGHT + 20.0;
        let _ = writeln!(
            out,
            r#"<rect x="{x}" y="{}" width="12" height="12" fill="{}"/><text x="{}" y="{}">{}</text>"#,
            y - 10.0,
            color(*s),
            x + 18.0,
            y,
            s
        );
    }
}

fn distinct_solvers(tags: impl Iterator<Item = SolverTag>) -> Vec<SolverTag> {
    let mut v: Vec<SolverTag> = tags.collect();
    v.sort();
    v.dedup();
    v
}

/// Scatter of clash percentage against edge count, one series per solver.
pub fn render_scatter(rows: &[Fig2Row]) -> Result<String, HarnessError> {
    if rows.is_empty() {
        return Err(HarnessError::EmptyPlotData("fig2 has no rows"));
    }
    let max_edges = rows.iter().map(|r| r.edges).max().unwrap_or(1) as f64;
    let min_edges = rows.iter().map(|r| r.edges).min().unwrap_or(0) as f64;
    let max_pct = rows.iter().map(|r| r.clash_percent).fold(0.0, f64::max);
    let pad = ((max_edges - min_edges) * 0.05).max(1.0);
    let x = Axis::new((min_edges - pad).max(0.0), max_edges + pad, LEFT, WIDTH - RIGHT);
    let y = Axis::new(0.0, (max_pct * 1.1).max(1.0), HEIGHT - BOTTOM, TOP);

    let mut out = String::new();
    header(&mut out, "Clashing edges versus graph size");
    y_axis(&mut out, &y, "clashing edges (%)");
    let _ = writeln!(
        out,
        r#"<line x1="{LEFT}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/>"#,
        HEIGHT - BOTTOM,
        WIDTH - RIGHT
    );
    for t in x.ticks() {
        let px = x.map(t);
        let _ = writeln!(
            out,
            r#"<text x="{px:.2}" y="{}" text-anchor="middle">{}</text>"#,
            HEIGHT - BOTTOM + 18.0,
            fmt_tick(t)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">number of edges</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        HEIGHT - 15.0
    );
    for r in rows {
        let _ = writeln!(
            out,
            r#"<circle class="point" data-solver="{}" cx="{:.2}" cy="{:.2}" r="3.5" fill="{}" fill-opacity="0.7"/>"#,
            r.solver,
            x.map(r.edges as f64),
            y.map(r.clash_percent),
            color(r.solver)
        );
    }
    legend(&mut out, &distinct_solvers(rows.iter().map(|r| r.solver)));
    out.push_str("</svg>\n");
    Ok(out)
}

/// One box per solver: whiskers at min and max, box from q1 to q3, a line
/// at the median and a diamond at the mean.
pub fn render_boxplot(stats: &[SolverStats]) -> Result<String, HarnessError> {
    if stats.is_empty() {
        return Err(HarnessError::EmptyPlotData("fig3 has no rows"));
    }
    let max_pct = stats.iter().map(|s| s.max).fold(0.0, f64::max);
    let y = Axis::new(0.0, (max_pct * 1.1).max(1.0), HEIGHT - BOTTOM, TOP);
    let slot = (WIDTH - RIGHT - LEFT) / stats.len() as f64;
    let half = (slot * 0.25).min(40.0);

    let mut out = String::new();
    header(&mut out, "Clashing edges per solver");
    y_axis(&mut out, &y, "clashing edges (%)");
    for (i, s) in stats.iter().enumerate() {
        let cx = LEFT + slot * (i as f64 + 0.5);
        let c = color(s.solver);
        let (ymin, yq1, ymed, yq3, ymax, ymean) =
            (y.map(s.min), y.map(s.q1), y.map(s.median), y.map(s.q3), y.map(s.max), y.map(s.mean));
        let _ = writeln!(out, r#"<g class="box" data-solver="{}">"#, s.solver);
        let _ = writeln!(
            out,
            r#"<line x1="{cx:.2}" y1="{ymax:.2}" x2="{cx:.2}" y2="{yq3:.2}" stroke="black"/><line x1="{cx:.2}" y1="{yq1:.2}" x2="{cx:.2}" y2="{ymin:.2}" stroke="black"/>"#
        );
        for yw in [ymin, ymax] {
            let _ = writeln!(
                out,
                r#"<line x1="{:.2}" y1="{yw:.2}" x2="{:.2}" y2="{yw:.2}" stroke="black"/>"#,
                cx - half / 2.0,
                cx + half / 2.0
            );
        }
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{yq3:.2}" width="{:.2}" height="{:.2}" fill="{c}" fill-opacity="0.5" stroke="black"/>"#,
            cx - half,
            2.0 * half,
            (yq1 - yq3).max(0.5)
        );
        let _ = writeln!(
            out,
            r#"<line class="median" x1="{:.2}" y1="{ymed:.2}" x2="{:.2}" y2="{ymed:.2}" stroke="black" stroke-width="2"/>"#,
            cx - half,
            cx + half
        );
        let _ = writeln!(
            out,
            r#"<path class="mean" d="M {cx:.2} {:.2} L {:.2} {ymean:.2} L {cx:.2} {:.2} L {:.2} {ymean:.2} Z" fill="white" stroke="black"/>"#,
            ymean - 5.0,
            cx + 5.0,
            ymean + 5.0,
            cx - 5.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{cx:.2}" y="{:.2}" text-anchor="middle">{} (mean {:.2})</text>"#,
            HEIGHT - BOTTOM + 18.0,
            s.solver,
            s.mean
        );
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Writes `fig2.svg` and `fig3.svg`. Nothing is written unless both render.
pub fn emit_plots(fig2: &[Fig2Row], fig3: &[SolverStats], out_dir: &Path) -> Result<(PathBuf, PathBuf), HarnessError> {
    let scatter = render_scatter(fig2)?;
    let boxes = render_boxplot(fig3)?;
    std::fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let p2 = out_dir.join("fig2.svg");
    let p3 = out_dir.join("fig3.svg");
    std::fs::write(&p2, scatter).map_err(io_err(&p2))?;
    std::fs::write(&p3, boxes).map_err(io_err(&p3))?;
    Ok((p2, p3))
}
