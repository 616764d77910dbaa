//! Static SVG renderings: significance profile bars, occurrence scatter, and
//! per-edge-count box plots.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{class_of, write_file, ReportBundle, SizeReport};
use crate::census::MotifSize;
use crate::error::{Error, Result};
use crate::stability::StabilityClass;
use crate::stats::box_whisker;

const HEIGHT: f64 = 420.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 30.0;
const MARGIN_T: f64 = 50.0;
const MARGIN_B: f64 = 80.0;

fn class_color(c: StabilityClass) -> &'static str {
    match c {
        StabilityClass::I => "#2b6cb0",
        StabilityClass::II => "#d69e2e",
        StabilityClass::III => "#c53030",
    }
}

struct Svg {
    width: f64,
    body: String,
}

impl Svg {
    fn new(width: f64, title: &str) -> Self {
        let mut s = Svg {
            width,
            body: String::new(),
        };
        s.text(width / 2.0, 24.0, title, "middle", 16.0, "#000");
        s
    }

    fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, dashed: bool) {
        let dash = if dashed { r#" stroke-dasharray="4 3""# } else { "" };
        let _ = writeln!(
            self.body,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{stroke}" stroke-width="1"{dash}/>"#
        );
    }

    fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str, stroke: &str) {
        let _ = writeln!(
            self.body,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="{fill}" stroke="{stroke}" stroke-width="1"/>"#
        );
    }

    fn circle(&mut self, cx: f64, cy: f64, r: f64, fill: &str) {
        let _ = writeln!(self.body, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r:.2}" fill="{fill}"/>"#);
    }

    fn text(&mut self, x: f64, y: f64, s: &str, anchor: &str, size: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{x:.2}" y="{y:.2}" text-anchor="{anchor}" font-family="sans-serif" font-size="{size}" fill="{fill}">{}</text>"#,
            escape(s)
        );
    }

    fn rotated_text(&mut self, x: f64, y: f64, s: &str, size: f64) {
        let _ = writeln!(
            self.body,
            r#"<text x="{x:.2}" y="{y:.2}" text-anchor="end" font-family="sans-serif" font-size="{size}" transform="rotate(-90 {x:.2} {y:.2})">{}</text>"#,
            escape(s)
        );
    }

    fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body,
            w = self.width,
            h = HEIGHT
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct YAxis {
    lo: f64,
    hi: f64,
}

impl YAxis {
    fn new(lo: f64, hi: f64) -> Self {
        if hi - lo < 1e-12 {
            YAxis { lo: lo - 1.0, hi: hi + 1.0 }
        } else {
            let pad = 0.05 * (hi - lo);
            YAxis { lo: lo - pad, hi: hi + pad }
        }
    }

    fn y(&self, v: f64) -> f64 {
        let plot = HEIGHT - MARGIN_T - MARGIN_B;
        MARGIN_T + plot * (self.hi - v) / (self.hi - self.lo)
    }

    fn draw(&self, svg: &mut Svg, label: &str) {
        let x = MARGIN_L;
        svg.line(x, self.y(self.hi), x, self.y(self.lo), "#000", false);
        for i in 0..=4 {
            let v = self.lo + (self.hi - self.lo) * i as f64 / 4.0;
            let y = self.y(v);
            svg.line(x - 4.0, y, x, y, "#000", false);
            svg.text(x - 6.0, y + 4.0, &format!("{v:.2}"), "end", 10.0, "#000");
        }
        svg.rotated_text(16.0, MARGIN_T, label, 12.0);
    }
}

fn slot_width(size: MotifSize) -> f64 {
    match size {
        MotifSize::Three => 40.0,
        MotifSize::Four => 6.0,
    }
}

fn x_positions(report: &SizeReport) -> (f64, Vec<f64>) {
    let w = slot_width(report.size);
    let xs = (0..report.records.len())
        .map(|i| MARGIN_L + w * (i as f64 + 0.5))
        .collect();
    (w, xs)
}

fn edge_separators(svg: &mut Svg, report: &SizeReport, w: f64, axis: &YAxis) {
    for i in 1..report.records.len() {
        if report.records[i].edge_count != report.records[i - 1].edge_count {
            let x = MARGIN_L + w * i as f64;
            svg.line(x, axis.y(axis.hi), x, axis.y(axis.lo), "#000", true);
        }
    }
}

fn motif_labels(svg: &mut Svg, report: &SizeReport, xs: &[f64], axis: &YAxis) {
    let base = axis.y(axis.lo);
    for (r, &x) in report.records.iter().zip(xs) {
        let class = class_of(report, r.motif);
        match report.size {
            MotifSize::Three => {
                svg.text(x, base + 16.0, &r.motif.id.to_string(), "middle", 10.0, "#000");
                svg.text(x, base + 30.0, &class.to_string(), "middle", 10.0, class_color(class));
            }
            MotifSize::Four => {
                svg.rect(x - 2.0, base + 4.0, 4.0, 8.0, class_color(class), "none");
            }
        }
    }
}

fn legend(svg: &mut Svg, y: f64) {
    let mut x = MARGIN_L;
    for class in StabilityClass::ALL {
        svg.rect(x, y - 9.0, 10.0, 10.0, class_color(class), "none");
        svg.text(x + 14.0, y, &format!("class {class}"), "start", 11.0, "#000");
        x += 80.0;
    }
}

/// Bar chart of normalized Z scores, sorted by edge count then ID.
pub fn profile_chart(report: &SizeReport) -> String {
    let (w, xs) = x_positions(report);
    let width = MARGIN_L + w * xs.len() as f64 + MARGIN_R;
    let mut svg = Svg::new(
        width.max(360.0),
        &format!("Normalized Z scores of {}-node motifs", report.size),
    );
    let values: Vec<f64> = report.records.iter().map(|r| report.profile.get(r.motif)).collect();
    let lo = values.iter().copied().fold(0.0f64, f64::min);
    let hi = values.iter().copied().fold(0.0f64, f64::max);
    let axis = YAxis::new(lo, hi);
    axis.draw(&mut svg, "normalized Z score");
    let zero = axis.y(0.0);
    svg.line(MARGIN_L, zero, MARGIN_L + w * xs.len() as f64, zero, "#000", false);
    for ((r, &x), &v) in report.records.iter().zip(&xs).zip(&values) {
        let class = class_of(report, r.motif);
        let (top, h) = if v >= 0.0 { (axis.y(v), zero - axis.y(v)) } else { (zero, axis.y(v) - zero) };
        svg.rect(x - 0.35 * w, top, 0.7 * w, h, "#3182ce", class_color(class));
    }
    edge_separators(&mut svg, report, w, &axis);
    motif_labels(&mut svg, report, &xs, &axis);
    legend(&mut svg, HEIGHT - 12.0);
    svg.finish()
}

/// Scatter of `log10(N_real + 1)` per motif.
pub fn occurrence_chart(report: &SizeReport) -> String {
    let (w, xs) = x_positions(report);
    let width = MARGIN_L + w * xs.len() as f64 + MARGIN_R;
    let mut svg = Svg::new(
        width.max(360.0),
        &format!("Occurrence of {}-node motifs", report.size),
    );
    let values: Vec<f64> = report
        .records
        .iter()
        .map(|r| (r.n_real as f64 + 1.0).log10())
        .collect();
    let hi = values.iter().copied().fold(0.0f64, f64::max);
    let axis = YAxis::new(0.0, hi);
    axis.draw(&mut svg, "log10(N_real + 1)");
    for ((r, &x), &v) in report.records.iter().zip(&xs).zip(&values) {
        svg.circle(x, axis.y(v), 3.0, class_color(class_of(report, r.motif)));
    }
    edge_separators(&mut svg, report, w, &axis);
    motif_labels(&mut svg, report, &xs, &axis);
    legend(&mut svg, HEIGHT - 12.0);
    svg.finish()
}

/// Box plots of Z score by stability class within each edge-count group.
pub fn boxes_chart(report: &SizeReport) -> String {
    const BOX_W: f64 = 26.0;
    const GAP: f64 = 30.0;
    let groups: Vec<_> = report
        .grouped
        .iter()
        .filter(|(_, classes)| classes.values().any(|v| !v.is_empty()))
        .collect();
    let group_width = 3.0 * (BOX_W + 8.0) + GAP;
    let width = (MARGIN_L + group_width * groups.len() as f64 + MARGIN_R).max(360.0);
    let mut svg = Svg::new(
        width,
        &format!("Z scores of {}-node motifs by stability class and edge count", report.size),
    );
    let all: Vec<f64> = groups
        .iter()
        .flat_map(|(_, c)| c.values().flatten().copied())
        .collect();
    let lo = all.iter().copied().fold(0.0f64, f64::min);
    let hi = all.iter().copied().fold(0.0f64, f64::max);
    let axis = YAxis::new(lo, hi);
    axis.draw(&mut svg, "Z score");
    let base = axis.y(axis.lo);

    for (g, (&(_, edges), classes)) in groups.iter().enumerate() {
        let x0 = MARGIN_L + GAP / 2.0 + g as f64 * group_width;
        for (c, class) in StabilityClass::ALL.iter().enumerate() {
            let cx = x0 + c as f64 * (BOX_W + 8.0) + BOX_W / 2.0;
            svg.text(cx, base + 14.0, &class.to_string(), "middle", 10.0, class_color(*class));
            let Some(scores) = classes.get(class).filter(|v| !v.is_empty()) else {
                continue;
            };
            let Ok(b) = box_whisker(scores) else { continue };
            let color = class_color(*class);
            svg.line(cx, axis.y(b.whisker_high), cx, axis.y(b.q3), "#000", false);
            svg.line(cx, axis.y(b.q1), cx, axis.y(b.whisker_low), "#000", false);
            svg.line(cx - 6.0, axis.y(b.whisker_high), cx + 6.0, axis.y(b.whisker_high), "#000", false);
            svg.line(cx - 6.0, axis.y(b.whisker_low), cx + 6.0, axis.y(b.whisker_low), "#000", false);
            let top = axis.y(b.q3);
            svg.rect(cx - BOX_W / 2.0, top, BOX_W, (axis.y(b.q1) - top).max(1.0), "none", color);
            svg.line(cx - BOX_W / 2.0, axis.y(b.mean), cx + BOX_W / 2.0, axis.y(b.mean), "#e53e3e", false);
            for &o in &b.outliers {
                svg.circle(cx, axis.y(o), 2.5, "#e53e3e");
            }
        }
        let mid = x0 + 1.5 * (BOX_W + 8.0) - 4.0;
        svg.text(mid, base + 30.0, &format!("{edges} edges"), "middle", 11.0, "#000");
        let p = match report.kruskal.get(&edges).copied().flatten() {
            Some(kw) => format!("p = {:.3e}", kw.p),
            None => "p = n/a".to_string(),
        };
        svg.text(mid, MARGIN_T - 6.0, &p, "middle", 10.0, "#000");
        if g > 0 {
            let x = x0 - GAP / 2.0;
            svg.line(x, axis.y(axis.hi), x, base, "#000", true);
        }
    }
    svg.finish()
}

/// Writes `profile_<k>.svg`, `occurrence_<k>.svg` and `boxes_<k>.svg`.
pub fn emit_profile_chart(bundle: &ReportBundle, size: MotifSize, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let report = bundle
        .size(size)
        .ok_or_else(|| Error::InvalidArgument(format!("bundle has no results for size {size}")))?;
    std::fs::create_dir_all(out_dir)?;
    let k = size.nodes();
    Ok(vec![
        write_file(out_dir, &format!("profile_{k}.svg"), &profile_chart(report))?,
        write_file(out_dir, &format!("occurrence_{k}.svg"), &occurrence_chart(report))?,
        write_file(out_dir, &format!("boxes_{k}.svg"), &boxes_chart(report))?,
    ])
}
