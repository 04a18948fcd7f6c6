//! Standalone SVG figures: barcodes, persistence diagrams and step curves.
//! Output is byte-for-byte deterministic for a given input.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 48.0;
const LANE: f64 = 12.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// One bar; `death = None` is drawn up to the right edge with an arrow.
#[derive(Debug, Clone, PartialEq)]
pub struct Bar {
    pub dim: i32,
    pub birth: f64,
    pub death: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    /// `(x, y)` steps; `y` holds from `x` up to the next point.
    pub points: Vec<(f64, f64)>,
}

fn color(k: usize) -> &'static str {
    PALETTE[k % PALETTE.len()]
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Formats with two decimals and no negative zero.
fn n(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// Linear map from a data range onto pixels.
struct Axis {
    lo: f64,
    hi: f64,
    from: f64,
    to: f64,
}

impl Axis {
    fn new(lo: f64, hi: f64, from: f64, to: f64) -> Self {
        let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5, lo + 0.5) };
        Axis { lo, hi, from, to }
    }

    fn at(&self, x: f64) -> f64 {
        self.from + (x - self.lo) / (self.hi - self.lo) * (self.to - self.from)
    }
}

fn finite_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if lo.is_finite() {
        let pad = (hi - lo).max(1e-9) * 0.1;
        (lo, hi + pad)
    } else {
        (0.0, 1.0)
    }
}

fn open(out: &mut String, height: f64, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="11">"#,
        w = n(WIDTH),
        h = n(height)
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn x_axis(out: &mut String, axis: &Axis, y: f64) {
    let _ = writeln!(
        out,
        r##"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="#333"/>"##,
        n(axis.from),
        n(axis.to),
        y = n(y)
    );
    for k in 0..=4 {
        let v = axis.lo + (axis.hi - axis.lo) * k as f64 / 4.0;
        let x = axis.at(v);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            n(x),
            n(y + 14.0),
            n(v)
        );
    }
}

/// One lane per bar, grouped by dimension with a label per group.
pub fn barcode_svg(bars: &[Bar], title: &str) -> String {
    let mut sorted: Vec<&Bar> = bars.iter().collect();
    sorted.sort_by(|a, b| {
        a.dim
            .cmp(&b.dim)
            .then(a.birth.total_cmp(&b.birth))
            .then(a.death.unwrap_or(f64::INFINITY).total_cmp(&b.death.unwrap_or(f64::INFINITY)))
    });
    let dims: Vec<i32> = {
        let mut d: Vec<i32> = sorted.iter().map(|b| b.dim).collect();
        d.dedup();
        d
    };
    let height = 2.0 * MARGIN + LANE * (sorted.len() + 2 * dims.len()) as f64;
    let (lo, hi) = finite_range(bars.iter().flat_map(|b| [Some(b.birth), b.death]).flatten());
    let axis = Axis::new(lo, hi, MARGIN + 24.0, WIDTH - MARGIN);
    let mut out = String::new();
    open(&mut out, height, title);
    let mut y = MARGIN;
    for (k, &dim) in dims.iter().enumerate() {
        y += LANE;
        let _ = writeln!(out, r#"<text x="{}" y="{}">dim {dim}</text>"#, n(4.0), n(y));
        let _ = writeln!(out, r#"<g stroke="{}" stroke-width="4">"#, color(k));
        for b in sorted.iter().filter(|b| b.dim == dim) {
            y += LANE;
            let x2 = b.death.map_or(axis.to, |d| axis.at(d));
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}"/>"#,
                n(axis.at(b.birth)),
                n(x2),
                y = n(y)
            );
            if b.death.is_none() {
                let _ = writeln!(
                    out,
                    r#"<polygon points="{},{} {},{} {},{}" fill="{}" stroke="none"/>"#,
                    n(x2),
                    n(y - 4.0),
                    n(x2 + 6.0),
                    n(y),
                    n(x2),
                    n(y + 4.0),
                    color(k)
                );
            }
        }
        let _ = writeln!(out, "</g>");
        y += LANE;
    }
    x_axis(&mut out, &axis, height - MARGIN + LANE);
    out.push_str("</svg>\n");
    out
}

/// Scatter of `(birth, death, multiplicity)` with the diagonal. Infinite
/// deaths sit on a dashed line labelled `∞` above the finite range.
pub fn diagram_svg(points: &[(f64, Option<f64>, u64)], title: &str) -> String {
    let size = WIDTH;
    let (lo, hi) = finite_range(points.iter().flat_map(|p| [Some(p.0), p.1]).flatten());
    let h = Axis::new(lo, hi, MARGIN, size - MARGIN);
    let v = Axis::new(lo, hi, size - MARGIN, MARGIN + 24.0);
    let inf_y = MARGIN + 8.0;
    let mut out = String::new();
    open(&mut out, size, title);
    let _ = writeln!(
        out,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999"/>"##,
        n(h.at(lo)),
        n(v.at(lo)),
        n(h.at(hi)),
        n(v.at(hi))
    );
    let _ = writeln!(
        out,
        r##"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="#999" stroke-dasharray="4 3"/>"##,
        n(MARGIN),
        n(size - MARGIN),
        y = n(inf_y)
    );
    let _ = writeln!(out, r#"<text x="{}" y="{}">∞</text>"#, n(MARGIN - 16.0), n(inf_y + 4.0));
    let mut sorted: Vec<&(f64, Option<f64>, u64)> = points.iter().collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.unwrap_or(f64::INFINITY).total_cmp(&b.1.unwrap_or(f64::INFINITY))));
    for &&(b, d, m) in &sorted {
        let (x, y) = (h.at(b), d.map_or(inf_y, |d| v.at(d)));
        let r = 3.0 + (m as f64).sqrt();
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{}" fill-opacity="0.8"/>"#,
            n(x),
            n(y),
            n(r),
            color(0)
        );
        if m > 1 {
            let _ = writeln!(out, r#"<text x="{}" y="{}">{m}</text>"#, n(x + r + 2.0), n(y - r));
        }
    }
    x_axis(&mut out, &h, size - MARGIN + LANE);
    out.push_str("</svg>\n");
    out
}

/// Right-continuous step curves sharing one pair of axes.
pub fn step_curve_svg(series: &[Series], title: &str) -> String {
    let height = 400.0;
    let (xlo, xhi) = finite_range(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)));
    let (ylo, yhi) = finite_range(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)).chain([0.0]));
    let h = Axis::new(xlo, xhi, MARGIN + 24.0, WIDTH - 160.0);
    let v = Axis::new(ylo, yhi, height - MARGIN, MARGIN);
    let mut out = String::new();
    open(&mut out, height, title);
    for (k, s) in series.iter().enumerate() {
        let mut d = String::new();
        for (idx, &(x, y)) in s.points.iter().enumerate() {
            let next = s.points.get(idx + 1).map_or(h.hi, |p| p.0);
            let cmd = if idx == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{cmd}{},{} L{},{} ", n(h.at(x)), n(v.at(y)), n(h.at(next)), n(v.at(y)));
        }
        let _ = writeln!(
            out,
            r#"<path d="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
            d.trim_end(),
            color(k)
        );
        let ly = MARGIN + 16.0 * k as f64;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" fill="{}">{}</text>"#,
            n(WIDTH - 150.0),
            n(ly),
            color(k),
            escape(&s.name)
        );
    }
    x_axis(&mut out, &h, height - MARGIN + LANE);
    for k in 0..=4 {
        let y = ylo + (v.hi - ylo) * k as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
            n(MARGIN + 18.0),
            n(v.at(y) + 4.0),
            n(y)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_escaped() {
        let bars = [
            Bar { dim: 1, birth: 0.0, death: Some(1.0) },
            Bar { dim: 0, birth: 0.0, death: None },
        ];
        let a = barcode_svg(&bars, "a < b");
        assert_eq!(a, barcode_svg(&bars, "a < b"));
        assert!(a.contains("a &lt; b"));
        assert!(a.contains("dim 0") && a.contains("dim 1"));
    }

    #[test]
    fn empty_inputs_render() {
        assert!(barcode_svg(&[], "").ends_with("</svg>\n"));
        assert!(diagram_svg(&[], "").ends_with("</svg>\n"));
        assert!(step_curve_svg(&[], "").ends_with("</svg>\n"));
    }
}
