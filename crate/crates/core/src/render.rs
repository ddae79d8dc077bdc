//! SVG drawings of O-blade fillings and their metric honeycombs.

use std::fmt::Write;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::oblade::{honeycomb_dual, BranchingTriple, ObladeFilling, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RenderKind {
    Oblade,
    Honeycomb,
}

impl std::str::FromStr for RenderKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oblade" => Ok(RenderKind::Oblade),
            "honeycomb" => Ok(RenderKind::Honeycomb),
            _ => Err(crate::Error::Parse(format!("unknown drawing kind '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderSpec {
    pub kind: RenderKind,
    /// Pixels per unit of edge length.
    scale: Rational64,
    pub show_labels: bool,
    pub highlight_zero_edges: bool,
}

impl RenderSpec {
    pub fn new(kind: RenderKind, scale: Rational64) -> Result<Self> {
        if scale <= Rational64::zero() {
            return Err(domain(format!("scale must be positive, got {scale}")));
        }
        Ok(RenderSpec { kind, scale, show_labels: true, highlight_zero_edges: false })
    }

    pub fn scale(&self) -> Rational64 {
        self.scale
    }

    fn px(&self) -> f64 {
        self.scale.to_f64().expect("finite scale")
    }
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { kind: RenderKind::Oblade, scale: Rational64::from_integer(40), show_labels: true, highlight_zero_edges: false }
    }
}

/// Draw `f` as selected by `spec.kind`.
pub fn render(f: &ObladeFilling, spec: &RenderSpec) -> Result<String> {
    match spec.kind {
        RenderKind::Oblade => render_oblade(f, spec),
        RenderKind::Honeycomb => render_honeycomb(f, spec),
    }
}

/// `oblade-n5-3.4.3.5-4.3.5.4-2.2.4.2-0007.svg`
pub fn svg_filename(kind: RenderKind, triple: &BranchingTriple, index: usize) -> String {
    let join = |w: &crate::Weight| w.0.iter().map(i64::to_string).collect::<Vec<_>>().join(".");
    let kind = match kind {
        RenderKind::Oblade => "oblade",
        RenderKind::Honeycomb => "honeycomb",
    };
    format!("{kind}-n{}-{}-{}-{}-{index:04}.svg", triple.n, join(&triple.lambda), join(&triple.mu), join(&triple.nu))
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Accumulates SVG elements and their bounding box.
struct Canvas {
    body: String,
    min: (f64, f64),
    max: (f64, f64),
}

impl Canvas {
    fn new() -> Self {
        Canvas { body: String::new(), min: (f64::INFINITY, f64::INFINITY), max: (f64::NEG_INFINITY, f64::NEG_INFINITY) }
    }

    fn include(&mut self, (x, y): (f64, f64)) {
        self.min = (self.min.0.min(x), self.min.1.min(y));
        self.max = (self.max.0.max(x), self.max.1.max(y));
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), class: &str) {
        self.include(a);
        self.include(b);
        let _ = writeln!(
            self.body,
            r#"  <line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1)
        );
    }

    fn dot(&mut self, c: (f64, f64), r: f64, class: &str) {
        self.include((c.0 - r, c.1 - r));
        self.include((c.0 + r, c.1 + r));
        let _ = writeln!(self.body, r#"  <circle class="{class}" cx="{}" cy="{}" r="{}"/>"#, num(c.0), num(c.1), num(r));
    }

    fn text(&mut self, at: (f64, f64), class: &str, content: &str) {
        self.include(at);
        let _ = writeln!(self.body, r#"  <text class="{class}" x="{}" y="{}">{content}</text>"#, num(at.0), num(at.1));
    }

    fn finish(self, title: &str, warning: Option<&str>, font: f64) -> String {
        let margin = 2.0 * font;
        let (x0, mut y0) = (self.min.0 - margin, self.min.1 - margin);
        let (x1, y1) = (self.max.0 + margin, self.max.1 + margin);
        let width = (x1 - x0).max(1.0);
        let mut height = (y1 - y0).max(1.0);
        let mut head = String::new();
        if let Some(w) = warning {
            y0 -= 1.5 * font;
            height += 1.5 * font;
            let _ = writeln!(head, r#"  <text class="warning" x="{}" y="{}">{w}</text>"#, num(x0 + font * 0.5), num(y0 + font * 1.2));
        }
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
            num(width),
            num(height),
            num(x0),
            num(y0),
            num(width),
            num(height)
        );
        let _ = writeln!(out, "  <title>{title}</title>");
        let _ = writeln!(
            out,
            "  <style>line {{ stroke: #222; stroke-width: 1.5; }} line.outline {{ stroke-width: 2.5; }} \
             line.zero {{ stroke: #d33; stroke-dasharray: 4 3; }} line.ray {{ stroke: #888; stroke-dasharray: 6 4; }} \
             circle.vertex {{ fill: #222; }} circle.zero {{ fill: none; stroke: #d33; stroke-width: 1.5; }} \
             text {{ font-family: sans-serif; font-size: {}px; text-anchor: middle; dominant-baseline: central; }} \
             text.boundary {{ font-weight: bold; }} text.warning {{ fill: #d33; text-anchor: start; }}</style>",
            num(font)
        );
        out.push_str(&head);
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn title(f: &ObladeFilling) -> String {
    let t = &f.triple;
    format!("SU({}) λ={} μ={} ν={}", t.n, t.lambda, t.mu, t.nu)
}

/// Labeled triangular graph with `λ` on the left side, `μ` on the right and
/// `ν` along the bottom.
pub fn render_oblade(f: &ObladeFilling, spec: &RenderSpec) -> Result<String> {
    f.validate()?;
    let shape = f.shape();
    let n = shape.n();
    let px = spec.px();
    let h = 3f64.sqrt() / 2.0;
    let pos = |(r, c): (usize, usize)| -> (f64, f64) { ((c as f64 + r as f64 / 2.0) * px, -(r as f64 * h) * px) };
    let centroid = pos((0, 0));
    let centroid = (centroid.0 + n as f64 * px / 2.0, centroid.1 - n as f64 * h * px / 3.0);
    let font = (px * 0.35).clamp(8.0, 24.0);

    let mut canvas = Canvas::new();
    let corners = [(0, 0), (0, n), (n, 0)];
    for k in 0..3 {
        canvas.line(pos(corners[k]), pos(corners[(k + 1) % 3]), "outline");
    }
    for (ei, e) in shape.edges().iter().enumerate() {
        let zero = f.labels[ei] == 0;
        let class = if zero && spec.highlight_zero_edges { "zero" } else { "edge" };
        let (a, b) = (pos(e.ends[0]), pos(e.ends[1]));
        canvas.line(a, b, class);
        if spec.show_labels {
            let mid = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
            // nudge the label off the segment, perpendicular to it
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let len = (dx * dx + dy * dy).sqrt().max(1e-9);
            let off = font * 0.6;
            canvas.text((mid.0 - dy / len * off, mid.1 + dx / len * off), "label", &f.labels[ei].to_string());
        }
    }
    for row in 0..=n {
        for col in 0..=n - row {
            canvas.dot(pos((row, col)), 2.0, "vertex");
        }
    }
    for b in shape.boundary() {
        let p = pos(b.vertex);
        let (dx, dy) = (p.0 - centroid.0, p.1 - centroid.1);
        let len = (dx * dx + dy * dy).sqrt().max(1e-9);
        let at = (p.0 + dx / len * font * 1.3, p.1 + dy / len * font * 1.3);
        let w = match b.side {
            Side::Lambda => &f.triple.lambda,
            Side::Mu => &f.triple.mu,
            Side::Nu => &f.triple.nu,
        };
        canvas.text(at, "boundary", &w.0[b.component].to_string());
    }
    let warning = f.labels.iter().all(|&x| x == 0).then_some("degenerate filling: every inner label is 0");
    Ok(canvas.finish(&title(f), warning, font))
}

/// Metric honeycomb: each segment has length `scale × label`.
pub fn render_honeycomb(f: &ObladeFilling, spec: &RenderSpec) -> Result<String> {
    let hc = honeycomb_dual(f)?;
    let px = spec.px();
    let pos = |g: crate::oblade::GridPoint| -> (f64, f64) {
        let (x, y) = g.to_cartesian();
        (x * px, -y * px)
    };
    let font = (px * 0.35).clamp(8.0, 24.0);
    let mut canvas = Canvas::new();

    let longest = hc.edges.iter().map(|e| e.length).max().unwrap_or(0).max(1);
    let ray_len = (longest as f64 / 2.0).max(1.0);
    for r in &hc.rays {
        let a = pos(hc.vertices[r.origin]);
        let (dx, dy) = r.direction.to_cartesian();
        canvas.line(a, (a.0 + dx * ray_len * px, a.1 - dy * ray_len * px), "ray");
    }
    for e in &hc.edges {
        let (a, b) = (pos(hc.vertices[e.from]), pos(hc.vertices[e.to]));
        if e.length == 0 {
            if spec.highlight_zero_edges {
                canvas.dot(a, font * 0.3, "zero");
            }
            continue;
        }
        canvas.line(a, b, "edge");
        if spec.show_labels {
            let mid = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let len = (dx * dx + dy * dy).sqrt().max(1e-9);
            let off = font * 0.6;
            canvas.text((mid.0 - dy / len * off, mid.1 + dx / len * off), "label", &e.length.to_string());
        }
    }
    let mut seen: Vec<crate::oblade::GridPoint> = hc.vertices.clone();
    seen.sort();
    seen.dedup();
    for v in seen {
        canvas.dot(pos(v), 2.0, "vertex");
    }
    let warning = f
        .labels
        .iter()
        .all(|&x| x == 0)
        .then_some("degenerate filling: all honeycomb vertices coincide");
    Ok(canvas.finish(&title(f), warning, font))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oblade::{enumerate_fillings, is_degenerate};
    use crate::Weight;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    fn sample() -> Vec<ObladeFilling> {
        let t = BranchingTriple::new(5, w(&[3, 4, 3, 5]), w(&[4, 3, 5, 4]), w(&[2, 2, 4, 2])).unwrap();
        enumerate_fillings(&t).unwrap()
    }

    fn zero_filling() -> ObladeFilling {
        let t = BranchingTriple::new(4, w(&[0, 0, 0]), w(&[0, 0, 0]), w(&[0, 0, 0])).unwrap();
        let f = enumerate_fillings(&t).unwrap();
        assert_eq!(f.len(), 1);
        f.into_iter().next().unwrap()
    }

    fn labels_in(svg: &str) -> Vec<String> {
        svg.lines()
            .filter(|l| l.contains(r#"class="label""#))
            .map(|l| l.split('>').nth(1).unwrap().split('<').next().unwrap().to_string())
            .collect()
    }

    #[test]
    fn scale_must_be_positive() {
        assert!(RenderSpec::new(RenderKind::Oblade, Rational64::from_integer(0)).is_err());
        assert!(RenderSpec::new(RenderKind::Oblade, Rational64::new(-1, 2)).is_err());
        assert_eq!(RenderSpec::new(RenderKind::Honeycomb, Rational64::new(5, 2)).unwrap().scale(), Rational64::new(5, 2));
    }

    #[test]
    fn non_degenerate_oblade_has_no_zero_labels() {
        let f = sample().into_iter().find(|f| !is_degenerate(f)).unwrap();
        let svg = render_oblade(&f, &RenderSpec::default()).unwrap();
        let labels = labels_in(&svg);
        assert_eq!(labels.len(), 30);
        assert!(labels.iter().all(|l| l != "0"));
        assert_eq!(svg.matches(r#"class="boundary""#).count(), 12);
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains(r#"class="warning""#));
    }

    #[test]
    fn zero_edges_are_highlighted() {
        let f = sample().into_iter().find(|f| f.labels.iter().filter(|&&x| x == 0).count() >= 3).unwrap();
        let zeros = f.labels.iter().filter(|&&x| x == 0).count();
        let spec = RenderSpec { highlight_zero_edges: true, ..RenderSpec::default() };
        let svg = render_oblade(&f, &spec).unwrap();
        assert_eq!(svg.matches(r#"<line class="zero""#).count(), zeros);
        let plain = render_oblade(&f, &RenderSpec::default()).unwrap();
        assert_eq!(plain.matches(r#"<line class="zero""#).count(), 0);
    }

    #[test]
    fn all_zero_filling_draws_with_warning() {
        let f = zero_filling();
        let svg = render_oblade(&f, &RenderSpec::default()).unwrap();
        assert!(labels_in(&svg).iter().all(|l| l == "0"));
        assert!(svg.contains(r#"class="warning""#));
        let spec = RenderSpec::new(RenderKind::Honeycomb, Rational64::from_integer(30)).unwrap();
        let svg = render_honeycomb(&f, &spec).unwrap();
        assert!(svg.contains(r#"class="warning""#));
        assert!(svg.contains("<circle"));
    }

    #[test]
    fn honeycomb_edges_have_scaled_lengths() {
        let spec = RenderSpec::new(RenderKind::Honeycomb, Rational64::new(25, 2)).unwrap();
        for f in sample().iter().step_by(37) {
            let svg = render_honeycomb(f, &spec).unwrap();
            let nonzero = f.labels.iter().filter(|&&x| x != 0).count();
            let edges: Vec<&str> = svg.lines().filter(|l| l.contains(r#"<line class="edge""#)).collect();
            assert_eq!(edges.len(), nonzero);
            let mut lengths: Vec<i64> = Vec::new();
            for l in edges {
                let attr = |k: &str| -> f64 {
                    let s = l.split(&format!(r#"{k}=""#)).nth(1).unwrap();
                    s[..s.find('"').unwrap()].parse().unwrap()
                };
                let d = ((attr("x2") - attr("x1")).powi(2) + (attr("y2") - attr("y1")).powi(2)).sqrt() / 12.5;
                assert!((d - d.round()).abs() < 1e-3, "{d}");
                lengths.push(d.round() as i64);
            }
            let mut expected: Vec<i64> = f.labels.iter().copied().filter(|&x| x != 0).collect();
            lengths.sort();
            expected.sort();
            assert_eq!(lengths, expected);
        }
    }

    #[test]
    fn rendering_is_deterministic() {
        let f = &sample()[5];
        for kind in [RenderKind::Oblade, RenderKind::Honeycomb] {
            let spec = RenderSpec { kind, highlight_zero_edges: true, ..RenderSpec::default() };
            assert_eq!(render(f, &spec).unwrap(), render(&f.clone(), &spec).unwrap());
        }
    }

    #[test]
    fn invalid_filling_is_rejected() {
        let mut f = sample().remove(0);
        f.labels[0] += 1;
        assert!(render_oblade(&f, &RenderSpec::default()).is_err());
    }

    #[test]
    fn filenames_encode_triple_and_index() {
        let f = &sample()[0];
        assert_eq!(svg_filename(RenderKind::Oblade, &f.triple, 7), "oblade-n5-3.4.3.5-4.3.5.4-2.2.4.2-0007.svg");
    }
}
