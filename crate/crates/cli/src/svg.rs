//! Deterministic SVG drawings of polygon presentations.
//!
//! Floating point appears only here: vertices are rounded from their exact
//! embeddings at the requested precision.

use std::fmt::Write;

use flatspin_core::TranslationSurface;

#[derive(Debug, Clone, Copy)]
pub struct SvgOptions {
    /// Embedding precision in bits.
    pub bits: u32,
    /// Label corners by the cone point they belong to.
    pub labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { bits: 53, labels: false }
    }
}

/// Stroke color of gluing `i`, spread around the hue circle by the golden ratio.
pub fn gluing_color(i: usize) -> String {
    let hue = (i as f64 * 0.618_033_988_749_895).fract() * 360.0;
    format!("hsl({hue:.1},70%,40%)")
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_owned()
    } else {
        s
    }
}

/// Nearest multiple of 2^-bits; f64 already carries 53 bits.
fn round_to_bits(x: f64, bits: u32) -> f64 {
    if bits >= 53 {
        return x;
    }
    let scale = 2f64.powi(bits as i32);
    (x * scale).round() / scale
}

pub fn render(s: &TranslationSurface, opts: SvgOptions) -> String {
    // SVG's y axis points down.
    let points: Vec<Vec<(f64, f64)>> = s
        .polygons()
        .iter()
        .map(|p| {
            p.vertices()
                .iter()
                .map(|v| {
                    let (x, y) = v.to_f64_pair(opts.bits);
                    (round_to_bits(x, opts.bits), -round_to_bits(y, opts.bits))
                })
                .collect()
        })
        .collect();
    let all = points.iter().flatten();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in all {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let size = (x1 - x0).max(y1 - y0).max(1e-9);
    let pad = 0.05 * size;
    let stroke = 0.008 * size;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="600" height="{}">"#,
        num(x0 - pad),
        num(y0 - pad),
        num(x1 - x0 + 2.0 * pad),
        num(y1 - y0 + 2.0 * pad),
        num(600.0 * (y1 - y0 + 2.0 * pad) / (x1 - x0 + 2.0 * pad)),
    );
    for (p, pts) in points.iter().enumerate() {
        let d: Vec<String> = pts.iter().map(|&(x, y)| format!("{},{}", num(x), num(y))).collect();
        let _ = writeln!(out, r##"  <polygon id="p{p}" points="{}" fill="#888" fill-opacity="0.15"/>"##, d.join(" "));
    }
    for (i, g) in s.gluings().iter().enumerate() {
        let color = gluing_color(i);
        for e in [g.first, g.second] {
            let pts = &points[e.polygon];
            let (a, b) = (pts[e.edge], pts[(e.edge + 1) % pts.len()]);
            let _ = writeln!(
                out,
                r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="{}" stroke-linecap="round"/>"#,
                num(a.0),
                num(a.1),
                num(b.0),
                num(b.1),
                num(stroke),
            );
        }
    }
    if opts.labels {
        let font = 0.04 * size;
        for (class, corners) in s.corner_cycles().iter().enumerate() {
            for &(p, v) in corners {
                let pts = &points[p];
                let n = pts.len() as f64;
                let c = pts.iter().fold((0.0, 0.0), |acc, q| (acc.0 + q.0 / n, acc.1 + q.1 / n));
                // Pull the label a little towards the centroid so it sits inside the corner.
                let (x, y) = (pts[v].0 + 0.15 * (c.0 - pts[v].0), pts[v].1 + 0.15 * (c.1 - pts[v].1));
                let _ = writeln!(
                    out,
                    r#"  <text x="{}" y="{}" font-size="{}" text-anchor="middle" dominant-baseline="middle">v{class}</text>"#,
                    num(x),
                    num(y),
                    num(font),
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
