//! CSV and SVG renderings of piecewise functions.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use hnf_core::{ExtReal, PiecewiseFn, Rational, Side, XInterval};
use num_traits::ToPrimitive;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 40.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn ext_f64(e: &ExtReal) -> f64 {
    match e {
        ExtReal::NegInf => f64::NEG_INFINITY,
        ExtReal::PosInf => f64::INFINITY,
        ExtReal::Finite(r) => to_f64(r),
    }
}

/// `n` equally spaced points from `a` to `b` inclusive.
fn grid(f: &PiecewiseFn, n: usize) -> Vec<Rational> {
    let (a, b) = f.domain();
    let steps = Rational::from_integer(((n - 1) as i64).into());
    (0..n)
        .map(|k| a + (b - a) * Rational::from_integer((k as i64).into()) / &steps)
        .collect()
}

/// Rows `x,lo,hi` over the sample grid merged with the breakpoints.
pub fn csv(f: &PiecewiseFn, samples: usize) -> String {
    let mut xs: BTreeSet<Rational> = grid(f, samples).into_iter().collect();
    xs.extend(f.breakpoints().iter().cloned());
    let mut out = String::from("x,lo,hi\n");
    for x in xs {
        let v = f.eval(&x).expect("grid lies in the domain");
        writeln!(out, "{},{},{}", to_f64(&x), ext_f64(v.lo()), ext_f64(v.hi())).unwrap();
    }
    out
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        let y = y.clamp(self.y0, self.y1);
        HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }
}

/// Vertical range covering the bulk of the finite samples; values near poles
/// are clipped rather than allowed to flatten the picture.
fn frame(fs: &[PiecewiseFn], samples: usize) -> Frame {
    let (a, b) = fs[0].domain();
    let mut ys: Vec<f64> = Vec::new();
    let mut anchors: Vec<f64> = Vec::new();
    for f in fs {
        for x in grid(f, samples) {
            let v = f.eval(&x).expect("grid lies in the domain");
            ys.extend([ext_f64(v.lo()), ext_f64(v.hi())].into_iter().filter(|y| y.is_finite()));
        }
        for v in f.values() {
            anchors.extend([ext_f64(v.lo()), ext_f64(v.hi())].into_iter().filter(|y| y.is_finite()));
        }
    }
    ys.sort_by(f64::total_cmp);
    let pick = |q: f64| ys.get(((ys.len() as f64 - 1.0) * q).round() as usize).copied();
    let (mut lo, mut hi) = match (pick(0.02), pick(0.98)) {
        (Some(l), Some(h)) => (l, h),
        _ => (-1.0, 1.0),
    };
    for y in anchors {
        lo = lo.min(y);
        hi = hi.max(y);
    }
    if hi - lo < 1e-9 {
        lo -= 1.0;
        hi += 1.0;
    }
    let pad = (hi - lo) * 0.05;
    Frame {
        x0: to_f64(a),
        x1: to_f64(b),
        y0: lo - pad,
        y1: hi + pad,
    }
}

fn polyline(out: &mut String, pts: &[(f64, f64)], color: &str, class: &str) {
    if pts.len() < 2 {
        return;
    }
    let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    writeln!(
        out,
        r#"<polyline class="{class}" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
        coords.join(" ")
    )
    .unwrap();
}

fn render_one(out: &mut String, f: &PiecewiseFn, fr: &Frame, samples: usize, color: &str) {
    let xs = grid(f, samples);
    let bps = f.breakpoints();
    for (i, seg) in f.segments().iter().enumerate() {
        let (l, r) = (&bps[i], &bps[i + 1]);
        let inner: Vec<&Rational> = xs.iter().filter(|x| *x > l && *x < r).collect();
        let bounds = if seg.is_point() {
            vec![(&seg.lo, "graph")]
        } else {
            vec![(&seg.lo, "graph lower"), (&seg.hi, "graph upper")]
        };
        for (g, class) in bounds {
            let mut pts = Vec::with_capacity(inner.len() + 2);
            pts.push((fr.px(to_f64(l)), fr.py(ext_f64(&g.limit(l, Side::Right)))));
            for x in &inner {
                let y = g.eval(x).map_or(f64::NAN, |v| to_f64(&v));
                pts.push((fr.px(to_f64(x)), fr.py(y)));
            }
            pts.push((fr.px(to_f64(r)), fr.py(ext_f64(&g.limit(r, Side::Left)))));
            polyline(out, &pts, color, class);
        }
    }
    for (p, v) in bps.iter().zip(f.values()) {
        let x = fr.px(to_f64(p));
        if v.is_proper() {
            let (y0, y1) = (fr.py(ext_f64(v.lo())), fr.py(ext_f64(v.hi())));
            writeln!(
                out,
                r#"<line class="bar" x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{y1:.2}" stroke="{color}" stroke-width="3"/>"#
            )
            .unwrap();
        }
        infinity_markers(out, x, v, color);
    }
}

fn infinity_markers(out: &mut String, x: f64, v: &XInterval, color: &str) {
    let top = MARGIN;
    let bottom = HEIGHT - MARGIN;
    if *v.hi() == ExtReal::PosInf {
        writeln!(
            out,
            r#"<path class="inf-marker" d="M {x:.2} {top:.2} l -6 10 l 12 0 z" fill="{color}"/>"#
        )
        .unwrap();
    }
    if *v.lo() == ExtReal::NegInf {
        writeln!(
            out,
            r#"<path class="inf-marker" d="M {x:.2} {bottom:.2} l -6 -10 l 12 0 z" fill="{color}"/>"#
        )
        .unwrap();
    }
}

/// SVG document with one layer per function, all sharing the first
/// function's domain.
pub fn svg(fs: &[PiecewiseFn], samples: usize) -> String {
    let fr = frame(fs, samples);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 600" width="800" height="600">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="800" height="600" fill="white"/>"#).unwrap();
    let (left, right) = (MARGIN, WIDTH - MARGIN);
    let (top, bottom) = (MARGIN, HEIGHT - MARGIN);
    writeln!(
        out,
        r##"<rect class="frame" x="{left}" y="{top}" width="{}" height="{}" fill="none" stroke="#999"/>"##,
        right - left,
        bottom - top
    )
    .unwrap();
    if fr.y0 < 0.0 && fr.y1 > 0.0 {
        let y = fr.py(0.0);
        writeln!(
            out,
            r##"<line class="axis" x1="{left}" y1="{y:.2}" x2="{right}" y2="{y:.2}" stroke="#ccc"/>"##
        )
        .unwrap();
    }
    for (label, x, anchor) in [(fr.x0, left, "start"), (fr.x1, right, "end")] {
        writeln!(
            out,
            r#"<text x="{anchor_x}" y="{}" font-size="12" text-anchor="{anchor}">{label}</text>"#,
            bottom + 16.0,
            anchor_x = x,
        )
        .unwrap();
    }
    for (k, f) in fs.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        writeln!(out, r#"<g class="function" id="f{k}">"#).unwrap();
        render_one(&mut out, f, &fr, samples, color);
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
