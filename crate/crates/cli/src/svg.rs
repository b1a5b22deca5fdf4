//! Minimal static SVG charts on a fixed 800×600 viewport.

use std::fmt::Write;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 60.0;
const COLOURS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn fit<'a>(points: impl Iterator<Item = &'a (f64, f64)>) -> Self {
        let (mut x, mut y) = ((f64::INFINITY, f64::NEG_INFINITY), (f64::INFINITY, f64::NEG_INFINITY));
        for &(a, b) in points.filter(|(a, b)| a.is_finite() && b.is_finite()) {
            x = (x.0.min(a), x.1.max(a));
            y = (y.0.min(b), y.1.max(b));
        }
        let widen = |(lo, hi): (f64, f64)| {
            if !lo.is_finite() {
                (0.0, 1.0)
            } else if hi > lo {
                (lo, hi)
            } else {
                (lo - 0.5, hi + 0.5)
            }
        };
        Self { x: widen(x), y: widen(y) }
    }

    fn px(&self, a: f64) -> f64 {
        MARGIN + (a - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, b: f64) -> f64 {
        HEIGHT - MARGIN - (b - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn open(out: &mut String, title: &str, frame: &Frame, xlabel: &str, ylabel: &str) {
    let (l, r, t, b) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"30\" text-anchor=\"middle\" font-size=\"16\">{}</text>",
        WIDTH / 2.0,
        escape(title)
    );
    let _ = writeln!(out, "<path d=\"M{l} {t} L{l} {b} L{r} {b}\" stroke=\"black\" fill=\"none\" stroke-width=\"1\"/>");
    let ticks = [
        (l, b + 20.0, "start", frame.x.0),
        (r, b + 20.0, "end", frame.x.1),
        (l - 8.0, b, "end", frame.y.0),
        (l - 8.0, t + 4.0, "end", frame.y.1),
    ];
    for (x, y, anchor, v) in ticks {
        let _ = writeln!(
            out,
            "<text x=\"{x:.2}\" y=\"{y:.2}\" text-anchor=\"{anchor}\" font-size=\"12\">{}</text>",
            tick(v)
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\">{}</text>",
        WIDTH / 2.0,
        HEIGHT - 15.0,
        escape(xlabel)
    );
    let _ = writeln!(
        out,
        "<text x=\"18\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 {})\">{}</text>",
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(ylabel)
    );
}

fn tick(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Polylines sharing one x axis, with a legend.
pub fn lines(title: &str, series: &[(String, Vec<(f64, f64)>)]) -> String {
    let frame = Frame::fit(series.iter().flat_map(|(_, p)| p.iter()));
    let mut out = String::new();
    open(&mut out, title, &frame, "t", "X(t)");
    for (i, (name, points)) in series.iter().enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        let mut d = String::new();
        for (k, &(a, b)) in points.iter().enumerate() {
            let _ = write!(d, "{}{:.2} {:.2}", if k == 0 { "M" } else { " L" }, frame.px(a), frame.py(b));
        }
        let _ = writeln!(out, "<path d=\"{d}\" stroke=\"{colour}\" fill=\"none\" stroke-width=\"1\"/>");
        let y = MARGIN + 16.0 * i as f64;
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{y:.2}\" text-anchor=\"end\" font-size=\"12\" fill=\"{colour}\">{}</text>",
            WIDTH - MARGIN,
            escape(name)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Point markers.
pub fn scatter(title: &str, xlabel: &str, ylabel: &str, points: &[(f64, f64)]) -> String {
    let frame = Frame::fit(points.iter());
    let mut out = String::new();
    open(&mut out, title, &frame, xlabel, ylabel);
    for &(a, b) in points.iter().filter(|(a, b)| a.is_finite() && b.is_finite()) {
        let _ = writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"1.5\" fill=\"{}\" fill-opacity=\"0.5\"/>",
            frame.px(a),
            frame.py(b),
            COLOURS[0]
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scatter_has_fixed_viewport_and_one_marker_per_point() {
        let s = scatter("t", "x1", "x2", &[(0.0, 0.0), (1.0, 2.0), (f64::NAN, 1.0)]);
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
        assert!(s.contains("viewBox=\"0 0 800 600\""));
        assert_eq!(s.matches("<circle").count(), 2);
    }

    #[test]
    fn lines_map_extremes_to_the_frame() {
        let s = lines("p", &[("a".into(), vec![(0.0, 1.0), (1.0, 3.0)])]);
        assert!(s.contains("M60.00 540.00 L740.00 60.00"));
    }

    #[test]
    fn degenerate_ranges_do_not_divide_by_zero() {
        let s = lines("p", &[("a".into(), vec![(0.0, 1.0)])]);
        assert!(!s.contains("NaN") && !s.contains("inf"));
        assert!(escape("a<b&c").eq("a&lt;b&amp;c"));
    }
}
