//! Minimal self-contained SVG plotting.
//!
//! Two chart kinds cover the CLI's needs: polyline charts for paths and
//! trajectories, and a cell heatmap for the design scan. Output is plain
//! SVG 1.1 with inline styling and no external references. With
//! `deterministic` set, no timestamp comment is emitted and the bytes
//! depend only on the data.

use crate::geometry::Point2;
use crate::numfmt::fmt6;

const W: f64 = 720.0;
const H: f64 = 520.0;
const MARGIN: f64 = 60.0;

fn header(title: &str, deterministic: bool) -> String {
    let mut s = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"520\" \
         viewBox=\"0 0 720 520\" font-family=\"monospace\" font-size=\"12\">\n",
    );
    if !deterministic {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_millis())
            .unwrap_or(0);
        s.push_str(&format!("<!-- generated at unix ms {now} -->\n"));
    }
    s.push_str("<rect width=\"720\" height=\"520\" fill=\"white\"/>\n");
    s.push_str(&format!(
        "<text x=\"360\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
        escape(title)
    ));
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn of(xs: impl Iterator<Item = f64>, ys: impl Iterator<Item = f64>) -> Frame {
        let mut f = Frame {
            x0: f64::INFINITY,
            x1: f64::NEG_INFINITY,
            y0: f64::INFINITY,
            y1: f64::NEG_INFINITY,
        };
        for x in xs {
            f.x0 = f.x0.min(x);
            f.x1 = f.x1.max(x);
        }
        for y in ys {
            f.y0 = f.y0.min(y);
            f.y1 = f.y1.max(y);
        }
        if f.x1 - f.x0 < 1e-12 {
            f.x0 -= 1.0;
            f.x1 += 1.0;
        }
        if f.y1 - f.y0 < 1e-12 {
            f.y0 -= 1.0;
            f.y1 += 1.0;
        }
        f
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (W - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        H - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (H - 2.0 * MARGIN)
    }

    fn axes(&self, x_label: &str, y_label: &str) -> String {
        let mut s = format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
            MARGIN,
            MARGIN,
            W - 2.0 * MARGIN,
            H - 2.0 * MARGIN
        );
        for i in 0..=4 {
            let fx = self.x0 + (self.x1 - self.x0) * i as f64 / 4.0;
            let fy = self.y0 + (self.y1 - self.y0) * i as f64 / 4.0;
            s.push_str(&format!(
                "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>\n",
                self.px(fx),
                H - MARGIN + 18.0,
                fmt6(fx)
            ));
            s.push_str(&format!(
                "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>\n",
                MARGIN - 6.0,
                self.py(fy) + 4.0,
                fmt6(fy)
            ));
        }
        s.push_str(&format!(
            "<text x=\"360\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
            H - 14.0,
            escape(x_label)
        ));
        s.push_str(&format!(
            "<text x=\"16\" y=\"260\" text-anchor=\"middle\" transform=\"rotate(-90 16 260)\">{}</text>\n",
            escape(y_label)
        ));
        s
    }
}

const COLORS: [&str; 4] = ["#1f6fb2", "#d1495b", "#3a7d44", "#8856a7"];

/// A chart of one or more labelled polylines.
pub fn polyline_chart(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[(&str, &[Point2])],
    deterministic: bool,
) -> String {
    let mut s = header(title, deterministic);
    let frame = Frame::of(
        series.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.x)),
        series.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.y)),
    );
    s.push_str(&frame.axes(x_label, y_label));
    for (k, (label, pts)) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let mut d = String::new();
        for p in *pts {
            if !d.is_empty() {
                d.push(' ');
            }
            d.push_str(&format!("{:.2},{:.2}", frame.px(p.x), frame.py(p.y)));
        }
        s.push_str(&format!(
            "<polyline points=\"{d}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n"
        ));
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" fill=\"{color}\">{}</text>\n",
            MARGIN + 8.0,
            MARGIN + 16.0 + 16.0 * k as f64,
            escape(label)
        ));
    }
    s.push_str("</svg>\n");
    s
}

/// A cell heatmap over a rectangular grid; `None` cells render grey.
/// `values` is row-major with `xs` outer and `ys` inner.
pub fn heatmap(
    title: &str,
    x_label: &str,
    y_label: &str,
    xs: &[f64],
    ys: &[f64],
    values: &[Option<f64>],
    deterministic: bool,
) -> String {
    let mut s = header(title, deterministic);
    let frame = Frame::of(xs.iter().copied(), ys.iter().copied());
    let finite: Vec<f64> = values.iter().flatten().copied().collect();
    let (lo, hi) = finite.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |a, &v| {
        (a.0.min(v), a.1.max(v))
    });
    let span = if hi > lo { hi - lo } else { 1.0 };
    let cw = (W - 2.0 * MARGIN) / xs.len() as f64;
    let ch = (H - 2.0 * MARGIN) / ys.len() as f64;
    for (i, _x) in xs.iter().enumerate() {
        for (j, _y) in ys.iter().enumerate() {
            let v = values[i * ys.len() + j];
            let fill = match v {
                Some(v) => {
                    let t = (v - lo) / span;
                    let r = (40.0 + 215.0 * t).round() as u8;
                    let g = (60.0 + 40.0 * (1.0 - t)).round() as u8;
                    let b = (200.0 * (1.0 - t) + 40.0).round() as u8;
                    format!("#{r:02x}{g:02x}{b:02x}")
                }
                None => "#cccccc".to_string(),
            };
            s.push_str(&format!(
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{fill}\"/>\n",
                MARGIN + i as f64 * cw,
                H - MARGIN - (j as f64 + 1.0) * ch,
                cw,
                ch
            ));
        }
    }
    s.push_str(&frame.axes(x_label, y_label));
    if !finite.is_empty() {
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\">range [{}, {}]</text>\n",
            MARGIN + 8.0,
            MARGIN - 8.0,
            fmt6(lo),
            fmt6(hi)
        ));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_chart_is_stable() {
        let pts = [Point2::new(0.0, 0.0), Point2::new(1.0, 2.0), Point2::new(2.0, 1.0)];
        let a = polyline_chart("t", "x", "y", &[("s", &pts)], true);
        let b = polyline_chart("t", "x", "y", &[("s", &pts)], true);
        assert_eq!(a, b);
        assert!(!a.contains("generated at"));
    }
}
