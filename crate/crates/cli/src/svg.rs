//! Hand-written minimal SVG: a fixed viewport, polylines for curves and
//! transition lines, filled cells for the region raster, labeled
//! landmark dots.

use std::fmt::Write as _;

pub const WIDTH: f64 = 840.0;
pub const HEIGHT: f64 = 640.0;

pub struct Canvas {
    pub pmin: f64,
    pub pmax: f64,
    pub qmin: f64,
    pub qmax: f64,
    body: String,
}

fn fmt3(x: f64) -> String {
    format!("{x:.3}")
}

impl Canvas {
    pub fn new(pmin: f64, pmax: f64, qmin: f64, qmax: f64) -> Canvas {
        Canvas {
            pmin,
            pmax,
            qmin,
            qmax,
            body: String::new(),
        }
    }

    fn x(&self, p: f64) -> f64 {
        (p - self.pmin) / (self.pmax - self.pmin) * WIDTH
    }

    fn y(&self, q: f64) -> f64 {
        HEIGHT - (q - self.qmin) / (self.qmax - self.qmin) * HEIGHT
    }

    pub fn contains(&self, p: f64, q: f64) -> bool {
        p >= self.pmin && p <= self.pmax && q >= self.qmin && q <= self.qmax
    }

    pub fn cell(&mut self, p: f64, q: f64, dp: f64, dq: f64, color: &str) {
        let x = self.x(p);
        let y = self.y(q + dq);
        let w = dp / (self.pmax - self.pmin) * WIDTH;
        let h = dq / (self.qmax - self.qmin) * HEIGHT;
        let _ = writeln!(
            self.body,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{color}"/>"#,
            fmt3(x),
            fmt3(y),
            fmt3(w),
            fmt3(h)
        );
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], color: &str, width: f64) {
        if points.len() < 2 {
            return;
        }
        let mut coords = String::new();
        for (p, q) in points {
            if !coords.is_empty() {
                coords.push(' ');
            }
            let _ = write!(coords, "{},{}", fmt3(self.x(*p)), fmt3(self.y(*q)));
        }
        let _ = writeln!(
            self.body,
            r#"<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="{width}"/>"#
        );
    }

    pub fn dot(&mut self, p: f64, q: f64, label: &str) {
        let x = self.x(p);
        let y = self.y(q);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{}" cy="{}" r="4" fill="black"/>"#,
            fmt3(x),
            fmt3(y)
        );
        let _ = writeln!(
            self.body,
            r#"<text x="{}" y="{}" font-size="14" font-family="monospace">{label}</text>"#,
            fmt3(x + 6.0),
            fmt3(y - 6.0)
        );
    }

    pub fn finish(self, title: &str) -> String {
        format!(
            concat!(
                r#"<?xml version="1.0" encoding="UTF-8"?>"#,
                "\n",
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
                "\n<title>{title}</title>\n{body}</svg>\n"
            ),
            w = WIDTH,
            h = HEIGHT,
            title = title,
            body = self.body
        )
    }
}
