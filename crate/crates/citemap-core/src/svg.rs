//! Minimal deterministic SVG emission.
//!
//! Geometry arrives in the unit space (y up); the builder maps it to pixel
//! space (y down) and prints coordinates with four decimals, so identical
//! input always yields byte-identical output.

use alloc::format;
use alloc::string::String;

use crate::geom::{fabs, Point, Rect};

pub struct SvgBuilder {
    width: f64,
    height: f64,
    body: String,
}

impl SvgBuilder {
    pub fn new(width_px: u32, height_px: u32) -> Self {
        Self { width: width_px as f64, height: height_px as f64, body: String::new() }
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (x * self.width, (1.0 - y) * self.height)
    }

    pub fn rect(&mut self, rect: &Rect, fill: &str, stroke: &str, stroke_width: f64) {
        // The rect's top-left in pixel space is its unit-space (x0, y1).
        let (x, y) = self.px(rect.x0, rect.y1);
        let w = rect.width() * self.width;
        let h = rect.height() * self.height;
        self.body.push_str(&format!(
            "<rect x=\"{x:.4}\" y=\"{y:.4}\" width=\"{w:.4}\" height=\"{h:.4}\" fill=\"{fill}\" stroke=\"{stroke}\" stroke-width=\"{stroke_width}\"/>\n"
        ));
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], stroke: &str, stroke_width: f64) {
        if points.len() < 2 {
            return;
        }
        let mut attr = String::new();
        for (i, &(x, y)) in points.iter().enumerate() {
            let (px, py) = self.px(x, y);
            if i > 0 {
                attr.push(' ');
            }
            attr.push_str(&format!("{px:.4},{py:.4}"));
        }
        self.body.push_str(&format!(
            "<polyline points=\"{attr}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{stroke_width}\"/>\n"
        ));
    }

    /// Triangle arrow head at `end`, pointing along the axis-aligned
    /// direction from `prev` to `end`; `size` is the head length in unit
    /// coordinates.
    pub fn arrow_head(&mut self, prev: (f64, f64), end: (f64, f64), size: f64, color: &str) {
        let dx = end.0 - prev.0;
        let dy = end.1 - prev.1;
        // Axis-aligned unit direction; the dominant component wins.
        let (ux, uy) = if fabs(dx) >= fabs(dy) {
            (if dx >= 0.0 { 1.0 } else { -1.0 }, 0.0)
        } else {
            (0.0, if dy >= 0.0 { 1.0 } else { -1.0 })
        };
        let tip = Point::new(end.0, end.1);
        let base = Point::new(end.0 - ux * size, end.1 - uy * size);
        let half = size / 2.0;
        let (wx, wy) = (-uy * half, ux * half);
        let a = self.px(tip.x, tip.y);
        let b = self.px(base.x + wx, base.y + wy);
        let c = self.px(base.x - wx, base.y - wy);
        self.body.push_str(&format!(
            "<polygon points=\"{:.4},{:.4} {:.4},{:.4} {:.4},{:.4}\" fill=\"{color}\"/>\n",
            a.0, a.1, b.0, b.1, c.0, c.1
        ));
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {:.0}\">\n{}</svg>\n",
            self.width, self.height, self.width, self.height, self.body
        )
    }
}
