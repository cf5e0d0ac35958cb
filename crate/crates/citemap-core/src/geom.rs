//! Plain geometry in the unit coordinate space `[0,1]²`, y growing upward.
//!
//! Rendering flips y at the last moment; everything else — layout, routing,
//! label anchors — stays in this one space so overlay math is exact.

/// Absolute value without libm (this crate is `no_std`).
#[inline]
pub fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

/// Tolerance under which two coordinates count as the same line.
pub const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// Axis-aligned rectangle; `x0 <= x1`, `y0 <= y1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub const fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Self { x0, y0, x1, y1 }
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn overlaps(&self, other: &Rect) -> bool {
        self.x0 < other.x1 && other.x0 < self.x1 && self.y0 < other.y1 && other.y0 < self.y1
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Rect {
        Rect::new(self.x0 + dx, self.y0 + dy, self.x1 + dx, self.y1 + dy)
    }
}

/// An axis-aligned segment, stored as (fixed cross-coordinate, span interval).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrthoSeg {
    /// y fixed, x from `lo` to `hi` (lo <= hi).
    Horizontal { y: f64, lo: f64, hi: f64 },
    /// x fixed, y from `lo` to `hi` (lo <= hi).
    Vertical { x: f64, lo: f64, hi: f64 },
}

impl OrthoSeg {
    /// Builds the segment between two points that share an axis.
    /// Returns `None` for diagonal or zero-length pairs.
    pub fn between(a: Point, b: Point) -> Option<OrthoSeg> {
        if fabs(a.y - b.y) <= EPS && fabs(a.x - b.x) > EPS {
            let (lo, hi) = if a.x < b.x { (a.x, b.x) } else { (b.x, a.x) };
            Some(OrthoSeg::Horizontal { y: a.y, lo, hi })
        } else if fabs(a.x - b.x) <= EPS && fabs(a.y - b.y) > EPS {
            let (lo, hi) = if a.y < b.y { (a.y, b.y) } else { (b.y, a.y) };
            Some(OrthoSeg::Vertical { x: a.x, lo, hi })
        } else {
            None
        }
    }

    /// True when the two segments run along the same line and share more
    /// than a point of it. Crossing or touching at endpoints is fine;
    /// sharing an interval is the overlap the router must avoid.
    pub fn collinear_overlaps(&self, other: &OrthoSeg) -> bool {
        match (self, other) {
            (
                OrthoSeg::Horizontal { y: ya, lo: la, hi: ha },
                OrthoSeg::Horizontal { y: yb, lo: lb, hi: hb },
            )
            | (
                OrthoSeg::Vertical { x: ya, lo: la, hi: ha },
                OrthoSeg::Vertical { x: yb, lo: lb, hi: hb },
            ) => {
                if fabs(ya - yb) > EPS {
                    return false;
                }
                let lo = if la > lb { *la } else { *lb };
                let hi = if ha < hb { *ha } else { *hb };
                hi - lo > EPS
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_between_classifies_axes() {
        let h = OrthoSeg::between(Point::new(0.2, 0.5), Point::new(0.8, 0.5)).unwrap();
        assert_eq!(h, OrthoSeg::Horizontal { y: 0.5, lo: 0.2, hi: 0.8 });
        let v = OrthoSeg::between(Point::new(0.3, 0.9), Point::new(0.3, 0.1)).unwrap();
        assert_eq!(v, OrthoSeg::Vertical { x: 0.3, lo: 0.1, hi: 0.9 });
        assert!(OrthoSeg::between(Point::new(0.0, 0.0), Point::new(1.0, 1.0)).is_none());
        assert!(OrthoSeg::between(Point::new(0.5, 0.5), Point::new(0.5, 0.5)).is_none());
    }

    #[test]
    fn collinear_overlap_requires_shared_interval() {
        let a = OrthoSeg::Horizontal { y: 0.5, lo: 0.2, hi: 0.5 };
        let b = OrthoSeg::Horizontal { y: 0.5, lo: 0.4, hi: 0.9 };
        let c = OrthoSeg::Horizontal { y: 0.5, lo: 0.5, hi: 0.9 };
        let d = OrthoSeg::Horizontal { y: 0.6, lo: 0.0, hi: 1.0 };
        let v = OrthoSeg::Vertical { x: 0.5, lo: 0.0, hi: 1.0 };
        assert!(a.collinear_overlaps(&b));
        assert!(!a.collinear_overlaps(&c), "endpoint touch is not overlap");
        assert!(!a.collinear_overlaps(&d), "different lines never overlap");
        assert!(!a.collinear_overlaps(&v), "crossing is not overlap");
    }

    #[test]
    fn rect_overlap_is_strict_interior() {
        let a = Rect::new(0.0, 0.0, 0.5, 0.5);
        assert!(a.overlaps(&Rect::new(0.4, 0.4, 0.6, 0.6)));
        assert!(!a.overlaps(&Rect::new(0.5, 0.0, 1.0, 0.5)), "shared edge only");
    }
}
