//! Rectilinear wire routing. Wires stay inside the big box, start on the
//! source's blue pin, end on the target's red pin, and never share a
//! collinear interval with another wire (crossing at right angles is fine).
//!
//! Same-axis-class edges (first process) take stub → lane → stub paths;
//! cross-class edges (second process) take a single-transfer L and
//! escalate to a five-point dodge when it collides. Free positions are
//! probed adaptively: candidate coordinates come from a δ/2 grid *plus*
//! the boundaries of the committed segments that block the preferred
//! path, so a wire squeezes through any gap wider than the margin instead
//! of only through grid-aligned ones. `path_clear` is the single
//! authority; candidates are tried nearest-preferred first, which keeps
//! the result deterministic.

use alloc::collections::BTreeMap;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::geom::{fabs, OrthoSeg, Point, Rect, EPS};
use crate::{Error, Result};

use super::layout::{BIG_HI, BIG_LO};
use super::{ChipLayout, CiteList, EdgeKind, RoutedEdge, Side};

/// Most candidates examined per free coordinate; bounds worst-case work.
const MAX_CANDIDATES: usize = 320;

/// `(from, to)` node-index pairs, in cite-list order.
pub type EdgePairs = Vec<(usize, usize)>;

/// Splits the citations into (first, second) process lists, preserving
/// cite-list order within each.
pub fn classify_edges(cite_list: &CiteList, layout: &ChipLayout) -> (EdgePairs, EdgePairs) {
    let mut first = Vec::new();
    let mut second = Vec::new();
    for (ni, cites) in &cite_list.items {
        for c in cites {
            let from = layout.pins[ni].side;
            let to = layout.pins[c].side;
            if from.axis_class() == to.axis_class() {
                first.push((*ni, *c));
            } else {
                second.push((*ni, *c));
            }
        }
    }
    (first, second)
}

/// Committed wire segments, split by orientation for cheaper conflict
/// checks.
#[derive(Default)]
struct SegRegistry {
    horizontal: Vec<OrthoSeg>,
    vertical: Vec<OrthoSeg>,
}

impl SegRegistry {
    fn conflicts(&self, seg: &OrthoSeg) -> bool {
        let pool = match seg {
            OrthoSeg::Horizontal { .. } => &self.horizontal,
            OrthoSeg::Vertical { .. } => &self.vertical,
        };
        pool.iter().any(|s| s.collinear_overlaps(seg))
    }

    fn commit(&mut self, segs: &[OrthoSeg]) {
        for seg in segs {
            match seg {
                OrthoSeg::Horizontal { .. } => self.horizontal.push(*seg),
                OrthoSeg::Vertical { .. } => self.vertical.push(*seg),
            }
        }
    }

    /// Span boundaries of committed segments lying on the given line;
    /// candidate positions adjacent to these squeeze past the blockers.
    fn boundaries_on_line(&self, horizontal_line: bool, coord: f64) -> Vec<f64> {
        let pool = if horizontal_line { &self.horizontal } else { &self.vertical };
        let mut out = Vec::new();
        for seg in pool {
            let (c, lo, hi) = match seg {
                OrthoSeg::Horizontal { y, lo, hi } => (*y, *lo, *hi),
                OrthoSeg::Vertical { x, lo, hi } => (*x, *lo, *hi),
            };
            if fabs(c - coord) <= EPS {
                out.push(lo);
                out.push(hi);
            }
        }
        out
    }

    /// Line coordinates of committed segments parallel to and crossing the
    /// given span; a free lane must dodge these values.
    fn lines_crossing_span(&self, horizontal_lines: bool, lo: f64, hi: f64) -> Vec<f64> {
        let pool = if horizontal_lines { &self.horizontal } else { &self.vertical };
        let mut out = Vec::new();
        for seg in pool {
            let (c, a, b) = match seg {
                OrthoSeg::Horizontal { y, lo, hi } => (*y, *lo, *hi),
                OrthoSeg::Vertical { x, lo, hi } => (*x, *lo, *hi),
            };
            if b.min(hi) - a.max(lo) > EPS {
                out.push(c);
            }
        }
        out
    }
}

fn segs_of(points: &[Point]) -> Vec<OrthoSeg> {
    points.windows(2).filter_map(|w| OrthoSeg::between(w[0], w[1])).collect()
}

fn path_clear(points: &[Point], registry: &SegRegistry) -> bool {
    segs_of(points).iter().all(|seg| !registry.conflicts(seg))
}

fn dedup_points(points: Vec<Point>) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        let distinct = out
            .last()
            .map(|q| fabs(q.x - p.x) > EPS || fabs(q.y - p.y) > EPS)
            .unwrap_or(true);
        if distinct {
            out.push(p);
        }
    }
    out
}

/// Wire endpoint on a pin box: slot `j` of `m` along the box's inner edge.
fn attach_point(b: &Rect, side: Side, j: usize, m: usize) -> Point {
    let frac = (j + 1) as f64 / (m + 1) as f64;
    match side {
        Side::Up => Point::new(b.x0 + b.width() * frac, b.y0),
        Side::Down => Point::new(b.x0 + b.width() * frac, b.y1),
        Side::Left => Point::new(b.x1, b.y0 + b.height() * frac),
        Side::Right => Point::new(b.x0, b.y0 + b.height() * frac),
    }
}

/// Clearance kept between a routed wire and the blocker it squeezes past.
fn margin_of(delta: f64) -> f64 {
    (delta / 8.0).max(EPS * 32.0)
}

/// Deterministic candidate list for one free coordinate: the preferred
/// value, blocker-adjacent values, midpoints between adjacent blockers,
/// and a δ/2 grid over the usable band, sorted by distance from the
/// preferred value. The midpoints matter once wires pack at margin
/// spacing: every margin offset then lands on a committed wire, while a
/// midpoint stays clear until its gap truly closes.
fn candidates(prefer: f64, near_blockers: &[f64], delta: f64) -> Vec<f64> {
    let margin = margin_of(delta);
    let lo = BIG_LO + margin;
    let hi = BIG_HI - margin;
    let mut cands = Vec::with_capacity(near_blockers.len() * 3 + 80);
    cands.push(prefer.clamp(lo, hi));
    for &b in near_blockers {
        cands.push(b - margin);
        cands.push(b + margin);
    }
    let mut sorted = near_blockers.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sorted.dedup_by(|a, b| fabs(*a - *b) <= EPS);
    for w in sorted.windows(2) {
        if w[1] - w[0] > EPS * 4.0 {
            cands.push((w[0] + w[1]) / 2.0);
        }
    }
    let step = (delta / 2.0).max(EPS * 64.0);
    let mut v = lo;
    while v < hi {
        cands.push(v);
        v += step;
    }
    cands.retain(|c| *c >= lo - EPS && *c <= hi + EPS);
    cands.sort_by(|a, b| {
        fabs(a - prefer)
            .partial_cmp(&fabs(b - prefer))
            .unwrap()
            .then(a.partial_cmp(b).unwrap())
    });
    cands.dedup_by(|a, b| fabs(*a - *b) <= EPS);
    cands.truncate(MAX_CANDIDATES);
    cands
}

/// First process: stub from `s`, shared lane, stub into `t`. The lane is
/// horizontal for up/down pairs, vertical for left/right pairs. The lane
/// position is chosen adaptively around `prefer`.
fn route_first(
    s: Point,
    t: Point,
    vertical_stubs: bool,
    prefer: f64,
    delta: f64,
    registry: &SegRegistry,
) -> Option<Vec<Point>> {
    // Blockers shaping the choice: segments parallel to the lane crossing
    // its span, and blockers sitting on either stub's line.
    let mut interesting = if vertical_stubs {
        let (lo, hi) = if s.x < t.x { (s.x, t.x) } else { (t.x, s.x) };
        registry.lines_crossing_span(true, lo, hi)
    } else {
        let (lo, hi) = if s.y < t.y { (s.y, t.y) } else { (t.y, s.y) };
        registry.lines_crossing_span(false, lo, hi)
    };
    if vertical_stubs {
        interesting.extend(registry.boundaries_on_line(false, s.x));
        interesting.extend(registry.boundaries_on_line(false, t.x));
    } else {
        interesting.extend(registry.boundaries_on_line(true, s.y));
        interesting.extend(registry.boundaries_on_line(true, t.y));
    }
    for lane in candidates(prefer, &interesting, delta) {
        let pts = if vertical_stubs {
            vec![s, Point::new(s.x, lane), Point::new(t.x, lane), t]
        } else {
            vec![s, Point::new(lane, s.y), Point::new(lane, t.y), t]
        };
        if path_clear(&pts, registry) {
            return Some(pts);
        }
    }
    None
}

/// Second process: try the single-transfer L, then five-point dodges
/// `s → (s.x, yd) → (xd, yd) → (xd, t.y) → t` (axes swapped when the
/// source sits on a left/right side). The two free coordinates are probed
/// independently: the stub out of `s` depends only on one of them and the
/// approach into `t` only on the other, so infeasible values are pruned
/// before pairing and only the two middle segments are checked per pair.
fn route_second(
    s: Point,
    t: Point,
    from_vertical: bool,
    delta: f64,
    registry: &SegRegistry,
) -> Option<Vec<Point>> {
    let base = if from_vertical {
        vec![s, Point::new(s.x, t.y), t]
    } else {
        vec![s, Point::new(t.x, s.y), t]
    };
    if path_clear(&base, registry) {
        return Some(base);
    }

    // `stub_frees` moves the wire along the source stub's line (yd for a
    // vertical stub); `approach_frees` slides the column/row it rides into
    // the target (xd for a vertical stub). Preferences recover the base L.
    // Blockers mix same-line span boundaries with the coordinates of every
    // parallel committed wire the transfer could land on.
    let (stub_frees, approach_frees) = if from_vertical {
        let mut yb = registry.boundaries_on_line(false, s.x);
        yb.extend(registry.lines_crossing_span(true, BIG_LO, BIG_HI));
        let mut xb = registry.boundaries_on_line(true, t.y);
        xb.extend(registry.lines_crossing_span(false, BIG_LO, BIG_HI));
        (candidates(t.y, &yb, delta), candidates(s.x, &xb, delta))
    } else {
        let mut xb = registry.boundaries_on_line(true, s.y);
        xb.extend(registry.lines_crossing_span(false, BIG_LO, BIG_HI));
        let mut yb = registry.boundaries_on_line(false, t.x);
        yb.extend(registry.lines_crossing_span(true, BIG_LO, BIG_HI));
        (candidates(t.x, &xb, delta), candidates(s.y, &yb, delta))
    };
    let approach_ok: Vec<bool> = approach_frees
        .iter()
        .map(|&b| {
            let seg = if from_vertical {
                OrthoSeg::between(Point::new(b, t.y), t)
            } else {
                OrthoSeg::between(Point::new(t.x, b), t)
            };
            seg.map(|sg| !registry.conflicts(&sg)).unwrap_or(true)
        })
        .collect();

    for &a in &stub_frees {
        let stub = if from_vertical {
            OrthoSeg::between(s, Point::new(s.x, a))
        } else {
            OrthoSeg::between(s, Point::new(a, s.y))
        };
        if stub.map(|sg| registry.conflicts(&sg)).unwrap_or(false) {
            continue;
        }
        for (&b, ok) in approach_frees.iter().zip(&approach_ok) {
            if !ok {
                continue;
            }
            let pts = if from_vertical {
                vec![s, Point::new(s.x, a), Point::new(b, a), Point::new(b, t.y), t]
            } else {
                vec![s, Point::new(a, s.y), Point::new(a, b), Point::new(t.x, b), t]
            };
            let mid = [pts[1], pts[2], pts[3]];
            if segs_of(&mid).iter().all(|sg| !registry.conflicts(sg)) {
                return Some(pts);
            }
        }
    }
    None
}

/// Grid of candidate coordinates for the fallback search: one value per
/// blocker line, midpoints between adjacent lines, margin offsets, and
/// the caller's mandatory values (wire endpoints, band edges).
fn axis_values(segs: &[OrthoSeg], keep: &[f64], delta: f64) -> Vec<f64> {
    let margin = margin_of(delta);
    let lo = BIG_LO + margin;
    let hi = BIG_HI - margin;
    let mut lines: Vec<f64> = segs
        .iter()
        .map(|sg| match sg {
            OrthoSeg::Horizontal { y, .. } => *y,
            OrthoSeg::Vertical { x, .. } => *x,
        })
        .collect();
    lines.sort_by(|a, b| a.partial_cmp(b).unwrap());
    lines.dedup_by(|a, b| fabs(*a - *b) <= EPS);
    let mut vals: Vec<f64> = Vec::with_capacity(lines.len() * 3 + keep.len() + 3);
    for w in lines.windows(2) {
        if w[1] - w[0] > EPS * 4.0 {
            vals.push((w[0] + w[1]) / 2.0);
        }
    }
    for &l in &lines {
        vals.push(l - margin);
        vals.push(l + margin);
    }
    vals.push(lo);
    vals.push(hi);
    vals.push(0.5);
    vals.retain(|v| *v >= lo - EPS && *v <= hi + EPS);
    vals.extend_from_slice(keep);
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals.dedup_by(|a, b| fabs(*a - *b) <= EPS);
    // Mandatory values win their EPS bucket so emitted paths stay exactly
    // on the wire endpoints.
    for &k in keep {
        if let Some(v) = vals.iter_mut().find(|v| fabs(**v - k) <= EPS) {
            *v = k;
        }
    }
    vals
}

fn nearest_index(vals: &[f64], v: f64) -> usize {
    let mut best = 0;
    let mut gap = f64::INFINITY;
    for (i, x) in vals.iter().enumerate() {
        if fabs(x - v) < gap {
            gap = fabs(x - v);
            best = i;
        }
    }
    best
}

/// Last-resort router: 0-1 BFS over the blocker-derived grid, minimizing
/// bends, 180° reversals banned. Complete relative to the grid, so a wire
/// the greedy shape families cannot place still finds any corridor that
/// exists between committed wires. Steps along the big-box perimeter are
/// excluded, which also forces perpendicular pin entry/exit.
fn grid_route(s: Point, t: Point, delta: f64, registry: &SegRegistry) -> Option<Vec<Point>> {
    let margin = margin_of(delta);
    let lo = BIG_LO + margin;
    let hi = BIG_HI - margin;
    let xs = axis_values(&registry.vertical, &[s.x, t.x], delta);
    let ys = axis_values(&registry.horizontal, &[s.y, t.y], delta);
    let nx = xs.len();
    let ny = ys.len();
    if nx < 2 || ny < 2 {
        return None;
    }

    // Blocked spans bucketed per grid line; a step is legal when it shares
    // no interval longer than EPS with any same-line wire.
    let mut h_rows: Vec<Vec<(f64, f64)>> = vec![Vec::new(); ny];
    for sg in &registry.horizontal {
        if let OrthoSeg::Horizontal { y, lo: a, hi: b } = sg {
            for (j, ry) in ys.iter().enumerate() {
                if fabs(ry - y) <= EPS {
                    h_rows[j].push((*a, *b));
                }
            }
        }
    }
    let mut v_cols: Vec<Vec<(f64, f64)>> = vec![Vec::new(); nx];
    for sg in &registry.vertical {
        if let OrthoSeg::Vertical { x, lo: a, hi: b } = sg {
            for (i, cx) in xs.iter().enumerate() {
                if fabs(cx - x) <= EPS {
                    v_cols[i].push((*a, *b));
                }
            }
        }
    }
    let span_free = |ivs: &[(f64, f64)], a: f64, b: f64| -> bool {
        ivs.iter().all(|(l, h)| h.min(b) - l.max(a) <= EPS)
    };
    // dir: 0 = +x, 1 = -x, 2 = +y, 3 = -y.
    let step_ok = |i: usize, j: usize, dir: usize| -> Option<(usize, usize)> {
        match dir {
            0 | 1 => {
                let ni = if dir == 0 { i + 1 } else { i.checked_sub(1)? };
                if ni >= nx || ys[j] < lo - EPS || ys[j] > hi + EPS {
                    return None;
                }
                let (a, b) = (xs[i.min(ni)], xs[i.max(ni)]);
                span_free(&h_rows[j], a, b).then_some((ni, j))
            }
            _ => {
                let nj = if dir == 2 { j + 1 } else { j.checked_sub(1)? };
                if nj >= ny || xs[i] < lo - EPS || xs[i] > hi + EPS {
                    return None;
                }
                let (a, b) = (ys[j.min(nj)], ys[j.max(nj)]);
                span_free(&v_cols[i], a, b).then_some((i, nj))
            }
        }
    };

    let (is_, js_) = (nearest_index(&xs, s.x), nearest_index(&ys, s.y));
    let (it, jt) = (nearest_index(&xs, t.x), nearest_index(&ys, t.y));
    let state = |i: usize, j: usize, d: usize| (j * nx + i) * 4 + d;
    let mut dist = vec![u32::MAX; nx * ny * 4];
    let mut prev = vec![u32::MAX; nx * ny * 4];
    let mut deque: VecDeque<usize> = VecDeque::new();
    for d in 0..4 {
        if let Some((ni, nj)) = step_ok(is_, js_, d) {
            let st = state(ni, nj, d);
            dist[st] = 0;
            deque.push_back(st);
        }
    }
    let mut goal = None;
    while let Some(st) = deque.pop_front() {
        let d = st % 4;
        let i = (st / 4) % nx;
        let j = st / 4 / nx;
        if i == it && j == jt {
            goal = Some(st);
            break;
        }
        for nd in 0..4 {
            if nd == d ^ 1 {
                continue;
            }
            if let Some((ni, nj)) = step_ok(i, j, nd) {
                let nst = state(ni, nj, nd);
                let cost = dist[st] + u32::from(nd != d);
                if cost < dist[nst] {
                    dist[nst] = cost;
                    prev[nst] = st as u32;
                    if nd == d {
                        deque.push_front(nst);
                    } else {
                        deque.push_back(nst);
                    }
                }
            }
        }
    }

    let mut st = goal?;
    let mut rev = vec![Point::new(xs[it], ys[jt])];
    loop {
        let d = st % 4;
        let i = (st / 4) % nx;
        let j = st / 4 / nx;
        let (pi, pj) = match d {
            0 => (i - 1, j),
            1 => (i + 1, j),
            2 => (i, j - 1),
            _ => (i, j + 1),
        };
        rev.push(Point::new(xs[pi], ys[pj]));
        if prev[st] == u32::MAX {
            break;
        }
        st = prev[st] as usize;
    }
    rev.reverse();
    // Merge collinear runs so each straight stretch commits one segment.
    let mut pts: Vec<Point> = Vec::with_capacity(8);
    for p in rev {
        if pts.len() >= 2 {
            let a = pts[pts.len() - 2];
            let b = pts[pts.len() - 1];
            let same_col = fabs(a.x - b.x) <= EPS && fabs(b.x - p.x) <= EPS;
            let same_row = fabs(a.y - b.y) <= EPS && fabs(b.y - p.y) <= EPS;
            if same_col || same_row {
                *pts.last_mut().unwrap() = p;
                continue;
            }
        }
        pts.push(p);
    }
    Some(pts)
}

/// Routes every citation, first-process edges before second-process ones,
/// each list in its given order. Attachment slots are dealt per pin box in
/// this same processing order, so the result is a pure function of the
/// inputs.
pub fn route_edges(
    first: &[(usize, usize)],
    second: &[(usize, usize)],
    cite_list: &CiteList,
    layout: &ChipLayout,
    colors: &[[u8; 3]],
) -> Result<Vec<RoutedEdge>> {
    let position: BTreeMap<usize, usize> =
        cite_list.items.iter().enumerate().map(|(i, (ni, _))| (*ni, i)).collect();
    if colors.len() < cite_list.items.len() {
        return Err(Error::InvalidArgument {
            reason: format!(
                "{} colors for {} items",
                colors.len(),
                cite_list.items.len()
            ),
        });
    }

    let mut out_m: BTreeMap<usize, usize> = BTreeMap::new();
    let mut in_m: BTreeMap<usize, usize> = BTreeMap::new();
    for (f, t) in first.iter().chain(second.iter()) {
        *out_m.entry(*f).or_insert(0) += 1;
        *in_m.entry(*t).or_insert(0) += 1;
    }

    let delta = layout.citebox_width / 2.0;
    let mut registry = SegRegistry::default();
    let mut out_j: BTreeMap<usize, usize> = BTreeMap::new();
    let mut in_j: BTreeMap<usize, usize> = BTreeMap::new();
    let mut edges = Vec::with_capacity(first.len() + second.len());

    let tagged = first
        .iter()
        .map(|e| (*e, EdgeKind::FirstProcess))
        .chain(second.iter().map(|e| (*e, EdgeKind::SecondProcess)));
    for ((f, t), kind) in tagged {
        let fp = layout.pins.get(&f).ok_or_else(|| Error::InvalidCiteList {
            reason: format!("edge source {f} missing from layout"),
        })?;
        let tp = layout.pins.get(&t).ok_or_else(|| Error::InvalidCiteList {
            reason: format!("edge target {t} missing from layout"),
        })?;
        let jf = out_j.entry(f).or_insert(0);
        let s = attach_point(&fp.blue_box, fp.side, *jf, out_m[&f]);
        *jf += 1;
        let jt = in_j.entry(t).or_insert(0);
        let e = attach_point(&tp.red_box, tp.side, *jt, in_m[&t]);
        *jt += 1;

        let pts = match kind {
            EdgeKind::FirstProcess => {
                // Same-side wires hug their own side; crossing wires prefer
                // the middle of the box.
                let prefer = match (fp.side, tp.side) {
                    (Side::Up, Side::Up) | (Side::Right, Side::Right) => BIG_HI - delta,
                    (Side::Down, Side::Down) | (Side::Left, Side::Left) => BIG_LO + delta,
                    _ => 0.5,
                };
                route_first(s, e, fp.side.axis_class() == 0, prefer, delta, &registry)
            }
            EdgeKind::SecondProcess => {
                route_second(s, e, fp.side.axis_class() == 0, delta, &registry)
            }
        }
        .or_else(|| grid_route(s, e, delta, &registry))
        .ok_or(Error::LaneExhausted { from: f, to: t })?;

        registry.commit(&segs_of(&pts));
        edges.push(RoutedEdge {
            from_ni: f,
            to_ni: t,
            kind,
            polyline: dedup_points(pts),
            color: colors[position[&f]],
        });
    }
    Ok(edges)
}
