//! Layered flow-chart layout and rendering.
//!
//! Levels stack top (level 0) to bottom in the unit space; nodes within a
//! level sit left-to-right in input order, centered as a group. Edges run
//! source-bottom to target-top as rectilinear polylines. Rendering returns
//! per-node label anchors for the overpic overlay, rotated -90° when the
//! box is taller than wide (the tall-pin look).

use alloc::string::String;
use alloc::vec::Vec;

use crate::geom::Rect;
use crate::svg::SvgBuilder;
use crate::{Error, Result};

/// Flow description: nodes with optional explicit levels, plus edges that
/// must point from a lower to a higher level.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowSpec {
    pub nodes: Vec<FlowNode>,
    pub edges: Vec<(String, String)>,
    /// Box size override (w, h) in unit space; `None` picks a size that
    /// keeps rows clear of each other.
    pub box_size: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowNode {
    pub id: String,
    /// Absent levels are inferred by longest-path layering over the edges.
    pub level: Option<u32>,
}

/// Positioned boxes and connector polylines, ready to render.
#[derive(Debug, Clone, PartialEq)]
pub struct DrawData {
    /// (id, box), in node input order.
    pub boxes: Vec<(String, Rect)>,
    /// Rectilinear point chains, one per edge, ending at the arrow head.
    pub lines: Vec<Vec<(f64, f64)>>,
}

/// Label anchor for one node: fractions of the unit canvas plus rotation
/// in degrees (0 or -90).
#[derive(Debug, Clone, PartialEq)]
pub struct Anchor {
    pub id: String,
    pub x_frac: f64,
    pub y_frac: f64,
    pub rotation: i32,
}

fn resolve_levels(spec: &FlowSpec) -> Result<Vec<u32>> {
    let index_of = |id: &str| spec.nodes.iter().position(|n| n.id == id);
    for (from, to) in &spec.edges {
        for id in [from, to] {
            if index_of(id).is_none() {
                return Err(Error::InvalidFlowSpec {
                    reason: alloc::format!("edge references unknown node '{id}'"),
                });
            }
        }
    }
    if spec.nodes.iter().all(|n| n.level.is_some()) {
        return Ok(spec.nodes.iter().map(|n| n.level.unwrap()).collect());
    }

    // Longest-path layering for nodes without explicit levels; explicit
    // levels are kept as lower bounds. Cycles cannot be layered.
    let n = spec.nodes.len();
    let mut levels: Vec<u32> = spec.nodes.iter().map(|nd| nd.level.unwrap_or(0)).collect();
    let mut changed = true;
    let mut rounds = 0usize;
    while changed {
        changed = false;
        rounds += 1;
        if rounds > n + 1 {
            let culprit = index_of(&spec.edges[0].0).unwrap();
            return Err(Error::FlowCycle { node: spec.nodes[culprit].id.clone() });
        }
        for (from, to) in &spec.edges {
            let (fi, ti) = (index_of(from).unwrap(), index_of(to).unwrap());
            if levels[ti] <= levels[fi] {
                levels[ti] = levels[fi] + 1;
                changed = true;
            }
        }
    }
    Ok(levels)
}

/// Computes boxes and connector lines for a flow description.
/// Errors list edges that run level-downward or sideways, and cycles when
/// levels must be inferred.
pub fn get_draw_data(spec: &FlowSpec) -> Result<DrawData> {
    let mut seen: Vec<&str> = Vec::new();
    for node in &spec.nodes {
        if seen.contains(&node.id.as_str()) {
            return Err(Error::InvalidFlowSpec {
                reason: alloc::format!("duplicate node id '{}'", node.id),
            });
        }
        seen.push(&node.id);
    }
    let levels = resolve_levels(spec)?;

    let mut offenders: Vec<String> = Vec::new();
    for (from, to) in &spec.edges {
        let fi = spec.nodes.iter().position(|n| n.id == *from).unwrap();
        let ti = spec.nodes.iter().position(|n| n.id == *to).unwrap();
        if levels[fi] >= levels[ti] {
            offenders.push(alloc::format!("{from}->{to}"));
        }
    }
    if !offenders.is_empty() {
        return Err(Error::InvalidFlowSpec {
            reason: alloc::format!("edges must descend a level: {}", offenders.join(", ")),
        });
    }

    // Dense level ranks, top row = rank 0.
    let mut distinct: Vec<u32> = levels.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let row_count = distinct.len().max(1);

    // Row pitch: 0.325 of the canvas until rows would collide, then
    // compressed to fit.
    let pitch = (0.7 / (row_count.saturating_sub(1).max(1) as f64)).min(0.325);
    let row_top = |rank: usize| 0.935 - pitch * rank as f64;

    let (box_w_default, box_h) = match spec.box_size {
        Some((w, h)) => (w, h),
        None => (0.055, (0.8 * pitch).min(0.22)),
    };

    let mut boxes: Vec<(String, Rect)> = Vec::new();
    for (rank, &level) in distinct.iter().enumerate() {
        let members: Vec<usize> =
            (0..spec.nodes.len()).filter(|&i| levels[i] == level).collect();
        let k = members.len();
        let slot = (0.92 / k as f64).min(0.18);
        let y1 = row_top(rank);
        let y0 = y1 - box_h;
        for (j, &i) in members.iter().enumerate() {
            let cx = 0.5 + (j as f64 - (k as f64 - 1.0) / 2.0) * slot;
            let w = if spec.box_size.is_some() { box_w_default } else { box_w_default.min(0.6 * slot) };
            boxes.push((spec.nodes[i].id.clone(), Rect::new(cx - w / 2.0, y0, cx + w / 2.0, y1)));
        }
    }
    // Restore node input order for the `boxes` list.
    boxes.sort_by_key(|(id, _)| spec.nodes.iter().position(|n| n.id == *id).unwrap());

    let rect_of = |id: &str| boxes.iter().find(|(bid, _)| bid == id).map(|(_, r)| *r).unwrap();
    let mut lines = Vec::new();
    for (from, to) in &spec.edges {
        let s = rect_of(from);
        let t = rect_of(to);
        let sx = (s.x0 + s.x1) / 2.0;
        let tx = (t.x0 + t.x1) / 2.0;
        let (sy, ty) = (s.y0, t.y1);
        if crate::geom::fabs(sx - tx) <= crate::geom::EPS {
            lines.push(alloc::vec![(sx, sy), (tx, ty)]);
        } else {
            let my = (sy + ty) / 2.0;
            lines.push(alloc::vec![(sx, sy), (sx, my), (tx, my), (tx, ty)]);
        }
    }
    Ok(DrawData { boxes, lines })
}

/// Renders the draw data to an SVG string and returns the label anchors.
/// Output is deterministic: identical data renders byte-identically.
pub fn render_flow_chart(data: &DrawData, width_px: u32, height_px: u32) -> (String, Vec<Anchor>) {
    let mut svg = SvgBuilder::new(width_px, height_px);
    for (_, rect) in &data.boxes {
        svg.rect(rect, "none", "#000000", 1.5);
    }
    for line in &data.lines {
        svg.polyline(line, "#000000", 1.5);
        if line.len() >= 2 {
            let end = line[line.len() - 1];
            let prev = line[line.len() - 2];
            svg.arrow_head(prev, end, 0.012, "#000000");
        }
    }
    let anchors: Vec<Anchor> = data
        .boxes
        .iter()
        .map(|(id, rect)| Anchor {
            id: id.clone(),
            x_frac: rect.x0 + 0.55 * rect.width(),
            y_frac: rect.y1 - 0.01,
            rotation: if rect.height() > rect.width() { -90 } else { 0 },
        })
        .collect();
    (svg.finish(), anchors)
}
