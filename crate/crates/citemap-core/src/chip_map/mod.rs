//! Chip-and-pin citation map: items sit as pin pairs (red = incoming,
//! blue = outgoing) on the four sides of a central square; every citation
//! is a colored rectilinear wire from the source's blue pin to the target's
//! red pin.
//!
//! Pipeline: [`generate_test_data`] (optional) → [`build_layout`] →
//! [`classify_edges`] → [`route_edges`] → [`render_chip_map`]. Every stage
//! is deterministic; the whole chain renders byte-identically for equal
//! inputs.

mod color;
mod layout;
mod render;
mod route;
mod testdata;

pub use color::allocate_colors;
pub use layout::build_layout;
pub use render::render_chip_map;
pub use route::{classify_edges, route_edges};
pub use testdata::generate_test_data;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::geom::{Point, Rect};
use crate::{Error, Result};

/// Which side of the big box an item's pins sit on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Up,
    Down,
    Left,
    Right,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Up, Side::Down, Side::Left, Side::Right];

    /// Sides split into two axis classes; wires between classes need a
    /// 90° transfer point (second process).
    pub fn axis_class(self) -> u8 {
        match self {
            Side::Up | Side::Down => 0,
            Side::Left | Side::Right => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Up => "up",
            Side::Down => "down",
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Citation relationships: one `(ni, cites)` entry per paper.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CiteList {
    pub items: Vec<(usize, Vec<usize>)>,
}

impl CiteList {
    /// Checks the structural invariants: unique `ni`, cited indices exist,
    /// no self-citations, no duplicate targets per item.
    pub fn validate(&self) -> Result<()> {
        let mut seen: Vec<usize> = Vec::new();
        for (ni, _) in &self.items {
            if seen.contains(ni) {
                return Err(Error::InvalidCiteList { reason: format!("duplicate item {ni}") });
            }
            seen.push(*ni);
        }
        for (ni, cites) in &self.items {
            let mut targets: Vec<usize> = Vec::new();
            for c in cites {
                if c == ni {
                    return Err(Error::InvalidCiteList {
                        reason: format!("item {ni} cites itself"),
                    });
                }
                if !seen.contains(c) {
                    return Err(Error::InvalidCiteList {
                        reason: format!("item {ni} cites unknown item {c}"),
                    });
                }
                if targets.contains(c) {
                    return Err(Error::InvalidCiteList {
                        reason: format!("item {ni} cites {c} twice"),
                    });
                }
                targets.push(*c);
            }
        }
        Ok(())
    }

    pub fn total_citations(&self) -> usize {
        self.items.iter().map(|(_, c)| c.len()).sum()
    }
}

/// Rendering and layout knobs.
#[derive(Debug, Clone, PartialEq)]
pub struct ChipStyle {
    /// Arrow-head scale.
    pub zoom_arrow: f64,
    /// Wire stroke-width scale.
    pub zoom_line_w: f64,
    /// Requested pin width in unit coordinates; the layout shrinks it when
    /// a side is too crowded for disjoint pins.
    pub citebox_width: f64,
    pub image_width_px: u32,
    pub image_height_px: u32,
    /// Seed echoed into test-data generation.
    pub seed: u64,
}

impl Default for ChipStyle {
    fn default() -> Self {
        Self {
            zoom_arrow: 1.0,
            zoom_line_w: 1.0,
            citebox_width: 0.04,
            image_width_px: 1000,
            image_height_px: 1000,
            seed: 0,
        }
    }
}

impl ChipStyle {
    fn validate(&self) -> Result<()> {
        if !(self.zoom_arrow > 0.0 && self.zoom_line_w > 0.0 && self.citebox_width > 0.0) {
            return Err(Error::InvalidArgument {
                reason: String::from("chip style scales must be > 0"),
            });
        }
        Ok(())
    }
}

/// An item's pin pair. Red receives citations (in), blue emits them (out).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ItemPins {
    pub side: Side,
    pub red_box: Rect,
    pub blue_box: Rect,
}

/// Overpic label anchor for one item.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelAnchor {
    pub ni: usize,
    pub x_frac: f64,
    pub y_frac: f64,
    /// 0 or -90 degrees.
    pub rotation: i32,
}

/// Full positioned layout.
#[derive(Debug, Clone, PartialEq)]
pub struct ChipLayout {
    pub big_box: Rect,
    /// Per-item pins, keyed by `ni`.
    pub pins: BTreeMap<usize, ItemPins>,
    /// Label anchors per side, in placement order: up, down, left, right.
    pub four_sides: Vec<(Side, Vec<LabelAnchor>)>,
    /// Effective pin width after crowding adjustment.
    pub citebox_width: f64,
}

impl ChipLayout {
    pub fn side_counts(&self) -> BTreeMap<Side, usize> {
        let mut counts = BTreeMap::new();
        for side in Side::ALL {
            counts.insert(side, 0);
        }
        for pins in self.pins.values() {
            *counts.get_mut(&pins.side).unwrap() += 1;
        }
        counts
    }
}

/// Which routing family a wire belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// Endpoint sides share an axis class; routed through one probed lane.
    FirstProcess,
    /// Endpoint sides cross axis classes; routed with a transfer point.
    SecondProcess,
}

/// One routed wire.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutedEdge {
    pub from_ni: usize,
    pub to_ni: usize,
    pub kind: EdgeKind,
    /// Rectilinear chain from the blue pin of `from_ni` to the red pin of
    /// `to_ni`.
    pub polyline: Vec<Point>,
    pub color: [u8; 3],
}

/// Everything the chip-map pipeline produces for one cite list.
#[derive(Debug, Clone, PartialEq)]
pub struct ChipMap {
    pub layout: ChipLayout,
    pub edges: Vec<RoutedEdge>,
    pub colors: Vec<[u8; 3]>,
    pub svg: String,
}

/// Runs the full pipeline: layout, colors, classification, routing,
/// rendering.
pub fn build_chip_map(cite_list: &CiteList, style: &ChipStyle) -> Result<ChipMap> {
    cite_list.validate()?;
    style.validate()?;
    let layout = build_layout(cite_list, style)?;
    let colors = allocate_colors(cite_list.items.len().max(1))?;
    let (first, second) = classify_edges(cite_list, &layout);
    let edges = route_edges(&first, &second, cite_list, &layout, &colors)?;
    let svg = render_chip_map(&layout, &edges, style);
    Ok(ChipMap { layout, edges, colors, svg })
}
