//! SVG rendering of a routed chip map. Output is a pure function of the
//! inputs — rendering twice gives byte-identical markup.

use alloc::string::String;
use alloc::vec::Vec;

use crate::svg::SvgBuilder;

use super::color::hex;
use super::{ChipLayout, ChipStyle, RoutedEdge};

/// Arrow length as a fraction of the pin width, before `zoom_arrow`.
const ARROW_FRACTION: f64 = 0.6;
/// Wire stroke width in pixels, before `zoom_line_w`.
const WIRE_STROKE: f64 = 2.0;

/// Draws the big box, every item's red/blue pin pair, and the routed
/// wires with an arrow head at the target end.
pub fn render_chip_map(layout: &ChipLayout, edges: &[RoutedEdge], style: &ChipStyle) -> String {
    let mut svg = SvgBuilder::new(style.image_width_px, style.image_height_px);
    svg.rect(&layout.big_box, "none", "#000000", 2.0);
    for pins in layout.pins.values() {
        svg.rect(&pins.red_box, "#FF0000", "none", 0.0);
        svg.rect(&pins.blue_box, "#0000FF", "none", 0.0);
    }
    let stroke = WIRE_STROKE * style.zoom_line_w;
    let arrow = layout.citebox_width * ARROW_FRACTION * style.zoom_arrow;
    for edge in edges {
        let color = hex(edge.color);
        let pts: Vec<(f64, f64)> = edge.polyline.iter().map(|p| (p.x, p.y)).collect();
        svg.polyline(&pts, &color, stroke);
        if pts.len() >= 2 {
            svg.arrow_head(pts[pts.len() - 2], pts[pts.len() - 1], arrow, &color);
        }
    }
    svg.finish()
}

#[cfg(test)]
mod tests {
    use crate::chip_map::tests::cite_list;
    use crate::chip_map::{build_chip_map, generate_test_data, ChipStyle};

    #[test]
    fn element_counts_match_items_and_edges() {
        let list = generate_test_data(10, 3, 4).unwrap();
        let map = build_chip_map(&list, &ChipStyle::default()).unwrap();
        assert_eq!(map.svg.matches("<rect").count(), 1 + 2 * 10);
        assert_eq!(map.svg.matches("<polyline").count(), map.edges.len());
        assert_eq!(map.svg.matches("<polygon").count(), map.edges.len());
        let rect_fills = |color: &str| {
            map.svg
                .lines()
                .filter(|l| l.starts_with("<rect") && l.contains(&format!("fill=\"{color}\"")))
                .count()
        };
        assert_eq!(rect_fills("#FF0000"), 10);
        assert_eq!(rect_fills("#0000FF"), 10);
    }

    #[test]
    fn arrow_head_tip_sits_on_the_red_attachment() {
        // Two items: wire ends at (0.48, 0.85) → pixel (480, 150).
        let list = cite_list(&[(1, &[2]), (2, &[])]);
        let map = build_chip_map(&list, &ChipStyle::default()).unwrap();
        assert!(map.svg.contains("<polygon points=\"480.0000,150.0000"));
    }

    #[test]
    fn style_zooms_scale_stroke_and_arrow() {
        let list = cite_list(&[(1, &[2]), (2, &[])]);
        let base = build_chip_map(&list, &ChipStyle::default()).unwrap();
        let zoomed = build_chip_map(
            &list,
            &ChipStyle { zoom_line_w: 2.5, ..ChipStyle::default() },
        )
        .unwrap();
        assert!(base.svg.contains("stroke-width=\"2\""));
        assert!(zoomed.svg.contains("stroke-width=\"5\""));
        assert_ne!(base.svg, zoomed.svg);
    }

    #[test]
    fn canvas_size_follows_style() {
        let list = cite_list(&[(1, &[])]);
        let style = ChipStyle { image_width_px: 640, image_height_px: 480, ..Default::default() };
        let map = build_chip_map(&list, &style).unwrap();
        assert!(map.svg.starts_with(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\""
        ));
    }
}
