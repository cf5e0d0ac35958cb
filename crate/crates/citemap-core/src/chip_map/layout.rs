//! Placement: items are ranked by citation degree, dealt onto the four
//! sides of the big box, and given a red/blue pin pair per slot plus a
//! label anchor for overpic output.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::geom::Rect;
use crate::Result;

use super::{ChipLayout, ChipStyle, CiteList, ItemPins, LabelAnchor, Side};

/// Big box corners in unit coordinates (y grows upward).
pub const BIG_LO: f64 = 0.15;
pub const BIG_HI: f64 = 0.85;
/// Gap between a pin box and its label baseline.
const LABEL_GAP: f64 = 0.03;
/// Pins may cover at most this fraction of the slot pitch so neighbouring
/// pairs stay disjoint.
const MAX_PIN_FRACTION: f64 = 0.3;

/// In/out degree per item, in cite-list order.
pub(super) fn degrees(cite_list: &CiteList) -> BTreeMap<usize, (usize, usize)> {
    let mut deg: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (ni, cites) in &cite_list.items {
        deg.entry(*ni).or_insert((0, 0)).1 = cites.len();
    }
    for (_, cites) in &cite_list.items {
        for c in cites {
            deg.entry(*c).or_insert((0, 0)).0 += 1;
        }
    }
    deg
}

/// Deals `n` items onto sides as evenly as possible; the remainder goes to
/// up, then down, then left.
pub(super) fn side_quota(n: usize) -> [usize; 4] {
    let base = n / 4;
    let rem = n % 4;
    [
        base + usize::from(rem >= 1),
        base + usize::from(rem >= 2),
        base + usize::from(rem >= 3),
        base,
    ]
}

/// Builds the positioned layout for a validated cite list.
///
/// Items are sorted by in-degree (desc), then out-degree (desc), then `ni`
/// (asc), and filled side by side in up/down/left/right order. Slot `i` of
/// `k` on a side centers at `BIG_LO + (BIG_HI - BIG_LO) * (i + 0.5) / k`
/// along that side; the red box sits on the lesser-coordinate half, the
/// blue box on the greater, both hanging outside the big box.
pub fn build_layout(cite_list: &CiteList, style: &ChipStyle) -> Result<ChipLayout> {
    cite_list.validate()?;
    let deg = degrees(cite_list);
    let mut order: Vec<usize> = cite_list.items.iter().map(|(ni, _)| *ni).collect();
    order.sort_by(|a, b| {
        let (ain, aout) = deg[a];
        let (bin, bout) = deg[b];
        bin.cmp(&ain).then(bout.cmp(&aout)).then(a.cmp(b))
    });

    let quota = side_quota(order.len());
    let max_on_side = quota.iter().copied().max().unwrap_or(0).max(1);
    let span = BIG_HI - BIG_LO;
    let w = style.citebox_width.min(span / max_on_side as f64 * MAX_PIN_FRACTION);

    let mut pins = BTreeMap::new();
    let mut four_sides: Vec<(Side, Vec<LabelAnchor>)> = Vec::new();
    let mut cursor = order.iter();
    for (side, &count) in Side::ALL.iter().zip(quota.iter()) {
        let mut anchors = Vec::with_capacity(count);
        for slot in 0..count {
            let ni = *cursor.next().expect("quota sums to item count");
            let c = BIG_LO + span * (slot as f64 + 0.5) / count as f64;
            let (red_box, blue_box, anchor) = place(*side, c, w, ni);
            pins.insert(ni, ItemPins { side: *side, red_box, blue_box });
            anchors.push(anchor);
        }
        four_sides.push((*side, anchors));
    }

    Ok(ChipLayout {
        big_box: Rect::new(BIG_LO, BIG_LO, BIG_HI, BIG_HI),
        pins,
        four_sides,
        citebox_width: w,
    })
}

/// Positions one pin pair and its label anchor on `side` at slot center `c`.
///
/// Horizontal sides label with rotation 0 above/below the pins; vertical
/// sides rotate -90 and anchor at the pin pair's top so the text runs
/// downward beside the box.
fn place(side: Side, c: f64, w: f64, ni: usize) -> (Rect, Rect, LabelAnchor) {
    match side {
        Side::Up => (
            Rect::new(c - w, BIG_HI, c, BIG_HI + w),
            Rect::new(c, BIG_HI, c + w, BIG_HI + w),
            LabelAnchor { ni, x_frac: c - w, y_frac: BIG_HI + w + LABEL_GAP, rotation: 0 },
        ),
        Side::Down => (
            Rect::new(c - w, BIG_LO - w, c, BIG_LO),
            Rect::new(c, BIG_LO - w, c + w, BIG_LO),
            LabelAnchor { ni, x_frac: c - w, y_frac: BIG_LO - w - LABEL_GAP, rotation: 0 },
        ),
        Side::Left => (
            Rect::new(BIG_LO - w, c - w, BIG_LO, c),
            Rect::new(BIG_LO - w, c, BIG_LO, c + w),
            LabelAnchor { ni, x_frac: BIG_LO - w - LABEL_GAP, y_frac: c + w, rotation: -90 },
        ),
        Side::Right => (
            Rect::new(BIG_HI, c - w, BIG_HI + w, c),
            Rect::new(BIG_HI, c, BIG_HI + w, c + w),
            LabelAnchor { ni, x_frac: BIG_HI + w + LABEL_GAP, y_frac: c + w, rotation: -90 },
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chip_map::tests::cite_list;
    use crate::chip_map::generate_test_data;
    use crate::geom::fabs;

    #[test]
    fn side_quota_is_balanced() {
        assert_eq!(side_quota(10), [3, 3, 2, 2]);
        assert_eq!(side_quota(4), [1, 1, 1, 1]);
        assert_eq!(side_quota(5), [2, 1, 1, 1]);
        assert_eq!(side_quota(64), [16, 16, 16, 16]);
        for n in 1..=64 {
            let q = side_quota(n);
            assert_eq!(q.iter().sum::<usize>(), n);
            assert!(q.iter().max().unwrap() - q.iter().min().unwrap() <= 1);
        }
    }

    #[test]
    fn most_cited_item_lands_first_on_up() {
        // Item 3 is cited twice, item 2 once; ties broken by ni.
        let list = cite_list(&[(1, &[3, 2]), (2, &[3]), (3, &[]), (4, &[])]);
        let layout = build_layout(&list, &ChipStyle::default()).unwrap();
        assert_eq!(layout.pins[&3].side, Side::Up);
        assert_eq!(layout.pins[&2].side, Side::Down);
        assert_eq!(layout.pins[&1].side, Side::Left);
        assert_eq!(layout.pins[&4].side, Side::Right);
    }

    #[test]
    fn pins_hang_outside_the_big_box() {
        let list = generate_test_data(13, 3, 5).unwrap();
        let layout = build_layout(&list, &ChipStyle::default()).unwrap();
        for pins in layout.pins.values() {
            for b in [pins.red_box, pins.blue_box] {
                let outside = b.x1 <= BIG_LO + 1e-12
                    || b.x0 >= BIG_HI - 1e-12
                    || b.y1 <= BIG_LO + 1e-12
                    || b.y0 >= BIG_HI - 1e-12;
                assert!(outside, "pin box {b:?} intrudes into the big box");
            }
            // Red takes the lesser coordinate along the side axis.
            match pins.side {
                Side::Up | Side::Down => {
                    assert!(pins.red_box.x1 <= pins.blue_box.x0 + 1e-12);
                }
                Side::Left | Side::Right => {
                    assert!(pins.red_box.y1 <= pins.blue_box.y0 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn no_two_pin_boxes_overlap() {
        for n in [1usize, 2, 5, 10, 33, 64] {
            let list = generate_test_data(n, 3.min(n.saturating_sub(1)).max(1), 11).unwrap();
            let layout = build_layout(&list, &ChipStyle::default()).unwrap();
            let mut boxes: Vec<Rect> = Vec::new();
            for pins in layout.pins.values() {
                boxes.push(pins.red_box);
                boxes.push(pins.blue_box);
            }
            for (i, a) in boxes.iter().enumerate() {
                for b in &boxes[i + 1..] {
                    assert!(!a.overlaps(b), "n={n}: {a:?} overlaps {b:?}");
                }
            }
        }
    }

    #[test]
    fn crowded_sides_shrink_the_pin_width() {
        let list = generate_test_data(64, 2, 1).unwrap();
        let layout = build_layout(&list, &ChipStyle::default()).unwrap();
        let pitch = (BIG_HI - BIG_LO) / 16.0;
        assert!(layout.citebox_width <= pitch * 0.3 + 1e-12);
        assert!(layout.citebox_width < 0.04);
    }

    #[test]
    fn label_anchors_match_slot_and_rotation() {
        let list = cite_list(&[(1, &[3, 2]), (2, &[3]), (3, &[]), (4, &[])]);
        let layout = build_layout(&list, &ChipStyle::default()).unwrap();
        let w = layout.citebox_width;
        assert_eq!(layout.four_sides.len(), 4);
        let (side, ups) = &layout.four_sides[0];
        assert_eq!(*side, Side::Up);
        assert_eq!(ups.len(), 1);
        assert_eq!(ups[0].ni, 3);
        assert_eq!(ups[0].rotation, 0);
        assert!(fabs(ups[0].x_frac - (0.5 - w)) < 1e-12);
        assert!(fabs(ups[0].y_frac - (BIG_HI + w + 0.03)) < 1e-12);
        let (side, lefts) = &layout.four_sides[2];
        assert_eq!(*side, Side::Left);
        assert_eq!(lefts[0].rotation, -90);
        assert!(fabs(lefts[0].x_frac - (BIG_LO - w - 0.03)) < 1e-12);
        assert!(fabs(lefts[0].y_frac - (0.5 + w)) < 1e-12);
        // Every item appears exactly once across the four sides.
        let mut all: Vec<usize> =
            layout.four_sides.iter().flat_map(|(_, a)| a.iter().map(|x| x.ni)).collect();
        all.sort_unstable();
        assert_eq!(all, alloc::vec![1, 2, 3, 4]);
    }
}
