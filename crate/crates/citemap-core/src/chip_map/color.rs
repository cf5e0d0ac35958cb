//! Wire color allocation: items are split round-robin-first into the red,
//! green, and blue families; within a family the channel value ramps up to
//! 255 in equal integer steps, so every color is distinct and nonzero.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Allocates `n` distinct RGB colors grouped by channel family.
///
/// Family sizes are as equal as possible with the remainder going to red
/// then green. Member `k` of a family with `m` members gets channel value
/// `floor(255 * (k + 1) / m)`; the other two channels stay zero. Strictly
/// increasing values require `m <= 255`, hence the 765-item ceiling.
pub fn allocate_colors(n: usize) -> Result<Vec<[u8; 3]>> {
    if n == 0 {
        return Err(Error::InvalidArgument { reason: "color count must be > 0".into() });
    }
    if n > 765 {
        return Err(Error::TooManyColors { n });
    }
    let sizes = [n.div_ceil(3), (n + 1) / 3, n / 3];
    let mut colors = Vec::with_capacity(n);
    for (channel, &m) in sizes.iter().enumerate() {
        for k in 0..m {
            let value = (255 * (k + 1) / m) as u8;
            let mut rgb = [0u8; 3];
            rgb[channel] = value;
            colors.push(rgb);
        }
    }
    Ok(colors)
}

/// `#RRGGBB` form used by the SVG renderer.
pub fn hex(rgb: [u8; 3]) -> alloc::string::String {
    alloc::format!("#{:02X}{:02X}{:02X}", rgb[0], rgb[1], rgb[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn single_color_is_pure_red() {
        assert_eq!(allocate_colors(1).unwrap(), vec![[255, 0, 0]]);
    }

    #[test]
    fn three_colors_are_the_pure_primaries() {
        assert_eq!(
            allocate_colors(3).unwrap(),
            vec![[255, 0, 0], [0, 255, 0], [0, 0, 255]]
        );
    }

    #[test]
    fn six_colors_ramp_within_families() {
        let got: Vec<_> = allocate_colors(6).unwrap().iter().map(|&c| hex(c)).collect();
        assert_eq!(got, vec!["#7F0000", "#FF0000", "#007F00", "#00FF00", "#00007F", "#0000FF"]);
    }

    #[test]
    fn remainder_goes_to_red_then_green() {
        let four = allocate_colors(4).unwrap();
        assert_eq!(four.iter().filter(|c| c[0] > 0).count(), 2);
        assert_eq!(four.iter().filter(|c| c[1] > 0).count(), 1);
        assert_eq!(four.iter().filter(|c| c[2] > 0).count(), 1);
        let five = allocate_colors(5).unwrap();
        assert_eq!(five.iter().filter(|c| c[0] > 0).count(), 2);
        assert_eq!(five.iter().filter(|c| c[1] > 0).count(), 2);
        assert_eq!(five.iter().filter(|c| c[2] > 0).count(), 1);
    }

    #[test]
    fn colors_are_distinct_and_nonzero_up_to_ceiling() {
        for n in (1..=64).chain([254, 255, 256, 509, 764, 765]) {
            let colors = allocate_colors(n).unwrap();
            assert_eq!(colors.len(), n);
            let mut sorted = colors.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), n, "duplicate color for n={n}");
            assert!(colors.iter().all(|&c| c != [0, 0, 0]));
        }
    }

    #[test]
    fn over_ceiling_is_an_error() {
        assert!(matches!(allocate_colors(766), Err(Error::TooManyColors { n: 766 })));
        assert!(allocate_colors(0).is_err());
    }
}
