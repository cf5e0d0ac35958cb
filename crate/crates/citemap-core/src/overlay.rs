//! Overpic overlay generation and pixel-region blanking.
//!
//! `generate_overpic` prints each coordinate as the plain product
//! `frac * width_frac` under Rust's shortest round-trip float formatting —
//! no rounding or zero-trimming beyond that, so anchor fractions chosen as
//! `target / width` reproduce `target` exactly.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

/// Label rotation; the only two orientations the overlay emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rotation {
    None,
    /// Emitted as `\rotatebox{-90}{...}`.
    Minus90,
}

/// One text item placed at fractional coordinates of the image width.
#[derive(Debug, Clone, PartialEq)]
pub struct CoorText {
    pub x_frac: f64,
    pub y_frac: f64,
    pub text: String,
    pub rotation: Rotation,
    /// Prefix the body with `\small `.
    pub small: bool,
}

impl CoorText {
    pub fn new(x_frac: f64, y_frac: f64, text: &str, rotation: Rotation) -> Self {
        Self { x_frac, y_frac, text: text.to_string(), rotation, small: false }
    }
}

/// Emits the overpic environment: one `\put` line per item between the
/// `\begin{overpic}`/`\end{overpic}` pair (line count = items + 2).
pub fn generate_overpic(image_path: &str, width_frac: f64, items: &[CoorText]) -> Result<String> {
    if !(width_frac > 0.0 && width_frac <= 1.0) {
        return Err(Error::InvalidArgument {
            reason: format!("width_frac must be in (0, 1], got {width_frac}"),
        });
    }
    let mut out = format!("\\begin{{overpic}}[width={width_frac}\\textwidth]{{{image_path}}}\n");
    for item in items {
        let x = item.x_frac * width_frac;
        let y = item.y_frac * width_frac;
        let body = match item.rotation {
            Rotation::None => item.text.clone(),
            Rotation::Minus90 => format!("\\rotatebox{{-90}}{{{}}}", item.text),
        };
        let small = if item.small { "\\small " } else { "" };
        out.push_str(&format!("\\put({x}\\textwidth, {y}\\textwidth){{{small}{body}}}\n"));
    }
    out.push_str("\\end{overpic}\n");
    Ok(out)
}

/// Integer pixel rectangle, end-exclusive: covers `x0..x1` × `y0..y1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PixelBox {
    pub x0: u32,
    pub y0: u32,
    pub x1: u32,
    pub y1: u32,
}

/// Row-major RGB8 pixel buffer; the CLI converts to and from PNG.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelBuf {
    pub width: u32,
    pub height: u32,
    pub data: Vec<u8>,
}

impl PixelBuf {
    pub fn filled(width: u32, height: u32, rgb: [u8; 3]) -> Self {
        let mut data = Vec::with_capacity((width * height * 3) as usize);
        for _ in 0..width * height {
            data.extend_from_slice(&rgb);
        }
        Self { width, height, data }
    }

    pub fn get(&self, x: u32, y: u32) -> [u8; 3] {
        let i = ((y * self.width + x) * 3) as usize;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn set(&mut self, x: u32, y: u32, rgb: [u8; 3]) {
        let i = ((y * self.width + x) * 3) as usize;
        self.data[i..i + 3].copy_from_slice(&rgb);
    }
}

/// Paints every pixel inside any box with `fill`, leaving the rest
/// untouched. A box outside the image bounds is an error naming the box.
pub fn blank_regions(image: &mut PixelBuf, boxes: &[PixelBox], fill: [u8; 3]) -> Result<()> {
    for b in boxes {
        if !(b.x0 < b.x1 && b.y0 < b.y1 && b.x1 <= image.width && b.y1 <= image.height) {
            return Err(Error::BoxOutOfBounds {
                x0: b.x0,
                y0: b.y0,
                x1: b.x1,
                y1: b.y1,
                width: image.width,
                height: image.height,
            });
        }
    }
    for b in boxes {
        for y in b.y0..b.y1 {
            for x in b.x0..b.x1 {
                image.set(x, y, fill);
            }
        }
    }
    Ok(())
}

/// One parsed OCR region: box, recognized text, confidence.
#[derive(Debug, Clone, PartialEq)]
pub struct OcrRegion {
    pub pixel_box: PixelBox,
    pub text: String,
    pub confidence: f64,
}

/// Parses OCR engine output, one region per line:
/// `x0 y0 x1 y1 <text...> <confidence>`. Blank lines are skipped; anything
/// else malformed is an error carrying the offending line.
pub fn parse_ocr_regions(output: &str) -> Result<Vec<OcrRegion>> {
    let mut regions = Vec::new();
    for line in output.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::BadOcrLine { line: line.to_string() };
        if tokens.len() < 6 {
            return Err(bad());
        }
        let coord = |i: usize| tokens[i].parse::<u32>().map_err(|_| bad());
        let (x0, y0, x1, y1) = (coord(0)?, coord(1)?, coord(2)?, coord(3)?);
        let confidence: f64 = tokens[tokens.len() - 1].parse().map_err(|_| bad())?;
        if x0 >= x1 || y0 >= y1 {
            return Err(bad());
        }
        regions.push(OcrRegion {
            pixel_box: PixelBox { x0, y0, x1, y1 },
            text: tokens[4..tokens.len() - 1].join(" "),
            confidence,
        });
    }
    Ok(regions)
}
