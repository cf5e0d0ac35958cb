//! External-OCR adapter and PNG plumbing for region blanking. The engine
//! is any executable invoked as `<cmd> <image_path> <lang,...>` that
//! prints one region per line: `x0 y0 x1 y1 <text...> <confidence>`.

use std::path::Path;
use std::process::Command;

use anyhow::{bail, Context, Result};
use citemap_core::overlay::{parse_ocr_regions, OcrRegion, PixelBuf};
use image::{ImageBuffer, Rgb, RgbImage};

/// Runs the configured engine on one image and parses its region output,
/// order preserved.
pub fn detect_text_regions(
    engine_cmd: &str,
    image_path: &Path,
    languages: &[String],
) -> Result<Vec<OcrRegion>> {
    if engine_cmd.trim().is_empty() {
        bail!("no OCR engine configured; pass --engine-cmd <command>");
    }
    let output = Command::new(engine_cmd)
        .arg(image_path)
        .arg(languages.join(","))
        .output()
        .with_context(|| {
            format!("cannot run OCR engine '{engine_cmd}'; pass --engine-cmd <command>")
        })?;
    if !output.status.success() {
        bail!(
            "OCR engine '{engine_cmd}' failed with {}: {}",
            output.status,
            String::from_utf8_lossy(&output.stderr).trim()
        );
    }
    let stdout = String::from_utf8_lossy(&output.stdout);
    Ok(parse_ocr_regions(&stdout)?)
}

/// Loads a PNG into the pixel buffer the core blanking op works on.
pub fn load_png(path: &Path) -> Result<PixelBuf> {
    let img = image::open(path)
        .with_context(|| format!("cannot open image {}", path.display()))?
        .to_rgb8();
    let (width, height) = img.dimensions();
    let mut buf = PixelBuf::filled(width, height, [0, 0, 0]);
    for (x, y, px) in img.enumerate_pixels() {
        buf.set(x, y, px.0);
    }
    Ok(buf)
}

pub fn save_png(path: &Path, buf: &PixelBuf) -> Result<()> {
    let img: RgbImage = ImageBuffer::from_fn(buf.width, buf.height, |x, y| Rgb(buf.get(x, y)));
    img.save(path)
        .with_context(|| format!("cannot write image {}", path.display()))
}
