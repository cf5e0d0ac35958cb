//! PDF → text-span adapter over `lopdf`. Walks each page's content
//! stream with a minimal text-state machine (enough for Tf/Td/TD/Tm/T*
//! positioning and Tj/TJ/'/" shows) and emits one span per show
//! operation. Coordinates flip from PDF user space (y up) to the span
//! convention (y down from the page top); widths are size-based
//! estimates, which suffices for the reading-order and font-size
//! heuristics downstream.

use std::collections::HashMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use citemap_core::refs::TextSpan;
use lopdf::{Document, Encoding, Object};

const DEFAULT_PAGE_HEIGHT: f64 = 792.0;
/// Crude average glyph width as a fraction of font size.
const WIDTH_PER_CHAR: f64 = 0.5;

fn to_f64(obj: &Object) -> Option<f64> {
    match obj {
        Object::Integer(i) => Some(*i as f64),
        Object::Real(r) => Some(f64::from(*r)),
        _ => None,
    }
}

fn page_height(doc: &Document, page_id: lopdf::ObjectId) -> f64 {
    let mut id = Some(page_id);
    // MediaBox may be inherited from an ancestor Pages node.
    while let Some(cur) = id {
        let Ok(dict) = doc.get_object(cur).and_then(Object::as_dict) else { break };
        if let Ok(mb) = dict.get(b"MediaBox").and_then(Object::as_array) {
            if mb.len() == 4 {
                if let (Some(y0), Some(y1)) = (to_f64(&mb[1]), to_f64(&mb[3])) {
                    return y1 - y0;
                }
            }
        }
        id = dict
            .get(b"Parent")
            .ok()
            .and_then(|p| p.as_reference().ok());
    }
    DEFAULT_PAGE_HEIGHT
}

struct TextState {
    font: Vec<u8>,
    tf_size: f64,
    /// Vertical scale of the current text matrix.
    tm_scale: f64,
    x: f64,
    y: f64,
    leading: f64,
}

impl TextState {
    fn new() -> Self {
        Self { font: Vec::new(), tf_size: 0.0, tm_scale: 1.0, x: 0.0, y: 0.0, leading: 0.0 }
    }

    fn effective_size(&self) -> f64 {
        (self.tf_size * self.tm_scale).abs()
    }
}

fn shown_bytes(operands: &[Object]) -> Vec<u8> {
    let mut bytes = Vec::new();
    for op in operands {
        match op {
            Object::String(s, _) => bytes.extend_from_slice(s),
            Object::Array(items) => {
                for item in items {
                    if let Object::String(s, _) = item {
                        bytes.extend_from_slice(s);
                    }
                }
            }
            _ => {}
        }
    }
    bytes
}

/// Extracts spans from every page of a PDF, page order preserved,
/// 0-based page numbers.
pub fn extract_pdf_spans(path: &Path) -> Result<Vec<TextSpan>> {
    let doc = Document::load(path)
        .with_context(|| format!("cannot load PDF {}", path.display()))?;
    if doc.is_encrypted() {
        bail!("PDF {} is encrypted", path.display());
    }
    let mut spans = Vec::new();
    for (page_no, page_id) in doc.get_pages() {
        let height = page_height(&doc, page_id);
        let content = doc
            .get_and_decode_page_content(page_id)
            .with_context(|| format!("{}: cannot decode page {page_no} content", path.display()))?;
        let mut encodings: HashMap<Vec<u8>, Encoding> = HashMap::new();
        if let Ok(fonts) = doc.get_page_fonts(page_id) {
            for (name, font) in fonts {
                if let Ok(enc) = font.get_font_encoding(&doc) {
                    encodings.insert(name, enc);
                }
            }
        }
        let mut st = TextState::new();
        for op in &content.operations {
            let num = |i: usize| to_f64(op.operands.get(i).unwrap_or(&Object::Null));
            match op.operator.as_str() {
                "BT" => {
                    st = TextState { font: st.font.clone(), tf_size: st.tf_size, ..TextState::new() }
                }
                "Tf" => {
                    if let Some(Object::Name(name)) = op.operands.first() {
                        st.font = name.clone();
                    }
                    st.tf_size = num(1).unwrap_or(st.tf_size);
                }
                "Td" => {
                    st.x += num(0).unwrap_or(0.0);
                    st.y += num(1).unwrap_or(0.0);
                }
                "TD" => {
                    let ty = num(1).unwrap_or(0.0);
                    st.x += num(0).unwrap_or(0.0);
                    st.y += ty;
                    st.leading = -ty;
                }
                "TL" => st.leading = num(0).unwrap_or(st.leading),
                "Tm" => {
                    st.tm_scale = num(3).unwrap_or(1.0);
                    st.x = num(4).unwrap_or(st.x);
                    st.y = num(5).unwrap_or(st.y);
                }
                "T*" => st.y -= st.leading,
                "Tj" | "TJ" | "'" | "\"" => {
                    if op.operator == "'" || op.operator == "\"" {
                        st.y -= st.leading;
                    }
                    let bytes = shown_bytes(&op.operands);
                    if bytes.is_empty() {
                        continue;
                    }
                    let text = match encodings.get(&st.font) {
                        Some(enc) => Document::decode_text(enc, &bytes)
                            .unwrap_or_else(|_| String::from_utf8_lossy(&bytes).into_owned()),
                        None => String::from_utf8_lossy(&bytes).into_owned(),
                    };
                    if text.split_whitespace().next().is_none() {
                        continue;
                    }
                    let size = st.effective_size().max(1.0);
                    let y_top = height - st.y - size;
                    let width = (text.chars().count() as f64 * size * WIDTH_PER_CHAR).max(1.0);
                    spans.push(TextSpan {
                        page: page_no - 1,
                        font_size: size,
                        text,
                        bbox: [st.x, y_top, st.x + width, y_top + size],
                    });
                }
                _ => {}
            }
        }
    }
    Ok(spans)
}

/// Dispatches on extension: `.spans.jsonl` fixtures parse directly, `.pdf`
/// goes through the adapter.
pub fn extract_spans(path: &Path) -> Result<Vec<TextSpan>> {
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| anyhow!("non-UTF-8 file name: {}", path.display()))?;
    if name.ends_with(".spans.jsonl") {
        crate::fixture::read_spans(path)
    } else if name.to_ascii_lowercase().ends_with(".pdf") {
        extract_pdf_spans(path)
    } else {
        bail!("{}: expected .pdf or .spans.jsonl", path.display());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lopdf::content::{Content, Operation};
    use lopdf::dictionary;
    use lopdf::Stream;

    /// One-page PDF with a large title line and a smaller body line.
    fn write_test_pdf(path: &Path) {
        let mut doc = Document::with_version("1.5");
        let pages_id = doc.new_object_id();
        let font_id = doc.add_object(dictionary! {
            "Type" => "Font",
            "Subtype" => "Type1",
            "BaseFont" => "Helvetica",
        });
        let resources_id = doc.add_object(dictionary! {
            "Font" => dictionary! { "F1" => font_id },
        });
        let content = Content {
            operations: vec![
                Operation::new("BT", vec![]),
                Operation::new("Tf", vec!["F1".into(), 17.into()]),
                Operation::new("Td", vec![72.into(), 700.into()]),
                Operation::new("Tj", vec![Object::string_literal("Big Title Here")]),
                Operation::new("Tf", vec!["F1".into(), 10.into()]),
                Operation::new("TD", vec![0.into(), Object::Real(-20.0)]),
                Operation::new("Tj", vec![Object::string_literal("Ada Lovelace")]),
                Operation::new("T*", vec![]),
                Operation::new("Tj", vec![Object::string_literal("some body text")]),
                Operation::new("ET", vec![]),
            ],
        };
        let content_id =
            doc.add_object(Stream::new(dictionary! {}, content.encode().unwrap()));
        let page_id = doc.add_object(dictionary! {
            "Type" => "Page",
            "Parent" => pages_id,
            "Contents" => content_id,
            "Resources" => resources_id,
            "MediaBox" => vec![0.into(), 0.into(), 612.into(), 792.into()],
        });
        doc.objects.insert(
            pages_id,
            Object::Dictionary(dictionary! {
                "Type" => "Pages",
                "Kids" => vec![page_id.into()],
                "Count" => 1,
            }),
        );
        let catalog_id = doc.add_object(dictionary! {
            "Type" => "Catalog",
            "Pages" => pages_id,
        });
        doc.trailer.set("Root", catalog_id);
        doc.save(path).unwrap();
    }

    #[test]
    fn extracts_positioned_spans_from_a_real_pdf() {
        let dir = tempfile::TempDir::new().unwrap();
        let path = dir.path().join("t.pdf");
        write_test_pdf(&path);
        let spans = extract_pdf_spans(&path).unwrap();
        assert_eq!(spans.len(), 3);
        assert!(spans.iter().all(|s| s.page == 0));
        assert_eq!(spans[0].text, "Big Title Here");
        assert_eq!(spans[0].font_size, 17.0);
        // y flip: Td placed the title at user-space y=700 on a 792pt page.
        assert!((spans[0].bbox[1] - (792.0 - 700.0 - 17.0)).abs() < 1e-9);
        assert_eq!(spans[1].text, "Ada Lovelace");
        // TD moved down 20pt and set the leading T* uses.
        assert!(spans[2].bbox[1] > spans[1].bbox[1]);
        for s in &spans {
            s.validate().unwrap();
        }
    }

    #[test]
    fn title_detection_works_on_adapter_output() {
        let dir = tempfile::TempDir::new().unwrap();
        let path = dir.path().join("t.pdf");
        write_test_pdf(&path);
        let spans = extract_pdf_spans(&path).unwrap();
        let (title, authors) = citemap_core::refs::detect_title_authors(&spans).unwrap();
        assert_eq!(title, "Big Title Here");
        assert_eq!(authors, vec!["Ada Lovelace"]);
    }

    #[test]
    fn dispatch_rejects_unknown_extensions() {
        assert!(extract_spans(Path::new("notes.txt")).is_err());
    }
}
