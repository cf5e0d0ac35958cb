//! Span fixtures: line-delimited JSON, one text span per line, the
//! PDF-independent input format for reference extraction. Example line:
//! `{"page": 0, "size": 17.2, "text": "NeRF: ...", "bbox": [72, 60, 540, 90]}`.

use std::path::Path;

use anyhow::{Context, Result};
use citemap_core::refs::TextSpan;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct SpanLine {
    page: u32,
    size: f64,
    text: String,
    bbox: [f64; 4],
}

/// Reads a `.spans.jsonl` fixture; malformed lines fail with their
/// 1-based line number, blank lines are skipped.
pub fn read_spans(path: &Path) -> Result<Vec<TextSpan>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read fixture {}", path.display()))?;
    let mut spans = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let raw: SpanLine = serde_json::from_str(line)
            .with_context(|| format!("{}:{}: malformed span line", path.display(), i + 1))?;
        let span = TextSpan {
            page: raw.page,
            font_size: raw.size,
            text: raw.text,
            bbox: raw.bbox,
        };
        span.validate()
            .map_err(|e| anyhow::anyhow!("{}:{}: {e}", path.display(), i + 1))?;
        spans.push(span);
    }
    Ok(spans)
}

/// Writes spans in the fixture format, one compact JSON object per line.
pub fn write_spans(path: &Path, spans: &[TextSpan]) -> Result<()> {
    let mut out = String::new();
    for span in spans {
        let line = SpanLine {
            page: span.page,
            size: span.font_size,
            text: span.text.clone(),
            bbox: span.bbox,
        };
        out.push_str(&serde_json::to_string(&line).expect("span serializes"));
        out.push('\n');
    }
    std::fs::write(path, out)
        .with_context(|| format!("cannot write fixture {}", path.display()))
}
