//! Text-span heuristics: title and author detection on page-one spans and
//! whole-text cross-citation search over a paper corpus.
//!
//! Spans use page coordinates with y growing downward (the usual PDF text
//! extraction convention), so reading order is `(page, y0, x0)` ascending.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::geom::fabs;
use crate::{Error, Result};

/// One extracted text run.
#[derive(Debug, Clone, PartialEq)]
pub struct TextSpan {
    pub page: u32,
    pub font_size: f64,
    pub text: String,
    /// (x0, y0, x1, y1) in page points, y down.
    pub bbox: [f64; 4],
}

impl TextSpan {
    /// Checks the span invariants: positive size, non-degenerate bbox,
    /// text non-empty after whitespace normalization.
    pub fn validate(&self) -> Result<()> {
        if !(self.font_size.is_finite() && self.font_size > 0.0) {
            return Err(Error::InvalidSpan { reason: "font_size must be positive and finite".to_string() });
        }
        if !(self.bbox[0] < self.bbox[2] && self.bbox[1] < self.bbox[3]) {
            return Err(Error::InvalidSpan { reason: "bbox must satisfy x0<x1, y0<y1".to_string() });
        }
        if self.text.split_whitespace().next().is_none() {
            return Err(Error::InvalidSpan { reason: "text empty after normalization".to_string() });
        }
        Ok(())
    }
}

/// Analysis result for one paper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperRecord {
    pub title: String,
    pub file_path: String,
    pub authors: Vec<String>,
    pub cited_titles: Vec<String>,
}

/// Failure report for one corpus member that could not be analyzed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileError {
    pub file_path: String,
    pub message: String,
}

fn reading_order(a: &TextSpan, b: &TextSpan) -> core::cmp::Ordering {
    a.page
        .cmp(&b.page)
        .then(a.bbox[1].partial_cmp(&b.bbox[1]).unwrap_or(core::cmp::Ordering::Equal))
        .then(a.bbox[0].partial_cmp(&b.bbox[0]).unwrap_or(core::cmp::Ordering::Equal))
}

/// Orders spans by font size descending; ties by (page, y0, x0) ascending.
/// The output is a permutation of the input.
pub fn sort_spans(spans: &[TextSpan]) -> Vec<TextSpan> {
    let mut out = spans.to_vec();
    out.sort_by(|a, b| {
        b.font_size
            .partial_cmp(&a.font_size)
            .unwrap_or(core::cmp::Ordering::Equal)
            .then_with(|| reading_order(a, b))
    });
    out
}

fn collapse_whitespace(s: &str) -> String {
    let mut out = String::new();
    for word in s.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

/// True iff `candidate` reads like a person name: 2–4 whitespace-separated
/// tokens, each a capitalized word, an initial like `P.`, or an ALL-CAPS
/// word of length ≥ 2, with no digits or sentence punctuation beyond the
/// initials' dots.
pub fn is_person_name(candidate: &str) -> bool {
    let tokens: Vec<&str> = candidate.split_whitespace().collect();
    if !(2..=4).contains(&tokens.len()) {
        return false;
    }
    tokens.iter().all(|t| token_is_namelike(t))
}

fn token_is_namelike(token: &str) -> bool {
    let chars: Vec<char> = token.chars().collect();
    // Initial: single uppercase letter plus dot.
    if chars.len() == 2 && chars[0].is_uppercase() && chars[1] == '.' {
        return true;
    }
    if chars.iter().any(|c| c.is_ascii_digit() || ".,:;!?".contains(*c)) {
        return false;
    }
    if !chars.iter().all(|c| c.is_alphabetic()) {
        return false;
    }
    if chars.len() >= 2 && chars.iter().all(|c| c.is_uppercase()) {
        return true;
    }
    chars.len() >= 2 && chars[0].is_uppercase() && chars[1..].iter().all(|c| c.is_lowercase())
}

/// Splits an author-region span into name candidates: on commas, the word
/// "and", and superscript affiliation markers; candidates are trimmed of
/// marker characters and may be empty (callers skip empties).
fn candidates_of(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    for chunk in text.split(',') {
        for piece in split_on_and(chunk) {
            let trimmed: &str = piece
                .trim()
                .trim_matches(|c: char| matches!(c, '*' | '∗' | '†' | '‡' | '§' | '¶') || c.is_ascii_digit());
            out.push(trimmed.trim().to_string());
        }
    }
    out
}

fn split_on_and(chunk: &str) -> Vec<String> {
    let mut pieces = Vec::new();
    let mut current = Vec::new();
    for word in chunk.split_whitespace() {
        if word.eq_ignore_ascii_case("and") {
            pieces.push(current.join(" "));
            current = Vec::new();
        } else {
            current.push(word);
        }
    }
    pieces.push(current.join(" "));
    pieces
}

/// Detects the title (concatenation, in reading order, of the page-0 spans
/// sharing the maximum page-0 font size) and the author list (the maximal
/// run of `is_person_name`-passing candidates in the spans after the title
/// block, bounded by the first span containing "abstract" or page end).
pub fn detect_title_authors(spans: &[TextSpan]) -> Result<(String, Vec<String>)> {
    let mut page0: Vec<&TextSpan> = spans.iter().filter(|s| s.page == 0).collect();
    if page0.is_empty() {
        return Err(Error::NoTextOnFirstPage);
    }
    page0.sort_by(|a, b| reading_order(a, b));

    let max_size = page0.iter().map(|s| s.font_size).fold(f64::MIN, f64::max);
    let is_title = |s: &TextSpan| fabs(s.font_size - max_size) <= 1e-6 * max_size;

    let title = collapse_whitespace(
        &page0.iter().filter(|s| is_title(s)).map(|s| s.text.as_str()).collect::<Vec<_>>().join(" "),
    );

    let last_title_pos = page0.iter().rposition(|s| is_title(s)).unwrap_or(0);
    let mut authors: Vec<String> = Vec::new();
    let mut started = false;
    'scan: for span in &page0[last_title_pos + 1..] {
        if span.text.to_lowercase().contains("abstract") {
            break;
        }
        for candidate in candidates_of(&span.text) {
            if candidate.is_empty() {
                continue;
            }
            if is_person_name(&candidate) {
                authors.push(candidate);
                started = true;
            } else if started {
                break 'scan;
            }
        }
    }
    Ok((title, authors))
}

/// Matching normalization: lowercase, punctuation stripped, whitespace
/// collapsed. Titles compare equal iff their normalized forms do.
pub fn normalize(text: &str) -> String {
    let mut out = String::new();
    let mut pending_space = false;
    for c in text.chars() {
        if c.is_alphanumeric() {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            for lc in c.to_lowercase() {
                out.push(lc);
            }
        } else {
            pending_space = true;
        }
    }
    out
}

/// Concatenates span texts in reading order, joining a span that ends with
/// a hyphen to the next one without the hyphen (line-break hyphenation).
fn full_text(spans: &[TextSpan]) -> String {
    let mut ordered: Vec<&TextSpan> = spans.iter().collect();
    ordered.sort_by(|a, b| reading_order(a, b));
    let mut out = String::new();
    for span in ordered {
        let piece = span.text.trim();
        if let Some(stripped) = out.strip_suffix('-') {
            out = stripped.to_string();
        } else if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(piece);
    }
    out
}

/// Analyzes every corpus member and lists, per paper, the other papers whose
/// normalized title occurs inside its normalized full text. Record order
/// follows corpus order. Per-file failures are reported alongside the
/// successful records rather than aborting the fold.
pub fn cross_reference(corpus: &[(Vec<TextSpan>, String)]) -> (Vec<PaperRecord>, Vec<FileError>) {
    let mut analyzed: Vec<(usize, String, Vec<String>, String, String)> = Vec::new();
    let mut errors = Vec::new();
    for (i, (spans, path)) in corpus.iter().enumerate() {
        match detect_title_authors(spans) {
            Ok((title, authors)) => {
                let body = normalize(&full_text(spans));
                analyzed.push((i, title, authors, path.clone(), body));
            }
            Err(e) => errors.push(FileError { file_path: path.clone(), message: e.to_string() }),
        }
    }

    let records = analyzed
        .iter()
        .map(|(i, title, authors, path, body)| {
            let cited_titles = analyzed
                .iter()
                .filter(|(j, other_title, ..)| j != i && !other_title.is_empty())
                .filter(|(_, other_title, ..)| body.contains(&normalize(other_title)))
                .map(|(_, other_title, ..)| other_title.clone())
                .collect();
            PaperRecord {
                title: title.clone(),
                file_path: path.clone(),
                authors: authors.clone(),
                cited_titles,
            }
        })
        .collect();
    (records, errors)
}
