//! BibTeX parsing into an integer-indexed entry database.
//!
//! The parser is a character-level tokenizer: entries open at `@`, field
//! values may be braced (nesting allowed), quoted, or bare, and may span
//! lines. The observable contract is the indexed map — entry `i` is the
//! `i`-th `@` block of the input — not the scan strategy.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

/// One parsed bibliography entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BibEntry {
    /// 1-based position of the entry's `@` block in the source text.
    pub index: usize,
    /// Lowercased type, e.g. `article`.
    pub entry_type: String,
    /// Key after `@type{`; not necessarily unique across entries.
    pub citation_label: String,
    /// Field name → value, in parse order; names lowercased, no duplicates.
    pub fields: Vec<(String, String)>,
}

impl BibEntry {
    pub fn field(&self, name: &str) -> Option<&str> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_str())
    }
}

/// Ordered collection of entries; indices are consecutive `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BibDatabase {
    pub entries: Vec<BibEntry>,
    pub source_path: Option<String>,
}

impl BibDatabase {
    /// All entries carrying `label` (duplicates allowed, hence a list).
    pub fn by_label<'a>(&'a self, label: &str) -> Vec<&'a BibEntry> {
        self.entries.iter().filter(|e| e.citation_label == label).collect()
    }
}

/// Parse result: the database plus non-fatal diagnostics (skipped
/// `@string`/`@comment` blocks, duplicate fields or labels).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseOutcome {
    pub db: BibDatabase,
    pub warnings: Vec<String>,
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Scanner {
    fn new(text: &str) -> Self {
        Self { chars: text.chars().collect(), pos: 0, line: 1 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
        }
        Some(c)
    }

    fn skip_whitespace(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    /// Advances past the next `@`; false when the input is exhausted first.
    fn seek_entry(&mut self) -> bool {
        while let Some(c) = self.bump() {
            if c == '@' {
                return true;
            }
        }
        false
    }

    /// Reads characters until one of `stops` (not consumed) or EOF.
    fn take_until(&mut self, stops: &[char]) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if stops.contains(&c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    /// Consumes a `{`-opened group (opening brace already consumed) up to its
    /// matching `}`, returning the verbatim interior.
    fn take_braced(&mut self, start_line: usize) -> Result<String> {
        let mut depth = 1usize;
        let mut out = String::new();
        while let Some(c) = self.bump() {
            match c {
                '{' => depth += 1,
                '}' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(out);
                    }
                }
                _ => {}
            }
            out.push(c);
        }
        Err(Error::UnbalancedEntry { start_line })
    }

    /// Consumes a `"`-opened value (opening quote already consumed); braces
    /// inside the quotes protect embedded `"` per BibTeX convention.
    fn take_quoted(&mut self, start_line: usize) -> Result<String> {
        let mut depth = 0usize;
        let mut out = String::new();
        while let Some(c) = self.bump() {
            match c {
                '{' => depth += 1,
                '}' => depth = depth.saturating_sub(1),
                '"' if depth == 0 => return Ok(out),
                _ => {}
            }
            out.push(c);
        }
        Err(Error::UnbalancedEntry { start_line })
    }
}

/// Parses bib text into a database. One entry per `@` block, in file order.
/// `@string`/`@comment`/`@preamble` blocks are skipped with a warning; an
/// entry left open at end of input is an error naming its starting line.
pub fn parse_bib(text: &str) -> Result<ParseOutcome> {
    let mut s = Scanner::new(text);
    let mut entries: Vec<BibEntry> = Vec::new();
    let mut warnings: Vec<String> = Vec::new();

    while s.seek_entry() {
        let start_line = s.line;
        s.skip_whitespace();
        let entry_type = s.take_until(&['{', '(']).trim().to_lowercase();
        if entry_type.is_empty() {
            return Err(Error::MalformedEntry {
                start_line,
                reason: "missing entry type after '@'".to_string(),
            });
        }
        if s.bump() != Some('{') {
            return Err(Error::MalformedEntry {
                start_line,
                reason: format!("expected '{{' after '@{entry_type}'"),
            });
        }

        if matches!(entry_type.as_str(), "string" | "comment" | "preamble") {
            s.take_braced(start_line)?;
            warnings.push(format!("skipped @{entry_type} block at line {start_line}"));
            continue;
        }

        let citation_label = s.take_until(&[',', '}']).trim().to_string();
        if citation_label.is_empty() {
            return Err(Error::MalformedEntry {
                start_line,
                reason: "empty citation label".to_string(),
            });
        }
        if s.peek() == Some(',') {
            s.bump();
        }

        let mut fields: Vec<(String, String)> = Vec::new();
        loop {
            s.skip_whitespace();
            while s.peek() == Some(',') {
                s.bump();
                s.skip_whitespace();
            }
            match s.peek() {
                None => return Err(Error::UnbalancedEntry { start_line }),
                Some('}') => {
                    s.bump();
                    break;
                }
                Some(_) => {}
            }
            let name = s.take_until(&['=', ',', '}']).trim().to_lowercase();
            if s.peek() != Some('=') {
                return Err(Error::MalformedEntry {
                    start_line,
                    reason: format!("field '{name}' has no '=' value"),
                });
            }
            s.bump();
            s.skip_whitespace();
            let value = match s.peek() {
                Some('{') => {
                    s.bump();
                    s.take_braced(start_line)?
                }
                Some('"') => {
                    s.bump();
                    s.take_quoted(start_line)?
                }
                Some(_) => s.take_until(&[',', '}']).trim().to_string(),
                None => return Err(Error::UnbalancedEntry { start_line }),
            };
            if name.is_empty() {
                return Err(Error::MalformedEntry {
                    start_line,
                    reason: "field with empty name".to_string(),
                });
            }
            if fields.iter().any(|(n, _)| *n == name) {
                warnings.push(format!(
                    "duplicate field '{name}' in entry starting at line {start_line}; first value kept"
                ));
            } else {
                fields.push((name, value));
            }
        }

        if entries.iter().any(|e| e.citation_label == citation_label) {
            warnings.push(format!("duplicate citation label '{citation_label}'"));
        }
        entries.push(BibEntry {
            index: entries.len() + 1,
            entry_type,
            citation_label,
            fields,
        });
    }

    Ok(ParseOutcome { db: BibDatabase { entries, source_path: None }, warnings })
}

/// Renders a database back to bib text. `parse_bib(serialize_bib(db))`
/// reproduces `db` structurally for any database `parse_bib` can produce.
pub fn serialize_bib(db: &BibDatabase) -> String {
    let mut out = String::new();
    for entry in &db.entries {
        out.push('@');
        out.push_str(&entry.entry_type);
        out.push('{');
        out.push_str(&entry.citation_label);
        out.push_str(",\n");
        for (name, value) in &entry.fields {
            out.push_str("  ");
            out.push_str(name);
            out.push_str("={");
            out.push_str(value);
            out.push_str("},\n");
        }
        out.push_str("}\n\n");
    }
    out
}

/// Flattens the database into the exported record shape: for entry `i`, the
/// record keyed `i` holds `type` plus every parsed field, in parse order.
/// The key set is exactly `1..=n`.
pub fn export_records(db: &BibDatabase) -> Vec<(usize, Vec<(String, String)>)> {
    db.entries
        .iter()
        .map(|e| {
            let mut rec = Vec::with_capacity(e.fields.len() + 1);
            rec.push(("type".to_string(), e.entry_type.clone()));
            rec.extend(e.fields.iter().cloned());
            (e.index, rec)
        })
        .collect()
}
