//! LaTeX table generation from a 2-D grid of optional cells.
//!
//! The emitted bytes are contractual: bordered tables repeat
//! `| p{<w>}<{\centering} ` in the preamble with `| }` closing it, every
//! body row starts with `\hline ` and ends with three spaces before `\\`,
//! and a lone `\hline ` (trailing space included) closes the body.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Input to [`generate_table`]. `None` cells render as a single space.
#[derive(Debug, Clone, PartialEq)]
pub struct TableSpec {
    pub cells: Vec<Vec<Option<String>>>,
    /// Borders on: `|` column separators and `\hline` row rules.
    pub bordered: bool,
    pub caption: String,
    pub label: String,
    /// Column width, e.g. `1.35cm`.
    pub column_width: String,
    pub arraystretch: f64,
    pub tabcolsep: String,
}

impl TableSpec {
    /// Spec with the default styling knobs around a cell grid.
    pub fn new(cells: Vec<Vec<Option<String>>>, bordered: bool) -> Self {
        Self {
            cells,
            bordered,
            caption: String::from("table title"),
            label: String::from("table label"),
            column_width: String::from("1.35cm"),
            arraystretch: 1.0,
            tabcolsep: String::from("0.1cm"),
        }
    }
}

/// Emits the full `table` environment for `spec`.
/// Errors on ragged grids, naming the first offending row (0-based).
pub fn generate_table(spec: &TableSpec) -> Result<String> {
    if spec.cells.is_empty() || spec.cells[0].is_empty() {
        return Err(Error::InvalidArgument { reason: String::from("grid must be at least 1x1") });
    }
    let columns = spec.cells[0].len();
    for (row, cells) in spec.cells.iter().enumerate() {
        if cells.len() != columns {
            return Err(Error::RaggedGrid { row, got: cells.len(), expected: columns });
        }
    }

    let column_spec = format!("p{{{}}}<{{\\centering}}", spec.column_width);
    let preamble = if spec.bordered {
        let mut p = String::from("| ");
        for (i, _) in (0..columns).enumerate() {
            if i > 0 {
                p.push_str(" | ");
            }
            p.push_str(&column_spec);
        }
        p.push_str("| ");
        p
    } else {
        let mut p = String::from(" ");
        for (i, _) in (0..columns).enumerate() {
            if i > 0 {
                p.push(' ');
            }
            p.push_str(&column_spec);
        }
        p.push(' ');
        p
    };
    let hline = if spec.bordered { "\\hline " } else { "" };

    let mut body = String::new();
    for cells in &spec.cells {
        body.push_str(hline);
        for (y, cell) in cells.iter().enumerate() {
            match cell {
                Some(text) => body.push_str(text),
                None => body.push(' '),
            }
            if y != columns - 1 {
                body.push_str(" & ");
            }
        }
        body.push_str("   \\\\\n");
    }
    if spec.bordered {
        body.push_str(hline);
        body.push('\n');
    }

    Ok(format!(
        "\\begin{{table}}\\centering\n\\caption{{{caption}}}\n\\label{{{label}}}\n\\renewcommand{{\\arraystretch}}{{{stretch}}}\n\\tabcolsep={tabcolsep}\n\\begin{{tabular}}{{{preamble}}}\n{body}\\end{{tabular}}\n\\end{{table}}\n",
        caption = spec.caption,
        label = spec.label,
        stretch = spec.arraystretch,
        tabcolsep = spec.tabcolsep,
    ))
}
