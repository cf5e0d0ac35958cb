//! LaTeX flow-graph generation: a matrix of under-braced period headers,
//! star/arrow markers, up-arrows, and one colored fixed-width item box per
//! column, stepped down by column ordinal. Columns wrap into additional
//! matrix blocks after `items_per_row` columns.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

/// One period column: header label, `tcolorbox` color, and the citation
/// items shown inside the box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowColumn {
    pub period_label: String,
    pub color_name: String,
    /// (citation key, display text) pairs.
    pub items: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowGraphSpec {
    pub columns: Vec<FlowColumn>,
    /// Word-wrap width in columns per matrix block.
    pub items_per_row: usize,
    /// Width of each colored box, e.g. `2cm`.
    pub box_width: String,
}

impl FlowGraphSpec {
    pub fn new(columns: Vec<FlowColumn>) -> Self {
        Self { columns, items_per_row: 4, box_width: String::from("2cm") }
    }

    fn validate(&self) -> Result<()> {
        if self.columns.is_empty() {
            return Err(Error::InvalidArgument { reason: "need at least one column".to_string() });
        }
        if self.items_per_row == 0 {
            return Err(Error::InvalidArgument { reason: "items_per_row must be >= 1".to_string() });
        }
        for col in &self.columns {
            if col.items.is_empty() || col.color_name.is_empty() {
                return Err(Error::InvalidArgument {
                    reason: format!("column '{}' needs a color and at least one item", col.period_label),
                });
            }
        }
        Ok(())
    }
}

/// Escapes item display text for the math-mode matrix: hyphens become
/// `\text{-}` so they typeset as dashes rather than minus signs.
fn escape_item_text(text: &str) -> String {
    text.replace('-', "\\text{-}")
}

/// Emits the flow graph as a single-column `tabular` of matrix blocks.
pub fn generate_flow_graph(spec: &FlowGraphSpec) -> Result<String> {
    spec.validate()?;
    let mut out = String::from("\\begin{tabular}{c}\n");
    let blocks: Vec<&[FlowColumn]> = spec.columns.chunks(spec.items_per_row).collect();
    let mut ordinal = 0usize; // global column ordinal: stars and staircase keep counting across blocks
    for (b, block) in blocks.iter().enumerate() {
        out.push('\n');
        out.push_str("$\n\\begin{matrix}\n");

        // Row 1: under-braced boxed period headers.
        out.push_str("& ");
        for (i, col) in block.iter().enumerate() {
            if i > 0 {
                out.push_str("  & ");
            }
            out.push_str(&format!("\\underbrace{{\\boxed{{{}}}}}", col.period_label));
        }
        out.push_str("   &  \\\\[0pt]\n");

        // Row 2: star markers; column i (1-based, global) gets i stars.
        out.push_str(" & ");
        for (i, _) in block.iter().enumerate() {
            if i > 0 {
                out.push_str(" & ");
            }
            out.push_str("\\boxed{");
            for _ in 0..=(ordinal + i) {
                out.push_str("\\star");
            }
            out.push_str(" \\rightarrow}");
        }
        out.push_str(" \\\\[0pt]\n");

        // Row 3: one up-arrow per column.
        out.push_str("& ");
        for (i, _) in block.iter().enumerate() {
            if i > 0 {
                out.push_str(" & ");
            }
            out.push_str("\\uparrow");
        }
        out.push_str("  \\\\[0pt]\n");

        // Row 4: the colored item boxes, stepped down by ordinal.
        for (i, col) in block.iter().enumerate() {
            out.push('\n');
            out.push_str("& \\boxed{\n\\begin{matrix}\n");
            for _ in 0..(ordinal + i) {
                out.push_str("\\\\\n");
            }
            out.push_str(&format!(
                "\\begin{{tcolorbox}}[colback={}, width={}, left=0mm, right=0mm, top=0mm, bottom=0mm, boxsep=0.5mm, arc=0mm, boxrule=0pt, bottomrule=0pt, toprule=0pt, title={{}}]\n",
                col.color_name, spec.box_width
            ));
            out.push_str("$\n\\begin{matrix}\n");
            for (key, text) in &col.items {
                out.push_str(&format!("\\cite{{{key}}}{}  \\\\\n", escape_item_text(text)));
            }
            out.push_str("\\end{matrix}\n$\n\\end{tcolorbox}\\end{matrix}\n}\n");
        }

        out.push_str("\n\n\\end{matrix}\n$\n");
        if b + 1 < blocks.len() {
            out.push_str("\\\\\n");
        }
        ordinal += block.len();
    }
    out.push_str("\\end{tabular}\n");
    Ok(out)
}
