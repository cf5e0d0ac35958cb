//! Argument parsing and dispatch. Exit codes: 0 success, 1 usage error,
//! 2 processing error; diagnostics on stderr, artifacts to files or
//! stdout.

use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use citemap_core::bib::parse_bib;
use citemap_core::cell_map::{generate_table, TableSpec};
use citemap_core::chip_map::{build_chip_map, generate_test_data, ChipStyle, CiteList};
use citemap_core::flow_chart::{get_draw_data, render_flow_chart};
use citemap_core::flow_graph::generate_flow_graph;
use citemap_core::hvam::total_score;
use citemap_core::overlay::{blank_regions, generate_overpic, CoorText, Rotation};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::{json as schemas, ocr, pipeline};

#[derive(Parser)]
#[command(
    name = "citemap",
    version,
    about = "Citation analysis and gitem generation toolchain"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a .bib file (or stdin) into indexed JSON records.
    AnalyzeRefs {
        /// Path to the .bib file; omit to read stdin.
        bib: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Extract titles/authors/citations from a directory of .pdf or
    /// .spans.jsonl files.
    PdfRefs {
        /// Corpus directory.
        dir: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Generate a LaTeX table from a JSON cell grid (null = blank).
    CellMap {
        /// Grid file: [[cell|null, ...], ...].
        input: PathBuf,
        /// Draw cell borders (the default).
        #[arg(long, overrides_with = "no_border")]
        border: bool,
        /// Omit cell borders.
        #[arg(long)]
        no_border: bool,
        #[arg(long, default_value = "table title")]
        caption: String,
        #[arg(long, default_value = "table label")]
        label: String,
        #[arg(long, default_value = "1.35cm")]
        col_width: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Render a citation chip map to SVG plus label anchors.
    ChipMap {
        /// citate_list file: [[ni, [c1, ...]], ...]; exclusive with --items.
        #[arg(long, conflicts_with_all = ["items", "max_cite", "seed"], required_unless_present = "items")]
        input: Option<PathBuf>,
        /// Generate a random cite list with this many items instead.
        #[arg(long)]
        items: Option<usize>,
        /// Max citations per generated item.
        #[arg(long, default_value_t = 3, requires = "items")]
        max_cite: usize,
        #[arg(long, default_value_t = 0, requires = "items")]
        seed: u64,
        /// Output SVG path; `<out>.sides.json` lands next to it.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        style: StyleArgs,
    },
    /// Render a layered flow chart to SVG plus label anchors.
    FlowChart {
        /// Flow file: {"nodes": [{"id", "level"?}], "edges": [[a, b]]}.
        #[arg(long)]
        input: PathBuf,
        /// Output SVG path; `<out>.anchors.json` lands next to it.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1000)]
        width_px: u32,
        #[arg(long, default_value_t = 1000)]
        height_px: u32,
    },
    /// Generate the period-grouped tcolorbox flow graph.
    FlowGraph {
        /// Groups file: [{"period", "color", "items": [[key, name]]}].
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        items_per_row: usize,
        #[arg(long, default_value = "2cm")]
        box_width: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Generate an overpic overlay from chip-map anchors and labels.
    Overpic {
        /// Image path embedded in the overpic environment.
        #[arg(long)]
        image: String,
        /// Overlay width as a fraction of \textwidth.
        #[arg(long)]
        width: f64,
        /// Anchors file: {"up": [[ni, x, y, rot]], ...}.
        #[arg(long)]
        anchors: PathBuf,
        /// Labels file: {"<ni>": "\\cite{key}: Name", ...}.
        #[arg(long)]
        labels: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Blank OCR-detected text regions in a PNG with a fill color.
    OcrBlank {
        #[arg(long)]
        image: PathBuf,
        /// OCR engine executable, invoked as `<cmd> <image> <lang,...>`.
        #[arg(long)]
        engine_cmd: String,
        /// Recognition language; repeat for several.
        #[arg(long = "lang", default_values_t = [String::from("eng")])]
        languages: Vec<String>,
        /// Fill color as RRGGBB hex.
        #[arg(long, default_value = "FFFFFF", value_parser = parse_rgb)]
        fill: Rgb,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Score a horizontal-vertical analysis (per-stage CHV and total C).
    Hvam {
        /// Analysis file: {"stages": [{"horizontal_groups", "vertical_groups"}]}.
        #[arg(long)]
        input: PathBuf,
    },
    /// Generate a random citate_list for chip-map experiments.
    GenTestData {
        #[arg(long)]
        items: usize,
        #[arg(long, default_value_t = 3)]
        max_cite: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Full corpus → refs.json → chip map → overlay chain.
    Pipeline {
        #[arg(long)]
        pdf_dir: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        /// Bib file used to resolve \cite keys for labels.
        #[arg(long)]
        bib: Option<PathBuf>,
        /// Overlay width fraction.
        #[arg(long, default_value_t = 0.4)]
        width: f64,
        #[command(flatten)]
        style: StyleArgs,
    },
}

#[derive(Args)]
struct StyleArgs {
    #[arg(long, default_value_t = 1.0)]
    zoom_arrow: f64,
    #[arg(long, default_value_t = 1.0)]
    zoom_linew: f64,
    #[arg(long, default_value_t = 0.04)]
    citebox_width: f64,
    #[arg(long, default_value_t = 1000)]
    image_width: u32,
    #[arg(long, default_value_t = 1000)]
    image_height: u32,
}

impl StyleArgs {
    fn to_style(&self, seed: u64) -> ChipStyle {
        ChipStyle {
            zoom_arrow: self.zoom_arrow,
            zoom_line_w: self.zoom_linew,
            citebox_width: self.citebox_width,
            image_width_px: self.image_width,
            image_height_px: self.image_height,
            seed,
        }
    }
}

type Rgb = [u8; 3];

fn parse_rgb(s: &str) -> std::result::Result<Rgb, String> {
    let s = s.trim_start_matches('#');
    if s.len() != 6 || !s.chars().all(|c| c.is_ascii_hexdigit()) {
        return Err(format!("'{s}' is not an RRGGBB color"));
    }
    let channel = |i| u8::from_str_radix(&s[i..i + 2], 16).unwrap();
    Ok([channel(0), channel(2), channel(4)])
}

/// Parses and dispatches; the returned code is the process exit status.
pub fn run(args: &[OsString]) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_cite_list(
    input: Option<&Path>,
    items: Option<usize>,
    max_cite: usize,
    seed: u64,
) -> Result<CiteList> {
    match (input, items) {
        (Some(path), None) => {
            let list = schemas::parse_cite_list(&read_input(path)?)?;
            list.validate()?;
            Ok(list)
        }
        (None, Some(n)) => Ok(generate_test_data(n, max_cite, seed)?),
        _ => bail!("exactly one of --input and --items is required"),
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::AnalyzeRefs { bib, out } => {
            let text = match &bib {
                Some(path) => read_input(path)?,
                None => {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .context("cannot read stdin")?;
                    buf
                }
            };
            let outcome = parse_bib(&text)?;
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            emit(out.as_deref(), &schemas::to_pretty(&schemas::bib_records(&outcome.db)))
        }
        Command::PdfRefs { dir, out } => {
            let (records, errors) = pipeline::analyze_dir(&dir)?;
            for e in &errors {
                eprintln!("{}: {}", e.file_path, e.message);
            }
            if records.is_empty() {
                bail!("no analyzable papers in {}", dir.display());
            }
            emit(out.as_deref(), &schemas::to_pretty(&schemas::refs_array(&records)))
        }
        Command::CellMap { input, border: _, no_border, caption, label, col_width, out } => {
            let cells = schemas::parse_grid(&read_input(&input)?)?;
            let mut spec = TableSpec::new(cells, !no_border);
            spec.caption = caption;
            spec.label = label;
            spec.column_width = col_width;
            emit(out.as_deref(), &generate_table(&spec)?)
        }
        Command::ChipMap { input, items, max_cite, seed, out, style } => {
            let list = load_cite_list(input.as_deref(), items, max_cite, seed)?;
            let map = build_chip_map(&list, &style.to_style(seed))?;
            std::fs::write(&out, &map.svg)
                .with_context(|| format!("cannot write {}", out.display()))?;
            let sides = out.with_extension("sides.json");
            std::fs::write(&sides, schemas::to_pretty(&schemas::sides_json(&map.layout)))
                .with_context(|| format!("cannot write {}", sides.display()))?;
            Ok(())
        }
        Command::FlowChart { input, out, width_px, height_px } => {
            let spec = schemas::parse_flow(&read_input(&input)?)?;
            let data = get_draw_data(&spec)?;
            let (svg, anchors) = render_flow_chart(&data, width_px, height_px);
            std::fs::write(&out, svg)
                .with_context(|| format!("cannot write {}", out.display()))?;
            let anchor_path = out.with_extension("anchors.json");
            std::fs::write(&anchor_path, schemas::to_pretty(&schemas::anchors_json(&anchors)))
                .with_context(|| format!("cannot write {}", anchor_path.display()))?;
            Ok(())
        }
        Command::FlowGraph { input, items_per_row, box_width, out } => {
            let columns = schemas::parse_groups(&read_input(&input)?)?;
            let spec = schemas::flow_graph_spec(columns, items_per_row, &box_width);
            emit(out.as_deref(), &generate_flow_graph(&spec)?)
        }
        Command::Overpic { image, width, anchors, labels, out } => {
            let anchor_rows = schemas::parse_sides(&read_input(&anchors)?)?;
            let label_map = schemas::parse_labels(&read_input(&labels)?)?;
            let mut items = Vec::new();
            for (ni, x, y, rot) in anchor_rows {
                let text = label_map
                    .get(&ni)
                    .ok_or_else(|| anyhow!("no label for item {ni}"))?;
                let rotation = if rot == 0 { Rotation::None } else { Rotation::Minus90 };
                items.push(CoorText::new(x, y, text, rotation));
            }
            emit(out.as_deref(), &generate_overpic(&image, width, &items)?)
        }
        Command::OcrBlank { image, engine_cmd, languages, fill, out } => {
            let regions = ocr::detect_text_regions(&engine_cmd, &image, &languages)?;
            let boxes: Vec<_> = regions.into_iter().map(|r| r.pixel_box).collect();
            let mut buf = ocr::load_png(&image)?;
            blank_regions(&mut buf, &boxes, fill)?;
            ocr::save_png(&out, &buf)
        }
        Command::Hvam { input } => {
            let analysis = schemas::parse_analysis(&read_input(&input)?)?;
            let (c, per_stage) = total_score(&analysis);
            for (i, chv) in per_stage.iter().enumerate() {
                println!("CHV_{} = {chv}", i + 1);
            }
            println!("C = {c}");
            Ok(())
        }
        Command::GenTestData { items, max_cite, seed, out } => {
            let list = generate_test_data(items, max_cite, seed)?;
            emit(out.as_deref(), &schemas::to_pretty(&schemas::cite_list_json(&list)))
        }
        Command::Pipeline { pdf_dir, out_dir, bib, width, style } => {
            let config = pipeline::PipelineConfig {
                pdf_dir,
                bib_path: bib,
                out_dir,
                style: style.to_style(0),
                width_frac: width,
            };
            let manifest = pipeline::run_pipeline(&config)?;
            print!("{}", schemas::to_pretty(&manifest));
            Ok(())
        }
    }
}
