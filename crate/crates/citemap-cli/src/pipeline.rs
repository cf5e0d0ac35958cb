//! Corpus → gitem pipeline: analyze a directory of papers, build the
//! citation chip map, and emit the overlay snippet, all under one output
//! directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use citemap_core::bib::{parse_bib, BibDatabase};
use citemap_core::chip_map::{build_chip_map, ChipStyle, CiteList};
use citemap_core::overlay::{generate_overpic, CoorText, Rotation};
use citemap_core::refs::{cross_reference, normalize, FileError, PaperRecord};
use serde_json::{json, Value};

use crate::{json as schemas, pdf};

pub struct PipelineConfig {
    pub pdf_dir: PathBuf,
    pub bib_path: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub style: ChipStyle,
    /// Overlay `width=<frac>\textwidth`.
    pub width_frac: f64,
}

/// Files the pipeline understands, in sorted-name corpus order.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    let entries = std::fs::read_dir(dir)
        .with_context(|| format!("cannot read corpus directory {}", dir.display()))?;
    for entry in entries {
        let path = entry?.path();
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else { continue };
        if name.ends_with(".spans.jsonl") || name.to_ascii_lowercase().ends_with(".pdf") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Extracts and cross-references a corpus directory; extraction failures
/// are folded into the error list rather than aborting.
pub fn analyze_dir(dir: &Path) -> Result<(Vec<PaperRecord>, Vec<FileError>)> {
    let files = corpus_files(dir)?;
    if files.is_empty() {
        bail!("no .pdf or .spans.jsonl files in {}", dir.display());
    }
    let mut corpus = Vec::new();
    let mut errors = Vec::new();
    for path in files {
        let shown = path.display().to_string();
        match pdf::extract_spans(&path) {
            Ok(spans) => corpus.push((spans, shown)),
            Err(e) => errors.push(FileError { file_path: shown, message: format!("{e:#}") }),
        }
    }
    let (records, mut detect_errors) = cross_reference(&corpus);
    let mut all = errors;
    all.append(&mut detect_errors);
    Ok((records, all))
}

/// CiteList over record positions: item `i+1` cites the positions of the
/// titles it references.
pub fn cite_list_of(records: &[PaperRecord]) -> CiteList {
    let index_of: BTreeMap<&str, usize> = records
        .iter()
        .enumerate()
        .map(|(i, r)| (r.title.as_str(), i + 1))
        .collect();
    let items = records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let cites = r
                .cited_titles
                .iter()
                .filter_map(|t| index_of.get(t.as_str()).copied())
                .filter(|ni| *ni != i + 1)
                .collect();
            (i + 1, cites)
        })
        .collect();
    CiteList { items }
}

/// `\cite{<key>}: <Name>` label for one paper: key from the bib entry
/// whose title matches, else derived from the title's first word; the
/// display name capitalizes the key's trailing word.
pub fn label_for(record: &PaperRecord, bib: Option<&BibDatabase>) -> String {
    let key = bib
        .and_then(|db| {
            let wanted = normalize(&record.title);
            db.entries
                .iter()
                .find(|e| e.field("title").map(normalize) == Some(wanted.clone()))
                .map(|e| e.citation_label.clone())
        })
        .unwrap_or_else(|| {
            let word: String = record
                .title
                .split_whitespace()
                .next()
                .unwrap_or("paper")
                .chars()
                .filter(|c| c.is_alphanumeric())
                .collect::<String>()
                .to_lowercase();
            if word.is_empty() { "paper".to_string() } else { word }
        });
    let trailing = key
        .rfind(|c: char| c.is_ascii_digit())
        .map(|i| &key[i + 1..])
        .filter(|s| !s.is_empty())
        .unwrap_or(&key);
    let mut chars = trailing.chars();
    let name = match chars.next() {
        Some(first) => first.to_uppercase().collect::<String>() + chars.as_str(),
        None => trailing.to_string(),
    };
    format!("\\cite{{{key}}}: {name}")
}

pub fn run_pipeline(config: &PipelineConfig) -> Result<Value> {
    let (records, errors) = analyze_dir(&config.pdf_dir)?;
    if records.len() < 2 {
        for e in &errors {
            eprintln!("{}: {}", e.file_path, e.message);
        }
        bail!(
            "need at least 2 analyzable papers, got {} from {}",
            records.len(),
            config.pdf_dir.display()
        );
    }
    let bib = match &config.bib_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read bib {}", path.display()))?;
            let outcome = parse_bib(&text)?;
            for w in &outcome.warnings {
                eprintln!("{}: {w}", path.display());
            }
            Some(outcome.db)
        }
        None => None,
    };

    std::fs::create_dir_all(&config.out_dir)
        .with_context(|| format!("cannot create out dir {}", config.out_dir.display()))?;
    let write = |name: &str, content: &str| -> Result<()> {
        std::fs::write(config.out_dir.join(name), content)
            .with_context(|| format!("cannot write {name}"))
    };

    write("refs.json", &schemas::to_pretty(&schemas::refs_array(&records)))?;

    let list = cite_list_of(&records);
    let map = build_chip_map(&list, &config.style)?;
    write("map.svg", &map.svg)?;
    write("map.sides.json", &schemas::to_pretty(&schemas::sides_json(&map.layout)))?;

    let labels: BTreeMap<usize, String> = records
        .iter()
        .enumerate()
        .map(|(i, r)| (i + 1, label_for(r, bib.as_ref())))
        .collect();
    let mut items = Vec::new();
    for (_, anchors) in &map.layout.four_sides {
        for a in anchors {
            let rotation = if a.rotation == 0 { Rotation::None } else { Rotation::Minus90 };
            items.push(CoorText::new(a.x_frac, a.y_frac, &labels[&a.ni], rotation));
        }
    }
    let overlay = generate_overpic("map.svg", config.width_frac, &items)?;
    write("overlay.tex", &overlay)?;

    let manifest = json!({
        "artifacts": ["refs.json", "map.svg", "map.sides.json", "overlay.tex"],
        "papers": records.len(),
        "citations": list.total_citations(),
        "errors": errors
            .iter()
            .map(|e| json!({"file": e.file_path, "error": e.message}))
            .collect::<Vec<_>>(),
    });
    write("manifest.json", &schemas::to_pretty(&manifest))?;
    Ok(manifest)
}
