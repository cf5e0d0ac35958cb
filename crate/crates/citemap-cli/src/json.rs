//! JSON schemas for every subcommand, kept in one place so the shapes stay
//! in sync with the fixtures and the docs. All emitters preserve input
//! order (`serde_json` runs with `preserve_order`).

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use citemap_core::bib::BibDatabase;
use citemap_core::chip_map::{ChipLayout, CiteList, Side};
use citemap_core::flow_chart::{Anchor, FlowNode, FlowSpec};
use citemap_core::flow_graph::{FlowColumn, FlowGraphSpec};
use citemap_core::hvam::{Analysis, ComparisonStage};
use citemap_core::refs::PaperRecord;
use serde::Deserialize;
use serde_json::{json, Map, Value};

/// Bib database as `{"1": {"type": ..., <fields in parse order>}, ...}`.
pub fn bib_records(db: &BibDatabase) -> Value {
    let mut root = Map::new();
    for entry in &db.entries {
        let mut rec = Map::new();
        rec.insert("type".to_string(), Value::String(entry.entry_type.clone()));
        for (name, value) in &entry.fields {
            rec.insert(name.clone(), Value::String(value.clone()));
        }
        root.insert(entry.index.to_string(), Value::Object(rec));
    }
    Value::Object(root)
}

/// Paper records as `[[title, [cited...], path, [authors...]], ...]`.
pub fn refs_array(records: &[PaperRecord]) -> Value {
    Value::Array(
        records
            .iter()
            .map(|r| {
                json!([
                    r.title,
                    r.cited_titles,
                    r.file_path,
                    r.authors,
                ])
            })
            .collect(),
    )
}

/// `[[ni, [c1, ...]], ...]` → CiteList, structure checked but semantic
/// validation left to the core.
pub fn parse_cite_list(text: &str) -> Result<CiteList> {
    let items: Vec<(usize, Vec<usize>)> =
        serde_json::from_str(text).context("cite list must be [[ni, [c1, ...]], ...]")?;
    Ok(CiteList { items })
}

pub fn cite_list_json(list: &CiteList) -> Value {
    Value::Array(
        list.items
            .iter()
            .map(|(ni, cites)| json!([ni, cites]))
            .collect(),
    )
}

/// Label anchors per side: `{"up": [[ni, x, y, rot]], ...}`.
pub fn sides_json(layout: &ChipLayout) -> Value {
    let mut root = Map::new();
    for (side, anchors) in &layout.four_sides {
        let rows: Vec<Value> = anchors
            .iter()
            .map(|a| json!([a.ni, a.x_frac, a.y_frac, a.rotation]))
            .collect();
        root.insert(side.name().to_string(), Value::Array(rows));
    }
    Value::Object(root)
}

/// Anchor list parsed back from `sides_json` output, flattened in side
/// order up, down, left, right.
pub fn parse_sides(text: &str) -> Result<Vec<(usize, f64, f64, i32)>> {
    let root: Map<String, Value> =
        serde_json::from_str(text).context("anchors must be {\"up\": [[ni, x, y, rot]], ...}")?;
    let mut out = Vec::new();
    for side in Side::ALL {
        let Some(rows) = root.get(side.name()) else { continue };
        let rows: Vec<(usize, f64, f64, i32)> = serde_json::from_value(rows.clone())
            .with_context(|| format!("side {:?} rows must be [ni, x, y, rot]", side.name()))?;
        out.extend(rows);
    }
    Ok(out)
}

/// `{"<ni>": "<label text>", ...}`.
pub fn parse_labels(text: &str) -> Result<BTreeMap<usize, String>> {
    let raw: Map<String, Value> =
        serde_json::from_str(text).context("labels must be {\"<ni>\": \"text\", ...}")?;
    let mut out = BTreeMap::new();
    for (k, v) in raw {
        let ni: usize = k.parse().map_err(|_| anyhow!("label key '{k}' is not an item number"))?;
        let Value::String(s) = v else { bail!("label for item {ni} must be a string") };
        out.insert(ni, s);
    }
    Ok(out)
}

/// Table grid: array of arrays, `null` for blank cells; scalars are
/// stringified so numeric years survive unquoted fixtures.
pub fn parse_grid(text: &str) -> Result<Vec<Vec<Option<String>>>> {
    let rows: Vec<Vec<Value>> =
        serde_json::from_str(text).context("grid must be [[cell|null, ...], ...]")?;
    rows.into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .map(|cell| match cell {
                    Value::Null => Ok(None),
                    Value::String(s) => Ok(Some(s)),
                    Value::Number(n) => Ok(Some(n.to_string())),
                    other => Err(anyhow!("row {i}: unsupported cell {other}")),
                })
                .collect()
        })
        .collect()
}

#[derive(Deserialize)]
struct FlowNodeJson {
    id: String,
    #[serde(default)]
    level: Option<u32>,
}

#[derive(Deserialize)]
struct FlowJson {
    nodes: Vec<FlowNodeJson>,
    #[serde(default)]
    edges: Vec<(String, String)>,
}

/// `{"nodes": [{"id": ..., "level": ...}], "edges": [["a","b"], ...]}`.
pub fn parse_flow(text: &str) -> Result<FlowSpec> {
    let raw: FlowJson = serde_json::from_str(text)
        .context("flow must be {\"nodes\": [{\"id\", \"level\"?}], \"edges\": [[a, b]]}")?;
    Ok(FlowSpec {
        nodes: raw
            .nodes
            .into_iter()
            .map(|n| FlowNode { id: n.id, level: n.level })
            .collect(),
        edges: raw.edges,
        box_size: None,
    })
}

pub fn anchors_json(anchors: &[Anchor]) -> Value {
    Value::Array(
        anchors
            .iter()
            .map(|a| json!([a.id, a.x_frac, a.y_frac, a.rotation]))
            .collect(),
    )
}

#[derive(Deserialize)]
struct GroupJson {
    period: String,
    color: String,
    items: Vec<(String, String)>,
}

/// `[{"period": "2021", "color": "green", "items": [[key, name], ...]}, ...]`.
pub fn parse_groups(text: &str) -> Result<Vec<FlowColumn>> {
    let raw: Vec<GroupJson> = serde_json::from_str(text)
        .context("groups must be [{\"period\", \"color\", \"items\": [[key, name]]}]")?;
    Ok(raw
        .into_iter()
        .map(|g| FlowColumn { period_label: g.period, color_name: g.color, items: g.items })
        .collect())
}

pub fn flow_graph_spec(columns: Vec<FlowColumn>, items_per_row: usize, box_width: &str) -> FlowGraphSpec {
    let mut spec = FlowGraphSpec::new(columns);
    spec.items_per_row = items_per_row;
    spec.box_width = box_width.to_string();
    spec
}

#[derive(Deserialize)]
struct StageJson {
    #[serde(default)]
    horizontal_groups: Vec<Vec<f64>>,
    #[serde(default)]
    vertical_groups: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct AnalysisJson {
    stages: Vec<StageJson>,
}

/// `{"stages": [{"horizontal_groups": [[...]], "vertical_groups": [[...]]}]}`.
pub fn parse_analysis(text: &str) -> Result<Analysis> {
    let raw: AnalysisJson = serde_json::from_str(text)
        .context("analysis must be {\"stages\": [{\"horizontal_groups\", \"vertical_groups\"}]}")?;
    Ok(Analysis {
        stages: raw
            .stages
            .into_iter()
            .map(|s| ComparisonStage {
                horizontal_groups: s.horizontal_groups,
                vertical_groups: s.vertical_groups,
            })
            .collect(),
    })
}

/// Pretty JSON with a trailing newline, the one emission format every
/// subcommand shares.
pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use citemap_core::bib::parse_bib;

    #[test]
    fn bib_records_keep_parse_order_and_type_first() {
        let outcome =
            parse_bib("@article{k, year = {2019}, title = {T}}").unwrap();
        let v = bib_records(&outcome.db);
        let rec = v.get("1").unwrap().as_object().unwrap();
        let keys: Vec<&String> = rec.keys().collect();
        assert_eq!(keys, ["type", "year", "title"]);
    }

    #[test]
    fn cite_list_round_trips() {
        let list = parse_cite_list("[[1, [2, 3]], [2, []], [3, [1]]]").unwrap();
        assert_eq!(list.items, vec![(1, vec![2, 3]), (2, vec![]), (3, vec![1])]);
        let text = serde_json::to_string(&cite_list_json(&list)).unwrap();
        assert_eq!(text, "[[1,[2,3]],[2,[]],[3,[1]]]");
    }

    #[test]
    fn grid_accepts_nulls_and_numbers() {
        let grid = parse_grid(r#"[["a", null], [2021, "b"]]"#).unwrap();
        assert_eq!(grid[0][1], None);
        assert_eq!(grid[1][0].as_deref(), Some("2021"));
    }

    #[test]
    fn labels_reject_non_numeric_keys() {
        assert!(parse_labels(r#"{"x": "t"}"#).is_err());
        let ok = parse_labels(r#"{"2": "b", "1": "a"}"#).unwrap();
        assert_eq!(ok[&1], "a");
        assert_eq!(ok[&2], "b");
    }

    #[test]
    fn flow_defaults_missing_pieces() {
        let spec = parse_flow(r#"{"nodes": [{"id": "a"}]}"#).unwrap();
        assert_eq!(spec.nodes[0].level, None);
        assert!(spec.edges.is_empty());
    }

    #[test]
    fn analysis_defaults_missing_axes() {
        let a = parse_analysis(r#"{"stages": [{"horizontal_groups": [[1.0]]}]}"#).unwrap();
        assert!(a.stages[0].vertical_groups.is_empty());
    }
}
