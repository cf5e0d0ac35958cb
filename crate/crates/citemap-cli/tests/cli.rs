//! End-to-end tests of the `citemap` binary: exit codes, stdout/stderr
//! contracts, and artifact files, run against the shipped fixtures.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use citemap_core::overlay::PixelBuf;
use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn citemap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_citemap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn assert_code(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        stdout_of(out),
        stderr_of(out)
    );
}

#[test]
fn usage_errors_exit_1() {
    let none = citemap(&[]);
    assert_code(&none, 1);
    assert!(stderr_of(&none).contains("Usage"), "{}", stderr_of(&none));

    let unknown = citemap(&["no-such-command"]);
    assert_code(&unknown, 1);

    let missing_flag = citemap(&["chip-map"]);
    assert_code(&missing_flag, 1);
}

#[test]
fn help_and_version_exit_0() {
    let help = citemap(&["--help"]);
    assert_code(&help, 0);
    let text = stdout_of(&help);
    for sub in ["analyze-refs", "pdf-refs", "cell-map", "chip-map", "flow-chart", "flow-graph", "overpic", "ocr-blank", "hvam", "gen-test-data", "pipeline"] {
        assert!(text.contains(sub), "help lacks {sub}");
    }

    let version = citemap(&["--version"]);
    assert_code(&version, 0);
    assert!(stdout_of(&version).starts_with("citemap "));
}

#[test]
fn analyze_refs_emits_indexed_records() {
    let out = citemap(&["analyze-refs", fixture("ref.bib").to_str().unwrap()]);
    assert_code(&out, 0);
    let v: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["1"]["type"], "article");
    assert_eq!(v["1"]["title"], "Craft beautiful equations in Word with LaTeX");
    assert_eq!(v["1"]["pages"], "263--264");
    assert_eq!(v["4"]["year"], "2003");
}

#[test]
fn analyze_refs_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_citemap"))
        .arg("analyze-refs")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"@misc{k2020x, title = {Piped Entry}}")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_code(&out, 0);
    let v: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["1"]["title"], "Piped Entry");
}

#[test]
fn analyze_refs_missing_file_exits_2() {
    let out = citemap(&["analyze-refs", "/nonexistent/ref.bib"]);
    assert_code(&out, 2);
    assert!(stderr_of(&out).starts_with("error:"));
}

#[test]
fn pdf_refs_reports_the_corpus() {
    let out = citemap(&["pdf-refs", fixture("corpus").to_str().unwrap()]);
    assert_code(&out, 0);
    let v: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let ngp = rows[0].as_array().unwrap();
    let nerf = rows[1].as_array().unwrap();
    assert_eq!(
        ngp[0],
        "Instant Neural Graphics Primitives with a Multiresolution Hash Encoding"
    );
    assert_eq!(
        ngp[1].as_array().unwrap()[0],
        "NeRF: Representing Scenes as Neural Radiance Fields for View Synthesis"
    );
    assert!(ngp[2].as_str().unwrap().ends_with("Instant-NGP.spans.jsonl"));
    assert_eq!(ngp[3].as_array().unwrap().len(), 4);
    assert!(nerf[1].as_array().unwrap().is_empty());
    assert_eq!(nerf[3].as_array().unwrap().len(), 6);
}

#[test]
fn pdf_refs_empty_dir_exits_2() {
    let dir = TempDir::new().unwrap();
    let out = citemap(&["pdf-refs", dir.path().to_str().unwrap()]);
    assert_code(&out, 2);
}

#[test]
fn cell_map_borders_are_switchable() {
    let grid = fixture("code4.grid.json");
    let bordered = citemap(&["cell-map", grid.to_str().unwrap()]);
    assert_code(&bordered, 0);
    let text = stdout_of(&bordered);
    assert!(text.contains(
        "\\hline NeRF & \\cite{mildenhall2021nerf} & 2021 & Static & Normal   \\\\"
    ));

    let open = citemap(&["cell-map", grid.to_str().unwrap(), "--no-border"]);
    assert_code(&open, 0);
    let open_text = stdout_of(&open);
    assert!(!open_text.contains("\\hline"));
    assert!(!open_text.contains('|'));

    let titled = citemap(&[
        "cell-map",
        grid.to_str().unwrap(),
        "--caption",
        "NeRF variants",
        "--label",
        "tab:variants",
        "--col-width",
        "2cm",
    ]);
    let titled_text = stdout_of(&titled);
    assert!(titled_text.contains("\\caption{NeRF variants}"));
    assert!(titled_text.contains("p{2cm}<{\\centering}"));
}

#[test]
fn gen_test_data_is_seed_deterministic() {
    let a = citemap(&["gen-test-data", "--items", "10", "--seed", "3"]);
    let b = citemap(&["gen-test-data", "--items", "10", "--seed", "3"]);
    let c = citemap(&["gen-test-data", "--items", "10", "--seed", "4"]);
    assert_code(&a, 0);
    assert_eq!(stdout_of(&a), stdout_of(&b));
    assert_ne!(stdout_of(&a), stdout_of(&c));
    let v: Value = serde_json::from_str(&stdout_of(&a)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);
}

#[test]
fn chip_map_writes_svg_and_sides() {
    let dir = TempDir::new().unwrap();
    let svg_path = dir.path().join("map.svg");
    let run = |extra: &[&str]| {
        let mut args = vec![
            "chip-map",
            "--items",
            "8",
            "--seed",
            "1",
            "--out",
            svg_path.to_str().unwrap(),
        ];
        args.extend_from_slice(extra);
        citemap(&args)
    };
    let out = run(&[]);
    assert_code(&out, 0);
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg"));
    let sides: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("map.sides.json")).unwrap())
            .unwrap();
    for side in ["up", "down", "left", "right"] {
        assert_eq!(sides[side].as_array().unwrap().len(), 2, "{side}");
    }

    // Same inputs, byte-identical artifact.
    let again = run(&[]);
    assert_code(&again, 0);
    assert_eq!(svg, std::fs::read_to_string(&svg_path).unwrap());
}

#[test]
fn chip_map_accepts_a_cite_list_file() {
    let dir = TempDir::new().unwrap();
    let cites = dir.path().join("cites.json");
    std::fs::write(&cites, "[[1, [2]], [2, []], [3, [1, 2]], [4, [1]]]").unwrap();
    let svg_path = dir.path().join("map.svg");
    let out = citemap(&[
        "chip-map",
        "--input",
        cites.to_str().unwrap(),
        "--out",
        svg_path.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    assert!(svg_path.exists());

    // A cite list that breaks the invariants is a processing error.
    std::fs::write(&cites, "[[1, [1]]]").unwrap();
    let bad = citemap(&[
        "chip-map",
        "--input",
        cites.to_str().unwrap(),
        "--out",
        svg_path.to_str().unwrap(),
    ]);
    assert_code(&bad, 2);
}

#[test]
fn flow_chart_writes_svg_and_anchors() {
    let dir = TempDir::new().unwrap();
    let chart = dir.path().join("chart.svg");
    let out = citemap(&[
        "flow-chart",
        "--input",
        fixture("fig9.flow.json").to_str().unwrap(),
        "--out",
        chart.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    assert!(std::fs::read_to_string(&chart).unwrap().starts_with("<svg"));
    let anchors: Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("chart.anchors.json")).unwrap(),
    )
    .unwrap();
    let rows = anchors.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r[3] == -90));
}

#[test]
fn flow_graph_emits_matrix_blocks() {
    let out = citemap(&[
        "flow-graph",
        "--input",
        fixture("table2.groups.json").to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    let text = stdout_of(&out);
    assert!(text.contains("\\underbrace{\\boxed{2021}}"));
    assert!(text.contains("colback=pink, width=2cm"));

    // items-per-row 2 wraps the three columns into two blocks.
    let wrapped = citemap(&[
        "flow-graph",
        "--input",
        fixture("table2.groups.json").to_str().unwrap(),
        "--items-per-row",
        "2",
    ]);
    let wrapped_text = stdout_of(&wrapped);
    assert_eq!(wrapped_text.matches("\\begin{matrix}\n& \\underbrace").count(), 2);
    assert_eq!(wrapped_text.matches("$\n\\begin{matrix}").count(), 2 + 3);
}

#[test]
fn overpic_reproduces_the_put_block() {
    let out = citemap(&[
        "overpic",
        "--image",
        "map.svg",
        "--width",
        "0.4",
        "--anchors",
        fixture("fig7.sides.json").to_str().unwrap(),
        "--labels",
        fixture("fig7.labels.json").to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    let text = stdout_of(&out);
    assert!(text.starts_with("\\begin{overpic}[width=0.4\\textwidth]{map.svg}\n"));
    assert!(text
        .contains("\\put(0.068\\textwidth, 0.37\\textwidth){\\cite{mildenhall2021nerf}: NeRF}"));
    assert!(text.contains(
        "\\put(0.018\\textwidth, 0.182\\textwidth){\\rotatebox{-90}{\\cite{chen2022tensorf}: Tensorf}}"
    ));
}

#[test]
fn ocr_blank_fills_reported_regions() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("page.png");
    let mut buf = PixelBuf::filled(10, 8, [10, 20, 30]);
    buf.set(0, 0, [1, 2, 3]);
    citemap_cli::ocr::save_png(&input, &buf).unwrap();

    let engine = dir.path().join("engine.sh");
    std::fs::write(&engine, "#!/bin/sh\necho \"2 1 6 5 hello 0.97\"\n").unwrap();
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        std::fs::set_permissions(&engine, std::fs::Permissions::from_mode(0o755)).unwrap();
    }

    let output = dir.path().join("blanked.png");
    let out = citemap(&[
        "ocr-blank",
        "--image",
        input.to_str().unwrap(),
        "--engine-cmd",
        engine.to_str().unwrap(),
        "--fill",
        "00FF00",
        "-o",
        output.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    let blanked = citemap_cli::ocr::load_png(&output).unwrap();
    for y in 0..8 {
        for x in 0..10 {
            let inside = (2..6).contains(&x) && (1..5).contains(&y);
            let expected = if inside {
                [0, 255, 0]
            } else if (x, y) == (0, 0) {
                [1, 2, 3]
            } else {
                [10, 20, 30]
            };
            assert_eq!(blanked.get(x, y), expected, "pixel ({x}, {y})");
        }
    }
}

#[test]
fn ocr_blank_without_engine_exits_2() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("page.png");
    citemap_cli::ocr::save_png(&input, &PixelBuf::filled(4, 4, [0, 0, 0])).unwrap();
    let out = citemap(&[
        "ocr-blank",
        "--image",
        input.to_str().unwrap(),
        "--engine-cmd",
        "/nonexistent/ocr-engine",
        "-o",
        dir.path().join("out.png").to_str().unwrap(),
    ]);
    assert_code(&out, 2);
    assert!(stderr_of(&out).contains("--engine-cmd"), "{}", stderr_of(&out));
}

#[test]
fn hvam_prints_stage_and_total_scores() {
    let out = citemap(&["hvam", "--input", fixture("analysis.json").to_str().unwrap()]);
    assert_code(&out, 0);
    assert_eq!(stdout_of(&out), "CHV_1 = 21\nCHV_2 = 5\nC = 26\n");
}

#[test]
fn pipeline_produces_all_artifacts() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("out");
    let out = citemap(&[
        "pipeline",
        "--pdf-dir",
        fixture("corpus").to_str().unwrap(),
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--bib",
        fixture("ref.bib").to_str().unwrap(),
    ]);
    assert_code(&out, 0);

    let manifest: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(manifest["papers"], 2);
    assert_eq!(manifest["citations"], 1);
    assert!(manifest["errors"].as_array().unwrap().is_empty());

    for name in ["refs.json", "map.svg", "map.sides.json", "overlay.tex", "manifest.json"] {
        assert!(out_dir.join(name).exists(), "{name}");
    }

    let refs: Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("refs.json")).unwrap())
            .unwrap();
    assert_eq!(refs[0][1].as_array().unwrap().len(), 1);
    assert!(refs[1][1].as_array().unwrap().is_empty());

    // Labels resolve through the bib: key verbatim, display name from the
    // key's trailing word.
    let overlay = std::fs::read_to_string(out_dir.join("overlay.tex")).unwrap();
    assert!(overlay.contains("\\cite{muller2022instant}: Instant"), "{overlay}");
    assert!(overlay.contains("\\cite{mildenhall2021nerf}: Nerf"), "{overlay}");
    assert!(overlay.starts_with("\\begin{overpic}[width=0.4\\textwidth]{map.svg}\n"));
}

#[test]
fn pipeline_without_bib_derives_labels_from_titles() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("out");
    let out = citemap(&[
        "pipeline",
        "--pdf-dir",
        fixture("corpus").to_str().unwrap(),
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    let overlay = std::fs::read_to_string(out_dir.join("overlay.tex")).unwrap();
    assert!(overlay.contains("\\cite{instant}: Instant"), "{overlay}");
    assert!(overlay.contains("\\cite{nerf}: Nerf"), "{overlay}");
}

#[test]
fn pipeline_needs_two_analyzable_papers() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("corpus");
    std::fs::create_dir(&corpus).unwrap();
    std::fs::copy(
        fixture("corpus/NeRF.spans.jsonl"),
        corpus.join("NeRF.spans.jsonl"),
    )
    .unwrap();
    let out = citemap(&[
        "pipeline",
        "--pdf-dir",
        corpus.to_str().unwrap(),
        "--out-dir",
        dir.path().join("out").to_str().unwrap(),
    ]);
    assert_code(&out, 2);
    assert!(stderr_of(&out).contains("at least 2"), "{}", stderr_of(&out));
}
