use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dplane_cli::format::{emit_image, parse_image, Format};
use dplane_core::catalog::NAMES;

fn dplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dplane")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compare against a golden file; `DPLANE_UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("DPLANE_UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn catalog_file(name: &str, format: Format) -> PathBuf {
    golden_dir().join(format!("catalog/{name}.{}", format.extension()))
}

#[test]
fn catalog_output_matches_golden_files() {
    for name in NAMES {
        for (format, flag) in [(Format::Json, "json"), (Format::Grid, "grid")] {
            let out = dplane(&["catalog", name, "--format", flag]);
            assert!(out.status.success(), "{name}");
            check_golden(&format!("catalog/{name}.{}", format.extension()), &stdout(&out));
        }
    }
}

#[test]
fn golden_catalog_files_round_trip() {
    for name in NAMES {
        for format in [Format::Json, Format::Grid] {
            let text = std::fs::read_to_string(catalog_file(name, format)).unwrap();
            let x = parse_image(&text, format).unwrap();
            assert_eq!(emit_image(&x, format), text, "{name} {format:?}");
            let other = if format == Format::Json { Format::Grid } else { Format::Json };
            assert_eq!(parse_image(&emit_image(&x, other), other).unwrap(), x);
        }
    }
}

#[test]
fn list_names() {
    let out = dplane(&["catalog", "--list"]);
    assert_eq!(stdout(&out).lines().collect::<Vec<_>>(), NAMES.to_vec());
}

#[test]
fn convex_classifications() {
    let fig1 = catalog_file("fig1", Format::Grid);
    let out = dplane(&["convex", fig1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().next(), Some("NotConvex"));
    let trimmed = catalog_file("fig1-minus-origin", Format::Json);
    let out = dplane(&["convex", trimmed.to_str().unwrap()]);
    assert_eq!(stdout(&out).lines().next(), Some("ConvexDisk"));
}

#[test]
fn curve_of_a_square() {
    let sq = catalog_file("square2", Format::Json);
    let out = dplane(&["curve", sq.to_str().unwrap()]);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("vertex ")).count(), 4);
    assert!(text.lines().filter(|l| l.starts_with("vertex ")).all(|l| l.ends_with(" 90")));
}

#[test]
fn afpp_verdicts_and_exit_codes() {
    let diamond = catalog_file("diamond4", Format::Json);
    let out = dplane(&["afpp", diamond.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("Witness"));
    check_golden("diamond4-afpp.txt", &text);

    let square = catalog_file("square3", Format::Json);
    let out = dplane(&["afpp", square.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().next(), Some("HasAfpp"));

    let annulus = catalog_file("annulus", Format::Json);
    let out = dplane(&["afpp", annulus.to_str().unwrap(), "--budget", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("budget exceeded"));
}

#[test]
fn fpp_verdicts() {
    let interval = catalog_file("interval", Format::Json);
    let out = dplane(&["fpp", interval.to_str().unwrap()]);
    assert_eq!(stdout(&out).lines().next(), Some("Witness"));
    let single = fixture("single.json");
    let out = dplane(&["fpp", single.to_str().unwrap()]);
    assert_eq!(stdout(&out).lines().next(), Some("HasFpp"));
}

#[test]
fn input_errors_exit_with_one() {
    let out = dplane(&["convex", "/nonexistent/image.json"]);
    assert_eq!(out.status.code(), Some(1));
    let bad = fixture("malformed.grid");
    let out = dplane(&["convex", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed.grid:3:2:"), "{:?}", out);
    let out = dplane(&["catalog", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    let u = catalog_file("block-u3", Format::Json);
    let out = dplane(&["retract", "build", "axis", u.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn retract_build_and_verify() {
    let sq = catalog_file("square3", Format::Json);
    let out = dplane(&["retract", "build", "axis", sq.to_str().unwrap(), "--window", "-1,4,-1,4"]);
    let table = stdout(&out);
    check_golden("square3-axis.tsv", &table);
    assert_eq!(table.lines().count(), 1 + 36);

    let tsv = golden_dir().join("square3-axis.tsv");
    let out = dplane(&["retract", "verify", "table", sq.to_str().unwrap(), "--table", tsv.to_str().unwrap()]);
    assert_eq!(stdout(&out), "pass: 36 points checked onto 16 target points\n");

    let d = catalog_file("diamond-disk", Format::Json);
    for slope in ["plus", "minus"] {
        let out = dplane(&["retract", "verify", "slanted", d.to_str().unwrap(), "--slope", slope, "--boundary"]);
        assert!(stdout(&out).starts_with("pass: "), "{slope}");
    }

    let out = dplane(&["retract", "verify", "annulus"]);
    assert_eq!(stdout(&out), "pass: 48 points checked onto 8 target points\n");
    let out = dplane(&["retract", "verify", "tee", "--window", "0,4,0,4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "fail (restriction to the window): adjacent (0,2) and (1,1) map to (0,2) and (2,2)\n");
}

#[test]
fn edge_union_and_wedge_from_files() {
    let (a, b) = (fixture("triangle-upper.json"), fixture("triangle-lower.json"));
    let out =
        dplane(&["retract", "verify", "edge-union", a.to_str().unwrap(), b.to_str().unwrap(), "--window", "-4,6,-4,6"]);
    assert!(stdout(&out).starts_with("pass: 121 points"), "{}", stdout(&out));
    let (a, b) = (fixture("wedge-east.json"), fixture("wedge-west.json"));
    let out =
        dplane(&["retract", "verify", "wedge", a.to_str().unwrap(), b.to_str().unwrap(), "--window", "-6,6,-6,6"]);
    assert!(stdout(&out).starts_with("pass: 169 points"), "{}", stdout(&out));
}

#[test]
fn render_tee_arrows() {
    let ascii = dplane(&["render", "--scheme", "tee", "--window", "0,4,0,4"]);
    check_golden("tee-render.txt", &stdout(&ascii));
    assert_eq!(stdout(&ascii).matches(" -> ").count(), 4);
    let svg = dplane(&["render", "--scheme", "tee", "--window", "0,4,0,4", "--format", "svg"]);
    check_golden("tee-render.svg", &stdout(&svg));
    let plain = catalog_file("annulus", Format::Grid);
    let out = dplane(&["render", plain.to_str().unwrap()]);
    assert_eq!(stdout(&out).matches('#').count(), 48);
    assert!(!stdout(&out).contains("->"));
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let fig1 = catalog_file("fig1", Format::Grid);
    for args in [
        vec!["catalog", "two-triangles", "--format", "grid"],
        vec!["afpp", fig1.to_str().unwrap()],
        vec!["render", "--scheme", "annulus", "--format", "svg"],
    ] {
        assert_eq!(dplane(&args).stdout, dplane(&args).stdout, "{args:?}");
    }
}
