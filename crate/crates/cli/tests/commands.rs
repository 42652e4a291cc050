use std::path::PathBuf;
use std::process::Command;

use cbp_cli::JsonReport;

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name)
}

fn cbp(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cbp")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_on(cmd: &str, name: &str, extra: &[&str]) -> (i32, String, String) {
    let path = problem(name);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    cbp(&args)
}

fn json(cmd: &str, name: &str, extra: &[&str]) -> JsonReport {
    let (code, out, err) = run_on(cmd, name, &[&["--json"], extra].concat());
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn hilbert_two_sources() {
    let (code, out, _) = run_on("hilbert", "two-sources.ideal", &[]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1 3 5 6; ri = 3");
}

#[test]
fn analyze_two_cubics() {
    let r = json("analyze", "two-cubics.ideal", &[]);
    assert_eq!(r.hf, Some(vec![1, 3, 6, 8, 9]));
    assert_eq!(r.ri, Some(4));
    assert_eq!(r.delta, Some(1));
    assert_eq!(r.cbp, Some(true));
    assert_eq!(r.strict_gorenstein, Some(true));
    assert_eq!(r.strict_gorenstein_via_cbp_and_symmetry, Some(true));
    assert_eq!(r.strict_gorenstein_via_strict_cbp, Some(true));
    assert_eq!(r.det_c0.as_deref(), Some("z9^9"));
    let seps = r.separators.unwrap();
    assert!(seps.cbp);
    assert_eq!(seps.components.len(), 4);
}

#[test]
fn cbp_of_a_single_point() {
    let (code, out, _) = run_on("cbp", "single-point.ideal", &[]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "cbp = true");
    let r = json("cbp", "single-point.ideal", &[]);
    assert_eq!(r.dim, Some(1));
}

#[test]
fn false_verdicts_still_exit_zero() {
    let (code, out, _) = run_on("cbp", "two-sources.ideal", &[]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "cbp = false");
}

#[test]
fn json_reports_round_trip() {
    for name in ["two-sources.ideal", "three-points-f2.ideal", "gorenstein-nine.ideal"] {
        let r = json("analyze", name, &[]);
        let text = serde_json::to_string(&r).unwrap();
        let back: JsonReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}

#[test]
fn schema_is_stable_across_commands() {
    let keys = |r: &JsonReport| {
        let v = serde_json::to_value(r).unwrap();
        let mut k: Vec<String> = v.as_object().unwrap().keys().cloned().collect();
        k.sort();
        k
    };
    let a = json("hilbert", "two-sources.ideal", &[]);
    let b = json("analyze", "two-cubics.ideal", &[]);
    assert_eq!(keys(&a), keys(&b));
}

#[test]
fn sepdeg_of_two_sources() {
    let r = json("sepdeg", "two-sources.ideal", &[]);
    let s = r.separators.unwrap();
    assert!(!s.cbp);
    assert_eq!(s.components[0].sepdeg, Some(3));
    assert_eq!(s.components[0].rank, 2);
    assert_eq!(s.components[1].k, 2);
    assert_eq!(s.components[1].sepdeg, None);
    let (code, _, err) = run_on("sepdeg", "gorenstein-nine.ideal", &[]);
    assert_eq!(code, 1);
    assert!(err.contains("component"), "{err}");
}

#[test]
fn small_field_reports_the_extension() {
    let r = json("gor-cbp", "three-points-f2.ideal", &["--det-mode", "evaluated"]);
    assert_eq!(r.gor_and_cbp, Some(true));
    assert_eq!(r.field_used.as_deref(), Some("GF(2^2; a^2 + a + 1)"));
    let (code, _, err) = run_on("gor-cbp", "three-points-f2.ideal", &["--det-mode", "evaluated", "--max-extension", "1"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn seed_is_reported() {
    let r = json("gorenstein", "gorenstein-nine.ideal", &["--seed", "7"]);
    assert_eq!(r.seed, 7);
    assert_eq!(r.locally_gorenstein, Some(true));
}

#[test]
fn gb_in_lex() {
    let (code, out, _) = run_on("gb", "eight-points.ideal", &[]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
    let dir = std::env::temp_dir().join(format!("cbp-cli-gb-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("lex.ideal");
    std::fs::write(&file, "field: Q\nvars: x, y\norder: Lex\nideal:\n  x^2 - y, y^2 - 1\n").unwrap();
    let (code, out, _) = cbp(&["gb", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "y^2 - 1\nx^2 - y");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn input_errors_exit_one() {
    let dir = std::env::temp_dir().join(format!("cbp-cli-err-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.ideal");
    std::fs::write(&bad, "field: Q\nvars: x, y\nideal:\n  x^2 + w\n").unwrap();
    let (code, _, err) = cbp(&["cbp", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("4:9"), "{err}");
    let line = dir.join("line.ideal");
    std::fs::write(&line, "field: Q\nvars: x, y\nideal:\n  x\n").unwrap();
    let (code, _, err) = cbp(&["hilbert", line.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("zero-dimensional"), "{err}");
    let (code, _, _) = cbp(&["cbp", dir.join("missing.ideal").to_str().unwrap()]);
    assert_eq!(code, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
