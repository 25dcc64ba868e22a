use std::io::Write;
use std::process::{Command, Output};

use ecgrowth::curve::Curve;
use ecgrowth::growth::analyze;
use ecgrowth_cli::fixture::BUNDLED_FIXTURE;
use ecgrowth_cli::report::{CurveDoc, ReportDocument, TablesDocument, SCHEMA_VERSION};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecgrowth")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn fixture_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn analyze_coefficients() {
    let o = run(&["analyze", "--coeffs", "0,0,0,0,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("G = C6"));
}

#[test]
fn analyze_negative_leading_coefficient() {
    let o = run(&["analyze", "--coeffs", "-1,0,0,0,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn analyze_label() {
    let o = run(&["analyze", "--label", "30a7"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("growth (4 fields)") && s.contains("degree 8"), "{s}");

    let f = fixture_file(BUNDLED_FIXTURE);
    let o = run(&["analyze", "--label", "30a7", "--fixture", f.path().to_str().unwrap(), "--json"]);
    let doc: ReportDocument = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc.reports[0].growth.len(), 4);
    assert_eq!(doc.reports[0].degree, 8);
}

#[test]
fn analyze_errors() {
    let o = run(&["analyze", "--coeffs", "0,0,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("singular model"));
    assert_eq!(run(&["analyze", "--label", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--coeffs", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_roundtrip() {
    let o = run(&["analyze", "--coeffs", "1,0,1,-5334,-150368", "--json"]);
    let text = stdout(&o);
    let doc: ReportDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.schema_version, SCHEMA_VERSION);
    let e = Curve::from_ints([1, 0, 1, -5334, -150368]).unwrap();
    assert_eq!(doc.reports, vec![CurveDoc::new(None, &analyze(&e).unwrap())]);
    let again: ReportDocument = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(again, doc);
}

#[test]
fn verify_bundled_table() {
    let o = run(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("54/54 rows verified"));
}

#[test]
fn verify_is_order_independent() {
    let rows: Vec<&str> = BUNDLED_FIXTURE.lines().rev().collect();
    let f = fixture_file(&rows.join("\n"));
    let o = run(&["verify-paper", "--fixture", f.path().to_str().unwrap(), "--jobs", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("54/54 rows verified"));
}

#[test]
fn verify_reports_corrupted_row() {
    let text = BUNDLED_FIXTURE.replace("19a2 | 0,1,1,-769,-8470 | 1x1 | -3:1x3", "19a2 | 0,1,1,-769,-8470 | 1x1 | -7:1x3");
    assert_ne!(text, BUNDLED_FIXTURE);
    let f = fixture_file(&text);
    let o = run(&["verify-paper", "--fixture", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("FAIL 19a2") && s.contains("53/54 rows verified"), "{s}");
    assert_eq!(s.matches("FAIL").count(), 1);
}

#[test]
fn verify_empty_fixture() {
    let f = fixture_file("# nothing here\n");
    let o = run(&["verify-paper", "--fixture", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 rows"));
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn malformed_fixture_is_a_usage_error() {
    let f = fixture_file("19a2 | 0,1,1,-769,-8470 | 1x1 | abc:1x3 | 1x3 | 2\n");
    let o = run(&["verify-paper", "--fixture", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("19a2"));
}

#[test]
fn batch_is_deterministic() {
    let seq = run(&["batch", "--json"]);
    let par = run(&["batch", "--json", "--jobs", "4"]);
    assert_eq!(seq.status.code(), Some(0));
    assert_eq!(stdout(&seq), stdout(&par));
    let doc: ReportDocument = serde_json::from_slice(&seq.stdout).unwrap();
    assert_eq!(doc.reports.len(), 54);
    assert!(doc.reports.iter().all(|r| r.flags.all_pass()));
}

#[test]
fn tables_dump() {
    let o = run(&["tables"]);
    let s = stdout(&o);
    assert!(s.contains("Phi_Q(2, C7) = {C7}"));
    assert!(s.contains("H_Q(2, C8) = {[C2xC8], [C16, C16, C2xC8]}"), "{s}");
    let o = run(&["tables", "--json"]);
    let doc: TablesDocument = serde_json::from_slice(&o.stdout).unwrap();
    let g22 = doc.growth.iter().find(|g| g.g == "2x2").unwrap();
    let h = g22.h_counts.iter().find(|c| c.h == "2x4").unwrap();
    assert_eq!(h.counts, vec![1, 2, 3]);
    assert_eq!(doc.phi_q_2inf.len(), 20);
}
