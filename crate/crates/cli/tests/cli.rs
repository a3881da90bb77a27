//! End-to-end runs of the `pdnf` binary.

use pdnf_cli::AnalysisReport;
use std::io::Write;
use std::process::{Command, Output};

fn pdnf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdnf"))
        .args(args)
        .env_remove("PDNF_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn report(args: &[&str]) -> AnalysisReport {
    let o = pdnf(args);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(&o));
    serde_json::from_str(&stdout(&o)).expect("valid report JSON")
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn example1_is_linearized_through_its_symmetry() {
    let r = report(&["analyze", "--fixture", "example1", "-k", "8", "--json"]);
    let res = r.resonances.as_ref().unwrap();
    assert_eq!(res.entries.len(), 1);
    assert_eq!((res.entries[0].monomial.as_str(), res.entries[0].component), ("x^3", 2));

    let sym = r.symmetry.as_ref().unwrap();
    assert_eq!(sym.obstruction, None);
    assert_eq!(sym.degrees.iter().find(|d| d.degree == 3).unwrap().status, "parametrized");

    let nf = r.normal_form.as_ref().unwrap();
    assert_eq!(nf.method, "symmetry");
    assert_eq!(nf.verdict, "linear_through_8");
    assert_eq!(nf.normalized, ["x", "3*y"]);
    assert_eq!(nf.transformation, ["x", "y - x^2"]);
    let x3 = nf.degrees[1]
        .resonant
        .iter()
        .find(|e| e.monomial.as_deref() == Some("x^3"))
        .unwrap();
    assert_eq!((x3.component, x3.status.as_str()), (Some(2), "cancelled"));

    let c = r.convergence.as_ref().unwrap();
    assert_eq!(c.classification, "convergent_thm2");
    assert!(c.rule.starts_with("thm2"));
}

#[test]
fn text_report_marks_cancelled_resonance_and_cites_rule() {
    let o = pdnf(&["analyze", "--fixture", "example1", "--text"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert!(t.contains("degree 3: x^3 in component 2: cancelled"), "{t}");
    assert!(t.contains("convergence: convergent_thm2"));
    assert!(t.contains("rule: thm2"));
}

#[test]
fn example5_grid_linearizes_every_point() {
    let grid = temp_file("# alpha, beta sweep\nalpha, beta\n1/2, 2\n1, -1\n0, 3\n");
    let path = grid.path().to_str().unwrap();
    let o = pdnf(&["analyze", "--fixture", "example5", "-k", "12", "--grid", path, "--json"]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(&o));
    let reports: Vec<AnalysisReport> = serde_json::from_str(&stdout(&o)).unwrap();
    let expected = [("1/2", "2"), ("1", "-1"), ("0", "3")];
    assert_eq!(reports.len(), 3);
    for (r, (alpha, beta)) in reports.iter().zip(expected) {
        assert_eq!(r.input.params["alpha"], alpha);
        assert_eq!(r.input.params["beta"], beta);
        let nf = r.normal_form.as_ref().unwrap();
        assert_eq!(nf.verdict, "linear_through_12", "alpha={alpha}, beta={beta}");
        assert!(nf.linear);
        assert_eq!(r.convergence.as_ref().unwrap().classification, "convergent_thm2");
    }
}

#[test]
fn grid_output_is_deterministic_and_matches_single_runs() {
    let grid = temp_file("alpha, beta\n1/2, 2\n1, -1\n0, 3\n1/3, 1\n");
    let path = grid.path().to_str().unwrap();
    let args = ["classify", "--fixture", "example5", "-k", "5", "--grid", path, "--json"];
    let first = pdnf(&args);
    let second = pdnf(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let reports: Vec<AnalysisReport> = serde_json::from_str(&stdout(&first)).unwrap();
    let single = report(&[
        "classify", "--fixture", "example5", "-k", "5", "--param", "alpha=1", "--param", "beta=-1", "--json",
    ]);
    assert_eq!(reports[1], single);
}

#[test]
fn linear_input_gives_the_identity_transformation() {
    let f = temp_file("vars x, y;\ndx = 2*x;\ndy = -y;\n");
    let r = report(&["analyze", f.path().to_str().unwrap(), "-k", "6", "--json"]);
    let nf = r.normal_form.unwrap();
    assert!(nf.linear);
    assert_eq!(nf.verdict, "linear_through_6");
    assert_eq!(nf.transformation, ["x", "y"]);
    assert_eq!(nf.normalized, ["2*x", "-y"]);
}

#[test]
fn json_report_round_trips() {
    let o = pdnf(&["analyze", "--fixture", "example3", "-k", "5", "--flow", "--samples", "2", "--radius", "0.02", "--json"]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(&o));
    let text = stdout(&o);
    let r: AnalysisReport = serde_json::from_str(&text).unwrap();
    assert!(r.flow.is_some());
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", text);
}

#[test]
fn parse_only_report_omits_analysis_sections() {
    let o = pdnf(&["parse", "--fixture", "example3", "--param", "a1=2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["input", "schema_version"]);
    let r: AnalysisReport = serde_json::from_value(v).unwrap();
    assert_eq!(r.input.params["a1"], "2");
    assert_eq!(r.input.declared_symmetries, ["Y"]);
}

#[test]
fn degree_can_come_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_pdnf"))
        .args(["parse", "--fixture", "example1", "--json"])
        .env("PDNF_DEGREE", "5")
        .output()
        .unwrap();
    let r: AnalysisReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.input.degree, 5);
}

#[test]
fn exit_codes() {
    // parse error, reported with its position
    let bad = temp_file("vars x;\ndx = x + ;\n");
    let o = pdnf(&["analyze", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("2:8"), "{}", stderr(&o));

    // unknown parameter, malformed assignment, unknown flag
    assert_eq!(pdnf(&["analyze", "--fixture", "example1", "--param", "zeta=1"]).status.code(), Some(1));
    assert_eq!(pdnf(&["analyze", "--fixture", "example3", "--param", "a1"]).status.code(), Some(1));
    assert_eq!(pdnf(&["analyze", "--fixture", "example1", "--frobnicate"]).status.code(), Some(1));
    assert_eq!(pdnf(&["analyze", "/nonexistent/field.txt"]).status.code(), Some(1));

    // malformed grid
    let grid = temp_file("alpha, beta\n1/2\n");
    let o = pdnf(&["analyze", "--fixture", "example5", "--grid", grid.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    // obstruction: no symmetry with identity linear part exists
    let o = pdnf(&["analyze", "--fixture", "resonant", "-k", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("obstructed at degree 2"));

    // success
    assert_eq!(pdnf(&["symmetry", "--fixture", "example1", "-k", "4"]).status.code(), Some(0));
}

#[test]
fn symmetry_command_reports_commutators() {
    let r = report(&["symmetry", "--fixture", "example1", "-k", "6", "--json"]);
    let c = r.commutators.unwrap();
    assert_eq!(c.fields, ["X", "Y", "Z1", "Z2", "Y_found"]);
    assert!(c.all_commute && c.closes);
    assert!(c.pairs.iter().all(|p| p.linear_part_ok));
}

#[test]
fn target_matrix_search_and_bruno() {
    let r = report(&[
        "classify", "--fixture", "example3", "-k", "5", "--target-matrix", "1,0,0;0,-2,0;0,0,4", "--json",
    ]);
    let s = r.symmetry.unwrap();
    assert_eq!(s.obstruction, None);
    assert!(r.convergence.unwrap().classification.starts_with("convergent"));

    let r = report(&["bruno", "--fixture", "example2", "--kmax", "4", "--json"]);
    let w = r.omega.unwrap();
    assert_eq!(w.entries.len(), 4);
    assert_eq!(w.entries[0].omega, None);
    assert!(w.entries[1..].iter().all(|e| e.omega == Some(1.0)));
}

#[test]
fn flowcheck_passes_on_example1() {
    let r = report(&["flowcheck", "--fixture", "example1", "-k", "6", "--samples", "3", "--json"]);
    let f = r.flow.unwrap();
    assert!(f.passed, "max deviation {}", f.max_deviation);
    assert_eq!(f.deviations.len(), 3);
}

#[test]
fn fixtures_command_lists_and_prints() {
    let o = pdnf(&["fixtures"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("example5 ")));
    let o = pdnf(&["fixtures", "resonant"]);
    assert!(stdout(&o).contains("dy = 2*y + x^2;"));
}

#[test]
fn schema_document_lists_every_report_field() {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../../../docs/report.schema.json")).expect("schema is valid JSON");
    let props = &schema["$defs"]["report"]["properties"];
    let o = pdnf(&["analyze", "--fixture", "example1", "-k", "4", "--flow", "--samples", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for (section, value) in v.as_object().unwrap() {
        let declared = &props[section];
        assert!(!declared.is_null(), "section {section} missing from the schema");
        if let (Some(fields), Some(decl)) = (value.as_object(), declared["properties"].as_object()) {
            for f in fields.keys() {
                assert!(decl.contains_key(f), "{section}.{f} missing from the schema");
            }
        }
    }
}
