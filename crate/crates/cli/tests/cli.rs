use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repdigits"))
        .args(args)
        .env_remove("NARAYANA_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_reports_full_table() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("Table 1: 37/37"), "{out}");
    assert!(!out.contains("FAILED"));
}

#[test]
fn search_above_six_is_empty() {
    let o = run(&["search", "--nmax", "280", "--lmin", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
}

#[test]
fn search_csv_columns() {
    let o = run(&["search", "--lmin", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let body: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body, ["n,m,l,a,b,value,trivial", "11,5,5,1,2,31,false", "13,5,6,1,2,63,false", "21,17,5,1,6,1555,false"]);
    assert!(out.starts_with("# tool: narayana"));
}

#[test]
fn search_json_is_identical_across_job_counts() {
    let one = run(&["search", "--lmin", "2", "--nmax", "120", "--format", "json", "--jobs", "1"]);
    let four = run(&["search", "--lmin", "2", "--nmax", "120", "--format", "json", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    let rows = v["data"].as_array().unwrap();
    assert_eq!(rows.len(), 457);
    for key in ["n", "m", "l", "a", "b", "value", "trivial"] {
        assert!(rows[0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn bound_for_base_100() {
    let o = run(&["bound", "--base", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("M_b                1.34630e35"));
}

#[test]
fn bound_json_for_all_bases() {
    let o = run(&["bound", "--all", "--format", "json", "--precision", "60"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["data"].as_array().unwrap().len(), 99);
    assert_eq!(v["meta"]["precision"], 60);
}

#[test]
fn reduce_small_range() {
    let o = run(&["reduce", "--base-range", "2:3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("2,10400175354214185870261533150638,200,206,204,224,"));
}

#[test]
fn blocks_subcommand() {
    assert_eq!(stdout(&run(&["blocks", "--value", "8888", "--block-size", "2"])).trim(), r#"{"block":"88","length":2}"#);
    assert_eq!(stdout(&run(&["blocks", "--value", "8889", "--block-size", "1"])).trim(), "null");
}

#[test]
fn seq_prints_terms() {
    let out = stdout(&run(&["seq", "--from", "14", "--to", "15"]));
    assert_eq!(out, "   14 88\n   15 129\n");
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["search", "--base-range", "1:5"]).status.code(), Some(3));
    assert_eq!(run(&["search", "--format", "xml"]).status.code(), Some(3));
    assert_eq!(run(&["search", "--precision", "10"]).status.code(), Some(3));
    assert_eq!(run(&["search", "--jobs", "0"]).status.code(), Some(3));
    assert_eq!(run(&["search", "--lmin", "1"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn precision_reads_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_repdigits"))
        .args(["bound", "--base", "2"])
        .env("NARAYANA_PRECISION", "20")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_repdigits"))
        .args(["bound", "--base", "2"])
        .env("NARAYANA_PRECISION", "45")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("# precision: 45 digits"));
}

#[test]
fn out_of_scope_bases_need_flag() {
    assert_eq!(run(&["search", "--base-range", "2:120", "--nmax", "30"]).status.code(), Some(3));
    let o = run(&["search", "--base-range", "2:120", "--nmax", "30", "--allow-out-of-scope", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("beyond the proved range"));
    assert!(stdout(&o).contains("# beyond_proved_range: true"));
}

#[test]
fn pipeline_small_range_passes() {
    let o = run(&["pipeline", "--base-range", "2:6", "--precision", "80"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("result: PASS"));
    assert!(out.contains("Table 1: 23/23"), "{out}");
}
