use std::fs;

use glsg::cli::run_with_io;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut argv = vec!["glsg"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with_io(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn analyze_null3_json() {
    let o = run(&["analyze", "--family", "null:3"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["order"], 3);
    assert_eq!(v["regular"], true);
    assert_eq!(v["degree_set"], serde_json::json!([4]));
    assert_eq!(v["ns"], serde_json::json!([0, 0, 9]));
    assert_eq!(v["delta_max"], 0);
    assert_eq!(v["blocked"], false);
    assert_eq!(v["oracle"], "checked");
}

#[test]
fn analyze_brandt_reports_obstruction() {
    let o = run(&["analyze", "--family", "brandt:cyclic:2:2"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["order"], 9);
    assert_eq!(v["delta_max"], 45);
    assert_eq!(v["blocked"], true);
    assert_eq!(v["regular"], false);
}

#[test]
fn census_csv_to_order_4() {
    let o = run(&["census", "--max-order", "4", "--format", "csv"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(
        o.stdout,
        "order,total,regular,percentage\n1,1,1,100.0\n2,4,3,75.0\n3,18,3,16.7\n4,126,8,6.3\n"
    );
}

#[test]
fn census_refuses_order_6_without_flag() {
    let o = run(&["census", "--max-order", "6"], "");
    assert_eq!(o.code, 1);
    assert!(o.stderr.starts_with("OrderTooLarge n=6 max=5"), "{}", o.stderr);
}

#[test]
fn census_writes_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.bin");
    let p = path.to_str().unwrap();
    let first = run(&["census", "--max-order", "3", "--checkpoint", p], "");
    assert_eq!(first.code, 0, "{}", first.stderr);
    assert!(path.exists());
    // rerun resumes from the finished state and prints the same table
    let second = run(&["census", "--max-order", "3", "--checkpoint", p], "");
    assert_eq!(second.stdout, first.stdout);
}

#[test]
fn census_witnesses_json() {
    let o = run(&["census", "--max-order", "2", "--format", "json", "--witnesses"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert!(o.stdout.contains("witnesses"), "{}", o.stdout);
    assert!(v.is_object() || v.is_array());
}

#[test]
fn validate_reports_first_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "2\n2 1\n1 1\n").unwrap();
    let o = run(&["validate", "--file", path.to_str().unwrap()], "");
    assert_eq!(o.code, 1);
    assert_eq!(o.stderr.lines().next(), Some("NotAssociative i=1 j=1 k=2"));
    assert!(o.stdout.is_empty());
}

#[test]
fn validate_accepts_json_on_stdin() {
    let o = run(&["validate", "--stdin"], r#"{"n":2,"table":[[1,2],[2,1]]}"#);
    assert_eq!((o.code, o.stdout.as_str()), (0, "valid order=2\n"), "{}", o.stderr);
}

#[test]
fn malformed_input_is_an_error() {
    for bad in ["2\n1 2\n", "2\n1 3\n1 1\n", "x", "{\"n\":2}"] {
        let o = run(&["validate", "--stdin"], bad);
        assert_eq!(o.code, 1, "{bad:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn input_sources_are_exclusive() {
    assert_eq!(run(&["validate", "--stdin", "--family", "null:2"], "").code, 2);
    assert_eq!(run(&["validate"], "").code, 2);
    assert_eq!(run(&["validate", "--family", "nope:2"], "").code, 1);
}

#[test]
fn family_prints_table() {
    let o = run(&["family", "band:2x2"], "");
    assert_eq!(o.stdout, "4\n1 2 1 2\n1 2 1 2\n3 4 3 4\n3 4 3 4\n");
    let o = run(&["family", "cyclic:2", "--format", "json"], "");
    assert_eq!(o.stdout.trim_end(), r#"{"n":2,"table":[[1,2],[2,1]]}"#);
}

#[test]
fn graph_exports() {
    let o = run(&["graph", "--family", "null:2"], "");
    assert_eq!(o.stdout.trim_end(), "1 4\n2 3");
    let o = run(&["graph", "--stdin"], "2\n1 1\n1 2\n");
    assert_eq!(o.stdout.trim_end(), "2 3\n2 4\n3 4");
    let o = run(&["graph", "--family", "null:2", "--export", "dot"], "");
    assert!(o.stdout.starts_with("graph glsg {\n  1 [label=\"(1,1,2)\"];\n"), "{}", o.stdout);
    assert!(o.stdout.contains("  1 -- 4;\n"));
    assert!(o.stdout.ends_with("}\n"));
}

#[test]
fn graph_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let o = run(&["graph", "--family", "null:2", "--output", path.to_str().unwrap()], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(fs::read_to_string(&path).unwrap().trim_end(), "1 4\n2 3");
}

#[test]
fn spectrum_null3() {
    let o = run(&["spectrum", "--family", "null:3"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["clusters"], serde_json::json!([[-2.0, 4], [1.0, 4], [4.0, 1]]));
    assert_eq!(v["energy"], 16.0);
}

#[test]
fn spectrum_blocks() {
    let o = run(&["spectrum", "--family", "null:2", "--blocks"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("blocks"), "{}", o.stdout);
}

#[test]
fn help_mentions_formats() {
    let o = run(&["--help"], "");
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("brandt:cyclic:M:N"));
}
