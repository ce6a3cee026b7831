use std::process::{Command, Output};

fn tropenum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropenum")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = tropenum(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn polygon_invariants() {
    let text = stdout(&["polygon", "--vertices", "0,0;3,0;0,3", "--genus", "0"]);
    for line in ["boundary=9", "interior=1", "dim=8"] {
        assert!(text.lines().any(|l| l == line), "{line} missing from\n{text}");
    }
    let text = stdout(&["polygon", "--vertices", "0,0;2,1;1,2"]);
    assert!(text.contains("boundary=3\ninterior=1\n"));
}

#[test]
fn polygon_from_file_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("triangle.txt");
    std::fs::write(&path, "0 0\n3 0\n0 3\n").unwrap();
    let text = stdout(&["polygon", "--file", path.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["boundary"], 9);
    assert_eq!(v["severi_dimension"], 8);
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(tropenum(&["polygon", "--vertices", "0,0;1,x"]).status.code(), Some(2));
    assert_eq!(tropenum(&["polygon", "--vertices", "0,0;1,1;2,2"]).status.code(), Some(2));
    assert_eq!(tropenum(&["count", "--genus", "0"]).status.code(), Some(2));
    assert_eq!(tropenum(&["nonimmersion", "--example-4-3", "--char", "4"]).status.code(), Some(2));
    assert_eq!(tropenum(&["recursion", "ch", "--d", "3", "--delta", "-1"]).status.code(), Some(2));
    assert_eq!(tropenum(&["kite", "--k", "3", "--k-prime", "1", "--genus", "0"]).status.code(), Some(2));
}

#[test]
fn counts() {
    let total = |args: &[&str]| {
        let text = stdout(args);
        text.lines().find_map(|l| l.strip_prefix("total ")).unwrap().to_string()
    };
    assert_eq!(total(&["count", "--degree-triangle", "3", "--genus", "0", "--irreducible", "--seed", "1"]), "12");
    assert_eq!(total(&["count", "--degree-triangle", "1", "--genus", "0", "--irreducible"]), "1");
    assert_eq!(total(&["count", "--degree-triangle", "3", "--genus", "1", "--irreducible"]), "1");
    // Without --irreducible, pairs of lines through four points are counted too.
    assert_eq!(total(&["count", "--degree-triangle", "2", "--genus", "-1"]), "3");
}

#[test]
fn count_json_is_byte_stable_and_svgs_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let json = dir.path().join(name);
        let svg = dir.path().join(format!("{name}.svg"));
        stdout(&[
            "count",
            "--degree-triangle",
            "3",
            "--genus",
            "0",
            "--irreducible",
            "--seed",
            "4",
            "--json",
            json.to_str().unwrap(),
            "--svg-dir",
            svg.to_str().unwrap(),
        ]);
        (std::fs::read(json).unwrap(), svg)
    };
    let (a, svgs) = run("a.json");
    let (b, _) = run("b.json");
    assert_eq!(a, b);
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["total"], "12");
    let types = report["per_type"].as_array().unwrap().len();
    assert_eq!(std::fs::read_dir(svgs).unwrap().count(), types);

    let threaded = Command::new(env!("CARGO_BIN_EXE_tropenum"))
        .env("TROPENUM_THREADS", "2")
        .args(["count", "--degree-triangle", "3", "--genus", "0", "--irreducible", "--seed", "4", "--json", "-"])
        .output()
        .unwrap();
    assert!(threaded.status.success());
    assert_eq!(threaded.stdout, a);
}

#[test]
fn recursion_tables() {
    let text = stdout(&["recursion", "kontsevich", "--max-d", "5"]);
    let values: Vec<&str> = text.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(values, ["1", "1", "12", "620", "87304"]);
    assert!(stdout(&["recursion", "ch", "--d", "3", "--delta", "1"]).ends_with("3\t1\t12\n"));
    assert!(stdout(&["recursion", "ch", "--d", "2", "--delta", "1"]).ends_with("2\t1\t3\n"));
    let json = stdout(&["recursion", "ch", "--d", "3", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&json).unwrap();
    let values: Vec<&str> = rows.as_array().unwrap().iter().map(|r| r["N"].as_str().unwrap()).collect();
    assert_eq!(values, ["1", "12", "21", "15"]);
}

#[test]
fn component_bounds() {
    assert_eq!(stdout(&["components", "--vertices", "0,0;1,0;-16,105", "--genus", "1"]), "7\n");
    assert_eq!(stdout(&["kite", "--k", "2", "--k-prime", "3", "--genus", "2"]), "2\n");
}

#[test]
fn baby_example_tropicalization() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("baby.svg");
    let text = stdout(&["tropicalize", "--baby-example", "--mu-valuation", "1", "--svg", svg.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["positions"], serde_json::json!([["0/1", "0/1"], ["0/1", "1/1"]]));
    assert_eq!(v["edges"][0]["length"], "1/1");
    let mut slopes: Vec<(i64, i64)> = v["legs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| (l["slope"][0].as_i64().unwrap(), l["slope"][1].as_i64().unwrap()))
        .collect();
    slopes.sort();
    assert_eq!(slopes, [(-1, 0), (0, -1), (0, 0), (1, 1)]);
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
}

#[test]
fn tropicalize_and_nonimmersion_from_spec_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("line.json");
    let arg = path.to_str().unwrap();
    std::fs::write(&path, r#"{"polygon": "0,0;1,0;0,1", "side_points": [["inf"], ["0"], ["s"]], "marks": ["1"]}"#)
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&["tropicalize", "--spec", arg])).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 2);
    std::fs::write(&path, r#"{"polygon": [[0,0],[2,1],[1,2]], "side_points": [["0"], ["1"], ["inf"]]}"#).unwrap();
    assert_eq!(stdout(&["nonimmersion", "--spec", arg, "--char", "3"]), "t=-1\n");
    std::fs::write(&path, "{").unwrap();
    assert_eq!(tropenum(&["tropicalize", "--spec", arg]).status.code(), Some(2));
    assert_eq!(tropenum(&["tropicalize", "--spec", "/nonexistent/spec.json"]).status.code(), Some(2));
}

#[test]
fn nonimmersion_points() {
    assert_eq!(stdout(&["nonimmersion", "--example-4-3", "--char", "3"]), "t=-1\n");
    assert_eq!(stdout(&["nonimmersion", "--example-4-3", "--char", "0"]), "none\n");
    assert_eq!(stdout(&["nonimmersion", "--example-4-3", "--char", "5"]), "none\n");
}

#[test]
fn audit_passes_for_conics() {
    let text = stdout(&["audit", "--degree-triangle", "2", "--genus", "0"]);
    assert!(text.starts_with("passed\n"), "{text}");
}
