use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn ideal_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn whisker(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whisker"))
        .args(args)
        .output()
        .unwrap()
}

fn run_on(file: &NamedTempFile, args: &[&str]) -> Output {
    let path = file.path().to_str().unwrap();
    let mut all: Vec<&str> = args.to_vec();
    all.push(path);
    whisker(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SQUARE: &str = "n 2\ngen 2 0\ngen 0 2\n";
const MIXED: &str = "# x^3, y^3, xy\nn 2\ngen 3 0\ngen 0 3\ngen 1 1\n";

#[test]
fn info_square() {
    let f = ideal_file(SQUARE);
    let o = run_on(&f, &["info"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("n\t2\n"));
    assert!(out.contains("bounds\t2 2\n"));
    assert!(out.contains("length\t4\n"));
    assert!(out.contains("h_vector\t1 2 1\n"));
}

#[test]
fn info_json_has_schema_version() {
    let f = ideal_file(SQUARE);
    let o = run_on(&f, &["--json", "info"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "info");
    assert_eq!(v["h_vector"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["bounds"], serde_json::json!([2, 2]));
}

#[test]
fn depth_table() {
    let f = ideal_file(MIXED);
    let o = run_on(&f, &["depth", "--kmax", "3"]);
    assert!(o.status.success());
    let rows: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .take(3)
        .map(|l| l.split('\t').take(3).collect::<Vec<_>>().join(","))
        .collect();
    assert_eq!(rows, ["1,2,3", "2,4,1", "3,4,1"]);
}

#[test]
fn missing_pure_power_exits_one() {
    let f = ideal_file("n 2\ngen 2 0\n");
    let o = run_on(&f, &["info"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not zero-dimensional: x2"));
}

#[test]
fn parse_error_names_line() {
    let f = ideal_file("n 2\ngen 2 0\ngen 0 two\n");
    let o = run_on(&f, &["info"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn scale_refusal_exits_two() {
    // 65 polarized variables exceed the face-mask width
    let f = ideal_file("n 1\ngen 65\n");
    let o = run_on(&f, &["info"]);
    assert_eq!(
        o.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(String::from_utf8_lossy(&o.stderr).contains("scale"));
}

#[test]
fn betti_with_oracle() {
    let f = ideal_file(MIXED);
    let o = run_on(&f, &["betti", "--oracle"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("i\tbeta\toracle\n0\t1\t1\n1\t5\t5\n2\t6\t6\n3\t2\t2\n"));
    assert!(out.contains("projdim\t3\n"));
    assert!(out.contains("agree\tyes\n"));
}

#[test]
fn lgens_and_facets() {
    let f = ideal_file(MIXED);
    let lgens = stdout(&run_on(&f, &["lgens"]));
    assert_eq!(lgens.lines().count(), 6);
    assert!(lgens.contains("3\tx2^2\t{x1_1,x2_3}\t{x2_1,x2_2}\n"));
    let facets = stdout(&run_on(&f, &["facets"]));
    assert_eq!(facets.lines().count(), 6);
}

#[test]
fn vd_and_shelling_verify() {
    let f = ideal_file(MIXED);
    let vd = run_on(&f, &["vd"]);
    assert!(vd.status.success());
    assert!(stdout(&vd).ends_with("verified\tyes\n"));
    let sh = run_on(&f, &["shelling"]);
    assert!(sh.status.success());
    assert!(stdout(&sh).ends_with("is_shelling\tyes\n"));
}

#[test]
fn verify_battery_passes() {
    let f = ideal_file(MIXED);
    let o = run_on(&f, &["verify"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(out.ends_with("overall\tpass\n"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn random_round_trips_through_verify() {
    for seed in 0..5u64 {
        let seed = seed.to_string();
        let o = whisker(&[
            "random", "--n", "3", "--bmax", "2", "--extra", "3", "--seed", &seed,
        ]);
        assert!(o.status.success());
        let f = ideal_file(&stdout(&o));
        let v = run_on(&f, &["verify"]);
        assert!(v.status.success(), "{}", stdout(&v));
    }
}

#[test]
fn output_is_deterministic() {
    let f = ideal_file(MIXED);
    for args in [
        &["vd"][..],
        &["--json", "depth"],
        &["verify"],
        &["--json", "lgens"],
    ] {
        assert_eq!(run_on(&f, args).stdout, run_on(&f, args).stdout);
    }
    let a = whisker(&["random", "--n", "2", "--bmax", "4", "--seed", "9"]);
    let b = whisker(&["random", "--n", "2", "--bmax", "4", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn random_rejects_zero_arguments() {
    let o = whisker(&["random", "--n", "0", "--bmax", "2"]);
    assert_eq!(o.status.code(), Some(1));
}
