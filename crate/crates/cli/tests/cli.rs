use std::io::Write;
use std::process::{Command, Output};

const OCTAHEDRON: &str = "3 6\n1 -1 0 0 0 0\n0 0 1 -1 0 0\n0 0 0 0 1 -1\n";
const CUBE: &str = "3 8\n1 1 1 1 -1 -1 -1 -1\n1 1 -1 -1 1 1 -1 -1\n1 -1 1 -1 1 -1 1 -1\n";
const FANO: &str = "5 3\n1 0 0\n0 1 0\n0 0 1\n-1 0 0\n0 -1 -1\n";

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tops-kit")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_exit_codes() {
    let oct = file(OCTAHEDRON);
    let cube = file(CUBE);
    let path = oct.path().to_str().unwrap();
    assert_eq!(run(&["check", path, "--predicate", "smooth-fano", "-q"]).status.code(), Some(0));
    assert_eq!(run(&["check", cube.path().to_str().unwrap(), "--predicate", "smooth-fano", "-q"]).status.code(), Some(1));
    assert_eq!(run(&["check", "/nonexistent", "--predicate", "reflexive"]).status.code(), Some(2));
    let o = run(&["check", path, "--predicate", "top"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with(": no\n"));
}

#[test]
fn json_envelope() {
    let oct = file(OCTAHEDRON);
    let o = run(&["--json", "check", oct.path().to_str().unwrap(), "--predicate", "reflexive"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "tops-kit/1");
    assert_eq!(v["kind"], "check");
    assert!(!v["limitations"].as_array().unwrap().is_empty());
    assert_eq!(v["data"]["all"], true);
}

#[test]
fn polar_of_octahedron_is_cube() {
    let oct = file(OCTAHEDRON);
    let o = run(&["polar", oct.path().to_str().unwrap()]);
    let s = stdout(&o);
    assert!(s.contains("8 3\n"));
    assert!(s.contains("-1 -1 -1\n") && s.contains("1 1 1\n"));
}

#[test]
fn fano_family_conditions() {
    let f = file(FANO);
    let s = stdout(&run(&["family", f.path().to_str().unwrap()]));
    assert!(s.starts_with("2 free parameters\n"), "{s}");
    assert!(s.contains("  a1 + 1 >= 0\n  a2 + 1 >= 0\n"));
    assert!(s.contains("divisibility: none\n"));
}

#[test]
fn instantiate_and_violation() {
    let f = file(FANO);
    let path = f.path().to_str().unwrap();
    let o = run(&["instantiate", path, "--params", "0,4"]);
    assert!(stdout(&o).starts_with("top of rank 4, short: true\n"));
    let o = run(&["instantiate", path, "--params", "-2,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a1"));
}

#[test]
fn classify_cube_base() {
    let oct = file(OCTAHEDRON);
    let path = oct.path().to_str().unwrap();
    let s = stdout(&run(&["classify-k3", path, "--params", "0,0,0"]));
    assert!(s.contains("case 3(b)"), "{s}");
    assert!(s.contains("components: 8\n"));
    assert!(s.contains("Euler characteristic 2"));
    let o = run(&["--json", "classify-k3", path, "--params", "-1,-1,1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["data"]["components"], 3);
}

#[test]
fn classify_a_top_given_directly() {
    // The unit-cube summit over the cube base.
    let text = "4 16\n\
        -1 -1 -1 -1 1 1 1 1 0 0 0 0 1 1 1 1\n\
        -1 -1 1 1 -1 -1 1 1 0 0 1 1 0 0 1 1\n\
        -1 1 -1 1 -1 1 -1 1 0 1 0 1 0 1 0 1\n\
        0 0 0 0 0 0 0 0 1 1 1 1 1 1 1 1\n";
    let f = file(text);
    let o = run(&["check", f.path().to_str().unwrap(), "--predicate", "short-top", "-q"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&run(&["classify-k3", f.path().to_str().unwrap()]));
    assert!(s.contains("components: 8\n"), "{s}");
}

#[test]
fn export_is_byte_stable() {
    let f = file(FANO);
    let path = f.path().to_str().unwrap();
    let a = run(&["export", path, "--params", "0,4"]);
    let b = run(&["export", path, "--params", "0,4"]);
    assert_eq!(a.stdout, b.stdout);
    let s = stdout(&a);
    // The summit is a triangular prism.
    assert_eq!(s.lines().filter(|l| l.starts_with("v ")).count(), 6);
    assert_eq!(s.lines().filter(|l| l.starts_with("f ")).count(), 5, "{s}");

    let oct = file(OCTAHEDRON);
    let s = stdout(&run(&["export", oct.path().to_str().unwrap(), "--object", "polytope"]));
    assert_eq!(s.lines().filter(|l| l.starts_with("v ")).count(), 6);
    assert_eq!(s.lines().filter(|l| l.starts_with("f ")).count(), 8);

    let s = stdout(&run(&["export", oct.path().to_str().unwrap(), "--params", "-1,-1,2", "--object", "graph", "--format", "edges"]));
    assert_eq!(s, "0 1\n1 2\n2 3\n");
}

#[test]
fn export_to_file() {
    let oct = file(OCTAHEDRON);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.obj");
    let o = run(&["export", oct.path().to_str().unwrap(), "--params", "0,0,0", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let s = std::fs::read_to_string(out).unwrap();
    assert_eq!(s.lines().filter(|l| l.starts_with("v ")).count(), 8);
}

#[test]
fn sample_is_seeded() {
    let f = file(FANO);
    let path = f.path().to_str().unwrap();
    let a = stdout(&run(&["sample", path, "--seed", "3", "--count", "20"]));
    assert_eq!(a, stdout(&run(&["sample", path, "--seed", "3", "--count", "20"])));
    assert!(a.contains("20 instantiated as short tops"), "{a}");
}

#[test]
fn survey_of_small_file() {
    let f = file(&format!("{OCTAHEDRON}{CUBE}"));
    let o = run(&["--json", "survey", f.path().to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["data"]["counts"]["reflexive"], 2);
    assert_eq!(v["data"]["classes"][0]["case2_split"], true);
}

#[test]
fn database_records() {
    let o = run(&["check", "db:2d", "--predicate", "reflexive", "-q"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["check", "db:3d", "--record", "5000", "--predicate", "reflexive"]);
    assert_eq!(o.status.code(), Some(2));
}
