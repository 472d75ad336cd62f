use std::path::Path;
use std::process::{Command, Output};

fn geodex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geodex")).args(args).env_remove("GEODEX_THREADS").output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    let out = geodex(args);
    out.status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

const PATH_GRAPH: &str =
    r#"{"meta":{"family":"path","params":{}},"n":3,"labels":[[0],[1],[2]],"adjacency":[[1],[0,2],[1]]}"#;

#[test]
fn exit_code_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let j52 = dir.path().join("j52.json");
    let gdx = dir.path().join("j52.gdx");
    let broken = dir.path().join("broken.json");
    let truncated = dir.path().join("truncated.gdx");
    let path3 = dir.path().join("path3.json");
    let missing = dir.path().join("missing.json");
    std::fs::write(&broken, "{\"n\": 3").unwrap();
    std::fs::write(&path3, PATH_GRAPH).unwrap();
    assert_eq!(code(&["build", "johnson", "--n", "5", "--k", "2", "--out", path_str(&j52)]), 0);
    assert_eq!(
        code(&["build", "johnson", "--n", "5", "--k", "2", "--graph-format", "gdx1", "--out", path_str(&gdx)]),
        0
    );
    let bytes = std::fs::read(&gdx).unwrap();
    std::fs::write(&truncated, &bytes[..bytes.len() - 2]).unwrap();

    let sp = ["--space", "sp", "--omega", "3", "--q", "2"];
    let with = |head: &[&'static str], tail: &[&'static str]| -> Vec<&'static str> {
        head.iter().chain(tail).copied().collect()
    };
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (with(&["build", "pg"], &["--space", "sp", "--omega", "3", "--q", "2", "--k", "2"]), 0),
        (vec!["build", "johnson", "--n", "3", "--k", "2"], 2),
        (vec!["build", "grassmann", "--n", "4", "--k", "2", "--q", "6"], 2),
        (vec!["build", "hamming", "--k", "3"], 2),
        (vec!["build", "johnson", "--n", "5", "--k", "2", "--q", "3"], 2),
        (vec!["build", "nosuchfamily", "--k", "3"], 2),
        (vec!["build", "hamming", "--k", "20", "--m", "4"], 3),
        (vec!["build", "johnson", "--n", "30", "--k", "10", "--max-vertices", "1000"], 3),
        (vec!["array", "--spec", "johnson(5,2)"], 0),
        (vec!["array", "--graph", path_str(&j52)], 0),
        (vec!["array", "--graph", path_str(&gdx)], 0),
        (vec!["array", "--graph", path_str(&broken)], 4),
        (vec!["array", "--graph", path_str(&truncated)], 4),
        (vec!["array", "--graph", path_str(&missing)], 4),
        (vec!["array", "--graph", path_str(&path3)], 1),
        (vec!["array", "--spec", "johnson(5,2)", "--family", "johnson"], 2),
        (vec!["census", "--spec", "hamming(3,2)"], 0),
        (vec!["check", "gtg", "--family", "dualpolar", "--space", "sp", "--omega", "2", "--q", "2"], 0),
        (vec!["check", "gtg", "--spec", "pg(sp,3,2,2)"], 1),
        (vec!["check", "gtg", "--spec", "pg(sp,3,2,2)", "--rooted"], 1),
        (vec!["check", "gtg", "--graph", path_str(&j52)], 2),
        (vec!["check", "dtg", "--spec", "cycle(7)"], 0),
        (vec!["check", "primitivity", "--spec", "hamming(3,2)"], 1),
        (vec!["check", "primitivity", "--spec", "johnson(5,2)"], 0),
        (vec!["check", "array", "--spec", "pg(sp,3,2,2)"], 1),
        (vec!["check", "bijection", "--spec", "johnson(5,2)"], 0),
        (vec!["check", "bijection", "--spec", "cycle(7)"], 2),
        (with(&["check", "pg-orbits", "--k", "2"], &sp), 0),
        (vec!["check", "screens", "--qmax", "1000"], 0),
        (vec!["screens", "--qmax", "3"], 2),
        (with(&["pg", "witness", "--k", "1"], &sp), 2),
        (with(&["pg", "witness", "--k", "2"], &sp), 0),
        (with(&["pg", "opposite", "--k", "2", "--x", "0", "--y", "0"], &sp), 2),
        (with(&["pg", "distance", "--k", "2", "--x", "0", "--y", "999"], &sp), 2),
        (with(&["pg", "types", "--k", "2", "--m", "2"], &["--space", "sp", "--omega", "4", "--q", "2"]), 0),
        (with(&["pg", "types", "--k", "3", "--m", "2"], &sp), 2),
        (vec!["orbits", "--spec", "johnson(5,2)", "--object", "arcs", "--length", "0"], 2),
        (vec!["orbits", "--spec", "johnson(5,2)", "--object", "pairs", "--length", "2"], 0),
        (vec!["orbits", "--spec", "cycle(6)", "--object", "pairs", "--length", "9"], 2),
        (vec!["nonsense"], 2),
        (vec!["array", "--spec", "johnson(5,2)", "--threads", "0"], 2),
    ];
    assert!(cases.len() >= 20);
    for (args, expected) in &cases {
        let out = geodex(args);
        assert_eq!(
            out.status.code(),
            Some(*expected),
            "{args:?}\nstdout: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn nonadjacent_path_is_rejected() {
    let first =
        geodex(&["pg", "distance", "--space", "sp", "--omega", "3", "--q", "2", "--k", "2", "--x", "0", "--y", "1"]);
    let report: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let d = report["report"]["distance"].as_u64().unwrap();
    let path = if d == 1 { "0,1,0" } else { "0,1" };
    let out = geodex(&["pg", "normalize", "--space", "sp", "--omega", "3", "--q", "2", "--k", "2", "--path", path]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "pg",
        "normalize",
        "--space",
        "sp",
        "--omega",
        "3",
        "--q",
        "2",
        "--k",
        "2",
        "--random",
        "4",
        "--length",
        "3",
        "--seed",
        "7",
    ];
    let a = geodex(&args);
    let b = geodex(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut other = args.to_vec();
    *other.last_mut().unwrap() = "8";
    assert_ne!(geodex(&other).stdout, a.stdout);
    let census = ["census", "--spec", "grassmann(4,2,2)", "--format", "tsv"];
    assert_eq!(geodex(&census).stdout, geodex(&census).stdout);
}

#[test]
fn reports_echo_config_and_honour_out() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("report.json");
    let out = geodex(&["check", "pg-orbits", "--space", "sp", "--omega", "3", "--q", "2", "--k", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["command"], "check pg-orbits");
    assert_eq!(v["config"]["seed"], 0);
    assert_eq!(v["report"]["lengths"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["report"]["group_order"], "1451520");
    let written = geodex(&["array", "--spec", "johnson(5,2)", "--out", path_str(&file)]);
    assert!(written.stdout.is_empty());
    let stdout = geodex(&["array", "--spec", "johnson(5,2)"]).stdout;
    assert_eq!(std::fs::read(&file).unwrap(), stdout);
    let text =
        String::from_utf8(geodex(&["build", "johnson", "--n", "5", "--k", "2", "--format", "text"]).stdout).unwrap();
    assert!(text.starts_with("# config "));
    assert!(text.contains("n = 10\n") && text.contains("valency = 6\n") && text.contains("diameter = 2\n"));
}

#[test]
fn thread_count_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_geodex"))
        .args(["array", "--spec", "cycle(5)"])
        .env("GEODEX_THREADS", "2")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["threads"], 2);
}
