use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galois-census")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn dd_prints_the_value() {
    let o = run(&["dd", "-n", "3", "--prefix", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-432");
    let o = run(&["dd", "-n", "4", "--prefix", "-1,0,2", "--inner"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Disc_x = "));
    // wrong prefix length
    assert_eq!(run(&["dd", "-n", "4", "--prefix", "1"]).status.code(), Some(2));
}

#[test]
fn classify_reports_group_and_evidence() {
    let o = run(&["classify", "x^5-2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("group: F20"), "{s}");
    assert!(s.contains("certainty: certified"), "{s}");
    assert!(s.contains("discriminant 50000"), "{s}");
    let o = run(&["classify", "x^2 - 5", "--disc", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["certificate"]["d"], "5");
    assert_eq!(run(&["classify", "x^^2"]).status.code(), Some(2));
}

#[test]
fn ftcheck_passes_the_saturating_instance() {
    let o = run(&["ftcheck", "-p", "3", "-n", "2", "--sigma", "1^2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.lines().nth(1).unwrap().starts_with("3,2,1^2,1,1,1,3,"), "{s}");
    assert!(s.lines().nth(1).unwrap().ends_with(",true"));
}

#[test]
fn usage_and_resource_errors() {
    assert_eq!(run(&["census", "-n", "3", "-H", "-5"]).status.code(), Some(2));
    assert_eq!(run(&["census", "-n", "3", "-H", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["census", "-n", "3", "-H", "2", "--delta", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["census", "-n", "7", "-H", "30"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn census_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (path, shards) in [(&a, "1"), (&b, "8")] {
        let o = run(&["census", "-n", "3", "-H", "6", "--shards", shards, "-o", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("census n=3 H=6"));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let meta = std::fs::read_to_string(dir.path().join("a.csv.meta")).unwrap();
    assert!(meta.lines().all(|l| l.starts_with('#')));
    // no temporaries left behind
    let mut names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names, ["a.csv", "a.csv.meta", "b.csv", "b.csv.meta"]);
}

#[test]
fn thread_override_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_galois-census"))
        .args(["census", "-n", "2", "-H", "3"])
        .env("GALOIS_CENSUS_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_fits_a_series() {
    let dir = tempfile::tempdir().unwrap();
    let mut inputs = Vec::new();
    for h in [4, 8, 16] {
        let p = dir.path().join(format!("h{h}.csv"));
        let o = run(&["census", "-n", "3", "-H", &h.to_string(), "-o", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        inputs.push(p.to_str().unwrap().to_string());
    }
    let prefix = dir.path().join("e3");
    let mut args = vec!["report"];
    args.extend(inputs.iter().map(String::as_str));
    args.extend(["-o", prefix.to_str().unwrap()]);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let slope: f64 = stdout(&o).lines().find_map(|l| l.strip_prefix("slope ")).unwrap().parse().unwrap();
    assert!((1.5..2.5).contains(&slope), "{slope}");
    let csv = std::fs::read_to_string(prefix.with_extension("csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
    let gp = std::fs::read_to_string(prefix.with_extension("gp")).unwrap();
    assert!(gp.contains("set logscale xy") && gp.contains("e3.csv"));
    assert!(Path::new(&prefix.with_extension("gp")).exists());
}

#[test]
fn tables_and_boxcount() {
    let o = run(&["tables", "-n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("4,")).count(), 5);
    let o = run(&["tables"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("degree,")).count(), 1);
    let o = run(&["boxcount", "-n", "2", "-H", "5", "--cond", "3:1"]);
    assert!(stdout(&o).starts_with("count 41\n"));
    assert_eq!(run(&["boxcount", "-n", "2", "-H", "5", "--cond", "4:1"]).status.code(), Some(2));
}
