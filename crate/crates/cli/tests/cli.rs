use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn cfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn write_k5(dir: &TempDir) -> String {
    let p = path(dir, "k5.g");
    let mut s = String::from("graph 5\n");
    for u in 0..5 {
        for v in u + 1..5 {
            s.push_str(&format!("{u} {v}\n"));
        }
    }
    fs::write(&p, s).unwrap();
    p
}

#[test]
fn hypergraph_pipeline_is_c8_free_and_pasted() {
    let dir = TempDir::new().unwrap();
    let (h, r, g) = (path(&dir, "h.uhg"), path(&dir, "r.uhg"), path(&dir, "p.g"));
    let dot = path(&dir, "p.dot");
    assert!(cfree(&[
        "--seed",
        "5",
        "gen-hypergraph",
        "--a",
        "3",
        "--n",
        "60",
        "--m",
        "120",
        "--out",
        &h
    ])
    .status
    .success());
    assert!(cfree(&[
        "repair",
        "--in",
        &h,
        "--k",
        "8",
        "--largest-component",
        "--out",
        &r
    ])
    .status
    .success());
    assert!(
        cfree(&["paste-hyperdouble", "--in", &r, "--dot", &dot, "--out", &g])
            .status
            .success()
    );
    assert!(fs::read_to_string(&dot).unwrap().starts_with("graph G {"));
    let v = cfree(&["verify-cfree", "--in", &g, "--L", "8"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).contains("8,true"));
    let p = cfree(&["verify-pasted", "--in", &g, "--l", "3"]);
    assert_eq!(p.status.code(), Some(0), "{}", stdout(&p));
}

#[test]
fn generation_is_deterministic() {
    let a = cfree(&[
        "--seed",
        "9",
        "gen-hypergraph",
        "--a",
        "3",
        "--n",
        "20",
        "--m",
        "30",
    ]);
    let b = cfree(&[
        "--seed",
        "9",
        "gen-hypergraph",
        "--a",
        "3",
        "--n",
        "20",
        "--m",
        "30",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("uhg 3 20"));
}

#[test]
fn k5_oracles() {
    let dir = TempDir::new().unwrap();
    let k5 = write_k5(&dir);
    let c4 = cfree(&["oracle", "c4free", "--in", &k5]);
    assert!(stdout(&c4).lines().nth(1).unwrap().starts_with("10,6,"));
    let cut = cfree(&["oracle", "maxcut", "--in", &k5]);
    assert!(stdout(&cut).lines().nth(1).unwrap().starts_with("10,6,"));
    let bip = cfree(&["oracle", "bipgirth", "--in", &k5, "--girth-gt", "4"]);
    assert!(stdout(&bip).lines().nth(1).unwrap().starts_with("10,4,"));
}

#[test]
fn verify_cfree_reports_cycles_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let k5 = write_k5(&dir);
    let o = cfree(&["verify-cfree", "--in", &k5, "--L", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("4,false,"));
    assert_eq!(
        cfree(&["verify-pasted", "--in", &k5, "--l", "3"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn errors_exit_with_two() {
    let o = cfree(&["verify-cfree", "--in", "/definitely/missing", "--L", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.g");
    fs::write(&bad, "graph 3\n0 7\n").unwrap();
    assert_eq!(
        cfree(&["oracle", "maxcut", "--in", &bad]).status.code(),
        Some(2)
    );
}

#[test]
fn derandomized_colouring_meets_guarantee() {
    let dir = TempDir::new().unwrap();
    let h = path(&dir, "h.uhg");
    cfree(&[
        "--seed",
        "2",
        "gen-hypergraph",
        "--a",
        "3",
        "--n",
        "40",
        "--m",
        "200",
        "--out",
        &h,
    ]);
    let out = stdout(&cfree(&["color-derand", "--in", &h, "--b", "2"]));
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    let (q, bound): (usize, usize) = (row[4].parse().unwrap(), row[5].parse().unwrap());
    assert!(q >= bound);
}

#[test]
fn exhaustive_q_and_randomlike_check() {
    let dir = TempDir::new().unwrap();
    let h = path(&dir, "h.uhg");
    cfree(&[
        "gen-hypergraph",
        "--a",
        "2",
        "--n",
        "8",
        "--m",
        "12",
        "--out",
        &h,
    ]);
    let q = cfree(&[
        "q-exhaustive",
        "--in",
        &h,
        "--b",
        "2",
        "--family",
        "nonmono",
    ]);
    assert!(q.status.success());
    assert!(stdout(&q).lines().nth(1).unwrap().starts_with("8,12,2,2,"));
    let r = cfree(&["check-randomlike", "--in", &h, "--b", "2", "--eps", "10"]);
    assert!(stdout(&r)
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("true,true,256,"));
    let s = cfree(&[
        "check-randomlike",
        "--in",
        &h,
        "--b",
        "2",
        "--eps",
        "10",
        "--mode",
        "sampled",
        "--samples",
        "50",
    ]);
    assert!(stdout(&s)
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("true,false,50,"));
}

#[test]
fn bipartite_pasting_and_extraction() {
    let dir = TempDir::new().unwrap();
    let (b, d) = (path(&dir, "b.g"), path(&dir, "d.g"));
    assert!(cfree(&[
        "--seed",
        "4",
        "gen-bipartite",
        "--n",
        "30",
        "--girth",
        "10",
        "--out",
        &b
    ])
    .status
    .success());
    assert!(
        cfree(&["paste-doubled", "--in", &b, "--l", "3", "--out", &d])
            .status
            .success()
    );
    assert_eq!(
        cfree(&["verify-cfree", "--in", &d, "--L", "8"])
            .status
            .code(),
        Some(0)
    );
    let x = cfree(&["extract", "--in", &b]);
    assert!(x.status.success());
    let sub = path(&dir, "x.g");
    fs::write(&sub, x.stdout).unwrap();
    assert_eq!(
        cfree(&["verify-cfree", "--in", &sub, "--L", "4"])
            .status
            .code(),
        Some(0)
    );
    let dot = stdout(&cfree(&["export-dot", "--in", &b, "--layers"]));
    assert!(dot.contains("label=\"L"));
}

#[test]
fn blowup_checks_uniformity() {
    let dir = TempDir::new().unwrap();
    let h = path(&dir, "h.uhg");
    fs::write(&h, "uhg 3 5\n0 1 2\n2 3 4\n").unwrap();
    let o = cfree(&["blowup-clique", "--in", &h, "--k", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("graph 5"));
    assert_eq!(
        cfree(&["blowup-clique", "--in", &h, "--k", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn experiments_write_csv() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "thm3.csv");
    let o = cfree(&["--out", &out, "experiment", "thm3", "--count", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(Path::new(&out)).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.starts_with("seed,"));
    assert_eq!(cfree(&["experiment", "nonsense"]).status.code(), Some(2));
}
