use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fdel_core::format::{parse_graph, write_graph};
use fdel_core::generate::random_graph;
use fdel_core::minors::are_isomorphic;
use fdel_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

fn fdel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files {
            dir: TempDir::new().unwrap(),
        }
    }

    fn put(&self, name: &str, text: &str) -> String {
        let p = self.dir.path().join(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_owned()
    }

    fn graph(&self, name: &str, g: &Graph) -> String {
        self.put(name, &write_graph(g))
    }

    fn family(&self, name: &str, members: &[(&str, Graph)]) -> String {
        let text: String = members
            .iter()
            .map(|(n, g)| format!("g {n}\n{}", write_graph(g)))
            .collect();
        self.put(name, &text)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn k3() -> Graph {
    Graph::complete(3)
}

#[test]
fn solve_examples() {
    let f = Files::new();
    let p2 = f.family("p2.fam", &[("P2", Graph::path(2))]);
    let two_p2 = f.family("2p2.fam", &[("2P2", Graph::path(2).copies(2))]);
    let k3_fam = f.family("k3.fam", &[("K3", k3())]);
    let g_k3 = f.graph("k3.g", &k3());
    let g_2k3 = f.graph("2k3.g", &k3().copies(2));

    let o = fdel(&[
        "solve", "--family", &p2, "--graph", &g_k3, "--ell", "2", "--type", "minor",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "YES");

    let o = fdel(&[
        "solve", "--family", &two_p2, "--graph", &g_2k3, "--ell", "1", "--type", "minor",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "NO");

    let o = fdel(&[
        "solve", "--family", &k3_fam, "--graph", &g_k3, "--ell", "1", "--engine", "turing",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lower-bound regime"));

    // auto falls back to brute force in that regime
    let o = fdel(&[
        "solve", "--family", &k3_fam, "--graph", &g_2k3, "--ell", "2",
    ]);
    assert_eq!(stdout(&o).trim(), "YES");
}

#[test]
fn bad_input_exits_two() {
    let f = Files::new();
    let bad = f.put("bad.g", "p edge 2 1\ne 1 3\n");
    let fam = f.family("p2.fam", &[("P2", Graph::path(2))]);
    let o = fdel(&["solve", "--family", &fam, "--graph", &bad, "--ell", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = fdel(&["analyze"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn engines_agree() {
    let f = Files::new();
    let fams = [
        f.family("a.fam", &[("2P2", Graph::path(2).copies(2))]),
        f.family("b.fam", &[("2P2", Graph::path(2).copies(2)), ("K3", k3())]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..12 {
        let g = random_graph(rng.gen_range(3..=8), 0.4, &mut rng);
        let gp = f.graph(&format!("g{i}.g"), &g);
        let ell = rng.gen_range(0..=g.n()).to_string();
        for fam in &fams {
            for ty in ["minor", "subgraph"] {
                let run = |engine: &str| {
                    let o = fdel(&[
                        "solve", "--graph", &gp, "--family", fam, "--ell", &ell, "--type", ty,
                        "--engine", engine,
                    ]);
                    assert_eq!(o.status.code(), Some(0));
                    stdout(&o)
                };
                assert_eq!(run("turing"), run("brute"));
            }
        }
    }
}

#[test]
fn query_log_and_emitted_instances() {
    let f = Files::new();
    let fam = f.family("2p2.fam", &[("2P2", Graph::path(2).copies(2))]);
    let g = f.graph("c6.g", &Graph::cycle(6));
    let log = f.path("q.jsonl");
    let trace = f.path("t.jsonl");
    let emit = f.path("queries");
    let o = fdel(&[
        "solve",
        "--graph",
        &g,
        "--family",
        &fam,
        "--ell",
        "3",
        "--log-queries",
        log.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
        "--emit-queries",
        emit.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "YES");
    let lines: Vec<Value> = fs::read_to_string(&log)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!lines.is_empty());
    for q in &lines {
        assert!(q["budget"].as_i64().unwrap() >= 0);
        assert!(q["original_n"].as_u64().unwrap() <= 6);
    }
    assert!(fs::read_to_string(&trace).unwrap().lines().count() >= 1);
    let emitted = fs::read_dir(&emit).unwrap().count();
    assert_eq!(emitted, lines.len());
}

#[test]
fn reduce_examples_and_round_trip() {
    let f = Files::new();
    let cnf = f.put("x1.cnf", "p cnf 1 1\n1 0\n");
    let k3_fam = f.family("k3.fam", &[("K3", k3())]);
    let two_k3 = f.family("2k3.fam", &[("2K3", k3().copies(2))]);
    let two_p2 = f.family("2p2.fam", &[("2P2", Graph::path(2).copies(2))]);
    for (fam, ell) in [(&k3_fam, 2), (&two_k3, 6)] {
        let out_g = f.path("out.g");
        let out_m = f.path("out.json");
        let o = fdel(&[
            "reduce",
            "--cnf",
            &cnf,
            "--family",
            fam,
            "--out-graph",
            out_g.to_str().unwrap(),
            "--out-meta",
            out_m.to_str().unwrap(),
            "--verify",
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        let meta: Value = serde_json::from_str(&fs::read_to_string(&out_m).unwrap()).unwrap();
        assert_eq!(meta["ell"], ell);
        assert_eq!(meta["type"], "minor");
        assert!(meta["modulator"].is_array());
        let text = fs::read_to_string(&out_g).unwrap();
        let g = parse_graph(&text).unwrap();
        assert_eq!(write_graph(&g), text);
        assert_eq!(meta["n"], g.n());
        assert!(are_isomorphic(&g, &parse_graph(&write_graph(&g)).unwrap()));
    }
    let o = fdel(&[
        "reduce",
        "--cnf",
        &cnf,
        "--family",
        &two_p2,
        "--out-graph",
        f.path("x.g").to_str().unwrap(),
        "--out-meta",
        f.path("x.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unsatisfiable_formula_verifies() {
    let f = Files::new();
    let cnf = f.put("u.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    let fam = f.family("p3.fam", &[("P3", Graph::path(3))]);
    let o = fdel(&[
        "reduce",
        "--cnf",
        &cnf,
        "--family",
        &fam,
        "--type",
        "subgraph",
        "--out-graph",
        f.path("u.g").to_str().unwrap(),
        "--out-meta",
        f.path("u.json").to_str().unwrap(),
        "--verify",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!(report["satisfiable"], false);
    assert_eq!(report["deletable"], false);
    assert_eq!(report["passed"], true);
}

#[test]
fn analyze_examples() {
    let f = Files::new();
    let o = fdel(&["analyze", "--graph", &f.graph("k4.g", &Graph::complete(4))]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["treewidth"], 3);
    assert_eq!(v["fvs_size"], 2);
    let o = fdel(&["analyze", "--graph", &f.graph("p3.g", &Graph::path(3))]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["slb"], 2);
    assert_eq!(v["cut_vertices"], serde_json::json!([1]));
    let fam = f.family("f.fam", &[("2P2", Graph::path(2).copies(2)), ("K3", k3())]);
    let o = fdel(&["analyze", "--family", &fam]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        (v["m"].clone(), v["alpha"].clone(), v["mintw"].clone()),
        (1.into(), 12.into(), 1.into())
    );
    assert_eq!(v["M"], "2P2");
}

#[test]
fn gadget_reports() {
    let f = Files::new();
    let h = f.graph("p3.g", &Graph::path(3));
    let out = f.path("gadget.g");
    let o = fdel(&[
        "gadget",
        "--pattern",
        &h,
        "--n",
        "2",
        "--out-graph",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["s_size"], 2);
    let g = parse_graph(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["vertices"], g.n());

    let o = fdel(&["gadget", "--pattern", &h, "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_mentions_commands() {
    let o = fdel(&["--help"]);
    let text = stdout(&o);
    for cmd in ["solve", "reduce", "gadget", "analyze"] {
        assert!(text.contains(cmd));
    }
    assert!(Path::new(env!("CARGO_BIN_EXE_fdel")).exists());
}
