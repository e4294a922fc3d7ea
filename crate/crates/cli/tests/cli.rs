use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn lpsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpsurf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lpsurf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn mutate_prints_the_new_seed() {
    let o = lpsurf(&["mutate", "--seed", &fixture("example_norm.json"), "--at", "a"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["cluster"], serde_json::json!(["a'", "b", "c"]));
    assert_eq!(v["polys"], serde_json::json!(["b + 1", "a'*c + 1", "a'^2 + b"]));
}

#[test]
fn mutating_twice_returns_the_input() {
    let once = lpsurf(&["mutate", "--seed", &fixture("example_norm.json"), "--at", "1"]);
    let path = scratch("once.json");
    std::fs::write(&path, &once.stdout).unwrap();
    let twice = lpsurf(&["mutate", "--seed", path.to_str().unwrap(), "--at", "a'", "--name", "a"]);
    assert!(twice.status.success());
    let back = lpsurf::lp_core::LPSeed::from_json(&stdout(&twice)).unwrap();
    let orig = lpsurf::lp_core::LPSeed::from_json(&std::fs::read_to_string(fixture("example_norm.json")).unwrap()).unwrap();
    assert!(lpsurf::lp_core::seeds_equal(&back, &orig).unwrap());
}

#[test]
fn normalize_divides_by_a_squared() {
    let o = lpsurf(&["normalize", "--seed", &fixture("example_norm.json"), "--at", "c"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let (poly, note) = out.trim().strip_prefix("c: ").unwrap().split_once("  ").unwrap();
    assert_eq!(note, "(divided by a^2)");
    let seed = lpsurf::lp_core::LPSeed::from_json(&std::fs::read_to_string(fixture("example_norm.json")).unwrap()).unwrap();
    let parse = |t: &str| lpsurf::poly::Polynomial::parse(seed.ctx(), t).unwrap();
    assert_eq!(parse(poly), parse("((b + 1)^2 + a^2*b)*a^-2"));
}

#[test]
fn compare_graphs_on_the_hexagon() {
    let o = lpsurf(&["compare-graphs", "--surface", &fixture("hexagon.json")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "isomorphic: true, nodes=14, edges=21");
    let o = lpsurf(&["--jobs", "1", "compare-graphs", "--surface", &fixture("mobius3.json")]);
    assert_eq!(stdout(&o).trim(), "isomorphic: true, nodes=16, edges=24");
}

#[test]
fn exports_do_not_depend_on_the_worker_count() {
    let mut outs = Vec::new();
    for jobs in ["1", "4"] {
        for format in ["dot", "json"] {
            let o = lpsurf(&["--jobs", jobs, "explore", "--surface", &fixture("annulus.json"), "--depth", "3", "--format", format]);
            assert!(o.status.success());
            outs.push(o.stdout);
        }
    }
    assert_eq!(outs[0], outs[2]);
    assert_eq!(outs[1], outs[3]);
    let dot = String::from_utf8(outs[0].clone()).unwrap();
    assert!(dot.starts_with("graph exchange {"));
}

#[test]
fn explore_writes_graph_files_that_compare() {
    let a = scratch("seeds.json");
    let b = scratch("flips.json");
    let hex = fixture("hexagon.json");
    assert!(lpsurf(&["explore", "--surface", &hex, "--out", a.to_str().unwrap()]).status.success());
    assert!(lpsurf(&["explore", "--surface", &hex, "--flips", "--out", b.to_str().unwrap()]).status.success());
    let o = lpsurf(&["compare-graphs", "--graphs", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "isomorphic: true, nodes=14, edges=21");
}

#[test]
fn verify_laurent_reports_no_violations() {
    let o = lpsurf(&["verify-laurent", "--surface", &fixture("mobius3.json"), "--sequences", "20"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("violations=0"));
}

#[test]
fn validate_flags_reducible_polynomials() {
    let o = lpsurf(&["validate", "--seed", &fixture("bad.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("reducible"));
    let o = lpsurf(&["validate", "--seed", &fixture("example_norm.json")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(lpsurf(&["mutate"]).status.code(), Some(2));
    assert_eq!(lpsurf(&["frobnicate"]).status.code(), Some(2));
    let o = lpsurf(&["mutate", "--seed", &fixture("bad.json"), "--at", "x"]);
    assert_eq!(o.status.code(), Some(1));
    let o = lpsurf(&["explore", "--seed", &fixture("example_norm.json"), "--format", "svg"]);
    assert_eq!(o.status.code(), Some(1));
}
