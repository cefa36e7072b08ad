use std::io::Write;
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relbetti::fixtures::ladder;
use relbetti::random::random_ladder_module;
use relbetti::{Field, PersModule};
use tempfile::NamedTempFile;

const CL5: &str = "\
field Q
ladder 5
dims 0 0 1 2 1/0 0 0 1 1
map a3' 1; 1
map a4' 0 1
map b4 0; 1
map a4 1
map b5 1
";

const M45: &str = "\
field Q
ladder 3
dims 1 2 1/0 1 1
map a1' 1; 0
map b2 0; 1
map a2' 1 1
map a2 1
map b3 1
";

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relbetti")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

/// Writes a module in the file format, independently of the binary's serializer.
fn module_text(m: &PersModule) -> String {
    let q = m.quiver();
    let n = q.ladder_size().unwrap();
    let row = |r: &[usize]| r.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = format!("field Q\nladder {n}\ndims {}/{}\n", row(&m.dims()[n..]), row(&m.dims()[..n]));
    for (idx, a) in q.arrows().iter().enumerate() {
        let mat = m.map(idx);
        if mat.rows() > 0 && mat.cols() > 0 {
            let rows: Vec<String> =
                (0..mat.rows()).map(|r| mat.row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
            out.push_str(&format!("map {} {}\n", a.label, rows.join("; ")));
        }
    }
    out
}

#[test]
fn intervals_of_small_ladders() {
    let o = run(&["intervals", "--ladder", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 27);
    assert_eq!(stdout(&run(&["intervals", "--ladder", "2"])).lines().count(), 11);
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&["--json", "intervals", "--ladder", "2"]))).unwrap();
    assert_eq!(json["count"], 11);
}

#[test]
fn malformed_files_exit_with_usage_errors() {
    let f = file("field Q\nladder 2\nmap a9 1\n");
    let o = run(&["betti", path(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(run(&["betti", "/no/such/file"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn non_commuting_input_is_a_validation_error() {
    let f = file("field Q\nladder 2\ndims 1 1/1 1\nmap a1 1\nmap a1' 1\nmap b1 1\nmap b2 2\n");
    assert_eq!(run(&["betti", path(&f)]).status.code(), Some(2));
}

#[test]
fn betti_of_the_ladder_fixture() {
    let f = file(CL5);
    let o = run(&["betti", path(&f), "--interval", "00011/00001"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("β at (0 0 0 1 1/0 0 0 0 1): (0, 1)"));
    let o = run(&["--json", "betti", path(&f), "--route", "koszul", "--interval", "00011/00001"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["query"]["betti"], serde_json::json!([0, 1]));
}

#[test]
fn betti_of_an_interval_module() {
    let f = file("field Q\nladder 2\ndims 1 1/0 1\nmap a1' 1\nmap b2 1\n");
    let o = run(&["--json", "betti", path(&f)]);
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["entries"], serde_json::json!([{ "degree": 0, "interval": "(1 1/0 1)", "multiplicity": 1 }]));
}

#[test]
fn both_routes_agree_on_random_modules() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let q = ladder(3);
    for _ in 0..5 {
        let m = random_ladder_module(&mut rng, &q, Field::Rationals, 2).unwrap();
        let f = file(&module_text(&m));
        let o = run(&["betti", path(&f), "--route", "both"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn koszul_coresolutions() {
    let o = run(&["koszul", "--ladder", "3", "--interval", "111/001", "--check"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("X^1: [(1 1 1/0 1 1), (0 0 0/0 0 1), (1 1 0/0 0 0)]"));
    assert!(text.contains("X^2: [(1 1 0/0 1 1)]"));
    assert!(text.contains("check: pass"));
    let f = file(M45);
    let text = stdout(&run(&["koszul", "--interval", "011/001", path(&f)]));
    assert!(text.contains("homology: [0, 1, 0, 0]"));
    let stalk = file("field Q\nvertices p\ndims p=1\n");
    let text = stdout(&run(&["koszul", "--interval", "p", path(&stalk)]));
    assert!(text.contains("X^0: [{p}]"));
    assert!(text.contains("homology: [1]"));
}

#[test]
fn decomposability_verdicts() {
    let f = file(M45);
    let o = run(&["decomposable", path(&f)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "not interval-decomposable\n");
    let sum = file("field Q\nladder 2\ndims 1 2/1 1\nmap a1 1\nmap a1' 1; 0\nmap b1 1\nmap b2 1; 0\n");
    let o = run(&["--json", "decomposable", path(&sum)]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["decomposable"], true);
    let total: u64 = json["summands"].as_array().unwrap().iter().map(|s| s["multiplicity"].as_u64().unwrap()).sum();
    assert_eq!(total, 2);
}

#[test]
fn replacement_on_ladders_only() {
    let f = file(CL5);
    let o = run(&["replace", path(&f), "--check"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(0 0 0 1 1/0 0 0 0 1)\t-1"));
    let general = file("field Q\nvertices x y\narrow f x y\ndims x=1 y=1\nmap f 1\n");
    assert_eq!(run(&["replace", path(&general)]).status.code(), Some(1));
}

#[test]
fn normal_form_is_idempotent_and_output_deterministic() {
    let f = file("# comment\nfield Q\nladder 2\ndims 1 1/1 1\nmap b1 2/2\nmap a1 1\nmap a1' 1\nmap b2 1\n");
    let once = stdout(&run(&["normalize", path(&f)]));
    let g = file(&once);
    assert_eq!(stdout(&run(&["normalize", path(&g)])), once);
    let h = file(CL5);
    let a = run(&["--json", "replace", path(&h)]);
    let b = run(&["--json", "replace", path(&h)]);
    assert_eq!(a.stdout, b.stdout);
}
