use std::path::{Path, PathBuf};
use std::process::Command;

use multiramsey::io::{parse_coloring, parse_graph};
use multiramsey::oracle::has_mono_copy;
use multiramsey::Graph;
use serde_json::Value;

struct Dir(PathBuf);

impl Dir {
    fn new(tag: &str) -> Self {
        let p = std::env::temp_dir().join(format!("multiramsey-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&p).unwrap();
        Dir(p)
    }

    fn write(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.join(name);
        std::fs::write(&p, body).unwrap();
        p
    }
}

impl Drop for Dir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_multiramsey"))
        .args(args)
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(stdout.trim()).unwrap_or(Value::Null);
    (
        out.status.code().unwrap(),
        json,
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn strip_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time");
    v
}

const K3: &str = r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#;

#[test]
fn exact_triangle_is_six() {
    let d = Dir::new("exact");
    let k3 = d.write("k3.json", K3);
    let (code, v, _) = run(&["exact", "--target", p(&k3), "--k", "2", "--nmax", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["outcome"]["certificate"]["value"], 6);
    assert!(v["wall_time"]["seconds"].is_number());

    // The emitted witness parses back and avoids a monochromatic triangle.
    let witness = serde_json::to_string(&v["outcome"]["certificate"]["witness"]).unwrap();
    let c = parse_coloring(&witness).unwrap();
    assert_eq!(c.n(), 5);
    assert!(has_mono_copy(&c, &Graph::complete(3)).is_none());

    let (code, v, _) = run(&["exact", "--target", p(&k3), "--k", "2", "--nmax", "5"]);
    assert_eq!(code, 1);
    assert_eq!(v["outcome"]["status"], "exceeds_cap");
}

#[test]
fn reduce_output_round_trips() {
    let d = Dir::new("reduce");
    let g = d.write(
        "g.json",
        r#"{"n":6,"edges":[[0,1],[0,2],[0,3],[0,4],[0,5],[1,2],[3,4]]}"#,
    );
    let (code, v, _) = run(&["reduce", "--graph", p(&g), "--d", "2"]);
    assert_eq!(code, 0);
    let r = &v["outcome"]["reduction"];
    let residual = serde_json::json!({"n": 6, "edges": r["residual_edges"]});
    let parsed = parse_graph(&residual.to_string()).unwrap();
    assert!(parsed.max_degree() <= 2);
    assert_eq!(r["u"], serde_json::json!([0]));
}

#[test]
fn find_mono_is_deterministic_and_verifiable() {
    let d = Dir::new("find");
    let c = multiramsey::oracle::random_coloring(30, 3, 4).unwrap();
    let coloring = d.write("c.json", &multiramsey::io::coloring_to_json(&c));
    let target = d.write("p3.json", r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
    let args = [
        "find-mono",
        "--coloring",
        p(&coloring),
        "--target",
        p(&target),
        "--mode",
        "gen",
        "--best-effort",
        "--seed",
        "3",
        "--oracle-fallback",
    ];
    let (code, first, _) = run(&args);
    let (_, second, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(strip_time(first.clone()), strip_time(second));

    let copy = &first["outcome"]["result"];
    assert_eq!(copy["status"], "found");
    let col = copy["color"].as_u64().unwrap().to_string();
    let map: Vec<String> = copy["embedding"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    let map = map.join(",");
    let (code, v, _) = run(&[
        "verify",
        "--coloring",
        p(&coloring),
        "--target",
        p(&target),
        "--color",
        &col,
        "--map",
        &map,
    ]);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn isolated_target_is_a_precondition_error() {
    let d = Dir::new("iso");
    let c = d.write(
        "c.json",
        &multiramsey::io::coloring_to_json(&multiramsey::oracle::random_coloring(6, 2, 0).unwrap()),
    );
    let t = d.write("t.json", r#"{"n":3,"edges":[[0,1]]}"#);
    let (code, _, err) = run(&[
        "find-mono",
        "--coloring",
        p(&c),
        "--target",
        p(&t),
        "--mode",
        "bip",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("no isolated vertices"), "{err}");
}

#[test]
fn malformed_input_names_the_problem() {
    let d = Dir::new("bad");
    let g = d.write("g.json", r#"{"n":3,"edges":[[0,3]]}"#);
    let (code, _, err) = run(&["reduce", "--graph", p(&g), "--d", "1"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    let (code, _, _) = run(&["bound", "--bip"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["bound", "--gen", "8", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn bound_text_and_json() {
    let out = Command::new(env!("CARGO_BIN_EXE_multiramsey"))
        .args(["bound", "--bip", "100", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(!String::from_utf8(out.stdout)
        .unwrap()
        .trim_start()
        .starts_with('{'));
    let (code, v, _) = run(&["bound", "--bip", "100", "2", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "bound");
    assert_eq!(v["outcome"]["t"], 7);
}
