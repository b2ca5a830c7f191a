use std::process::{Command, Output};

fn permucell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permucell"))
        .args(args)
        .env_remove("PERMUCELL_CACHE")
        .output()
        .expect("spawn permucell")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn permutahedron_table() {
    let o = permucell(&["cells", "--family", "perm", "--n", "4", "--format", "markdown"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for row in ["| 0 | 24 | 1 |", "| -1 | 36 | 0 |", "| -2 | 14 | 0 |", "| -3 | 1 | 0 |"] {
        assert!(s.contains(row), "{row} missing from\n{s}");
    }
}

#[test]
fn poly_hochschild_betti() {
    let o = permucell(&["hoch", "--dim", "2", "--m", "2", "--n", "0", "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(",2,4,1\n"));
}

#[test]
fn format_follows_extension() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = permucell(&["koszul", "--dim", "2", "--m", "2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(out).unwrap().starts_with("title,degree,dim,betti\n"));
}

#[test]
fn bad_parameters_exit_2() {
    assert_eq!(permucell(&["cells", "--family", "perm", "--n", "0"]).status.code(), Some(2));
    assert_eq!(permucell(&["cells", "--family", "perm"]).status.code(), Some(2));
    assert_eq!(permucell(&["hoch", "--dim", "1", "--m", "1", "--n", "1", "--mode", "cubic"]).status.code(), Some(2));
    assert_eq!(permucell(&["suite", "--only", "42"]).status.code(), Some(2));
}

#[test]
fn config_supplies_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("p.toml");
    std::fs::write(&cfg, "format = \"markdown\"\n\n[cells]\nfamily = \"simplex\"\nn = 3\n").unwrap();
    let o = permucell(&["--config", cfg.to_str().unwrap(), "cells"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("| 0 | 3 | 1 |"));
    std::fs::write(&cfg, "colour = 1\n").unwrap();
    assert_eq!(permucell(&["--config", cfg.to_str().unwrap(), "cells"]).status.code(), Some(2));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = permucell(&[
            "--cache-dir",
            cache.to_str().unwrap(),
            "gs",
            "--dim",
            "2",
            "--m",
            "1",
            "--n",
            "2",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        (stdout(&o), std::fs::read(out).unwrap())
    };
    let (first, a) = run("a.json");
    let (second, b) = run("b.json");
    assert!(first.contains("built"));
    assert!(second.contains("loaded from cache"));
    assert_eq!(a, b);
}

#[test]
fn brackets_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let write = |name: &str, s: &str| {
        std::fs::write(p.join(name), s).unwrap();
        p.join(name).to_str().unwrap().to_string()
    };
    let v = write("v.json", r#"{"window":{"dim":2},"terms":[{"label":"V({1}; x2)","coeff":"1"}]}"#);
    let w = write("w.json", r#"{"window":{"dim":2},"terms":[{"label":"V({2}; x1)","coeff":"1"}]}"#);
    let o = permucell(&["bracket", "--op", "schouten", "--in", &v, "--in2", &w]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("V({1}; x1)") && s.contains("V({2}; x2)"));

    // Deforming only x²·x = x³ away breaks associativity.
    let g = write(
        "g.json",
        r#"{"window":{"dim":1,"max_input_degree":3},"terms":[{"label":"F(in=[x1^2, x1]; out=x1^3)","coeff":"1"}]}"#,
    );
    let o = permucell(&["bracket", "--op", "mc", "--in", &g]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Maurer-Cartan"));

    assert_eq!(permucell(&["bracket", "--op", "schouten", "--in", &v]).status.code(), Some(2));
}
