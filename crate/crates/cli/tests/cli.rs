use frieze_cli::run;
use std::path::PathBuf;

fn scratch(name: &str, contents: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn minpoly_and_cheb() {
    let out = run(["minpoly", "4"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "x^2 - 2\n"));
    assert_eq!(run(["cheb", "4"]).stdout, "x^4 - 3x^2 + 1\n");
    assert_eq!(run(["cheb", "2", "--at", "8"]).stdout, "-1 + λ^2\n");
    assert_eq!(run(["cheb", "4", "--at", "5"]).stdout, "0\n");
    assert_eq!(run(["--ascii-only", "cheb", "1", "--at", "4"]).stdout, "r2\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(["bogus"]).code, 2);
    assert_eq!(run(["minpoly", "1"]).code, 2);
    assert_eq!(run(["examples", "nope"]).code, 2);
    assert_eq!(run(["frieze", "verify", "/nonexistent/file.json"]).code, 2);
    let broken = scratch("broken.json", "{\"n\": 5");
    let out = run(["frieze", "verify", broken.as_str()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("malformed"), "{}", out.stderr);
    let crossing = scratch("crossing.json", r#"{"n": 6, "diagonals": [[0, 3], [1, 4]]}"#);
    assert_eq!(run(["dissect", "quiddity", crossing.as_str()]).code, 2);
    let bad = scratch("bad-q.json", r#"{"p": 4, "period": 1, "multiples": [1]}"#);
    let out = run(["strip", "from-quiddity", bad.as_str()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("f(0,4)"), "{}", out.stderr);
}

#[test]
fn perturbed_frieze_reports_diamond() {
    let q = scratch("q5.json", r#"{"L": 3, "quiddity": [[2], [1], [3], [1], [2]]}"#);
    let good = run(["--format", "json", "frieze", "from-quiddity", q.as_str()]);
    assert_eq!(good.code, 0);
    let path = scratch("f5.json", &good.stdout);
    assert_eq!(run(["frieze", "verify", path.as_str()]).code, 0);
    assert_eq!(run(["frieze", "type", path.as_str()]).stdout, "type: Λ_3\n");

    let mut v: serde_json::Value = serde_json::from_str(&good.stdout).unwrap();
    v["rows"][2][1] = serde_json::json!([9]);
    let bad = scratch("f5-bad.json", &v.to_string());
    let out = run(["frieze", "verify", bad.as_str()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("diamond"), "{}", out.stderr);
}

#[test]
fn json_round_trips() {
    let d = scratch("oct.json", r#"{"n": 8, "diagonals": [[0, 3]]}"#);
    let f = run(["--format", "json", "dissect", "frieze", d.as_str()]);
    assert_eq!(f.code, 0, "{}", f.stderr);
    let fpath = scratch("oct-frieze.json", &f.stdout);
    let back = run(["--format", "json", "frieze", "to-dissection", fpath.as_str()]);
    let v: serde_json::Value = serde_json::from_str(&back.stdout).unwrap();
    assert_eq!(v["diagonals"], serde_json::json!([[0, 3]]));

    let q = scratch("fan-q.json", r#"{"p": 4, "period": 2, "multiples": [2, 1]}"#);
    let s = run(["--format", "json", "strip", "report", q.as_str()]);
    let spath = scratch("fan-strip.json", &s.stdout);
    let w = run(["--format", "json", "strip", "to-frieze", spath.as_str()]);
    let v: serde_json::Value = serde_json::from_str(&w.stdout).unwrap();
    assert_eq!(v["multiples"], serde_json::json!([2, 1]));

    let g = run(["--format", "json", "cartan", "from-quiddity", q.as_str()]);
    let gpath = scratch("fan-graph.json", &g.stdout);
    assert_eq!(run(["cartan", "validate", gpath.as_str()]).code, 0);
    assert_eq!(run(["cartan", "quiddity", gpath.as_str()]).stdout, "quiddity at 0: (2, 1)·λ_4\n");
    assert_eq!(run(["cartan", "check-rootsystem", gpath.as_str(), "--cap", "12"]).code, 0);
}

#[test]
fn failing_root_system_keeps_report() {
    let q = scratch("const-q.json", r#"{"p": 4, "period": 1, "multiples": [1]}"#);
    let g = run(["--format", "json", "cartan", "from-quiddity", q.as_str()]);
    let gpath = scratch("const-graph.json", &g.stdout);
    let out = run(["cartan", "check-rootsystem", gpath.as_str(), "--cap", "16"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("R4 fails"), "{}", out.stdout);
}

#[test]
fn ascii_only_output_is_ascii() {
    for name in frieze_cli::EXAMPLES {
        let out = run(["--ascii-only", "examples", name]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.is_ascii(), "{name}");
    }
}
