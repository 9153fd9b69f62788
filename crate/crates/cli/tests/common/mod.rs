use std::path::PathBuf;

/// Golden cases: file stem and argument list.
pub fn cases() -> Vec<(String, Vec<String>)> {
    let mut out: Vec<(String, Vec<String>)> = frieze_cli::EXAMPLES
        .iter()
        .map(|name| (name.to_string(), vec!["examples".to_string(), name.to_string()]))
        .collect();
    for (stem, args) in [
        ("dihedral-8", &["examples", "dihedral-8"][..]),
        ("ex2.3b-ascii", &["--ascii-only", "examples", "ex2.3b"]),
        ("ex6.7-ascii", &["--ascii-only", "examples", "ex6.7"]),
        ("ex2.3a-brackets", &["--brackets", "examples", "ex2.3a"]),
        ("strip-fan-json", &["--format", "json", "examples", "strip-fan"]),
    ] {
        out.push((stem.to_string(), args.iter().map(|s| s.to_string()).collect()));
    }
    out
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Compare every case with its stored output, or rewrite the files when UPDATE_GOLDEN is set.
/// Returns the list of mismatching stems.
pub fn check_golden() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut bad = Vec::new();
    for (stem, args) in cases() {
        let out = frieze_cli::run(&args);
        assert_eq!(out.code, 0, "{stem}: {}", out.stderr);
        let path = golden_dir().join(format!("{stem}.txt"));
        if update {
            std::fs::create_dir_all(golden_dir()).unwrap();
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        match std::fs::read(&path) {
            Ok(bytes) if bytes == out.stdout.as_bytes() => {}
            _ => bad.push(stem),
        }
    }
    bad
}
