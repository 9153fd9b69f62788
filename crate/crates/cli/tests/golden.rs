mod common;

#[test]
fn examples_match_golden_files() {
    let bad = common::check_golden();
    assert!(bad.is_empty(), "golden mismatch: {bad:?}");
}

#[test]
fn examples_are_deterministic() {
    for (stem, args) in common::cases() {
        assert_eq!(frieze_cli::run(&args), frieze_cli::run(&args), "{stem}");
    }
}
