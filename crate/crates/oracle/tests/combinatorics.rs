use sheafsym_oracle::{check_d_minimal, check_lr, Oracle};

#[test]
fn lr_coefficients_match_characters_up_to_six() {
    let report = check_lr(6).unwrap();
    assert!(report.triples > 1000);
    assert!(report.passed(), "{report:#?}");
}

#[test]
fn untwisted_d_minimal_matches_brute_force() {
    let oracle = Oracle::new();
    let checks = check_d_minimal(&oracle, 4, 1).unwrap();
    let bad: Vec<_> = checks.iter().filter(|c| !c.agrees || !c.multiplicity_one).collect();
    assert!(bad.is_empty(), "{} of {} failed: {:#?}", bad.len(), checks.len(), &bad[..bad.len().min(5)]);
    for g in ["B", "C", "D"] {
        assert!(checks.iter().any(|c| c.group.to_string() == g && c.t == 0));
    }
}
