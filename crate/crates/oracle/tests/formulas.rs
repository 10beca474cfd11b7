use sheafsym_core::induction::SubgroupShape;
use sheafsym_oracle::{verify_against_symbols, Oracle};

#[test]
fn every_shape_agrees_up_to_rank_five() {
    let oracle = Oracle::new();
    for shape in SubgroupShape::ALL {
        for n in 0..=5 {
            for a in 0..=n {
                let b = n - a;
                if shape == SubgroupShape::DInB && b != 0 {
                    continue;
                }
                let report = verify_against_symbols(&oracle, shape, a, b).unwrap();
                assert!(report.passed(), "{shape} a={a} b={b}: {:#?}", report.mismatches);
            }
        }
    }
}

#[test]
fn alternate_h_reading_is_the_correct_one() {
    let oracle = Oracle::new();
    let report = verify_against_symbols(&oracle, SubgroupShape::HTwisted, 2, 2).unwrap();
    let counts = report.h_readings.unwrap();
    assert_eq!(counts["alternate"], 0);
    assert!(counts["printed"] > 0);
}
