use sheafsym_core::beta::partitions;
use sheafsym_core::induction::{b_d, dominance_leq};
use sheafsym_core::springer::{springer_symbols_of_rank, DeltaBranch, SpringerKind};
use sheafsym_core::Symbol;

fn bipartitions(m: u32) -> Vec<Symbol> {
    let mut out = Vec::new();
    for k in 0..=m {
        for l in partitions(k) {
            for r in partitions(m - k) {
                out.push(Symbol::from_bipartition(&l, &r));
            }
        }
    }
    out
}

#[test]
fn sigma_and_b_order_agree() {
    for kind in [SpringerKind::X, SpringerKind::Y] {
        for rank in 0..=8 {
            let all = springer_symbols_of_rank(kind, rank);
            let Some(total) = all.iter().map(|s| s.len()).max() else { continue };
            for s in &all {
                for t in &all {
                    if s.defect() != t.defect() {
                        continue;
                    }
                    let (ss, st) = (s.sigma_at(total).unwrap(), t.sigma_at(total).unwrap());
                    assert_eq!(ss >= st, s.b_value() >= t.b_value(), "{s} vs {t}");
                }
            }
        }
    }
}

#[test]
fn dominance_reverses_b_d() {
    let mut compared = 0;
    for t in 0..=2 {
        for branch in DeltaBranch::all(t) {
            for m in 0..=5 {
                let labels = bipartitions(m);
                let b: Vec<u64> = labels.iter().map(|s| b_d(s, branch).unwrap()).collect();
                for (i, x) in labels.iter().enumerate() {
                    for (j, y) in labels.iter().enumerate() {
                        if x.top.rank() != y.top.rank() {
                            continue;
                        }
                        let below =
                            dominance_leq(&x.top, &y.top).unwrap() && dominance_leq(&x.bottom, &y.bottom).unwrap();
                        if !below {
                            continue;
                        }
                        compared += 1;
                        assert!(b[j] <= b[i], "{branch:?}: {x} ⊴ {y} but b^d {} > {}", b[j], b[i]);
                        assert_eq!(b[i] == b[j], i == j, "{branch:?}: {x} {y}");
                    }
                }
            }
        }
    }
    assert!(compared > 1000);
}
