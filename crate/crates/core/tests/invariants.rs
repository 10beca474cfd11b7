use std::collections::BTreeSet;

use proptest::prelude::*;
use sheafsym_core::beta::partitions;
use sheafsym_core::induction::lr_partitions;
use sheafsym_core::symbol::{defect_bijection, defect_bijection_inverse};
use sheafsym_core::Symbol;

fn row() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::btree_set(0u32..9, 0..5).prop_map(|s: BTreeSet<u32>| s.into_iter().collect())
}

fn symbol() -> impl Strategy<Value = Symbol> {
    (row(), row()).prop_map(|(t, b)| Symbol::from_rows(&t, &b).unwrap())
}

fn low_defect_symbol() -> impl Strategy<Value = Symbol> {
    (row(), any::<bool>()).prop_map(|(b, odd)| {
        let mut top: Vec<u32> = b.iter().map(|x| x + 1).collect();
        if odd {
            top.insert(0, 0);
        }
        Symbol::from_rows(&top, &b).unwrap()
    })
}

proptest! {
    #[test]
    fn shifting_preserves_statistics(s in symbol(), k in 0usize..4) {
        let t = s.shift(k);
        prop_assert_eq!(t.rank(), s.rank());
        prop_assert_eq!(t.defect(), s.defect());
        prop_assert_eq!(t.a_value(), s.a_value());
        prop_assert_eq!(t.normalize(), s.normalize());
    }

    #[test]
    fn normalize_is_idempotent(s in symbol()) {
        let n = s.normalize();
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert!(n.unshift().is_none());
    }

    #[test]
    fn canonical_forgets_row_order(s in symbol()) {
        let u = s.clone().unordered();
        prop_assert_eq!(u.swapped().canonical(), u.canonical());
        prop_assert!(u.equivalent(&u.shift(2)));
    }

    #[test]
    fn display_round_trips(s in symbol()) {
        let back: Symbol = s.to_string().parse().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn defect_raising_is_inverted(s in low_defect_symbol(), extra in 0i64..4) {
        let d = s.defect() + 2 * extra;
        let raised = defect_bijection(&s, d).unwrap();
        prop_assert_eq!(raised.defect(), d);
        let back = defect_bijection_inverse(&raised, s.defect()).unwrap();
        prop_assert!(back.equivalent(&s));
    }

    #[test]
    fn lr_coefficients_are_symmetric(k in 0u32..5, l in 0u32..5, i in 0usize..8, j in 0usize..8) {
        let ps = partitions(k);
        let qs = partitions(l);
        let (lambda, mu) = (&ps[i % ps.len()], &qs[j % qs.len()]);
        let mut total = 0;
        for nu in partitions(k + l) {
            let c = lr_partitions(lambda, mu, &nu);
            prop_assert_eq!(c, lr_partitions(mu, lambda, &nu));
            total += c;
        }
        prop_assert!(total >= 1);
    }
}
