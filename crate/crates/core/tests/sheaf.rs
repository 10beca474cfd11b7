use std::collections::BTreeSet;

use num_rational::Rational64;
use sheafsym_core::appendix::{appendix_tables, SideMode};
use sheafsym_core::context::{CSign, GroupContext, GroupType};
use sheafsym_core::lagrangian::{classes_of, enumerate_j, label_specs};
use sheafsym_core::sheaf::*;
use sheafsym_core::springer::{SpringerKind, SpringerSymbol};
use sheafsym_core::symbol::{defect_bijection, LabelFamily, LabelSetSpec};
use sheafsym_core::Symbol;

fn sym(s: &str) -> Symbol {
    s.parse().unwrap()
}

const B0: &str = "[0,1,2,3,4|0,1]";

fn contexts() -> Vec<GroupContext> {
    let mut out = Vec::new();
    for (group, sign) in [
        (GroupType::B, CSign::Plus),
        (GroupType::C, CSign::Plus),
        (GroupType::C, CSign::Minus),
        (GroupType::D, CSign::Plus),
    ] {
        for t in 0..=2 {
            for m in 0..=4u32 {
                for a_rel in 0..=m {
                    let levi = sheafsym_core::context::levi_rank(group, t, sign);
                    let n = levi + m;
                    let b_rel = m - a_rel;
                    let ctx = GroupContext::new(group, n, n - b_rel, b_rel, t)
                        .and_then(|c| c.with_c_sign(sign))
                        .and_then(|c| c.with_rel(a_rel, b_rel));
                    if let Ok(c) = ctx {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn phi_examples() {
    let ctx = GroupContext::new(GroupType::C, 4, 4, 0, 0).unwrap();
    let (l, r) = phi_embed(&sym("[1,2|0,3]").unordered(), &sym("[0|]"), &ctx).unwrap();
    assert!(l.equivalent(&sym("[1,2|0,3]").unordered()));
    assert!(r.equivalent(&sym("[0|]")));

    let ctx = GroupContext::new(GroupType::B, 4, 4, 0, 1).unwrap().with_rel(0, 0).unwrap();
    let (l, r) = phi_embed(&sym("[0|]"), &sym("[0|]"), &ctx).unwrap();
    assert_eq!((l.defect(), r.defect()), (3, 3));
    assert!(l.is_cuspidal() && r.is_cuspidal());
}

#[test]
fn phi_is_injective_and_inverted() {
    for ctx in contexts() {
        if ctx.t == 0 && ctx.group != GroupType::B {
            continue;
        }
        let v = LabelSetSpec::new(LabelFamily::V1, ctx.a_rel as u64).members();
        let w = LabelSetSpec::new(LabelFamily::V1, ctx.b_rel as u64).members();
        let mut images = BTreeSet::new();
        for x in &v {
            for y in &w {
                let (l, r) = phi_embed(x, y, &ctx).unwrap();
                let (dl, dr) = target_defects(ctx.group, ctx.t, ctx.c_sign);
                assert_eq!((l.defect().abs(), r.defect().abs()), (dl.abs(), dr.abs()));
                let (x1, y1) = phi_inverse(&l, &r, &ctx).unwrap();
                assert!(x1.equivalent(x) && y1.equivalent(y), "{ctx:?} {x} {y}");
                images.insert((l.canonical(), r.canonical()));
            }
        }
        assert_eq!(images.len(), v.len() * w.len());
    }
}

#[test]
fn m_value_examples() {
    let x = |top: &[u32], bottom: &[u32]| SpringerSymbol::from_rows(SpringerKind::X, top, bottom).unwrap();
    let y = |top: &[u32], bottom: &[u32]| SpringerSymbol::from_rows(SpringerKind::Y, top, bottom).unwrap();
    assert_eq!(m_value(&x(&[0, 2, 4], &[]), GroupType::B).unwrap(), 4);
    assert_eq!(m_value(&x(&[0], &[]), GroupType::B).unwrap(), 0);
    assert_eq!(m_value(&y(&[0, 2, 4, 6, 8], &[]), GroupType::C).unwrap(), 10);
    assert_eq!(m_value(&y(&[0], &[]), GroupType::C).unwrap(), 0);
    assert_eq!(m_value(&x(&[0, 2, 4, 6], &[]), GroupType::D).unwrap(), 8);
    assert!(m_value(&x(&[0], &[]), GroupType::D).is_err());
    assert!(m_value(&x(&[0, 2], &[]), GroupType::C).is_err());
}

#[test]
fn char_value_examples() {
    let ctx = GroupContext::new(GroupType::B, 4, 2, 2, 1).unwrap().with_rel(0, 0).unwrap();
    let v = char_value(&sym(B0), &sym(B0), &ctx).unwrap();
    assert_eq!((v.sign, v.exponent), (1, Rational64::from_integer(4)));
    assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"q_exponent":4,"sign":1}"#);

    let (l, r) = (sym("[0,1,2,3|]").unordered(), sym("[0|]"));
    let ctx = GroupContext::new(GroupType::C, l.rank() as u32, l.rank() as u32, 0, 0).unwrap();
    assert_eq!(sheafsym_core::lagrangian::epsilon(&l, &r), 3);
    assert!(char_value(&l, &r, &ctx).unwrap().is_zero());

    let ctx = GroupContext::new(GroupType::B, 4, 2, 2, 1).unwrap().with_rel(0, 0).unwrap();
    let (v, w) = classes_of(&sym(B0), &sym(B0), GroupType::B).unwrap();
    let j = enumerate_j(&sym(B0), &sym(B0), GroupType::B).unwrap();
    let outside =
        v.iter().flat_map(|x| w.iter().map(move |y| (x.clone(), y.clone()))).find(|p| !j.members.contains(p)).unwrap();
    assert!(char_value(&outside.0, &outside.1, &ctx).unwrap().is_zero());
}

#[test]
fn values_over_j_are_integral_monomials() {
    for table in appendix_tables() {
        for t in 1..=2 {
            for i in 0..table.rows.len() {
                let (l, r) = table.pair_at(i, t).unwrap();
                let j = enumerate_j(&l, &r, table.group).unwrap();
                let n = (l.rank() + r.rank()) as u32;
                let mut ctx = GroupContext::new(table.group, n, l.rank() as u32, r.rank() as u32, 0).unwrap();
                ctx.c_sign = table.c_sign.unwrap_or(CSign::Plus);
                let sum = j_sum(&j, &ctx).unwrap();
                assert_eq!(sum.terms.len(), j.enumerated_size);
                assert!(sum.terms.iter().all(|v| v.exponent.is_integer() && v.sign.abs() == 1));
                assert_eq!(sum.at_one.unsigned_abs() as usize, j.enumerated_size);
            }
        }
    }
}

#[test]
fn restriction_examples() {
    assert!(restrict_labels(&sym(B0), &sym(B0), Side::First).is_empty());
    let got = restrict_labels(&sym(B0), &sym("[0,2|1]"), Side::Second);
    let rights: Vec<String> = got.iter().map(|(_, r)| r.to_string()).collect();
    assert_eq!(rights, vec!["[0,1|1]", "[0,2|0]"]);
    assert!(got.iter().all(|(l, _)| l == &sym(B0)));
    let split = decrements(&sym("[0,2|0,1]"));
    assert_eq!(split.len(), 2);
    assert!(split.iter().all(|s| s.is_degenerate()));
}

#[test]
fn restriction_commutes_with_raising() {
    for d in [3, 5, 7] {
        for k in 1..=6 {
            for s in LabelSetSpec::new(LabelFamily::V1, k).members() {
                let raised = defect_bijection(&s, d).unwrap();
                let direct: BTreeSet<Symbol> = decrements(&raised).into_iter().map(|x| x.normalize()).collect();
                let via: BTreeSet<Symbol> =
                    decrements(&s).into_iter().map(|x| defect_bijection(&x, d).unwrap().normalize()).collect();
                assert_eq!(direct, via, "{s} at defect {d}");
            }
        }
    }
}

#[test]
fn decrements_determine_the_symbol_from_rank_three() {
    for k in 3..=6 {
        let sets = decrement_sets(k);
        let distinct: BTreeSet<_> = sets.iter().map(|(_, d)| d.clone()).collect();
        assert_eq!(distinct.len(), sets.len(), "rank {k}");
    }
    let sets = decrement_sets(2);
    let distinct: BTreeSet<_> = sets.iter().map(|(_, d)| d.clone()).collect();
    assert!(distinct.len() < sets.len());
}

#[test]
fn multiplicity_examples() {
    let g = GroupType::B;
    let (v, w) = classes_of(&sym(B0), &sym(B0), g).unwrap();
    let expected = Rational64::new(1, (v.len() * w.len()) as i64);
    assert_eq!(multiplicity_magnitude(&sym(B0), &sym(B0), &v[0], &w[0], g).unwrap(), expected);
    let other = sym("[0,1,2,3,6|0,1]");
    assert_eq!(multiplicity_magnitude(&sym(B0), &sym(B0), &other, &sym(B0), g).unwrap(), Rational64::from_integer(0));

    let deg = sym("[0,2|0,2]+");
    let d = GroupType::D;
    assert_eq!(multiplicity_magnitude(&deg, &deg, &deg, &deg, d).unwrap(), Rational64::from_integer(1));
}

#[test]
fn quarter_magnitude_exists() {
    let g = GroupType::B;
    let (vs, ws) = label_specs(g, 4, 0);
    let found = vs.members().into_iter().any(|x| {
        ws.members().into_iter().any(|y| {
            let (v, w) = classes_of(&x, &y, g).unwrap();
            v.len() == 4
                && w.len() == 1
                && multiplicity_magnitude(&x, &y, &v[3], &w[0], g).unwrap() == Rational64::new(1, 4)
        })
    });
    assert!(found);
}

#[test]
fn scalar_is_one_from_two() {
    for ell in 2..=12 {
        assert_eq!(cuspidal_scalar(ell).zeta, Some(1));
    }
    assert_eq!(cuspidal_scalar(1).zeta, None);
    assert_eq!(cuspidal_scalar(0).zeta, None);
}

#[test]
fn xi_family_in_every_mode() {
    for t in 1..=3 {
        for (group, sign) in [
            (GroupType::B, CSign::Plus),
            (GroupType::C, CSign::Plus),
            (GroupType::C, CSign::Minus),
            (GroupType::D, CSign::Plus),
        ] {
            for mode in [SideMode::BPrime, SideMode::APrime] {
                let f = xi_family(group, t, sign, mode).unwrap();
                assert!(f.passed(), "{group} {sign:?} {mode:?} t={t}: {f:#?}");
                assert_eq!(f.members.len(), 8);
            }
        }
    }
    assert!(xi_family(GroupType::B, 0, CSign::Plus, SideMode::BPrime).is_err());
}

#[test]
fn xi_b_values_at_one() {
    let b = |g, s| xi_family(g, 1, s, SideMode::BPrime).unwrap().b_values;
    assert_eq!(b(GroupType::B, CSign::Plus), vec![2, 2, 3, 8, 10, 5, 2, 5]);
    assert_eq!(b(GroupType::C, CSign::Plus), vec![10, 10, 11, 19, 22, 15, 10, 15]);
    assert_eq!(b(GroupType::C, CSign::Minus), vec![4, 4, 5, 11, 14, 8, 4, 8]);
    assert_eq!(b(GroupType::D, CSign::Plus), vec![6, 6, 7, 14, 16, 10, 6, 10]);
}
