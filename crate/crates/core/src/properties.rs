//! Exhaustive sweeps of the combinatorial statements the library relies on.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::beta::partitions;
use crate::context::{levi_rank, CSign, GroupContext, GroupType};
use crate::error::LagrangianError;
use crate::induction::{b_d, dominance_leq};
use crate::lagrangian::{classes_of, enumerate_j, j_by_membership, label_specs, make_pair, JSetResult, SymbolPair};
use crate::sheaf::{decrement_sets, decrements, phi_embed, phi_inverse};
use crate::springer::{springer_symbols_of_rank, DeltaBranch, SpringerKind};
use crate::symbol::{defect_bijection, LabelFamily, LabelSetSpec, Symbol};

const WITNESSES: usize = 5;

/// Outcome of one sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    pub witnesses: Vec<String>,
}

impl PropertyReport {
    fn new(name: &str) -> Self {
        PropertyReport { name: name.to_string(), checked: 0, failures: 0, witnesses: Vec::new() }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

pub const GROUPS: [GroupType; 3] = [GroupType::B, GroupType::C, GroupType::D];

fn bipartitions(m: u32) -> Vec<Symbol> {
    (0..=m)
        .flat_map(|k| {
            partitions(k)
                .into_iter()
                .flat_map(move |l| partitions(m - k).into_iter().map(move |r| Symbol::from_bipartition(&l, &r)))
        })
        .collect()
}

/// σ and b induce the same order on Springer symbols of equal rank, kind and defect.
pub fn sigma_b_order(max_rank: u64) -> PropertyReport {
    let mut r = PropertyReport::new("sigma_b_order");
    for kind in [SpringerKind::X, SpringerKind::Y] {
        for rank in 0..=max_rank {
            let all = springer_symbols_of_rank(kind, rank);
            let Some(total) = all.iter().map(|s| s.len()).max() else { continue };
            for s in &all {
                for t in &all {
                    if s.defect() != t.defect() {
                        continue;
                    }
                    let ok = match (s.sigma_at(total), t.sigma_at(total)) {
                        (Some(x), Some(y)) => (x >= y) == (s.b_value() >= t.b_value()),
                        _ => false,
                    };
                    r.record(ok, || format!("{s} vs {t}"));
                }
            }
        }
    }
    r
}

/// Componentwise dominance reverses b^d, with equality only for equal labels.
pub fn dominance_reversal(max_m: u32, max_t: u32) -> PropertyReport {
    let mut r = PropertyReport::new("dominance_reverses_b_d");
    for t in 0..=max_t {
        for branch in DeltaBranch::all(t) {
            for m in 0..=max_m {
                let labels = bipartitions(m);
                let b: Vec<u64> = labels.iter().map(|s| b_d(s, branch).expect("defect-0 label")).collect();
                for (i, x) in labels.iter().enumerate() {
                    for (j, y) in labels.iter().enumerate() {
                        if x.top.rank() != y.top.rank() {
                            continue;
                        }
                        let below = dominance_leq(&x.top, &y.top).unwrap_or(false)
                            && dominance_leq(&x.bottom, &y.bottom).unwrap_or(false);
                        if below {
                            let ok = b[j] <= b[i] && (b[i] == b[j]) == (i == j);
                            r.record(ok, || format!("{branch:?}: {x} ⊴ {y}, b^d {} and {}", b[i], b[j]));
                        }
                    }
                }
            }
        }
    }
    r
}

/// Every aligned pair with factor ranks at most `max`, in both orientations where the crossed sum exists.
pub fn aligned_pairs(group: GroupType, max: u64) -> Vec<SymbolPair> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            let (vs, ws) = label_specs(group, a, b);
            for x in vs.members() {
                for y in ws.members() {
                    if let Ok(p) = make_pair(&x, &y, group) {
                        out.extend(p.flipped());
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn show(p: &SymbolPair) -> String {
    format!("{} {} ⊠ {} (p={})", p.group, p.left, p.right, p.p)
}

/// `a(Λ)+a(Ξ) ≤ b(Λ⊕Ξ)`, with equality exactly under the interleaving condition.
pub fn a_sum_bound(max: u64) -> PropertyReport {
    let mut r = PropertyReport::new("a_sum_bounded_by_b_with_equality_iff_interleaved");
    for group in GROUPS {
        for p in aligned_pairs(group, max) {
            let ok = p.oplus().is_ok_and(|s| {
                let (lhs, rhs) = (p.a_sum(), s.b_value());
                lhs <= rhs && (lhs == rhs) == p.equality_conditions().cond1
            });
            r.record(ok, || show(&p));
        }
    }
    r
}

/// The crossed sum attains `a(Λ)+a(Ξ)` exactly under the crossed interleaving condition.
pub fn crossed_equality(max: u64) -> PropertyReport {
    let mut r = PropertyReport::new("crossed_equality_iff_crossed_interleaving");
    for group in [GroupType::C, GroupType::D] {
        for p in aligned_pairs(group, max) {
            if let Some(c2) = p.equality_conditions().cond2 {
                let ok = p.boxplus().is_ok_and(|s| (s.b_value() == p.a_sum()) == c2);
                r.record(ok, || show(&p));
            }
        }
    }
    r
}

/// Both equalities force the row condition.
pub fn both_equalities_give_row_condition(max: u64) -> PropertyReport {
    let mut r = PropertyReport::new("cond1_and_cond2_imply_cond3");
    for group in [GroupType::C, GroupType::D] {
        for p in aligned_pairs(group, max) {
            let c = p.equality_conditions();
            if let (Some(c2), Some(c3)) = (c.cond2, c.cond3) {
                r.record(!(c.cond1 && c2) || c3, || show(&p));
            }
        }
    }
    r
}

/// The row condition forces both equalities.
pub fn row_condition_gives_both_equalities(max: u64) -> PropertyReport {
    let mut r = PropertyReport::new("cond3_implies_cond1_and_cond2");
    for group in [GroupType::C, GroupType::D] {
        for p in aligned_pairs(group, max) {
            let c = p.equality_conditions();
            if let (Some(c2), Some(c3)) = (c.cond2, c.cond3) {
                r.record(!c3 || (c.cond1 && c2), || show(&p));
            }
        }
    }
    r
}

/// One 𝒥 per pair of similarity classes, with total rank at most `max`.
pub struct JCase {
    pub group: GroupType,
    pub v: Vec<Symbol>,
    pub w: Vec<Symbol>,
    pub j: JSetResult,
}

pub fn j_cases(group: GroupType, max: u64) -> Result<Vec<JCase>, LagrangianError> {
    let mut out = Vec::new();
    for n in 0..=max {
        for a in 0..=n {
            let (vs, ws) = label_specs(group, a, n - a);
            let mut seen = BTreeSet::new();
            for x in vs.members() {
                for y in ws.members() {
                    let (v, w) = classes_of(&x, &y, group)?;
                    if !seen.insert((v.clone(), w.clone())) {
                        continue;
                    }
                    match enumerate_j(&x, &y, group) {
                        Ok(j) => out.push(JCase { group, v, w, j }),
                        Err(LagrangianError::EmptyBase) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    Ok(out)
}

fn show_case(c: &JCase) -> String {
    format!("{} {} ⊠ {}: enumerated {}, formula {:?}", c.group, c.v[0], c.w[0], c.j.enumerated_size, c.j.formula_size)
}

/// Enumeration and the membership test select the same pairs.
pub fn enumeration_matches_membership(cases: &[JCase]) -> PropertyReport {
    let mut r = PropertyReport::new("j_enumeration_matches_membership");
    for c in cases {
        let by_test: BTreeSet<_> = j_by_membership(&c.v, &c.w, c.group).into_iter().collect();
        let listed: BTreeSet<_> = c.j.members.iter().cloned().collect();
        r.record(by_test == listed, || show_case(c));
    }
    r
}

/// `|𝒥| = 2^(ℓ-1)` in type B and `2^(ℓ-2)` in types C and D.
pub fn j_size_law(cases: &[JCase]) -> PropertyReport {
    let mut r = PropertyReport::new("j_size_law");
    for c in cases {
        r.record(c.j.law_holds(), || show_case(c));
    }
    r
}

/// Members of one 𝒥 have similar sums.
pub fn j_sums_similar(cases: &[JCase]) -> PropertyReport {
    let mut r = PropertyReport::new("j_members_have_similar_sums");
    for c in cases {
        let sums: Vec<_> =
            c.j.members
                .iter()
                .filter_map(|(l, m)| {
                    let p = make_pair(l, m, c.group).ok()?;
                    let s = p.oplus().ok()?;
                    if s.b_value() == p.a_sum() {
                        return Some(s);
                    }
                    p.flipped()?.oplus().ok()
                })
                .collect();
        let ok = sums.len() == c.j.members.len() && sums.iter().all(|s| s.similar(&sums[0]));
        r.record(ok, || show_case(c));
    }
    r
}

/// The row condition fails on every member of 𝒥 unless n = 0 or there is a single class.
pub fn row_condition_excluded_from_j(cases: &[JCase]) -> PropertyReport {
    let mut r = PropertyReport::new("no_j_member_satisfies_cond3");
    for c in cases {
        let Some(base) =
            c.v.iter().flat_map(|x| c.w.iter().map(move |y| (x, y))).find_map(|(x, y)| make_pair(x, y, c.group).ok())
        else {
            continue;
        };
        let n = base.left.rank() + base.right.rank();
        if n == 0 || base.interval_structure().classes.len() == 1 {
            continue;
        }
        for (l, m) in &c.j.members {
            let Ok(p) = make_pair(l, m, c.group) else { continue };
            let hit = [Some(p.clone()), p.flipped()]
                .into_iter()
                .flatten()
                .any(|q| q.equality_conditions().cond3 == Some(true));
            r.record(!hit, || format!("{} {l} ⊠ {m}", c.group));
        }
    }
    r
}

fn phi_contexts(max_m: u32, max_t: u32) -> Vec<GroupContext> {
    let mut out = Vec::new();
    for (group, sign) in [
        (GroupType::B, CSign::Plus),
        (GroupType::C, CSign::Plus),
        (GroupType::C, CSign::Minus),
        (GroupType::D, CSign::Plus),
    ] {
        for t in 1..=max_t {
            for m in 0..=max_m {
                for a_rel in 0..=m {
                    let n = levi_rank(group, t, sign) + m;
                    let b_rel = m - a_rel;
                    if let Ok(c) = GroupContext::new(group, n, n - b_rel, b_rel, t)
                        .and_then(|c| c.with_c_sign(sign))
                        .and_then(|c| c.with_rel(a_rel, b_rel))
                    {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

/// φ is injective and inverted by its inverse.
pub fn phi_round_trip(max_m: u32, max_t: u32) -> PropertyReport {
    let mut r = PropertyReport::new("phi_round_trip");
    for ctx in phi_contexts(max_m, max_t) {
        let v = LabelSetSpec::new(LabelFamily::V1, ctx.a_rel as u64).members();
        let w = LabelSetSpec::new(LabelFamily::V1, ctx.b_rel as u64).members();
        let mut images = BTreeSet::new();
        for x in &v {
            for y in &w {
                let back = phi_embed(x, y, &ctx).and_then(|(l, m)| {
                    images.insert((l.canonical(), m.canonical()));
                    phi_inverse(&l, &m, &ctx)
                });
                let ok = back.is_ok_and(|(x1, y1)| x1.equivalent(x) && y1.equivalent(y));
                r.record(ok, || format!("{} t={} {x} ⊠ {y}", ctx.group, ctx.t));
            }
        }
        r.record(images.len() == v.len() * w.len(), || format!("{} t={}: φ not injective", ctx.group, ctx.t));
    }
    r
}

/// Lowering an entry commutes with raising the defect.
pub fn restriction_commutes(max_rank: u64) -> PropertyReport {
    let mut r = PropertyReport::new("restriction_commutes_with_phi");
    for d in [3, 4, 5, 7, 8] {
        for k in 1..=max_rank {
            for s in LabelSetSpec::new(LabelFamily::V1, k).members() {
                let Ok(raised) = defect_bijection(&s, d) else { continue };
                let direct: BTreeSet<Symbol> = decrements(&raised).into_iter().map(|x| x.normalize()).collect();
                let via: Option<BTreeSet<Symbol>> =
                    decrements(&s).into_iter().map(|x| defect_bijection(&x, d).ok().map(|y| y.normalize())).collect();
                r.record(via.as_ref() == Some(&direct), || format!("{s} at defect {d}"));
            }
        }
    }
    r
}

/// From rank 3 on, the set of lowerings determines a defect-1 symbol.
pub fn decrements_injective(max_rank: u64) -> PropertyReport {
    let mut r = PropertyReport::new("decrements_determine_symbol");
    for k in 3..=max_rank {
        let sets = decrement_sets(k);
        for (i, (s, d)) in sets.iter().enumerate() {
            let clash = sets[..i].iter().find(|(_, e)| e == d);
            r.record(clash.is_none(), || format!("{s} and {}", clash.map(|c| c.0.to_string()).unwrap_or_default()));
        }
    }
    r
}

/// Every sweep at the given scale.
pub fn all_properties(max_rank: u64) -> Result<Vec<PropertyReport>, LagrangianError> {
    let mut cases = Vec::new();
    for group in GROUPS {
        cases.extend(j_cases(group, max_rank + 1)?);
    }
    let m = max_rank as u32;
    Ok(vec![
        sigma_b_order(max_rank + 3),
        dominance_reversal(m, 2),
        a_sum_bound(max_rank),
        crossed_equality(max_rank),
        both_equalities_give_row_condition(max_rank),
        row_condition_gives_both_equalities(max_rank),
        enumeration_matches_membership(&cases),
        j_size_law(&cases),
        j_sums_similar(&cases),
        row_condition_excluded_from_j(&cases),
        phi_round_trip(m.min(4), 2),
        restriction_commutes(max_rank + 1),
        decrements_injective(max_rank + 1),
    ])
}

/// Sweeps with recorded counterexamples.
pub const REFUTED: [&str; 3] = ["cond3_implies_cond1_and_cond2", "j_size_law", "no_j_member_satisfies_cond3"];
