//! Pairs of labels, the entrywise sums `⊕`/`⊞`, and the subset 𝒥 of a
//! product of similarity classes.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::beta::BetaSet;
use crate::context::GroupType;
use crate::error::LagrangianError;
use crate::springer::{SpringerKind, SpringerSymbol};
use crate::symbol::{Decoration, LabelFamily, LabelSetSpec, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairCase {
    B,
    C1,
    C2,
    D,
}

impl fmt::Display for PairCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairCase::B => "B",
            PairCase::C1 => "C.1",
            PairCase::C2 => "C.2",
            PairCase::D => "D",
        })
    }
}

/// Label families of the two factors.
pub fn label_families(group: GroupType) -> (LabelFamily, LabelFamily) {
    match group {
        GroupType::B => (LabelFamily::PhiPlus, LabelFamily::PhiPlus),
        GroupType::C => (LabelFamily::OmegaPlus, LabelFamily::PhiPlus),
        GroupType::D => (LabelFamily::OmegaPlus, LabelFamily::OmegaPlus),
    }
}

pub fn label_specs(group: GroupType, a: u64, b: u64) -> (LabelSetSpec, LabelSetSpec) {
    let (l, r) = label_families(group);
    (LabelSetSpec::new(l, a), LabelSetSpec::new(r, b))
}

/// |d(Λ) − d(Ξ)| with unordered defects taken non-negative.
pub fn epsilon(left: &Symbol, right: &Symbol) -> i64 {
    let d = |s: &Symbol| if s.ordered { s.defect() } else { s.defect().abs() };
    (d(left) - d(right)).abs()
}

/// Two labels shifted to a common bottom length `p` with every row containing 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolPair {
    pub left: Symbol,
    pub right: Symbol,
    pub group: GroupType,
    pub case: PairCase,
    pub t: u32,
    pub p: usize,
}

/// Entries in the 1-based layout used by the sums: `a[i-1] = a_i`, and the
/// lone index-0 entry of the longer top row in `lead`.
struct Layout<'a> {
    a: &'a [u32],
    a2: &'a [u32],
    b: &'a [u32],
    b2: &'a [u32],
    lead: Option<u32>,
}

fn oriented(s: &Symbol, family: LabelFamily) -> Symbol {
    let ordered = LabelSetSpec::new(family, 0).ordered();
    let s = s.clone().with_ordered(ordered);
    if !ordered && s.defect() < 0 {
        s.swapped()
    } else {
        s
    }
}

pub fn make_pair(left: &Symbol, right: &Symbol, group: GroupType) -> Result<SymbolPair, LagrangianError> {
    make_pair_at(left, right, group, None)
}

/// Build the aligned pair. With `p = None` the given bottom lengths are kept
/// when they already allow a zero in every row.
pub fn make_pair_at(
    left: &Symbol,
    right: &Symbol,
    group: GroupType,
    p: Option<usize>,
) -> Result<SymbolPair, LagrangianError> {
    let (lf, rf) = label_families(group);
    let (l, r) = (oriented(left, lf), oriented(right, rf));
    let (dl, dr) = (l.defect(), r.defect());
    if (dl - dr).abs() > 1 {
        return Err(LagrangianError::Gap { left: dl, right: dr });
    }
    let case = match group {
        GroupType::B if dl == dr && dl > 0 && dl % 2 == 1 => Some((PairCase::B, (dl - 1) / 2)),
        GroupType::C if dl >= 0 && dl % 4 == 0 && dr == dl + 1 => Some((PairCase::C1, dl / 4)),
        GroupType::C if dl >= 4 && dl % 4 == 0 && dr == dl - 1 => Some((PairCase::C2, dl / 4)),
        GroupType::D if dl == dr && dl % 4 == 0 => Some((PairCase::D, dl / 4)),
        _ => None,
    };
    let (case, t) = case.ok_or(LagrangianError::Defects { group, left: dl, right: dr })?;
    let given = l.bottom.len().max(r.bottom.len());
    let (l, r) = (l.normalize(), r.normalize());
    let min = l.bottom.len().max(r.bottom.len()) + 1;
    let p = match p {
        Some(p) if p < min => return Err(LagrangianError::Alignment { p, min }),
        Some(p) => p,
        None => min.max(given),
    };
    let shift = |s: Symbol| s.with_bottom_len(p).expect("p above both bottoms");
    Ok(SymbolPair { left: shift(l), right: shift(r), group, case, t: t as u32, p })
}

impl SymbolPair {
    fn layout(&self) -> Layout<'_> {
        let (a, b) = (self.left.top.entries(), self.left.bottom.entries());
        let (a2, b2) = (self.right.top.entries(), self.right.bottom.entries());
        match self.case {
            PairCase::B | PairCase::D => Layout { a, a2, b, b2, lead: None },
            PairCase::C1 => Layout { a, a2: &a2[1..], b, b2, lead: Some(a2[0]) },
            PairCase::C2 => Layout { a: &a[1..], a2, b, b2, lead: Some(a[0]) },
        }
    }

    pub fn a_sum(&self) -> u64 {
        self.left.a_value() + self.right.a_value()
    }

    /// `Λ ⊕ Ξ`: kind X for cases B and D, kind Y for the two C cases.
    pub fn oplus(&self) -> Result<SpringerSymbol, LagrangianError> {
        let Layout { a, a2, b, b2, lead } = self.layout();
        let (kind, top, bottom) = match self.case {
            PairCase::B | PairCase::D => (SpringerKind::X, add(a, a2, 0), add(b, b2, 0)),
            PairCase::C1 => {
                let mut top = vec![lead.expect("C.1 has a lead entry")];
                top.extend(add(a, a2, 1));
                (SpringerKind::Y, top, add(b, b2, 1))
            }
            PairCase::C2 => (SpringerKind::Y, add(b, b2, 0), add(a, a2, 0)),
        };
        Ok(SpringerSymbol::from_rows(kind, &top, &bottom)?)
    }

    fn crossed_defined(&self) -> bool {
        self.t == 0 && matches!(self.case, PairCase::C1 | PairCase::D)
    }

    /// `Λ ⊞ Ξ`, defined only for case C.1 or D with t = 0.
    pub fn boxplus(&self) -> Result<SpringerSymbol, LagrangianError> {
        if !self.crossed_defined() {
            return Err(LagrangianError::WrongCase { case: self.case.to_string(), t: self.t });
        }
        let Layout { a, a2, b, b2, lead } = self.layout();
        let (kind, top, bottom) = match self.case {
            PairCase::C1 => {
                let mut top = vec![lead.expect("C.1 has a lead entry")];
                top.extend(add(b, a2, 1));
                (SpringerKind::Y, top, add(a, b2, 1))
            }
            _ => (SpringerKind::X, add(b, a2, 0), add(a, b2, 0)),
        };
        Ok(SpringerSymbol::from_rows(kind, &top, &bottom)?)
    }

    /// The pair with the rows of the left symbol exchanged, when that is again a pair of the same case.
    pub fn flipped(&self) -> Option<SymbolPair> {
        if !self.crossed_defined() {
            return None;
        }
        Some(SymbolPair { left: self.left.swapped(), ..self.clone() })
    }

    pub fn equality_conditions(&self) -> EqualityConditions {
        let Layout { a, a2, b, b2, .. } = self.layout();
        let cond1 = interleaved(a, a2, b, b2);
        let (cond2, cond3) = if self.crossed_defined() {
            let c3 = (0..self.p).all(|i| a[i] == b[i] || a2[i] == b2[i]);
            (Some(interleaved(b, a2, a, b2)), Some(c3))
        } else {
            (None, None)
        };
        EqualityConditions { cond1, cond2, cond3 }
    }

    pub fn interval_structure(&self) -> IntervalStructure {
        let mut c = self.left.entries();
        let mut d = self.right.entries();
        let (mut c0, mut d0) = (None, None);
        match self.case {
            PairCase::C1 => d0 = Some(d.remove(0)),
            PairCase::C2 => c0 = Some(c.remove(0)),
            _ => {}
        }
        debug_assert_eq!(c.len(), d.len());
        let mut classes = Vec::new();
        let mut start = 1;
        for i in 1..=c.len() {
            let joined = i < c.len() && (c[i - 1] == c[i] || d[i - 1] == d[i]);
            if !joined {
                let degenerate = i == start + 1 && c[i - 2] == c[i - 1] && d[i - 2] == d[i - 1];
                classes.push(Interval { start, end: i, degenerate });
                start = i + 1;
            }
        }
        let mut tilde: Vec<usize> = (0..classes.len()).filter(|&k| classes[k].len() % 2 == 1).collect();
        if self.case == PairCase::C2 && classes[0].len() % 2 == 0 {
            tilde.insert(0, 0);
        }
        IntervalStructure { c, d, c0, d0, classes, i0: 0, tilde, group: self.group }
    }
}

fn add(x: &[u32], y: &[u32], k: u32) -> Vec<u32> {
    x.iter().zip(y).map(|(u, v)| u + v + k).collect()
}

/// For every i, j: `x_i ≤ y_j` and `x2_i ≤ y2_j`, or both reversed.
fn interleaved(x: &[u32], x2: &[u32], y: &[u32], y2: &[u32]) -> bool {
    x.iter()
        .zip(x2)
        .all(|(&xi, &xi2)| y.iter().zip(y2).all(|(&yj, &yj2)| (xi <= yj && xi2 <= yj2) || (xi >= yj && xi2 >= yj2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EqualityConditions {
    pub cond1: bool,
    pub cond2: Option<bool>,
    pub cond3: Option<bool>,
}

/// A class of consecutive indices, 1-based and inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
    pub degenerate: bool,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end < self.start
    }

    pub fn contains(&self, i: usize) -> bool {
        self.start <= i && i <= self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalStructure {
    /// `c[i-1] = c_i` for i in the index range.
    pub c: Vec<u32>,
    pub d: Vec<u32>,
    pub c0: Option<u32>,
    pub d0: Option<u32>,
    pub classes: Vec<Interval>,
    /// Position of the class containing 1.
    pub i0: usize,
    /// Positions of the classes whose flip changes the defect.
    pub tilde: Vec<usize>,
    pub group: GroupType,
}

impl IntervalStructure {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Interval::len).collect()
    }

    /// Number of non-degenerate classes.
    pub fn ell(&self) -> usize {
        self.classes.iter().filter(|c| !c.degenerate).count()
    }

    pub fn even_non_degenerate(&self) -> usize {
        self.classes.iter().filter(|c| !c.degenerate && c.len() % 2 == 0).count()
    }

    pub fn degenerate_count(&self) -> usize {
        self.classes.iter().filter(|c| c.degenerate).count()
    }

    /// 2^(ℓ-1) for type B and 2^(ℓ-2) otherwise, when that is an integer.
    pub fn formula_size(&self) -> Option<u64> {
        let drop = if self.group == GroupType::B { 1 } else { 2 };
        self.ell().checked_sub(drop).map(|e| 1u64 << e)
    }

    /// The rows `(S;T)` and `(S';T')` for a function constant on classes.
    pub fn rows_for(&self, f: &[bool]) -> [BTreeSet<u32>; 4] {
        let mut out: [BTreeSet<u32>; 4] = Default::default();
        for set in out.iter_mut() {
            set.insert(0);
        }
        for (k, class) in self.classes.iter().enumerate() {
            for i in class.start..=class.end {
                let first = (i % 2 == 1) != f[k];
                let (x, y) = if first { (0, 2) } else { (1, 3) };
                out[x].insert(self.c[i - 1]);
                out[y].insert(self.d[i - 1]);
            }
        }
        out
    }

    /// The parity condition on flipped classes of types C and D.
    pub fn admits(&self, f: &[bool]) -> bool {
        self.group == GroupType::B || self.tilde.iter().filter(|&&k| f[k]).count() % 2 == 0
    }
}

/// 𝒥 inside V × W.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JSetResult {
    #[serde(serialize_with = "pair_strings")]
    pub members: Vec<(Symbol, Symbol)>,
    pub ell: usize,
    pub formula_size: Option<u64>,
    pub enumerated_size: usize,
    pub admitted_functions: usize,
}

fn pair_strings<S: Serializer>(pairs: &[(Symbol, Symbol)], ser: S) -> Result<S::Ok, S::Error> {
    let mut seq = ser.serialize_seq(Some(pairs.len()))?;
    for (l, r) in pairs {
        seq.serialize_element(&format!("{l} ⊠ {r}"))?;
    }
    seq.end()
}

impl JSetResult {
    pub fn law_holds(&self) -> bool {
        self.formula_size == Some(self.enumerated_size as u64)
    }
}

fn admit(spec: &LabelSetSpec, s: &Symbol) -> Result<Symbol, LagrangianError> {
    spec.admit(s).ok_or_else(|| LagrangianError::NotALabel(s.to_string()))
}

/// The similarity classes of `left` and `right` in the label sets of `group`.
pub fn classes_of(
    left: &Symbol,
    right: &Symbol,
    group: GroupType,
) -> Result<(Vec<Symbol>, Vec<Symbol>), LagrangianError> {
    let (vs, ws) = label_specs(group, left.rank(), right.rank());
    let (l, r) = (admit(&vs, left)?, admit(&ws, right)?);
    Ok((vs.similarity_class(&l), ws.similarity_class(&r)))
}

/// Enumerate 𝒥 for the classes containing `left` and `right`.
pub fn enumerate_j(left: &Symbol, right: &Symbol, group: GroupType) -> Result<JSetResult, LagrangianError> {
    let (v, w) = classes_of(left, right, group)?;
    let base = v
        .iter()
        .cartesian_product(&w)
        .find_map(|(x, y)| make_pair(x, y, group).ok())
        .ok_or(LagrangianError::EmptyBase)?;
    enumerate_j_from(&base, &v, &w)
}

/// Enumerate 𝒥 from an explicit aligned base pair.
pub fn enumerate_j_from(base: &SymbolPair, v: &[Symbol], w: &[Symbol]) -> Result<JSetResult, LagrangianError> {
    let group = base.group;
    let (vs, ws) = label_specs(group, base.left.rank(), base.right.rank());
    let s = base.interval_structure();
    let k = s.classes.len();
    let mut members = BTreeSet::new();
    let mut admitted = 0;
    for mask in 0u64..(1u64 << k) {
        let f: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
        if !s.admits(&f) {
            continue;
        }
        admitted += 1;
        let [st, tt, s2, t2] = s.rows_for(&f);
        let (l, r) =
            if group == GroupType::D || s2.len() > t2.len() { ((st, tt), (s2, t2)) } else { ((tt, st), (t2, s2)) };
        let l = place(&vs, v, l);
        let r = place(&ws, w, r);
        match (l, r) {
            (Some(l), Some(r)) => {
                members.insert((l, r));
            }
            (l, r) => {
                let show = |x: Option<Symbol>| x.map_or("?".to_string(), |s| s.to_string());
                return Err(LagrangianError::Outside(show(l), show(r)));
            }
        }
    }
    let members: Vec<(Symbol, Symbol)> = members.into_iter().collect();
    Ok(JSetResult {
        enumerated_size: members.len(),
        members,
        ell: s.ell(),
        formula_size: s.formula_size(),
        admitted_functions: admitted,
    })
}

fn place(spec: &LabelSetSpec, class: &[Symbol], rows: (BTreeSet<u32>, BTreeSet<u32>)) -> Option<Symbol> {
    let set = |x: BTreeSet<u32>| BetaSet::new(x.into_iter().collect()).expect("sets have no repeats");
    let mut s = Symbol::new(set(rows.0), set(rows.1)).with_ordered(spec.ordered());
    if !s.ordered && s.is_degenerate() {
        let dec = class.first().map_or(Decoration::None, |x| x.decoration);
        s = s.with_decoration(dec).ok()?;
    }
    let s = spec.admit(&s)?;
    class.contains(&s).then_some(s)
}

/// Membership in 𝒥 by the defect gap and the value test on `⊕`.
///
/// When the left symbol has defect 0 in case C.1 or D, both orientations of
/// its rows are tried.
pub fn j_membership(left: &Symbol, right: &Symbol, group: GroupType) -> bool {
    let Ok(pair) = make_pair(left, right, group) else {
        return false;
    };
    let holds = |p: &SymbolPair| p.oplus().map(|s| s.b_value() == p.a_sum()).unwrap_or(false);
    holds(&pair) || pair.flipped().is_some_and(|p| holds(&p))
}

/// All pairs of `V × W` accepted by [`j_membership`].
pub fn j_by_membership(v: &[Symbol], w: &[Symbol], group: GroupType) -> Vec<(Symbol, Symbol)> {
    v.iter()
        .cartesian_product(w)
        .filter(|(x, y)| j_membership(x, y, group))
        .map(|(x, y)| (x.clone(), y.clone()))
        .collect()
}
