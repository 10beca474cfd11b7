use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::beta::BetaSet;
use crate::context::{CSign, GroupContext, GroupType};
use crate::error::{SpringerError, SymbolError};
use crate::symbol::{weighted_sum, RowParser, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpringerKind {
    /// Ordered pairs, bottom row inside the positive integers.
    Y,
    /// Unordered pairs.
    X,
}

/// A pair of sets without consecutive integers, up to the kind-specific shift.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpringerSymbol {
    pub kind: SpringerKind,
    pub top: BetaSet,
    pub bottom: BetaSet,
}

fn check_gaps(row: &BetaSet, name: &'static str) -> Result<(), SpringerError> {
    match row.entries().windows(2).find(|w| w[1] == w[0] + 1) {
        Some(w) => Err(SpringerError::Consecutive { row: name, a: w[0], b: w[1] }),
        None => Ok(()),
    }
}

impl SpringerSymbol {
    /// Build and check the structural conditions; the rank is derived, not checked.
    pub fn new(kind: SpringerKind, top: BetaSet, bottom: BetaSet) -> Result<Self, SpringerError> {
        check_gaps(&top, "top")?;
        check_gaps(&bottom, "bottom")?;
        if kind == SpringerKind::Y {
            if bottom.contains(0) {
                return Err(SpringerError::ZeroInBottom);
            }
            let m = top.len() + bottom.len();
            if m.is_multiple_of(2) {
                return Err(SpringerError::EvenCount(m));
            }
        }
        let s = SpringerSymbol { kind, top, bottom };
        s.rank_checked()?;
        Ok(s)
    }

    pub fn from_rows(kind: SpringerKind, top: &[u32], bottom: &[u32]) -> Result<Self, SpringerError> {
        SpringerSymbol::new(kind, BetaSet::new(top.to_vec())?, BetaSet::new(bottom.to_vec())?)
    }

    /// Validate against a declared rank.
    pub fn validate(kind: SpringerKind, top: &[u32], bottom: &[u32], rank: u64) -> Result<Self, SpringerError> {
        let s = SpringerSymbol::from_rows(kind, top, bottom)?;
        if s.rank() != rank {
            return Err(SpringerError::RankCondition(rank));
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.top.len() + self.bottom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn defect(&self) -> i64 {
        self.top.len() as i64 - self.bottom.len() as i64
    }

    fn rank_checked(&self) -> Result<u64, SpringerError> {
        let sum = (self.top.sum() + self.bottom.sum()) as i64;
        let m = self.len() as i64;
        let n = match self.kind {
            SpringerKind::Y => 2 * (sum - m * (m - 1) / 2),
            SpringerKind::X => 2 * sum - (m - 1) * (m - 1) + 1,
        };
        if n < 0 {
            return Err(SpringerError::RankCondition(0));
        }
        Ok(n as u64)
    }

    /// The N with this symbol in the set of rank N.
    pub fn rank(&self) -> u64 {
        self.rank_checked().expect("validated on construction")
    }

    pub fn shift(&self, k: usize) -> Self {
        let k32 = k as u32;
        let top_prefix: Vec<u32> = (0..k32).map(|i| 2 * i).collect();
        let bottom_prefix: Vec<u32> = match self.kind {
            SpringerKind::Y => (0..k32).map(|i| 2 * i + 1).collect(),
            SpringerKind::X => top_prefix.clone(),
        };
        let lift = |prefix: Vec<u32>, row: &BetaSet| {
            let mut v = prefix;
            v.extend(row.iter().map(|x| x + 2 * k32));
            BetaSet::from_sorted(v)
        };
        SpringerSymbol { kind: self.kind, top: lift(top_prefix, &self.top), bottom: lift(bottom_prefix, &self.bottom) }
    }

    pub fn unshift(&self) -> Option<Self> {
        let (t0, b0) = match self.kind {
            SpringerKind::Y => (0, 1),
            SpringerKind::X => (0, 0),
        };
        if self.top.entries().first() != Some(&t0) || self.bottom.entries().first() != Some(&b0) {
            return None;
        }
        let drop = |row: &BetaSet| BetaSet::from_sorted(row.entries()[1..].iter().map(|x| x - 2).collect());
        Some(SpringerSymbol { kind: self.kind, top: drop(&self.top), bottom: drop(&self.bottom) })
    }

    /// Unique shift-minimal representative; kind X rows are also put in canonical order.
    pub fn normalize(&self) -> Self {
        let mut cur = self.clone();
        while let Some(next) = cur.unshift() {
            cur = next;
        }
        if cur.kind == SpringerKind::X {
            let swap = match cur.top.len().cmp(&cur.bottom.len()) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => cur.top > cur.bottom,
            };
            if swap {
                std::mem::swap(&mut cur.top, &mut cur.bottom);
            }
        }
        cur
    }

    pub fn equivalent(&self, other: &SpringerSymbol) -> bool {
        self.kind == other.kind && self.normalize() == other.normalize()
    }

    pub fn padded_to(&self, total: usize) -> Option<Self> {
        if total < self.len() || !(total - self.len()).is_multiple_of(2) {
            return None;
        }
        Some(self.shift((total - self.len()) / 2))
    }

    pub fn entries(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.top.iter().chain(self.bottom.iter()).collect();
        v.sort_unstable();
        v
    }

    fn reference(&self, len: usize) -> Vec<u32> {
        match self.kind {
            SpringerKind::Y => (0..len as u32).collect(),
            SpringerKind::X => (0..len).map(|j| 2 * (j / 2) as u32).collect(),
        }
    }

    /// Lusztig's b-function.
    pub fn b_value(&self) -> u64 {
        let x = self.entries();
        weighted_sum(&x) - weighted_sum(&self.reference(x.len()))
    }

    /// σ on the normalized representative.
    pub fn sigma(&self) -> u64 {
        weighted_sum(&self.normalize().entries())
    }

    /// σ after shifting to exactly `total` entries.
    pub fn sigma_at(&self, total: usize) -> Option<u64> {
        Some(weighted_sum(&self.padded_to(total)?.entries()))
    }

    pub fn similar(&self, other: &SpringerSymbol) -> bool {
        if self.kind != other.kind || !(self.len() + other.len()).is_multiple_of(2) {
            return false;
        }
        let total = self.len().max(other.len());
        let a = self.padded_to(total).expect("parity checked");
        let b = other.padded_to(total).expect("parity checked");
        let inter = |s: &SpringerSymbol| -> Vec<u32> { s.top.iter().filter(|&x| s.bottom.contains(x)).collect() };
        a.entries() == b.entries() && inter(&a) == inter(&b)
    }

    pub fn is_degenerate(&self) -> bool {
        let n = self.normalize();
        n.kind == SpringerKind::X && n.top == n.bottom
    }
}

impl fmt::Display for SpringerSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            SpringerKind::Y => "Y",
            SpringerKind::X => "X",
        };
        write!(f, "{k}[{}|{}]", self.top, self.bottom)
    }
}

impl FromStr for SpringerSymbol {
    type Err = SpringerError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        let kind = match text.chars().next() {
            Some('Y') => SpringerKind::Y,
            Some('X') => SpringerKind::X,
            _ => {
                return Err(SymbolError::Syntax { pos: 0, msg: "expected kind prefix 'X' or 'Y'".into() }.into());
            }
        };
        let mut p = RowParser::new(text);
        p.pos = 1;
        let (top, bottom) = p.pair()?;
        p.finish()?;
        SpringerSymbol::new(kind, top, bottom)
    }
}

/// Same unipotent class test; degenerate inputs are rejected.
pub fn same_unipotent_class(s: &SpringerSymbol, t: &SpringerSymbol) -> Result<bool, SpringerError> {
    if s.is_degenerate() || t.is_degenerate() {
        return Err(SpringerError::Domain("degenerate symbol".into()));
    }
    Ok(s.rank() == t.rank() && s.similar(t))
}

/// Raise a defect-1 symbol to defect `d`.
pub fn pi_bijection(s: &SpringerSymbol, d: i64) -> Result<SpringerSymbol, SpringerError> {
    if s.defect() != 1 {
        return Err(SpringerError::InvalidDefect { defect: s.defect(), what: "source of the defect bijection" });
    }
    match s.kind {
        SpringerKind::Y if d % 2 == 0 => {
            return Err(SpringerError::InvalidDefect { defect: d, what: "kind Y target" });
        }
        SpringerKind::X if d < 1 => {
            return Err(SpringerError::InvalidDefect { defect: d, what: "kind X target" });
        }
        _ => {}
    }
    if d >= 1 {
        let k = (2 * d - 2) as u32;
        let mut top: Vec<u32> = (0..(d - 1) as u32).map(|i| 2 * i).collect();
        top.extend(s.top.iter().map(|x| x + k));
        Ok(SpringerSymbol { kind: s.kind, top: BetaSet::from_sorted(top), bottom: s.bottom.clone() })
    } else {
        let k = (2 - 2 * d) as u32;
        let mut bottom: Vec<u32> = (0..(1 - d) as u32).map(|i| 2 * i + 1).collect();
        bottom.extend(s.bottom.iter().map(|x| x + k));
        Ok(SpringerSymbol { kind: s.kind, top: s.top.clone(), bottom: BetaSet::from_sorted(bottom) })
    }
}

/// Inverse of [`pi_bijection`] for a symbol of defect `d`.
pub fn pi_inverse(s: &SpringerSymbol, d: i64) -> Result<SpringerSymbol, SpringerError> {
    let actual = if s.kind == SpringerKind::X { s.defect().abs() } else { s.defect() };
    if actual != d {
        return Err(SpringerError::InvalidDefect { defect: actual, what: "input of the inverse bijection" });
    }
    let mut cur = s.clone();
    if cur.kind == SpringerKind::X && cur.defect() < 0 {
        std::mem::swap(&mut cur.top, &mut cur.bottom);
    }
    if d >= 1 {
        let c = (d - 1) as usize;
        let prefix: Vec<u32> = (0..c as u32).map(|i| 2 * i).collect();
        while cur.top.len() < c || cur.top.entries()[..c] != prefix[..] {
            cur = cur.shift(1);
        }
        let k = (2 * d - 2) as u32;
        let top = BetaSet::from_sorted(cur.top.entries()[c..].iter().map(|x| x - k).collect());
        Ok(SpringerSymbol { top, ..cur }.normalize())
    } else {
        let c = (1 - d) as usize;
        let prefix: Vec<u32> = (0..c as u32).map(|i| 2 * i + 1).collect();
        while cur.bottom.len() < c || cur.bottom.entries()[..c] != prefix[..] {
            cur = cur.shift(1);
        }
        let k = (2 - 2 * d) as u32;
        let bottom = BetaSet::from_sorted(cur.bottom.entries()[c..].iter().map(|x| x - k).collect());
        Ok(SpringerSymbol { bottom, ..cur }.normalize())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ThetaVariant {
    Theta,
    ThetaPrime,
    ThetaBar,
    ThetaT,
}

/// The four maps from defect-0 symbols to defect-1 (or defect-0) Springer symbols.
pub fn theta_map(s: &Symbol, variant: ThetaVariant) -> Result<SpringerSymbol, SpringerError> {
    if s.defect() != 0 {
        return Err(SpringerError::InvalidDefect { defect: s.defect(), what: "theta map input" });
    }
    let (a, b) = match variant {
        ThetaVariant::ThetaT => (&s.bottom, &s.top),
        _ => (&s.top, &s.bottom),
    };
    let x: Vec<u32> = std::iter::once(0).chain(a.iter().enumerate().map(|(i, v)| v + i as u32 + 2)).collect();
    let x_prime: Vec<u32> = a.iter().enumerate().map(|(i, v)| v + i as u32).collect();
    let y: Vec<u32> = b.iter().enumerate().map(|(i, v)| v + i as u32 + 1).collect();
    let y_prime: Vec<u32> = b.iter().enumerate().map(|(i, v)| v + i as u32).collect();
    let (kind, top, bottom) = match variant {
        ThetaVariant::Theta | ThetaVariant::ThetaT => (SpringerKind::Y, x, y),
        ThetaVariant::ThetaPrime => (SpringerKind::X, x, y_prime),
        ThetaVariant::ThetaBar => (SpringerKind::X, x_prime, y_prime),
    };
    SpringerSymbol::new(kind, BetaSet::from_sorted(top), BetaSet::from_sorted(bottom))
}

/// The branch of the generalized Springer map selected by a context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeltaBranch {
    pub group: GroupType,
    pub t: u32,
    pub c_sign: CSign,
}

impl DeltaBranch {
    pub fn new(group: GroupType, t: u32, c_sign: CSign) -> Result<Self, SpringerError> {
        let ok = match (group, c_sign) {
            (GroupType::C, CSign::Minus) => t >= 1,
            _ => true,
        };
        if !ok {
            return Err(SpringerError::Domain("type C with d = 1-4t needs t >= 1".into()));
        }
        Ok(DeltaBranch { group, t, c_sign })
    }

    pub fn from_context(ctx: &GroupContext) -> Result<Self, SpringerError> {
        DeltaBranch::new(ctx.group, ctx.t, ctx.c_sign)
    }

    /// The target defect d.
    pub fn defect(&self) -> i64 {
        let t = self.t as i64;
        match (self.group, self.c_sign) {
            (GroupType::B, _) => 2 * t + 1,
            (GroupType::C, CSign::Plus) => 4 * t + 1,
            (GroupType::C, CSign::Minus) => 1 - 4 * t,
            (GroupType::D, _) => 4 * t,
        }
    }

    /// All branches with a given t.
    pub fn all(t: u32) -> Vec<DeltaBranch> {
        let mut v = vec![
            DeltaBranch { group: GroupType::B, t, c_sign: CSign::Plus },
            DeltaBranch { group: GroupType::C, t, c_sign: CSign::Plus },
            DeltaBranch { group: GroupType::D, t, c_sign: CSign::Plus },
        ];
        if t >= 1 {
            v.push(DeltaBranch { group: GroupType::C, t, c_sign: CSign::Minus });
        }
        v
    }
}

/// The generalized Springer map on defect-0 symbols.
pub fn delta_map(s: &Symbol, branch: DeltaBranch) -> Result<SpringerSymbol, SpringerError> {
    if s.defect() != 0 {
        return Err(SpringerError::Domain(format!("delta map expects defect 0, got {}", s.defect())));
    }
    let d = branch.defect();
    match (branch.group, branch.c_sign) {
        (GroupType::B, _) => pi_bijection(&theta_map(s, ThetaVariant::ThetaPrime)?, d),
        (GroupType::C, CSign::Plus) => pi_bijection(&theta_map(s, ThetaVariant::Theta)?, d),
        (GroupType::C, CSign::Minus) => pi_bijection(&theta_map(s, ThetaVariant::ThetaT)?, d),
        (GroupType::D, _) if branch.t == 0 => theta_map(s, ThetaVariant::ThetaBar),
        (GroupType::D, _) => pi_bijection(&theta_map(s, ThetaVariant::ThetaPrime)?, d),
    }
}

/// The rank N of the Springer symbols for a type of rank n.
pub fn springer_rank(group: GroupType, n: u32) -> u64 {
    match group {
        GroupType::B => 2 * n as u64 + 1,
        GroupType::C | GroupType::D => 2 * n as u64,
    }
}

/// (dim of the Springer fibre, dim of the class).
pub fn class_dimension(s: &SpringerSymbol, group: GroupType, n: u32) -> Result<(u64, u64), SpringerError> {
    let expected = springer_rank(group, n);
    if s.rank() != expected {
        return Err(SymbolError::RankMismatch { expected, got: s.rank() }.into());
    }
    let b = s.b_value();
    let phi = crate::context::root_count(group, n);
    let dim = phi
        .checked_sub(2 * b)
        .ok_or_else(|| SpringerError::Domain(format!("b = {b} exceeds half the root count {phi}")))?;
    Ok((b, dim))
}

/// Every Springer symbol of the given kind and rank, normalized.
pub fn springer_symbols_of_rank(kind: SpringerKind, rank: u64) -> Vec<SpringerSymbol> {
    // Gap-free sets correspond to beta-sets via x_i - i; enumerate normalized defect-0/1 preimages and all defects.
    let mut out = Vec::new();
    let max_entries = 2 * ((rank as f64).sqrt() as usize + 2) + 3;
    for m in 0..=max_entries {
        let valid_m = match kind {
            SpringerKind::Y => m % 2 == 1,
            SpringerKind::X => true,
        };
        if !valid_m {
            continue;
        }
        let m64 = m as i64;
        let target_sum = match kind {
            SpringerKind::Y => {
                if rank % 2 == 1 {
                    continue;
                }
                rank as i64 / 2 + m64 * (m64 - 1) / 2
            }
            SpringerKind::X => {
                let twice = rank as i64 + (m64 - 1) * (m64 - 1) - 1;
                if twice < 0 || twice % 2 != 0 {
                    continue;
                }
                twice / 2
            }
        };
        for top_len in 0..=m {
            let bottom_len = m - top_len;
            if kind == SpringerKind::X && top_len < bottom_len {
                continue;
            }
            for top_sum in 0..=target_sum {
                let bottom_sum = target_sum - top_sum;
                let tops = gap_free_sets(top_len, top_sum as u64, 0);
                if tops.is_empty() {
                    continue;
                }
                let min_bottom = if kind == SpringerKind::Y { 1 } else { 0 };
                let bottoms = gap_free_sets(bottom_len, bottom_sum as u64, min_bottom);
                for t in &tops {
                    for b in &bottoms {
                        let s = SpringerSymbol {
                            kind,
                            top: BetaSet::from_sorted(t.clone()),
                            bottom: BetaSet::from_sorted(b.clone()),
                        };
                        let n = s.normalize();
                        if n.len() == m {
                            out.push(n);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Sets of `len` integers ≥ `min` with no two consecutive and the given sum.
fn gap_free_sets(len: usize, sum: u64, min: u32) -> Vec<Vec<u32>> {
    fn go(len: usize, sum: u64, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 0 {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // smallest possible sum of `len` entries starting at x with gaps ≥ 2
        let l = len as u64;
        let mut x = min;
        loop {
            let least = l * x as u64 + l * (l - 1);
            if least > sum {
                break;
            }
            cur.push(x);
            go(len - 1, sum - x as u64, x + 2, cur, out);
            cur.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    go(len, sum, min, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(t: &[u32], b: &[u32]) -> SpringerSymbol {
        SpringerSymbol::from_rows(SpringerKind::Y, t, b).unwrap()
    }

    fn x(t: &[u32], b: &[u32]) -> SpringerSymbol {
        SpringerSymbol::from_rows(SpringerKind::X, t, b).unwrap()
    }

    fn sym(s: &str) -> Symbol {
        s.parse().unwrap()
    }

    #[test]
    fn validation() {
        let s = SpringerSymbol::validate(SpringerKind::Y, &[0, 3, 5], &[1, 5], 8).unwrap();
        assert_eq!(s.defect(), 1);
        assert!(matches!(
            SpringerSymbol::from_rows(SpringerKind::Y, &[0, 1], &[2]),
            Err(SpringerError::Consecutive { .. })
        ));
        let s = x(&[0, 4], &[0, 2]);
        assert!(SpringerSymbol::validate(SpringerKind::X, &[0, 4], &[0, 2], s.rank()).is_ok());
    }

    #[test]
    fn normalization() {
        assert_eq!(y(&[0, 2, 7], &[1, 3]).normalize(), y(&[3], &[]));
        assert!(x(&[0, 4], &[0, 2]).equivalent(&x(&[2], &[0])));
        assert_eq!(y(&[0, 3, 5], &[1, 5]).normalize(), y(&[1, 3], &[3]));
    }

    #[test]
    fn pi_examples() {
        let s = y(&[0, 3, 5], &[1, 5]);
        assert_eq!(pi_bijection(&s, 5).unwrap(), y(&[0, 2, 4, 6, 8, 11, 13], &[1, 5]));
        assert_eq!(pi_bijection(&s, 1).unwrap(), s);
        let neg = pi_bijection(&s, -3).unwrap();
        assert_eq!(neg, y(&[0, 3, 5], &[1, 3, 5, 7, 9, 13]));
        assert_eq!(neg.rank(), s.rank() + 12);
        assert!(pi_inverse(&neg, -3).unwrap().equivalent(&s));
    }

    #[test]
    fn theta_examples() {
        let s = sym("[1,2|0,3]");
        assert_eq!(theta_map(&s, ThetaVariant::Theta).unwrap(), y(&[0, 3, 5], &[1, 5]));
        assert_eq!(theta_map(&s, ThetaVariant::ThetaT).unwrap(), y(&[0, 2, 6], &[2, 4]));
        assert_eq!(theta_map(&s, ThetaVariant::ThetaPrime).unwrap(), x(&[0, 3, 5], &[0, 4]));
    }

    #[test]
    fn delta_examples() {
        let c0 = DeltaBranch::new(GroupType::C, 0, CSign::Plus).unwrap();
        assert_eq!(delta_map(&sym("[1,2|0,3]"), c0).unwrap(), y(&[0, 3, 5], &[1, 5]));
        assert_eq!(delta_map(&sym("[0,3|1,2]"), c0).unwrap(), y(&[0, 2, 6], &[2, 4]));
        let b0 = DeltaBranch::new(GroupType::B, 0, CSign::Plus).unwrap();
        assert_eq!(delta_map(&sym("[2|0]"), b0).unwrap(), x(&[0, 4], &[0]));
        let d1 = DeltaBranch::new(GroupType::D, 1, CSign::Plus).unwrap();
        let out = delta_map(&sym("[|]"), d1).unwrap();
        assert_eq!(out.normalize(), x(&[0, 2, 4, 6], &[]));
        assert_eq!(out.rank(), 16);
    }

    #[test]
    fn b_examples() {
        assert_eq!(y(&[0, 3, 5], &[1, 5]).b_value(), 4);
        assert_eq!(x(&[0, 4], &[0]).b_value(), 0);
        assert_eq!(x(&[0, 2, 4, 6, 8], &[0, 2]).b_value(), 2);
    }

    #[test]
    fn class_examples() {
        let s = y(&[0, 3, 5], &[1, 5]);
        assert!(same_unipotent_class(&s, &s).unwrap());
        assert!(same_unipotent_class(&s, &s.shift(2)).unwrap());
        assert!(!same_unipotent_class(&s, &y(&[0, 2, 6], &[2, 4])).unwrap());
        assert_eq!(class_dimension(&s, GroupType::C, 4).unwrap(), (4, 24));
        assert_eq!(class_dimension(&x(&[0, 2, 4, 6, 8], &[0, 2]), GroupType::B, 4).unwrap(), (2, 28));
    }

    #[test]
    fn parse_roundtrip() {
        let s: SpringerSymbol = "Y[0,3,5|1,5]".parse().unwrap();
        assert_eq!(s.to_string(), "Y[0,3,5|1,5]");
        let s: SpringerSymbol = "X[0,4|0,2]".parse().unwrap();
        assert_eq!(s.to_string(), "X[0,4|0,2]");
        assert!("Y[0,1|2]".parse::<SpringerSymbol>().is_err());
    }
}
