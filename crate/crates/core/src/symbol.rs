use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::beta::{partitions, BetaSet};
use crate::error::SymbolError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Decoration {
    None,
    Plus,
    Minus,
}

impl Decoration {
    pub fn suffix(self) -> &'static str {
        match self {
            Decoration::None => "",
            Decoration::Plus => "+",
            Decoration::Minus => "-",
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Decoration::None => Decoration::None,
            Decoration::Plus => Decoration::Minus,
            Decoration::Minus => Decoration::Plus,
        }
    }
}

/// A pair of beta-sets up to simultaneous shift.
///
/// Unordered symbols identify `(A;B)` with `(B;A)`; only those may carry a
/// decoration, and only when degenerate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Symbol {
    pub top: BetaSet,
    pub bottom: BetaSet,
    pub ordered: bool,
    pub decoration: Decoration,
}

fn floor_quarter_square(d: i64) -> u64 {
    (d * d / 4) as u64
}

impl Symbol {
    pub fn new(top: BetaSet, bottom: BetaSet) -> Self {
        Symbol { top, bottom, ordered: true, decoration: Decoration::None }
    }

    pub fn from_rows(top: &[u32], bottom: &[u32]) -> Result<Self, SymbolError> {
        Ok(Symbol::new(BetaSet::new(top.to_vec())?, BetaSet::new(bottom.to_vec())?))
    }

    pub fn unordered(mut self) -> Self {
        self.ordered = false;
        self
    }

    pub fn with_ordered(mut self, ordered: bool) -> Self {
        self.ordered = ordered;
        self
    }

    pub fn with_decoration(mut self, decoration: Decoration) -> Result<Self, SymbolError> {
        if decoration != Decoration::None && (self.ordered || !self.is_degenerate()) {
            return Err(SymbolError::BadDecoration);
        }
        self.decoration = decoration;
        Ok(self)
    }

    pub fn defect(&self) -> i64 {
        self.top.len() as i64 - self.bottom.len() as i64
    }

    pub fn rank(&self) -> u64 {
        self.top.rank() + self.bottom.rank() + floor_quarter_square(self.defect())
    }

    pub fn len(&self) -> usize {
        self.top.len() + self.bottom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shift(&self, k: usize) -> Self {
        Symbol { top: self.top.shift(k), bottom: self.bottom.shift(k), ..self.clone() }
    }

    pub fn unshift(&self) -> Option<Self> {
        Some(Symbol { top: self.top.unshift()?, bottom: self.bottom.unshift()?, ..self.clone() })
    }

    pub fn normalize(&self) -> Self {
        let mut cur = self.clone();
        while let Some(next) = cur.unshift() {
            cur = next;
        }
        cur
    }

    /// Normalized, and for unordered symbols with the longer (or lexicographically smaller) row on top.
    pub fn canonical(&self) -> Self {
        let mut s = self.normalize();
        if !s.ordered {
            let swap = match s.top.len().cmp(&s.bottom.len()) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => s.top > s.bottom,
            };
            if swap {
                std::mem::swap(&mut s.top, &mut s.bottom);
            }
        }
        s
    }

    pub fn equivalent(&self, other: &Symbol) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn swapped(&self) -> Self {
        Symbol { top: self.bottom.clone(), bottom: self.top.clone(), ..self.clone() }
    }

    pub fn is_degenerate(&self) -> bool {
        self.defect() == 0 && self.top == self.bottom
    }

    /// True for `({0,..,2d};∅)` with d ≥ 1 or `({0,..,2d-1};∅)` with d ≥ 2, up to shift.
    pub fn is_cuspidal(&self) -> bool {
        let s = self.canonical();
        let m = s.top.len();
        s.bottom.is_empty() && s.top == BetaSet::staircase(m) && m >= 3
    }

    /// Shift so that the total number of entries is `total`.
    pub fn padded_to(&self, total: usize) -> Option<Self> {
        if total < self.len() || !(total - self.len()).is_multiple_of(2) {
            return None;
        }
        Some(self.shift((total - self.len()) / 2))
    }

    /// Shift so that the bottom row has exactly `p` entries.
    pub fn with_bottom_len(&self, p: usize) -> Option<Self> {
        (p >= self.bottom.len()).then(|| self.shift(p - self.bottom.len()))
    }

    /// All entries of both rows as a sorted multiset.
    pub fn entries(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.top.iter().chain(self.bottom.iter()).collect();
        v.sort_unstable();
        v
    }

    pub fn intersection(&self) -> Vec<u32> {
        self.top.iter().filter(|&x| self.bottom.contains(x)).collect()
    }

    pub fn similar(&self, other: &Symbol) -> bool {
        let decorated = |s: &Symbol| s.decoration != Decoration::None;
        if decorated(self) || decorated(other) {
            return self.equivalent(other) && self.decoration == other.decoration;
        }
        if !(self.len() + other.len()).is_multiple_of(2) {
            return false;
        }
        let total = self.len().max(other.len());
        let a = self.padded_to(total).expect("parity checked");
        let b = other.padded_to(total).expect("parity checked");
        a.entries() == b.entries() && a.intersection() == b.intersection()
    }

    /// Σ (2k-i) y_i over the sorted entries of the normalized symbol.
    pub fn sigma(&self) -> u64 {
        weighted_sum(&self.normalize().entries())
    }

    pub fn a_value(&self) -> u64 {
        let y = self.entries();
        let y0 = a_reference(y.len());
        let lhs = weighted_sum(&y);
        let rhs = weighted_sum(&y0);
        lhs - rhs
    }

    /// The bipartition labelling this symbol as a character of a type B/C Weyl group.
    pub fn bipartition(&self) -> (Vec<u32>, Vec<u32>) {
        (self.top.to_partition(), self.bottom.to_partition())
    }

    /// The defect-0 symbol of a bipartition.
    pub fn from_bipartition(lambda: &[u32], mu: &[u32]) -> Self {
        let rows = lambda.iter().filter(|&&x| x > 0).count().max(mu.iter().filter(|&&x| x > 0).count());
        Symbol::new(BetaSet::from_partition(lambda, rows), BetaSet::from_partition(mu, rows)).normalize()
    }
}

/// Σ (2k - i) x_i where the sequence is indexed so that its last index is 2k.
pub(crate) fn weighted_sum(x: &[u32]) -> u64 {
    let len = x.len();
    x.iter().enumerate().map(|(j, &v)| (len - 1 - j) as u64 * v as u64).sum()
}

/// The reference sequence 0,0,1,1,..., with a trailing k for odd lengths.
fn a_reference(len: usize) -> Vec<u32> {
    (0..len).map(|j| (j / 2) as u32).collect()
}

/// Symbols of a given rank and defect, normalized.
pub fn symbols_of_rank_defect(rank: u64, defect: i64) -> Vec<Symbol> {
    let q = floor_quarter_square(defect);
    if q > rank {
        return Vec::new();
    }
    let rest = (rank - q) as u32;
    let mut out = Vec::new();
    for k in 0..=rest {
        for lambda in partitions(k) {
            for mu in partitions(rest - k) {
                let s =
                    [0i64, mu.len() as i64, lambda.len() as i64 - defect, -defect].into_iter().max().unwrap() as usize;
                let top = BetaSet::from_partition(&lambda, (s as i64 + defect) as usize);
                let bottom = BetaSet::from_partition(&mu, s);
                out.push(Symbol::new(top, bottom).normalize());
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LabelFamily {
    PhiPlus,
    PhiMinus,
    OmegaPlus,
    OmegaMinus,
    /// Ordered defect-0 symbols.
    V0,
    /// Ordered defect-1 symbols.
    V1,
    /// Unordered defect-0 symbols with decorated degenerate ones.
    Vbar0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabelSetSpec {
    pub family: LabelFamily,
    pub rank: u64,
}

impl LabelSetSpec {
    pub fn new(family: LabelFamily, rank: u64) -> Self {
        LabelSetSpec { family, rank }
    }

    pub fn ordered(&self) -> bool {
        matches!(self.family, LabelFamily::PhiPlus | LabelFamily::PhiMinus | LabelFamily::V0 | LabelFamily::V1)
    }

    fn defect_allowed(&self, d: i64) -> bool {
        match self.family {
            LabelFamily::PhiPlus => d > 0 && d % 2 == 1,
            LabelFamily::PhiMinus => d % 4 == 0,
            LabelFamily::OmegaPlus => d >= 0 && d % 4 == 0,
            LabelFamily::OmegaMinus => d > 0 && d % 4 == 2,
            LabelFamily::V0 | LabelFamily::Vbar0 => d == 0,
            LabelFamily::V1 => d == 1,
        }
    }

    fn decorates(&self) -> bool {
        matches!(self.family, LabelFamily::OmegaPlus | LabelFamily::Vbar0)
    }

    /// Canonical form of `s` as an element of this set, if it belongs.
    pub fn admit(&self, s: &Symbol) -> Option<Symbol> {
        if s.rank() != self.rank {
            return None;
        }
        let c = s.clone().with_ordered(self.ordered()).canonical();
        if !self.defect_allowed(c.defect()) {
            return None;
        }
        let degenerate = c.is_degenerate();
        if self.family == LabelFamily::PhiMinus && degenerate {
            return None;
        }
        if self.decorates() && degenerate {
            if c.decoration == Decoration::None {
                return None;
            }
        } else if c.decoration != Decoration::None {
            return None;
        }
        Some(c)
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.admit(s).is_some()
    }

    /// Expand a possibly undecorated symbol into its members of this set.
    pub fn expand(&self, s: &Symbol) -> Vec<Symbol> {
        let c = s.clone().with_ordered(self.ordered()).canonical();
        if self.decorates() && c.is_degenerate() && c.decoration == Decoration::None {
            [Decoration::Plus, Decoration::Minus]
                .into_iter()
                .filter_map(|d| self.admit(&Symbol { decoration: d, ..c.clone() }))
                .collect()
        } else {
            self.admit(&c).into_iter().collect()
        }
    }

    pub fn members(&self) -> Vec<Symbol> {
        let max_d = (2.0 * (self.rank as f64).sqrt()) as i64 + 2;
        let mut out: Vec<Symbol> = (-max_d..=max_d)
            .filter(|&d| self.defect_allowed(d) || (!self.ordered() && self.defect_allowed(-d)))
            .flat_map(|d| symbols_of_rank_defect(self.rank, d))
            .flat_map(|s| self.expand(&s))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// All members similar to `s`.
    pub fn similarity_class(&self, s: &Symbol) -> Vec<Symbol> {
        if s.decoration != Decoration::None || (s.is_degenerate() && self.decorates()) {
            return self
                .expand(s)
                .into_iter()
                .filter(|x| s.decoration == Decoration::None || x.decoration == s.decoration)
                .collect();
        }
        let base = s.normalize();
        let entries = base.entries();
        let inter = base.intersection();
        let mut singles = entries.clone();
        for x in &inter {
            let pos = singles.iter().position(|y| y == x).unwrap();
            singles.remove(pos);
            let pos = singles.iter().position(|y| y == x).unwrap();
            singles.remove(pos);
        }
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << singles.len()) {
            let mut top = inter.clone();
            let mut bottom = inter.clone();
            for (i, &x) in singles.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    top.push(x);
                } else {
                    bottom.push(x);
                }
            }
            let cand = Symbol::new(BetaSet::new(top).unwrap(), BetaSet::new(bottom).unwrap());
            out.extend(self.expand(&cand));
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}]{}", self.top, self.bottom, self.decoration.suffix())
    }
}

pub(crate) struct RowParser<'a> {
    pub text: &'a str,
    pub pos: usize,
}

impl<'a> RowParser<'a> {
    pub fn new(text: &'a str) -> Self {
        RowParser { text, pos: 0 }
    }

    fn err(&self, msg: &str) -> SymbolError {
        SymbolError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    pub fn expect(&mut self, c: char) -> Result<(), SymbolError> {
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    pub fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn int(&mut self) -> Result<u32, SymbolError> {
        let rest = &self.text[self.pos..];
        let len = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        if len == 0 {
            return Err(self.err("expected integer"));
        }
        let v = rest[..len].parse().map_err(|_| self.err("integer out of range"))?;
        self.pos += len;
        Ok(v)
    }

    pub fn row(&mut self) -> Result<BetaSet, SymbolError> {
        let mut v = Vec::new();
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            v.push(self.int()?);
            while self.peek() == Some(',') {
                self.pos += 1;
                v.push(self.int()?);
            }
        }
        BetaSet::new(v)
    }

    /// `'[' row '|' row ']'`
    pub fn pair(&mut self) -> Result<(BetaSet, BetaSet), SymbolError> {
        self.expect('[')?;
        let top = self.row()?;
        self.expect('|')?;
        let bottom = self.row()?;
        self.expect(']')?;
        Ok((top, bottom))
    }

    pub fn finish(&self) -> Result<(), SymbolError> {
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(self.err("trailing input"))
        }
    }
}

impl FromStr for Symbol {
    type Err = SymbolError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut p = RowParser::new(text.trim());
        let (top, bottom) = p.pair()?;
        let decoration = match p.peek() {
            Some('+') => Decoration::Plus,
            Some('-') => Decoration::Minus,
            _ => Decoration::None,
        };
        if decoration != Decoration::None {
            p.pos += 1;
        }
        p.finish()?;
        let s = Symbol::new(top, bottom);
        if decoration == Decoration::None {
            Ok(s)
        } else {
            s.unordered().with_decoration(decoration)
        }
    }
}

/// Raise a defect-0 or defect-1 symbol to defect `d` by shifting the top row.
pub fn defect_bijection(s: &Symbol, d: i64) -> Result<Symbol, SymbolError> {
    if d < 0 {
        return Err(SymbolError::NegativeDefect(d));
    }
    let k = match s.defect() {
        0 => d,
        1 => d - 1,
        other => return Err(SymbolError::InvalidSourceDefect(other)),
    };
    if k < 0 {
        return Err(SymbolError::NegativeDefect(d));
    }
    Ok(Symbol { top: s.top.shift(k as usize), ..s.clone() })
}

/// Inverse of [`defect_bijection`] onto the given source defect (0 or 1).
pub fn defect_bijection_inverse(s: &Symbol, source: i64) -> Result<Symbol, SymbolError> {
    if source != 0 && source != 1 {
        return Err(SymbolError::InvalidSourceDefect(source));
    }
    let k = s.defect() - source;
    if k < 0 {
        return Err(SymbolError::DefectMismatch { expected: source, got: s.defect() });
    }
    let k = k as usize;
    let mut cur = s.clone();
    while cur.top.len() < k || cur.top.entries()[..k] != *BetaSet::staircase(k).entries() {
        cur = cur.shift(1);
    }
    let top = BetaSet::from_sorted(cur.top.entries()[k..].iter().map(|&x| x - k as u32).collect());
    Ok(Symbol { top, ..cur }.normalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Symbol {
        s.parse().unwrap()
    }

    #[test]
    fn defect_and_rank() {
        let s = sym("[0,1|0,1]");
        assert_eq!((s.defect(), s.rank()), (0, 0));
        let s = sym("[0,1,2|]");
        assert_eq!((s.defect(), s.rank()), (3, 2));
        let s = sym("[0,1,2,3,4|0,1]");
        assert_eq!((s.defect(), s.rank()), (3, 2));
    }

    #[test]
    fn bijection_examples() {
        let s = defect_bijection(&sym("[1|0]"), 3).unwrap();
        assert_eq!(s, sym("[0,1,2,4|0]"));
        assert_eq!(s.rank(), 3);
        assert_eq!(defect_bijection(&sym("[1|]"), 3).unwrap(), sym("[0,1,3|]"));
        assert_eq!(defect_bijection(&sym("[1|]"), 3).unwrap().rank(), 3);
        assert_eq!(defect_bijection(&sym("[2,3|1]"), 1).unwrap(), sym("[2,3|1]"));
        assert!(defect_bijection(&sym("[0,1,2|]"), 5).is_err());
    }

    #[test]
    fn degenerate_and_cuspidal() {
        assert!(sym("[0,2|0,2]").is_degenerate());
        let c = sym("[0,1,2,3|]");
        assert!(c.is_cuspidal());
        assert_eq!(c.rank(), 4);
        assert!(!sym("[0,2|1]").is_cuspidal());
        assert!(!sym("[0,2|1]").is_degenerate());
        assert!(sym("[0,1,2,3,4|0,1]").is_cuspidal());
    }

    #[test]
    fn similarity_examples() {
        assert!(sym("[0,2|1,3]").similar(&sym("[0,3|1,2]")));
        let spec = LabelSetSpec::new(LabelFamily::PhiPlus, 2);
        let class = spec.similarity_class(&sym("[0,1|2]"));
        assert_eq!(class.len(), 4);
        for s in ["[0,1|2]", "[0,2|1]", "[1,2|0]", "[0,1,2|]"] {
            assert!(class.contains(&sym(s).canonical()), "{s}");
        }
    }

    #[test]
    fn sigma_and_a() {
        let s = sym("[1,2|0,3]");
        assert_eq!(s.a_value(), 3);
        assert_eq!(s.sigma(), 4);
        assert_eq!(sym("[0,1|0,1]").a_value(), 0);
    }

    #[test]
    fn parse_roundtrip() {
        for t in ["[1,2|0,3]", "[|]", "[0,2|0,2]+", "[3|]"] {
            assert_eq!(sym(t).to_string(), t);
        }
        assert_eq!(sym("[2,1|3,0]").to_string(), "[1,2|0,3]");
        assert!("[1,1|0]".parse::<Symbol>().is_err());
        assert!("[1,2|0]+".parse::<Symbol>().is_err());
    }
}
