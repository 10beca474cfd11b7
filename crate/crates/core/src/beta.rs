use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SymbolError;

/// A finite strictly increasing set of non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BetaSet(Vec<u32>);

impl BetaSet {
    pub fn new(mut entries: Vec<u32>) -> Result<Self, SymbolError> {
        entries.sort_unstable();
        if let Some(w) = entries.windows(2).find(|w| w[0] == w[1]) {
            return Err(SymbolError::DuplicateEntry(w[0]));
        }
        Ok(BetaSet(entries))
    }

    /// Caller guarantees the input is strictly increasing.
    pub(crate) fn from_sorted(entries: Vec<u32>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] < w[1]));
        BetaSet(entries)
    }

    pub fn empty() -> Self {
        BetaSet(Vec::new())
    }

    /// The set {0, 1, ..., k-1}.
    pub fn staircase(k: usize) -> Self {
        BetaSet((0..k as u32).collect())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn rank(&self) -> u64 {
        let n = self.0.len() as u64;
        self.sum() - n * n.saturating_sub(1) / 2
    }

    pub fn shift(&self, k: usize) -> Self {
        let mut v: Vec<u32> = (0..k as u32).collect();
        v.extend(self.0.iter().map(|&x| x + k as u32));
        BetaSet(v)
    }

    /// Undo one shift; `None` when 0 is not an entry.
    pub fn unshift(&self) -> Option<Self> {
        if self.0.first() != Some(&0) {
            return None;
        }
        Some(BetaSet(self.0[1..].iter().map(|&x| x - 1).collect()))
    }

    pub fn normalize(&self) -> Self {
        let mut cur = self.clone();
        while let Some(next) = cur.unshift() {
            cur = next;
        }
        cur
    }

    pub fn equivalent(&self, other: &BetaSet) -> bool {
        self.normalize() == other.normalize()
    }

    /// Shift up to exactly `len` entries; `None` if already longer.
    pub fn padded(&self, len: usize) -> Option<Self> {
        (len >= self.len()).then(|| self.shift(len - self.len()))
    }

    /// Parts of the associated partition, weakly decreasing with zeros dropped.
    pub fn to_partition(&self) -> Vec<u32> {
        let mut parts: Vec<u32> = self.0.iter().enumerate().map(|(i, &b)| b - i as u32).filter(|&p| p > 0).collect();
        parts.reverse();
        parts
    }

    /// The beta-set of `parts` with exactly `rows` entries (at least the number of parts).
    pub fn from_partition(parts: &[u32], rows: usize) -> Self {
        let mut p: Vec<u32> = parts.iter().copied().filter(|&x| x > 0).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        let rows = rows.max(p.len());
        let entries = (0..rows)
            .map(|i| {
                let part = p.get(rows - 1 - i).copied().unwrap_or(0);
                part + i as u32
            })
            .collect();
        BetaSet(entries)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for BetaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// All partitions of `n`, each weakly decreasing, in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[u32]) -> BetaSet {
        BetaSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BetaSet::empty().rank(), 0);
        assert_eq!(BetaSet::staircase(5).rank(), 0);
        assert_eq!(b(&[1, 3]).rank(), 3);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(b(&[0, 1, 4]).normalize(), b(&[2]));
        assert_eq!(b(&[2, 5]).normalize(), b(&[2, 5]));
        assert!(b(&[0, 3]).equivalent(&b(&[2])));
    }

    #[test]
    fn partition_conversion() {
        assert_eq!(BetaSet::from_partition(&[2, 1], 2), b(&[1, 3]));
        assert_eq!(b(&[2]).to_partition(), vec![2]);
        assert_eq!(BetaSet::empty().to_partition(), Vec::<u32>::new());
        assert_eq!(BetaSet::from_partition(&[], 0), BetaSet::empty());
    }

    #[test]
    fn duplicate_rejected() {
        assert_eq!(BetaSet::new(vec![1, 1]), Err(SymbolError::DuplicateEntry(1)));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }
}
