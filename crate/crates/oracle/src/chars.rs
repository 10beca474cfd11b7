use std::collections::HashMap;
use std::sync::Arc;

use num_rational::Rational64;
use parking_lot::Mutex;
use sheafsym_core::beta::{partitions, BetaSet};
use sheafsym_core::{Decoration, Symbol};

use crate::error::OracleError;
use crate::group::{ClassFunction, GroupData, GroupKind};
use crate::perm::SignedPerm;

/// Symmetric group character χ_λ at cycle type μ, by border-strip removal.
pub fn mn_char(lambda: &[u32], mu: &[u32]) -> Result<i64, OracleError> {
    let (l, m) = (lambda.iter().sum::<u32>(), mu.iter().sum::<u32>());
    if l != m {
        return Err(OracleError::SizeMismatch { left: l, right: m });
    }
    let beta: Vec<u32> = BetaSet::from_partition(lambda, lambda.len()).entries().to_vec();
    Ok(mn_beta(&beta, mu))
}

fn mn_beta(beta: &[u32], mu: &[u32]) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (idx, &x) in beta.iter().enumerate() {
        if x < r || beta.contains(&(x - r)) {
            continue;
        }
        let y = x - r;
        let between = beta.iter().filter(|&&z| y < z && z < x).count();
        let mut next: Vec<u32> = beta.to_vec();
        next[idx] = y;
        next.sort_unstable();
        let v = mn_beta(&next, rest);
        total += if between % 2 == 0 { v } else { -v };
    }
    total
}

fn cycle_lengths(cycles: &[(u32, i8)]) -> Vec<u32> {
    let mut v: Vec<u32> = cycles.iter().map(|c| c.0).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Value of the W_n character of the bipartition (λ;μ) on an element with the given signed cycles.
///
/// Sums over the ways to split the cycles between the two factors; the μ factor is twisted by ε.
pub fn wn_value(lambda: &[u32], mu: &[u32], cycles: &[(u32, i8)]) -> i64 {
    let k: u32 = lambda.iter().sum();
    let c = cycles.len();
    let mut total = 0;
    for mask in 0u32..(1 << c) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (i, cyc) in cycles.iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.push(*cyc);
            } else {
                right.push(*cyc);
            }
        }
        if left.iter().map(|x| x.0).sum::<u32>() != k {
            continue;
        }
        let sign: i64 = right.iter().map(|x| x.1 as i64).product();
        let a = mn_char(lambda, &cycle_lengths(&left)).expect("sizes match");
        let b = mn_char(mu, &cycle_lengths(&right)).expect("sizes match");
        total += sign * a * b;
    }
    total
}

fn unordered_key(s: &Symbol) -> Symbol {
    Symbol { ordered: false, decoration: Decoration::None, ..s.clone() }.canonical()
}

/// Irreducible character labels: ordered defect-0 symbols for W_n, unordered (and ± for degenerate) for W_n'.
pub fn labels(n: usize, kind: GroupKind) -> Vec<Symbol> {
    let mut out = Vec::new();
    for k in 0..=n as u32 {
        for lambda in partitions(k) {
            for mu in partitions(n as u32 - k) {
                let s = Symbol::from_bipartition(&lambda, &mu);
                match kind {
                    GroupKind::B => out.push(s),
                    GroupKind::D => {
                        let key = unordered_key(&s);
                        if key.is_degenerate() && n > 0 {
                            for dec in [Decoration::Plus, Decoration::Minus] {
                                out.push(key.clone().with_decoration(dec).expect("degenerate"));
                            }
                        } else {
                            out.push(key);
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

type CharKey = (usize, GroupKind, Symbol);

/// Cached groups and characters.
#[derive(Default)]
pub struct Oracle {
    groups: Mutex<HashMap<(usize, GroupKind), Arc<GroupData>>>,
    chars: Mutex<HashMap<CharKey, Arc<ClassFunction>>>,
}

fn int(v: i64) -> Rational64 {
    Rational64::from_integer(v)
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn group(&self, n: usize, kind: GroupKind) -> Result<Arc<GroupData>, OracleError> {
        if let Some(g) = self.groups.lock().get(&(n, kind)) {
            return Ok(g.clone());
        }
        let g = Arc::new(GroupData::build(n, kind)?);
        Ok(self.groups.lock().entry((n, kind)).or_insert(g).clone())
    }

    /// The bipartition character evaluated on the classes of `g`.
    pub fn wn_char(&self, lambda: &[u32], mu: &[u32], g: &GroupData) -> Result<ClassFunction, OracleError> {
        let total = lambda.iter().sum::<u32>() + mu.iter().sum::<u32>();
        if total as usize != g.n {
            return Err(OracleError::SizeMismatch { left: total, right: g.n as u32 });
        }
        Ok(g.class_function(|x| int(wn_value(lambda, mu, &x.signed_cycles()))))
    }

    /// Character of an irreducible label of W_n or W_n'.
    pub fn label_char(&self, n: usize, kind: GroupKind, label: &Symbol) -> Result<Arc<ClassFunction>, OracleError> {
        let key = match kind {
            GroupKind::B => Symbol { ordered: true, decoration: Decoration::None, ..label.clone() }.normalize(),
            GroupKind::D => {
                let k = unordered_key(label);
                if k.is_degenerate() && n > 0 && label.decoration != Decoration::None {
                    k.with_decoration(label.decoration).expect("degenerate")
                } else {
                    k
                }
            }
        };
        if let Some(c) = self.chars.lock().get(&(n, kind, key.clone())) {
            return Ok(c.clone());
        }
        if key.defect() != 0 || key.rank() != n as u64 {
            return Err(OracleError::Label(label.to_string()));
        }
        let g = self.group(n, kind)?;
        let (lambda, mu) = key.bipartition();
        let full = self.wn_char(&lambda, &mu, &g)?;
        let cf = match key.decoration {
            Decoration::None => full,
            Decoration::Plus => self.split_plus(n / 2, &lambda)?,
            Decoration::Minus => full.sub(&self.split_plus(n / 2, &lambda)?),
        };
        let cf = Arc::new(cf);
        Ok(self.chars.lock().entry((n, kind, key)).or_insert(cf).clone())
    }

    /// Value of a label's character at an element of W_n or W_n'.
    pub fn value(&self, kind: GroupKind, label: &Symbol, x: &SignedPerm) -> Result<Rational64, OracleError> {
        let g = self.group(x.n(), kind)?;
        let c = g.class_of_element(x).ok_or_else(|| OracleError::Label(format!("{x} not in group")))?;
        Ok(self.label_char(x.n(), kind, label)?.values[c])
    }

    /// The "+" constituent of the restriction of (λ;λ) to W_{2k}'.
    ///
    /// Induced from the stabiliser of the block decomposition {1..k} ⊔ {k+1..2k},
    /// extending λ ⊠ λ by the block swap with sign +1.
    pub fn split_plus(&self, k: usize, lambda: &[u32]) -> Result<ClassFunction, OracleError> {
        let n = 2 * k;
        let g = self.group(n, GroupKind::D)?;
        let tau = SignedPerm::from_images((0..n).map(|i| ((i + k) % n + 1) as i8).collect()).expect("valid");
        let chi = |x: &SignedPerm| mn_char(lambda, &cycle_lengths(&x.signed_cycles())).expect("sizes match");
        let mut sub = Vec::new();
        for (i, el) in g.elements.iter().enumerate() {
            if let Some((x, y)) = el.split(k) {
                sub.push((i, int(chi(&x) * chi(&y) * y.epsilon())));
            } else if let Some((x, y)) = el.compose(&tau).split(k) {
                sub.push((i, int(y.epsilon() * chi(&x.compose(&y)))));
            }
        }
        Ok(g.induce(&sub))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mn_examples() {
        assert_eq!(mn_char(&[3], &[2, 1]).unwrap(), 1);
        assert_eq!(mn_char(&[1, 1], &[2]).unwrap(), -1);
        assert_eq!(mn_char(&[2, 1], &[1, 1, 1]).unwrap(), 2);
        assert_eq!(mn_char(&[2, 1], &[3]).unwrap(), -1);
        assert_eq!(mn_char(&[2, 2], &[2, 2]).unwrap(), 2);
        assert!(mn_char(&[2], &[1]).is_err());
    }

    #[test]
    fn label_counts() {
        assert_eq!(labels(2, GroupKind::B).len(), 5);
        // W_2' ≅ C2×C2 and W_4' has 13 irreducibles
        assert_eq!(labels(2, GroupKind::D).len(), 4);
        assert_eq!(labels(4, GroupKind::D).len(), 13);
    }
}
