use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

/// A signed permutation of `{1..n}`: `img[i] = ±(j+1)` means `e_i ↦ ±e_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPerm {
    img: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { img: (1..=n as i8).collect() }
    }

    pub fn from_images(img: Vec<i8>) -> Option<Self> {
        let n = img.len() as i8;
        let ok = img.iter().all(|&x| x != 0 && x.abs() <= n) && img.iter().map(|x| x.abs()).all_unique();
        ok.then_some(SignedPerm { img })
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    pub fn images(&self) -> &[i8] {
        &self.img
    }

    /// Transposition of coordinates `i` and `i+1` (0-based).
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut s = Self::identity(n);
        s.img.swap(i, i + 1);
        s
    }

    /// Sign change of coordinate `i` (0-based).
    pub fn flip(n: usize, i: usize) -> Self {
        let mut s = Self::identity(n);
        s.img[i] = -s.img[i];
        s
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let img = other
            .img
            .iter()
            .map(|&h| {
                let g = self.img[(h.unsigned_abs() - 1) as usize];
                if h < 0 {
                    -g
                } else {
                    g
                }
            })
            .collect();
        SignedPerm { img }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut img = vec![0i8; self.n()];
        for (i, &x) in self.img.iter().enumerate() {
            let j = (x.unsigned_abs() - 1) as usize;
            img[j] = if x < 0 { -(i as i8 + 1) } else { i as i8 + 1 };
        }
        SignedPerm { img }
    }

    pub fn conjugate_by(&self, x: &SignedPerm) -> SignedPerm {
        x.compose(self).compose(&x.inverse())
    }

    pub fn negative_count(&self) -> usize {
        self.img.iter().filter(|&&x| x < 0).count()
    }

    /// The sign character ε: -1 to the number of sign changes.
    pub fn epsilon(&self) -> i64 {
        if self.negative_count().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Cycles of the underlying permutation as (length, product of signs).
    pub fn signed_cycles(&self) -> Vec<(u32, i8)> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let (mut len, mut sign, mut i) = (0u32, 1i8, start);
            while !seen[i] {
                seen[i] = true;
                len += 1;
                let x = self.img[i];
                if x < 0 {
                    sign = -sign;
                }
                i = (x.unsigned_abs() - 1) as usize;
            }
            out.push((len, sign));
        }
        out
    }

    /// Split into the actions on coordinates `0..a` and `a..n`, if both blocks are preserved.
    pub fn split(&self, a: usize) -> Option<(SignedPerm, SignedPerm)> {
        let mut left = Vec::with_capacity(a);
        let mut right = Vec::with_capacity(self.n() - a);
        for (i, &x) in self.img.iter().enumerate() {
            let j = (x.unsigned_abs() - 1) as usize;
            if (i < a) != (j < a) {
                return None;
            }
            if i < a {
                left.push(x);
            } else {
                let shifted = (j - a + 1) as i8;
                right.push(if x < 0 { -shifted } else { shifted });
            }
        }
        Some((SignedPerm { img: left }, SignedPerm { img: right }))
    }

    /// Every signed permutation of `{1..n}`.
    pub fn all(n: usize) -> Vec<SignedPerm> {
        let mut out = Vec::with_capacity((1usize << n) * (1..=n).product::<usize>());
        for p in (1..=n as i8).permutations(n) {
            for mask in 0u32..(1 << n) {
                let img = p.iter().enumerate().map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x }).collect();
                out.push(SignedPerm { img });
            }
        }
        out
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.img.iter().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let all = SignedPerm::all(3);
        assert_eq!(all.len(), 48);
        let id = SignedPerm::identity(3);
        for g in all.iter().take(12) {
            assert_eq!(g.compose(&g.inverse()), id);
            for h in all.iter().step_by(7) {
                assert_eq!(g.compose(h).epsilon(), g.epsilon() * h.epsilon());
            }
        }
    }

    #[test]
    fn t_elements_commute() {
        // t_i flips coordinate i+1 in 1-based terms
        let n = 4;
        let t: Vec<SignedPerm> = (0..n).map(|i| SignedPerm::flip(n, i)).collect();
        for a in &t {
            for b in &t {
                assert_eq!(a.compose(b), b.compose(a));
            }
        }
        // t_{n-1} = s_n
        let s: Vec<SignedPerm> = (0..n - 1).map(|i| SignedPerm::transposition(n, i)).collect();
        let mut t0 = SignedPerm::flip(n, n - 1);
        for si in s.iter().rev() {
            t0 = si.compose(&t0).compose(si);
        }
        assert_eq!(t0, SignedPerm::flip(n, 0));
    }

    #[test]
    fn split_blocks() {
        let g = SignedPerm::from_images(vec![-2, 1, 4, -3]).unwrap();
        let (x, y) = g.split(2).unwrap();
        assert_eq!(x.images(), &[-2, 1]);
        assert_eq!(y.images(), &[2, -1]);
        assert!(SignedPerm::from_images(vec![3, 2, 1]).unwrap().split(1).is_none());
    }
}
