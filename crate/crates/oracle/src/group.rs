use std::collections::{HashMap, VecDeque};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::OracleError;
use crate::perm::SignedPerm;

pub const MAX_RANK: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    /// W_n, all signed permutations.
    B,
    /// W_n', the kernel of ε.
    D,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub size: usize,
    /// Signed cycle type of the representative, sorted.
    pub cycle_type: Vec<(u32, i8)>,
}

/// Full element list of W_n or W_n' with conjugacy classes.
#[derive(Debug, Clone)]
pub struct GroupData {
    pub n: usize,
    pub kind: GroupKind,
    pub elements: Vec<SignedPerm>,
    pub class_of: Vec<usize>,
    pub classes: Vec<ConjugacyClass>,
    index: HashMap<SignedPerm, usize>,
}

/// Coxeter generators: s_1..s_{n-1} and either s_n or u = s_n s_{n-1} s_n.
pub fn generators(n: usize, kind: GroupKind) -> Vec<SignedPerm> {
    let mut gens: Vec<SignedPerm> = (0..n.saturating_sub(1)).map(|i| SignedPerm::transposition(n, i)).collect();
    if n >= 1 {
        let sn = SignedPerm::flip(n, n - 1);
        match kind {
            GroupKind::B => gens.push(sn),
            GroupKind::D if n >= 2 => {
                let s = SignedPerm::transposition(n, n - 2);
                gens.push(sn.compose(&s).compose(&sn));
            }
            GroupKind::D => {}
        }
    }
    gens
}

impl GroupData {
    pub fn build(n: usize, kind: GroupKind) -> Result<Self, OracleError> {
        if n > MAX_RANK {
            return Err(OracleError::OutOfRange(n));
        }
        let elements: Vec<SignedPerm> =
            SignedPerm::all(n).into_iter().filter(|g| kind == GroupKind::B || g.epsilon() == 1).collect();
        let index: HashMap<SignedPerm, usize> = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let gens = generators(n, kind);
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut classes = Vec::new();
        for start in 0..elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            class_of[start] = c;
            let mut size = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for s in &gens {
                    let j = index[&elements[i].conjugate_by(s)];
                    if class_of[j] == usize::MAX {
                        class_of[j] = c;
                        size += 1;
                        queue.push_back(j);
                    }
                }
            }
            let mut cycle_type = elements[start].signed_cycles();
            cycle_type.sort_unstable();
            classes.push(ConjugacyClass { representative: start, size, cycle_type });
        }
        Ok(GroupData { n, kind, elements, class_of, classes, index })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, g: &SignedPerm) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn class_of_element(&self, g: &SignedPerm) -> Option<usize> {
        self.index_of(g).map(|i| self.class_of[i])
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Class function from a value on class representatives.
    pub fn class_function(&self, f: impl Fn(&SignedPerm) -> Rational64) -> ClassFunction {
        ClassFunction { values: self.classes.iter().map(|c| f(&self.elements[c.representative])).collect() }
    }

    pub fn inner(&self, f: &ClassFunction, g: &ClassFunction) -> Rational64 {
        let total: Rational64 = self
            .classes
            .iter()
            .zip(f.values.iter().zip(&g.values))
            .map(|(c, (x, y))| Rational64::from_integer(c.size as i64) * x * y)
            .sum();
        total / Rational64::from_integer(self.order() as i64)
    }

    /// Induce a function given on the elements of a subgroup (listed by index).
    pub fn induce(&self, subgroup: &[(usize, Rational64)]) -> ClassFunction {
        let mut sums = vec![Rational64::from_integer(0); self.class_count()];
        for (i, v) in subgroup {
            sums[self.class_of[*i]] += v;
        }
        let h = subgroup.len() as i64;
        let g = self.order() as i64;
        let values =
            sums.into_iter().zip(&self.classes).map(|(s, c)| s * Rational64::new(g, h * c.size as i64)).collect();
        ClassFunction { values }
    }
}

/// Values on the conjugacy classes of a fixed group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassFunction {
    pub values: Vec<Rational64>,
}

impl ClassFunction {
    pub fn degree(&self, g: &GroupData) -> Rational64 {
        let id = g.class_of_element(&SignedPerm::identity(g.n)).expect("identity present");
        self.values[id]
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, k: Rational64) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(|a| a * k).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_classes() {
        let g = GroupData::build(2, GroupKind::B).unwrap();
        assert_eq!((g.order(), g.class_count()), (8, 5));
        assert_eq!(GroupData::build(1, GroupKind::B).unwrap().order(), 2);
        assert_eq!(GroupData::build(3, GroupKind::D).unwrap().order(), 24);
        assert!(GroupData::build(6, GroupKind::B).is_err());
        for n in 0..=4 {
            for kind in [GroupKind::B, GroupKind::D] {
                let g = GroupData::build(n, kind).unwrap();
                let total: usize = g.classes.iter().map(|c| c.size).sum();
                assert_eq!(total, g.order());
                let fact: usize = (1..=n).product();
                let expect = if kind == GroupKind::B || n == 0 { (1 << n) * fact } else { (1 << (n - 1)) * fact };
                assert_eq!(g.order(), expect);
            }
        }
    }

    #[test]
    fn d4_has_split_classes() {
        // 11 signed cycle types with an even number of negative cycles, two of them split.
        let g = GroupData::build(4, GroupKind::D).unwrap();
        assert_eq!(g.class_count(), 13);
    }
}
