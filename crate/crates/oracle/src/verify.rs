use std::collections::BTreeMap;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;
use sheafsym_core::induction::{induce, HReading, SubgroupShape, VirtualCharacter};
use sheafsym_core::{Decoration, Symbol};

use crate::chars::{labels, Oracle};
use crate::error::OracleError;
use crate::group::GroupKind;
use crate::perm::SignedPerm;

fn ambient(shape: SubgroupShape) -> GroupKind {
    if shape.target_is_d() {
        GroupKind::D
    } else {
        GroupKind::B
    }
}

fn ordered(s: &Symbol) -> Symbol {
    Symbol { ordered: true, decoration: Decoration::None, ..s.clone() }.normalize()
}

impl Oracle {
    /// Value of the subgroup character `left ⊠ right` at `g`, or `None` off the subgroup.
    fn subgroup_value(
        &self,
        shape: SubgroupShape,
        a: usize,
        left: &Symbol,
        right: &Symbol,
        g: &SignedPerm,
    ) -> Result<Option<Rational64>, OracleError> {
        use GroupKind::{B, D};
        if shape == SubgroupShape::DInB {
            if g.epsilon() != 1 {
                return Ok(None);
            }
            return self.value(D, left, g).map(Some);
        }
        let Some((x, y)) = g.split(a) else {
            return Ok(None);
        };
        let (ex, ey) = (x.epsilon(), y.epsilon());
        let (kx, ky, inside) = match shape {
            SubgroupShape::BxBInB => (B, B, true),
            SubgroupShape::DxDInD => (D, D, ex == 1 && ey == 1),
            SubgroupShape::HTwisted => (B, B, ex == ey),
            SubgroupShape::DxBInB => (D, B, ex == 1),
            SubgroupShape::BxDInB => (B, D, ey == 1),
            SubgroupShape::DInB => unreachable!(),
        };
        if !inside {
            return Ok(None);
        }
        Ok(Some(self.value(kx, left, &x)? * self.value(ky, right, &y)?))
    }

    /// Decomposition of the induced character into irreducibles of the ambient group.
    pub fn induced_decomposition(
        &self,
        shape: SubgroupShape,
        a: usize,
        b: usize,
        left: &Symbol,
        right: &Symbol,
    ) -> Result<BTreeMap<Symbol, i64>, OracleError> {
        let n = a + b;
        let kind = ambient(shape);
        let g = self.group(n, kind)?;
        let mut sub = Vec::new();
        for (i, el) in g.elements.iter().enumerate() {
            if let Some(v) = self.subgroup_value(shape, a, left, right, el)? {
                sub.push((i, v));
            }
        }
        let ind = g.induce(&sub);
        let mut out = BTreeMap::new();
        for label in labels(n, kind) {
            let chi = self.label_char(n, kind, &label)?;
            let m = g.inner(&ind, &chi);
            if !m.is_integer() {
                return Err(OracleError::NonIntegral { label: label.to_string(), value: m.to_string() });
            }
            if m.to_integer() != 0 {
                out.insert(label, m.to_integer());
            }
        }
        Ok(out)
    }

    /// Irreducible labels of the subgroup for a shape, as (left, right) pairs.
    pub fn subgroup_labels(&self, shape: SubgroupShape, a: usize, b: usize) -> Vec<(Symbol, Symbol)> {
        use GroupKind::{B, D};
        let pairs = |l: Vec<Symbol>, r: Vec<Symbol>| -> Vec<(Symbol, Symbol)> {
            l.iter().flat_map(|x| r.iter().map(move |y| (x.clone(), y.clone()))).collect()
        };
        match shape {
            SubgroupShape::BxBInB => pairs(labels(a, B), labels(b, B)),
            SubgroupShape::DxDInD => pairs(labels(a, D), labels(b, D)),
            SubgroupShape::DxBInB => pairs(labels(a, D), labels(b, B)),
            SubgroupShape::BxDInB => pairs(labels(a, B), labels(b, D)),
            SubgroupShape::DInB => {
                labels(a + b, D).into_iter().map(|x| (x, Symbol::from_bipartition(&[], &[]))).collect()
            }
            SubgroupShape::HTwisted => {
                let usable = |s: &Symbol, k: usize| k == 0 || !s.is_degenerate();
                let mut out = Vec::new();
                for x in labels(a, B) {
                    for y in labels(b, B) {
                        if !usable(&x, a) || !usable(&y, b) {
                            continue;
                        }
                        let flipped = (x.swapped().normalize(), y.swapped().normalize());
                        if (x.clone(), y.clone()) <= flipped {
                            out.push((x.clone(), y));
                        }
                    }
                }
                out
            }
        }
    }
}

/// One disagreement between the oracle and the symbol-level formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub shape: SubgroupShape,
    pub a: usize,
    pub b: usize,
    pub label: String,
    pub expected: BTreeMap<String, i64>,
    pub got: BTreeMap<String, i64>,
}

/// An unresolved ± pair from the formula together with the oracle's actual split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolvedSplit {
    pub label: String,
    pub constituent: String,
    pub plus: i64,
    pub minus: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub shape: SubgroupShape,
    pub a: usize,
    pub b: usize,
    pub labels_checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub resolved_splits: Vec<ResolvedSplit>,
    /// Mismatch counts per H reading, for the twisted shape only.
    pub h_readings: Option<BTreeMap<String, usize>>,
    pub decoration_convention: &'static str,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub const DECORATION_CONVENTION: &str =
    "(λ;λ)+ is induced from the block stabiliser of {1..k}⊔{k+1..2k} in W_2k', extending λ⊠λ by the unsigned block swap";

/// Put the oracle decomposition into the same keys as [`VirtualCharacter::to_map`].
fn comparable(oracle: &BTreeMap<Symbol, i64>, formula: &VirtualCharacter) -> BTreeMap<String, i64> {
    let pending: Vec<Symbol> = formula.unresolved().map(|(s, _)| s.clone()).collect();
    let mut out = BTreeMap::new();
    for (label, m) in oracle {
        let bare = Symbol { decoration: Decoration::None, ..label.clone() }.canonical();
        let key = if label.decoration != Decoration::None && pending.contains(&bare) {
            format!("{bare}±?")
        } else {
            label.canonical().to_string()
        };
        *out.entry(key).or_insert(0) += m;
    }
    out.retain(|_, v| *v != 0);
    out
}

fn splits(oracle: &BTreeMap<Symbol, i64>, formula: &VirtualCharacter, label: &str) -> Vec<ResolvedSplit> {
    formula
        .unresolved()
        .map(|(s, _)| {
            let get = |d: Decoration| {
                let key = s.clone().with_decoration(d).expect("degenerate").canonical();
                oracle.get(&key).copied().unwrap_or(0)
            };
            ResolvedSplit {
                label: label.to_string(),
                constituent: s.to_string(),
                plus: get(Decoration::Plus),
                minus: get(Decoration::Minus),
            }
        })
        .collect()
}

fn pair_name(shape: SubgroupShape, l: &Symbol, r: &Symbol) -> String {
    if shape == SubgroupShape::DInB {
        l.to_string()
    } else {
        format!("{l} ⊠ {r}")
    }
}

/// Compare the oracle with the symbol-level formula on every irreducible of one subgroup.
pub fn verify_against_symbols(
    oracle: &Oracle,
    shape: SubgroupShape,
    a: usize,
    b: usize,
) -> Result<VerifyReport, OracleError> {
    let pairs = oracle.subgroup_labels(shape, a, b);
    let readings: Vec<HReading> = if shape == SubgroupShape::HTwisted {
        vec![HReading::Alternate, HReading::Printed]
    } else {
        vec![HReading::default()]
    };
    type Row = (Vec<Option<Mismatch>>, Vec<ResolvedSplit>);
    let rows: Vec<Row> = pairs
        .par_iter()
        .map(|(l, r)| -> Result<Row, OracleError> {
            let truth = oracle.induced_decomposition(shape, a, b, l, r)?;
            let name = pair_name(shape, l, r);
            let mut per_reading = Vec::new();
            let mut resolved = Vec::new();
            for (i, &reading) in readings.iter().enumerate() {
                let (fl, fr) = match shape {
                    SubgroupShape::HTwisted => (ordered(l), ordered(r)),
                    _ => (l.clone(), r.clone()),
                };
                let formula = induce(shape, &fl, &fr, reading)?;
                let expected = formula.to_map();
                let got = comparable(&truth, &formula);
                if i == 0 {
                    resolved = splits(&truth, &formula, &name);
                }
                per_reading.push((expected != got).then(|| Mismatch {
                    shape,
                    a,
                    b,
                    label: name.clone(),
                    expected,
                    got,
                }));
            }
            Ok((per_reading, resolved))
        })
        .collect::<Result<_, _>>()?;
    let mut mismatches = Vec::new();
    let mut resolved_splits = Vec::new();
    let mut counts = vec![0usize; readings.len()];
    for (per_reading, res) in rows {
        for (i, m) in per_reading.into_iter().enumerate() {
            if let Some(m) = m {
                counts[i] += 1;
                if i == 0 {
                    mismatches.push(m);
                }
            }
        }
        resolved_splits.extend(res);
    }
    let h_readings = (shape == SubgroupShape::HTwisted)
        .then(|| readings.iter().zip(&counts).map(|(r, c)| (format!("{r:?}").to_lowercase(), *c)).collect());
    Ok(VerifyReport {
        shape,
        a,
        b,
        labels_checked: pairs.len(),
        mismatches,
        resolved_splits,
        h_readings,
        decoration_convention: DECORATION_CONVENTION,
    })
}
