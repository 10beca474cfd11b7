//! Cross-checks of closed-form results against brute-force character computations.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use serde::Serialize;
use sheafsym_core::beta::{partitions, BetaSet};
use sheafsym_core::context::{levi_rank, CSign, GroupContext, GroupType};
use sheafsym_core::induction::{b_d, d_minimal, dominance_leq, lr_partitions, odot, Multiplicity, SubgroupShape};
use sheafsym_core::springer::DeltaBranch;
use sheafsym_core::{Decoration, Symbol};

use crate::chars::{mn_char, Oracle};
use crate::error::OracleError;

fn centralizer_order(mu: &[u32]) -> i64 {
    let mut counts: BTreeMap<u32, i64> = BTreeMap::new();
    for &p in mu {
        *counts.entry(p).or_insert(0) += 1;
    }
    counts.iter().map(|(&p, &m)| (p as i64).pow(m as u32) * (1..=m).product::<i64>()).product()
}

/// `⟨Res χ_ν, χ_λ ⊠ χ_μ⟩` over the Young subgroup, by Murnaghan-Nakayama.
pub fn lr_by_characters(lambda: &[u32], mu: &[u32], nu: &[u32]) -> Result<Rational64, OracleError> {
    let (k, l) = (lambda.iter().sum::<u32>(), mu.iter().sum::<u32>());
    let mut total = Rational64::from_integer(0);
    for alpha in partitions(k) {
        let ca = mn_char(lambda, &alpha)?;
        for beta in partitions(l) {
            let mut joined: Vec<u32> = alpha.iter().chain(&beta).copied().collect();
            joined.sort_unstable_by(|x, y| y.cmp(x));
            let v = mn_char(nu, &joined)? * ca * mn_char(mu, &beta)?;
            total += Rational64::new(v, centralizer_order(&alpha) * centralizer_order(&beta));
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LrReport {
    pub triples: usize,
    pub mismatches: Vec<String>,
    pub top_not_one: Vec<String>,
    pub outside_support: Vec<String>,
}

impl LrReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.top_not_one.is_empty() && self.outside_support.is_empty()
    }
}

/// Every triple with `|ν| ≤ max`: tableau count against characters, and the support statements for ⊙.
pub fn check_lr(max: u32) -> Result<LrReport, OracleError> {
    let mut report = LrReport::default();
    for n in 0..=max {
        for k in 0..=n {
            for lambda in partitions(k) {
                for mu in partitions(n - k) {
                    let rows = lambda.len().max(mu.len()).max(1);
                    let top = odot(&BetaSet::from_partition(&lambda, rows), &BetaSet::from_partition(&mu, rows));
                    for nu in partitions(n) {
                        report.triples += 1;
                        let name = format!("{lambda:?} {mu:?} {nu:?}");
                        let c = lr_partitions(&lambda, &mu, &nu);
                        if Rational64::from_integer(c as i64) != lr_by_characters(&lambda, &mu, &nu)? {
                            report.mismatches.push(name.clone());
                        }
                        let z = BetaSet::from_partition(&nu, nu.len());
                        if z.equivalent(&top) && c != 1 {
                            report.top_not_one.push(name.clone());
                        }
                        if !dominance_leq(&z, &top).expect("equal ranks") && c != 0 {
                            report.outside_support.push(name);
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// One untwisted d-minimality check: the closed form against the decomposition of the induced character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DMinimalCheck {
    pub group: GroupType,
    pub t: u32,
    pub c_sign: CSign,
    pub left: String,
    pub right: String,
    pub closed: Vec<String>,
    pub brute: Vec<String>,
    pub minimal_b: u64,
    pub agrees: bool,
    pub multiplicity_one: bool,
}

fn shape_for(group: GroupType, t: u32) -> SubgroupShape {
    match (group, t) {
        (GroupType::C, 0) => SubgroupShape::DxBInB,
        (GroupType::D, 0) => SubgroupShape::DxDInD,
        _ => SubgroupShape::BxBInB,
    }
}

fn bare(s: &Symbol) -> Symbol {
    Symbol { decoration: Decoration::None, ..s.clone() }.canonical()
}

/// All untwisted d-minimality checks with relative ranks summing to at most `max`.
pub fn check_d_minimal(oracle: &Oracle, max: u32, t_max: u32) -> Result<Vec<DMinimalCheck>, OracleError> {
    let mut out = Vec::new();
    for t in 0..=t_max {
        for branch in DeltaBranch::all(t) {
            let shape = shape_for(branch.group, t);
            for m in 0..=max {
                for a_rel in 0..=m {
                    let b_rel = m - a_rel;
                    let n = m + levi_rank(branch.group, t, branch.c_sign);
                    let a = n - b_rel;
                    let ctx = match GroupContext::new(branch.group, n, a, b_rel, t)
                        .and_then(|c| c.with_c_sign(branch.c_sign))
                        .and_then(|c| c.with_rel(a_rel, b_rel))
                    {
                        Ok(c) => c,
                        Err(_) => continue,
                    };
                    for (l, r) in oracle.subgroup_labels(shape, a_rel as usize, b_rel as usize) {
                        out.push(check_one(oracle, &ctx, branch, shape, &l, &r)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn check_one(
    oracle: &Oracle,
    ctx: &GroupContext,
    branch: DeltaBranch,
    shape: SubgroupShape,
    l: &Symbol,
    r: &Symbol,
) -> Result<DMinimalCheck, OracleError> {
    let closed = d_minimal(l, r, ctx)?;
    let truth = oracle.induced_decomposition(shape, ctx.a_rel as usize, ctx.b_rel as usize, l, r)?;
    let scored: Vec<(&Symbol, u64, i64)> =
        truth.iter().map(|(x, m)| Ok((x, b_d(x, branch)?, *m))).collect::<Result<_, OracleError>>()?;
    let minimal_b = scored.iter().map(|s| s.1).min().unwrap_or(0);
    let minimal: Vec<&(&Symbol, u64, i64)> = scored.iter().filter(|s| s.1 == minimal_b).collect();
    let multiplicity_one = minimal.iter().all(|s| s.2 == 1);
    let brute: BTreeSet<Symbol> = minimal.iter().map(|s| s.0.canonical()).collect();

    let mut expected = BTreeSet::new();
    let mut split_ok = true;
    for c in &closed.d_minimal {
        match c.multiplicity {
            Multiplicity::OneOfSplit => {
                let hits: Vec<&Symbol> = brute.iter().filter(|x| bare(x) == bare(&c.label)).collect();
                split_ok &= hits.len() == 1;
                expected.extend(hits.into_iter().cloned());
            }
            _ => {
                expected.insert(c.label.canonical());
            }
        }
    }
    let closed_b = closed.d_minimal.first().map(|c| c.b_value);
    let agrees = split_ok && expected == brute && closed_b == Some(minimal_b);
    Ok(DMinimalCheck {
        group: branch.group,
        t: branch.t,
        c_sign: branch.c_sign,
        left: l.to_string(),
        right: r.to_string(),
        closed: closed.d_minimal.iter().map(|c| c.label.to_string()).collect(),
        brute: brute.iter().map(|s| s.to_string()).collect(),
        minimal_b,
        agrees,
        multiplicity_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characters_give_lr_examples() {
        assert_eq!(lr_by_characters(&[2, 1], &[2, 1], &[3, 2, 1]).unwrap(), Rational64::from_integer(2));
        assert_eq!(lr_by_characters(&[1], &[1], &[1, 1]).unwrap(), Rational64::from_integer(1));
        assert_eq!(lr_by_characters(&[2], &[1], &[1, 1, 1]).unwrap(), Rational64::from_integer(0));
    }
}
