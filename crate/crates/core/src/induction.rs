use std::collections::{BTreeMap, HashMap};
use std::fmt;

use once_cell::sync::Lazy;
use parking_lot::RwLock;
use serde::{Deserialize, Serialize, Serializer};

use crate::beta::{partitions, BetaSet};
use crate::context::{GroupContext, GroupType, Twist};
use crate::error::{InductionError, SymbolError};
use crate::springer::{delta_map, DeltaBranch};
use crate::symbol::{Decoration, Symbol};

fn pad_pair(a: &BetaSet, b: &BetaSet) -> (BetaSet, BetaSet) {
    let s = a.len().max(b.len());
    (a.padded(s).expect("target is the max"), b.padded(s).expect("target is the max"))
}

/// `a ⊴ b` in the dominance order. Both sets must have the same rank.
pub fn dominance_leq(a: &BetaSet, b: &BetaSet) -> Result<bool, SymbolError> {
    if a.rank() != b.rank() {
        return Err(SymbolError::RankMismatch { expected: a.rank(), got: b.rank() });
    }
    let (a, b) = pad_pair(a, b);
    let (mut sa, mut sb) = (0u64, 0u64);
    for (x, y) in a.entries().iter().rev().zip(b.entries().iter().rev()) {
        sa += *x as u64;
        sb += *y as u64;
        if sa > sb {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Entrywise sum `{a_1+b_1 < a_2+b_2-1 < ...}` of two representatives of equal size.
pub fn odot_exact(a: &BetaSet, b: &BetaSet) -> Result<BetaSet, SymbolError> {
    if a.len() != b.len() {
        return Err(SymbolError::SizeMismatch(a.len(), b.len()));
    }
    let v = a.entries().iter().zip(b.entries()).enumerate().map(|(i, (x, y))| x + y - i as u32).collect();
    Ok(BetaSet::from_sorted(v))
}

/// `a ⊙ b` after shifting both to a common size.
pub fn odot(a: &BetaSet, b: &BetaSet) -> BetaSet {
    let (a, b) = pad_pair(a, b);
    odot_exact(&a, &b).expect("padded to equal size")
}

/// Componentwise ⊙ on defect-0 symbols.
pub fn odot_symbol(s: &Symbol, t: &Symbol) -> Result<Symbol, SymbolError> {
    for x in [s, t] {
        if x.defect() != 0 {
            return Err(SymbolError::DefectMismatch { expected: 0, got: x.defect() });
        }
    }
    let size = s.top.len().max(t.top.len());
    let (s, t) = (s.padded_to(2 * size).expect("grows"), t.padded_to(2 * size).expect("grows"));
    let out = Symbol::new(odot_exact(&s.top, &t.top)?, odot_exact(&s.bottom, &t.bottom)?);
    Ok(out.with_ordered(s.ordered || t.ordered).normalize())
}

fn partition_size(p: &[u32]) -> u32 {
    p.iter().sum()
}

fn part(p: &[u32], i: usize) -> u32 {
    p.get(i).copied().unwrap_or(0)
}

type LrKey = (Vec<u32>, Vec<u32>, Vec<u32>);
type ProductCache = RwLock<HashMap<(Vec<u32>, Vec<u32>), Vec<(Vec<u32>, u64)>>>;

static LR_CACHE: Lazy<RwLock<HashMap<LrKey, u64>>> = Lazy::new(|| RwLock::new(HashMap::new()));
static PRODUCT_CACHE: Lazy<ProductCache> = Lazy::new(|| RwLock::new(HashMap::new()));

/// Littlewood-Richardson coefficient on partitions, by counting lattice-word skew tableaux.
pub fn lr_partitions(lambda: &[u32], mu: &[u32], nu: &[u32]) -> u64 {
    let key = (lambda.to_vec(), mu.to_vec(), nu.to_vec());
    if let Some(&v) = LR_CACHE.read().get(&key) {
        return v;
    }
    let v = lr_count(lambda, mu, nu);
    LR_CACHE.write().entry(key).or_insert(v);
    v
}

fn lr_count(lambda: &[u32], mu: &[u32], nu: &[u32]) -> u64 {
    if partition_size(lambda) + partition_size(mu) != partition_size(nu) {
        return 0;
    }
    if lambda.len() > nu.len() || (0..lambda.len()).any(|i| lambda[i] > nu[i]) {
        return 0;
    }
    let cells: Vec<(usize, usize)> =
        (0..nu.len()).flat_map(|r| (part(lambda, r) as usize..nu[r] as usize).rev().map(move |c| (r, c))).collect();
    let mut grid: Vec<Vec<u32>> = nu.iter().map(|&l| vec![0; l as usize]).collect();
    let mut counts = vec![0u32; mu.len() + 1];

    fn go(
        k: usize,
        cells: &[(usize, usize)],
        lambda: &[u32],
        nu: &[u32],
        mu: &[u32],
        grid: &mut Vec<Vec<u32>>,
        counts: &mut Vec<u32>,
    ) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (r, c) = cells[k];
        let mut hi = mu.len() as u32;
        if c + 1 < nu[r] as usize {
            hi = hi.min(grid[r][c + 1]);
        }
        let mut lo = 1;
        if r > 0 && c >= part(lambda, r - 1) as usize {
            lo = grid[r - 1][c] + 1;
        }
        let mut total = 0;
        for v in lo..=hi {
            let vi = v as usize;
            if counts[vi] >= mu[vi - 1] || (vi > 1 && counts[vi] >= counts[vi - 1]) {
                continue;
            }
            counts[vi] += 1;
            grid[r][c] = v;
            total += go(k + 1, cells, lambda, nu, mu, grid, counts);
            grid[r][c] = 0;
            counts[vi] -= 1;
        }
        total
    }

    go(0, &cells, lambda, nu, mu, &mut grid, &mut counts)
}

/// The product of two Schur functions as a list of (partition, coefficient).
pub fn lr_product(lambda: &[u32], mu: &[u32]) -> Vec<(Vec<u32>, u64)> {
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(v) = PRODUCT_CACHE.read().get(&key) {
        return v.clone();
    }
    let n = partition_size(lambda) + partition_size(mu);
    let v: Vec<(Vec<u32>, u64)> = partitions(n)
        .into_iter()
        .filter_map(|nu| {
            let c = lr_partitions(lambda, mu, &nu);
            (c > 0).then_some((nu, c))
        })
        .collect();
    PRODUCT_CACHE.write().entry(key).or_insert_with(|| v.clone());
    v
}

/// LR coefficient on β-sets; 0 when the ranks do not add up.
pub fn lr_coefficient(x: &BetaSet, y: &BetaSet, z: &BetaSet) -> u64 {
    lr_coefficient_checked(x, y, z).unwrap_or(0)
}

pub fn lr_coefficient_checked(x: &BetaSet, y: &BetaSet, z: &BetaSet) -> Result<u64, SymbolError> {
    let expected = x.rank() + y.rank();
    if z.rank() != expected {
        return Err(SymbolError::RankMismatch { expected, got: z.rank() });
    }
    Ok(lr_partitions(&x.to_partition(), &y.to_partition(), &z.to_partition()))
}

/// Integer combination of irreducible characters labelled by symbols.
///
/// Degenerate labels whose ± split is not determined are kept separately
/// with the total multiplicity of the pair.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VirtualCharacter {
    terms: BTreeMap<Symbol, i64>,
    unresolved: BTreeMap<Symbol, i64>,
}

impl VirtualCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, label: Symbol, mult: i64) {
        let key = label.canonical();
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add_unresolved(&mut self, label: Symbol, total: i64) {
        let key = label.canonical();
        let e = self.unresolved.entry(key.clone()).or_insert(0);
        *e += total;
        if *e == 0 {
            self.unresolved.remove(&key);
        }
    }

    pub fn merge(&mut self, other: &VirtualCharacter) {
        for (k, v) in &other.terms {
            self.add(k.clone(), *v);
        }
        for (k, v) in &other.unresolved {
            self.add_unresolved(k.clone(), *v);
        }
    }

    pub fn scaled(&self, factor: i64) -> VirtualCharacter {
        let mut out = VirtualCharacter::new();
        for (k, v) in &self.terms {
            out.add(k.clone(), v * factor);
        }
        for (k, v) in &self.unresolved {
            out.add_unresolved(k.clone(), v * factor);
        }
        out
    }

    pub fn get(&self, label: &Symbol) -> i64 {
        self.terms.get(&label.canonical()).copied().unwrap_or(0)
    }

    pub fn get_unresolved(&self, label: &Symbol) -> i64 {
        self.unresolved.get(&label.canonical()).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, i64)> {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn unresolved(&self) -> impl Iterator<Item = (&Symbol, i64)> {
        self.unresolved.iter().map(|(k, v)| (k, *v))
    }

    pub fn is_resolved(&self) -> bool {
        self.unresolved.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty() && self.unresolved.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len() + self.unresolved.len()
    }

    /// Label string to multiplicity, keys sorted; unresolved pairs carry a `±?` suffix.
    pub fn to_map(&self) -> BTreeMap<String, i64> {
        let mut out: BTreeMap<String, i64> = self.terms.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        for (k, v) in &self.unresolved {
            out.insert(format!("{k}±?"), *v);
        }
        out
    }
}

impl Serialize for VirtualCharacter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_map().serialize(serializer)
    }
}

impl fmt::Display for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.to_map().into_iter().map(|(k, v)| if v == 1 { k } else { format!("{v}*{k}") }).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The reflection subgroups induction is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupShape {
    /// W_a × W_b in W_n.
    BxBInB,
    /// W_a' × W_b' in W_n'.
    DxDInD,
    /// (W_a' × W_b')⟨s_n t_0⟩ in W_n'.
    HTwisted,
    /// W_n' in W_n.
    DInB,
    /// W_a' × W_b in W_n.
    DxBInB,
    /// W_a × W_b' in W_n.
    BxDInB,
}

impl SubgroupShape {
    pub const ALL: [SubgroupShape; 6] = [
        SubgroupShape::BxBInB,
        SubgroupShape::DxDInD,
        SubgroupShape::HTwisted,
        SubgroupShape::DInB,
        SubgroupShape::DxBInB,
        SubgroupShape::BxDInB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubgroupShape::BxBInB => "bxb_in_b",
            SubgroupShape::DxDInD => "dxd_in_d",
            SubgroupShape::HTwisted => "h_twisted",
            SubgroupShape::DInB => "d_in_b",
            SubgroupShape::DxBInB => "dxb_in_b",
            SubgroupShape::BxDInB => "bxd_in_b",
        }
    }

    /// Whether the ambient group is W_n' rather than W_n.
    pub fn target_is_d(self) -> bool {
        matches!(self, SubgroupShape::DxDInD | SubgroupShape::HTwisted)
    }
}

impl fmt::Display for SubgroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SubgroupShape {
    type Err = InductionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SubgroupShape::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| InductionError::Unsupported(format!("unknown shape {s:?}")))
    }
}

/// How the coefficient in the subgroup-H induction formula is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HReading {
    /// `c_{A_{j1}A_{j2}}^{X1} c_{B_{j1}B_{j2}}^{X2} + δ c_{A_{j2}A_{j1}}^{X1} c_{B_{j2}B_{j1}}^{X2}`.
    Printed,
    /// `c_{A_{j1}B_{j1}}^{X1} c_{A_{j2}B_{j2}}^{X2} + δ c_{A_{j2}B_{j2}}^{X1} c_{A_{j1}B_{j1}}^{X2}`.
    #[default]
    Alternate,
}

fn require_defect_zero(s: &Symbol) -> Result<(), InductionError> {
    if s.defect() != 0 {
        return Err(InductionError::Defect(s.to_string()));
    }
    Ok(())
}

fn ordered(s: &Symbol) -> Symbol {
    Symbol { ordered: true, decoration: Decoration::None, ..s.clone() }.normalize()
}

fn unordered_key(s: &Symbol) -> Symbol {
    Symbol { ordered: false, decoration: Decoration::None, ..s.clone() }.canonical()
}

/// Induction from W_a × W_b to W_n.
pub fn induce_prod_b(a: &Symbol, b: &Symbol) -> Result<VirtualCharacter, InductionError> {
    require_defect_zero(a)?;
    require_defect_zero(b)?;
    let (a1, a2) = a.bipartition();
    let (b1, b2) = b.bipartition();
    let mut out = VirtualCharacter::new();
    let p1 = lr_product(&a1, &b1);
    let p2 = lr_product(&a2, &b2);
    for (x1, c1) in &p1 {
        for (x2, c2) in &p2 {
            out.add(Symbol::from_bipartition(x1, x2), (c1 * c2) as i64);
        }
    }
    Ok(out)
}

/// The characters of W_a whose restriction to W_a' contains the given label.
fn extensions(s: &Symbol) -> Vec<Symbol> {
    let o = ordered(s);
    if o.is_degenerate() {
        vec![o]
    } else {
        vec![o.swapped().normalize(), o]
    }
}

fn induce_to_b(lefts: &[Symbol], rights: &[Symbol]) -> Result<VirtualCharacter, InductionError> {
    let mut out = VirtualCharacter::new();
    for l in lefts {
        for r in rights {
            out.merge(&induce_prod_b(l, r)?);
        }
    }
    Ok(out)
}

/// Restrict a W_n character (given with a fixed half-split rule) to labels of W_n'.
fn restrict_to_d(full: &VirtualCharacter, halves_known: bool) -> VirtualCharacter {
    let mut out = VirtualCharacter::new();
    let mut seen: BTreeMap<Symbol, i64> = BTreeMap::new();
    for (x, m) in full.iter() {
        let key = unordered_key(x);
        if let Some(prev) = seen.insert(key.clone(), m) {
            debug_assert_eq!(prev, m, "orientations of {key} disagree");
            continue;
        }
        if key.is_degenerate() {
            if halves_known && m % 2 == 0 {
                for dec in [Decoration::Plus, Decoration::Minus] {
                    out.add(key.clone().with_decoration(dec).expect("degenerate"), m / 2);
                }
            } else {
                out.add_unresolved(key, m);
            }
        } else {
            out.add(key, m);
        }
    }
    out
}

fn as_d_label(s: &Symbol) -> Symbol {
    Symbol { ordered: false, ..s.clone() }.canonical()
}

/// Induction from W_a' × W_b' to W_n'.
pub fn induce_prod_d(a: &Symbol, b: &Symbol) -> Result<VirtualCharacter, InductionError> {
    require_defect_zero(a)?;
    require_defect_zero(b)?;
    let mut out = VirtualCharacter::new();
    if a.rank() == 0 || b.rank() == 0 {
        let other = if a.rank() == 0 { b } else { a };
        out.add(as_d_label(other), 1);
        return Ok(out);
    }
    let full = induce_to_b(&extensions(a), &extensions(b))?;
    let halves_known = !ordered(a).is_degenerate() || !ordered(b).is_degenerate();
    Ok(restrict_to_d(&full, halves_known))
}

/// The D-type multiplicity `a_{AB}^{X1X2}` for one orientation of X.
pub fn a_coefficient(a: &Symbol, b: &Symbol, x: &Symbol) -> Result<u64, InductionError> {
    let full = induce_to_b(&extensions(a), &extensions(b))?;
    Ok(full.get(&ordered(x)).max(0) as u64)
}

fn check_h_label(s: &Symbol) -> Result<(), InductionError> {
    require_defect_zero(s)?;
    if ordered(s).is_degenerate() {
        return Err(InductionError::Degenerate(s.to_string()));
    }
    Ok(())
}

/// Induction from (W_a' × W_b')⟨s_n t_0⟩ to W_n' of a non-degenerate label.
pub fn induce_h(a: &Symbol, b: &Symbol, reading: HReading) -> Result<VirtualCharacter, InductionError> {
    require_defect_zero(a)?;
    require_defect_zero(b)?;
    if a.rank() == 0 || b.rank() == 0 {
        let other = if a.rank() == 0 { b } else { a };
        if other.rank() > 0 {
            check_h_label(other)?;
        }
        let mut out = VirtualCharacter::new();
        out.add(as_d_label(other), 1);
        return Ok(out);
    }
    check_h_label(a)?;
    check_h_label(b)?;
    let (a, b) = (ordered(a), ordered(b));
    match reading {
        HReading::Alternate => {
            let mut full = induce_prod_b(&a, &b)?;
            full.merge(&induce_prod_b(&a.swapped(), &b.swapped())?);
            Ok(restrict_to_d(&full, true))
        }
        HReading::Printed => Ok(induce_h_printed(&a, &b)),
    }
}

fn induce_h_printed(a: &Symbol, b: &Symbol) -> VirtualCharacter {
    let (a1, a2) = (&a.top, &a.bottom);
    let (b1, b2) = (&b.top, &b.bottom);
    let delta = a1.rank() + b1.rank() == a2.rank() + b2.rank();
    let r1 = a1.rank() + b1.rank();
    let r2 = a2.rank() + b2.rank();
    let mut full = VirtualCharacter::new();
    for x1 in partitions(r1 as u32) {
        for x2 in partitions(r2 as u32) {
            let x = Symbol::from_bipartition(&x1, &x2);
            let (x1, x2) = (&x.top, &x.bottom);
            let mut e = lr_coefficient(a1, a2, x1) * lr_coefficient(b1, b2, x2);
            if delta {
                e += lr_coefficient(a2, a1, x1) * lr_coefficient(b2, b1, x2);
            }
            if e > 0 {
                full.add(x.clone(), e as i64);
                if x1 != x2 {
                    full.add(x.swapped(), e as i64);
                }
            }
        }
    }
    restrict_to_d(&full, true)
}

/// Induction from W_n' to W_n.
pub fn induce_d_in_b(s: &Symbol) -> Result<VirtualCharacter, InductionError> {
    require_defect_zero(s)?;
    let mut out = VirtualCharacter::new();
    for e in extensions(s) {
        out.add(e, 1);
    }
    Ok(out)
}

/// Induction along any supported shape. `right` is ignored for [`SubgroupShape::DInB`].
pub fn induce(
    shape: SubgroupShape,
    left: &Symbol,
    right: &Symbol,
    reading: HReading,
) -> Result<VirtualCharacter, InductionError> {
    match shape {
        SubgroupShape::BxBInB => induce_prod_b(left, right),
        SubgroupShape::DxDInD => induce_prod_d(left, right),
        SubgroupShape::HTwisted => induce_h(left, right, reading),
        SubgroupShape::DInB => induce_d_in_b(left),
        SubgroupShape::DxBInB => induce_to_b(&extensions(left), &[ordered(right)]),
        SubgroupShape::BxDInB => induce_to_b(&[ordered(left)], &extensions(right)),
    }
}

/// Multiplicity claimed for a d-minimal candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplicity {
    Exact(i64),
    /// ±1, sign not determined.
    SignUnknown,
    /// Exactly one of the two decorations occurs, with multiplicity 1.
    OneOfSplit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub label: Symbol,
    pub b_value: u64,
    pub multiplicity: Multiplicity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub induced: VirtualCharacter,
    pub b_values: BTreeMap<String, u64>,
    pub minimal_b: u64,
    pub minimal: Vec<Symbol>,
    pub multiplicities_one: bool,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DMinimal {
    pub case: char,
    /// Λ and, where the case allows it, Λ′.
    pub candidates: Vec<Candidate>,
    /// The candidates attaining the smallest b^d.
    pub d_minimal: Vec<Candidate>,
    pub certificate: Option<Certificate>,
}

/// b^d of a defect-0 label.
pub fn b_d(label: &Symbol, branch: DeltaBranch) -> Result<u64, InductionError> {
    Ok(delta_map(label, branch)?.b_value())
}

fn label_for_case(s: Symbol, unordered: bool) -> Symbol {
    if unordered {
        unordered_key(&s)
    } else {
        s.normalize()
    }
}

/// d-minimal characters for `E = A ⊠ B` in the relative Weyl group of `ctx`.
pub fn d_minimal(a: &Symbol, b: &Symbol, ctx: &GroupContext) -> Result<DMinimal, InductionError> {
    require_defect_zero(a)?;
    require_defect_zero(b)?;
    let m = ctx.m().ok_or_else(|| InductionError::Unsupported("levi rank exceeds n".into()))? as u64;
    for (s, r) in [(a, ctx.a_rel), (b, ctx.b_rel)] {
        if s.rank() != r as u64 {
            return Err(InductionError::RankMismatch { expected: r as u64, got: s.rank() });
        }
    }
    debug_assert_eq!(a.rank() + b.rank(), m);
    let branch = DeltaBranch::from_context(ctx)?;
    let (oa, ob) = (ordered(a), ordered(b));
    let lambda = odot_symbol(&oa, &ob)?;
    let lambda_p = odot_symbol(&oa.swapped(), &ob)?;
    let a_deg = oa.is_degenerate();
    let b_deg = ob.is_degenerate();
    let not_invariant =
        |s: &Symbol, tw: Twist| InductionError::NotInvariant { label: s.to_string(), twist: format!("{tw:?}") };

    let t0 = ctx.t == 0;
    let (case, both, unordered, shape) = match (ctx.group, t0) {
        (GroupType::B, _) | (_, false) => {
            if !matches!(ctx.twist, Twist::Identity) && !(ctx.group == GroupType::D && ctx.twist == Twist::GammaN) {
                return Err(not_invariant(a, ctx.twist));
            }
            ('a', false, false, Some(SubgroupShape::BxBInB))
        }
        (GroupType::C, true) => match ctx.twist {
            Twist::Identity => ('b', !a_deg, false, Some(SubgroupShape::DxBInB)),
            Twist::GammaA => {
                if a_deg {
                    return Err(not_invariant(a, ctx.twist));
                }
                ('b', true, false, None)
            }
            tw => return Err(not_invariant(a, tw)),
        },
        (GroupType::D, true) => match ctx.twist {
            Twist::Identity => ('c', !(a_deg && b_deg), true, Some(SubgroupShape::DxDInD)),
            Twist::GammaAB => {
                if a_deg {
                    return Err(not_invariant(a, ctx.twist));
                }
                if b_deg {
                    return Err(not_invariant(b, ctx.twist));
                }
                ('c', true, true, None)
            }
            Twist::GammaA | Twist::GammaB | Twist::GammaN => {
                if ctx.twist == Twist::GammaA && a_deg {
                    return Err(not_invariant(a, ctx.twist));
                }
                if ctx.twist == Twist::GammaB && b_deg {
                    return Err(not_invariant(b, ctx.twist));
                }
                if lambda.is_degenerate() && lambda_p.is_degenerate() {
                    return Err(InductionError::Unsupported("both Λ and Λ′ are degenerate".into()));
                }
                ('d', true, true, None)
            }
        },
    };

    let mut raw = vec![label_for_case(lambda, unordered)];
    if both {
        let lp = label_for_case(lambda_p, unordered);
        if !raw.contains(&lp) {
            raw.push(lp);
        }
    }
    let mut candidates = Vec::new();
    for y in raw {
        let bv = b_d(&y, branch)?;
        if case == 'd' {
            if !y.is_degenerate() {
                candidates.push(Candidate { label: y, b_value: bv, multiplicity: Multiplicity::SignUnknown });
            }
        } else if unordered && y.is_degenerate() {
            if a_deg || b_deg {
                candidates.push(Candidate { label: y, b_value: bv, multiplicity: Multiplicity::OneOfSplit });
            } else {
                for dec in [Decoration::Plus, Decoration::Minus] {
                    let l = y.clone().with_decoration(dec)?;
                    candidates.push(Candidate { label: l, b_value: bv, multiplicity: Multiplicity::Exact(1) });
                }
            }
        } else {
            candidates.push(Candidate { label: y, b_value: bv, multiplicity: Multiplicity::Exact(1) });
        }
    }
    let min_b = candidates.iter().map(|c| c.b_value).min().unwrap_or(0);
    let d_min: Vec<Candidate> = candidates.iter().filter(|c| c.b_value == min_b).cloned().collect();

    let certificate = match shape {
        Some(shape) => Some(certify(shape, a, b, branch, &d_min)?),
        None => None,
    };
    Ok(DMinimal { case, candidates, d_minimal: d_min, certificate })
}

fn certify(
    shape: SubgroupShape,
    a: &Symbol,
    b: &Symbol,
    branch: DeltaBranch,
    closed: &[Candidate],
) -> Result<Certificate, InductionError> {
    let induced = induce(shape, a, b, HReading::default())?;
    let mut b_values = BTreeMap::new();
    let mut scored: Vec<(Symbol, u64, i64, bool)> = Vec::new();
    for (x, mult) in induced.iter() {
        let bv = b_d(x, branch)?;
        b_values.insert(x.to_string(), bv);
        scored.push((x.clone(), bv, mult, false));
    }
    for (x, total) in induced.unresolved() {
        let bv = b_d(x, branch)?;
        b_values.insert(format!("{x}±?"), bv);
        scored.push((x.clone(), bv, total, true));
    }
    let minimal_b = scored.iter().map(|s| s.1).min().unwrap_or(0);
    let minimal: Vec<&(Symbol, u64, i64, bool)> = scored.iter().filter(|s| s.1 == minimal_b).collect();
    let multiplicities_one = minimal.iter().all(|s| s.2 == 1);
    let mut brute: Vec<Symbol> = minimal.iter().map(|s| s.0.clone()).collect();
    brute.sort();
    let mut expected: Vec<Symbol> = closed.iter().map(|c| c.label.canonical()).collect();
    expected.sort();
    expected.dedup();
    let closed_b = closed.first().map(|c| c.b_value);
    let agrees = brute == expected && closed_b == Some(minimal_b);
    Ok(Certificate { induced, b_values, minimal_b, minimal: brute, multiplicities_one, agrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(v: &[u32]) -> BetaSet {
        BetaSet::new(v.to_vec()).unwrap()
    }

    fn sym(s: &str) -> Symbol {
        s.parse().unwrap()
    }

    fn bip(l: &[u32], m: &[u32]) -> Symbol {
        Symbol::from_bipartition(l, m)
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&bs(&[1, 2]), &bs(&[0, 3])).unwrap());
        assert!(!dominance_leq(&bs(&[0, 3]), &bs(&[1, 2])).unwrap());
        assert!(dominance_leq(&bs(&[0, 3]), &bs(&[0, 3])).unwrap());
        assert!(dominance_leq(&bs(&[1, 2]), &bs(&[2])).unwrap());
        assert!(dominance_leq(&bs(&[0]), &bs(&[1, 2])).is_err());
    }

    #[test]
    fn odot_examples() {
        assert_eq!(odot(&bs(&[1, 3]), &bs(&[0, 2])), bs(&[1, 4]));
        assert_eq!(odot(&bs(&[1, 3]), &bs(&[0, 1])), bs(&[1, 3]));
        assert_eq!(odot_symbol(&sym("[1,2|0,3]"), &sym("[0,1|0,1]")).unwrap(), sym("[1,2|0,3]"));
        assert!(odot_exact(&bs(&[1]), &bs(&[0, 1])).is_err());
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_partitions(&[1], &[1], &[2]), 1);
        assert_eq!(lr_partitions(&[2, 1], &[2, 1], &[3, 2, 1]), 2);
        assert_eq!(lr_partitions(&[2, 1], &[1], &[2, 2]), 1);
        assert_eq!(lr_partitions(&[1], &[1], &[3]), 0);
        assert_eq!(lr_coefficient(&bs(&[1]), &bs(&[1]), &bs(&[1, 2])), 1);
    }

    #[test]
    fn prod_b_examples() {
        let v = induce_prod_b(&bip(&[1], &[]), &bip(&[1], &[])).unwrap();
        assert_eq!(v.get(&bip(&[2], &[])), 1);
        assert_eq!(v.get(&bip(&[1, 1], &[])), 1);
        assert_eq!(v.len(), 2);
        let v = induce_prod_b(&bip(&[1], &[]), &bip(&[], &[1])).unwrap();
        assert_eq!(v.get(&bip(&[1], &[1])), 1);
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn prod_d_example() {
        let a = bip(&[2], &[]).unordered();
        let b = bip(&[1, 1], &[]).unordered();
        let v = induce_prod_d(&a, &b).unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v.get(&bip(&[3, 1], &[]).unordered()), 1);
        assert_eq!(v.get(&bip(&[2, 1, 1], &[]).unordered()), 1);
        assert_eq!(v.get(&bip(&[2], &[1, 1]).unordered()), 1);
    }

    #[test]
    fn d_in_b_example() {
        let v = induce_d_in_b(&sym("[1,2|0,3]").unordered()).unwrap();
        assert_eq!(v.get(&sym("[1,2|0,3]")), 1);
        assert_eq!(v.get(&sym("[0,3|1,2]")), 1);
        assert_eq!(v.len(), 2);
        let deg: Symbol = "[0,2|0,2]+".parse().unwrap();
        let v = induce_d_in_b(&deg).unwrap();
        assert_eq!(v.get(&sym("[0,2|0,2]")), 1);
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn c4_remark() {
        let ctx = GroupContext::new(GroupType::C, 4, 4, 0, 0).unwrap();
        let r = d_minimal(&sym("[1,2|0,3]").unordered(), &sym("[|]"), &ctx).unwrap();
        assert_eq!(r.case, 'b');
        let labels: Vec<String> = r.d_minimal.iter().map(|c| c.label.to_string()).collect();
        assert_eq!(labels.len(), 2);
        assert!(r.d_minimal.iter().all(|c| c.b_value == 4));
        assert!(r.certificate.unwrap().agrees);
    }

    #[test]
    fn trivial_d_minimal() {
        let ctx = GroupContext::new(GroupType::B, 2, 1, 1, 0).unwrap();
        let r = d_minimal(&bip(&[1], &[]), &bip(&[1], &[]), &ctx).unwrap();
        assert_eq!(r.d_minimal.len(), 1);
        assert_eq!(r.d_minimal[0].label, bip(&[2], &[]));
        assert_eq!(r.d_minimal[0].b_value, 0);
        let cert = r.certificate.unwrap();
        assert!(cert.agrees && cert.multiplicities_one);
    }

    #[test]
    fn virtual_character_json_sorted() {
        let mut v = VirtualCharacter::new();
        v.add(sym("[2|0]"), 1);
        v.add(sym("[1|1]"), 2);
        let js = serde_json::to_string(&v).unwrap();
        assert_eq!(js, r#"{"[1|1]":2,"[2|0]":1}"#);
    }
}
