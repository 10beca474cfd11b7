//! Golden tables of aligned symbol pairs and the increasing sequences of
//! their `⊕` entries, stored as templates in a parameter `t`.

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::context::{CSign, GroupType};
use crate::error::SheafError;
use crate::symbol::Symbol;

static RAW: &str = include_str!("../data/appendix.json");

static TABLES: Lazy<Vec<AppendixTable>> = Lazy::new(|| {
    let file: AppendixFile = serde_json::from_str(RAW).expect("bundled appendix data parses");
    file.tables
});

/// Which factor carries the varying symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideMode {
    /// The varying symbol is the left factor.
    BPrime,
    /// The varying symbol is the right factor.
    APrime,
}

/// `k·t + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Linear(pub i64, pub i64);

impl Linear {
    pub fn at(self, t: u32) -> i64 {
        self.0 * t as i64 + self.1
    }
}

/// A row `0,1,…,x` followed by the listed terms, over an explicit bottom row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolTemplate {
    pub top: Vec<Linear>,
    pub bottom: Vec<u32>,
}

impl SymbolTemplate {
    pub fn at(&self, t: u32) -> Result<Symbol, SheafError> {
        let tail = eval(&self.top, t)?;
        let mut top: Vec<u32> = (0..tail[0]).collect();
        top.extend(&tail);
        Ok(Symbol::from_rows(&top, &self.bottom)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub tail: Vec<Linear>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixRow {
    pub index: usize,
    pub symbol: SymbolTemplate,
    pub head: Vec<u32>,
    pub tail: Vec<Linear>,
    /// Sizes of the leading non-singleton classes as displayed.
    #[serde(default)]
    pub groups: Option<Vec<usize>>,
    /// Replacement for a misprinted grouping.
    #[serde(default)]
    pub groups_corrected: Option<Vec<usize>>,
    #[serde(default)]
    pub erratum: Option<Erratum>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixTable {
    pub id: String,
    pub group: GroupType,
    pub c_sign: Option<CSign>,
    pub mode: SideMode,
    pub fixed: SymbolTemplate,
    pub sequence_len: Linear,
    pub non_degenerate: Linear,
    /// Number of even non-degenerate classes, where the table states it.
    pub even_classes: Option<usize>,
    pub j_exponent: Linear,
    pub rows: Vec<AppendixRow>,
}

#[derive(Deserialize)]
struct AppendixFile {
    tables: Vec<AppendixTable>,
}

pub fn appendix_tables() -> &'static [AppendixTable] {
    &TABLES
}

fn eval(terms: &[Linear], t: u32) -> Result<Vec<u32>, SheafError> {
    terms
        .iter()
        .map(|l| u32::try_from(l.at(t)).map_err(|_| SheafError::Template(format!("negative term at t={t}"))))
        .collect()
}

/// Expand `head, …, tail` to `len` entries: a prefix of the head, then steps of 2 up to the tail.
pub fn decode_sequence(head: &[u32], tail: &[u32], len: usize) -> Result<Vec<u32>, SheafError> {
    let bad = || SheafError::Template(format!("cannot expand {head:?} … {tail:?} to {len} entries"));
    let first = *tail.first().ok_or_else(bad)?;
    let mut out = if head.len() + tail.len() >= len {
        head[..len.checked_sub(tail.len()).ok_or_else(bad)?].to_vec()
    } else {
        let mut v = head.to_vec();
        let mut x = *head.last().ok_or_else(bad)? + 2;
        while x < first {
            v.push(x);
            x += 2;
        }
        v
    };
    out.extend(tail);
    if out.len() != len || out.windows(2).any(|w| w[0] > w[1]) {
        return Err(bad());
    }
    Ok(out)
}

impl AppendixTable {
    pub fn find(id: &str) -> Option<&'static AppendixTable> {
        appendix_tables().iter().find(|t| t.id == id)
    }

    /// The tables for a type, restricted to one sign in type C when given.
    pub fn select(group: GroupType, c_sign: Option<CSign>) -> Vec<&'static AppendixTable> {
        appendix_tables().iter().filter(|t| t.group == group && (c_sign.is_none() || t.c_sign == c_sign)).collect()
    }

    /// The pair of row `i` at `t`, in (left, right) order.
    pub fn pair_at(&self, i: usize, t: u32) -> Result<(Symbol, Symbol), SheafError> {
        let fixed = self.fixed.at(t)?;
        let varying = self.rows[i].symbol.at(t)?;
        Ok(match self.mode {
            SideMode::BPrime => (varying, fixed),
            SideMode::APrime => (fixed, varying),
        })
    }

    pub fn sequence_at(&self, i: usize, t: u32) -> Result<Vec<u32>, SheafError> {
        let row = &self.rows[i];
        decode_sequence(&row.head, &eval(&row.tail, t)?, self.sequence_len.at(t) as usize)
    }

    /// The corrected sequence for a row carrying an erratum.
    pub fn corrected_at(&self, i: usize, t: u32) -> Result<Option<Vec<u32>>, SheafError> {
        let row = &self.rows[i];
        row.erratum
            .as_ref()
            .map(|e| decode_sequence(&row.head, &eval(&e.tail, t)?, self.sequence_len.at(t) as usize))
            .transpose()
    }
}
