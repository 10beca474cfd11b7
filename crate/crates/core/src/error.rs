use thiserror::Error;

use crate::context::GroupType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("duplicate entry {0} in row")]
    DuplicateEntry(u32),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid source defect {0}, expected 0 or 1")]
    InvalidSourceDefect(i64),
    #[error("negative target defect {0}")]
    NegativeDefect(i64),
    #[error("defect mismatch: expected {expected}, got {got}")]
    DefectMismatch { expected: i64, got: i64 },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: u64, got: u64 },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("degenerate symbol not allowed here")]
    Degenerate,
    #[error("decoration only allowed on degenerate unordered symbols")]
    BadDecoration,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpringerError {
    #[error("row {row} contains consecutive integers {a} and {b}")]
    Consecutive { row: &'static str, a: u32, b: u32 },
    #[error("kind Y bottom row must not contain 0")]
    ZeroInBottom,
    #[error("kind Y requires an odd number of entries, got {0}")]
    EvenCount(usize),
    #[error("entry-sum condition fails for rank {0}")]
    RankCondition(u64),
    #[error("invalid defect {defect} for {what}")]
    InvalidDefect { defect: i64, what: &'static str },
    #[error("domain mismatch: {0}")]
    Domain(String),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("unknown group type {0:?}")]
    UnknownType(String),
    #[error("unknown twist {0:?}")]
    UnknownTwist(String),
    #[error("inconsistent context: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InductionError {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: u64, got: u64 },
    #[error("label {0} must have defect 0")]
    Defect(String),
    #[error("label {0} is degenerate where a non-degenerate label is required")]
    Degenerate(String),
    #[error("label {label} is not invariant under {twist}")]
    NotInvariant { label: String, twist: String },
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Springer(#[from] SpringerError),
    #[error(transparent)]
    Context(#[from] ContextError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LagrangianError {
    #[error("defects {left} and {right} differ by more than 1")]
    Gap { left: i64, right: i64 },
    #[error("defects ({left}, {right}) fit no pair case for type {group}")]
    Defects { group: GroupType, left: i64, right: i64 },
    #[error("bottom length {p} is below the minimum {min}")]
    Alignment { p: usize, min: usize },
    #[error("crossed sum needs case C.1 or D with t = 0, got {case} with t = {t}")]
    WrongCase { case: String, t: u32 },
    #[error("{0} is not a label for this type")]
    NotALabel(String),
    #[error("no pair in the two classes has defect gap at most 1")]
    EmptyBase,
    #[error("constructed pair ({0}, {1}) lies outside the given classes")]
    Outside(String, String),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Springer(#[from] SpringerError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error("domain mismatch: {0}")]
    Domain(String),
    #[error("defect {defect} is not a block defect for type {group}")]
    IllegalDefect { group: GroupType, defect: i64 },
    #[error("t = {t} is not supported for type {group} here")]
    IllegalT { group: GroupType, t: u32 },
    #[error("bad appendix template: {0}")]
    Template(String),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Springer(#[from] SpringerError),
    #[error(transparent)]
    Lagrangian(#[from] LagrangianError),
    #[error(transparent)]
    Context(#[from] ContextError),
}
