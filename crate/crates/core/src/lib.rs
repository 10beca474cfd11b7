//! Symbol combinatorics for unipotently supported character sheaves of
//! classical groups.

pub mod appendix;
pub mod beta;
pub mod context;
pub mod error;
pub mod induction;
pub mod lagrangian;
pub mod properties;
pub mod sheaf;
pub mod springer;
pub mod symbol;

pub use beta::BetaSet;
pub use error::{ContextError, InductionError, LagrangianError, SheafError, SpringerError, SymbolError};
pub use symbol::{Decoration, LabelFamily, LabelSetSpec, Symbol};
