//! Brute-force character theory of the hyperoctahedral groups W_n and their index-two subgroups W_n'.
//!
//! Groups are enumerated element by element, so ranks are capped at [`MAX_RANK`].

pub mod chars;
pub mod checks;
pub mod error;
pub mod group;
pub mod perm;
pub mod verify;

pub use chars::{labels, mn_char, wn_value, Oracle};
pub use checks::{check_d_minimal, check_lr, lr_by_characters, DMinimalCheck, LrReport};
pub use error::OracleError;
pub use group::{ClassFunction, GroupData, GroupKind, MAX_RANK};
pub use perm::SignedPerm;
pub use verify::{verify_against_symbols, Mismatch, ResolvedSplit, VerifyReport};
