//! First-order logic over countable words with rank quantifiers: syntax,
//! fragments, reference model checkers and compilers to recognizers.

mod compile;
mod formula;
mod fragment;
mod mc;
mod parse;
mod relativize;

use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::terms::{ParseError, TermError};

pub use compile::{compile, letter_marker, order_tracker, Strategy};
pub use formula::{format_formula, Formula, Quantifier, Var};
pub use fragment::{fragment_of, max_block_length, FragmentTag};
pub use mc::{mc_finite, mc_term_onevar, Assignment};
pub(crate) use mc::selected_letters;
pub use parse::parse_formula;
pub use relativize::{relativize, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("variable `{0}` is bound twice on one path")]
    Rebound(String),
    #[error("variable `{0}` is free")]
    FreeVariable(String),
    #[error("variable `{0}` has no position")]
    Unassigned(String),
    #[error("variable `{var}` is assigned position {position}, outside the word")]
    PositionOutOfRange { var: String, position: usize },
    #[error("sentence is not in the one-variable fragment")]
    NotOneVariable,
    #[error("fragment mismatch for strategy {strategy}: {reason}")]
    FragmentMismatch { strategy: String, reason: String },
    #[error("pivot `{0}` already occurs in the formula")]
    PivotCapture(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Term(#[from] TermError),
}
