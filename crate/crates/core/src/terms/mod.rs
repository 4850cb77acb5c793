//! Finite terms denoting countable words, and what can be computed from them:
//! evaluation under a morphism, subword classes, ranks and the contextual
//! transduction used by block products.

mod eval;
mod parse;
mod rank;
mod subword;
mod term;
mod transduce;

use thiserror::Error;

pub use eval::{eval_term, member, normalize_powers, Morphism, Recognizer};
pub use parse::{parse_term, ParseError};
pub use rank::{directed_rank, directed_rank_of, rank_of, Direction, RankValue};
pub use subword::{finite_witness, subword_class, subwords_of_word};
pub use term::{format_term, Term};
pub use transduce::{transduce, transduce_with_context, Contextual};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("letter `{0}` is not mapped by the morphism")]
    UnmappedLetter(String),
    #[error("element `{0}` does not exist in the target algebra")]
    UnknownElement(String),
    #[error("shuffle-incomplete: no shuffle value for subset {{{}}}", .0.join(", "))]
    ShuffleIncomplete(Vec<String>),
    #[error("not-normalized: power body `{body}` evaluates to non-idempotent `{value}`")]
    NotNormalized { body: String, value: String },
}
