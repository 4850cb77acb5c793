//! Finite circle-algebras: algebraic recognizers for languages of countable
//! words, with constructions, identity checks and compilers from first-order
//! logic with infinitary quantifiers.

pub mod algebra;
pub mod constructions;
pub mod io;
pub mod logic;
pub mod terms;
