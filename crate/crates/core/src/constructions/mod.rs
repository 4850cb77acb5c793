//! Building new algebras from old ones.

mod block;
pub mod builtin;
mod divides;
mod product;
mod quotient;
mod subalgebra;
mod subword_quotient;

use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use block::{block_product, block_product_with, BlockElem, BlockOptions, BlockProduct, BlockShuffle};
pub use divides::{divides, divides_with, DivisionResult, DivisionWitness};
pub use product::{direct_product, direct_product_all};
pub use quotient::{find_isomorphism, quotient, syntactic_quotient, Quotient, SyntacticQuotient};
pub use subalgebra::{generated_subalgebra, generated_subalgebra_with, restrict, Subalgebra, SubalgebraOptions};
pub use subword_quotient::{build_sn, build_sn_with, SubwordQuotient, Word};

/// Default cap on the number of elements a closure may produce.
pub const DEFAULT_ELEMENT_BUDGET: usize = 100_000;

/// The element budget, overridable through `CLO_BUDGET`.
pub fn element_budget() -> usize {
    std::env::var("CLO_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ELEMENT_BUDGET)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("unknown builtin algebra `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("budget exceeded while building {what}: stopped at {reached} (limit {limit})")]
    Budget {
        what: &'static str,
        reached: usize,
        limit: usize,
    },
    #[error("element index {0} is outside the carrier")]
    NotAnElement(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Elements reached from a seed list by closing under unary and binary
/// operations, in discovery order. Operation results are recorded so the
/// tables of the closed set can be read off without recomputation.
pub(crate) struct Closure<T> {
    pub items: Vec<T>,
    pub index: HashMap<T, usize>,
    products: HashMap<(usize, usize), usize>,
    unary: Vec<Vec<usize>>,
}

impl<T: Clone + Eq + Hash> Closure<T> {
    pub fn new() -> Self {
        Closure {
            items: Vec::new(),
            index: HashMap::new(),
            products: HashMap::new(),
            unary: Vec::new(),
        }
    }

    /// Index of `x`, inserting it if new. Fails once the budget is reached.
    pub fn insert(&mut self, x: T, limit: usize, what: &'static str) -> Result<usize, ConstructionError> {
        if let Some(&i) = self.index.get(&x) {
            return Ok(i);
        }
        if self.items.len() >= limit {
            return Err(ConstructionError::Budget {
                what,
                reached: self.items.len(),
                limit,
            });
        }
        let i = self.items.len();
        self.items.push(x.clone());
        self.index.insert(x, i);
        Ok(i)
    }

    /// Closes under `binary` and every function in `unary`, processing new
    /// elements until none appear. Each ordered pair is combined once.
    pub fn close(
        &mut self,
        unary: &[&dyn Fn(&T) -> T],
        binary: &dyn Fn(&T, &T) -> T,
        limit: usize,
        what: &'static str,
    ) -> Result<(), ConstructionError> {
        if self.unary.len() < unary.len() {
            self.unary.resize(unary.len(), Vec::new());
        }
        let mut k = 0;
        while k < self.items.len() {
            for (u, f) in unary.iter().enumerate() {
                if self.unary[u].len() > k {
                    continue;
                }
                let y = f(&self.items[k]);
                let i = self.insert(y, limit, what)?;
                self.unary[u].push(i);
            }
            for j in 0..=k {
                if !self.products.contains_key(&(k, j)) {
                    let a = binary(&self.items[k], &self.items[j]);
                    let i = self.insert(a, limit, what)?;
                    self.products.insert((k, j), i);
                }
                if !self.products.contains_key(&(j, k)) {
                    let b = binary(&self.items[j], &self.items[k]);
                    let i = self.insert(b, limit, what)?;
                    self.products.insert((j, k), i);
                }
            }
            k += 1;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    /// Row-major product table of a closed set.
    pub fn product_table(&self) -> Vec<usize> {
        let n = self.items.len();
        let mut t = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                t.push(self.products[&(x, y)]);
            }
        }
        t
    }

    pub fn unary_table(&self, u: usize) -> Vec<usize> {
        self.unary[u].clone()
    }
}
