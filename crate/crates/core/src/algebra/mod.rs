//! Finite circle-algebras: a monoid together with the derived operators
//! `ω` (omega power), `ω*` (reverse omega power) and `κ` (perfect shuffle of a
//! nonempty set of elements).
//!
//! Elements are positional indices into the carrier; display names are kept
//! alongside for reporting and serialization.

mod axioms;
mod gamma;
mod green;
mod identities;
mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use axioms::{axiom_laws, validate_axioms, validate_axioms_with};
pub use gamma::{gamma_n, gamma_table, gnl, iterated_idempotents};
pub use green::{green_data, GreenData};
pub use identities::{check_identity, check_identity_with, identity_laws, IdentityTag};
pub use report::{CheckConfig, CheckResult, Instance, Law, Outcome, PropertyReport, Shape};

/// Index of an element in a carrier.
pub type Elem = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("carrier must be nonempty")]
    EmptyCarrier,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("{table} table has wrong shape: expected {expected} entries, found {found}")]
    TableShape {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{table} table refers to element index {index} outside a carrier of size {size}")]
    OutOfRange {
        table: &'static str,
        index: usize,
        size: usize,
    },
    #[error("shuffle-incomplete: no shuffle value for subset {{{}}}", .0.join(", "))]
    ShuffleIncomplete(Vec<String>),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("gap-nesting chain did not stabilize within {0} steps")]
    NoStabilization(usize),
    #[error("subset enumeration over {0} non-unit elements exceeds the budget")]
    SubsetBudget(usize),
}

/// A shuffle operator computed from other data rather than stored as a table.
///
/// `subset` is always unit-normalized: sorted, duplicate-free, without the
/// unit (unless it is exactly `[unit]`). Returning `None` marks the entry as
/// undefined.
pub trait ShuffleOracle: Send + Sync + fmt::Debug {
    fn shuffle(&self, subset: &[Elem]) -> Option<Elem>;
}

#[derive(Clone, Debug)]
pub enum ShuffleTable {
    /// Entries keyed by unit-normalized subsets, with an optional fallback for
    /// subsets other than `{unit}`.
    Explicit {
        entries: BTreeMap<Vec<Elem>, Elem>,
        default: Option<Elem>,
    },
    Derived(Arc<dyn ShuffleOracle>),
}

impl ShuffleTable {
    pub fn constant(value: Elem) -> Self {
        ShuffleTable::Explicit {
            entries: BTreeMap::new(),
            default: Some(value),
        }
    }
}

/// A finite circle-algebra `(M, 1, ·, ω, ω*, κ)`.
#[derive(Clone, Debug)]
pub struct FiniteCircleAlgebra {
    name: String,
    names: Vec<String>,
    unit: Elem,
    product: Vec<Elem>,
    omega: Vec<Elem>,
    omegastar: Vec<Elem>,
    shuffle: ShuffleTable,
}

impl FiniteCircleAlgebra {
    /// Builds an algebra from its tables. `product` is row-major: entry
    /// `x * len + y` holds `x · y`. Only totality and index ranges are checked
    /// here; see [`validate_axioms`] for the algebraic laws.
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        unit: Elem,
        product: Vec<Elem>,
        omega: Vec<Elem>,
        omegastar: Vec<Elem>,
        shuffle: ShuffleTable,
    ) -> Result<Self, AlgebraError> {
        let size = names.len();
        if size == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(AlgebraError::DuplicateName(n.clone()));
            }
        }
        let check = |table: &'static str, values: &[Elem], expected: usize| {
            if values.len() != expected {
                return Err(AlgebraError::TableShape {
                    table,
                    expected,
                    found: values.len(),
                });
            }
            match values.iter().find(|&&v| v >= size) {
                Some(&index) => Err(AlgebraError::OutOfRange { table, index, size }),
                None => Ok(()),
            }
        };
        check("unit", &[unit], 1)?;
        check("product", &product, size * size)?;
        check("omega", &omega, size)?;
        check("omegastar", &omegastar, size)?;
        if let ShuffleTable::Explicit { entries, default } = &shuffle {
            for (k, v) in entries {
                check("shuffle", k, k.len())?;
                check("shuffle", &[*v], 1)?;
            }
            if let Some(d) = default {
                check("shuffle", &[*d], 1)?;
            }
        }
        let mut shuffle = shuffle;
        if let ShuffleTable::Explicit { entries, .. } = &mut shuffle {
            let normalized: BTreeMap<Vec<Elem>, Elem> = std::mem::take(entries)
                .into_iter()
                .map(|(k, v)| (normalize_subset(unit, &k), v))
                .collect();
            *entries = normalized;
        }
        Ok(FiniteCircleAlgebra {
            name: name.into(),
            names,
            unit,
            product,
            omega,
            omegastar,
            shuffle,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.names.len()
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_of(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn element(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn shuffle_table(&self) -> &ShuffleTable {
        &self.shuffle
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.product[x * self.names.len() + y]
    }

    #[inline]
    pub fn omega(&self, x: Elem) -> Elem {
        self.omega[x]
    }

    #[inline]
    pub fn omegastar(&self, x: Elem) -> Elem {
        self.omegastar[x]
    }

    /// `κ(E)` for a nonempty set `E`, or `None` if the entry is undefined.
    pub fn shuffle(&self, subset: &[Elem]) -> Option<Elem> {
        assert!(!subset.is_empty(), "shuffle of the empty set");
        let key = normalize_subset(self.unit, subset);
        match &self.shuffle {
            ShuffleTable::Explicit { entries, default } => {
                if let Some(&v) = entries.get(&key) {
                    return Some(v);
                }
                if key == [self.unit] {
                    Some(self.unit)
                } else {
                    *default
                }
            }
            ShuffleTable::Derived(oracle) => {
                if key == [self.unit] {
                    Some(self.unit)
                } else {
                    oracle.shuffle(&key)
                }
            }
        }
    }

    pub fn try_shuffle(&self, subset: &[Elem]) -> Result<Elem, AlgebraError> {
        self.shuffle(subset).ok_or_else(|| {
            let key = normalize_subset(self.unit, subset);
            AlgebraError::ShuffleIncomplete(key.iter().map(|&e| self.names[e].clone()).collect())
        })
    }

    /// Product of a finite sequence, left to right.
    pub fn product_of<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.unit, |acc, x| self.mul(acc, x))
    }

    pub fn power(&self, x: Elem, k: usize) -> Elem {
        (0..k).fold(self.unit, |acc, _| self.mul(acc, x))
    }

    pub fn is_idempotent(&self, x: Elem) -> bool {
        self.mul(x, x) == x
    }

    /// Least `k ≥ 1` such that `x^k` is idempotent.
    pub fn idempotent_exponent(&self, x: Elem) -> usize {
        let mut p = x;
        for k in 1..=self.len() {
            if self.is_idempotent(p) {
                return k;
            }
            p = self.mul(p, x);
        }
        unreachable!("every element of a finite monoid has an idempotent power")
    }

    /// The unique idempotent power `x^!`.
    pub fn idempotent_power(&self, x: Elem) -> Elem {
        self.power(x, self.idempotent_exponent(x))
    }

    /// Elements other than the unit, in carrier order.
    pub fn non_units(&self) -> Vec<Elem> {
        self.elements().filter(|&e| e != self.unit).collect()
    }

    /// All nonempty unit-normalized subsets: `{unit}` first, then every
    /// nonempty set of non-unit elements ordered by size and then
    /// lexicographically.
    pub fn normalized_subsets(&self, budget: u64) -> Result<Vec<Vec<Elem>>, AlgebraError> {
        let others = self.non_units();
        let k = others.len();
        if k >= 63 || (1u64 << k) > budget {
            return Err(AlgebraError::SubsetBudget(k));
        }
        let mut out = vec![vec![self.unit]];
        for size in 1..=k {
            combinations(&others, size, &mut |c| out.push(c.to_vec()));
        }
        Ok(out)
    }

    /// Replaces a derived shuffle operator by an explicit table, choosing the
    /// most frequent value as the default. Undefined entries stay undefined
    /// only when no default is chosen.
    pub fn materialize_shuffle(&self, budget: u64) -> Result<FiniteCircleAlgebra, AlgebraError> {
        let subsets = self.normalized_subsets(budget)?;
        let mut values: Vec<(Vec<Elem>, Option<Elem>)> = Vec::new();
        let mut counts: BTreeMap<Elem, usize> = BTreeMap::new();
        let mut undefined = false;
        for s in subsets.into_iter().skip(1) {
            let v = self.shuffle(&s);
            match v {
                Some(v) => *counts.entry(v).or_default() += 1,
                None => undefined = true,
            }
            values.push((s, v));
        }
        let default = if undefined {
            None
        } else {
            counts
                .iter()
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
                .map(|(&v, _)| v)
        };
        let mut entries = BTreeMap::new();
        for (s, v) in values {
            if let Some(v) = v {
                if Some(v) != default {
                    entries.insert(s, v);
                }
            }
        }
        let unit_value = self.shuffle(&[self.unit]).unwrap_or(self.unit);
        if unit_value != self.unit {
            entries.insert(vec![self.unit], unit_value);
        }
        let mut out = self.clone();
        out.shuffle = ShuffleTable::Explicit { entries, default };
        Ok(out)
    }

    /// Table-level equality: same names, unit and operator values on every
    /// subset (the shuffle comparison is exhaustive and budgeted).
    pub fn same_tables(&self, other: &FiniteCircleAlgebra, budget: u64) -> Result<bool, AlgebraError> {
        if self.names != other.names
            || self.unit != other.unit
            || self.product != other.product
            || self.omega != other.omega
            || self.omegastar != other.omegastar
        {
            return Ok(false);
        }
        let subsets = self.normalized_subsets(budget)?;
        Ok(subsets.iter().all(|s| self.shuffle(s) == other.shuffle(s)))
    }
}

impl fmt::Display for FiniteCircleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{{}}}", self.name, self.names.join(", "))
    }
}

/// Sorts and deduplicates `subset`, then removes the unit unless it is the only
/// element.
pub fn normalize_subset(unit: Elem, subset: &[Elem]) -> Vec<Elem> {
    let mut v: Vec<Elem> = subset.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.len() > 1 {
        v.retain(|&e| e != unit);
    }
    v
}

pub(crate) fn combinations(items: &[Elem], size: usize, visit: &mut dyn FnMut(&[Elem])) {
    fn go(items: &[Elem], size: usize, start: usize, cur: &mut Vec<Elem>, visit: &mut dyn FnMut(&[Elem])) {
        if cur.len() == size {
            visit(cur);
            return;
        }
        let need = size - cur.len();
        for i in start..=items.len().saturating_sub(need) {
            if items.len() < need {
                break;
            }
            cur.push(items[i]);
            go(items, size, i + 1, cur, visit);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(size);
    go(items, size, 0, &mut cur, visit);
}
