//! Ranks of sets of positions.
//!
//! Level 0 holds the finite orderings; level `n+1` closes level `n` under
//! finite sums and `ω`- or `ω*`-indexed sums. The rank is the least level
//! containing the ordering, `Infinite` if there is none (a dense part rules
//! out every level). Terms give it structurally.

use std::collections::BTreeSet;
use std::fmt;

use super::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RankValue {
    /// No position is selected.
    Bottom,
    Finite(usize),
    Infinite,
}

impl RankValue {
    fn succ(self) -> Self {
        match self {
            RankValue::Finite(r) => RankValue::Finite(r + 1),
            other => other,
        }
    }

    /// `self ≥ Finite(k)`.
    pub fn at_least(self, k: usize) -> bool {
        self >= RankValue::Finite(k)
    }
}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankValue::Bottom => f.write_str("bottom"),
            RankValue::Finite(r) => write!(f, "{r}"),
            RankValue::Infinite => f.write_str("infinite"),
        }
    }
}

/// Rank of the set of positions labelled by a letter of `set`.
pub fn rank_of<L: Ord>(t: &Term<L>, set: &BTreeSet<L>) -> RankValue {
    match t {
        Term::Empty => RankValue::Bottom,
        Term::Letter(l) if set.contains(l) => RankValue::Finite(0),
        Term::Letter(_) => RankValue::Bottom,
        Term::Concat(a, b) => rank_of(a, set).max(rank_of(b, set)),
        Term::OmegaPow(b) | Term::OmegaStarPow(b) => rank_of(b, set).succ(),
        Term::Shuffle(cs) => shuffle_rank(cs.iter().map(|c| rank_of(c, set))),
    }
}

fn shuffle_rank(children: impl Iterator<Item = RankValue>) -> RankValue {
    if children.into_iter().all(|r| r == RankValue::Bottom) {
        RankValue::Bottom
    } else {
        RankValue::Infinite
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Omega,
    OmegaStar,
}

/// Largest `n` such that the `a`-positions contain a copy of `ω^n`
/// (respectively `ω*^n`). A power in the opposite direction does not raise
/// it: a copy of `ω^(r+1)` cannot be split across an `ω*`-indexed sum.
pub fn directed_rank<L: Ord>(t: &Term<L>, a: &L, dir: Direction) -> RankValue {
    directed_by(t, &|l| l == a, dir)
}

/// As [`directed_rank`] for the positions labelled by a letter of `set`.
pub fn directed_rank_of<L: Ord>(t: &Term<L>, set: &BTreeSet<L>, dir: Direction) -> RankValue {
    directed_by(t, &|l| set.contains(l), dir)
}

fn directed_by<L>(t: &Term<L>, selected: &dyn Fn(&L) -> bool, dir: Direction) -> RankValue {
    match t {
        Term::Empty => RankValue::Bottom,
        Term::Letter(l) if selected(l) => RankValue::Finite(0),
        Term::Letter(_) => RankValue::Bottom,
        Term::Concat(x, y) => directed_by(x, selected, dir).max(directed_by(y, selected, dir)),
        Term::OmegaPow(b) => {
            let r = directed_by(b, selected, dir);
            if dir == Direction::Omega {
                r.succ()
            } else {
                r
            }
        }
        Term::OmegaStarPow(b) => {
            let r = directed_by(b, selected, dir);
            if dir == Direction::OmegaStar {
                r.succ()
            } else {
                r
            }
        }
        Term::Shuffle(cs) => shuffle_rank(cs.iter().map(|c| directed_by(c, selected, dir))),
    }
}
