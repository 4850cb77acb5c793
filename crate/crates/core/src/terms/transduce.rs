use std::fmt;

use crate::algebra::Elem;

use super::{eval_term, Morphism, Term, TermError};

/// A letter annotated with the values of the prefix before it and the suffix
/// after it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Contextual<L> {
    pub left: Elem,
    pub letter: L,
    pub right: Elem,
}

impl<L: fmt::Display> fmt::Display for Contextual<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.left, self.letter, self.right)
    }
}

/// Relabels every position `p` of `t`'s word by `(h(prefix), letter,
/// h(suffix))`. Power bodies must evaluate to idempotents; see
/// [`normalize_powers`](super::normalize_powers).
pub fn transduce<L: Ord + Clone + fmt::Display>(t: &Term<L>, h: &Morphism<L>) -> Result<Term<Contextual<L>>, TermError> {
    let u = h.target.unit();
    transduce_with_context(t, h, u, u)
}

/// As [`transduce`], inside a left context `left` and right context `right`.
pub fn transduce_with_context<L: Ord + Clone + fmt::Display>(
    t: &Term<L>,
    h: &Morphism<L>,
    left: Elem,
    right: Elem,
) -> Result<Term<Contextual<L>>, TermError> {
    let a = &h.target;
    let idempotent_body = |s: &Term<L>| -> Result<Elem, TermError> {
        let e = eval_term(s, h)?;
        if a.is_idempotent(e) {
            Ok(e)
        } else {
            Err(TermError::NotNormalized {
                body: s.to_string(),
                value: a.name_of(e).to_string(),
            })
        }
    };
    Ok(match t {
        Term::Empty => Term::Empty,
        Term::Letter(l) => Term::Letter(Contextual {
            left,
            letter: l.clone(),
            right,
        }),
        Term::Concat(x, y) => {
            let vx = eval_term(x, h)?;
            let vy = eval_term(y, h)?;
            Term::concat(
                transduce_with_context(x, h, left, a.mul(vy, right))?,
                transduce_with_context(y, h, a.mul(left, vx), right)?,
            )
        }
        Term::OmegaPow(s) => {
            let e = idempotent_body(s)?;
            let r = a.mul(a.omega(e), right);
            Term::concat(
                transduce_with_context(s, h, left, r)?,
                Term::omega(transduce_with_context(s, h, a.mul(left, e), r)?),
            )
        }
        Term::OmegaStarPow(s) => {
            let e = idempotent_body(s)?;
            let l = a.mul(left, a.omegastar(e));
            Term::concat(
                Term::omegastar(transduce_with_context(s, h, l, a.mul(e, right))?),
                transduce_with_context(s, h, l, right)?,
            )
        }
        Term::Shuffle(cs) => {
            let vals = cs.iter().map(|c| eval_term(c, h)).collect::<Result<Vec<_>, _>>()?;
            let eta = eval_term(t, h)?;
            debug_assert_eq!(Some(eta), a.shuffle(&vals));
            Term::shuffle(
                cs.iter()
                    .map(|c| transduce_with_context(c, h, a.mul(left, eta), a.mul(eta, right)))
                    .collect::<Result<_, _>>()?,
            )
        }
    })
}
