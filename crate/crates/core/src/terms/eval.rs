use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{AlgebraError, Elem, FiniteCircleAlgebra};

use super::{Term, TermError};

/// A letter-to-element assignment into a target algebra.
#[derive(Clone, Debug)]
pub struct Morphism<L = String> {
    pub target: FiniteCircleAlgebra,
    pub letter_map: BTreeMap<L, Elem>,
}

impl<L: Ord + Clone + fmt::Display> Morphism<L> {
    pub fn new(target: FiniteCircleAlgebra, letter_map: BTreeMap<L, Elem>) -> Result<Self, TermError> {
        if let Some((_, &e)) = letter_map.iter().find(|(_, &e)| e >= target.len()) {
            return Err(TermError::UnknownElement(e.to_string()));
        }
        Ok(Morphism { target, letter_map })
    }

    /// Builds the map from `(letter, element name)` pairs.
    pub fn from_names<'a>(
        target: FiniteCircleAlgebra,
        pairs: impl IntoIterator<Item = (L, &'a str)>,
    ) -> Result<Self, TermError> {
        let mut map = BTreeMap::new();
        for (l, name) in pairs {
            let e = target
                .element(name)
                .ok_or_else(|| TermError::UnknownElement(name.to_string()))?;
            map.insert(l, e);
        }
        Ok(Morphism { target, letter_map: map })
    }

    pub fn image(&self, letter: &L) -> Result<Elem, TermError> {
        self.letter_map
            .get(letter)
            .copied()
            .ok_or_else(|| TermError::UnmappedLetter(letter.to_string()))
    }

    pub fn alphabet(&self) -> impl Iterator<Item = &L> {
        self.letter_map.keys()
    }
}

/// A morphism together with an accepting set.
#[derive(Clone, Debug)]
pub struct Recognizer<L = String> {
    pub morphism: Morphism<L>,
    pub accepting: BTreeSet<Elem>,
}

impl<L: Ord + Clone + fmt::Display> Recognizer<L> {
    pub fn new(morphism: Morphism<L>, accepting: BTreeSet<Elem>) -> Result<Self, TermError> {
        if let Some(&e) = accepting.iter().find(|&&e| e >= morphism.target.len()) {
            return Err(TermError::UnknownElement(e.to_string()));
        }
        Ok(Recognizer { morphism, accepting })
    }

    pub fn target(&self) -> &FiniteCircleAlgebra {
        &self.morphism.target
    }

    pub fn accepts(&self, t: &Term<L>) -> Result<bool, TermError> {
        member(t, self)
    }
}

fn shuffle_error(e: AlgebraError) -> TermError {
    match e {
        AlgebraError::ShuffleIncomplete(names) => TermError::ShuffleIncomplete(names),
        other => unreachable!("shuffle lookup failed with {other}"),
    }
}

/// Structural evaluation: concatenation is the product, powers are `ω`/`ω*`
/// and shuffles go through `κ` on the set of child values.
pub fn eval_term<L: Ord + Clone + fmt::Display>(t: &Term<L>, h: &Morphism<L>) -> Result<Elem, TermError> {
    let a = &h.target;
    Ok(match t {
        Term::Empty => a.unit(),
        Term::Letter(l) => h.image(l)?,
        Term::Concat(x, y) => a.mul(eval_term(x, h)?, eval_term(y, h)?),
        Term::OmegaPow(b) => a.omega(eval_term(b, h)?),
        Term::OmegaStarPow(b) => a.omegastar(eval_term(b, h)?),
        Term::Shuffle(cs) => {
            let vals = cs.iter().map(|c| eval_term(c, h)).collect::<Result<Vec<_>, _>>()?;
            a.try_shuffle(&vals).map_err(shuffle_error)?
        }
    })
}

pub fn member<L: Ord + Clone + fmt::Display>(t: &Term<L>, r: &Recognizer<L>) -> Result<bool, TermError> {
    Ok(r.accepting.contains(&eval_term(t, &r.morphism)?))
}

/// Rewrites every power body `s` to `s^k` (a `k`-fold concatenation) so that
/// it evaluates to an idempotent. The denoted word is unchanged up to
/// isomorphism.
pub fn normalize_powers<L: Ord + Clone + fmt::Display>(t: &Term<L>, h: &Morphism<L>) -> Result<Term<L>, TermError> {
    let a = &h.target;
    Ok(match t {
        Term::Empty | Term::Letter(_) => t.clone(),
        Term::Concat(x, y) => Term::concat(normalize_powers(x, h)?, normalize_powers(y, h)?),
        Term::OmegaPow(b) | Term::OmegaStarPow(b) => {
            let body = normalize_powers(b, h)?;
            let k = a.idempotent_exponent(eval_term(&body, h)?);
            let body = Term::concat_all(std::iter::repeat_n(body, k));
            if matches!(t, Term::OmegaPow(_)) {
                Term::omega(body)
            } else {
                Term::omegastar(body)
            }
        }
        Term::Shuffle(cs) => Term::shuffle(cs.iter().map(|c| normalize_powers(c, h)).collect::<Result<_, _>>()?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ShuffleTable;
    use crate::constructions::builtin;
    use crate::terms::parse_term;

    fn gap_morphism(img: &str) -> Morphism {
        Morphism::from_names(builtin::gap(), [("a".to_string(), img)]).unwrap()
    }

    #[test]
    fn gap_example() {
        let h = gap_morphism("lr");
        let t = parse_term("a^w . a^w*").unwrap();
        assert_eq!(h.target.name_of(eval_term(&t, &h).unwrap()), "g");
        assert_eq!(eval_term(&Term::Empty, &h).unwrap(), h.target.unit());
        let r = Recognizer::new(h.clone(), [h.target.element("g").unwrap()].into()).unwrap();
        assert!(member(&t, &r).unwrap());
        assert!(!member(&parse_term("aaa").unwrap(), &r).unwrap());
    }

    #[test]
    fn u1_shuffle() {
        let h = Morphism::from_names(builtin::u1(), [("a".to_string(), "0")]).unwrap();
        assert_eq!(h.target.name_of(eval_term(&parse_term("sh{a}").unwrap(), &h).unwrap()), "0");
    }

    #[test]
    fn unmapped_letter() {
        let h = gap_morphism("lr");
        assert_eq!(
            eval_term(&parse_term("b").unwrap(), &h),
            Err(TermError::UnmappedLetter("b".into()))
        );
    }

    #[test]
    fn incomplete_shuffle_is_reported() {
        let u1 = builtin::u1();
        let partial = FiniteCircleAlgebra::new(
            "partial",
            u1.names().to_vec(),
            0,
            vec![0, 1, 1, 1],
            vec![0, 1],
            vec![0, 1],
            ShuffleTable::Explicit { entries: Default::default(), default: None },
        )
        .unwrap();
        let h = Morphism::from_names(partial, [("a".to_string(), "0")]).unwrap();
        assert_eq!(
            eval_term(&parse_term("sh{a, eps}").unwrap(), &h),
            Err(TermError::ShuffleIncomplete(vec!["0".into()]))
        );
    }

    #[test]
    fn normalization() {
        let h = Morphism::from_names(builtin::u1(), [("a".to_string(), "0")]).unwrap();
        let t = parse_term("a^w").unwrap();
        assert_eq!(normalize_powers(&t, &h).unwrap(), t);

        let z2 = FiniteCircleAlgebra::new(
            "Z2",
            vec!["1".into(), "g".into()],
            0,
            vec![0, 1, 1, 0],
            vec![0, 1],
            vec![0, 1],
            ShuffleTable::constant(1),
        )
        .unwrap();
        let h = Morphism::from_names(z2, [("a".to_string(), "g")]).unwrap();
        assert_eq!(normalize_powers(&t, &h).unwrap(), parse_term("(a a)^w").unwrap());

        let h = Morphism::from_names(builtin::gap(), [("a".to_string(), "lr"), ("b".to_string(), "lr")]).unwrap();
        let t = parse_term("(a b)^w").unwrap();
        assert_eq!(normalize_powers(&t, &h).unwrap(), t);
    }
}
