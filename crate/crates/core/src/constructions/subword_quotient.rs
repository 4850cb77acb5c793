//! `S_n(Σ)`: countable words over `Σ` up to their subwords of length at most
//! `n`.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::algebra::{Elem, FiniteCircleAlgebra, ShuffleOracle, ShuffleTable};
use crate::terms::{subword_class, Morphism, Term};

use super::{element_budget, Closure, ConstructionError};

/// A finite word as letter indices into the alphabet.
pub type Word = Vec<usize>;

/// A subword-closed set of words, kept sorted.
type Class = Vec<Word>;

fn concat(a: &Class, b: &Class, n: usize) -> Class {
    let mut out = BTreeSet::new();
    for u in a {
        for v in b {
            if u.len() + v.len() <= n {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.insert(w);
            }
        }
    }
    out.into_iter().collect()
}

fn power(a: &Class, n: usize) -> Class {
    (0..n).fold(vec![Vec::new()], |acc, _| concat(&acc, a, n))
}

fn shuffle_class(parts: &[&Class], n: usize) -> Class {
    let prod = parts.iter().fold(vec![Vec::new()], |acc, c| concat(&acc, c, n));
    power(&prod, n)
}

#[derive(Debug)]
struct SnOracle {
    n: usize,
    classes: Arc<Vec<Class>>,
    index: Arc<HashMap<Class, Elem>>,
}

impl ShuffleOracle for SnOracle {
    fn shuffle(&self, subset: &[Elem]) -> Option<Elem> {
        let parts: Vec<&Class> = subset.iter().map(|&i| &self.classes[i]).collect();
        self.index.get(&shuffle_class(&parts, self.n)).copied()
    }
}

#[derive(Clone, Debug)]
pub struct SubwordQuotient {
    pub algebra: FiniteCircleAlgebra,
    pub alphabet: Vec<String>,
    pub n: usize,
    classes: Arc<Vec<Class>>,
    index: Arc<HashMap<Class, Elem>>,
    witnesses: Vec<Word>,
}

impl SubwordQuotient {
    /// Words of the class of element `x`, as letter strings.
    pub fn class(&self, x: Elem) -> BTreeSet<Vec<String>> {
        self.classes[x].iter().map(|w| self.spell(w)).collect()
    }

    /// A finite word in the class of `x`.
    pub fn witness(&self, x: Elem) -> Vec<String> {
        self.spell(&self.witnesses[x])
    }

    fn spell(&self, w: &Word) -> Vec<String> {
        w.iter().map(|&i| self.alphabet[i].clone()).collect()
    }

    /// The element whose class is `class`, if any.
    pub fn element_of(&self, class: &BTreeSet<Vec<String>>) -> Option<Elem> {
        let pos: HashMap<&str, usize> = self.alphabet.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();
        let mut c: Class = Vec::new();
        for w in class {
            c.push(w.iter().map(|l| pos.get(l.as_str()).copied()).collect::<Option<Word>>()?);
        }
        c.sort();
        self.index.get(&c).copied()
    }

    /// Element of the class of `t` computed from its subwords.
    pub fn class_of_term(&self, t: &Term) -> Option<Elem> {
        self.element_of(&subword_class(t, self.n))
    }

    /// The quotient morphism `a ↦ [a]`.
    pub fn morphism(&self) -> Morphism {
        let letter_map: BTreeMap<String, Elem> = self
            .alphabet
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i + 1))
            .collect();
        Morphism {
            target: self.algebra.clone(),
            letter_map,
        }
    }
}

pub fn build_sn(alphabet: &[String], n: usize) -> Result<SubwordQuotient, ConstructionError> {
    build_sn_with(alphabet, n, element_budget())
}

/// Closes `{[ε], [a] : a ∈ Σ}` under product, `ω`, `ω*` and shuffle. The
/// unit comes first, then the letters in alphabet order.
pub fn build_sn_with(alphabet: &[String], n: usize, limit: usize) -> Result<SubwordQuotient, ConstructionError> {
    const WHAT: &str = "subword quotient";
    let mut sigma: Vec<String> = alphabet.to_vec();
    sigma.sort();
    sigma.dedup();
    if sigma.len() != alphabet.len() {
        return Err(ConstructionError::InvalidParameter("alphabet has repeated letters".into()));
    }
    let sigma = alphabet.to_vec();
    let witnesses: RefCell<HashMap<Class, Word>> = RefCell::new(HashMap::new());
    let mut cl: Closure<Class> = Closure::new();
    let eps: Class = vec![Vec::new()];
    witnesses.borrow_mut().insert(eps.clone(), Vec::new());
    cl.insert(eps, limit, WHAT)?;
    for i in 0..sigma.len() {
        let c: Class = if n == 0 { vec![Vec::new()] } else { vec![Vec::new(), vec![i]] };
        witnesses.borrow_mut().entry(c.clone()).or_insert_with(|| vec![i]);
        let idx = cl.insert(c, limit, WHAT)?;
        if idx != i + 1 {
            return Err(ConstructionError::InvalidParameter(
                "with n = 0 letters collapse onto the unit".into(),
            ));
        }
    }
    let record = |c: Class, w: Word| {
        witnesses.borrow_mut().entry(c.clone()).or_insert(w);
        c
    };
    let wit = |c: &Class| witnesses.borrow()[c].clone();
    let pow = |c: &Class| record(power(c, n), wit(c).repeat(n));
    let mul = |a: &Class, b: &Class| {
        let mut w = wit(a);
        w.extend(wit(b));
        record(concat(a, b, n), w)
    };
    // A shuffle class is the n-th power of a product of classes, so closing
    // under product and power already closes under shuffle.
    cl.close(&[&pow, &pow], &mul, limit, WHAT)?;
    let witnesses = witnesses.into_inner();
    let wits: Vec<Word> = cl.items.iter().map(|c| witnesses[c].clone()).collect();
    let single_chars = sigma.iter().all(|a| a.chars().count() == 1);
    let names = wits
        .iter()
        .map(|w| {
            if w.is_empty() {
                "eps".to_string()
            } else {
                let letters: Vec<&str> = w.iter().map(|&i| sigma[i].as_str()).collect();
                letters.join(if single_chars { "" } else { " " })
            }
        })
        .collect();
    let product = cl.product_table();
    let omega = cl.unary_table(0);
    let omegastar = cl.unary_table(1);
    let classes = Arc::new(cl.items);
    let index = Arc::new(cl.index);
    let oracle = SnOracle {
        n,
        classes: classes.clone(),
        index: index.clone(),
    };
    let algebra = FiniteCircleAlgebra::new(
        format!("S{n}"),
        names,
        0,
        product,
        omega,
        omegastar,
        ShuffleTable::Derived(Arc::new(oracle)),
    )?;
    Ok(SubwordQuotient {
        algebra,
        alphabet: sigma,
        n,
        classes,
        index,
        witnesses: wits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_identity, green_data, validate_axioms, IdentityTag};
    use crate::constructions::{builtin, find_isomorphism};
    use crate::terms::{eval_term, parse_term, subwords_of_word};

    fn abc(s: &str) -> Vec<String> {
        s.chars().map(|c| c.to_string()).collect()
    }

    #[test]
    fn single_letter() {
        let s1 = build_sn(&abc("a"), 1).unwrap();
        assert_eq!(s1.algebra.len(), 2);
        assert!(find_isomorphism(&s1.algebra, &builtin::u1()).is_some());
        let s2 = build_sn(&abc("a"), 2).unwrap();
        assert_eq!(s2.algebra.names(), ["eps", "a", "aa"]);
        let a = s2.algebra.element("a").unwrap();
        assert_eq!(s2.algebra.name_of(s2.algebra.omega(a)), "aa");
    }

    #[test]
    fn two_letters_level_two() {
        let s = build_sn(&abc("ab"), 2).unwrap();
        assert_eq!(s.algebra.len(), 16);
        let ab = s.class_of_term(&parse_term("ab").unwrap()).unwrap();
        assert_eq!(s.class(ab), [vec![], abc("a"), abc("b"), abc("ab")].into_iter().collect());
        assert!(validate_axioms(&s.algebra).passed());
        assert!(green_data(&s.algebra).is_j_trivial());
        assert!(check_identity(&s.algebra, IdentityTag::ShufflePowerTrivial).passed());
    }

    #[test]
    fn witnesses_realize_classes() {
        let s = build_sn(&abc("ab"), 2).unwrap();
        for x in s.algebra.elements() {
            let w = s.witness(x);
            assert_eq!(subwords_of_word(&w, 2), s.class(x), "{}", s.algebra.name_of(x));
        }
    }

    #[test]
    fn morphism_agrees_with_subword_classes() {
        let s = build_sn(&abc("ab"), 2).unwrap();
        let h = s.morphism();
        for t in ["a^w b", "sh{a, b^w}", "(a b)^w*", "b a", "eps", "(b^w a)^w"] {
            let t = parse_term(t).unwrap();
            assert_eq!(Some(eval_term(&t, &h).unwrap()), s.class_of_term(&t), "{t}");
        }
    }

    #[test]
    fn rejects_repeated_letters() {
        assert!(build_sn(&abc("aa"), 1).is_err());
    }

    #[test]
    fn level_three_shuffles_stay_inside() {
        let s = build_sn(&abc("ab"), 3).unwrap();
        let others = s.algebra.non_units();
        for i in 0..others.len() {
            for j in i..others.len() {
                let subset = [others[i], others[j]];
                assert!(s.algebra.shuffle(&subset).is_some(), "{subset:?}");
            }
        }
        assert!(s.algebra.shuffle(&others).is_some());
    }
}
