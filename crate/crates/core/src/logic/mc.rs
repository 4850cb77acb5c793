//! Reference model checkers.

use std::collections::{BTreeMap, BTreeSet};

use super::{fragment_of, Formula, LogicError, Quantifier};
use crate::terms::{directed_rank_of, rank_of, Direction, Term};

/// Variable assignment: variable to position.
pub type Assignment = BTreeMap<String, usize>;

/// Truth of `phi` on the finite word `w` under `assignment`, by recursion
/// over positions. Rank and `ω`/`ω*` quantifiers of level 0 act as `∃`;
/// higher levels are false since finite sets have rank 0.
pub fn mc_finite<S: AsRef<str>>(w: &[S], phi: &Formula, assignment: &Assignment) -> Result<bool, LogicError> {
    for x in phi.free_vars() {
        match assignment.get(&x) {
            None => return Err(LogicError::Unassigned(x)),
            Some(&p) if p >= w.len() => {
                return Err(LogicError::PositionOutOfRange { var: x, position: p });
            }
            Some(_) => {}
        }
    }
    let word: Vec<&str> = w.iter().map(|s| s.as_ref()).collect();
    let mut s = assignment.clone();
    Ok(check(&word, phi, &mut s))
}

fn check(w: &[&str], phi: &Formula, s: &mut Assignment) -> bool {
    match phi {
        Formula::Letter(a, x) => w[s[x]] == a,
        Formula::Less(x, y) => s[x] < s[y],
        Formula::Not(g) => !check(w, g, s),
        Formula::And(a, b) => check(w, a, s) && check(w, b, s),
        Formula::Or(a, b) => check(w, a, s) || check(w, b, s),
        Formula::Quant(q, x, body) => {
            if !q.is_plain() {
                return false;
            }
            let saved = s.get(x).copied();
            let mut found = false;
            for p in 0..w.len() {
                s.insert(x.clone(), p);
                if check(w, body, s) {
                    found = true;
                    break;
                }
            }
            match saved {
                Some(p) => s.insert(x.clone(), p),
                None => s.remove(x),
            };
            found
        }
    }
}

/// Truth of the one-variable sentence `phi` on the countable word `t`. Each
/// quantified subsentence selects a set `A` of letters, and is decided by
/// the rank (or directed rank) of the `A`-positions of `t`.
pub fn mc_term_onevar(t: &Term, phi: &Formula) -> Result<bool, LogicError> {
    if let Some(x) = phi.free_vars().into_iter().next() {
        return Err(LogicError::FreeVariable(x));
    }
    if !fragment_of(phi).one_variable {
        return Err(LogicError::NotOneVariable);
    }
    let mut letters = t.letters();
    letters.extend(phi.letters());
    Ok(onevar(t, phi, &letters))
}

/// Letters at which the quantifier-free one-variable `body` holds.
pub(crate) fn selected_letters(body: &Formula, letters: &BTreeSet<String>) -> BTreeSet<String> {
    letters.iter().filter(|a| local(body, a)).cloned().collect()
}

fn local(f: &Formula, letter: &str) -> bool {
    match f {
        Formula::Letter(a, _) => a == letter,
        // Only one variable is live, so this is `x < x`.
        Formula::Less(..) => false,
        Formula::Not(g) => !local(g, letter),
        Formula::And(a, b) => local(a, letter) && local(b, letter),
        Formula::Or(a, b) => local(a, letter) || local(b, letter),
        Formula::Quant(..) => unreachable!("nested quantifier in a one-variable sentence"),
    }
}

fn onevar(t: &Term, phi: &Formula, letters: &BTreeSet<String>) -> bool {
    match phi {
        Formula::Not(g) => !onevar(t, g, letters),
        Formula::And(a, b) => onevar(t, a, letters) && onevar(t, b, letters),
        Formula::Or(a, b) => onevar(t, a, letters) || onevar(t, b, letters),
        Formula::Quant(q, _, body) => {
            let set = selected_letters(body, letters);
            match *q {
                Quantifier::Exists => rank_of(t, &set).at_least(0),
                Quantifier::Rank(k) => rank_of(t, &set).at_least(k),
                Quantifier::OmegaRank(k) => directed_rank_of(t, &set, Direction::Omega).at_least(k),
                Quantifier::OmegaStarRank(k) => directed_rank_of(t, &set, Direction::OmegaStar).at_least(k),
            }
        }
        Formula::Letter(..) | Formula::Less(..) => unreachable!("atom outside a quantifier in a sentence"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use crate::terms::parse_term;

    fn w(s: &str) -> Vec<String> {
        s.chars().map(|c| c.to_string()).collect()
    }

    fn holds(word: &str, f: &str) -> bool {
        mc_finite(&w(word), &parse_formula(f).unwrap(), &Assignment::new()).unwrap()
    }

    #[test]
    fn finite_examples() {
        let f = "E x. E y. (a(x) & b(y) & x<y)";
        assert!(holds("ab", f));
        assert!(!holds("ba", f));
        assert!(holds("aaa", "E x. a(x)"));
        for word in ["", "a", "aaaa", "abab"] {
            assert!(!holds(word, "EI[1] x. a(x)"));
            assert!(!holds(word, "EW[1] x. a(x)"));
            assert_eq!(holds(word, "EI[0] x. a(x)"), word.contains('a'));
        }
    }

    #[test]
    fn finite_matches_pair_enumeration() {
        let f = parse_formula("E x. E y. (a(x) & b(y) & x<y)").unwrap();
        for n in 0..=4 {
            for bits in 0..(1u32 << n) {
                let word: Vec<String> = (0..n).map(|i| if bits >> i & 1 == 1 { "b" } else { "a" }.to_string()).collect();
                let expect = (0..n).any(|i| (i + 1..n).any(|j| word[i] == "a" && word[j] == "b"));
                assert_eq!(mc_finite(&word, &f, &Assignment::new()).unwrap(), expect);
            }
        }
    }

    #[test]
    fn free_variables_need_positions() {
        let f = parse_formula("a(x)").unwrap();
        assert!(matches!(mc_finite(&w("ab"), &f, &Assignment::new()), Err(LogicError::Unassigned(_))));
        let s = Assignment::from([("x".to_string(), 1)]);
        assert!(!mc_finite(&w("ab"), &f, &s).unwrap());
        let s = Assignment::from([("x".to_string(), 5)]);
        assert!(mc_finite(&w("ab"), &f, &s).is_err());
    }

    fn on_term(t: &str, f: &str) -> bool {
        mc_term_onevar(&parse_term(t).unwrap(), &parse_formula(f).unwrap()).unwrap()
    }

    #[test]
    fn term_examples() {
        assert!(on_term("(a^w)^w", "EI[2] x. a(x)"));
        assert!(!on_term("(a^w)^w", "EI[3] x. a(x)"));
        assert!(on_term("sh{a,b}", "EI[5] x. a(x)"));
        assert!(on_term("b^w", "E x. ~a(x)"));
        assert!(!on_term("a^w", "E x. ~a(x)"));
        assert!(on_term("(a^w b)^w", "EW[2] x. a(x) | b(x)"));
        assert!(!on_term("(a^w)^w*", "EW[2] x. a(x)"));
        assert!(on_term("(a^w)^w*", "EWS[1] x. a(x)"));
    }

    #[test]
    fn term_errors() {
        let t = parse_term("ab").unwrap();
        let f = parse_formula("E x. E y. x<y").unwrap();
        assert_eq!(mc_term_onevar(&t, &f), Err(LogicError::NotOneVariable));
        let g = parse_formula("a(x)").unwrap();
        assert!(matches!(mc_term_onevar(&t, &g), Err(LogicError::FreeVariable(_))));
    }

    #[test]
    fn term_agrees_with_finite_on_words() {
        for f in ["E x. a(x)", "(E x. a(x)) & ~(E x. b(x))", "EI[1] x. a(x)", "~(E x. a(x) & ~b(x))"] {
            let phi = parse_formula(f).unwrap();
            for word in ["", "a", "b", "ab", "bba", "c"] {
                let t = Term::word(&w(word));
                assert_eq!(
                    mc_term_onevar(&t, &phi).unwrap(),
                    mc_finite(&w(word), &phi, &Assignment::new()).unwrap(),
                    "{f} on {word:?}"
                );
            }
        }
    }
}
