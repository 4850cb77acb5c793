use std::collections::BTreeSet;

use super::Term;

type Class<L> = BTreeSet<Vec<L>>;

fn epsilon<L: Ord>() -> Class<L> {
    BTreeSet::from([Vec::new()])
}

fn bounded_concat<L: Ord + Clone>(a: &Class<L>, b: &Class<L>, n: usize) -> Class<L> {
    let mut out = BTreeSet::new();
    for u in a {
        for v in b {
            if u.len() + v.len() <= n {
                let mut w = u.clone();
                w.extend(v.iter().cloned());
                out.insert(w);
            }
        }
    }
    out
}

fn bounded_power<L: Ord + Clone>(a: &Class<L>, n: usize) -> Class<L> {
    (0..n).fold(epsilon(), |acc, _| bounded_concat(&acc, a, n))
}

/// Subwords of length at most `n` of the word denoted by `t`.
pub fn subword_class<L: Ord + Clone>(t: &Term<L>, n: usize) -> Class<L> {
    match t {
        Term::Empty => epsilon(),
        Term::Letter(l) => {
            let mut c = epsilon();
            if n >= 1 {
                c.insert(vec![l.clone()]);
            }
            c
        }
        Term::Concat(a, b) => bounded_concat(&subword_class(a, n), &subword_class(b, n), n),
        Term::OmegaPow(b) | Term::OmegaStarPow(b) => bounded_power(&subword_class(b, n), n),
        Term::Shuffle(cs) => {
            let prod = cs
                .iter()
                .fold(epsilon(), |acc, c| bounded_concat(&acc, &subword_class(c, n), n));
            bounded_power(&prod, n)
        }
    }
}

/// Subsequences of length at most `n` of a finite word, by direct
/// enumeration.
pub fn subwords_of_word<L: Ord + Clone>(w: &[L], n: usize) -> Class<L> {
    let mut out = epsilon();
    let mut frontier: Vec<(usize, Vec<L>)> = vec![(0, Vec::new())];
    while let Some((start, u)) = frontier.pop() {
        if u.len() == n {
            continue;
        }
        for (i, x) in w.iter().enumerate().skip(start) {
            let mut v = u.clone();
            v.push(x.clone());
            out.insert(v.clone());
            frontier.push((i + 1, v));
        }
    }
    out
}

fn repeat<L: Clone>(w: &[L], n: usize) -> Vec<L> {
    (0..n).flat_map(|_| w.iter().cloned()).collect()
}

/// A finite subword of `t`'s word with the same subwords of length at most
/// `n`.
pub fn finite_witness<L: Ord + Clone>(t: &Term<L>, n: usize) -> Vec<L> {
    match t {
        Term::Empty => Vec::new(),
        Term::Letter(l) => vec![l.clone()],
        Term::Concat(a, b) => {
            let mut w = finite_witness(a, n);
            w.extend(finite_witness(b, n));
            w
        }
        Term::OmegaPow(b) | Term::OmegaStarPow(b) => repeat(&finite_witness(b, n), n),
        Term::Shuffle(cs) => repeat(&cs.iter().flat_map(|c| finite_witness(c, n)).collect::<Vec<_>>(), n),
    }
}
