#![allow(dead_code)]

use clo_core::terms::Term;
use rand::Rng;

/// A random term over `letters` of depth at most `depth`.
pub fn random_term<R: Rng>(rng: &mut R, depth: usize, letters: &[&str], shuffles: bool) -> Term {
    let leaf = |rng: &mut R| {
        if rng.gen_ratio(1, 12) {
            Term::Empty
        } else {
            Term::letter(letters[rng.gen_range(0..letters.len())])
        }
    };
    if depth <= 1 || rng.gen_ratio(1, 4) {
        return leaf(rng);
    }
    let kinds = if shuffles { 4 } else { 3 };
    match rng.gen_range(0..kinds) {
        0 => Term::concat(
            random_term(rng, depth - 1, letters, shuffles),
            random_term(rng, depth - 1, letters, shuffles),
        ),
        1 => Term::omega(random_term(rng, depth - 1, letters, shuffles)),
        2 => Term::omegastar(random_term(rng, depth - 1, letters, shuffles)),
        _ => {
            let k = rng.gen_range(1..=3);
            Term::shuffle((0..k).map(|_| random_term(rng, depth - 1, letters, shuffles)).collect())
        }
    }
}

/// All words over `alphabet` with length in `lengths`, shortest first.
pub fn words(alphabet: &[&str], lengths: std::ops::RangeInclusive<usize>) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<String>> = vec![Vec::new()];
    for len in 0..=*lengths.end() {
        if lengths.contains(&len) {
            out.extend(layer.iter().cloned());
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |a| {
                    let mut v = w.clone();
                    v.push(a.to_string());
                    v
                })
            })
            .collect();
    }
    out
}

pub fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}
