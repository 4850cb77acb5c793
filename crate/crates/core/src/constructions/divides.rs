use std::collections::HashMap;

use crate::algebra::{combinations, Elem, FiniteCircleAlgebra};

use super::{generated_subalgebra, ConstructionError};

/// A subalgebra of the divisor together with a surjective morphism onto the
/// divided algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionWitness {
    /// Elements of the divisor forming the subalgebra, sorted.
    pub subalgebra: Vec<Elem>,
    /// `map[i]` is the image of `subalgebra[i]`.
    pub map: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionResult {
    Divides(DivisionWitness),
    DoesNotDivide,
    /// The search budget ran out before a decision.
    Indeterminate(String),
}

impl DivisionResult {
    pub fn divides(&self) -> Option<bool> {
        match self {
            DivisionResult::Divides(_) => Some(true),
            DivisionResult::DoesNotDivide => Some(false),
            DivisionResult::Indeterminate(_) => None,
        }
    }
}

/// A small set of elements generating `a`, chosen greedily in carrier order.
fn generating_set(a: &FiniteCircleAlgebra) -> Result<Vec<Elem>, ConstructionError> {
    let mut gens = Vec::new();
    let mut covered = generated_subalgebra(a, &[])?.embedding;
    for x in a.elements() {
        if covered.binary_search(&x).is_err() {
            gens.push(x);
            covered = generated_subalgebra(a, &gens)?.embedding;
        }
    }
    Ok(gens)
}

const PAIR_LIMIT: usize = 100_000;
const SUBSET_LIMIT: u64 = 1 << 14;

/// Closes `{(b_g, g)}` inside `B × A`. Returns the map on the first
/// component, or `None` if some element of `B` receives two images.
fn close_pairs(
    b: &FiniteCircleAlgebra,
    a: &FiniteCircleAlgebra,
    seeds: &[(Elem, Elem)],
) -> Result<Option<HashMap<Elem, Elem>>, String> {
    let mut items: Vec<(Elem, Elem)> = vec![(b.unit(), a.unit())];
    let mut map: HashMap<Elem, Elem> = HashMap::from([(b.unit(), a.unit())]);
    let mut push = |p: (Elem, Elem), items: &mut Vec<(Elem, Elem)>| -> Option<bool> {
        match map.get(&p.0) {
            Some(&img) if img != p.1 => None,
            Some(_) => Some(false),
            None => {
                map.insert(p.0, p.1);
                items.push(p);
                Some(true)
            }
        }
    };
    for &s in seeds {
        if push(s, &mut items).is_none() {
            return Ok(None);
        }
    }
    let mut k = 0;
    loop {
        while k < items.len() {
            let (x, y) = items[k];
            let mut new = vec![(b.omega(x), a.omega(y)), (b.omegastar(x), a.omegastar(y))];
            for &(u, v) in &items[..=k] {
                new.push((b.mul(x, u), a.mul(y, v)));
                new.push((b.mul(u, x), a.mul(v, y)));
            }
            for p in new {
                if push(p, &mut items).is_none() {
                    return Ok(None);
                }
            }
            if items.len() > PAIR_LIMIT {
                return Err("pair closure exceeded its budget".into());
            }
            k += 1;
        }
        let others: Vec<usize> = (0..items.len()).filter(|&i| items[i].0 != b.unit()).collect();
        if others.len() >= 63 || (1u64 << others.len()) > SUBSET_LIMIT {
            return Err("too many subsets for the shuffle closure".into());
        }
        let mut found = Vec::new();
        for size in 1..=others.len() {
            combinations(&others, size, &mut |s| {
                let xs: Vec<Elem> = s.iter().map(|&i| items[i].0).collect();
                let ys: Vec<Elem> = s.iter().map(|&i| items[i].1).collect();
                if let (Some(x), Some(y)) = (b.shuffle(&xs), a.shuffle(&ys)) {
                    found.push((x, y));
                }
            });
        }
        let before = items.len();
        for p in found {
            if push(p, &mut items).is_none() {
                return Ok(None);
            }
        }
        if items.len() == before {
            return Ok(Some(map));
        }
    }
}

pub fn divides(a: &FiniteCircleAlgebra, b: &FiniteCircleAlgebra) -> DivisionResult {
    divides_with(a, b, 1 << 20)
}

/// Whether `a` divides `b`: some subalgebra of `b` maps onto `a`. Every
/// choice of preimages for a generating set of `a` is tried (at most
/// `assignment_budget` of them) and the smallest witness is kept.
pub fn divides_with(a: &FiniteCircleAlgebra, b: &FiniteCircleAlgebra, assignment_budget: u64) -> DivisionResult {
    if a.len() > b.len() {
        return DivisionResult::DoesNotDivide;
    }
    let gens = match generating_set(a) {
        Ok(g) => g,
        Err(e) => return DivisionResult::Indeterminate(e.to_string()),
    };
    let total = (b.len() as u64).checked_pow(gens.len() as u32);
    if total.is_none_or(|t| t > assignment_budget) {
        return DivisionResult::Indeterminate(format!(
            "{} generators over {} candidates exceed the budget",
            gens.len(),
            b.len()
        ));
    }
    let mut choice = vec![0usize; gens.len()];
    let mut best: Option<DivisionWitness> = None;
    loop {
        let seeds: Vec<(Elem, Elem)> = choice.iter().copied().zip(gens.iter().copied()).collect();
        match close_pairs(b, a, &seeds) {
            Err(why) => return DivisionResult::Indeterminate(why),
            Ok(Some(map)) => {
                let mut image: Vec<Elem> = map.values().copied().collect();
                image.sort_unstable();
                image.dedup();
                if image.len() == a.len() && best.as_ref().is_none_or(|w| map.len() < w.subalgebra.len()) {
                    let mut subalgebra: Vec<Elem> = map.keys().copied().collect();
                    subalgebra.sort_unstable();
                    let images = subalgebra.iter().map(|x| map[x]).collect();
                    best = Some(DivisionWitness { subalgebra, map: images });
                }
            }
            Ok(None) => {}
        }
        if !advance(&mut choice, b.len()) {
            break;
        }
    }
    match best {
        Some(w) => DivisionResult::Divides(w),
        None => DivisionResult::DoesNotDivide,
    }
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
