use std::sync::Arc;

use crate::algebra::{combinations, Elem, FiniteCircleAlgebra, ShuffleOracle, ShuffleTable};

use super::{element_budget, Closure, ConstructionError};

/// A subalgebra together with its embedding into the parent.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub algebra: FiniteCircleAlgebra,
    /// `embedding[i]` is the parent element of sub-element `i`.
    pub embedding: Vec<Elem>,
}

impl Subalgebra {
    pub fn to_parent(&self, x: Elem) -> Elem {
        self.embedding[x]
    }

    pub fn from_parent(&self, p: Elem) -> Option<Elem> {
        self.embedding.binary_search(&p).ok()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SubalgebraOptions {
    /// Also close under shuffles of subsets of the carrier built so far.
    pub shuffle_closure: bool,
    pub element_budget: usize,
    /// Largest number of subsets scanned in one shuffle-closure round.
    pub subset_budget: u64,
}

impl Default for SubalgebraOptions {
    fn default() -> Self {
        SubalgebraOptions {
            shuffle_closure: true,
            element_budget: element_budget(),
            subset_budget: 1 << 16,
        }
    }
}

#[derive(Debug)]
struct Restricted {
    parent: Arc<FiniteCircleAlgebra>,
    embedding: Vec<Elem>,
}

impl ShuffleOracle for Restricted {
    fn shuffle(&self, subset: &[Elem]) -> Option<Elem> {
        let mapped: Vec<Elem> = subset.iter().map(|&e| self.embedding[e]).collect();
        let v = self.parent.shuffle(&mapped)?;
        self.embedding.binary_search(&v).ok()
    }
}

/// The subalgebra on `elements` (plus the unit), which must be closed under
/// `·`, `ω` and `ω*`. Shuffles whose value leaves the set are undefined.
pub fn restrict(alg: &FiniteCircleAlgebra, elements: &[Elem]) -> Result<Subalgebra, ConstructionError> {
    let mut emb: Vec<Elem> = elements.to_vec();
    emb.push(alg.unit());
    emb.sort_unstable();
    emb.dedup();
    if let Some(&bad) = emb.iter().find(|&&e| e >= alg.len()) {
        return Err(ConstructionError::NotAnElement(bad));
    }
    let pos = |p: Elem| {
        emb.binary_search(&p)
            .map_err(|_| ConstructionError::InvalidParameter(format!("set is not closed: reaches `{}`", alg.name_of(p))))
    };
    let n = emb.len();
    let mut product = Vec::with_capacity(n * n);
    for &x in &emb {
        for &y in &emb {
            product.push(pos(alg.mul(x, y))?);
        }
    }
    let omega = emb.iter().map(|&x| pos(alg.omega(x))).collect::<Result<Vec<_>, _>>()?;
    let omegastar = emb.iter().map(|&x| pos(alg.omegastar(x))).collect::<Result<Vec<_>, _>>()?;
    let names = emb.iter().map(|&x| alg.name_of(x).to_string()).collect();
    let oracle = Restricted {
        parent: Arc::new(alg.clone()),
        embedding: emb.clone(),
    };
    let algebra = FiniteCircleAlgebra::new(
        format!("{}|sub", alg.name()),
        names,
        pos(alg.unit())?,
        product,
        omega,
        omegastar,
        ShuffleTable::Derived(Arc::new(oracle)),
    )?;
    Ok(Subalgebra { algebra, embedding: emb })
}

pub fn generated_subalgebra(alg: &FiniteCircleAlgebra, gens: &[Elem]) -> Result<Subalgebra, ConstructionError> {
    generated_subalgebra_with(alg, gens, &SubalgebraOptions::default())
}

/// Least subset containing `gens` and the unit closed under `·`, `ω`, `ω*`
/// and, when requested, shuffles of its own subsets.
pub fn generated_subalgebra_with(
    alg: &FiniteCircleAlgebra,
    gens: &[Elem],
    opts: &SubalgebraOptions,
) -> Result<Subalgebra, ConstructionError> {
    const WHAT: &str = "generated subalgebra";
    let limit = opts.element_budget;
    let mut cl: Closure<Elem> = Closure::new();
    cl.insert(alg.unit(), limit, WHAT)?;
    for &g in gens {
        if g >= alg.len() {
            return Err(ConstructionError::NotAnElement(g));
        }
        cl.insert(g, limit, WHAT)?;
    }
    let omega = |x: &Elem| alg.omega(*x);
    let omegastar = |x: &Elem| alg.omegastar(*x);
    let mul = |x: &Elem, y: &Elem| alg.mul(*x, *y);
    loop {
        cl.close(&[&omega, &omegastar], &mul, limit, WHAT)?;
        if !opts.shuffle_closure {
            break;
        }
        let others: Vec<Elem> = cl.items.iter().copied().filter(|&e| e != alg.unit()).collect();
        if others.len() >= 63 || (1u64 << others.len()) > opts.subset_budget {
            return Err(ConstructionError::Budget {
                what: "shuffle closure",
                reached: cl.len(),
                limit: opts.subset_budget as usize,
            });
        }
        let mut found = Vec::new();
        for size in 1..=others.len() {
            combinations(&others, size, &mut |s| {
                if let Some(v) = alg.shuffle(s) {
                    if !cl.index.contains_key(&v) {
                        found.push(v);
                    }
                }
            });
        }
        if found.is_empty() {
            break;
        }
        for v in found {
            cl.insert(v, limit, WHAT)?;
        }
    }
    restrict(alg, &cl.items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_identity, validate_axioms, IdentityTag};
    use crate::constructions::{builtin, direct_product};

    #[test]
    fn gap_from_lr_is_everything() {
        let gap = builtin::gap();
        let s = generated_subalgebra(&gap, &[gap.element("lr").unwrap()]).unwrap();
        assert_eq!(s.algebra.len(), 6);
        assert!(validate_axioms(&s.algebra).passed());
    }

    #[test]
    fn unit_generates_unit() {
        let d = builtin::delta(2);
        let s = generated_subalgebra(&d, &[d.unit()]).unwrap();
        assert_eq!(s.algebra.names(), ["unit"]);
    }

    #[test]
    fn u1_squared_single_generator() {
        let p = direct_product(&builtin::u1(), &builtin::u1());
        let s = generated_subalgebra(&p, &[p.element("(0,1)").unwrap()]).unwrap();
        assert_eq!(s.algebra.names(), ["(1,1)", "(0,1)"]);
    }

    #[test]
    fn closure_without_shuffles() {
        let d = builtin::delta(3);
        let zero = d.element("0").unwrap();
        let s = generated_subalgebra_with(
            &d,
            &[zero],
            &SubalgebraOptions { shuffle_closure: false, ..Default::default() },
        )
        .unwrap();
        assert_eq!(s.algebra.len(), 5);
        let t = restrict(&d, &[zero]).unwrap_err();
        assert!(matches!(t, ConstructionError::InvalidParameter(_)));
    }

    #[test]
    fn restriction_keeps_identities() {
        let d = builtin::delta(3);
        let sub = restrict(&d, &[d.element("2").unwrap(), d.element("3").unwrap()]).unwrap();
        assert!(validate_axioms(&sub.algebra).passed());
        assert!(check_identity(&sub.algebra, IdentityTag::GapInsensitive(1)).passed());
        assert_eq!(sub.from_parent(d.element("3").unwrap()), Some(2));
    }
}
