use std::sync::Arc;

use crate::algebra::{Elem, FiniteCircleAlgebra, ShuffleOracle, ShuffleTable};

#[derive(Debug)]
struct Componentwise {
    left: Arc<FiniteCircleAlgebra>,
    right: Arc<FiniteCircleAlgebra>,
}

impl ShuffleOracle for Componentwise {
    fn shuffle(&self, subset: &[Elem]) -> Option<Elem> {
        let nb = self.right.len();
        let xs: Vec<Elem> = subset.iter().map(|&e| e / nb).collect();
        let ys: Vec<Elem> = subset.iter().map(|&e| e % nb).collect();
        Some(self.left.shuffle(&xs)? * nb + self.right.shuffle(&ys)?)
    }
}

/// `A × B` with componentwise operations. The pair `(x, y)` has index
/// `x·|B| + y`.
pub fn direct_product(a: &FiniteCircleAlgebra, b: &FiniteCircleAlgebra) -> FiniteCircleAlgebra {
    let nb = b.len();
    let pair = |x: Elem, y: Elem| x * nb + y;
    let n = a.len() * nb;
    let split = |p: Elem| (p / nb, p % nb);
    let names = (0..n)
        .map(|p| {
            let (x, y) = split(p);
            format!("({},{})", a.name_of(x), b.name_of(y))
        })
        .collect();
    let mut product = Vec::with_capacity(n * n);
    for p in 0..n {
        let (x1, y1) = split(p);
        for q in 0..n {
            let (x2, y2) = split(q);
            product.push(pair(a.mul(x1, x2), b.mul(y1, y2)));
        }
    }
    let omega = (0..n).map(|p| pair(a.omega(p / nb), b.omega(p % nb))).collect();
    let omegastar = (0..n).map(|p| pair(a.omegastar(p / nb), b.omegastar(p % nb))).collect();
    let oracle = Componentwise {
        left: Arc::new(a.clone()),
        right: Arc::new(b.clone()),
    };
    FiniteCircleAlgebra::new(
        format!("{}x{}", a.name(), b.name()),
        names,
        pair(a.unit(), b.unit()),
        product,
        omega,
        omegastar,
        ShuffleTable::Derived(Arc::new(oracle)),
    )
    .expect("product tables are well-formed")
}

/// Left-nested product of a nonempty list; the trivial algebra for an empty
/// list.
pub fn direct_product_all(factors: &[FiniteCircleAlgebra]) -> FiniteCircleAlgebra {
    match factors.split_first() {
        None => super::builtin::trivial(),
        Some((first, rest)) => rest.iter().fold(first.clone(), |acc, f| direct_product(&acc, f)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_identity, gnl, validate_axioms, IdentityTag};
    use crate::constructions::builtin;

    #[test]
    fn u1_squared() {
        let p = direct_product(&builtin::u1(), &builtin::u1());
        assert_eq!(p.len(), 4);
        assert_eq!(p.name_of(p.unit()), "(1,1)");
        let s = p.shuffle(&[p.element("(0,1)").unwrap(), p.element("(1,0)").unwrap()]).unwrap();
        assert_eq!(p.name_of(s), "(0,0)");
        assert!(validate_axioms(&p).passed());
    }

    #[test]
    fn gnl_is_componentwise_max() {
        let p = direct_product(&builtin::delta(1), &builtin::delta(2));
        assert_eq!(gnl(&p).unwrap(), 2);
        let q = direct_product(&builtin::gap(), &builtin::u1());
        assert!(validate_axioms(&q).passed());
        assert_eq!(gnl(&q).unwrap(), 1);
    }

    #[test]
    fn identities_preserved() {
        let cat = [builtin::u1(), builtin::delta(1), builtin::gap(), builtin::omega_chain(1)];
        for a in &cat {
            for b in &cat {
                let p = direct_product(a, b);
                for tag in IdentityTag::BASIC.into_iter().chain([IdentityTag::GapInsensitive(1)]) {
                    if check_identity(a, tag).passed() && check_identity(b, tag).passed() {
                        assert!(check_identity(&p, tag).passed(), "{tag} on {}", p.name());
                    }
                }
            }
        }
    }

    #[test]
    fn empty_product_is_trivial() {
        assert_eq!(direct_product_all(&[]).len(), 1);
        assert_eq!(direct_product_all(&[builtin::u1(), builtin::u1(), builtin::u1()]).len(), 8);
    }
}
