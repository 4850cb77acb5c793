use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::algebra::{combinations, Elem, FiniteCircleAlgebra, ShuffleOracle, ShuffleTable};
use crate::terms::{Morphism, Recognizer};

use super::{generated_subalgebra, ConstructionError};

/// A quotient algebra with the projection onto it.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: FiniteCircleAlgebra,
    /// Class of every element of the original algebra.
    pub projection: Vec<Elem>,
    /// Representative of every class.
    pub representatives: Vec<Elem>,
}

#[derive(Debug)]
struct ViaRepresentatives {
    parent: Arc<FiniteCircleAlgebra>,
    projection: Vec<Elem>,
    representatives: Vec<Elem>,
}

impl ShuffleOracle for ViaRepresentatives {
    fn shuffle(&self, subset: &[Elem]) -> Option<Elem> {
        let reps: Vec<Elem> = subset.iter().map(|&c| self.representatives[c]).collect();
        self.parent.shuffle(&reps).map(|v| self.projection[v])
    }
}

/// Quotient by the equivalence with `class[x]` as the label of `x`. Labels
/// are renumbered by first occurrence. The equivalence must be compatible
/// with `·`, `ω` and `ω*`; the shuffle is computed on representatives.
pub fn quotient(alg: &FiniteCircleAlgebra, class: &[usize]) -> Result<Quotient, ConstructionError> {
    if class.len() != alg.len() {
        return Err(ConstructionError::InvalidParameter(format!(
            "expected {} class labels, got {}",
            alg.len(),
            class.len()
        )));
    }
    let mut renumber: HashMap<usize, Elem> = HashMap::new();
    let mut representatives = Vec::new();
    let projection: Vec<Elem> = alg
        .elements()
        .map(|x| {
            *renumber.entry(class[x]).or_insert_with(|| {
                representatives.push(x);
                representatives.len() - 1
            })
        })
        .collect();
    let k = representatives.len();
    let incompatible = |what: &str, x: Elem, y: Elem| {
        ConstructionError::InvalidParameter(format!(
            "not a congruence: `{}` and `{}` differ under {what}",
            alg.name_of(x),
            alg.name_of(y)
        ))
    };
    for x in alg.elements() {
        let r = representatives[projection[x]];
        if projection[alg.omega(x)] != projection[alg.omega(r)] {
            return Err(incompatible("omega", x, r));
        }
        if projection[alg.omegastar(x)] != projection[alg.omegastar(r)] {
            return Err(incompatible("omegastar", x, r));
        }
        for z in alg.elements() {
            if projection[alg.mul(x, z)] != projection[alg.mul(r, z)]
                || projection[alg.mul(z, x)] != projection[alg.mul(z, r)]
            {
                return Err(incompatible("product", x, r));
            }
        }
    }
    let mut product = Vec::with_capacity(k * k);
    for &x in &representatives {
        for &y in &representatives {
            product.push(projection[alg.mul(x, y)]);
        }
    }
    let omega = representatives.iter().map(|&x| projection[alg.omega(x)]).collect();
    let omegastar = representatives.iter().map(|&x| projection[alg.omegastar(x)]).collect();
    let names = representatives.iter().map(|&x| alg.name_of(x).to_string()).collect();
    let oracle = ViaRepresentatives {
        parent: Arc::new(alg.clone()),
        projection: projection.clone(),
        representatives: representatives.clone(),
    };
    let algebra = FiniteCircleAlgebra::new(
        format!("{}/~", alg.name()),
        names,
        projection[alg.unit()],
        product,
        omega,
        omegastar,
        ShuffleTable::Derived(Arc::new(oracle)),
    )?;
    Ok(Quotient {
        algebra,
        projection,
        representatives,
    })
}

/// The minimal recognizer of the same language.
#[derive(Clone, Debug)]
pub struct SyntacticQuotient {
    pub algebra: FiniteCircleAlgebra,
    pub recognizer: Recognizer,
    /// Class of every element of the original target, `None` outside the
    /// image of the morphism.
    pub projection: Vec<Option<Elem>>,
}

/// Largest number of subsets scanned per refinement round.
const SUBSET_LIMIT: u64 = 1 << 16;

/// Coarsest congruence separating accepting from rejecting elements on the
/// subalgebra generated by the letter images, and the quotient by it.
pub fn syntactic_quotient(r: &Recognizer) -> Result<SyntacticQuotient, ConstructionError> {
    let target = r.target();
    let images: Vec<Elem> = r.morphism.letter_map.values().copied().collect();
    let sub = generated_subalgebra(target, &images)?;
    let a = &sub.algebra;
    let n = a.len();
    let others = a.non_units();
    if others.len() >= 63 || (1u64 << others.len()) > SUBSET_LIMIT {
        return Err(ConstructionError::Budget {
            what: "syntactic quotient",
            reached: n,
            limit: SUBSET_LIMIT as usize,
        });
    }
    let mut subsets: Vec<Vec<Elem>> = vec![Vec::new()];
    for size in 1..=others.len() {
        combinations(&others, size, &mut |s| subsets.push(s.to_vec()));
    }
    // Block labels; `usize::MAX` marks an undefined shuffle.
    let label = |block: &[usize], v: Option<Elem>| v.map_or(usize::MAX, |v| block[v]);
    let mut block: Vec<usize> = (0..n)
        .map(|x| usize::from(r.accepting.contains(&sub.to_parent(x))))
        .collect();
    let mut count = block.iter().collect::<BTreeSet<_>>().len();
    loop {
        let mut signatures: HashMap<Vec<usize>, usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|x| {
                let mut sig = vec![block[x], block[a.omega(x)], block[a.omegastar(x)]];
                for z in 0..n {
                    sig.push(block[a.mul(x, z)]);
                    sig.push(block[a.mul(z, x)]);
                }
                for s in &subsets {
                    let mut with_x = s.clone();
                    with_x.push(x);
                    sig.push(label(&block, a.shuffle(&with_x)));
                }
                let fresh = signatures.len();
                *signatures.entry(sig).or_insert(fresh)
            })
            .collect();
        let next_count = signatures.len();
        block = next;
        if next_count == count {
            break;
        }
        count = next_count;
    }
    let q = quotient(a, &block)?;
    let mut projection = vec![None; target.len()];
    for (i, &p) in sub.embedding.iter().enumerate() {
        projection[p] = Some(q.projection[i]);
    }
    let letter_map = r
        .morphism
        .letter_map
        .iter()
        .map(|(l, &e)| (l.clone(), projection[e].expect("letter images lie in the generated part")))
        .collect();
    let accepting = r
        .accepting
        .iter()
        .filter_map(|&e| projection[e])
        .collect();
    let algebra = q.algebra.with_name(format!("Syn({})", target.name()));
    let morphism = Morphism {
        target: algebra.clone(),
        letter_map,
    };
    Ok(SyntacticQuotient {
        algebra,
        recognizer: Recognizer { morphism, accepting },
        projection,
    })
}

/// An isomorphism `a → b` as a vector of images, found by backtracking over
/// `·`, `ω` and `ω*` and then confirmed on every shuffle.
/// Cheap per-element data an isomorphism must preserve.
type Invariant = dyn Fn(&FiniteCircleAlgebra, Elem) -> (bool, bool, bool, bool, usize);

pub fn find_isomorphism(a: &FiniteCircleAlgebra, b: &FiniteCircleAlgebra) -> Option<Vec<Elem>> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    let invariant = |alg: &FiniteCircleAlgebra, x: Elem| {
        (
            x == alg.unit(),
            alg.is_idempotent(x),
            alg.omega(x) == x,
            alg.omegastar(x) == x,
            alg.idempotent_exponent(x),
        )
    };
    let mut map: Vec<Option<Elem>> = vec![None; n];
    let mut used = vec![false; n];
    map[a.unit()] = Some(b.unit());
    used[b.unit()] = true;
    let order: Vec<Elem> = a.elements().filter(|&x| x != a.unit()).collect();

    fn consistent(a: &FiniteCircleAlgebra, b: &FiniteCircleAlgebra, map: &[Option<Elem>]) -> bool {
        for x in a.elements() {
            let Some(fx) = map[x] else { continue };
            let checks = [(a.omega(x), b.omega(fx)), (a.omegastar(x), b.omegastar(fx))];
            for (src, dst) in checks {
                if let Some(m) = map[src] {
                    if m != dst {
                        return false;
                    }
                }
            }
            for y in a.elements() {
                let Some(fy) = map[y] else { continue };
                if let Some(m) = map[a.mul(x, y)] {
                    if m != b.mul(fx, fy) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn search(
        a: &FiniteCircleAlgebra,
        b: &FiniteCircleAlgebra,
        order: &[Elem],
        i: usize,
        map: &mut Vec<Option<Elem>>,
        used: &mut Vec<bool>,
        invariant: &Invariant,
    ) -> bool {
        if i == order.len() {
            return shuffles_agree(a, b, map);
        }
        let x = order[i];
        for y in b.elements() {
            if used[y] || invariant(a, x) != invariant(b, y) {
                continue;
            }
            map[x] = Some(y);
            used[y] = true;
            if consistent(a, b, map) && search(a, b, order, i + 1, map, used, invariant) {
                return true;
            }
            map[x] = None;
            used[y] = false;
        }
        false
    }

    fn shuffles_agree(a: &FiniteCircleAlgebra, b: &FiniteCircleAlgebra, map: &[Option<Elem>]) -> bool {
        let others = a.non_units();
        if others.len() >= 20 {
            // Beyond this only the tables are compared.
            return true;
        }
        let mut ok = true;
        for size in 1..=others.len() {
            combinations(&others, size, &mut |s| {
                if !ok {
                    return;
                }
                let image: Vec<Elem> = s.iter().map(|&x| map[x].expect("total")).collect();
                let lhs = a.shuffle(s).map(|v| map[v].expect("total"));
                if lhs != b.shuffle(&image) {
                    ok = false;
                }
            });
        }
        ok
    }

    if search(a, b, &order, 0, &mut map, &mut used, &invariant) {
        Some(map.into_iter().map(|m| m.expect("total")).collect())
    } else {
        None
    }
}
