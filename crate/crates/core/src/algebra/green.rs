use super::{Elem, FiniteCircleAlgebra};

/// Green's preorders and equivalence classes of the underlying monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenData {
    /// `r_ideal[y]` = `yM` as a membership vector; likewise for `L` and `J`.
    r_ideal: Vec<Vec<bool>>,
    l_ideal: Vec<Vec<bool>>,
    j_ideal: Vec<Vec<bool>>,
    pub r_classes: Vec<Vec<Elem>>,
    pub l_classes: Vec<Vec<Elem>>,
    pub h_classes: Vec<Vec<Elem>>,
    pub j_classes: Vec<Vec<Elem>>,
}

impl GreenData {
    /// `x ≤_R y`, i.e. `x ∈ yM`.
    pub fn r_leq(&self, x: Elem, y: Elem) -> bool {
        self.r_ideal[y][x]
    }

    pub fn l_leq(&self, x: Elem, y: Elem) -> bool {
        self.l_ideal[y][x]
    }

    pub fn j_leq(&self, x: Elem, y: Elem) -> bool {
        self.j_ideal[y][x]
    }

    pub fn j_equivalent(&self, x: Elem, y: Elem) -> bool {
        self.j_leq(x, y) && self.j_leq(y, x)
    }

    /// Every J-class is a singleton.
    pub fn is_j_trivial(&self) -> bool {
        self.j_classes.iter().all(|c| c.len() == 1)
    }

    /// Every H-class is a singleton.
    pub fn is_h_trivial(&self) -> bool {
        self.h_classes.iter().all(|c| c.len() == 1)
    }

    /// The J-order is total on J-classes.
    pub fn j_classes_form_chain(&self) -> bool {
        let reps: Vec<Elem> = self.j_classes.iter().map(|c| c[0]).collect();
        reps.iter()
            .all(|&a| reps.iter().all(|&b| self.j_leq(a, b) || self.j_leq(b, a)))
    }
}

pub fn green_data(alg: &FiniteCircleAlgebra) -> GreenData {
    let n = alg.len();
    let mut r_ideal = vec![vec![false; n]; n];
    let mut l_ideal = vec![vec![false; n]; n];
    for y in 0..n {
        for v in 0..n {
            r_ideal[y][alg.mul(y, v)] = true;
            l_ideal[y][alg.mul(v, y)] = true;
        }
    }
    let mut j_ideal = vec![vec![false; n]; n];
    for y in 0..n {
        for z in 0..n {
            if r_ideal[y][z] {
                for u in 0..n {
                    j_ideal[y][alg.mul(u, z)] = true;
                }
            }
        }
    }
    let classes = |leq: &dyn Fn(Elem, Elem) -> bool| -> Vec<Vec<Elem>> {
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let class: Vec<Elem> = (x..n).filter(|&y| leq(x, y) && leq(y, x)).collect();
            for &y in &class {
                seen[y] = true;
            }
            out.push(class);
        }
        out
    };
    let r_classes = classes(&|x, y| r_ideal[y][x]);
    let l_classes = classes(&|x, y| l_ideal[y][x]);
    let j_classes = classes(&|x, y| j_ideal[y][x]);
    let h_classes = classes(&|x, y| r_ideal[y][x] && l_ideal[y][x]);
    GreenData {
        r_ideal,
        l_ideal,
        j_ideal,
        r_classes,
        l_classes,
        h_classes,
        j_classes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::builtin;

    #[test]
    fn delta_is_a_chain_of_singletons() {
        for n in 0..4 {
            let g = green_data(&builtin::delta(n));
            assert!(g.is_j_trivial());
            assert!(g.j_classes_form_chain());
            assert_eq!(g.j_classes.len(), n + 2);
        }
    }

    #[test]
    fn gap_classes() {
        let gap = builtin::gap();
        let g = green_data(&gap);
        let name = |c: &Vec<Elem>| c.iter().map(|&e| gap.name_of(e).to_string()).collect::<Vec<_>>();
        let j: Vec<Vec<String>> = g.j_classes.iter().map(name).collect();
        assert_eq!(j, vec![vec!["1"], vec!["lr", "l", "r", "open"], vec!["g"]]);
        assert!(g.is_h_trivial());
        let r: Vec<Vec<String>> = g.r_classes.iter().map(name).collect();
        assert!(r.contains(&vec!["lr".to_string(), "l".to_string()]));
        assert!(r.contains(&vec!["r".to_string(), "open".to_string()]));
        let lr = gap.element("lr").unwrap();
        assert!(g.j_leq(gap.element("g").unwrap(), lr));
        assert!(!g.j_leq(gap.unit(), lr));
    }
}
