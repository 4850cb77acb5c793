use std::collections::BTreeSet;

use super::{AlgebraError, Elem, FiniteCircleAlgebra};

/// One step of the gap-nesting chain: `(ω(x) · ω*(x))^!`.
fn gamma_step(alg: &FiniteCircleAlgebra, x: Elem) -> Elem {
    alg.idempotent_power(alg.mul(alg.omega(x), alg.omegastar(x)))
}

/// `γ_0(x) = x^!` and `γ_{n+1}(x) = (ω(γ_n x) · ω*(γ_n x))^!`.
pub fn gamma_n(alg: &FiniteCircleAlgebra, n: usize, x: Elem) -> Elem {
    (0..n).fold(alg.idempotent_power(x), |acc, _| gamma_step(alg, acc))
}

/// Rows `γ_0, γ_1, …` up to and including the first row equal to its
/// successor.
pub fn gamma_table(alg: &FiniteCircleAlgebra) -> Result<Vec<Vec<Elem>>, AlgebraError> {
    let bound = alg.len() + 1;
    let mut rows: Vec<Vec<Elem>> = vec![alg.elements().map(|x| alg.idempotent_power(x)).collect()];
    loop {
        let last = rows.last().expect("nonempty");
        let next: Vec<Elem> = last.iter().map(|&x| gamma_step(alg, x)).collect();
        if &next == last {
            return Ok(rows);
        }
        if rows.len() > bound {
            return Err(AlgebraError::NoStabilization(bound));
        }
        rows.push(next);
    }
}

/// Gap-nesting level: the least `n` with `γ_n = γ_{n+1}` on every element.
pub fn gnl(alg: &FiniteCircleAlgebra) -> Result<usize, AlgebraError> {
    Ok(gamma_table(alg)?.len() - 1)
}

/// `E_0` is the set of idempotents and `E_{n+1} = {(ω(e)·ω*(e))^! : e ∈ E_n}`.
pub fn iterated_idempotents(alg: &FiniteCircleAlgebra, n: usize) -> BTreeSet<Elem> {
    let mut set: BTreeSet<Elem> = alg.elements().filter(|&x| alg.is_idempotent(x)).collect();
    for _ in 0..n {
        set = set.iter().map(|&e| gamma_step(alg, e)).collect();
    }
    set
}
