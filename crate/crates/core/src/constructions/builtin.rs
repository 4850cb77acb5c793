//! The catalogue of small named algebras.

use crate::algebra::{FiniteCircleAlgebra, ShuffleTable};

use super::ConstructionError;

fn table(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| f(x, y)).collect()
}

fn build(
    name: String,
    names: Vec<String>,
    product: Vec<usize>,
    omega: Vec<usize>,
    omegastar: Vec<usize>,
    shuffle: ShuffleTable,
) -> FiniteCircleAlgebra {
    FiniteCircleAlgebra::new(name, names, 0, product, omega, omegastar, shuffle).expect("builtin tables are well-formed")
}

/// The one-element algebra.
pub fn trivial() -> FiniteCircleAlgebra {
    build("trivial".into(), vec!["1".into()], vec![0], vec![0], vec![0], ShuffleTable::constant(0))
}

/// `U₁ = {1, 0}`: recognizes "some letter mapped to 0 occurs".
pub fn u1() -> FiniteCircleAlgebra {
    build(
        "U1".into(),
        vec!["1".into(), "0".into()],
        table(2, usize::max),
        vec![0, 1],
        vec![0, 1],
        ShuffleTable::constant(1),
    )
}

/// The gap algebra. `lr` is the class of words with a first and a last
/// position, `l` only a first, `r` only a last, `open` neither, and `g` the
/// words that contain a gap.
pub fn gap() -> FiniteCircleAlgebra {
    const LR: usize = 1;
    const L: usize = 2;
    const R: usize = 3;
    const OPEN: usize = 4;
    const G: usize = 5;
    let rows: [[usize; 5]; 5] = [
        [LR, L, LR, L, G],
        [LR, L, G, G, G],
        [R, OPEN, R, OPEN, G],
        [R, OPEN, G, G, G],
        [G, G, G, G, G],
    ];
    let product = table(6, |x, y| match (x, y) {
        (0, y) => y,
        (x, 0) => x,
        (x, y) => rows[x - 1][y - 1],
    });
    build(
        "Gap".into(),
        ["1", "lr", "l", "r", "open", "g"].map(String::from).to_vec(),
        product,
        vec![0, L, L, OPEN, G, G],
        vec![0, R, OPEN, R, G, G],
        ShuffleTable::constant(G),
    )
}

/// `Δₙ = {unit, 0, …, n}`: product is the maximum, both powers step one level
/// up (saturating at `n`) and every shuffle is `n`. Level `k` has index `k+1`.
pub fn delta(n: usize) -> FiniteCircleAlgebra {
    let mut names = vec!["unit".to_string()];
    names.extend((0..=n).map(|k| k.to_string()));
    let up: Vec<usize> = (0..n + 2).map(|i| if i == 0 { 0 } else { (i + 1).min(n + 1) }).collect();
    build(
        format!("Delta{n}"),
        names,
        table(n + 2, usize::max),
        up.clone(),
        up,
        ShuffleTable::constant(n + 1),
    )
}

fn chain(n: usize, name: String, forward: bool) -> FiniteCircleAlgebra {
    let mut names = vec!["1".to_string()];
    names.extend((0..=n).map(|k| format!("a{k}")));
    let up: Vec<usize> = (0..n + 2).map(|i| if i == 0 { 0 } else { (i + 1).min(n + 1) }).collect();
    let id: Vec<usize> = (0..n + 2).collect();
    let (omega, omegastar) = if forward { (up, id) } else { (id, up) };
    build(name, names, table(n + 2, usize::max), omega, omegastar, ShuffleTable::constant(n + 1))
}

/// `Ωₙ = {1, a0, …, an}`: `ak` is the class of `a^(ω^k)`; ω steps up, ω* is
/// the identity.
pub fn omega_chain(n: usize) -> FiniteCircleAlgebra {
    chain(n, format!("Omega{n}"), true)
}

/// The mirror image of [`omega_chain`].
pub fn omegastar_chain(n: usize) -> FiniteCircleAlgebra {
    chain(n, format!("OmegaStar{n}"), false)
}

pub const BUILTIN_NAMES: [&str; 6] = ["trivial", "u1", "gap", "delta:N", "omega_chain:N", "omegastar_chain:N"];

/// Looks up `name` or `name:n`.
pub fn builtin(spec: &str) -> Result<FiniteCircleAlgebra, ConstructionError> {
    let (name, param) = match spec.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (spec, None),
    };
    let n = || -> Result<usize, ConstructionError> {
        let p = param.ok_or_else(|| ConstructionError::InvalidParameter(format!("`{name}` needs a level, e.g. `{name}:2`")))?;
        p.parse()
            .map_err(|_| ConstructionError::InvalidParameter(format!("`{p}` is not a natural number")))
    };
    let fixed = |alg: FiniteCircleAlgebra| match param {
        Some(p) => Err(ConstructionError::InvalidParameter(format!("`{name}` takes no parameter, got `{p}`"))),
        None => Ok(alg),
    };
    match name.to_ascii_lowercase().as_str() {
        "trivial" => fixed(trivial()),
        "u1" => fixed(u1()),
        "gap" => fixed(gap()),
        "delta" => Ok(delta(n()?)),
        "omega_chain" | "omega" => Ok(omega_chain(n()?)),
        "omegastar_chain" | "omegastar" => Ok(omegastar_chain(n()?)),
        _ => Err(ConstructionError::UnknownBuiltin(spec.to_string())),
    }
}
