//! Compilers from sentences to recognizers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::{fragment_of, max_block_length, mc_finite, selected_letters, Assignment, Formula, LogicError, Quantifier};
use crate::algebra::{Elem, FiniteCircleAlgebra, ShuffleTable};
use crate::constructions::{
    block_product, build_sn, builtin, direct_product, direct_product_all, generated_subalgebra_with, BlockElem,
    ConstructionError, SubalgebraOptions,
};
use crate::terms::{Morphism, Recognizer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// One-variable first-order sentences, into products of `U₁`.
    Fo1,
    /// One-variable sentences with rank (and `ω`/`ω*`) quantifiers, into
    /// products of `Δₖ` (and `Ωₖ`, `Ω*ₖ`).
    Fo1Inf,
    /// Boolean combinations of existential sentences, into `Sₙ`.
    Bsigma1,
    /// Any sentence with plain and rank quantifiers, into nested block
    /// products over marker algebras.
    Foinf,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::Fo1, Strategy::Fo1Inf, Strategy::Bsigma1, Strategy::Foinf];
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Fo1 => "fo1",
            Strategy::Fo1Inf => "fo1_inf",
            Strategy::Bsigma1 => "bsigma1",
            Strategy::Foinf => "foinf",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.to_string() == s)
            .ok_or_else(|| format!("unknown strategy `{s}` (expected fo1, fo1_inf, bsigma1 or foinf)"))
    }
}

/// Compiles the sentence `phi` over the letters of `phi` together with
/// `alphabet`.
pub fn compile(phi: &Formula, strategy: Strategy, alphabet: &[String]) -> Result<Recognizer, LogicError> {
    if let Some(x) = phi.free_vars().into_iter().next() {
        return Err(LogicError::FreeVariable(x));
    }
    let mut sigma: BTreeSet<String> = alphabet.iter().cloned().collect();
    sigma.extend(phi.letters());
    let sigma: Vec<String> = sigma.into_iter().collect();
    let mismatch = |reason: &str| LogicError::FragmentMismatch {
        strategy: strategy.to_string(),
        reason: reason.to_string(),
    };
    let tag = fragment_of(phi);
    match strategy {
        Strategy::Fo1 if !tag.fo1 => Err(mismatch("not a one-variable first-order sentence")),
        Strategy::Fo1Inf if !tag.one_variable => Err(mismatch("not a one-variable sentence")),
        Strategy::Bsigma1 if !tag.bsigma1 => Err(mismatch("not a boolean combination of existential sentences")),
        Strategy::Foinf if tag.draft => Err(mismatch("ω/ω* quantifiers are not supported")),
        Strategy::Fo1 | Strategy::Fo1Inf => compile_onevar(phi, &sigma),
        Strategy::Bsigma1 => compile_bsigma1(phi, &sigma),
        Strategy::Foinf => compile_foinf(phi, &sigma),
    }
}

/// The maximal quantified subformulas of a sentence, left to right.
fn top_quantifiers(phi: &Formula) -> Vec<(Quantifier, &Formula)> {
    fn go<'a>(f: &'a Formula, out: &mut Vec<(Quantifier, &'a Formula)>) {
        match f {
            Formula::Not(g) => go(g, out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                go(a, out);
                go(b, out);
            }
            Formula::Quant(q, _, body) => out.push((*q, body)),
            Formula::Letter(..) | Formula::Less(..) => unreachable!("atom outside a quantifier in a sentence"),
        }
    }
    let mut out = Vec::new();
    go(phi, &mut out);
    out
}

/// Evaluates the boolean skeleton of `phi` given the truth of its
/// [`top_quantifiers`].
fn eval_skeleton(phi: &Formula, truth: &[bool]) -> bool {
    fn go(f: &Formula, next: &mut usize, truth: &[bool]) -> bool {
        match f {
            Formula::Not(g) => !go(g, next, truth),
            Formula::And(a, b) => {
                let (x, y) = (go(a, next, truth), go(b, next, truth));
                x && y
            }
            Formula::Or(a, b) => {
                let (x, y) = (go(a, next, truth), go(b, next, truth));
                x || y
            }
            _ => {
                *next += 1;
                truth[*next - 1]
            }
        }
    }
    go(phi, &mut 0, truth)
}

/// One factor per quantified subsentence; a letter maps to the bottom
/// non-unit element of the factor when it satisfies the body, and the
/// subsentence holds when the factor value is the top element.
fn compile_onevar(phi: &Formula, sigma: &[String]) -> Result<Recognizer, LogicError> {
    let all: BTreeSet<String> = sigma.iter().cloned().collect();
    let parts = top_quantifiers(phi);
    let mut factors = Vec::new();
    let mut sets = Vec::new();
    for (q, body) in &parts {
        factors.push(match *q {
            Quantifier::Exists => builtin::u1(),
            Quantifier::Rank(k) => builtin::delta(k),
            Quantifier::OmegaRank(k) => builtin::omega_chain(k),
            Quantifier::OmegaStarRank(k) => builtin::omegastar_chain(k),
        });
        sets.push(selected_letters(body, &all));
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let target = if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        direct_product_all(&factors)
    };
    let encode = |digits: &[usize]| digits.iter().zip(&sizes).fold(0, |acc, (&d, &s)| acc * s + d);
    let mut letter_map = BTreeMap::new();
    for a in sigma {
        let digits: Vec<usize> = sets.iter().map(|s| usize::from(s.contains(a))).collect();
        letter_map.insert(a.clone(), encode(&digits));
    }
    let mut accepting = BTreeSet::new();
    for x in target.elements() {
        let mut rest = x;
        let mut truth = vec![false; sizes.len()];
        for (i, &s) in sizes.iter().enumerate().rev() {
            truth[i] = rest % s == s - 1;
            rest /= s;
        }
        if eval_skeleton(phi, &truth) {
            accepting.insert(x);
        }
    }
    Ok(Recognizer::new(Morphism::new(target, letter_map)?, accepting)?)
}

/// `Sₙ` with `n` the longest existential block; an element is accepting when
/// its witness word satisfies `phi`.
fn compile_bsigma1(phi: &Formula, sigma: &[String]) -> Result<Recognizer, LogicError> {
    let n = max_block_length(phi);
    let sq = build_sn(sigma, n)?;
    let mut accepting = BTreeSet::new();
    for x in sq.algebra.elements() {
        if mc_finite(&sq.witness(x), phi, &Assignment::new())? {
            accepting.insert(x);
        }
    }
    Ok(Recognizer::new(sq.morphism(), accepting)?)
}

/// A recognizer over the extended alphabet `Σ × {0,1}^k`, where bit `i` of
/// the mask marks the position of the `i`-th context variable.
struct Stage {
    alg: FiniteCircleAlgebra,
    /// Indexed by `letter << k | mask`.
    image: Vec<Elem>,
    accept: BTreeSet<Elem>,
}

fn fixed_algebra(name: &str, names: &[&str], mul: impl Fn(usize, usize) -> usize, sink: usize) -> FiniteCircleAlgebra {
    let n = names.len();
    let product = (0..n * n).map(|i| mul(i / n, i % n)).collect();
    let power: Vec<usize> = (0..n).map(|x| if x == 0 { 0 } else { sink }).collect();
    FiniteCircleAlgebra::new(
        name.to_string(),
        names.iter().map(|s| s.to_string()).collect(),
        0,
        product,
        power.clone(),
        power,
        ShuffleTable::constant(sink),
    )
    .expect("marker tables are well-formed")
}

const MARK_A: Elem = 1;
const MARK_OTHER: Elem = 2;
const MARK_SINK: Elem = 3;

/// `{1, A, O, Z}`: no mark, one mark on the letter, one mark elsewhere, and
/// the sink for two or more marks.
pub fn letter_marker() -> FiniteCircleAlgebra {
    fixed_algebra(
        "Mark",
        &["1", "A", "O", "Z"],
        |x, y| match (x, y) {
            (0, y) => y,
            (x, 0) => x,
            _ => MARK_SINK,
        },
        MARK_SINK,
    )
}

const ORDER_NAMES: [&str; 6] = ["1", "X", "Y", "LT", "NLT", "Z"];
const ORD_X: Elem = 1;
const ORD_Y: Elem = 2;
const ORD_LT: Elem = 3;
const ORD_NLT: Elem = 4;
const ORD_SINK: Elem = 5;

/// Tracks the marks of `x` and `y`: only `x` seen, only `y` seen, `x` before
/// `y`, `y` before or at `x`, and the sink for repeated marks.
pub fn order_tracker() -> FiniteCircleAlgebra {
    fn counts(s: Elem) -> (u8, u8) {
        match s {
            0 => (0, 0),
            ORD_X => (1, 0),
            ORD_Y => (0, 1),
            _ => (1, 1),
        }
    }
    let mul = |s: Elem, t: Elem| {
        if s == 0 {
            return t;
        }
        if t == 0 {
            return s;
        }
        if s == ORD_SINK || t == ORD_SINK {
            return ORD_SINK;
        }
        let ((sx, sy), (tx, ty)) = (counts(s), counts(t));
        if sx + tx > 1 || sy + ty > 1 {
            return ORD_SINK;
        }
        if sx == 1 { ORD_LT } else { ORD_NLT }
    };
    fixed_algebra("Order", &ORDER_NAMES, mul, ORD_SINK)
}

fn trim(stage: Stage) -> Result<Stage, LogicError> {
    let mut opts = SubalgebraOptions {
        subset_budget: 1 << 12,
        ..SubalgebraOptions::default()
    };
    let sub = match generated_subalgebra_with(&stage.alg, &stage.image, &opts) {
        Err(ConstructionError::Budget { .. }) => {
            opts.shuffle_closure = false;
            generated_subalgebra_with(&stage.alg, &stage.image, &opts)?
        }
        other => other?,
    };
    let image = stage.image.iter().map(|&p| sub.from_parent(p).expect("generator")).collect();
    let accept = stage.accept.iter().filter_map(|&p| sub.from_parent(p)).collect();
    Ok(Stage {
        alg: sub.algebra,
        image,
        accept,
    })
}

fn foinf_stage(phi: &Formula, ctx: &mut Vec<String>, sigma: &[String]) -> Result<Stage, LogicError> {
    let k = ctx.len();
    let masks = 1usize << k;
    let var_bit = |x: &String| 1usize << ctx.iter().position(|v| v == x).expect("sentence variables are bound");
    match phi {
        Formula::Letter(a, x) => {
            let bit = var_bit(x);
            let image = (0..sigma.len() * masks)
                .map(|i| match (i & bit != 0, &sigma[i >> k] == a) {
                    (false, _) => 0,
                    (true, true) => MARK_A,
                    (true, false) => MARK_OTHER,
                })
                .collect();
            Ok(Stage {
                alg: letter_marker(),
                image,
                accept: BTreeSet::from([MARK_A]),
            })
        }
        Formula::Less(x, y) if x == y => Ok(Stage {
            alg: builtin::trivial(),
            image: vec![0; sigma.len() * masks],
            accept: BTreeSet::new(),
        }),
        Formula::Less(x, y) => {
            let (bx, by) = (var_bit(x), var_bit(y));
            let image = (0..sigma.len() * masks)
                .map(|i| match (i & bx != 0, i & by != 0) {
                    (false, false) => 0,
                    (true, false) => ORD_X,
                    (false, true) => ORD_Y,
                    (true, true) => ORD_NLT,
                })
                .collect();
            Ok(Stage {
                alg: order_tracker(),
                image,
                accept: BTreeSet::from([ORD_LT]),
            })
        }
        Formula::Not(g) => {
            let s = foinf_stage(g, ctx, sigma)?;
            let accept = s.alg.elements().filter(|x| !s.accept.contains(x)).collect();
            Ok(Stage { accept, ..s })
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            let is_and = matches!(phi, Formula::And(..));
            let l = foinf_stage(a, ctx, sigma)?;
            let r = foinf_stage(b, ctx, sigma)?;
            let alg = direct_product(&l.alg, &r.alg);
            let w = r.alg.len();
            let image = l.image.iter().zip(&r.image).map(|(&x, &y)| x * w + y).collect();
            let accept = alg
                .elements()
                .filter(|&p| {
                    let (x, y) = (l.accept.contains(&(p / w)), r.accept.contains(&(p % w)));
                    if is_and { x && y } else { x || y }
                })
                .collect();
            trim(Stage { alg, image, accept })
        }
        Formula::Quant(q, x, body) => {
            let level = match *q {
                Quantifier::Exists => 0,
                Quantifier::Rank(n) => n,
                _ => unreachable!("draft quantifiers are rejected before compiling"),
            };
            ctx.push(x.clone());
            let inner = foinf_stage(body, ctx, sigma);
            ctx.pop();
            let inner = inner?;
            let unmarked = |c: usize, mask: usize| inner.image[(c << (k + 1)) | mask];
            let marked = |c: usize, mask: usize| inner.image[(c << (k + 1)) | mask | masks];
            let seeds: Vec<Elem> = (0..sigma.len())
                .flat_map(|c| (0..masks).map(move |m| (c, m)))
                .map(|(c, m)| unmarked(c, m))
                .collect();
            let opts = SubalgebraOptions {
                shuffle_closure: false,
                ..SubalgebraOptions::default()
            };
            let s = generated_subalgebra_with(&inner.alg, &seeds, &opts)?;
            let delta = builtin::delta(level);
            let w = s.algebra.len();
            let mut gens = Vec::with_capacity(sigma.len() * masks);
            for c in 0..sigma.len() {
                for mask in 0..masks {
                    let m = s.from_parent(unmarked(c, mask)).expect("seed lies in the subalgebra");
                    let f = (0..w * w)
                        .map(|i| {
                            let (m1, m2) = (s.to_parent(i / w), s.to_parent(i % w));
                            let v = inner.alg.mul(inner.alg.mul(m1, marked(c, mask)), m2);
                            if inner.accept.contains(&v) { 1 } else { 0 }
                        })
                        .collect();
                    gens.push(BlockElem { m, f });
                }
            }
            let bp = block_product(&s.algebra, &delta, Some(&gens))?;
            let image = gens.iter().map(|g| bp.find(g).expect("generator")).collect();
            let top = level + 1;
            let u = s.algebra.unit();
            let accept = bp.algebra.elements().filter(|&e| bp.component(e, u, u) == top).collect();
            trim(Stage {
                alg: bp.algebra,
                image,
                accept,
            })
        }
    }
}

/// Nested block products `S ⧠ Δₙ`, one per quantifier, over marker
/// algebras for the atoms and direct products for the connectives.
fn compile_foinf(phi: &Formula, sigma: &[String]) -> Result<Recognizer, LogicError> {
    let stage = foinf_stage(phi, &mut Vec::new(), sigma)?;
    let letter_map = sigma.iter().cloned().zip(stage.image.iter().copied()).collect();
    let target = stage.alg.with_name(format!("foinf[{phi}]"));
    Ok(Recognizer::new(Morphism::new(target, letter_map)?, stage.accept)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_identity, gnl, validate_axioms, IdentityTag};
    use crate::logic::parse_formula;
    use crate::terms::{member, Term};

    fn words(alphabet: &[&str], max_len: usize) -> Vec<Vec<String>> {
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for a in alphabet {
                    let mut v: Vec<String> = w.clone();
                    v.push(a.to_string());
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    fn agrees_on_words(f: &str, strategy: Strategy, max_len: usize) -> Recognizer {
        let phi = parse_formula(f).unwrap();
        let ab = ["a".to_string(), "b".to_string()];
        let r = compile(&phi, strategy, &ab).unwrap();
        for w in words(&["a", "b"], max_len) {
            assert_eq!(
                member(&Term::word(&w), &r).unwrap(),
                mc_finite(&w, &phi, &Assignment::new()).unwrap(),
                "{f} via {strategy} on {w:?}"
            );
        }
        r
    }

    #[test]
    fn markers_are_algebras() {
        assert!(validate_axioms(&letter_marker()).passed());
        assert!(validate_axioms(&order_tracker()).passed());
        assert_eq!(gnl(&letter_marker()).unwrap(), 0);
        assert_eq!(gnl(&order_tracker()).unwrap(), 0);
    }

    #[test]
    fn fo1_example() {
        let r = agrees_on_words("E x. a(x)", Strategy::Fo1, 4);
        assert_eq!(r.target().name(), "U1");
        assert_eq!(r.morphism.letter_map["a"], 1);
        assert_eq!(r.morphism.letter_map["b"], 0);
        assert_eq!(r.accepting, BTreeSet::from([1]));
        let r = agrees_on_words("(E x. a(x)) & ~(E x. b(x))", Strategy::Fo1, 5);
        assert_eq!(r.target().len(), 4);
        assert!(check_identity(r.target(), IdentityTag::ShuffleTrivial).passed());
    }

    #[test]
    fn fo1_inf_example() {
        let r = agrees_on_words("EI[2] x. a(x)", Strategy::Fo1Inf, 4);
        assert_eq!(r.target().name(), "Delta2");
        let names: Vec<&str> = ["a", "b"].iter().map(|l| r.target().name_of(r.morphism.letter_map[*l])).collect();
        assert_eq!(names, ["0", "unit"]);
        let acc: Vec<&str> = r.accepting.iter().map(|&x| r.target().name_of(x)).collect();
        assert_eq!(acc, ["2"]);
        let t = crate::terms::parse_term("(a^w)^w").unwrap();
        assert!(member(&t, &r).unwrap());
    }

    #[test]
    fn bsigma1_example() {
        let r = agrees_on_words("E x. E y. (a(x) & b(y) & x<y)", Strategy::Bsigma1, 4);
        assert_eq!(r.target().name(), "S2");
        assert!(member(&Term::word(&["a".to_string(), "b".to_string()]), &r).unwrap());
        assert!(!member(&Term::word(&["b".to_string(), "a".to_string()]), &r).unwrap());
    }

    #[test]
    fn foinf_agrees_on_finite_words() {
        for f in [
            "EI[1] x. a(x)",
            "E x. a(x)",
            "E x. E y. (a(x) & b(y) & x<y)",
            "~(E x. (a(x) & ~(E y. (x<y & b(y)))))",
            "(E x. b(x)) | ~(E y. a(y))",
            "E x. x<x",
        ] {
            agrees_on_words(f, Strategy::Foinf, 4);
        }
    }

    #[test]
    fn foinf_rank_one_on_terms() {
        let r = compile(&parse_formula("EI[1] x. a(x)").unwrap(), Strategy::Foinf, &["b".to_string()]).unwrap();
        for (t, expect) in [("a^w", true), ("a a", false), ("(b a)^w*", true), ("b^w a", false)] {
            let t = crate::terms::parse_term(t).unwrap();
            assert_eq!(member(&t, &r).unwrap(), expect, "{t}");
        }
        assert!(gnl(r.target()).unwrap() <= 1);
    }

    #[test]
    fn fragment_mismatch() {
        let phi = parse_formula("E x. E y. x<y").unwrap();
        assert!(matches!(compile(&phi, Strategy::Fo1, &[]), Err(LogicError::FragmentMismatch { .. })));
        let phi = parse_formula("EI[1] x. a(x)").unwrap();
        assert!(matches!(compile(&phi, Strategy::Bsigma1, &[]), Err(LogicError::FragmentMismatch { .. })));
        let phi = parse_formula("EW[1] x. a(x)").unwrap();
        assert!(matches!(compile(&phi, Strategy::Foinf, &[]), Err(LogicError::FragmentMismatch { .. })));
        assert_eq!("fo1_inf".parse::<Strategy>(), Ok(Strategy::Fo1Inf));
        assert!("fo2".parse::<Strategy>().is_err());
    }
}
