//! The acceptance suite. Runs every criterion, prints one line per criterion
//! and fails if any criterion fails.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use clo_core::algebra::{check_identity, gnl, green_data, validate_axioms, IdentityTag};
use clo_core::constructions::{
    block_product_with, build_sn, builtin, find_isomorphism, generated_subalgebra, syntactic_quotient, BlockElem,
    BlockOptions, ConstructionError,
};
use clo_core::io::parse_algebra;
use clo_core::logic::{
    compile, fragment_of, letter_marker, mc_finite, mc_term_onevar, parse_formula, Assignment, Formula, Strategy,
};
use clo_core::terms::{
    directed_rank, eval_term, member, parse_term, rank_of, subwords_of_word, transduce, Direction, Morphism,
    RankValue, Recognizer, Term,
};
use common::{random_term, strings, words};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ab() -> Vec<String> {
    strings(&["a", "b"])
}

fn builtin_fidelity() -> Outcome {
    let u1 = parse_algebra(include_str!("../data/u1.alg"), true).map_err(|e| e.to_string())?;
    let gap = parse_algebra(include_str!("../data/gap.alg"), true).map_err(|e| e.to_string())?;
    for alg in [&u1, &gap] {
        let r = validate_axioms(alg);
        ensure(r.passed(), || format!("{} fails:\n{}", alg.name(), r.render(alg)))?;
    }
    let h = Morphism::from_names(gap, [("a".to_string(), "lr")]).map_err(|e| e.to_string())?;
    let t = parse_term("a^w . a^w*").unwrap();
    let v = eval_term(&t, &h).map_err(|e| e.to_string())?;
    let name = h.target.name_of(v);
    ensure(name == "g", || format!("a^w a^w* evaluates to {name}"))?;
    Ok("U1 and Gap validate; a^w a^w* = g".into())
}

fn delta_levels() -> Outcome {
    for k in 0..=4 {
        let g = gnl(&builtin::delta(k)).map_err(|e| e.to_string())?;
        ensure(g == k, || format!("gnl(Delta{k}) = {g}"))?;
    }
    Ok("gnl(Delta_k) = k for k = 0..4".into())
}

fn block_product_sweep() -> Outcome {
    let catalogue = [
        builtin::u1(),
        builtin::delta(0),
        builtin::delta(1),
        builtin::delta(2),
        builtin::gap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let opts = BlockOptions {
        element_budget: 2_000,
        ..BlockOptions::default()
    };
    let (mut trials, mut skipped) = (0, 0);
    for m in &catalogue {
        for n in &catalogue {
            let bound = gnl(m).unwrap().max(gnl(n).unwrap());
            let mut done = 0;
            let mut attempts = 0;
            while done < 2 && attempts < 20 {
                attempts += 1;
                let k = rng.gen_range(1..=3);
                let gens: Vec<BlockElem> = (0..k)
                    .map(|_| BlockElem {
                        m: rng.gen_range(0..m.len()),
                        f: (0..m.len() * m.len()).map(|_| rng.gen_range(0..n.len())).collect(),
                    })
                    .collect();
                match block_product_with(m, n, Some(&gens), &opts) {
                    Ok(bp) => {
                        let g = gnl(&bp.algebra).map_err(|e| e.to_string())?;
                        ensure(g <= bound, || {
                            format!("gnl({} [] {}) = {g} > {bound} with {gens:?}", m.name(), n.name())
                        })?;
                        done += 1;
                        trials += 1;
                    }
                    Err(ConstructionError::Budget { .. }) => skipped += 1,
                    Err(e) => return Err(e.to_string()),
                }
            }
            ensure(done == 2, || format!("no trial fit the budget for {} [] {}", m.name(), n.name()))?;
        }
    }
    ensure(trials >= 25, || format!("only {trials} trials"))?;
    Ok(format!("{trials} trials, 0 violations ({skipped} over budget, redrawn)"))
}

fn fo1_characterization() -> Outcome {
    let phi = parse_formula("(E x. a(x)) & ~(E x. b(x))").unwrap();
    let r = compile(&phi, Strategy::Fo1, &ab()).map_err(|e| e.to_string())?;
    let all = words(&["a", "b"], 1..=5);
    ensure(all.len() == 62, || format!("{} words", all.len()))?;
    for w in &all {
        let got = member(&Term::word(w), &r).map_err(|e| e.to_string())?;
        let want = mc_finite(w, &phi, &Assignment::new()).unwrap();
        ensure(got == want, || format!("disagreement on {w:?}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for _ in 0..200 {
        let t = random_term(&mut rng, 4, &["a", "b"], true);
        let got = member(&t, &r).map_err(|e| e.to_string())?;
        let want = mc_term_onevar(&t, &phi).unwrap();
        ensure(got == want, || format!("disagreement on term {t}"))?;
    }
    let rep = check_identity(r.target(), IdentityTag::ShuffleTrivial);
    ensure(rep.passed(), || rep.render(r.target()))?;
    Ok("62 words and 200 terms agree; target is shuffle-trivial".into())
}

fn bsigma1_suite() -> Vec<Formula> {
    [
        "E x. E y. (a(x) & b(y) & x<y)",
        "E x. a(x)",
        "~(E x. E y. (b(x) & a(y) & x<y))",
        "(E x. E y. (a(x) & a(y) & x<y)) | ~(E z. b(z))",
        "E x. E y. (x<y & ~(a(x) | a(y)))",
        "(E x. b(x)) & ~(E x. E y. (b(x) & b(y) & x<y))",
    ]
    .iter()
    .map(|s| parse_formula(s).unwrap())
    .collect()
}

fn simon() -> Outcome {
    let s2 = build_sn(&ab(), 2).map_err(|e| e.to_string())?;
    ensure(green_data(&s2.algebra).is_j_trivial(), || "S2 is not J-trivial".into())?;
    let rep = check_identity(&s2.algebra, IdentityTag::ShufflePowerTrivial);
    ensure(rep.passed(), || rep.render(&s2.algebra))?;
    let suite = bsigma1_suite();
    let all = words(&["a", "b"], 0..=5);
    for phi in &suite {
        let r = compile(phi, Strategy::Bsigma1, &ab()).map_err(|e| e.to_string())?;
        for w in &all {
            let got = member(&Term::word(w), &r).map_err(|e| e.to_string())?;
            ensure(got == mc_finite(w, phi, &Assignment::new()).unwrap(), || {
                format!("{phi} disagrees on {w:?}")
            })?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut buckets: HashMap<BTreeSet<Vec<String>>, Vec<Vec<String>>> = HashMap::new();
    let mut pairs = Vec::new();
    while pairs.len() < 500 {
        let len = rng.gen_range(0..=8);
        let w: Vec<String> = (0..len).map(|_| if rng.gen_bool(0.5) { "a" } else { "b" }.to_string()).collect();
        let bucket = buckets.entry(subwords_of_word(&w, 2)).or_default();
        if let Some(other) = bucket.iter().find(|o| **o != w) {
            pairs.push((other.clone(), w.clone()));
        }
        if !bucket.contains(&w) {
            bucket.push(w);
        }
    }
    for (u, v) in &pairs {
        for phi in &suite {
            let e = Assignment::new();
            ensure(mc_finite(u, phi, &e).unwrap() == mc_finite(v, phi, &e).unwrap(), || {
                format!("{phi} separates {u:?} and {v:?}")
            })?;
        }
    }
    Ok(format!(
        "S2 J-trivial and shuffle-power-trivial; {} sentences agree on {} words; {} ~2 pairs, 0 separations",
        suite.len(),
        all.len(),
        pairs.len()
    ))
}

fn delta_rank_coherence() -> Outcome {
    let d3 = builtin::delta(3);
    let h = Morphism::from_names(d3.clone(), [("a".to_string(), "0"), ("b".to_string(), "unit")]).unwrap();
    let a: BTreeSet<String> = BTreeSet::from(["a".to_string()]);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut with_shuffle = 0;
    for _ in 0..500 {
        let t = random_term(&mut rng, 5, &["a", "b"], true);
        with_shuffle += usize::from(t.has_shuffle());
        let v = eval_term(&t, &h).map_err(|e| e.to_string())?;
        let rank = rank_of(&t, &a);
        for m in d3.elements() {
            // Element `m` is level `m - 1`; the unit sits below every level.
            let up = v >= m;
            let lang = m == 0 || rank.at_least(m - 1);
            ensure(up == lang, || format!("{t}: value {} vs rank {rank} at {}", d3.name_of(v), d3.name_of(m)))?;
        }
    }
    Ok(format!("500 terms ({with_shuffle} with shuffles) x 5 elements, 0 disagreements"))
}

fn block_product_principle() -> Outcome {
    let phi = parse_formula("EI[1] x. a(x)").unwrap();
    let r = compile(&phi, Strategy::Foinf, &ab()).map_err(|e| e.to_string())?;
    // The route through the transduction: positions of the word over the
    // left factor, each labelled by whether marking it makes `a(x)` true.
    let marker = letter_marker();
    let unmarked: Vec<usize> = vec![0, 0];
    let left = generated_subalgebra(&marker, &unmarked).map_err(|e| e.to_string())?;
    let h_left = Morphism::new(
        left.algebra.clone(),
        ab().into_iter().zip(unmarked.iter().map(|&p| left.from_parent(p).unwrap())).collect(),
    )
    .unwrap();
    let marked = |c: &str| marker.element(if c == "a" { "A" } else { "O" }).unwrap();
    let d1 = builtin::delta(1);
    let mut count = 0;
    for w in words(&["a", "b"], 0..=4) {
        let direct = member(&Term::word(&w), &r).map_err(|e| e.to_string())?;
        let sigma = transduce(&Term::word(&w), &h_left).map_err(|e| e.to_string())?;
        let labels: Vec<usize> = sigma
            .as_finite_word()
            .unwrap()
            .iter()
            .map(|c| {
                let v = marker.mul(
                    marker.mul(left.to_parent(c.left), marked(&c.letter)),
                    left.to_parent(c.right),
                );
                if marker.name_of(v) == "A" { 1 } else { 0 }
            })
            .collect();
        let via_transduction = d1.name_of(d1.product_of(labels)) == "1";
        ensure(direct == via_transduction, || format!("{w:?}: direct {direct}, transduced {via_transduction}"))?;
        ensure(direct == mc_finite(&w, &phi, &Assignment::new()).unwrap(), || format!("{w:?} disagrees with mc"))?;
        count += 1;
    }
    Ok(format!("{count} words, direct = transduced"))
}

fn syntactic_delta() -> Outcome {
    let d2 = builtin::delta(2);
    let h = Morphism::from_names(d2.clone(), [("a".to_string(), "0")]).unwrap();
    let accept = |names: &[&str]| names.iter().map(|n| d2.element(n).unwrap()).collect::<BTreeSet<_>>();
    let top = syntactic_quotient(&Recognizer::new(h.clone(), accept(&["2"])).unwrap()).map_err(|e| e.to_string())?;
    ensure(top.algebra.len() == 4, || format!("{} elements", top.algebra.len()))?;
    ensure(find_isomorphism(&top.algebra, &d2).is_some(), || "not isomorphic to Delta2".into())?;
    let any = syntactic_quotient(&Recognizer::new(h, accept(&["0", "1", "2"])).unwrap()).map_err(|e| e.to_string())?;
    ensure(find_isomorphism(&any.algebra, &builtin::u1()).is_some(), || {
        format!("F={{0,1,2}} gives {} elements", any.algebra.len())
    })?;
    Ok("F={2} gives Delta2 (4 elements); F={0,1,2} gives U1".into())
}

/// FOI sentences compiled across strategies by the test suite.
fn foi_suite() -> Vec<&'static str> {
    vec![
        "E x. a(x)",
        "(E x. a(x)) & ~(E x. b(x))",
        "E x. E y. (a(x) & b(y) & x<y)",
        "EI[1] x. a(x)",
        "(EI[1] x. a(x)) & ~(EI[1] x. b(x))",
        "EI[1] x. (a(x) & E y. (x<y & b(y)))",
        "EI[2] x. a(x) | b(x)",
        "(EI[2] x. a(x)) | (E y. b(y))",
        "EI[3] x. a(x)",
    ]
}

fn strict_hierarchy() -> Outcome {
    for n in 0..=3 {
        let phi = Formula::quant(clo_core::logic::Quantifier::Rank(n + 1), "x", Formula::letter("a", "x"));
        let r = compile(&phi, Strategy::Fo1Inf, &ab()).map_err(|e| e.to_string())?;
        let g = gnl(r.target()).unwrap();
        ensure(g > n, || format!("gnl of the EI[{}] recognizer is {g}", n + 1))?;
    }
    let mut compiled = 0;
    for s in foi_suite() {
        let phi = parse_formula(s).unwrap();
        let tag = fragment_of(&phi);
        let n = tag.foi.unwrap();
        for strategy in Strategy::ALL {
            let r = match compile(&phi, strategy, &ab()) {
                Ok(r) => r,
                Err(clo_core::logic::LogicError::FragmentMismatch { .. }) => continue,
                Err(e) => return Err(format!("{s} via {strategy}: {e}")),
            };
            let g = gnl(r.target()).unwrap();
            ensure(g <= n, || format!("{s} via {strategy}: gnl {g} > {n}"))?;
            compiled += 1;
        }
    }
    Ok(format!("EI[n+1] targets exceed n for n = 0..3; {compiled} FOI(n) compilations have gnl <= n"))
}

fn draft_chain() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let a = "a".to_string();
    let mut checks = 0;
    for _ in 0..200 {
        let t = random_term(&mut rng, 5, &["a", "b"], false);
        for n in 0..=3 {
            for (alg, dir) in [
                (builtin::omega_chain(n), Direction::Omega),
                (builtin::omegastar_chain(n), Direction::OmegaStar),
            ] {
                let h = Morphism::from_names(alg.clone(), [("a".to_string(), "a0"), ("b".to_string(), "1")]).unwrap();
                let v = eval_term(&t, &h).map_err(|e| e.to_string())?;
                let expect = match directed_rank(&t, &a, dir) {
                    RankValue::Bottom => "1".to_string(),
                    RankValue::Finite(k) => format!("a{}", k.min(n)),
                    RankValue::Infinite => format!("a{n}"),
                };
                ensure(alg.name_of(v) == expect, || {
                    format!("{t} in {}: {} vs directed rank {expect}", alg.name(), alg.name_of(v))
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("200 shuffle-free terms, {checks} evaluations, 0 disagreements"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("builtin fidelity", builtin_fidelity),
        ("gnl of the Delta chain", delta_levels),
        ("block product gnl sweep", block_product_sweep),
        ("one-variable FO compiler", fo1_characterization),
        ("subword quotient and BSigma1", simon),
        ("Delta3 and rank coherence", delta_rank_coherence),
        ("block product principle", block_product_principle),
        ("syntactic quotient of Delta2", syntactic_delta),
        ("strict hierarchy witness", strict_hierarchy),
        ("directed rank and Omega chains", draft_chain),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
