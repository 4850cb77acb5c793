use super::report::{CheckConfig, Instance, Law, PropertyReport, Shape};
use super::FiniteCircleAlgebra;

fn xs<const K: usize>(i: &Instance) -> [usize; K] {
    let mut out = [0; K];
    out.copy_from_slice(&i.elements[..K]);
    out
}

fn shuffle_of(a: &FiniteCircleAlgebra, i: &Instance) -> Option<usize> {
    a.shuffle(i.subset.as_deref().expect("subset law"))
}

/// The defining laws of a circle-algebra, in the order they are reported.
pub fn axiom_laws() -> Vec<Law> {
    vec![
        Law::new("associativity", Shape::Elements(3), |a, i| {
            let [x, y, z] = xs(i);
            Some(a.mul(a.mul(x, y), z) == a.mul(x, a.mul(y, z)))
        }),
        Law::new("unit-neutral", Shape::Elements(1), |a, i| {
            let [x] = xs(i);
            Some(a.mul(a.unit(), x) == x && a.mul(x, a.unit()) == x)
        }),
        Law::new("unit-fixed", Shape::Elements(0), |a, _| {
            let u = a.unit();
            Some(a.omega(u) == u && a.omegastar(u) == u && a.shuffle(&[u]) == Some(u))
        }),
        Law::new("omega-conjugation", Shape::Elements(2), |a, i| {
            let [x, y] = xs(i);
            Some(a.omega(a.mul(x, y)) == a.mul(x, a.omega(a.mul(y, x))))
        }),
        Law::new("omega-power", Shape::Elements(1), |a, i| {
            let [x] = xs(i);
            Some((1..=a.len()).all(|n| a.omega(a.power(x, n)) == a.omega(x)))
        }),
        Law::new("omega-absorbs-left", Shape::Elements(1), |a, i| {
            let [x] = xs(i);
            Some(a.mul(x, a.omega(x)) == a.omega(x))
        }),
        Law::new("omegastar-conjugation", Shape::Elements(2), |a, i| {
            let [x, y] = xs(i);
            Some(a.omegastar(a.mul(x, y)) == a.mul(a.omegastar(a.mul(y, x)), y))
        }),
        Law::new("omegastar-power", Shape::Elements(1), |a, i| {
            let [x] = xs(i);
            Some((1..=a.len()).all(|n| a.omegastar(a.power(x, n)) == a.omegastar(x)))
        }),
        Law::new("omegastar-absorbs-right", Shape::Elements(1), |a, i| {
            let [x] = xs(i);
            Some(a.mul(a.omegastar(x), x) == a.omegastar(x))
        }),
        Law::new("shuffle-unit-absorption", Shape::Subset { extra: 0 }, |a, i| {
            let e = i.subset.as_ref().expect("subset law");
            let mut with_unit = e.clone();
            with_unit.push(a.unit());
            Some(a.shuffle(e)? == a.shuffle(&with_unit)?)
        }),
        Law::new("shuffle-absorbs-members", Shape::Subset { extra: 0 }, |a, i| {
            let k = shuffle_of(a, i)?;
            let e = i.subset.as_ref().expect("subset law");
            Some(
                e.iter()
                    .chain(std::iter::once(&a.unit()))
                    .all(|&x| a.mul(a.mul(k, x), k) == k),
            )
        }),
        Law::new("shuffle-omega-fixed", Shape::Subset { extra: 0 }, |a, i| {
            let k = shuffle_of(a, i)?;
            Some(a.omega(k) == k && a.omegastar(k) == k)
        }),
        Law::new("shuffle-of-shuffle", Shape::Subset { extra: 0 }, |a, i| {
            let k = shuffle_of(a, i)?;
            let mut extended = i.subset.clone().expect("subset law");
            extended.push(k);
            Some(a.shuffle(&[k])? == k && a.shuffle(&extended)? == k)
        }),
    ]
}

pub fn validate_axioms(alg: &FiniteCircleAlgebra) -> PropertyReport {
    validate_axioms_with(alg, &CheckConfig::default())
}

pub fn validate_axioms_with(alg: &FiniteCircleAlgebra, config: &CheckConfig) -> PropertyReport {
    PropertyReport::run(alg, &axiom_laws(), config)
}
