use std::fmt;
use std::str::FromStr;

use super::gamma::iterated_idempotents;
use super::report::{CheckConfig, Law, PropertyReport, Shape};
use super::{AlgebraError, FiniteCircleAlgebra};

/// Named identities that can be checked against a finite algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityTag {
    Commutative,
    Idempotent,
    Aperiodic,
    JTrivial,
    ShuffleTrivial,
    ShufflePowerTrivial,
    /// `e = e^ω · e^ω*` for every `e` in the `n`-th iterated idempotent set.
    GapInsensitive(usize),
}

impl IdentityTag {
    pub const BASIC: [IdentityTag; 6] = [
        IdentityTag::Commutative,
        IdentityTag::Idempotent,
        IdentityTag::Aperiodic,
        IdentityTag::JTrivial,
        IdentityTag::ShuffleTrivial,
        IdentityTag::ShufflePowerTrivial,
    ];
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityTag::Commutative => f.write_str("commutative"),
            IdentityTag::Idempotent => f.write_str("idempotent"),
            IdentityTag::Aperiodic => f.write_str("aperiodic"),
            IdentityTag::JTrivial => f.write_str("j_trivial"),
            IdentityTag::ShuffleTrivial => f.write_str("shuffle_trivial"),
            IdentityTag::ShufflePowerTrivial => f.write_str("shuffle_power_trivial"),
            IdentityTag::GapInsensitive(n) => write!(f, "gi({n})"),
        }
    }
}

impl FromStr for IdentityTag {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        Ok(match t {
            "commutative" => IdentityTag::Commutative,
            "idempotent" => IdentityTag::Idempotent,
            "aperiodic" => IdentityTag::Aperiodic,
            "j_trivial" => IdentityTag::JTrivial,
            "shuffle_trivial" => IdentityTag::ShuffleTrivial,
            "shuffle_power_trivial" => IdentityTag::ShufflePowerTrivial,
            _ => {
                let n = t
                    .strip_prefix("gi(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| t.strip_prefix("gi:"))
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| AlgebraError::UnknownIdentity(t.to_string()))?;
                IdentityTag::GapInsensitive(n)
            }
        })
    }
}

fn commutative() -> Law {
    Law::new("commutative", Shape::Elements(2), |a, i| {
        let (x, y) = (i.elements[0], i.elements[1]);
        Some(a.mul(x, y) == a.mul(y, x))
    })
}

fn idempotent() -> Law {
    Law::new("idempotent", Shape::Elements(1), |a, i| {
        Some(a.is_idempotent(i.elements[0]))
    })
}

fn power_conjugation() -> Law {
    Law::new("power-conjugation", Shape::Elements(2), |a, i| {
        let (x, y) = (i.elements[0], i.elements[1]);
        Some(a.idempotent_power(a.mul(x, y)) == a.idempotent_power(a.mul(y, x)))
    })
}

fn power_absorbs() -> Law {
    Law::new("power-absorbs", Shape::Elements(1), |a, i| {
        let x = i.elements[0];
        let p = a.idempotent_power(x);
        Some(a.mul(x, p) == p)
    })
}

/// Laws whose conjunction defines `tag`.
pub fn identity_laws(tag: IdentityTag) -> Vec<Law> {
    match tag {
        IdentityTag::Commutative => vec![commutative()],
        IdentityTag::Idempotent => vec![idempotent()],
        IdentityTag::Aperiodic => vec![Law::new("aperiodic", Shape::Elements(1), |a, i| {
            let x = i.elements[0];
            let p = a.power(x, a.len());
            Some(p == a.mul(p, x))
        })],
        IdentityTag::JTrivial => vec![power_conjugation(), power_absorbs()],
        IdentityTag::ShuffleTrivial => vec![
            commutative(),
            idempotent(),
            Law::new("shuffle-is-product", Shape::Subset { extra: 0 }, |a, i| {
                let e = i.subset.as_ref().expect("subset law");
                Some(a.shuffle(e)? == a.product_of(e.iter().copied()))
            }),
        ],
        IdentityTag::ShufflePowerTrivial => vec![
            power_conjugation(),
            power_absorbs(),
            Law::new("shuffle-is-power-of-product", Shape::Subset { extra: 0 }, |a, i| {
                let e = i.subset.as_ref().expect("subset law");
                Some(a.shuffle(e)? == a.idempotent_power(a.product_of(e.iter().copied())))
            }),
        ],
        IdentityTag::GapInsensitive(n) => {
            vec![Law::new(format!("gap-insensitive-{n}"), Shape::Elements(1), move |a, i| {
                let e = i.elements[0];
                // Only members of E_n are constrained.
                if !iterated_idempotents(a, n).contains(&e) {
                    return Some(true);
                }
                Some(a.mul(a.omega(e), a.omegastar(e)) == e)
            })]
        }
    }
}

pub fn check_identity(alg: &FiniteCircleAlgebra, tag: IdentityTag) -> PropertyReport {
    check_identity_with(alg, tag, &CheckConfig::default())
}

pub fn check_identity_with(alg: &FiniteCircleAlgebra, tag: IdentityTag, config: &CheckConfig) -> PropertyReport {
    let mut report = PropertyReport::run(alg, &identity_laws(tag), config);
    report.subject = format!("{} {}", alg.name(), tag);
    report
}
