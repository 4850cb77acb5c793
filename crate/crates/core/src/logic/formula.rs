use std::collections::BTreeSet;
use std::fmt;

pub type Var = String;

/// Quantifier kinds. `Rank(n)` asks for a set of witnesses of rank at least
/// `n`; `OmegaRank(n)` / `OmegaStarRank(n)` for a copy of `ω^n` / `ω*^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Exists,
    Rank(usize),
    OmegaRank(usize),
    OmegaStarRank(usize),
}

impl Quantifier {
    /// Whether the quantifier means plain `∃` (all level-0 variants do).
    pub fn is_plain(self) -> bool {
        matches!(
            self,
            Quantifier::Exists | Quantifier::Rank(0) | Quantifier::OmegaRank(0) | Quantifier::OmegaStarRank(0)
        )
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantifier::Exists => f.write_str("E"),
            Quantifier::Rank(n) => write!(f, "EI[{n}]"),
            Quantifier::OmegaRank(n) => write!(f, "EW[{n}]"),
            Quantifier::OmegaStarRank(n) => write!(f, "EWS[{n}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `a(x)`: position `x` carries letter `a`.
    Letter(String, Var),
    Less(Var, Var),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Quant(Quantifier, Var, Box<Formula>),
}

impl Formula {
    pub fn letter(a: &str, x: &str) -> Self {
        Formula::Letter(a.into(), x.into())
    }

    pub fn less(x: &str, y: &str) -> Self {
        Formula::Less(x.into(), y.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(x: &str, body: Formula) -> Self {
        Formula::Quant(Quantifier::Exists, x.into(), Box::new(body))
    }

    pub fn quant(q: Quantifier, x: &str, body: Formula) -> Self {
        Formula::Quant(q, x.into(), Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        match self {
            Formula::Letter(_, x) => BTreeSet::from([x.clone()]),
            Formula::Less(x, y) => BTreeSet::from([x.clone(), y.clone()]),
            Formula::Not(f) => f.free_vars(),
            Formula::And(a, b) | Formula::Or(a, b) => {
                let mut s = a.free_vars();
                s.extend(b.free_vars());
                s
            }
            Formula::Quant(_, x, body) => {
                let mut s = body.free_vars();
                s.remove(x);
                s
            }
        }
    }

    /// Every variable name occurring, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Letter(_, x) | Formula::Quant(_, x, _) => {
                out.insert(x.clone());
            }
            Formula::Less(x, y) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            _ => {}
        });
        out
    }

    pub fn letters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Letter(a, _) = f {
                out.insert(a.clone());
            }
        });
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut dyn FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Letter(..) | Formula::Less(..) => {}
            Formula::Not(g) => g.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Quant(_, _, body) => body.visit(f),
        }
    }

    /// Finds a variable bound twice on one root-to-leaf path.
    pub fn rebound_var(&self) -> Option<Var> {
        fn go(f: &Formula, bound: &mut Vec<Var>) -> Option<Var> {
            match f {
                Formula::Letter(..) | Formula::Less(..) => None,
                Formula::Not(g) => go(g, bound),
                Formula::And(a, b) | Formula::Or(a, b) => go(a, bound).or_else(|| go(b, bound)),
                Formula::Quant(_, x, body) => {
                    if bound.contains(x) {
                        return Some(x.clone());
                    }
                    bound.push(x.clone());
                    let r = go(body, bound);
                    bound.pop();
                    r
                }
            }
        }
        go(self, &mut Vec::new())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrapped = |g: &Formula| {
            if matches!(g, Formula::Quant(..)) {
                format!("({g})")
            } else {
                g.to_string()
            }
        };
        match self {
            Formula::Letter(a, x) => write!(f, "{a}({x})"),
            Formula::Less(x, y) => write!(f, "{x}<{y}"),
            Formula::Not(g) => write!(f, "~{}", wrapped(g)),
            Formula::And(a, b) => write!(f, "({} & {b})", wrapped(a)),
            Formula::Or(a, b) => write!(f, "({} | {b})", wrapped(a)),
            Formula::Quant(q, x, body) => write!(f, "{q} {x}. {body}"),
        }
    }
}

pub fn format_formula(f: &Formula) -> String {
    f.to_string()
}
