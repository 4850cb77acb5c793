use std::fmt;

use super::{Formula, Quantifier};

/// Syntactic fragments a sentence belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FragmentTag {
    pub fo1: bool,
    pub bsigma1: bool,
    /// Least `n` with every rank quantifier of index at most `n`, or `None`
    /// when the draft `ω`/`ω*` quantifiers occur at a nonzero level.
    pub foi: Option<usize>,
    /// No quantifier occurs inside the scope of another.
    pub one_variable: bool,
    /// Some `EW[n]`/`EWS[n]` with `n ≥ 1` occurs.
    pub draft: bool,
}

impl fmt::Display for FragmentTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.fo1 {
            parts.push("FO1".to_string());
        }
        if self.bsigma1 {
            parts.push("BSigma1".to_string());
        }
        if let Some(n) = self.foi {
            parts.push(format!("FOI({n})"));
        }
        if self.one_variable {
            parts.push("one_variable".to_string());
        }
        if self.draft {
            parts.push("draft".to_string());
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn max_nesting(f: &Formula) -> usize {
    match f {
        Formula::Letter(..) | Formula::Less(..) => 0,
        Formula::Not(g) => max_nesting(g),
        Formula::And(a, b) | Formula::Or(a, b) => max_nesting(a).max(max_nesting(b)),
        Formula::Quant(_, _, body) => 1 + max_nesting(body),
    }
}

fn quantifier_free(f: &Formula) -> bool {
    max_nesting(f) == 0
}

/// `∃x₁ … ∃xₖ ψ` with `ψ` quantifier-free and each `∃` plain.
fn existential_prefix(f: &Formula) -> bool {
    match f {
        Formula::Quant(q, _, body) => q.is_plain() && (quantifier_free(body) || existential_prefix(body)),
        _ => false,
    }
}

fn boolean_of_existentials(f: &Formula) -> bool {
    match f {
        Formula::Not(g) => boolean_of_existentials(g),
        Formula::And(a, b) | Formula::Or(a, b) => boolean_of_existentials(a) && boolean_of_existentials(b),
        Formula::Quant(..) => existential_prefix(f),
        Formula::Letter(..) | Formula::Less(..) => false,
    }
}

pub fn fragment_of(phi: &Formula) -> FragmentTag {
    let mut max_rank = 0;
    let mut draft = false;
    let mut plain_only = true;
    phi.visit(&mut |g| {
        if let Formula::Quant(q, _, _) = g {
            if !q.is_plain() {
                plain_only = false;
            }
            match *q {
                Quantifier::Rank(n) => max_rank = max_rank.max(n),
                Quantifier::OmegaRank(n) | Quantifier::OmegaStarRank(n) if n > 0 => draft = true,
                _ => {}
            }
        }
    });
    let one_variable = max_nesting(phi) <= 1;
    FragmentTag {
        fo1: one_variable && plain_only,
        bsigma1: boolean_of_existentials(phi),
        foi: (!draft).then_some(max_rank),
        one_variable,
        draft,
    }
}

/// Length of the longest existential block of a boolean combination of
/// existential prefix sentences.
pub fn max_block_length(phi: &Formula) -> usize {
    match phi {
        Formula::Not(g) => max_block_length(g),
        Formula::And(a, b) | Formula::Or(a, b) => max_block_length(a).max(max_block_length(b)),
        Formula::Quant(_, _, body) => 1 + max_block_length(body),
        Formula::Letter(..) | Formula::Less(..) => 0,
    }
}
