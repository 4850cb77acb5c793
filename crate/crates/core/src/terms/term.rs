use std::collections::BTreeSet;
use std::fmt;

/// A finite description of a countable word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term<L = String> {
    Empty,
    Letter(L),
    Concat(Box<Term<L>>, Box<Term<L>>),
    OmegaPow(Box<Term<L>>),
    OmegaStarPow(Box<Term<L>>),
    /// Perfect shuffle; children are sorted and duplicate-free.
    Shuffle(Vec<Term<L>>),
}

impl<L: Ord + Clone> Term<L> {
    pub fn letter(l: impl Into<L>) -> Self {
        Term::Letter(l.into())
    }

    pub fn concat(a: Term<L>, b: Term<L>) -> Self {
        Term::Concat(Box::new(a), Box::new(b))
    }

    pub fn omega(body: Term<L>) -> Self {
        Term::OmegaPow(Box::new(body))
    }

    pub fn omegastar(body: Term<L>) -> Self {
        Term::OmegaStarPow(Box::new(body))
    }

    /// Perfect shuffle of `children`, canonicalized. An empty list gives
    /// `Empty`.
    pub fn shuffle(mut children: Vec<Term<L>>) -> Self {
        if children.is_empty() {
            return Term::Empty;
        }
        children.sort();
        children.dedup();
        Term::Shuffle(children)
    }

    /// Left-nested concatenation; `Empty` for an empty list.
    pub fn concat_all(parts: impl IntoIterator<Item = Term<L>>) -> Self {
        let mut it = parts.into_iter();
        match it.next() {
            None => Term::Empty,
            Some(first) => it.fold(first, Term::concat),
        }
    }

    /// The finite word `letters` as a left-nested concatenation.
    pub fn word(letters: &[L]) -> Self {
        Self::concat_all(letters.iter().cloned().map(Term::Letter))
    }

    /// Letters occurring in the term.
    pub fn letters(&self) -> BTreeSet<L> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<L>) {
        match self {
            Term::Empty => {}
            Term::Letter(l) => {
                out.insert(l.clone());
            }
            Term::Concat(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
            Term::OmegaPow(b) | Term::OmegaStarPow(b) => b.collect_letters(out),
            Term::Shuffle(cs) => cs.iter().for_each(|c| c.collect_letters(out)),
        }
    }

    /// The letters in order if the term denotes a finite word.
    pub fn as_finite_word(&self) -> Option<Vec<L>> {
        match self {
            Term::Empty => Some(Vec::new()),
            Term::Letter(l) => Some(vec![l.clone()]),
            Term::Concat(a, b) => {
                let mut w = a.as_finite_word()?;
                w.extend(b.as_finite_word()?);
                Some(w)
            }
            _ => None,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Empty | Term::Letter(_) => 0,
            Term::Concat(a, b) => 1 + a.depth().max(b.depth()),
            Term::OmegaPow(b) | Term::OmegaStarPow(b) => 1 + b.depth(),
            Term::Shuffle(cs) => 1 + cs.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn has_shuffle(&self) -> bool {
        match self {
            Term::Empty | Term::Letter(_) => false,
            Term::Concat(a, b) => a.has_shuffle() || b.has_shuffle(),
            Term::OmegaPow(b) | Term::OmegaStarPow(b) => b.has_shuffle(),
            Term::Shuffle(_) => true,
        }
    }

    /// Renames letters; shuffle children are re-canonicalized.
    pub fn map_letters<M: Ord + Clone>(&self, f: &dyn Fn(&L) -> M) -> Term<M> {
        match self {
            Term::Empty => Term::Empty,
            Term::Letter(l) => Term::Letter(f(l)),
            Term::Concat(a, b) => Term::concat(a.map_letters(f), b.map_letters(f)),
            Term::OmegaPow(b) => Term::omega(b.map_letters(f)),
            Term::OmegaStarPow(b) => Term::omegastar(b.map_letters(f)),
            Term::Shuffle(cs) => Term::shuffle(cs.iter().map(|c| c.map_letters(f)).collect()),
        }
    }
}

fn write_letter(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c.is_alphanumeric() => write!(f, "{c}"),
        _ => {
            f.write_str("\"")?;
            for c in s.chars() {
                if c == '"' || c == '\\' {
                    f.write_str("\\")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str("\"")
        }
    }
}

impl<L: fmt::Display> fmt::Display for Term<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Empty => f.write_str("eps"),
            Term::Letter(l) => write_letter(f, &l.to_string()),
            Term::Concat(a, b) => {
                write!(f, "{a} ")?;
                if matches!(**b, Term::Concat(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Term::OmegaPow(b) | Term::OmegaStarPow(b) => {
                if matches!(**b, Term::Concat(..)) {
                    write!(f, "({b})")?;
                } else {
                    write!(f, "{b}")?;
                }
                f.write_str(if matches!(self, Term::OmegaPow(_)) { "^w" } else { "^w*" })
            }
            Term::Shuffle(cs) => {
                f.write_str("sh{")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("}")
            }
        }
    }
}

pub fn format_term<L: fmt::Display>(t: &Term<L>) -> String {
    t.to_string()
}
