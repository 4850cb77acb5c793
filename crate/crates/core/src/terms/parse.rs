//! Term syntax:
//!
//! ```text
//! term    := postfix ( "."? postfix )*
//! postfix := primary ( "^w" | "^w*" )*
//! primary := "eps" | letter | '"' quoted '"' | "sh{" term ("," term)* "}" | "(" term ")"
//! ```
//!
//! A letter is a single alphanumeric character, so `ab` is `a . b`.

use thiserror::Error;

use super::Term;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn looking_at(&self, s: &str) -> bool {
        let n = s.chars().count();
        self.pos + n <= self.chars.len() && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars())
    }

    fn at_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let n = kw.chars().count();
        self.looking_at(kw) && !self.chars.get(self.pos + n).is_some_and(|c| c.is_alphanumeric())
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn starts_primary(&mut self) -> bool {
        match self.peek() {
            Some(c) => c.is_alphanumeric() || c == '"' || c == '(',
            None => false,
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.postfix()?;
        loop {
            if self.peek() == Some('.') {
                self.pos += 1;
                let rhs = self.postfix()?;
                acc = Term::concat(acc, rhs);
            } else if self.starts_primary() {
                let rhs = self.postfix()?;
                acc = Term::concat(acc, rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut t = self.primary()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            if self.chars.get(self.pos) != Some(&'w') {
                return self.err("expected `w` after `^`");
            }
            self.pos += 1;
            if self.chars.get(self.pos) == Some(&'*') {
                self.pos += 1;
                t = Term::omegastar(t);
            } else {
                t = Term::omega(t);
            }
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            None => self.err("expected a term, found end of input"),
            Some('(') => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(')')?;
                Ok(t)
            }
            Some('"') => {
                self.pos += 1;
                let mut s = String::new();
                loop {
                    match self.chars.get(self.pos).copied() {
                        None => return self.err("unterminated quoted letter"),
                        Some('"') => break,
                        Some('\\') => {
                            self.pos += 1;
                            match self.chars.get(self.pos).copied() {
                                Some(c) => s.push(c),
                                None => return self.err("unterminated quoted letter"),
                            }
                        }
                        Some(c) => s.push(c),
                    }
                    self.pos += 1;
                }
                self.pos += 1;
                if s.is_empty() {
                    return self.err("empty quoted letter");
                }
                Ok(Term::Letter(s))
            }
            Some(_) if self.looking_at("sh{") => {
                self.pos += 3;
                let mut children = vec![self.term()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    children.push(self.term()?);
                }
                self.expect('}')?;
                Ok(Term::shuffle(children))
            }
            Some(_) if self.at_keyword("eps") => {
                self.pos += 3;
                Ok(Term::Empty)
            }
            Some(c) if c.is_alphanumeric() => {
                self.pos += 1;
                Ok(Term::Letter(c.to_string()))
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
        }
    }
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let t = p.term()?;
    if p.peek().is_some() {
        return p.err(format!("unexpected `{}`", p.chars[p.pos]));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l(s: &str) -> Term {
        Term::letter(s)
    }

    #[test]
    fn examples() {
        assert_eq!(
            parse_term("a^w . a^w*").unwrap(),
            Term::concat(Term::omega(l("a")), Term::omegastar(l("a")))
        );
        assert_eq!(parse_term("sh{a,b}").unwrap(), Term::shuffle(vec![l("a"), l("b")]));
        assert_eq!(parse_term("(a b)^w").unwrap(), Term::omega(Term::concat(l("a"), l("b"))));
        assert_eq!(parse_term("ab").unwrap(), Term::concat(l("a"), l("b")));
        assert_eq!(parse_term("eps").unwrap(), Term::Empty);
        assert_eq!(parse_term("\"x y\"^w").unwrap(), Term::omega(l("x y")));
        assert_eq!(parse_term("a^w^w").unwrap(), Term::omega(Term::omega(l("a"))));
        assert_eq!(
            parse_term("a.b.c").unwrap(),
            Term::concat(Term::concat(l("a"), l("b")), l("c"))
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_term("a^x").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_term("(a b").unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_term("sh{a,}").unwrap_err();
        assert_eq!(e.position, 5);
        assert!(parse_term("").is_err());
        assert!(parse_term("a )").is_err());
    }

    pub(crate) fn arb_term() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            Just(Term::Empty),
            prop::sample::select(vec!["a", "b", "c", "long"]).prop_map(|s| Term::Letter(s.to_string())),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::concat(a, b)),
                inner.clone().prop_map(Term::omega),
                inner.clone().prop_map(Term::omegastar),
                prop::collection::vec(inner, 1..3).prop_map(Term::shuffle),
            ]
        })
    }

    proptest! {
        #[test]
        fn round_trip(t in arb_term()) {
            let text = t.to_string();
            prop_assert_eq!(parse_term(&text).unwrap(), t, "{}", text);
        }
    }
}
