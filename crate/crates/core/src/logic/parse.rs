//! Formula syntax:
//!
//! ```text
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "~" unary | quant | atom | "(" or ")"
//! quant   := ( "E" | "EI[" n "]" | "EW[" n "]" | "EWS[" n "]" ) var "." or
//! atom    := letter "(" var ")" | var "<" var
//! ```
//!
//! Letters and variables are identifiers over `[A-Za-z0-9_]`. A quantifier
//! body extends as far right as possible.

use super::{Formula, LogicError, Quantifier};
use crate::terms::ParseError;

struct Parser {
    chars: Vec<char>,
    pos: usize,
    bound: Vec<String>,
}

fn is_ident(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

impl Parser {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, LogicError> {
        Err(LogicError::Parse(ParseError {
            position: self.pos,
            message: message.into(),
        }))
    }

    fn peek(&mut self) -> Option<char> {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), LogicError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Result<String, LogicError> {
        self.peek();
        let start = self.pos;
        while self.pos < self.chars.len() && is_ident(self.chars[self.pos]) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an identifier");
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Result<usize, LogicError> {
        self.peek();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        match s.parse() {
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos = start;
                self.err("expected a number")
            }
        }
    }

    fn or(&mut self) -> Result<Formula, LogicError> {
        let mut acc = self.and()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, LogicError> {
        let mut acc = self.unary()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        match self.peek() {
            Some('~') => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some('(') => {
                self.pos += 1;
                let f = self.or()?;
                self.expect(')')?;
                Ok(f)
            }
            Some(c) if is_ident(c) => self.word(),
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }

    fn word(&mut self) -> Result<Formula, LogicError> {
        let start = self.pos;
        let id = self.ident()?;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let x = self.ident()?;
                self.expect(')')?;
                Ok(Formula::Letter(id, x))
            }
            Some('<') => {
                self.pos += 1;
                let y = self.ident()?;
                Ok(Formula::Less(id, y))
            }
            Some('[') if matches!(id.as_str(), "EI" | "EW" | "EWS") => {
                self.pos += 1;
                let n = self.number()?;
                self.expect(']')?;
                let q = match id.as_str() {
                    "EI" => Quantifier::Rank(n),
                    "EW" => Quantifier::OmegaRank(n),
                    _ => Quantifier::OmegaStarRank(n),
                };
                self.quantified(q)
            }
            Some(c) if id == "E" && is_ident(c) => self.quantified(Quantifier::Exists),
            _ => {
                self.pos = start;
                self.err(format!("expected an atom after `{id}`"))
            }
        }
    }

    fn quantified(&mut self, q: Quantifier) -> Result<Formula, LogicError> {
        let x = self.ident()?;
        if self.bound.contains(&x) {
            return Err(LogicError::Rebound(x));
        }
        self.expect('.')?;
        self.bound.push(x.clone());
        let body = self.or()?;
        self.bound.pop();
        Ok(Formula::Quant(q, x, Box::new(body)))
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, LogicError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        bound: Vec::new(),
    };
    let f = p.or()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(f)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(parse_formula("E x. a(x)").unwrap(), Formula::exists("x", Formula::letter("a", "x")));
        assert_eq!(
            parse_formula("EI[2] x. a(x)").unwrap(),
            Formula::quant(Quantifier::Rank(2), "x", Formula::letter("a", "x"))
        );
        let nested = parse_formula("E x. E y. (a(x) & b(y) & x<y)").unwrap();
        let body = Formula::and(
            Formula::and(Formula::letter("a", "x"), Formula::letter("b", "y")),
            Formula::less("x", "y"),
        );
        assert_eq!(nested, Formula::exists("x", Formula::exists("y", body)));
    }

    #[test]
    fn precedence() {
        let f = parse_formula("~a(x) & b(x) | c(x)").unwrap();
        let expect = Formula::or(
            Formula::and(Formula::not(Formula::letter("a", "x")), Formula::letter("b", "x")),
            Formula::letter("c", "x"),
        );
        assert_eq!(f, expect);
        let g = parse_formula("E x. a(x) | b(x)").unwrap();
        assert!(matches!(g, Formula::Quant(..)));
        assert!(matches!(parse_formula("EWS[1] y. E(y)").unwrap(), Formula::Quant(Quantifier::OmegaStarRank(1), ..)));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_formula("E x. E x. a(x)"), Err(LogicError::Rebound(v)) if v == "x"));
        assert!(parse_formula("(E x. a(x)) & (E x. b(x))").is_ok());
        assert!(matches!(parse_formula("a(x) &"), Err(LogicError::Parse(_))));
        assert!(matches!(parse_formula("EI[] x. a(x)"), Err(LogicError::Parse(_))));
        assert!(matches!(parse_formula("x"), Err(LogicError::Parse(_))));
        assert!(matches!(parse_formula("a(x))"), Err(LogicError::Parse(_))));
    }

    pub(crate) fn arb_formula() -> impl Strategy<Value = Formula> {
        let var = prop::sample::select(vec!["x", "y", "z"]);
        let leaf = prop_oneof![
            (prop::sample::select(vec!["a", "b"]), var.clone()).prop_map(|(a, x)| Formula::letter(a, x)),
            (var.clone(), var.clone()).prop_map(|(x, y)| Formula::less(x, y)),
        ];
        leaf.prop_recursive(4, 24, 2, move |inner| {
            let q = prop_oneof![
                Just(Quantifier::Exists),
                (0usize..3).prop_map(Quantifier::Rank),
                (0usize..3).prop_map(Quantifier::OmegaRank),
                (0usize..3).prop_map(Quantifier::OmegaStarRank),
            ];
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (q, var.clone(), inner).prop_map(|(q, x, b)| Formula::quant(q, x, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn round_trip(f in arb_formula()) {
            prop_assume!(f.rebound_var().is_none());
            let text = f.to_string();
            prop_assert_eq!(parse_formula(&text).unwrap(), f);
        }
    }
}
