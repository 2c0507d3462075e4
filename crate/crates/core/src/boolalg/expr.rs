//! Boolean expressions over named generators and their text syntax.
//!
//! Grammar, loosest first: `e ::= e | e  |  e & e  |  !e  |  (e)  |  T  |  F  |  ident`.
//! Identifiers are `[A-Za-z_][A-Za-z0-9_]*`; `T` and `F` are reserved.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    Var(usize),
    Top,
    Bot,
    Not(Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn var(i: usize) -> Self {
        BoolExpr::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        BoolExpr::Not(Box::new(self))
    }

    pub fn and(self, other: BoolExpr) -> Self {
        BoolExpr::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: BoolExpr) -> Self {
        BoolExpr::Or(Box::new(self), Box::new(other))
    }

    /// `⋀ items`, with `⊤` for none.
    pub fn meet_all(items: impl IntoIterator<Item = BoolExpr>) -> Self {
        items
            .into_iter()
            .reduce(BoolExpr::and)
            .unwrap_or(BoolExpr::Top)
    }

    /// `⋁ items`, with `⊥` for none.
    pub fn join_all(items: impl IntoIterator<Item = BoolExpr>) -> Self {
        items
            .into_iter()
            .reduce(BoolExpr::or)
            .unwrap_or(BoolExpr::Bot)
    }

    /// One more than the largest generator index used.
    pub fn arity(&self) -> usize {
        match self {
            BoolExpr::Var(i) => i + 1,
            BoolExpr::Top | BoolExpr::Bot => 0,
            BoolExpr::Not(e) => e.arity(),
            BoolExpr::And(a, b) | BoolExpr::Or(a, b) => a.arity().max(b.arity()),
        }
    }

    /// Value under the valuation whose bit `i` is generator `i`.
    pub fn eval(&self, valuation: u64) -> bool {
        match self {
            BoolExpr::Var(i) => valuation >> i & 1 == 1,
            BoolExpr::Top => true,
            BoolExpr::Bot => false,
            BoolExpr::Not(e) => !e.eval(valuation),
            BoolExpr::And(a, b) => a.eval(valuation) && b.eval(valuation),
            BoolExpr::Or(a, b) => a.eval(valuation) || b.eval(valuation),
        }
    }

    /// Text form using `names` for generators; parses back to `self`.
    pub fn show(&self, names: &[String]) -> String {
        Shown {
            e: self,
            names,
            prec: 0,
        }
        .to_string()
    }
}

struct Shown<'a> {
    e: &'a BoolExpr,
    names: &'a [String],
    prec: u8,
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |e, prec| Shown {
            e,
            names: self.names,
            prec,
        };
        match self.e {
            BoolExpr::Var(i) => match self.names.get(*i) {
                Some(n) => write!(f, "{n}"),
                None => write!(f, "x{i}"),
            },
            BoolExpr::Top => write!(f, "T"),
            BoolExpr::Bot => write!(f, "F"),
            BoolExpr::Not(e) => write!(f, "!{}", sub(e, 3)),
            // Both binary operators are parsed left-associatively.
            BoolExpr::And(a, b) => {
                let s = format!("{} & {}", sub(a, 2), sub(b, 3));
                if self.prec > 2 {
                    write!(f, "({s})")
                } else {
                    write!(f, "{s}")
                }
            }
            BoolExpr::Or(a, b) => {
                let s = format!("{} | {}", sub(a, 1), sub(b, 2));
                if self.prec > 1 {
                    write!(f, "({s})")
                } else {
                    write!(f, "{s}")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    And,
    Or,
    Not,
    Open,
    Close,
    End,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'a [String],
}

fn parse_error(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() => {}
            '&' => toks.push((Tok::And, col)),
            '|' => toks.push((Tok::Or, col)),
            '!' => toks.push((Tok::Not, col)),
            '(' => toks.push((Tok::Open, col)),
            ')' => toks.push((Tok::Close, col)),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..=i].iter().collect()), col));
            }
            c => return Err(parse_error(col, format!("unexpected character `{c}`"))),
        }
        i += 1;
    }
    toks.push((Tok::End, chars.len() + 1));
    Ok(toks)
}

impl Parser<'_> {
    fn peek(&self) -> &(Tok, usize) {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn join(&mut self) -> Result<BoolExpr> {
        let mut e = self.meet()?;
        while self.peek().0 == Tok::Or {
            self.next();
            e = e.or(self.meet()?);
        }
        Ok(e)
    }

    fn meet(&mut self) -> Result<BoolExpr> {
        let mut e = self.unary()?;
        while self.peek().0 == Tok::And {
            self.next();
            e = e.and(self.unary()?);
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<BoolExpr> {
        match self.next() {
            (Tok::Not, _) => Ok(self.unary()?.not()),
            (Tok::Open, col) => {
                let e = self.join()?;
                match self.next() {
                    (Tok::Close, _) => Ok(e),
                    (_, c) => Err(parse_error(
                        c,
                        format!("expected `)` closing the `(` at column {col}"),
                    )),
                }
            }
            (Tok::Ident(name), col) => match name.as_str() {
                "T" => Ok(BoolExpr::Top),
                "F" => Ok(BoolExpr::Bot),
                _ => self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .map(BoolExpr::Var)
                    .ok_or_else(|| parse_error(col, format!("unknown generator `{name}`"))),
            },
            (Tok::End, col) => Err(parse_error(col, "unexpected end of expression")),
            (_, col) => Err(parse_error(
                col,
                "expected a generator, `T`, `F`, `!` or `(`",
            )),
        }
    }
}

/// Parses `text` with generators resolved against `names`.
pub fn parse_expr(text: &str, names: &[String]) -> Result<BoolExpr> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        names,
    };
    let e = p.join()?;
    match p.next() {
        (Tok::End, _) => Ok(e),
        (_, col) => Err(parse_error(col, "trailing input")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> Vec<String> {
        ["a", "b", "c"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn precedence() {
        let e = parse_expr("a & (b | !c) | T | F", &abc()).unwrap();
        let a = BoolExpr::var(0);
        let b = BoolExpr::var(1);
        let c = BoolExpr::var(2);
        let expected = a.and(b.or(c.not())).or(BoolExpr::Top).or(BoolExpr::Bot);
        assert_eq!(e, expected);
        assert_eq!(
            parse_expr("!a & b | c", &abc()).unwrap(),
            BoolExpr::var(0)
                .not()
                .and(BoolExpr::var(1))
                .or(BoolExpr::var(2))
        );
    }

    #[test]
    fn errors_have_columns() {
        let col = |s: &str| match parse_expr(s, &abc()) {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("{other:?}"),
        };
        assert_eq!(col("a & zz"), 5);
        assert_eq!(col("a &"), 4);
        assert_eq!(col("(a | b"), 7);
        assert_eq!(col("a b"), 3);
        assert_eq!(col("a # b"), 3);
    }

    fn arb_expr() -> impl Strategy<Value = BoolExpr> {
        let leaf = prop_oneof![
            (0usize..3).prop_map(BoolExpr::Var),
            Just(BoolExpr::Top),
            Just(BoolExpr::Bot)
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(BoolExpr::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
                (inner.clone(), inner).prop_map(|(a, b)| a.or(b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn show_parses_back(e in arb_expr()) {
            prop_assert_eq!(parse_expr(&e.show(&abc()), &abc()).unwrap(), e);
        }
    }
}
