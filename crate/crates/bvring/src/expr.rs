//! Expression parser and evaluator for ring elements.
//!
//! Grammar, whitespace insensitive:
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := rational ['*' factor ('*' factor)*]
//!           | factor ('*' factor)*
//! factor   := atom ['^' uint]
//! atom     := 'o(' uint ')' | 'l(' uint ',' uint ')'
//!           | 'tau(' uint ',' uint ')' | 'delta(' uint ',' uint ')'
//!           | '(' expr ')'
//! rational := uint ['/' uint]
//! ```
//!
//! A bare rational is a constant term, so every canonical display form
//! parses back. Indices and labels are rejected at parse time when zero;
//! range checks against the ring parameters happen at evaluation time and
//! carry the source offset.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ring::{RingElement, RingParams};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomAst {
    O(u32),
    L(u32, u32),
    Tau(u32, u32),
    Delta(u32, u32),
    Paren(ExprAst),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorAst {
    pub atom: AtomAst,
    pub power: u32,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermAst {
    pub coef: Rational,
    pub factors: Vec<FactorAst>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprAst {
    pub terms: Vec<TermAst>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Number(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn lex(src: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b',' => Token::Comma,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Token::Number(src[start..i].to_string()), start));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Token::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    offset: i,
                    expected: "a generator, number, operator, or parenthesis".into(),
                })
            }
        };
        out.push((tok, i));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Token, expected: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.fail(expected))
        }
    }

    fn fail(&self, expected: &str) -> Error {
        Error::Parse {
            offset: self.offset(),
            expected: expected.into(),
        }
    }

    fn uint(&mut self, expected: &str) -> Result<(BigInt, usize)> {
        let offset = self.offset();
        match self.peek() {
            Some(Token::Number(raw)) => {
                let v: BigInt = raw.parse().expect("lexer emits digits");
                self.pos += 1;
                Ok((v, offset))
            }
            _ => Err(self.fail(expected)),
        }
    }

    fn small_uint(&mut self, expected: &str) -> Result<(u32, usize)> {
        let (v, offset) = self.uint(expected)?;
        u32::try_from(v.clone())
            .map(|v| (v, offset))
            .map_err(|_| Error::Parse {
                offset,
                expected: expected.into(),
            })
    }

    fn index(&mut self) -> Result<u32> {
        let (v, offset) = self.small_uint("a positive index")?;
        if v == 0 {
            return Err(Error::Parse {
                offset,
                expected: "a positive index".into(),
            });
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut terms = Vec::new();
        let negate = self.eat(&Token::Minus);
        let mut term = self.term()?;
        if negate {
            term.coef = -term.coef;
        }
        terms.push(term);
        loop {
            if self.eat(&Token::Plus) {
                terms.push(self.term()?);
            } else if self.eat(&Token::Minus) {
                let mut term = self.term()?;
                term.coef = -term.coef;
                terms.push(term);
            } else {
                break;
            }
        }
        Ok(ExprAst { terms })
    }

    fn term(&mut self) -> Result<TermAst> {
        if matches!(self.peek(), Some(Token::Number(_))) {
            let (numer, _) = self.uint("a number")?;
            let coef = if self.eat(&Token::Slash) {
                let (denom, offset) = self.uint("a nonzero denominator")?;
                if denom.is_zero() {
                    return Err(Error::Parse {
                        offset,
                        expected: "a nonzero denominator".into(),
                    });
                }
                Rational::new(numer, denom)
            } else {
                Rational::from_integer(numer)
            };
            let mut factors = Vec::new();
            while self.eat(&Token::Star) {
                factors.push(self.factor()?);
            }
            return Ok(TermAst { coef, factors });
        }
        let mut factors = vec![self.factor()?];
        while self.eat(&Token::Star) {
            factors.push(self.factor()?);
        }
        Ok(TermAst {
            coef: Rational::one(),
            factors,
        })
    }

    fn factor(&mut self) -> Result<FactorAst> {
        let offset = self.offset();
        let atom = self.atom()?;
        let power = if self.eat(&Token::Caret) {
            self.small_uint("an exponent")?.0
        } else {
            1
        };
        Ok(FactorAst {
            atom,
            power,
            offset,
        })
    }

    fn atom(&mut self) -> Result<AtomAst> {
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                let name_offset = self.offset();
                if !matches!(name.as_str(), "o" | "l" | "tau" | "delta") {
                    return Err(Error::Parse {
                        offset: name_offset,
                        expected: "one of o, l, tau, delta".into(),
                    });
                }
                self.pos += 1;
                self.expect(&Token::LParen, "'('")?;
                let atom = match name.as_str() {
                    "o" => AtomAst::O(self.index()?),
                    "l" => {
                        let s = self.index()?;
                        self.expect(&Token::Comma, "','")?;
                        AtomAst::L(s, self.index()?)
                    }
                    "tau" => {
                        let i = self.index()?;
                        self.expect(&Token::Comma, "','")?;
                        AtomAst::Tau(i, self.index()?)
                    }
                    _ => {
                        let i = self.index()?;
                        self.expect(&Token::Comma, "','")?;
                        AtomAst::Delta(i, self.index()?)
                    }
                };
                self.expect(&Token::RParen, "')'")?;
                Ok(atom)
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(&Token::RParen, "')'")?;
                Ok(AtomAst::Paren(inner))
            }
            _ => Err(self.fail("a generator or '('")),
        }
    }
}

/// Parses the textual grammar into an AST without consulting ring
/// parameters; only zero indices and malformed syntax are rejected here.
pub fn parse_expr(src: &str) -> Result<ExprAst> {
    let tokens = lex(src)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: src.len(),
    };
    let ast = parser.expr()?;
    if parser.bump().is_some() {
        return Err(Error::Parse {
            offset: parser.tokens[parser.pos - 1].1,
            expected: "'+', '-', '*', or end of input".into(),
        });
    }
    Ok(ast)
}

fn locate(offset: usize, e: Error) -> Error {
    match e {
        e @ (Error::Parse { .. } | Error::Eval { .. }) => e,
        other => Error::Eval {
            offset,
            source: Box::new(other),
        },
    }
}

/// Evaluates an AST against concrete ring parameters.
pub fn eval_expr(ast: &ExprAst, p: &RingParams) -> Result<RingElement> {
    let mut acc = RingElement::zero(p.clone());
    for term in &ast.terms {
        let mut value = RingElement::one(p.clone());
        for f in &term.factors {
            let base = eval_atom(&f.atom, p).map_err(|e| locate(f.offset, e))?;
            value = value.checked_mul(&base.pow(f.power))?;
        }
        acc = acc.checked_add(&value.scale(&term.coef))?;
    }
    Ok(acc)
}

fn eval_atom(atom: &AtomAst, p: &RingParams) -> Result<RingElement> {
    match atom {
        AtomAst::O(i) => RingElement::gen_o(p, *i),
        AtomAst::L(s, i) => RingElement::gen_l(p, *s, *i),
        AtomAst::Tau(i, j) => RingElement::gen_tau(p, *i, *j),
        AtomAst::Delta(i, j) => RingElement::gen_delta(p, *i, *j),
        AtomAst::Paren(inner) => eval_expr(inner, p),
    }
}

/// Parses and evaluates in one step.
pub fn eval_str(src: &str, p: &RingParams) -> Result<RingElement> {
    eval_expr(&parse_expr(src)?, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn params(n: u32) -> RingParams {
        RingParams::new(n, vec![rat(2)], rat(5)).unwrap()
    }

    #[test]
    fn parses_products_and_sums() {
        let ast = parse_expr("tau(1,2)*tau(1,3)").unwrap();
        assert_eq!(ast.terms.len(), 1);
        assert_eq!(ast.terms[0].factors.len(), 2);
        let ast = parse_expr("3/2*o(1) - l(1,2)^2").unwrap();
        assert_eq!(ast.terms.len(), 2);
        assert_eq!(ast.terms[0].coef, ratio(3, 2));
        assert_eq!(ast.terms[1].coef, rat(-1));
        assert_eq!(ast.terms[1].factors[0].power, 2);
    }

    #[test]
    fn arity_error_carries_offset() {
        let err = parse_expr("tau(1)").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                offset: 5,
                expected: "','".into()
            }
        );
    }

    #[test]
    fn zero_index_rejected_at_parse_time() {
        assert!(matches!(
            parse_expr("o(0)").unwrap_err(),
            Error::Parse { offset: 2, .. }
        ));
        assert!(matches!(
            parse_expr("l(0,1)").unwrap_err(),
            Error::Parse { offset: 2, .. }
        ));
    }

    #[test]
    fn rejects_trailing_garbage_and_bad_denominators() {
        assert!(matches!(
            parse_expr("o(1) o(2)").unwrap_err(),
            Error::Parse { offset: 5, .. }
        ));
        assert!(matches!(
            parse_expr("3/0").unwrap_err(),
            Error::Parse { offset: 2, .. }
        ));
        assert!(parse_expr("o(1) @").is_err());
        assert!(parse_expr("").is_err());
        assert!(parse_expr("sin(1)").is_err());
    }

    #[test]
    fn evaluates_contraction() {
        let p = params(3);
        let got = eval_str("tau(1,2)*tau(1,3)", &p).unwrap();
        let want = eval_str("tau(2,3)*o(1)", &p).unwrap();
        assert_eq!(got, want);
        assert!(!got.is_zero());
    }

    #[test]
    fn evaluates_delta_square_on_k3() {
        let p = RingParams::k3(2, vec![rat(2)]).unwrap();
        let got = eval_str("delta(1,2)*delta(1,2)", &p).unwrap();
        let want = eval_str("24*o(1)*o(2)", &p).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn range_error_carries_source_offset() {
        let p = params(4);
        let err = eval_str("o(1) + 2*o(5)", &p).unwrap_err();
        match err {
            Error::Eval { offset, source } => {
                assert_eq!(offset, 9);
                assert_eq!(*source, Error::IndexOutOfRange { index: 5, n: 4 });
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn power_zero_and_parentheses() {
        let p = params(2);
        assert_eq!(eval_str("o(1)^0", &p).unwrap(), RingElement::one(p.clone()));
        let got = eval_str("(o(1) + o(2))^2", &p).unwrap();
        let want = eval_str("2*o(1)*o(2)", &p).unwrap();
        assert_eq!(got, want);
        let bare = eval_str("7/3", &p).unwrap();
        assert_eq!(bare, RingElement::one(p).scale(&ratio(7, 3)));
    }

    #[test]
    fn whitespace_insensitive() {
        let p = params(3);
        let a = eval_str(" tau( 1 , 2 ) * o( 3 ) ", &p).unwrap();
        let b = eval_str("tau(1,2)*o(3)", &p).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn display_round_trips() {
        let p = params(3);
        for src in [
            "tau(1,2)*tau(1,3) - 3/2*o(1)*o(2)",
            "-tau(1,2) + 3*o(1)",
            "l(1,1)*l(1,2)*o(3)",
            "0*o(1)",
            "5",
        ] {
            let e = eval_str(src, &p).unwrap();
            let text = e.to_string();
            let back = eval_str(&text, &p).unwrap();
            assert_eq!(back, e, "round-trip through {text:?}");
        }
    }
}
