//! Expressions over a preset alphabet.
//!
//! ```text
//! expr   := sign? term (sign term)*
//! term   := factor ('*'? factor)*
//! factor := rational | 'i' | 'q' ('^' exponent)? | generator
//! exponent := '-'? int ('/' int)? | '(' '-'? int ('/' int)? ')'
//! ```
//!
//! Scalars may appear anywhere in a term; generators keep their order.
//! Exponents must be multiples of 1/2.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use qcone_core::ncalg::{Element, GenId, Presentation, Word};
use qcone_core::{GaussRat, QLaurent};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character `{ch}` at position {pos}")]
    Lexical { pos: usize, ch: char },
    #[error("unexpected {found} at position {pos}, expected {expected}")]
    Syntax {
        pos: usize,
        found: String,
        expected: &'static str,
    },
    #[error("unknown token `{token}` at position {pos} for preset {preset}")]
    UnknownToken {
        pos: usize,
        token: String,
        preset: String,
    },
    #[error("malformed exponent at position {pos}: {reason}")]
    MalformedExponent { pos: usize, reason: String },
    #[error("division by zero at position {pos}")]
    ZeroDenominator { pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Slash => "`/`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Tok::Num(digits.parse().expect("ascii digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(ParseError::Lexical {
                    pos: start,
                    ch: other,
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

/// One term: a coefficient and the generator tokens in order.
#[derive(Clone, Debug, PartialEq)]
pub struct TermAst {
    pub coeff: QLaurent,
    pub tokens: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ExprAst {
    pub terms: Vec<TermAst>,
}

impl ExprAst {
    /// Sums the terms in the free algebra; no normalization.
    pub fn to_element(&self, p: &Presentation<QLaurent>) -> Element<QLaurent> {
        let mut e = Element::zero();
        for t in &self.terms {
            let ids: Vec<GenId> = t.tokens.iter().map(|n| p.g(n)).collect();
            e.add_term(Word(ids), &t.coeff);
        }
        e
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    p: &'a Presentation<QLaurent>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax(&self, expected: &'static str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            found: self.peek().describe(),
            expected,
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let mut t = self.term()?;
            if negative {
                t.coeff = -&t.coeff;
            }
            terms.push(t);
            negative = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                Tok::End => break,
                _ => return Err(self.syntax("`+`, `-` or end of input")),
            };
            self.bump();
        }
        Ok(ExprAst { terms })
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Ident(_))
    }

    fn term(&mut self) -> Result<TermAst, ParseError> {
        if !self.starts_factor() {
            return Err(self.syntax("a number, `i`, `q` or a generator"));
        }
        let mut coeff = QLaurent::one();
        let mut tokens = Vec::new();
        loop {
            self.factor(&mut coeff, &mut tokens)?;
            if matches!(self.peek(), Tok::Star) {
                self.bump();
                if !self.starts_factor() {
                    return Err(self.syntax("a factor after `*`"));
                }
            } else if !self.starts_factor() {
                break;
            }
        }
        Ok(TermAst { coeff, tokens })
    }

    fn factor(&mut self, coeff: &mut QLaurent, tokens: &mut Vec<String>) -> Result<(), ParseError> {
        let (pos, tok) = self.bump();
        match tok {
            Tok::Num(n) => {
                let r = self.fraction(n, pos)?;
                *coeff = coeff.scale(&GaussRat::real(r));
            }
            Tok::Ident(name) if name == "i" => *coeff = coeff.scale(&GaussRat::i()),
            Tok::Ident(name) if name == "q" => {
                let doubled = if matches!(self.peek(), Tok::Caret) {
                    self.bump();
                    self.exponent()?
                } else {
                    2
                };
                *coeff = &*coeff * &QLaurent::q_half_pow(doubled);
            }
            Tok::Ident(name) => {
                if self.p.find(&name).is_none() {
                    return Err(ParseError::UnknownToken {
                        pos,
                        token: name,
                        preset: self.p.name().to_string(),
                    });
                }
                tokens.push(name);
            }
            _ => unreachable!("checked by starts_factor"),
        }
        Ok(())
    }

    /// `n` or `n/d` once `n` has been read.
    fn fraction(&mut self, n: BigInt, pos: usize) -> Result<BigRational, ParseError> {
        if !matches!(self.peek(), Tok::Slash) {
            return Ok(BigRational::from_integer(n));
        }
        self.bump();
        match self.bump() {
            (_, Tok::Num(d)) if d.is_zero() => Err(ParseError::ZeroDenominator { pos }),
            (_, Tok::Num(d)) => Ok(BigRational::new(n, d)),
            (p, t) => Err(ParseError::Syntax {
                pos: p,
                found: t.describe(),
                expected: "a denominator",
            }),
        }
    }

    /// Returns twice the exponent.
    fn exponent(&mut self) -> Result<i32, ParseError> {
        let pos = self.pos();
        let paren = matches!(self.peek(), Tok::LParen);
        if paren {
            self.bump();
        }
        let negative = matches!(self.peek(), Tok::Minus);
        if negative {
            self.bump();
        }
        let value = match self.bump() {
            (p, Tok::Num(n)) => self.fraction(n, p)?,
            (_, t) => {
                return Err(ParseError::MalformedExponent {
                    pos,
                    reason: format!("found {}", t.describe()),
                })
            }
        };
        if paren {
            match self.bump() {
                (_, Tok::RParen) => {}
                (_, t) => {
                    return Err(ParseError::MalformedExponent {
                        pos,
                        reason: format!("unclosed `(`, found {}", t.describe()),
                    })
                }
            }
        }
        let doubled = value * BigRational::from_integer(2.into());
        if !doubled.is_integer() {
            return Err(ParseError::MalformedExponent {
                pos,
                reason: "not a multiple of 1/2".into(),
            });
        }
        let mut d = doubled.to_integer();
        if negative {
            d = -d;
        }
        d.to_i32().ok_or(ParseError::MalformedExponent {
            pos,
            reason: "exponent too large".into(),
        })
    }
}

pub fn parse(input: &str, p: &Presentation<QLaurent>) -> Result<ExprAst, ParseError> {
    let toks = lex(input)?;
    let mut parser = Parser { toks, at: 0, p };
    parser.expr()
}

/// Parses and returns the element, unnormalized.
pub fn parse_element(
    input: &str,
    p: &Presentation<QLaurent>,
) -> Result<Element<QLaurent>, ParseError> {
    Ok(parse(input, p)?.to_element(p))
}
