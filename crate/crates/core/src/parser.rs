//! Closed-form series expressions such as `(1-sqrt(1-4*x))/(2*x)`.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | base ('^' integer)?
//! base   := rational | 'x' | 'z' | '(' expr ')' | 'sqrt' '(' expr ')'
//! ```
//!
//! `p/q` between two bare integer literals is a rational literal; every
//! other `/` is series division. Implicit multiplication is rejected.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::error::SeriesError;
use crate::rational::Rational;
use crate::series::PowerSeries;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SeriesExpr {
    Int(BigInt),
    Rat(Rational),
    Var,
    Neg(Box<SeriesExpr>),
    Add(Box<SeriesExpr>, Box<SeriesExpr>),
    Sub(Box<SeriesExpr>, Box<SeriesExpr>),
    Mul(Box<SeriesExpr>, Box<SeriesExpr>),
    Div(Box<SeriesExpr>, Box<SeriesExpr>),
    Pow(Box<SeriesExpr>, u32),
    Sqrt(Box<SeriesExpr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} error at position {position}: {message}", match .kind { ParseErrorKind::Lexical => "lexical", ParseErrorKind::Syntax => "syntax" })]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Zero-based character offset into the input.
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot evaluate `{subexpr}`: {source}")]
pub struct EvalError {
    pub subexpr: String,
    #[source]
    pub source: SeriesError,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var,
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::Var => f.write_str("variable"),
            Tok::Sqrt => f.write_str("`sqrt`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
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
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    return Err(ParseError {
                        kind: ParseErrorKind::Lexical,
                        position: i,
                        message: "decimal literals are not supported; write p/q".into(),
                    });
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Int(digits.parse().expect("ascii digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = match word.as_str() {
                    "x" | "z" => Tok::Var,
                    "sqrt" => Tok::Sqrt,
                    _ => {
                        return Err(ParseError {
                            kind: ParseErrorKind::Lexical,
                            position: start,
                            message: format!("unknown identifier `{word}`"),
                        })
                    }
                };
                out.push((tok, start));
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ParseError {
                    kind: ParseErrorKind::Lexical,
                    position: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

/// A parsed factor plus whether it was a bare integer token, which decides
/// whether `p/q` becomes a rational literal.
struct Factor {
    expr: SeriesExpr,
    bare_int: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            kind: ParseErrorKind::Syntax,
            position: self.at(),
            message: format!("expected {expected}, found {}", self.peek()),
        })
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(expected)
        }
    }

    fn expr(&mut self) -> Result<SeriesExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = SeriesExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = SeriesExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<SeriesExpr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Factor {
                        expr: SeriesExpr::Mul(Box::new(lhs.expr), Box::new(rhs.expr)),
                        bare_int: false,
                    };
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.factor()?;
                    let expr = match (&lhs, &rhs) {
                        (
                            Factor {
                                expr: SeriesExpr::Int(p),
                                bare_int: true,
                            },
                            Factor {
                                expr: SeriesExpr::Int(q),
                                bare_int: true,
                            },
                        ) if !q.is_zero() => SeriesExpr::Rat(Rational::new(p.clone(), q.clone())),
                        _ => SeriesExpr::Div(Box::new(lhs.expr), Box::new(rhs.expr)),
                    };
                    lhs = Factor {
                        expr,
                        bare_int: false,
                    };
                }
                Tok::Var | Tok::Int(_) | Tok::Sqrt | Tok::LParen => {
                    return self.fail("an operator (implicit multiplication is not supported)")
                }
                _ => return Ok(lhs.expr),
            }
        }
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let inner = self.factor()?;
            return Ok(Factor {
                expr: SeriesExpr::Neg(Box::new(inner.expr)),
                bare_int: false,
            });
        }
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Int(n) => {
                let Ok(e) = u32::try_from(&n) else {
                    return self.fail("an exponent that fits in 32 bits");
                };
                self.bump();
                Ok(Factor {
                    expr: SeriesExpr::Pow(Box::new(base.expr), e),
                    bare_int: false,
                })
            }
            Tok::Minus => self.fail("a nonnegative integer exponent (write 1/(...)^k)"),
            _ => self.fail("an integer exponent"),
        }
    }

    fn base(&mut self) -> Result<Factor, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Factor {
                    expr: SeriesExpr::Int(n),
                    bare_int: true,
                })
            }
            Tok::Var => {
                self.bump();
                Ok(Factor {
                    expr: SeriesExpr::Var,
                    bare_int: false,
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Factor {
                    expr: inner,
                    bare_int: false,
                })
            }
            Tok::Sqrt => {
                self.bump();
                self.expect(Tok::LParen, "`(` after `sqrt`")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Factor {
                    expr: SeriesExpr::Sqrt(Box::new(inner)),
                    bare_int: false,
                })
            }
            _ => self.fail("a number, `x`, `(` or `sqrt`"),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse(text: &str) -> Result<SeriesExpr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("an operator or end of input");
    }
    Ok(e)
}

impl SeriesExpr {
    fn precedence(&self) -> u8 {
        match self {
            SeriesExpr::Add(..) | SeriesExpr::Sub(..) => 1,
            SeriesExpr::Mul(..) | SeriesExpr::Div(..) => 2,
            SeriesExpr::Neg(_) => 3,
            // A negative literal prints with its sign, so it binds like `Neg`.
            SeriesExpr::Int(v) if v.is_negative() => 3,
            SeriesExpr::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Evaluates to `order` coefficients.
    ///
    /// Division by a series of valuation `k` shifts both operands down by
    /// `x^k`, which costs `k` orders of truncation. Subexpressions are
    /// re-evaluated at a higher working order until the result covers
    /// `order` coefficients.
    pub fn evaluate(&self, order: usize) -> Result<PowerSeries, EvalError> {
        assert!(order >= 1, "truncation order must be at least 1");
        let mut working = order;
        for _ in 0..8 {
            let s = self.eval_at(working)?;
            if s.order() >= order {
                return Ok(s.truncate(order));
            }
            working += order - s.order();
        }
        // Shifts are bounded by the tree, so this only triggers on
        // pathological nesting.
        let s = self.eval_at(working)?;
        Err(EvalError {
            subexpr: self.to_string(),
            source: SeriesError::ShiftExhausted {
                k: working - s.order(),
                order,
            },
        })
    }

    fn eval_at(&self, n: usize) -> Result<PowerSeries, EvalError> {
        let wrap = |e: &SeriesExpr, source| EvalError {
            subexpr: e.to_string(),
            source,
        };
        Ok(match self {
            SeriesExpr::Int(v) => PowerSeries::constant(Rational::from_integer(v.clone()), n),
            SeriesExpr::Rat(q) => PowerSeries::constant(q.clone(), n),
            SeriesExpr::Var => PowerSeries::x(n),
            SeriesExpr::Neg(a) => a.eval_at(n)?.neg(),
            SeriesExpr::Add(a, b) => a.eval_at(n)?.add(&b.eval_at(n)?),
            SeriesExpr::Sub(a, b) => a.eval_at(n)?.sub(&b.eval_at(n)?),
            SeriesExpr::Mul(a, b) => a.eval_at(n)?.mul(&b.eval_at(n)?),
            SeriesExpr::Pow(a, e) => a.eval_at(n)?.pow(*e),
            SeriesExpr::Sqrt(a) => a.eval_at(n)?.sqrt().map_err(|e| wrap(self, e))?,
            SeriesExpr::Div(a, b) => {
                let num = a.eval_at(n)?;
                let den = b.eval_at(n)?;
                let k = den
                    .valuation()
                    .ok_or_else(|| wrap(b, SeriesError::NotInvertible))?;
                if k == 0 {
                    num.div(&den).map_err(|e| wrap(self, e))?
                } else {
                    // `p / x^k q` with q(0) != 0.
                    let num = num.shift_divide(k).map_err(|e| match e {
                        SeriesError::NotDivisible { .. } => wrap(self, SeriesError::NotInvertible),
                        other => wrap(self, other),
                    })?;
                    let den = den.shift_divide(k).map_err(|e| wrap(b, e))?;
                    num.div(&den).map_err(|e| wrap(self, e))?
                }
            }
        })
    }
}

impl fmt::Display for SeriesExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &SeriesExpr, paren: bool) -> fmt::Result {
            if paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        let p = self.precedence();
        match self {
            SeriesExpr::Int(v) => write!(f, "{v}"),
            SeriesExpr::Rat(q) => write!(f, "({}/{})", q.numer(), q.denom()),
            SeriesExpr::Var => f.write_str("x"),
            SeriesExpr::Neg(a) => {
                f.write_str("-")?;
                child(f, a, a.precedence() < p)
            }
            SeriesExpr::Add(a, b) | SeriesExpr::Sub(a, b) | SeriesExpr::Mul(a, b) | SeriesExpr::Div(a, b) => {
                let op = match self {
                    SeriesExpr::Add(..) => " + ",
                    SeriesExpr::Sub(..) => " - ",
                    SeriesExpr::Mul(..) => "*",
                    _ => "/",
                };
                child(f, a, a.precedence() < p)?;
                f.write_str(op)?;
                // Integer over integer must stay a division, not a literal.
                let int_pair = matches!(self, SeriesExpr::Div(..))
                    && matches!(**a, SeriesExpr::Int(_))
                    && matches!(**b, SeriesExpr::Int(_));
                child(f, b, b.precedence() <= p || int_pair)
            }
            SeriesExpr::Pow(a, e) => {
                child(f, a, a.precedence() < 5)?;
                write!(f, "^{e}")
            }
            SeriesExpr::Sqrt(a) => write!(f, "sqrt({a})"),
        }
    }
}

impl SeriesExpr {
    pub fn int(v: i64) -> Self {
        SeriesExpr::Int(BigInt::from(v))
    }
}

/// `parse` followed by `evaluate`.
pub fn parse_series(text: &str, order: usize) -> Result<PowerSeries, SeriesInputError> {
    let expr = parse(text)?;
    Ok(expr.evaluate(order)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesInputError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
