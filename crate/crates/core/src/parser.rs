//! Curve expressions such as `x^3 + y^3 - 3*x*y`.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' integer)?
//! atom    := number | 'i' | 'x' | 'y' | '(' expr ')'
//! number  := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
//! ```
//!
//! Multiplication must be written explicitly. The result is expanded into
//! monomials and collected by powers of `y`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[cfg(not(any(feature = "std", test)))]
use num_traits::Float;
use num_traits::Zero;

use crate::algebra::{BivariatePoly, Complex, UnivariatePoly};

/// Largest total degree any intermediate expansion may reach.
pub const MAX_TOTAL_DEGREE: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
pub enum ParseError {
    Empty,
    Syntax { position: usize, message: String },
    BadExponent { position: usize },
    DegreeTooLarge { position: usize },
    NoY,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Empty => f.write_str("empty curve expression"),
            ParseError::Syntax { position, message } => {
                write!(f, "syntax error at position {}: {}", position, message)
            }
            ParseError::BadExponent { position } => write!(
                f,
                "exponent at position {} is not a non-negative integer",
                position
            ),
            ParseError::DegreeTooLarge { position } => write!(
                f,
                "expansion at position {} exceeds total degree {}",
                position, MAX_TOTAL_DEGREE
            ),
            ParseError::NoY => f.write_str("y does not appear in the curve"),
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(f64),
    I,
    X,
    Y,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        let start = pos;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'i' => Token::I,
            b'x' => Token::X,
            b'y' => Token::Y,
            b'0'..=b'9' | b'.' => {
                let end = scan_number(bytes, pos);
                let text = &src[pos..end];
                let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    position: pos,
                    message: alloc::format!("malformed number '{}'", text),
                })?;
                pos = end;
                out.push((start, Token::Number(value)));
                continue;
            }
            _ => {
                let ch = src[pos..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    position: pos,
                    message: alloc::format!("unexpected character '{}'", ch),
                });
            }
        };
        pos += 1;
        out.push((start, tok));
    }
    Ok(out)
}

fn scan_number(bytes: &[u8], mut pos: usize) -> usize {
    while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'.') {
        pos += 1;
    }
    if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
        let mut p = pos + 1;
        if p < bytes.len() && (bytes[p] == b'+' || bytes[p] == b'-') {
            p += 1;
        }
        if p < bytes.len() && bytes[p].is_ascii_digit() {
            while p < bytes.len() && bytes[p].is_ascii_digit() {
                p += 1;
            }
            return p;
        }
    }
    pos
}

/// Sparse polynomial: `(power of x, power of y) -> coefficient`.
#[derive(Clone, Debug, Default)]
struct Poly(BTreeMap<(u32, u32), Complex>);

impl Poly {
    fn constant(c: Complex) -> Self {
        let mut m = BTreeMap::new();
        m.insert((0, 0), c);
        Poly(m)
    }

    fn var(x: u32, y: u32) -> Self {
        let mut m = BTreeMap::new();
        m.insert((x, y), Complex::new(1.0, 0.0));
        Poly(m)
    }

    fn total_degree(&self) -> u32 {
        self.0.keys().map(|&(a, b)| a + b).max().unwrap_or(0)
    }

    fn add(mut self, other: Poly, sign: f64) -> Poly {
        for (k, v) in other.0 {
            *self.0.entry(k).or_insert_with(Complex::zero) += v * sign;
        }
        self
    }

    fn neg(self) -> Poly {
        Poly(self.0.into_iter().map(|(k, v)| (k, -v)).collect())
    }

    fn mul(&self, other: &Poly, position: usize) -> Result<Poly, ParseError> {
        if self.total_degree() + other.total_degree() > MAX_TOTAL_DEGREE {
            return Err(ParseError::DegreeTooLarge { position });
        }
        let mut out: BTreeMap<(u32, u32), Complex> = BTreeMap::new();
        for (&(ax, ay), &a) in &self.0 {
            for (&(bx, by), &b) in &other.0 {
                *out.entry((ax + bx, ay + by)).or_insert_with(Complex::zero) += a * b;
            }
        }
        Ok(Poly(out))
    }

    fn pow(&self, e: u32, position: usize) -> Result<Poly, ParseError> {
        if self.total_degree().saturating_mul(e) > MAX_TOTAL_DEGREE {
            return Err(ParseError::DegreeTooLarge { position });
        }
        let mut acc = Poly::constant(Complex::new(1.0, 0.0));
        for _ in 0..e {
            acc = acc.mul(self, position)?;
        }
        Ok(acc)
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            position: self.position(),
            message: message.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            let sign = match self.peek() {
                Some(Token::Plus) => 1.0,
                Some(Token::Minus) => -1.0,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.add(rhs, sign);
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            let at = self.position();
            self.pos += 1;
            let rhs = self.unary()?;
            acc = acc.mul(&rhs, at)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            let at = self.position();
            self.pos += 1;
            let exp_at = self.position();
            let e = match self.peek() {
                Some(Token::Number(v)) => {
                    let v = *v;
                    if v.fract() != 0.0 || v < 0.0 || v > MAX_TOTAL_DEGREE as f64 {
                        if v.fract() == 0.0 && v > MAX_TOTAL_DEGREE as f64 {
                            return Err(ParseError::DegreeTooLarge { position: at });
                        }
                        return Err(ParseError::BadExponent { position: exp_at });
                    }
                    v as u32
                }
                Some(Token::Minus) | Some(Token::I) | Some(Token::X) | Some(Token::Y)
                | Some(Token::LParen) => return Err(ParseError::BadExponent { position: exp_at }),
                _ => return Err(self.syntax("expected exponent after '^'")),
            };
            self.pos += 1;
            if let Some(Token::Caret) = self.peek() {
                return Err(self.syntax("chained exponents are not supported"));
            }
            return base.pow(e, at);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.syntax("unexpected end of input")),
        };
        let out = match tok {
            Token::Number(v) => Poly::constant(Complex::new(v, 0.0)),
            Token::I => Poly::constant(Complex::new(0.0, 1.0)),
            Token::X => Poly::var(1, 0),
            Token::Y => Poly::var(0, 1),
            Token::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {}
                    _ => return Err(self.syntax("expected ')'")),
                }
                self.pos += 1;
                return Ok(inner);
            }
            _ => return Err(self.syntax("expected a number, i, x, y or '('")),
        };
        self.pos += 1;
        if let Some(Token::Number(_) | Token::I | Token::X | Token::Y | Token::LParen) = self.peek()
        {
            return Err(self.syntax("implicit multiplication is not supported; use '*'"));
        }
        Ok(out)
    }
}

/// Parses a curve expression and collects it into `y`-coefficients.
pub fn parse_curve(source: &str) -> Result<BivariatePoly, ParseError> {
    if source.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let tokens = tokenize(source)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: source.len(),
    };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.syntax("unexpected trailing input"));
    }

    let terms: Vec<((u32, u32), Complex)> =
        poly.0.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    let n = terms.iter().map(|&((_, y), _)| y).max().unwrap_or(0) as usize;
    if n == 0 {
        return Err(ParseError::NoY);
    }
    let mut table: Vec<Vec<Complex>> = vec![Vec::new(); n + 1];
    for ((xp, yp), c) in terms {
        let row = &mut table[n - yp as usize];
        if row.len() <= xp as usize {
            row.resize(xp as usize + 1, Complex::zero());
        }
        row[xp as usize] = c;
    }
    let coeffs = table
        .into_iter()
        .map(|row| {
            if row.is_empty() {
                UnivariatePoly::zero()
            } else {
                UnivariatePoly::from_ascending(row)
            }
        })
        .collect();
    BivariatePoly::curve(coeffs).map_err(|_| ParseError::NoY)
}
