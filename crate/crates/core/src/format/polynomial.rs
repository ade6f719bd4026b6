//! Polynomial expressions over the coordinates dual to a basis.
//!
//! ```text
//! expr     := sign? term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ('^' nonneg-int)?
//! atom     := rational | variable | '(' expr ')'
//! rational := int ('/' posint)?
//! ```
//!
//! A variable is the coordinate name of a basis element (see
//! [`coordinate_names`]), the basis label itself, or `x<k>` with `1 <= k <= n`.
//! Whitespace is insignificant; implicit multiplication is rejected.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ParseError, ParseErrorKind};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;

/// Printable coordinate names: `X<k>` becomes `x<k>`, other labels get a
/// lowercase first letter. Falls back to `x1..xn` when that is ambiguous.
pub fn coordinate_names(basis: &[String]) -> Vec<String> {
    let n = basis.len();
    let fallback: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
    let names: Vec<String> = basis
        .iter()
        .map(|label| {
            let mut chars = label.chars();
            match chars.next() {
                Some(first) => first.to_lowercase().chain(chars).collect(),
                None => String::new(),
            }
        })
        .collect();
    let valid = names.iter().all(|s| is_identifier(s));
    let distinct = names.iter().collect::<BTreeSet<_>>().len() == n;
    let clashes = names
        .iter()
        .enumerate()
        .any(|(i, s)| fallback.iter().position(|f| f == s).is_some_and(|k| k != i));
    if valid && distinct && !clashes {
        names
    } else {
        fallback
    }
}

fn is_identifier(s: &str) -> bool {
    let mut bytes = s.bytes();
    matches!(bytes.next(), Some(b) if b.is_ascii_alphabetic() || b == b'_')
        && bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    n: usize,
    names: BTreeMap<String, usize>,
}

pub fn parse_polynomial(text: &str, basis: &[String]) -> Result<Polynomial, ParseError> {
    let n = basis.len();
    let mut names = BTreeMap::new();
    for k in 0..n {
        names.insert(format!("x{}", k + 1), k);
    }
    for (k, label) in basis.iter().enumerate() {
        names.insert(label.clone(), k);
    }
    for (k, name) in coordinate_names(basis).into_iter().enumerate() {
        names.insert(name, k);
    }
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        n,
        names,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(p.err(ParseErrorKind::Syntax, "unexpected trailing input"));
    }
    Ok(out)
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.text.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn err(&self, kind: ParseErrorKind, reason: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, kind, reason)
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        match self.peek() {
            Some(b) if b.is_ascii_alphanumeric() || b == b'(' || b == b'_' => {
                Err(self.err(ParseErrorKind::Syntax, "implicit multiplication is not allowed; use '*'"))
            }
            _ => Ok(acc),
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err(ParseErrorKind::Syntax, "expected exponent after '^'"));
            }
            let e: u32 = match digits.parse() {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => {
                    return Err(ParseError::new(
                        start,
                        ParseErrorKind::ExponentOverflow,
                        format!("exponent exceeds {MAX_EXPONENT}"),
                    ))
                }
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.text[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err(ParseErrorKind::Syntax, "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let mut q = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let den = self.digits();
                    if den.is_empty() {
                        return Err(self.err(ParseErrorKind::Syntax, "expected denominator after '/'"));
                    }
                    let den: BigInt = den.parse().expect("digits");
                    if den.is_zero() {
                        return Err(ParseError::new(at, ParseErrorKind::ZeroDenominator, "zero denominator"));
                    }
                    q /= Rational::from_integer(den);
                }
                Ok(Polynomial::constant(self.n, q))
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                while self
                    .text
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii");
                match self.names.get(name) {
                    Some(&k) => Ok(Polynomial::var(self.n, k)),
                    None => Err(ParseError::new(
                        start,
                        ParseErrorKind::UnknownVariable,
                        format!("unknown variable {name:?}"),
                    )),
                }
            }
            Some(_) => Err(self.err(ParseErrorKind::Syntax, "expected a number, variable or '('")),
            None => Err(self.err(ParseErrorKind::Syntax, "unexpected end of input")),
        }
    }
}

/// Graded-lex descending, explicit `*` and `^`, `"0"` for the zero polynomial.
pub fn emit_polynomial(p: &Polynomial, basis: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let names = coordinate_names(basis);
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        let is_constant = m.degree() == 0;
        if !abs.is_one() || is_constant {
            factors.push(rational::format(&abs));
        }
        for (k, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[k].clone()),
                e => factors.push(format!("{}^{e}", names[k])),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}
