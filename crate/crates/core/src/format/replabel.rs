//! Representation labels such as `2D(1/2)+D0` or `R4+3D0`.
//!
//! ```text
//! list := item ('+' item)*
//! item := mult? base
//! mult := posint
//! base := 'D(' J ')' | 'R' odd-or-4 | 'D0'
//! J    := int | int '/2'
//! ```
//!
//! `R<d>` accepts `R4` and any odd `d >= 3` (`R3` is the adjoint of `so(3)`).
//! Whitespace is not allowed inside items but is skipped around `+`.

use super::{ParseError, ParseErrorKind};
use crate::reps::{RepLabel, Summand};

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Option<(usize, u64)> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).ok()?;
        s.parse().ok().map(|v| (start, v))
    }

    fn err(&self, reason: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, ParseErrorKind::Syntax, reason)
    }
}

pub fn parse_rep_label(text: &str) -> Result<RepLabel, ParseError> {
    let mut c = Cursor {
        text: text.as_bytes(),
        pos: 0,
    };
    let mut summands: Vec<Summand> = Vec::new();
    loop {
        c.skip_ws();
        let mult = match c.uint() {
            Some((at, 0)) => return Err(ParseError::new(at, ParseErrorKind::Syntax, "multiplicity must be positive")),
            Some((_, m)) => m as u32,
            None => 1,
        };
        let base = parse_base(&mut c)?;
        match base {
            Summand::Trivial(k) => push(&mut summands, Summand::Trivial(k * mult)),
            other => {
                for _ in 0..mult {
                    push(&mut summands, other);
                }
            }
        }
        c.skip_ws();
        match c.peek() {
            None => break,
            Some(b'+') => c.pos += 1,
            Some(_) => return Err(c.err("expected '+' or end of label")),
        }
    }
    Ok(RepLabel::new(summands))
}

fn push(summands: &mut Vec<Summand>, s: Summand) {
    if let (Some(Summand::Trivial(k)), Summand::Trivial(l)) = (summands.last_mut(), s) {
        *k += l;
        return;
    }
    summands.push(s);
}

fn parse_base(c: &mut Cursor<'_>) -> Result<Summand, ParseError> {
    match c.peek() {
        Some(b'D') => {
            c.pos += 1;
            if c.eat(b'(') {
                let (at, num) = c.uint().ok_or_else(|| c.err("expected integer J"))?;
                let lambda = if c.eat(b'/') {
                    let (dat, den) = c.uint().ok_or_else(|| c.err("expected denominator"))?;
                    if den != 2 {
                        return Err(ParseError::new(
                            dat,
                            ParseErrorKind::HalfIntegerDenominator,
                            "half-integer J must have denominator 2",
                        ));
                    }
                    if num % 2 == 0 {
                        return Err(ParseError::new(at, ParseErrorKind::Syntax, "J = n/2 needs odd n"));
                    }
                    num
                } else {
                    2 * num
                };
                if !c.eat(b')') {
                    return Err(c.err("expected ')'"));
                }
                let lambda = u32::try_from(lambda).map_err(|_| ParseError::new(at, ParseErrorKind::Syntax, "J too large"))?;
                Ok(if lambda == 0 {
                    Summand::Trivial(1)
                } else {
                    Summand::Sl2Irrep(lambda)
                })
            } else if c.eat(b'0') {
                Ok(Summand::Trivial(1))
            } else {
                Err(c.err("expected 'D(' or 'D0'"))
            }
        }
        Some(b'R') => {
            c.pos += 1;
            let (at, d) = c.uint().ok_or_else(|| c.err("expected dimension after 'R'"))?;
            match d {
                4 => Ok(Summand::So3R4),
                d if d >= 3 && d % 2 == 1 => Ok(Summand::So3Odd(((d - 1) / 2) as u32)),
                _ => Err(ParseError::new(at, ParseErrorKind::Syntax, "R<d> needs d = 4 or odd d >= 3")),
            }
        }
        _ => Err(c.err("expected 'D' or 'R'")),
    }
}

/// Canonical text form; repeated adjacent summands get a multiplicity prefix.
pub fn emit_rep_label(label: &RepLabel) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    let s = &label.summands;
    while i < s.len() {
        let mut run = 1;
        while i + run < s.len() && s[i + run] == s[i] && !matches!(s[i], Summand::Trivial(_)) {
            run += 1;
        }
        let (mult, base) = match s[i] {
            Summand::Trivial(k) => (k as usize, "D0".to_string()),
            Summand::Sl2Irrep(l) if l % 2 == 0 => (run, format!("D({})", l / 2)),
            Summand::Sl2Irrep(l) => (run, format!("D({l}/2)")),
            Summand::So3R4 => (run, "R4".to_string()),
            Summand::So3Odd(j) => (run, format!("R{}", 2 * j + 1)),
        };
        if mult > 0 {
            parts.push(if mult == 1 { base } else { format!("{mult}{base}") });
        }
        i += run;
    }
    parts.join("+")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_labels() {
        let l = parse_rep_label("2D(1/2)+D0").unwrap();
        assert_eq!(l.summands, vec![Summand::Sl2Irrep(1), Summand::Sl2Irrep(1), Summand::Trivial(1)]);
        assert_eq!(parse_rep_label("D0").unwrap().summands, vec![Summand::Trivial(1)]);
        let l = parse_rep_label("R4+3D0").unwrap();
        assert_eq!(l.summands, vec![Summand::So3R4, Summand::Trivial(3)]);
        assert_eq!(parse_rep_label("D(3)").unwrap().summands, vec![Summand::Sl2Irrep(6)]);
        assert_eq!(parse_rep_label("R7").unwrap().summands, vec![Summand::So3Odd(3)]);
        assert_eq!(parse_rep_label("D(3/2) + D(1)").unwrap().dim(), 7);
    }

    #[test]
    fn label_errors() {
        let e = parse_rep_label("D(1/3)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::HalfIntegerDenominator);
        assert_eq!(e.offset, 4);
        assert!(parse_rep_label("D(2/2)").is_err());
        assert!(parse_rep_label("").is_err());
        assert!(parse_rep_label("R6").is_err());
        assert!(parse_rep_label("D1").is_err());
        assert!(parse_rep_label("0D0").is_err());
        let e = parse_rep_label("D0 D0").unwrap_err();
        assert_eq!(e.offset, 3);
    }

    #[test]
    fn emit_canonical() {
        for s in ["2D(1/2)+D0", "D0", "R4+3D0", "D(3)", "D(1)+2D(1/2)", "R7", "R4+R3"] {
            assert_eq!(emit_rep_label(&parse_rep_label(s).unwrap()), s);
        }
        assert_eq!(emit_rep_label(&parse_rep_label("D0+D0").unwrap()), "2D0");
        assert_eq!(emit_rep_label(&parse_rep_label("D(0)").unwrap()), "D0");
    }
}
