//! Text formats: the algebra JSON file, polynomial expressions and
//! representation labels.
//!
//! All parsers report failures as a [`ParseError`] carrying the byte offset
//! into the input where the problem was detected.

pub mod algebra_file;
pub mod polynomial;
pub mod replabel;

use std::fmt;

pub use algebra_file::{emit_algebra, emit_algebra_doc, parse_algebra, parse_algebra_doc, AlgebraDoc, LeviMeta};
pub use polynomial::{coordinate_names, emit_polynomial, parse_polynomial};
pub use replabel::{emit_rep_label, parse_rep_label};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Json,
    Schema,
    IndexOutOfRange,
    DuplicatePair,
    ZeroDenominator,
    UnresolvedParameter,
    Syntax,
    UnknownVariable,
    ExponentOverflow,
    HalfIntegerDenominator,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
    pub reason: String,
}

impl ParseError {
    pub fn new(offset: usize, kind: ParseErrorKind, reason: impl Into<String>) -> Self {
        Self {
            offset,
            kind,
            reason: reason.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.reason)
    }
}

impl std::error::Error for ParseError {}
