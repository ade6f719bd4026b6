//! The JSON algebra file.
//!
//! ```json
//! {"version":1,"name":"so3","dim":3,"basis":["X1","X2","X3"],
//!  "brackets":[{"i":1,"j":2,"terms":[{"k":3,"c":1}]}],
//!  "params":{"p":"1/2"},
//!  "levi":{"levi_dim":3,"rep":"D(1/2)+D0"}}
//! ```
//!
//! Indices are 1-based. A coefficient `c` is an integer literal, a string
//! `"p/q"`, or a parameter reference `{"param":"p","coeff":"1/2"}` meaning
//! `coeff * p` (`coeff` defaults to 1). `basis`, `params` and `levi` are
//! optional; unknown fields are rejected everywhere.
//!
//! Emission is canonical: keys sorted, no whitespace, brackets ordered by
//! `(i, j)` with `i < j`, terms by `k`, parameters already substituted.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;
use serde_json::value::RawValue;
use serde_json::{json, Map, Value};

use super::replabel::{emit_rep_label, parse_rep_label};
use super::{ParseError, ParseErrorKind};
use crate::algebra::{default_labels, Builder, LieAlgebra};
use crate::rational::{self, Rational};
use crate::reps::RepLabel;

pub const FORMAT_VERSION: u64 = 1;

/// How an algebra splits as `s ⋉ r`: the first `levi_dim` basis elements
/// span `s`, the remaining ones span the radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviMeta {
    pub levi_dim: usize,
    pub rep: Option<RepLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDoc {
    pub name: String,
    pub algebra: LieAlgebra,
    pub levi: Option<LeviMeta>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRaw<'a> {
    #[serde(borrow)]
    version: Option<&'a RawValue>,
    name: String,
    #[serde(borrow)]
    dim: &'a RawValue,
    #[serde(default)]
    basis: Option<Vec<String>>,
    #[serde(borrow)]
    brackets: Vec<&'a RawValue>,
    #[serde(default, borrow)]
    params: Option<BTreeMap<String, &'a RawValue>>,
    #[serde(default, borrow)]
    levi: Option<&'a RawValue>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketRaw<'a> {
    #[serde(borrow)]
    i: &'a RawValue,
    #[serde(borrow)]
    j: &'a RawValue,
    #[serde(borrow)]
    terms: Vec<&'a RawValue>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRaw<'a> {
    #[serde(borrow)]
    k: &'a RawValue,
    #[serde(borrow)]
    c: &'a RawValue,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamRefRaw<'a> {
    param: String,
    #[serde(default, borrow)]
    coeff: Option<&'a RawValue>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LeviRaw<'a> {
    #[serde(borrow)]
    levi_dim: &'a RawValue,
    #[serde(default, borrow)]
    rep: Option<&'a RawValue>,
}

struct Ctx<'a> {
    text: &'a str,
}

impl<'a> Ctx<'a> {
    fn offset(&self, raw: &RawValue) -> usize {
        raw.get().as_ptr() as usize - self.text.as_ptr() as usize
    }

    fn error(&self, raw: &RawValue, kind: ParseErrorKind, reason: impl Into<String>) -> ParseError {
        ParseError::new(self.offset(raw), kind, reason)
    }

    /// Deserializes a sub-document, mapping serde errors to absolute offsets.
    fn sub<T: Deserialize<'a>>(&self, raw: &'a RawValue) -> Result<T, ParseError> {
        serde_json::from_str(raw.get()).map_err(|e| json_error(raw.get(), self.offset(raw), &e))
    }

    fn index(&self, raw: &RawValue, what: &str, dim: usize) -> Result<usize, ParseError> {
        let idx = raw
            .get()
            .parse::<u64>()
            .map_err(|_| self.error(raw, ParseErrorKind::Schema, format!("{what} must be a positive integer")))?;
        if idx == 0 || idx > dim as u64 {
            return Err(self.error(
                raw,
                ParseErrorKind::IndexOutOfRange,
                format!("{what} = {idx} is outside 1..{dim}"),
            ));
        }
        Ok(idx as usize - 1)
    }

    /// An integer literal or a `"p/q"` string.
    fn rational(&self, raw: &RawValue) -> Result<Rational, ParseError> {
        let text = raw.get();
        if let Some(inner) = text.strip_prefix('"') {
            let s: String = serde_json::from_str(text)
                .map_err(|e| json_error(text, self.offset(raw), &e))?;
            if let Some((_, den)) = s.split_once('/') {
                if den.trim().parse::<BigInt>().is_ok_and(|d| d.is_zero()) {
                    let at = self.offset(raw) + 1 + inner.find('/').map_or(0, |p| p + 1);
                    return Err(ParseError::new(at, ParseErrorKind::ZeroDenominator, "zero denominator"));
                }
            }
            rational::parse(&s).ok_or_else(|| {
                self.error(raw, ParseErrorKind::Schema, format!("{s:?} is not a rational \"p/q\""))
            })
        } else {
            text.parse::<BigInt>()
                .map(Rational::from_integer)
                .map_err(|_| self.error(raw, ParseErrorKind::Schema, "coefficient must be an integer or a \"p/q\" string"))
        }
    }

    fn coefficient(&self, raw: &'a RawValue, params: &BTreeMap<String, Rational>) -> Result<Rational, ParseError> {
        if !raw.get().starts_with('{') {
            return self.rational(raw);
        }
        let r: ParamRefRaw<'a> = self.sub(raw)?;
        let value = params.get(&r.param).ok_or_else(|| {
            self.error(
                raw,
                ParseErrorKind::UnresolvedParameter,
                format!("parameter {:?} has no value", r.param),
            )
        })?;
        let coeff = match r.coeff {
            Some(c) => self.rational(c)?,
            None => rational::one(),
        };
        Ok(coeff * value)
    }
}

fn json_error(text: &str, base: usize, e: &serde_json::Error) -> ParseError {
    let kind = match e.classify() {
        serde_json::error::Category::Data => ParseErrorKind::Schema,
        _ => ParseErrorKind::Json,
    };
    let mut offset = 0;
    for (n, line) in text.split_inclusive('\n').enumerate() {
        if n + 1 == e.line() {
            offset += e.column().saturating_sub(1).min(line.len());
            break;
        }
        offset += line.len();
    }
    let reason = e.to_string();
    let reason = match reason.rfind(" at line ") {
        Some(cut) => reason[..cut].to_string(),
        None => reason,
    };
    ParseError::new(base + offset, kind, reason)
}

/// Parses a document without external parameter values.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra, ParseError> {
    parse_algebra_doc(text, &BTreeMap::new()).map(|doc| doc.algebra)
}

/// Parses a full document. `overrides` take precedence over the file's own
/// `params` block.
pub fn parse_algebra_doc(text: &str, overrides: &BTreeMap<String, Rational>) -> Result<AlgebraDoc, ParseError> {
    let ctx = Ctx { text };
    let file: FileRaw<'_> = serde_json::from_str(text).map_err(|e| json_error(text, 0, &e))?;

    if let Some(v) = file.version {
        if v.get() != FORMAT_VERSION.to_string() {
            return Err(ctx.error(v, ParseErrorKind::Schema, format!("unsupported version {}", v.get())));
        }
    }
    let dim = file
        .dim
        .get()
        .parse::<usize>()
        .ok()
        .filter(|&d| d > 0)
        .ok_or_else(|| ctx.error(file.dim, ParseErrorKind::Schema, "dim must be a positive integer"))?;

    let basis = match file.basis {
        Some(b) => {
            if b.len() != dim {
                return Err(ctx.error(
                    file.dim,
                    ParseErrorKind::Schema,
                    format!("dim is {dim} but basis has {} labels", b.len()),
                ));
            }
            let mut seen = BTreeSet::new();
            for label in &b {
                if label.is_empty() || !seen.insert(label.as_str()) {
                    return Err(ctx.error(
                        file.dim,
                        ParseErrorKind::Schema,
                        format!("basis label {label:?} is empty or repeated"),
                    ));
                }
            }
            b
        }
        None => default_labels(dim),
    };

    let mut params: BTreeMap<String, Rational> = BTreeMap::new();
    for (name, raw) in file.params.iter().flatten() {
        params.insert(name.clone(), ctx.rational(raw)?);
    }
    for (name, value) in overrides {
        params.insert(name.clone(), value.clone());
    }

    let mut builder = Builder::new(basis);
    let mut seen_pairs = BTreeMap::new();
    for raw in &file.brackets {
        let rec: BracketRaw<'_> = ctx.sub(raw)?;
        let i = ctx.index(rec.i, "i", dim)?;
        let j = ctx.index(rec.j, "j", dim)?;
        if i == j {
            return Err(ctx.error(rec.j, ParseErrorKind::Schema, format!("bracket of X{} with itself", i + 1)));
        }
        let key = (i.min(j), i.max(j));
        if let Some(first) = seen_pairs.insert(key, ctx.offset(raw)) {
            return Err(ctx.error(
                raw,
                ParseErrorKind::DuplicatePair,
                format!("pair ({}, {}) already given at byte {first}", key.0 + 1, key.1 + 1),
            ));
        }
        let mut ks = BTreeSet::new();
        for term_raw in &rec.terms {
            let term: TermRaw<'_> = ctx.sub(term_raw)?;
            let k = ctx.index(term.k, "k", dim)?;
            if !ks.insert(k) {
                return Err(ctx.error(term.k, ParseErrorKind::Schema, format!("k = {} repeated in one bracket", k + 1)));
            }
            let c = ctx.coefficient(term.c, &params)?;
            builder
                .add(i, j, k, c)
                .map_err(|e| ctx.error(term_raw, ParseErrorKind::Schema, e.to_string()))?;
        }
    }
    let algebra = builder
        .build()
        .map_err(|e| ParseError::new(0, ParseErrorKind::Schema, e.to_string()))?;

    let levi = match file.levi {
        None => None,
        Some(raw) => {
            let l: LeviRaw<'_> = ctx.sub(raw)?;
            let levi_dim = l
                .levi_dim
                .get()
                .parse::<usize>()
                .ok()
                .filter(|&d| d <= dim)
                .ok_or_else(|| ctx.error(l.levi_dim, ParseErrorKind::Schema, format!("levi_dim must be an integer in 0..={dim}")))?;
            let rep = match l.rep {
                None => None,
                Some(r) => {
                    let s: String = ctx.sub(r)?;
                    let label = parse_rep_label(&s).map_err(|e| ParseError {
                        offset: ctx.offset(r) + 1 + e.offset,
                        ..e
                    })?;
                    Some(label)
                }
            };
            Some(LeviMeta { levi_dim, rep })
        }
    };

    Ok(AlgebraDoc {
        name: file.name,
        algebra,
        levi,
    })
}

fn rational_value(q: &Rational) -> Value {
    if q.is_integer() {
        if let Some(n) = q.numer().to_i64() {
            return json!(n);
        }
    }
    Value::String(rational::format(q))
}

/// Canonical text of a full document.
pub fn emit_algebra_doc(doc: &AlgebraDoc) -> String {
    let alg = &doc.algebra;
    let brackets: Vec<Value> = alg
        .brackets()
        .iter()
        .map(|(&(i, j), terms)| {
            let terms: Vec<Value> = terms
                .iter()
                .map(|(k, c)| json!({"k": k + 1, "c": rational_value(c)}))
                .collect();
            json!({"i": i + 1, "j": j + 1, "terms": terms})
        })
        .collect();
    let mut root = Map::new();
    root.insert("version".into(), json!(FORMAT_VERSION));
    root.insert("name".into(), json!(doc.name));
    root.insert("dim".into(), json!(alg.dim()));
    root.insert("basis".into(), json!(alg.basis()));
    root.insert("brackets".into(), Value::Array(brackets));
    if let Some(levi) = &doc.levi {
        let mut m = Map::new();
        m.insert("levi_dim".into(), json!(levi.levi_dim));
        if let Some(rep) = &levi.rep {
            m.insert("rep".into(), json!(emit_rep_label(rep)));
        }
        root.insert("levi".into(), Value::Object(m));
    }
    Value::Object(root).to_string()
}

/// Canonical text of a bare algebra under the name `"algebra"`.
pub fn emit_algebra(alg: &LieAlgebra) -> String {
    emit_algebra_doc(&AlgebraDoc {
        name: "algebra".into(),
        algebra: alg.clone(),
        levi: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::reps::{so3_standard, Summand};

    const SO3: &str = r#"{
        "version": 1, "name": "so3", "dim": 3,
        "brackets": [
            {"i": 1, "j": 2, "terms": [{"k": 3, "c": 1}]},
            {"i": 1, "j": 3, "terms": [{"k": 2, "c": -1}]},
            {"i": 2, "j": 3, "terms": [{"k": 1, "c": "1"}]}
        ]
    }"#;

    #[test]
    fn so3_file() {
        assert_eq!(parse_algebra(SO3).unwrap(), so3_standard());
    }

    #[test]
    fn empty_brackets_is_abelian() {
        let alg = parse_algebra(r#"{"name":"a","dim":4,"brackets":[]}"#).unwrap();
        assert_eq!(alg, LieAlgebra::abelian(4));
    }

    #[test]
    fn round_trip_is_canonical() {
        let alg = parse_algebra(SO3).unwrap();
        let text = emit_algebra(&alg);
        assert_eq!(
            text,
            r#"{"basis":["X1","X2","X3"],"brackets":[{"i":1,"j":2,"terms":[{"c":1,"k":3}]},{"i":1,"j":3,"terms":[{"c":-1,"k":2}]},{"i":2,"j":3,"terms":[{"c":1,"k":1}]}],"dim":3,"name":"algebra","version":1}"#
        );
        assert_eq!(parse_algebra(&text).unwrap(), alg);
    }

    #[test]
    fn params_and_levi() {
        let text = r#"{"name":"t","dim":4,"basis":["A","B","C","D"],
            "brackets":[{"i":1,"j":4,"terms":[{"k":1,"c":{"param":"p","coeff":"1/2"}}]},
                        {"i":2,"j":4,"terms":[{"k":2,"c":{"param":"p"}}]},
                        {"i":3,"j":4,"terms":[{"k":3,"c":"-7/3"}]}],
            "params":{"p":2},
            "levi":{"levi_dim":0,"rep":"2D0"}}"#;
        let doc = parse_algebra_doc(text, &BTreeMap::new()).unwrap();
        assert_eq!(doc.algebra.structure_constant(0, 3, 0), int(1));
        assert_eq!(doc.algebra.structure_constant(1, 3, 1), int(2));
        assert_eq!(doc.algebra.structure_constant(2, 3, 2), frac(-7, 3));
        assert_eq!(doc.levi.as_ref().unwrap().rep.as_ref().unwrap().summands, vec![Summand::Trivial(2)]);
        let overrides = BTreeMap::from([("p".to_string(), frac(1, 3))]);
        let doc2 = parse_algebra_doc(text, &overrides).unwrap();
        assert_eq!(doc2.algebra.structure_constant(1, 3, 1), frac(1, 3));
        let again = parse_algebra_doc(&emit_algebra_doc(&doc), &BTreeMap::new()).unwrap();
        assert_eq!(again, doc);
    }

    fn err(text: &str) -> ParseError {
        parse_algebra(text).unwrap_err()
    }

    #[test]
    fn schema_errors() {
        let e = err(r#"{"name":"d","dim":3,"brackets":[{"i":1,"j":2,"terms":[]},{"i":2,"j":1,"terms":[]}]}"#);
        assert_eq!((e.kind, e.offset), (ParseErrorKind::DuplicatePair, 57));
        let e = err(r#"{"name":"d","dim":3,"brackets":[{"i":1,"j":4,"terms":[]}]}"#);
        assert_eq!((e.kind, e.offset), (ParseErrorKind::IndexOutOfRange, 43));
        let e = err(r#"{"name":"d","dim":3,"brackets":[{"i":1,"j":2,"terms":[{"k":3,"c":"1/0"}]}]}"#);
        assert_eq!((e.kind, e.offset), (ParseErrorKind::ZeroDenominator, 68));
        let e = err(r#"{"name":"d","dim":3,"brackets":[{"i":1,"j":2,"terms":[{"k":3,"c":{"param":"q"}}]}]}"#);
        assert_eq!((e.kind, e.offset), (ParseErrorKind::UnresolvedParameter, 65));
        let e = err(r#"{"name":"d","dim":3,"brackets":[],"extra":1}"#);
        assert_eq!(e.kind, ParseErrorKind::Schema);
        let e = err(r#"{"name":"d","dim":3,"brackets":[{"i":1,"j":2,"terms":[],"x":0}]}"#);
        assert_eq!(e.kind, ParseErrorKind::Schema);
        assert!(e.offset >= 31, "{e}");
        let e = err(r#"{"name":"d","dim":3,"brackets":[{"i":1,"j":2,"terms":[{"k":3,"c":0.5}]}]}"#);
        assert_eq!(e.kind, ParseErrorKind::Schema);
        let e = err("{\n  \"name\": \"d\",\n  \"dim\": 3,,\n}");
        assert_eq!((e.kind, e.offset), (ParseErrorKind::Json, 28));
        let e = err(r#"{"name":"d","dim":2,"brackets":[{"i":1,"j":1,"terms":[]}]}"#);
        assert_eq!(e.kind, ParseErrorKind::Schema);
        let e = err(r#"{"name":"d","dim":2,"brackets":[],"levi":{"levi_dim":1,"rep":"D(1/3)"}}"#);
        assert_eq!((e.kind, e.offset), (ParseErrorKind::HalfIntegerDenominator, 66));
        assert!(e.to_string().starts_with("at byte 66: "));
    }
}
