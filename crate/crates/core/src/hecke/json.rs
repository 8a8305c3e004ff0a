//! JSON encoding of parameter polynomials and Hecke algebra elements.
//!
//! A polynomial is a list of `[expvec, coeff]` pairs where `expvec` lists
//! `[deg_a, deg_b]` for every parameter class. Coefficients that fit in an
//! `i64` are JSON numbers, larger ones are decimal strings.

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::element::HeckeElement;
use super::poly::{Monomial, ParamPoly};
use crate::error::{Error, Result};
use crate::system::CoxeterSystem;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn int_to_json(c: &BigInt) -> Value {
    match i64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad(format!("non-integer coefficient {n}"))),
        Value::String(s) => s.parse().map_err(|_| bad(format!("bad integer string {s:?}"))),
        other => Err(bad(format!("coefficient must be an integer, got {other}"))),
    }
}

pub fn poly_to_json(p: &ParamPoly, n_classes: usize) -> Value {
    let n = n_classes.max(p.class_span());
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                let exps: Vec<Value> = (0..n).map(|k| json!([m.exponents(k).0, m.exponents(k).1])).collect();
                json!([exps, int_to_json(c)])
            })
            .collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Result<ParamPoly> {
    let terms = v.as_array().ok_or_else(|| bad("polynomial must be a list of [expvec, coeff]"))?;
    let mut out = ParamPoly::zero();
    for t in terms {
        let [exps, coeff] = t.as_array().map(Vec::as_slice).unwrap_or_default() else {
            return Err(bad("each term must be [expvec, coeff]"));
        };
        let pairs = exps
            .as_array()
            .ok_or_else(|| bad("expvec must be a list"))?
            .iter()
            .map(|p| {
                let pair: [i32; 2] = serde_json::from_value(p.clone()).map_err(|_| bad("exponent pair must be [a, b]"))?;
                Ok((pair[0], pair[1]))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Monomial::from_exponents(&pairs).ok_or_else(|| bad("a-exponents must be non-negative"))?;
        out = &out + &ParamPoly::term(m, int_from_json(coeff)?);
    }
    Ok(out)
}

pub fn hecke_to_json(h: &HeckeElement, n_classes: usize) -> Value {
    Value::Array(
        h.terms()
            .map(|(w, c)| json!({"word": w.word(), "coeff": poly_to_json(c, n_classes)}))
            .collect(),
    )
}

/// Parses and normalizes an element; repeated or non-reduced words are combined.
pub fn hecke_from_json(sys: &CoxeterSystem, v: &Value) -> Result<HeckeElement> {
    let items = v.as_array().ok_or_else(|| bad("Hecke element must be a list of {word, coeff}"))?;
    let mut out = HeckeElement::zero();
    for item in items {
        let word: Vec<usize> = serde_json::from_value(item.get("word").cloned().unwrap_or(Value::Null))
            .map_err(|_| bad("word must be a list of generator indices"))?;
        let coeff = poly_from_json(item.get("coeff").ok_or_else(|| bad("missing coeff"))?)?;
        let w = sys.normalize(&word)?;
        if w.len() == word.len() {
            out.add_term(w, coeff);
        } else {
            // A non-reduced word is a product of generators, not a basis element.
            let mut t = HeckeElement::one();
            for &s in word.iter().rev() {
                t = t.left_mul_gen(sys, s as u8);
            }
            out = out.add(&t.scale(&coeff));
        }
    }
    Ok(out)
}
