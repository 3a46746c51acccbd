//! JSON encodings shared by the library and the command line.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::complex::ComplexKG;
use crate::coxeter::CoxeterGraph;
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Q};
use crate::walk::{hom_basis, GradedObject, Walk};

/// Round to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("{n} is not an integer"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("`{s}` is not an integer"))),
        _ => Err(Error::Parse(format!("expected an integer, got {v}"))),
    }
}

pub fn algebra_element_json(coeff: &Q, walk: Walk) -> Value {
    json!({
        "num": int_json(coeff.numer()),
        "den": int_json(coeff.denom()),
        "walk": walk.code(),
    })
}

pub fn object_json(o: &GradedObject) -> Value {
    Value::Array(o.summands.iter().map(|&(v, m)| json!([v, m])).collect())
}

pub fn object_from_json(v: &Value) -> Result<GradedObject> {
    let raw: Vec<(usize, i32)> = serde_json::from_value(v.clone())?;
    Ok(GradedObject::new(raw))
}

pub fn complex_to_json(g: &CoxeterGraph, c: &ComplexKG) -> Value {
    let mut terms = Map::new();
    let mut diffs = Map::new();
    for j in c.degrees() {
        terms.insert(j.to_string(), object_json(c.term(j)));
        if j < c.hi() {
            let d = c.diff(j);
            let (src, tgt) = (c.term(j), c.term(j + 1));
            let mut entries = Vec::new();
            for r in 0..d.rows() {
                for col in 0..d.cols() {
                    let x = d.get(r, col);
                    if x.is_zero() {
                        continue;
                    }
                    let (i, m) = src.get(col);
                    let (k, n) = tgt.get(r);
                    let w = hom_basis(g, i, m, k, n).expect("complex entries sit on walks");
                    entries.push(json!([r, col, algebra_element_json(x, w)]));
                }
            }
            diffs.insert(j.to_string(), Value::Array(entries));
        }
    }
    json!({
        "lo": c.lo(),
        "hi": c.hi(),
        "terms": terms,
        "diffs": diffs,
    })
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

fn as_i32(v: &Value, what: &str) -> Result<i32> {
    v.as_i64()
        .and_then(|x| i32::try_from(x).ok())
        .ok_or_else(|| Error::Parse(format!("`{what}` must be an integer")))
}

pub fn complex_from_json(g: &CoxeterGraph, v: &Value) -> Result<ComplexKG> {
    let lo = as_i32(get(v, "lo")?, "lo")?;
    let hi = as_i32(get(v, "hi")?, "hi")?;
    if hi < lo {
        return Ok(ComplexKG::zero());
    }
    let terms_v = get(v, "terms")?
        .as_object()
        .ok_or_else(|| Error::Parse("`terms` must be an object".into()))?;
    let mut terms = Vec::new();
    for j in lo..=hi {
        let t = match terms_v.get(&j.to_string()) {
            Some(t) => object_from_json(t)?,
            None => GradedObject::zero(),
        };
        t.check(g).map_err(|e| Error::Parse(e.to_string()))?;
        terms.push(t);
    }
    for key in terms_v.keys() {
        let j: i32 = key
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree `{key}`")))?;
        if j < lo || j > hi {
            return Err(Error::Parse(format!("term at degree {j} outside [{lo}, {hi}]")));
        }
    }
    let empty = Map::new();
    let diffs_v = match v.get("diffs") {
        Some(d) => d
            .as_object()
            .ok_or_else(|| Error::Parse("`diffs` must be an object".into()))?,
        None => &empty,
    };
    let mut diffs = Vec::new();
    for j in lo..hi {
        let (src, tgt) = (&terms[(j - lo) as usize], &terms[(j - lo + 1) as usize]);
        let mut m = QMatrix::zeros(tgt.len(), src.len());
        if let Some(entries) = diffs_v.get(&j.to_string()) {
            let entries = entries
                .as_array()
                .ok_or_else(|| Error::Parse(format!("diffs at {j} must be a list")))?;
            for e in entries {
                let (r, c, el) = match e.as_array().map(Vec::as_slice) {
                    Some([r, c, el]) => (r, c, el),
                    _ => return Err(Error::Parse(format!("bad entry {e}"))),
                };
                let r = r.as_u64().ok_or_else(|| Error::Parse("bad row".into()))? as usize;
                let c = c.as_u64().ok_or_else(|| Error::Parse("bad column".into()))? as usize;
                if r >= tgt.len() || c >= src.len() {
                    return Err(Error::Parse(format!("entry ({r}, {c}) out of range at degree {j}")));
                }
                let num = int_from_json(get(el, "num")?)?;
                let den = match el.get("den") {
                    Some(d) => int_from_json(d)?,
                    None => BigInt::from(1),
                };
                if den.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                let walk = Walk::parse(
                    get(el, "walk")?
                        .as_str()
                        .ok_or_else(|| Error::Parse("`walk` must be a string".into()))?,
                )?;
                let (i, mi) = src.get(c);
                let (k, ni) = tgt.get(r);
                if hom_basis(g, i, mi, k, ni) != Some(walk) {
                    return Err(Error::Parse(format!(
                        "walk {} does not match the summands at degree {j} entry ({r}, {c})",
                        walk.code()
                    )));
                }
                m.set(r, c, Q::new(num, den));
            }
        }
        diffs.push(m);
    }
    for key in diffs_v.keys() {
        let j: i32 = key
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree `{key}`")))?;
        if j < lo || j >= hi {
            return Err(Error::Parse(format!("differential at degree {j} outside range")));
        }
    }
    ComplexKG::new(g, lo, terms, diffs)
}
