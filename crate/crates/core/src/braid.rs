//! The braid group generators as spherical twists on complexes.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{cone, minimal_model, translate, ChainMap, ComplexKG};
use crate::coxeter::{CoxeterGraph, WeylElement};
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Q};
use crate::walk::{has_hom, GradedObject};

/// A braid word; letters are `(generator, ±1)` with 0-indexed generators.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct BraidWord {
    pub letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(letters: Vec<(usize, i8)>) -> Self {
        BraidWord { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn check(&self, g: &CoxeterGraph) -> Result<()> {
        for &(s, e) in &self.letters {
            g.check_vertex(s)?;
            if e != 1 && e != -1 {
                return Err(Error::InvalidArgument(format!("exponent {e} is not ±1")));
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> Self {
        BraidWord::new(self.letters.iter().rev().map(|&(s, e)| (s, -e)).collect())
    }

    pub fn concat(&self, other: &BraidWord) -> Self {
        let mut l = self.letters.clone();
        l.extend_from_slice(&other.letters);
        BraidWord::new(l)
    }

    pub fn push(&mut self, s: usize, e: i8) {
        self.letters.push((s, e));
    }

    /// Cancel adjacent `s s'` pairs.
    pub fn freely_reduced(&self) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::new();
        for &l in &self.letters {
            match out.last() {
                Some(&(s, e)) if s == l.0 && e == -l.1 => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        BraidWord::new(out)
    }

    /// Image in the Weyl group: the product of the letters' reflections.
    pub fn weyl_image(&self, g: &CoxeterGraph) -> Result<WeylElement> {
        let word: Vec<usize> = self.letters.iter().map(|l| l.0).collect();
        WeylElement::from_word(g, &word)
    }

    /// JSON form `[[k, ±1], ...]` with 1-indexed generators.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.letters
                .iter()
                .map(|&(s, e)| serde_json::json!([s + 1, e]))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: Vec<(i64, i64)> = serde_json::from_value(v.clone())?;
        let mut letters = Vec::new();
        for (k, e) in raw {
            if k < 1 || (e != 1 && e != -1) {
                return Err(Error::Parse(format!("bad braid letter [{k}, {e}]")));
            }
            letters.push(((k - 1) as usize, e as i8));
        }
        Ok(BraidWord::new(letters))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(s, e)| format!("s{}{}", s + 1, if e < 0 { "'" } else { "" }))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord({self})")
    }
}

/// Text syntax: whitespace-separated `s<k>` or `s<k>'`, 1-indexed.
impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let bad = || Error::Parse(format!("bad braid letter `{tok}`"));
            let body = tok.strip_prefix('s').ok_or_else(bad)?;
            let (num, e) = match body.strip_suffix('\'') {
                Some(n) => (n, -1),
                None => (body, 1),
            };
            let k: usize = num.parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            letters.push((k - 1, e));
        }
        Ok(BraidWord::new(letters))
    }
}

impl Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An extra row element: a copy of `P_s<shift>` attached to summand `src`.
#[derive(Clone, Copy)]
struct Attached {
    src: usize,
    shift: i32,
}

/// Copies of `P_s<·>` mapping to (`above`) or receiving from (`!above`) each
/// summand of `obj`, one per basis walk.
fn attached(g: &CoxeterGraph, s: usize, obj: &GradedObject, above: bool) -> Vec<Attached> {
    let mut out = Vec::new();
    let sign = if above { 1 } else { -1 };
    for (src, &(v, n)) in obj.summands.iter().enumerate() {
        if v == s {
            out.push(Attached { src, shift: n });
            out.push(Attached { src, shift: n + 2 * sign });
        } else if g.adjacent(v, s) {
            out.push(Attached { src, shift: n + sign });
        }
    }
    out
}

fn row_object(s: usize, row: &[Attached]) -> GradedObject {
    GradedObject::new(row.iter().map(|a| (s, a.shift)).collect())
}

/// `σ_s(C)`: cone of the evaluation map from the row of `P_s` copies.
pub fn twist(g: &CoxeterGraph, s: usize, c: &ComplexKG) -> Result<ComplexKG> {
    g.check_vertex(s)?;
    if c.is_zero() {
        return Ok(ComplexKG::zero());
    }
    let rows: Vec<Vec<Attached>> = c.degrees().map(|j| attached(g, s, c.term(j), true)).collect();
    let lo = c.lo();
    let terms: Vec<GradedObject> = rows.iter().map(|r| row_object(s, r)).collect();
    let mut diffs = Vec::new();
    for k in 0..rows.len().saturating_sub(1) {
        let j = lo + k as i32;
        let d = c.diff(j);
        let tgt_obj = c.term(j + 1);
        let (from, to) = (&rows[k], &rows[k + 1]);
        let mut h = QMatrix::zeros(to.len(), from.len());
        for (ti, t) in from.iter().enumerate() {
            for (ui, u) in to.iter().enumerate() {
                if u.shift != t.shift {
                    continue;
                }
                let a = d.get(u.src, t.src);
                if !a.is_zero() && has_hom(g, (s, t.shift), tgt_obj.get(u.src)) {
                    h.set(ui, ti, a.clone());
                }
            }
        }
        diffs.push(h);
    }
    let top = ComplexKG::from_parts(lo, terms, diffs);
    let mut comps = std::collections::BTreeMap::new();
    for (k, row) in rows.iter().enumerate() {
        let j = lo + k as i32;
        let mut ev = QMatrix::zeros(c.term(j).len(), row.len());
        for (i, a) in row.iter().enumerate() {
            ev.set(a.src, i, Q::one());
        }
        comps.insert(j, ev);
    }
    let ev = ChainMap::from_parts(top, c.clone(), comps);
    debug_assert!(ev.check(g).is_ok());
    Ok(minimal_model(g, &cone(&ev)))
}

/// `σ_s^{-1}(C)`: cocone of the coevaluation map into the row of `P_s` copies.
pub fn untwist(g: &CoxeterGraph, s: usize, c: &ComplexKG) -> Result<ComplexKG> {
    g.check_vertex(s)?;
    if c.is_zero() {
        return Ok(ComplexKG::zero());
    }
    let rows: Vec<Vec<Attached>> = c.degrees().map(|j| attached(g, s, c.term(j), false)).collect();
    let lo = c.lo();
    let terms: Vec<GradedObject> = rows.iter().map(|r| row_object(s, r)).collect();
    let mut diffs = Vec::new();
    for k in 0..rows.len().saturating_sub(1) {
        let j = lo + k as i32;
        let d = c.diff(j);
        let src_obj = c.term(j);
        let (from, to) = (&rows[k], &rows[k + 1]);
        let mut h = QMatrix::zeros(to.len(), from.len());
        for (bi, b) in from.iter().enumerate() {
            for (ui, u) in to.iter().enumerate() {
                if u.shift != b.shift {
                    continue;
                }
                let a = d.get(u.src, b.src);
                if !a.is_zero() && has_hom(g, src_obj.get(b.src), (s, u.shift)) {
                    h.set(ui, bi, a.clone());
                }
            }
        }
        diffs.push(h);
    }
    let bottom = ComplexKG::from_parts(lo, terms, diffs);
    let mut comps = std::collections::BTreeMap::new();
    for (k, row) in rows.iter().enumerate() {
        let j = lo + k as i32;
        let mut co = QMatrix::zeros(row.len(), c.term(j).len());
        for (i, a) in row.iter().enumerate() {
            co.set(i, a.src, Q::one());
        }
        comps.insert(j, co);
    }
    let coev = ChainMap::from_parts(c.clone(), bottom, comps);
    debug_assert!(coev.check(g).is_ok());
    Ok(minimal_model(g, &translate(&cone(&coev), -1, 0)))
}

pub fn apply_letter(g: &CoxeterGraph, s: usize, e: i8, c: &ComplexKG) -> Result<ComplexKG> {
    if e > 0 {
        twist(g, s, c)
    } else {
        untwist(g, s, c)
    }
}

/// Apply a braid word, rightmost letter first, minimising after each letter.
pub fn apply_word(g: &CoxeterGraph, w: &BraidWord, c: &ComplexKG) -> Result<ComplexKG> {
    w.check(g)?;
    let mut cur = minimal_model(g, c);
    for &(s, e) in w.letters.iter().rev() {
        cur = apply_letter(g, s, e, &cur)?;
    }
    Ok(cur)
}
