//! Grothendieck group classes over `Z[q, q^{-1}]` and their `q = -1`
//! specialisation to the root lattice.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::braid::{apply_word, BraidWord};
use crate::complex::ComplexKG;
use crate::coxeter::{CoxeterGraph, IntMatrix, RootVector};
use crate::error::{Error, Result};

/// Laurent polynomial in `q` with integer coefficients; no zero entries stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: i64, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn add_term(&mut self, e: i32, c: i64) {
        let v = self.coeffs.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<i32, i64> {
        &self.coeffs
    }

    pub fn eval_at_minus_one(&self) -> i64 {
        self.coeffs
            .iter()
            .map(|(&e, &c)| if e.rem_euclid(2) == 0 { c } else { -c })
            .sum()
    }

    /// JSON object `{"2": -1, "0": 1}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (e, c) in self.coeffs.iter().rev() {
            m.insert(e.to_string(), serde_json::json!(c));
        }
        serde_json::Value::Object(m)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("Laurent polynomial must be an object".into()))?;
        let mut p = Self::zero();
        for (k, c) in obj {
            let e: i32 = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{k}`")))?;
            let c = c
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("bad coefficient for q^{e}")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in self.coeffs.iter().rev() {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let body = match (e, a) {
                (0, _) => a.to_string(),
                (1, 1) => "q".to_string(),
                (1, _) => format!("{a}q"),
                (_, 1) => format!("q^{e}"),
                _ => format!("{a}q^{e}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (&e, &c) in &o.coeffs {
            p.add_term(e, c);
        }
        p
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &o.coeffs {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }
}

/// A class in `K_0`, coordinates in the basis `[P_i]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct K0Class {
    pub components: Vec<LaurentPoly>,
}

impl K0Class {
    pub fn zero(n: usize) -> Self {
        K0Class {
            components: vec![LaurentPoly::zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl Add for &K0Class {
    type Output = K0Class;
    fn add(self, o: &K0Class) -> K0Class {
        K0Class {
            components: self.components.iter().zip(&o.components).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &K0Class {
    type Output = K0Class;
    fn sub(self, o: &K0Class) -> K0Class {
        K0Class {
            components: self.components.iter().zip(&o.components).map(|(a, b)| a - b).collect(),
        }
    }
}

/// `[C] = Σ_j (-1)^j Σ q^m [P_i]`.
pub fn class_of(g: &CoxeterGraph, c: &ComplexKG) -> K0Class {
    let mut k = K0Class::zero(g.n());
    for (j, (v, m)) in c.summands() {
        let sign = if j.rem_euclid(2) == 0 { 1 } else { -1 };
        k.components[v].add_term(m, sign);
    }
    k
}

pub fn specialize(c: &K0Class) -> RootVector {
    RootVector(c.components.iter().map(LaurentPoly::eval_at_minus_one).collect())
}

/// Root-lattice class of a complex.
pub fn root_class(g: &CoxeterGraph, c: &ComplexKG) -> RootVector {
    specialize(&class_of(g, c))
}

pub type LaurentMatrix = Vec<Vec<LaurentPoly>>;

/// Column `i` is the class of `w(P_i)`.
pub fn induced_matrix(g: &CoxeterGraph, w: &BraidWord) -> Result<LaurentMatrix> {
    let n = g.n();
    let cols = (0..n)
        .map(|i| Ok(class_of(g, &apply_word(g, w, &ComplexKG::generator(i, 0))?).components))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())
}

pub fn specialize_matrix(m: &LaurentMatrix) -> IntMatrix {
    m.iter()
        .map(|row| row.iter().map(LaurentPoly::eval_at_minus_one).collect())
        .collect()
}

pub fn laurent_mat_mul(a: &LaurentMatrix, b: &LaurentMatrix) -> LaurentMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = LaurentPoly::zero();
                    for k in 0..b.len() {
                        acc = &acc + &(&a[i][k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}
