//! Linear complexes and the heart filtration by linear weight.
//!
//! A summand `P_i<m>` in degree `j` has linear weight `k = -m - j`. In a
//! minimal complex every differential entry keeps `k` or raises it by one, so
//! the summands of weight at least `t` form a subcomplex; the layers of equal
//! weight are the heart pieces, the weight-`k` layer lying in `H_lin[k]`.

use crate::complex::{minimal_model, translate, ComplexKG};
use crate::coxeter::CoxeterGraph;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::walk::{GradedObject, Summand};

pub fn linear_weight(degree: i32, s: Summand) -> i32 {
    -s.1 - degree
}

/// The sub-quotient of `c` on summands of weight exactly `k`.
fn layer(c: &ComplexKG, k: i32) -> ComplexKG {
    let keep: Vec<Vec<usize>> = c
        .degrees()
        .map(|j| {
            let t = c.term(j);
            (0..t.len())
                .filter(|&i| linear_weight(j, t.get(i)) == k)
                .collect()
        })
        .collect();
    let lo = c.lo();
    let terms: Vec<GradedObject> = keep
        .iter()
        .enumerate()
        .map(|(idx, ks)| {
            let t = c.term(lo + idx as i32);
            GradedObject::new(ks.iter().map(|&i| t.get(i)).collect())
        })
        .collect();
    let diffs = (0..keep.len().saturating_sub(1))
        .map(|idx| {
            let d = c.diff(lo + idx as i32);
            let (src, tgt) = (&keep[idx], &keep[idx + 1]);
            let mut m = QMatrix::zeros(tgt.len(), src.len());
            for (r, &rr) in tgt.iter().enumerate() {
                for (cc, &sc) in src.iter().enumerate() {
                    m.set(r, cc, d.get(rr, sc).clone());
                }
            }
            m
        })
        .collect();
    ComplexKG::from_parts(lo, terms, diffs)
}

/// Heart pieces `(k, A_k)` with `k` strictly decreasing.
pub fn linear_weight_filtration(g: &CoxeterGraph, c: &ComplexKG) -> Vec<(i32, ComplexKG)> {
    let m = minimal_model(g, c);
    let mut ks: Vec<i32> = m.summands().map(|(j, s)| linear_weight(j, s)).collect();
    ks.sort_unstable();
    ks.dedup();
    ks.into_iter().rev().map(|k| (k, layer(&m, k))).collect()
}

pub fn is_linear(g: &CoxeterGraph, c: &ComplexKG) -> bool {
    minimal_model(g, c)
        .summands()
        .all(|(j, s)| linear_weight(j, s) == 0)
}

/// Apply the linear shift `<t>[t]` that moves the top degree to 0.
pub fn normalize_linear_shift(c: &ComplexKG) -> Result<(ComplexKG, i32)> {
    if c.is_zero() {
        return Err(Error::ZeroComplex);
    }
    let t = c.hi();
    Ok((translate(c, t, t), t))
}

/// If `c` lies in a single shifted heart `H_lin[k]`, return `k`.
pub fn single_layer(g: &CoxeterGraph, c: &ComplexKG) -> Option<i32> {
    let m = minimal_model(g, c);
    let mut ks = m.summands().map(|(j, s)| linear_weight(j, s));
    let first = ks.next()?;
    ks.all(|k| k == first).then_some(first)
}
