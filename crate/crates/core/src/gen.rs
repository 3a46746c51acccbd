//! Seeded random complexes, and blow-ups that change a complex only up to
//! homotopy equivalence and isomorphism.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::braid::{apply_word, BraidWord};
use crate::complex::{translate, ComplexKG};
use crate::coxeter::CoxeterGraph;
use crate::error::Result;
use crate::linalg::{q, q_frac, QMatrix, Q};
use crate::walk::{compose_coeffs, has_hom, GradedObject};

/// Braid images of shifted generators, summed.
pub fn random_complex<R: Rng>(g: &CoxeterGraph, rng: &mut R) -> Result<ComplexKG> {
    let mut c = ComplexKG::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let v = rng.gen_range(0..g.n());
        let len = rng.gen_range(0..=3);
        let letters = (0..len)
            .map(|_| (rng.gen_range(0..g.n()), if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        let x = apply_word(g, &BraidWord::new(letters), &ComplexKG::generator(v, 0))?;
        let k = rng.gen_range(-1..=1);
        let m = rng.gen_range(-1..=1);
        c = c.direct_sum(&translate(&x, k, m));
    }
    Ok(c)
}

/// `P -id-> P` in degrees `j, j + 1`.
fn contractible(v: usize, m: i32, j: i32) -> ComplexKG {
    let p = GradedObject::new(vec![(v, m)]);
    ComplexKG::from_parts(j, vec![p.clone(), p], vec![QMatrix::identity(1)])
}

fn random_scalar<R: Rng>(rng: &mut R) -> Q {
    let choices = [q(1), q(-1), q(2), q(-3), q_frac(1, 2), q_frac(-2, 3)];
    choices.choose(rng).expect("nonempty").clone()
}

/// Random automorphism of a graded object with its inverse.
fn random_automorphism<R: Rng>(g: &CoxeterGraph, obj: &GradedObject, rng: &mut R) -> (QMatrix, QMatrix) {
    let n = obj.len();
    let mut a = QMatrix::identity(n);
    let mut inv = QMatrix::identity(n);
    if n == 0 {
        return (a, inv);
    }
    for _ in 0..2 * n {
        let (e, e_inv) = if rng.gen_bool(0.3) {
            let i = rng.gen_range(0..n);
            let s = random_scalar(rng);
            let mut e = QMatrix::identity(n);
            let mut f = QMatrix::identity(n);
            f.set(i, i, q(1) / &s);
            e.set(i, i, s);
            (e, f)
        } else {
            let (src, tgt) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if src == tgt || !has_hom(g, obj.get(src), obj.get(tgt)) {
                continue;
            }
            let l = random_scalar(rng);
            let mut e = QMatrix::identity(n);
            let mut f = QMatrix::identity(n);
            f.set(tgt, src, -l.clone());
            e.set(tgt, src, l);
            (e, f)
        };
        a = compose_coeffs(g, obj, obj, &e, &a);
        inv = compose_coeffs(g, obj, obj, &inv, &e_inv);
    }
    (a, inv)
}

/// Add contractible summands, then conjugate every differential by random
/// invertible base changes and a summand permutation.
pub fn blow_up<R: Rng>(g: &CoxeterGraph, c: &ComplexKG, rng: &mut R) -> Result<ComplexKG> {
    let mut x = c.clone();
    let (lo, hi) = if c.is_zero() { (0, 0) } else { (c.lo(), c.hi()) };
    for _ in 0..rng.gen_range(1..=2) {
        let v = rng.gen_range(0..g.n());
        let m = rng.gen_range(-2..=2);
        let j = rng.gen_range(lo - 1..=hi);
        x = x.direct_sum(&contractible(v, m, j));
    }

    let mut terms = Vec::new();
    let mut perms = Vec::new();
    for j in x.degrees() {
        let t = x.term(j);
        let mut order: Vec<usize> = (0..t.len()).collect();
        order.shuffle(rng);
        let mut p = QMatrix::zeros(t.len(), t.len());
        for (new, &old) in order.iter().enumerate() {
            p.set(new, old, q(1));
        }
        terms.push(GradedObject::new(order.iter().map(|&o| t.get(o)).collect()));
        perms.push(p);
    }
    let autos: Vec<(QMatrix, QMatrix)> = terms
        .iter()
        .map(|t| random_automorphism(g, t, rng))
        .collect();
    let mut diffs = Vec::new();
    for (k, j) in (x.lo()..x.hi()).enumerate() {
        // New basis: e' = A P e, so d' = A_{j+1} P_{j+1} d P_j^T A_j^{-1}.
        let d = x.diff(j);
        let pd = perms[k + 1].mul(&d).mul(&transpose(&perms[k]));
        let (src, tgt) = (&terms[k], &terms[k + 1]);
        let right = compose_coeffs(g, src, tgt, &pd, &autos[k].1);
        diffs.push(compose_coeffs(g, src, tgt, &autos[k + 1].0, &right));
    }
    ComplexKG::new(g, x.lo(), terms, diffs)
}

fn transpose(m: &QMatrix) -> QMatrix {
    let mut t = QMatrix::zeros(m.cols(), m.rows());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            t.set(c, r, m.get(r, c).clone());
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::minimal_model;
    use crate::hom::iso_minimal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn blow_up_reduces_back() {
        let g = CoxeterGraph::preset("A2").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let c = minimal_model(&g, &random_complex(&g, &mut rng).unwrap());
            let big = blow_up(&g, &c, &mut rng).unwrap();
            assert!(big.total_rank() > c.total_rank());
            let back = minimal_model(&g, &big);
            assert!(iso_minimal(&g, &c, &back, 0).unwrap());
        }
    }
}
