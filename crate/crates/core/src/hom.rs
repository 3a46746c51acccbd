//! Hom spaces in the homotopy category and the isomorphism test for minimal
//! complexes.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{is_minimal, minimal_model, ChainMap, ComplexKG};
use crate::coxeter::CoxeterGraph;
use crate::error::{Error, Result};
use crate::linalg::{q, to_sparse, QMatrix, RowReducer, SparseRow, Q};
use crate::walk::has_hom;

type Slot = (i32, usize, usize);

/// Chain maps `X -> Y` modulo null-homotopic ones, as explicit linear data.
pub struct HomSpace {
    source: ComplexKG,
    target: ComplexKG,
    unknowns: Vec<Slot>,
    chain_basis: Vec<Vec<Q>>,
    reps: Vec<Vec<Q>>,
}

impl HomSpace {
    pub fn new(g: &CoxeterGraph, x: &ComplexKG, y: &ComplexKG) -> Self {
        let mut unknowns = Vec::new();
        let mut index: HashMap<Slot, usize> = HashMap::new();
        if !x.is_zero() && !y.is_zero() {
            for j in x.lo().max(y.lo())..=x.hi().min(y.hi()) {
                let (xs, ys) = (x.term(j), y.term(j));
                for r in 0..ys.len() {
                    for c in 0..xs.len() {
                        if has_hom(g, xs.get(c), ys.get(r)) {
                            index.insert((j, r, c), unknowns.len());
                            unknowns.push((j, r, c));
                        }
                    }
                }
            }
        }
        let n = unknowns.len();

        // d'_j f_j - f_{j+1} d_j = 0, entrywise.
        let mut eqs = RowReducer::new(n);
        if n > 0 {
            for j in (x.lo() - 1)..=x.hi() {
                let (xs, y1) = (x.term(j), y.term(j + 1));
                let dy = y.diff(j);
                let dx = x.diff(j);
                for r in 0..y1.len() {
                    for c in 0..xs.len() {
                        if !has_hom(g, xs.get(c), y1.get(r)) {
                            continue;
                        }
                        let mut row: BTreeMap<usize, Q> = BTreeMap::new();
                        for k in 0..dy.cols() {
                            let a = dy.get(r, k);
                            if a.is_zero() {
                                continue;
                            }
                            if let Some(&u) = index.get(&(j, k, c)) {
                                *row.entry(u).or_insert_with(Q::zero) += a;
                            }
                        }
                        for k in 0..dx.rows() {
                            let a = dx.get(k, c);
                            if a.is_zero() {
                                continue;
                            }
                            if let Some(&u) = index.get(&(j + 1, r, k)) {
                                *row.entry(u).or_insert_with(Q::zero) -= a;
                            }
                        }
                        let row: SparseRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                        if !row.is_empty() {
                            eqs.add(row);
                        }
                    }
                }
            }
        }
        let chain_basis = eqs.nullspace();

        // Images of elementary homotopies h_j: X^j -> Y^{j-1}.
        let mut homotopy = RowReducer::new(n);
        if n > 0 {
            for j in x.degrees() {
                let (xs, ym) = (x.term(j), y.term(j - 1));
                let dy = y.diff(j - 1);
                let dx = x.diff(j - 1);
                let xm = x.term(j - 1);
                let yj = y.term(j);
                for r in 0..ym.len() {
                    for c in 0..xs.len() {
                        if !has_hom(g, xs.get(c), ym.get(r)) {
                            continue;
                        }
                        let mut row: BTreeMap<usize, Q> = BTreeMap::new();
                        for r2 in 0..yj.len() {
                            let a = dy.get(r2, r);
                            if !a.is_zero() && has_hom(g, xs.get(c), yj.get(r2)) {
                                if let Some(&u) = index.get(&(j, r2, c)) {
                                    *row.entry(u).or_insert_with(Q::zero) += a;
                                }
                            }
                        }
                        for c2 in 0..xm.len() {
                            let a = dx.get(c, c2);
                            if !a.is_zero() && has_hom(g, xm.get(c2), ym.get(r)) {
                                if let Some(&u) = index.get(&(j - 1, r, c2)) {
                                    *row.entry(u).or_insert_with(Q::zero) += a;
                                }
                            }
                        }
                        let row: SparseRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                        if !row.is_empty() {
                            homotopy.add(row);
                        }
                    }
                }
            }
        }

        let mut span = homotopy;
        let mut reps = Vec::new();
        for v in &chain_basis {
            if span.add(to_sparse(v)) {
                reps.push(v.clone());
            }
        }
        HomSpace {
            source: x.clone(),
            target: y.clone(),
            unknowns,
            chain_basis,
            reps,
        }
    }

    /// Dimension of the hom space in the homotopy category.
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn chain_dim(&self) -> usize {
        self.chain_basis.len()
    }

    pub fn chain_basis(&self) -> &[Vec<Q>] {
        &self.chain_basis
    }

    /// Chain maps whose classes form a basis of the hom space.
    pub fn basis_maps(&self) -> Vec<ChainMap> {
        self.reps.iter().map(|v| self.to_chain_map(v)).collect()
    }

    /// Integer combination of the class representatives.
    pub fn combination(&self, coeffs: &[i64]) -> ChainMap {
        let mut v = vec![Q::zero(); self.unknowns.len()];
        for (rep, &a) in self.reps.iter().zip(coeffs) {
            let a = q(a);
            for (x, r) in v.iter_mut().zip(rep) {
                *x += &a * r;
            }
        }
        self.to_chain_map(&v)
    }

    pub fn to_chain_map(&self, v: &[Q]) -> ChainMap {
        let mut comps: BTreeMap<i32, QMatrix> = BTreeMap::new();
        for (&(j, r, c), val) in self.unknowns.iter().zip(v) {
            if val.is_zero() {
                continue;
            }
            let m = comps.entry(j).or_insert_with(|| {
                QMatrix::zeros(self.target.term(j).len(), self.source.term(j).len())
            });
            m.set(r, c, val.clone());
        }
        ChainMap::from_parts(self.source.clone(), self.target.clone(), comps)
    }
}

#[allow(non_snake_case)]
pub fn hom_dim_K(g: &CoxeterGraph, x: &ComplexKG, y: &ComplexKG) -> usize {
    HomSpace::new(g, x, y).dim()
}

const ISO_ATTEMPTS: usize = 20;

/// Whether two minimal complexes are isomorphic as complexes.
pub fn iso_minimal(g: &CoxeterGraph, a: &ComplexKG, b: &ComplexKG, seed: u64) -> Result<bool> {
    if !is_minimal(a) || !is_minimal(b) {
        return Err(Error::NotMinimal);
    }
    if a.shape() != b.shape() {
        return Ok(false);
    }
    if a.is_zero() {
        return Ok(true);
    }
    let hs = HomSpace::new(g, a, b);
    let basis = hs.chain_basis();
    if basis.is_empty() {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_ATTEMPTS {
        let mut v = vec![Q::zero(); basis[0].len()];
        for b in basis {
            let a = q(rng.gen_range(-1000..=1000));
            for (x, y) in v.iter_mut().zip(b) {
                *x += &a * y;
            }
        }
        let f = hs.to_chain_map(&v);
        if semisimple_invertible(&f) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The constant-walk part of `f` is invertible in every degree.
///
/// Summands are grouped by `(vertex, shift)`; only same-generator entries
/// survive semisimplification, so invertibility splits into square blocks.
pub fn semisimple_invertible(f: &ChainMap) -> bool {
    for j in f.source.degrees() {
        let (x, y) = (f.source.term(j), f.target.term(j));
        let m = f.component(j);
        let mut groups: BTreeMap<(usize, i32), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (c, &s) in x.summands.iter().enumerate() {
            groups.entry(s).or_default().0.push(c);
        }
        for (r, &s) in y.summands.iter().enumerate() {
            groups.entry(s).or_default().1.push(r);
        }
        for (cols, rows) in groups.values() {
            if cols.len() != rows.len() {
                return false;
            }
            let block = QMatrix::from_rows(
                rows.iter()
                    .map(|&r| cols.iter().map(|&c| m.get(r, c).clone()).collect())
                    .collect(),
            );
            if block.rank() != cols.len() {
                return false;
            }
        }
    }
    true
}

/// Homotopy equivalence via minimal models.
pub fn homotopy_equivalent(g: &CoxeterGraph, a: &ComplexKG, b: &ComplexKG, seed: u64) -> bool {
    iso_minimal(g, &minimal_model(g, a), &minimal_model(g, b), seed)
        .expect("minimal models are minimal")
}
