//! Bounded complexes over the walk category, chain maps, shifts, cones and
//! Gaussian elimination down to minimal models.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::coxeter::CoxeterGraph;
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Q};
use crate::walk::{check_support, compose_coeffs, GradedObject, MatrixMorphism, Summand};

/// A bounded complex. `terms[k]` sits in cohomological degree `lo + k` and
/// `diffs[k]` maps `terms[k]` to `terms[k + 1]`.
///
/// End terms are never empty; the zero complex has no terms at all.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexKG {
    lo: i32,
    terms: Vec<GradedObject>,
    diffs: Vec<QMatrix>,
}

impl ComplexKG {
    pub fn zero() -> Self {
        ComplexKG {
            lo: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// Validated constructor: shapes, walk support and `d² = 0`.
    pub fn new(
        g: &CoxeterGraph,
        lo: i32,
        terms: Vec<GradedObject>,
        diffs: Vec<QMatrix>,
    ) -> Result<Self> {
        if terms.len() != diffs.len() + 1 && !(terms.is_empty() && diffs.is_empty()) {
            return Err(Error::Shape(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for t in &terms {
            t.check(g)?;
        }
        for (k, d) in diffs.iter().enumerate() {
            check_support(g, &terms[k], &terms[k + 1], d)?;
        }
        let c = ComplexKG { lo, terms, diffs }.trimmed();
        c.check_d_squared(g)?;
        Ok(c)
    }

    /// A single generator `P_v<m>` in degree 0.
    pub fn generator(v: usize, m: i32) -> Self {
        Self::concentrated(GradedObject::new(vec![(v, m)]), 0)
    }

    pub fn concentrated(obj: GradedObject, degree: i32) -> Self {
        ComplexKG {
            lo: degree,
            terms: vec![obj],
            diffs: Vec::new(),
        }
        .trimmed()
    }

    pub(crate) fn from_parts(lo: i32, terms: Vec<GradedObject>, diffs: Vec<QMatrix>) -> Self {
        debug_assert_eq!(terms.len(), diffs.len() + usize::from(!terms.is_empty()));
        ComplexKG { lo, terms, diffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.terms.last().is_some_and(GradedObject::is_empty) {
            self.terms.pop();
            self.diffs.pop();
        }
        let lead = self.terms.iter().take_while(|t| t.is_empty()).count();
        if lead > 0 {
            self.terms.drain(..lead);
            self.diffs.drain(..lead.min(self.diffs.len()));
            self.lo += lead as i32;
        }
        if self.terms.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        self
    }

    pub fn check_d_squared(&self, g: &CoxeterGraph) -> Result<()> {
        for k in 0..self.diffs.len().saturating_sub(1) {
            let dd = compose_coeffs(
                g,
                &self.terms[k],
                &self.terms[k + 2],
                &self.diffs[k + 1],
                &self.diffs[k],
            );
            if !dd.is_zero() {
                return Err(Error::NotAComplex(format!(
                    "d_{} d_{} != 0",
                    self.lo + k as i32 + 1,
                    self.lo + k as i32
                )));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree with a nonzero term (0 for the zero complex).
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest degree with a nonzero term (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo()..=self.hi()
    }

    pub fn term(&self, j: i32) -> &GradedObject {
        static EMPTY: GradedObject = GradedObject {
            summands: Vec::new(),
        };
        let k = j - self.lo;
        if k < 0 || k as usize >= self.terms.len() {
            &EMPTY
        } else {
            &self.terms[k as usize]
        }
    }

    /// `d_j` as a coefficient matrix (zero-sized outside the support).
    pub fn diff(&self, j: i32) -> QMatrix {
        let k = j - self.lo;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            QMatrix::zeros(self.term(j + 1).len(), self.term(j).len())
        }
    }

    pub fn diff_ref(&self, j: i32) -> Option<&QMatrix> {
        let k = j - self.lo;
        if k >= 0 {
            self.diffs.get(k as usize)
        } else {
            None
        }
    }

    pub fn diff_morphism(&self, j: i32) -> MatrixMorphism {
        MatrixMorphism {
            source: self.term(j).clone(),
            target: self.term(j + 1).clone(),
            coeffs: self.diff(j),
        }
    }

    /// All summands with their degree.
    pub fn summands(&self) -> impl Iterator<Item = (i32, Summand)> + '_ {
        self.terms
            .iter()
            .enumerate()
            .flat_map(move |(k, t)| t.summands.iter().map(move |&s| (self.lo + k as i32, s)))
    }

    pub fn total_rank(&self) -> usize {
        self.terms.iter().map(GradedObject::len).sum()
    }

    /// Per-degree sorted summand lists.
    pub fn shape(&self) -> Vec<(i32, Vec<Summand>)> {
        self.degrees()
            .map(|j| (j, self.term(j).multiset()))
            .collect()
    }

    pub fn direct_sum(&self, other: &ComplexKG) -> ComplexKG {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo().min(other.lo());
        let hi = self.hi().max(other.hi());
        let terms = (lo..=hi)
            .map(|j| self.term(j).concat(other.term(j)))
            .collect();
        let diffs = (lo..hi)
            .map(|j| {
                let a = self.diff(j);
                let b = other.diff(j);
                QMatrix::block(
                    &a,
                    &QMatrix::zeros(a.rows(), b.cols()),
                    &QMatrix::zeros(b.rows(), a.cols()),
                    &b,
                )
            })
            .collect();
        ComplexKG::from_parts(lo, terms, diffs)
    }
}

impl fmt::Debug for ComplexKG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for j in self.degrees() {
            write!(f, "[{}] {:?}", j, self.term(j))?;
            if j < self.hi() {
                write!(f, " --{:?}--> ", self.diff(j))?;
            }
        }
        Ok(())
    }
}

/// Chain map; missing components are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainMap {
    pub source: ComplexKG,
    pub target: ComplexKG,
    components: BTreeMap<i32, QMatrix>,
}

impl ChainMap {
    pub fn new(
        g: &CoxeterGraph,
        source: ComplexKG,
        target: ComplexKG,
        components: BTreeMap<i32, QMatrix>,
    ) -> Result<Self> {
        for (&j, m) in &components {
            check_support(g, source.term(j), target.term(j), m)?;
        }
        let f = ChainMap {
            source,
            target,
            components,
        };
        f.check(g)?;
        Ok(f)
    }

    pub(crate) fn from_parts(
        source: ComplexKG,
        target: ComplexKG,
        components: BTreeMap<i32, QMatrix>,
    ) -> Self {
        ChainMap {
            source,
            target,
            components,
        }
    }

    pub fn zero(source: ComplexKG, target: ComplexKG) -> Self {
        Self::from_parts(source, target, BTreeMap::new())
    }

    pub fn identity(c: &ComplexKG) -> Self {
        let components = c
            .degrees()
            .map(|j| (j, QMatrix::identity(c.term(j).len())))
            .collect();
        Self::from_parts(c.clone(), c.clone(), components)
    }

    pub fn component(&self, j: i32) -> QMatrix {
        self.components.get(&j).cloned().unwrap_or_else(|| {
            QMatrix::zeros(self.target.term(j).len(), self.source.term(j).len())
        })
    }

    pub fn components(&self) -> &BTreeMap<i32, QMatrix> {
        &self.components
    }

    /// Support degrees shared by source and target.
    fn span(&self) -> std::ops::RangeInclusive<i32> {
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        lo..=hi
    }

    /// All squares commute: `d'_j f_j = f_{j+1} d_j`.
    pub fn check(&self, g: &CoxeterGraph) -> Result<()> {
        for j in self.span() {
            let x = self.source.term(j);
            let y1 = self.target.term(j + 1);
            let lhs = compose_coeffs(g, x, y1, &self.target.diff(j), &self.component(j));
            let rhs = compose_coeffs(g, x, y1, &self.component(j + 1), &self.source.diff(j));
            if lhs != rhs {
                return Err(Error::NotAChainMap(format!("square at degree {j} fails")));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(QMatrix::is_zero)
    }
}

/// `G ∘ F` for chain maps.
pub fn compose_chain(g: &CoxeterGraph, outer: &ChainMap, inner: &ChainMap) -> Result<ChainMap> {
    if inner.target != outer.source {
        return Err(Error::Shape("chain maps are not composable".into()));
    }
    let mut components = BTreeMap::new();
    for j in inner.source.degrees() {
        let m = compose_coeffs(
            g,
            inner.source.term(j),
            outer.target.term(j),
            &outer.component(j),
            &inner.component(j),
        );
        if !m.is_zero() {
            components.insert(j, m);
        }
    }
    Ok(ChainMap::from_parts(
        inner.source.clone(),
        outer.target.clone(),
        components,
    ))
}

fn sign_matrix(m: &QMatrix, k: i32) -> QMatrix {
    if k.rem_euclid(2) == 1 {
        m.neg()
    } else {
        m.clone()
    }
}

/// `C[k]<m>`: degree `j` of the result is degree `j + k` of `C` with internal
/// shifts raised by `m`; differentials pick up `(-1)^k`.
pub fn translate(c: &ComplexKG, k: i32, m: i32) -> ComplexKG {
    if c.is_zero() {
        return ComplexKG::zero();
    }
    ComplexKG {
        lo: c.lo - k,
        terms: c.terms.iter().map(|t| t.shifted(m)).collect(),
        diffs: c.diffs.iter().map(|d| sign_matrix(d, k)).collect(),
    }
}

/// Translate a chain map along with its source and target.
pub fn translate_map(f: &ChainMap, k: i32, m: i32) -> ChainMap {
    ChainMap::from_parts(
        translate(&f.source, k, m),
        translate(&f.target, k, m),
        f.components.iter().map(|(&j, c)| (j - k, c.clone())).collect(),
    )
}

/// Mapping cone: degree `j` holds `C^{j+1} ⊕ D^j` with differential
/// `[[-d_C, 0], [f, d_D]]`.
pub fn cone(f: &ChainMap) -> ComplexKG {
    let (c, d) = (&f.source, &f.target);
    if c.is_zero() {
        return d.clone();
    }
    let lo = if d.is_zero() { c.lo() - 1 } else { (c.lo() - 1).min(d.lo()) };
    let hi = if d.is_zero() { c.hi() - 1 } else { (c.hi() - 1).max(d.hi()) };
    let terms = (lo..=hi).map(|j| c.term(j + 1).concat(d.term(j))).collect();
    let diffs = (lo..hi)
        .map(|j| {
            let dc = c.diff(j + 1).neg();
            let dd = d.diff(j);
            QMatrix::block(
                &dc,
                &QMatrix::zeros(dc.rows(), dd.cols()),
                &f.component(j + 1),
                &dd,
            )
        })
        .collect();
    ComplexKG::from_parts(lo, terms, diffs)
}

/// Inclusion `D -> cone(f)`.
pub fn cone_inclusion(f: &ChainMap) -> ChainMap {
    let cn = cone(f);
    let (c, d) = (&f.source, &f.target);
    let mut components = BTreeMap::new();
    for j in d.degrees() {
        let top = c.term(j + 1).len();
        let n = d.term(j).len();
        let mut m = QMatrix::zeros(top + n, n);
        for i in 0..n {
            m.set(top + i, i, Q::one());
        }
        components.insert(j, m);
    }
    ChainMap::from_parts(d.clone(), cn, components)
}

/// Projection `cone(f) -> C[1]`.
pub fn cone_projection(f: &ChainMap) -> ChainMap {
    let cn = cone(f);
    let (c, d) = (&f.source, &f.target);
    let shifted = translate(c, 1, 0);
    let mut components = BTreeMap::new();
    for j in shifted.degrees() {
        let top = c.term(j + 1).len();
        let n = d.term(j).len();
        let mut m = QMatrix::zeros(top, top + n);
        for i in 0..top {
            m.set(i, i, Q::one());
        }
        components.insert(j, m);
    }
    ChainMap::from_parts(cn, shifted, components)
}

/// One step of the Gaussian elimination lemma at entry `(row, col)` of `d_deg`.
pub fn gaussian_eliminate_once(
    g: &CoxeterGraph,
    c: &ComplexKG,
    deg: i32,
    row: usize,
    col: usize,
) -> Result<ComplexKG> {
    let not_inv = Error::NotInvertible {
        degree: deg,
        row,
        col,
    };
    let Some(d) = c.diff_ref(deg) else {
        return Err(not_inv);
    };
    if row >= d.rows() || col >= d.cols() {
        return Err(not_inv);
    }
    let b1 = c.term(deg).get(col);
    let b2 = c.term(deg + 1).get(row);
    if b1 != b2 || d.get(row, col).is_zero() {
        return Err(not_inv);
    }
    Ok(eliminate_unchecked(g, c, deg, row, col))
}

fn eliminate_unchecked(
    g: &CoxeterGraph,
    c: &ComplexKG,
    deg: i32,
    row: usize,
    col: usize,
) -> ComplexKG {
    let k = (deg - c.lo) as usize;
    let mut terms = c.terms.clone();
    let mut diffs = c.diffs.clone();
    let d = &c.diffs[k];
    let phi_inv = Q::one() / d.get(row, col);
    let src = &c.terms[k];
    let tgt = &c.terms[k + 1];

    let mut nd = d.clone();
    for r in 0..d.rows() {
        let gam = d.get(r, col);
        if r == row || gam.is_zero() {
            continue;
        }
        let gam = gam * &phi_inv;
        for cc in 0..d.cols() {
            if cc == col {
                continue;
            }
            let del = d.get(row, cc);
            if del.is_zero() || !crate::walk::has_hom(g, src.get(cc), tgt.get(r)) {
                continue;
            }
            let v = nd.get(r, cc) - &gam * del;
            nd.set(r, cc, v);
        }
    }
    nd.remove_row(row);
    nd.remove_col(col);
    diffs[k] = nd;
    if k > 0 {
        diffs[k - 1].remove_row(col);
    }
    if k + 1 < diffs.len() {
        diffs[k + 1].remove_col(row);
    }
    terms[k].summands.remove(col);
    terms[k + 1].summands.remove(row);
    ComplexKG::from_parts(c.lo, terms, diffs)
}

fn find_invertible(c: &ComplexKG, from: usize) -> Option<(usize, usize, usize)> {
    for k in from..c.diffs.len() {
        let d = &c.diffs[k];
        let (src, tgt) = (&c.terms[k], &c.terms[k + 1]);
        for r in 0..d.rows() {
            for col in 0..d.cols() {
                if src.get(col) == tgt.get(r) && !d.get(r, col).is_zero() {
                    return Some((k, r, col));
                }
            }
        }
    }
    None
}

/// Eliminate until no differential entry is an invertible multiple of a
/// constant walk. Scan order: lowest degree first, row-major.
pub fn minimal_model(g: &CoxeterGraph, c: &ComplexKG) -> ComplexKG {
    let mut cur = c.clone();
    let mut from = 0usize;
    while let Some((k, r, col)) = find_invertible(&cur, from) {
        let deg = cur.lo + k as i32;
        cur = eliminate_unchecked(g, &cur, deg, r, col);
        // Earlier degrees only lose rows, so they stay clean.
        from = (deg - 1 - cur.lo).max(0) as usize;
    }
    cur
}

pub fn is_minimal(c: &ComplexKG) -> bool {
    find_invertible(c, 0).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn a2() -> CoxeterGraph {
        CoxeterGraph::preset("A2").unwrap()
    }

    fn obj(s: &[(usize, i32)]) -> GradedObject {
        GradedObject::new(s.to_vec())
    }

    fn m(rows: Vec<Vec<i64>>) -> QMatrix {
        QMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(q).collect()).collect())
    }

    #[test]
    fn translate_places_shifted_objects() {
        let p1 = ComplexKG::generator(0, 0);
        let t = translate(&p1, 1, 0);
        assert_eq!(t.lo(), -1);
        assert_eq!(t.hi(), -1);
        let c = ComplexKG::new(&a2(), -1, vec![obj(&[(0, 1)]), obj(&[(1, 0)])], vec![m(vec![vec![1]])]).unwrap();
        assert_eq!(translate(&translate(&c, 1, 1), -1, -1), c);
        assert_eq!(translate(&c, 0, 0), c);
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let g = a2();
        let p1 = ComplexKG::generator(0, 0);
        let cn = cone(&ChainMap::identity(&p1));
        assert_eq!(cn.total_rank(), 2);
        assert!(minimal_model(&g, &cn).is_zero());
    }

    #[test]
    fn cone_of_zero_map_splits() {
        let g = a2();
        let f = ChainMap::zero(ComplexKG::generator(0, 0), ComplexKG::generator(1, 0));
        let cn = minimal_model(&g, &cone(&f));
        assert_eq!(cn.shape(), vec![(-1, vec![(0, 0)]), (0, vec![(1, 0)])]);
    }

    #[test]
    fn rejects_bad_d_squared() {
        let g = a2();
        let terms = vec![obj(&[(0, 2)]), obj(&[(1, 1)]), obj(&[(0, 0)])];
        let r = ComplexKG::new(&g, 0, terms, vec![m(vec![vec![1]]), m(vec![vec![1]])]);
        assert!(matches!(r, Err(Error::NotAComplex(_))));
    }

    #[test]
    fn singular_scalar_block_leaves_one_copy_each() {
        let g = a2();
        let x = obj(&[(0, 0), (0, 0)]);
        let c = ComplexKG::new(&g, 0, vec![x.clone(), x], vec![m(vec![vec![1, 1], vec![1, 1]])]).unwrap();
        let once = gaussian_eliminate_once(&g, &c, 0, 0, 0).unwrap();
        assert_eq!(once.total_rank(), 2);
        let mm = minimal_model(&g, &c);
        assert_eq!(mm.shape(), vec![(0, vec![(0, 0)]), (1, vec![(0, 0)])]);
        assert!(mm.diff(0).is_zero());
        assert!(gaussian_eliminate_once(&g, &mm, 0, 0, 0).is_err());
    }

    #[test]
    fn eliminate_requires_constant_entry() {
        let g = a2();
        let c = ComplexKG::new(&g, -1, vec![obj(&[(0, 1)]), obj(&[(1, 0)])], vec![m(vec![vec![1]])]).unwrap();
        assert!(matches!(
            gaussian_eliminate_once(&g, &c, -1, 0, 0),
            Err(Error::NotInvertible { .. })
        ));
    }
}
