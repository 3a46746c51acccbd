//! The additive category of shifted generators `P_i<m>` and admissible walks.
//!
//! Every hom space `Hom(P_i<m>, P_j<n>)` is zero or spanned by a single walk,
//! so a matrix morphism only needs one rational scalar per entry; the walk is
//! implied by the endpoints. Composition of two basis walks is either the basis
//! walk of the composite hom space (coefficient one) or zero.

use std::fmt;

use num_traits::Zero;

use crate::coxeter::CoxeterGraph;
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Q};

/// A generator `P_vertex<shift>`.
pub type Summand = (usize, i32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Walk {
    Constant(usize),
    Edge(usize, usize),
    Loop(usize),
}

impl Walk {
    pub fn source(&self) -> usize {
        match *self {
            Walk::Constant(i) | Walk::Loop(i) | Walk::Edge(i, _) => i,
        }
    }

    pub fn target(&self) -> usize {
        match *self {
            Walk::Constant(i) | Walk::Loop(i) | Walk::Edge(_, i) => i,
        }
    }

    pub fn degree(&self) -> i32 {
        match self {
            Walk::Constant(_) => 0,
            Walk::Edge(..) => 1,
            Walk::Loop(_) => 2,
        }
    }

    /// Text form used in JSON: `e0`, `0>1`, `X0`.
    pub fn code(&self) -> String {
        match *self {
            Walk::Constant(i) => format!("e{i}"),
            Walk::Edge(i, j) => format!("{i}>{j}"),
            Walk::Loop(i) => format!("X{i}"),
        }
    }

    pub fn parse(s: &str) -> Result<Walk> {
        let bad = || Error::Parse(format!("bad walk `{s}`"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix('e') {
            Ok(Walk::Constant(num(rest)?))
        } else if let Some(rest) = s.strip_prefix('X') {
            Ok(Walk::Loop(num(rest)?))
        } else if let Some((a, b)) = s.split_once('>') {
            Ok(Walk::Edge(num(a)?, num(b)?))
        } else {
            Err(bad())
        }
    }
}

impl fmt::Debug for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Walk::Constant(i) => write!(f, "e{}", i + 1),
            Walk::Edge(i, j) => write!(f, "({}|{})", i + 1, j + 1),
            Walk::Loop(i) => write!(f, "X{}", i + 1),
        }
    }
}

/// The basis walk of `Hom(P_i<m>, P_j<n>)`, if that space is nonzero.
pub fn hom_basis(g: &CoxeterGraph, i: usize, m: i32, j: usize, n: i32) -> Option<Walk> {
    match m - n {
        0 if i == j => Some(Walk::Constant(i)),
        2 if i == j => Some(Walk::Loop(i)),
        1 if g.adjacent(i, j) => Some(Walk::Edge(i, j)),
        _ => None,
    }
}

pub fn has_hom(g: &CoxeterGraph, a: Summand, b: Summand) -> bool {
    hom_basis(g, a.0, a.1, b.0, b.1).is_some()
}

/// Scalar times walk; the zero element carries no walk.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub coeff: Q,
    pub walk: Option<Walk>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement {
            coeff: Q::zero(),
            walk: None,
        }
    }

    pub fn new(coeff: Q, walk: Walk) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            AlgebraElement {
                coeff,
                walk: Some(walk),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.walk.is_none()
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.walk {
            None => write!(f, "0"),
            Some(w) => write!(f, "{}*{:?}", self.coeff, w),
        }
    }
}

/// `outer ∘ inner`, where `inner` ends at the vertex where `outer` starts.
pub fn compose_walks(
    g: &CoxeterGraph,
    outer: &AlgebraElement,
    inner: &AlgebraElement,
) -> Result<AlgebraElement> {
    let (Some(wo), Some(wi)) = (outer.walk, inner.walk) else {
        return Ok(AlgebraElement::zero());
    };
    if wi.target() != wo.source() {
        return Err(Error::Composition(format!(
            "{wo:?} cannot follow {wi:?}: endpoints differ"
        )));
    }
    for w in [wo, wi] {
        if let Walk::Edge(a, b) = w {
            if !g.adjacent(a, b) {
                return Err(Error::Composition(format!("{w:?} is not an edge")));
            }
        }
    }
    let coeff = &outer.coeff * &inner.coeff;
    let walk = match (wo, wi) {
        (Walk::Constant(_), w) | (w, Walk::Constant(_)) => Some(w),
        (Walk::Edge(_, c), Walk::Edge(a, _)) if a == c => Some(Walk::Loop(a)),
        _ => None,
    };
    Ok(match walk {
        Some(w) => AlgebraElement::new(coeff, w),
        None => AlgebraElement::zero(),
    })
}

/// Formal direct sum of generators, in a fixed order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedObject {
    pub summands: Vec<Summand>,
}

impl GradedObject {
    pub fn new(summands: Vec<Summand>) -> Self {
        GradedObject { summands }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn get(&self, k: usize) -> Summand {
        self.summands[k]
    }

    pub fn shifted(&self, m: i32) -> Self {
        GradedObject::new(self.summands.iter().map(|&(v, s)| (v, s + m)).collect())
    }

    pub fn concat(&self, other: &GradedObject) -> Self {
        let mut s = self.summands.clone();
        s.extend_from_slice(&other.summands);
        GradedObject::new(s)
    }

    /// Sorted summand list, the equality notion for objects.
    pub fn multiset(&self) -> Vec<Summand> {
        let mut s = self.summands.clone();
        s.sort();
        s
    }

    pub fn check(&self, g: &CoxeterGraph) -> Result<()> {
        for &(v, _) in &self.summands {
            g.check_vertex(v)?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|&(v, m)| {
                if m == 0 {
                    format!("P{}", v + 1)
                } else {
                    format!("P{}<{}>", v + 1, m)
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Product of coefficient matrices `b ∘ a` for morphisms `x -> y -> z`.
///
/// Entries of `a` and `b` are assumed to vanish where the hom space does, so
/// the structure constant of each summand path is just the existence of
/// `Hom(x_c, z_r)`.
pub fn compose_coeffs(
    g: &CoxeterGraph,
    x: &GradedObject,
    z: &GradedObject,
    b: &QMatrix,
    a: &QMatrix,
) -> QMatrix {
    let mut out = b.mul(a);
    mask(g, x, z, &mut out);
    out
}

/// Zero out entries where `Hom(x_c, z_r)` vanishes.
pub fn mask(g: &CoxeterGraph, x: &GradedObject, z: &GradedObject, m: &mut QMatrix) {
    for r in 0..z.len() {
        for c in 0..x.len() {
            if !m.get(r, c).is_zero() && !has_hom(g, x.get(c), z.get(r)) {
                m.set(r, c, Q::zero());
            }
        }
    }
}

/// Check that every nonzero entry sits in a nonzero hom space.
pub fn check_support(
    g: &CoxeterGraph,
    x: &GradedObject,
    y: &GradedObject,
    m: &QMatrix,
) -> Result<()> {
    if m.rows() != y.len() || m.cols() != x.len() {
        return Err(Error::Shape(format!(
            "matrix is {}x{}, objects need {}x{}",
            m.rows(),
            m.cols(),
            y.len(),
            x.len()
        )));
    }
    for r in 0..y.len() {
        for c in 0..x.len() {
            if !m.get(r, c).is_zero() && !has_hom(g, x.get(c), y.get(r)) {
                return Err(Error::Composition(format!(
                    "entry ({r}, {c}) has no walk from {:?} to {:?}",
                    x.get(c),
                    y.get(r)
                )));
            }
        }
    }
    Ok(())
}

/// A morphism between graded objects, `target.len() x source.len()`.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixMorphism {
    pub source: GradedObject,
    pub target: GradedObject,
    pub coeffs: QMatrix,
}

impl MatrixMorphism {
    pub fn new(
        g: &CoxeterGraph,
        source: GradedObject,
        target: GradedObject,
        coeffs: QMatrix,
    ) -> Result<Self> {
        check_support(g, &source, &target, &coeffs)?;
        Ok(MatrixMorphism {
            source,
            target,
            coeffs,
        })
    }

    /// Build from explicit algebra elements; each walk must be the basis walk.
    pub fn from_entries(
        g: &CoxeterGraph,
        source: GradedObject,
        target: GradedObject,
        entries: &[Vec<AlgebraElement>],
    ) -> Result<Self> {
        if entries.len() != target.len() || entries.iter().any(|r| r.len() != source.len()) {
            return Err(Error::Shape("entry table does not match objects".into()));
        }
        let mut coeffs = QMatrix::zeros(target.len(), source.len());
        for (r, row) in entries.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                let Some(w) = e.walk else { continue };
                let (i, m) = source.get(c);
                let (j, n) = target.get(r);
                if hom_basis(g, i, m, j, n) != Some(w) {
                    return Err(Error::Composition(format!(
                        "walk {w:?} does not span Hom(P{}<{m}>, P{}<{n}>)",
                        i + 1,
                        j + 1
                    )));
                }
                coeffs.set(r, c, e.coeff.clone());
            }
        }
        Ok(MatrixMorphism {
            source,
            target,
            coeffs,
        })
    }

    pub fn identity(obj: &GradedObject) -> Self {
        MatrixMorphism {
            source: obj.clone(),
            target: obj.clone(),
            coeffs: QMatrix::identity(obj.len()),
        }
    }

    pub fn entry(&self, g: &CoxeterGraph, r: usize, c: usize) -> AlgebraElement {
        let (i, m) = self.source.get(c);
        let (j, n) = self.target.get(r);
        match hom_basis(g, i, m, j, n) {
            Some(w) => AlgebraElement::new(self.coeffs.get(r, c).clone(), w),
            None => AlgebraElement::zero(),
        }
    }
}

impl fmt::Debug for MatrixMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} -> {:?}: {:?}",
            self.source, self.target, self.coeffs
        )
    }
}

/// `G ∘ F`.
pub fn compose_matrices(
    g: &CoxeterGraph,
    outer: &MatrixMorphism,
    inner: &MatrixMorphism,
) -> Result<MatrixMorphism> {
    if inner.target != outer.source {
        return Err(Error::Shape(format!(
            "cannot compose: {:?} vs {:?}",
            inner.target, outer.source
        )));
    }
    Ok(MatrixMorphism {
        source: inner.source.clone(),
        target: outer.target.clone(),
        coeffs: compose_coeffs(g, &inner.source, &outer.target, &outer.coeffs, &inner.coeffs),
    })
}

/// Keep only the scalar multiples of constant walks.
pub fn semisimplify(f: &MatrixMorphism) -> QMatrix {
    let mut out = QMatrix::zeros(f.target.len(), f.source.len());
    for r in 0..f.target.len() {
        for c in 0..f.source.len() {
            if f.source.get(c) == f.target.get(r) {
                out.set(r, c, f.coeffs.get(r, c).clone());
            }
        }
    }
    out
}
