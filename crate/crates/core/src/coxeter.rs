//! Simply-laced Coxeter graphs, the root lattice and the Weyl group.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{det_i64, is_positive};
use crate::stability::CentralCharge;

pub const DEFAULT_ROOT_CAP: usize = 10_000;

/// A simply-laced Coxeter graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct CoxeterGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl CoxeterGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        let mut adj = vec![false; n * n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            let key = (a.min(b), a.max(b));
            if !set.insert(key) {
                return Err(Error::InvalidGraph(format!(
                    "repeated edge {{{}, {}}}: only simply-laced graphs are supported",
                    key.0, key.1
                )));
            }
            adj[a * n + b] = true;
            adj[b * n + a] = true;
        }
        Ok(CoxeterGraph { n, edges: set, adj })
    }

    /// Named Dynkin presets: `A1`..`A8`, `D4`..`D6`, `E6`..`E8`.
    ///
    /// `A_n` is the path `0 - 1 - ... - n-1`; `D_n` attaches `n-1` to `n-3`;
    /// `E_n` attaches `n-1` to vertex `2` of the path `0..n-1`.
    pub fn preset(name: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown graph preset `{name}`"));
        let (kind, rank) = name.split_at(1);
        let n: usize = rank.parse().map_err(|_| bad())?;
        let path = |len: usize| (1..len).map(|i| (i - 1, i)).collect::<Vec<_>>();
        let edges = match (kind, n) {
            ("A", 1..=8) => path(n),
            ("D", 4..=6) => {
                let mut e = path(n - 1);
                e.push((n - 3, n - 1));
                e
            }
            ("E", 6..=8) => {
                let mut e = path(n - 1);
                e.push((2, n - 1));
                e
            }
            _ => return Err(bad()),
        };
        CoxeterGraph::new(n, &edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text)?;
        let edges: Vec<_> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        CoxeterGraph::new(raw.n, &edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        })
        .expect("graph serialises")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.adjacent(i, j))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// The Gram matrix of the root lattice form: `2` on the diagonal, `-1` on edges.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        if i == j {
                            2
                        } else if self.adjacent(i, j) {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterGraph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// A vector in the root lattice, in the basis of simple roots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(n: usize) -> Self {
        RootVector(vec![0; n])
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    fn check(&self, g: &CoxeterGraph) -> Result<()> {
        if self.0.len() == g.n() {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: g.n(),
                got: self.0.len(),
            })
        }
    }
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Add for &RootVector {
    type Output = RootVector;
    fn add(self, o: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RootVector {
    type Output = RootVector;
    fn sub(self, o: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RootVector {
    type Output = RootVector;
    fn neg(self) -> RootVector {
        RootVector(self.0.iter().map(|a| -a).collect())
    }
}

pub fn bilinear_form(g: &CoxeterGraph, v: &RootVector, w: &RootVector) -> Result<i64> {
    v.check(g)?;
    w.check(g)?;
    let mut total = 0;
    for i in 0..g.n() {
        if v.0[i] == 0 {
            continue;
        }
        let mut row = 2 * w.0[i];
        for j in g.neighbours(i) {
            row -= w.0[j];
        }
        total += v.0[i] * row;
    }
    Ok(total)
}

/// `s_i(v) = v - (alpha_i, v) alpha_i`.
pub fn reflect_simple(g: &CoxeterGraph, i: usize, v: &RootVector) -> Result<RootVector> {
    g.check_vertex(i)?;
    v.check(g)?;
    let pairing = bilinear_form(g, &RootVector::simple(g.n(), i), v)?;
    let mut out = v.clone();
    out.0[i] -= pairing;
    Ok(out)
}

/// Integer matrix acting on column vectors of simple-root coordinates.
pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity_matrix(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_apply(a: &IntMatrix, v: &RootVector) -> RootVector {
    RootVector(
        a.iter()
            .map(|row| row.iter().zip(&v.0).map(|(x, y)| x * y).sum())
            .collect(),
    )
}

/// Matrix of `s_i` in the geometric representation; column `k` is `s_i(alpha_k)`.
pub fn simple_reflection_matrix(g: &CoxeterGraph, i: usize) -> IntMatrix {
    let mut m = identity_matrix(g.n());
    m[i][i] = -1;
    for j in g.neighbours(i) {
        m[i][j] = 1;
    }
    m
}

/// An element of W(Γ) carried as a representative word and its matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: IntMatrix,
}

impl WeylElement {
    pub fn identity(g: &CoxeterGraph) -> Self {
        WeylElement {
            word: Vec::new(),
            matrix: identity_matrix(g.n()),
        }
    }

    /// The product `s_{w[0]} s_{w[1]} ...`.
    pub fn from_word(g: &CoxeterGraph, word: &[usize]) -> Result<Self> {
        let mut matrix = identity_matrix(g.n());
        for &i in word {
            g.check_vertex(i)?;
            matrix = mat_mul(&matrix, &simple_reflection_matrix(g, i));
        }
        Ok(WeylElement {
            word: word.to_vec(),
            matrix,
        })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity_matrix(self.matrix.len())
    }

    pub fn inverse(&self, g: &CoxeterGraph) -> Self {
        let rev: Vec<usize> = self.word.iter().rev().copied().collect();
        WeylElement::from_word(g, &rev).expect("word already validated")
    }

    /// `s_i * self`.
    pub fn left_mul_simple(&self, g: &CoxeterGraph, i: usize) -> Self {
        let mut word = vec![i];
        word.extend_from_slice(&self.word);
        WeylElement {
            word,
            matrix: mat_mul(&simple_reflection_matrix(g, i), &self.matrix),
        }
    }

    pub fn apply(&self, v: &RootVector) -> RootVector {
        mat_apply(&self.matrix, v)
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement(word={:?})", self.word)
    }
}

/// Positive roots: the orbit of the simple roots under all simple reflections,
/// restricted to nonnegative vectors. Sorted by height, then lexicographically.
pub fn positive_roots(g: &CoxeterGraph, cap: usize) -> Result<Vec<RootVector>> {
    if cap == 0 {
        return Err(Error::InvalidArgument("root cap must be positive".into()));
    }
    let n = g.n();
    let mut seen: HashSet<RootVector> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let a = RootVector::simple(n, i);
        seen.insert(a.clone());
        queue.push_back(a);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let w = reflect_simple(g, i, &v)?;
            if seen.insert(w.clone()) {
                if seen.len() > cap {
                    return Err(Error::NonFiniteType { cap });
                }
                queue.push_back(w);
            }
        }
    }
    let mut pos: Vec<RootVector> = seen.into_iter().filter(|r| r.is_nonnegative()).collect();
    pos.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
    Ok(pos)
}

/// Positive definiteness of the Cartan matrix via leading principal minors.
pub fn is_finite_type(g: &CoxeterGraph) -> bool {
    let c = g.cartan();
    (1..=g.n()).all(|k| {
        let minor: Vec<Vec<i64>> = c[..k].iter().map(|r| r[..k].to_vec()).collect();
        is_positive(&det_i64(&minor))
    })
}

/// `(w . Z)(v) = Z(w^{-1} v)`.
pub fn contragredient_apply(
    g: &CoxeterGraph,
    w: &WeylElement,
    z: &CentralCharge,
) -> Result<CentralCharge> {
    if z.len() != g.n() {
        return Err(Error::Dimension {
            expected: g.n(),
            got: z.len(),
        });
    }
    let inv = w.inverse(g);
    let values = (0..g.n())
        .map(|i| z.eval(&inv.apply(&RootVector::simple(g.n(), i))))
        .collect();
    Ok(CentralCharge::new(values))
}
