//! Walls and hyperplanes in charge space, Weyl chambers, wall-crossing path
//! lifting and braid monodromy.

use num_complex::Complex64;
use serde::Serialize;

use crate::braid::BraidWord;
use crate::coxeter::{
    contragredient_apply, identity_matrix, is_finite_type, positive_roots, CoxeterGraph, IntMatrix,
    RootVector, WeylElement, DEFAULT_ROOT_CAP,
};
use crate::error::{Error, Result};
use crate::k0::{induced_matrix, specialize_matrix};
use crate::stability::{
    is_stability_function, CentralCharge, HeartDescriptor, StabilityData, SIGN_TOL, ZERO_TOL,
};

/// Minimum distance from a path to any hyperplane `Z(α) = 0`.
pub const HYPERPLANE_TOL: f64 = 1e-9;
/// Bisection tolerance for crossing parameters.
pub const BISECT_TOL: f64 = 1e-10;

fn roots(g: &CoxeterGraph) -> Result<Vec<RootVector>> {
    if !is_finite_type(g) {
        return Err(Error::Unsupported(
            "chamber geometry needs a finite-type graph".into(),
        ));
    }
    positive_roots(g, DEFAULT_ROOT_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    OpenChamber,
    FundamentalDomain,
    Outside,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionReport {
    pub region: Region,
    /// Roots whose wall `Im Z(α) = 0` contains `Z`.
    pub walls: Vec<RootVector>,
    /// Roots whose hyperplane `Z(α) = 0` contains `Z`.
    pub hyperplanes: Vec<RootVector>,
}

pub fn locate(g: &CoxeterGraph, z: &CentralCharge, roots: &[RootVector]) -> Result<RegionReport> {
    z.check(g)?;
    let mut walls = Vec::new();
    let mut hyperplanes = Vec::new();
    for a in roots {
        let v = z.eval(a);
        if v.norm() < ZERO_TOL {
            hyperplanes.push(a.clone());
        } else if v.im.abs() <= SIGN_TOL {
            walls.push(a.clone());
        }
    }
    let region = if !hyperplanes.is_empty() {
        Region::Degenerate
    } else {
        let n = g.n();
        let simples: Vec<Complex64> = (0..n).map(|i| z.eval(&RootVector::simple(n, i))).collect();
        if simples.iter().all(|v| v.im > SIGN_TOL) {
            Region::OpenChamber
        } else if simples
            .iter()
            .all(|v| v.im > SIGN_TOL || (v.im.abs() <= SIGN_TOL && v.re < 0.0))
        {
            Region::FundamentalDomain
        } else {
            Region::Outside
        }
    };
    Ok(RegionReport {
        region,
        walls,
        hyperplanes,
    })
}

/// The Weyl element `w` with `w · Z` in the open fundamental chamber.
pub fn chamber_identify(g: &CoxeterGraph, z: &CentralCharge) -> Result<WeylElement> {
    z.check(g)?;
    let rs = roots(g)?;
    for a in &rs {
        if z.eval(a).im.abs() <= SIGN_TOL {
            return Err(Error::OnWall(a.0.clone()));
        }
    }
    let n = g.n();
    let mut w = WeylElement::identity(g);
    for _ in 0..=rs.len() {
        let cur = contragredient_apply(g, &w, z)?;
        match (0..n).find(|&i| cur.eval(&RootVector::simple(n, i)).im < 0.0) {
            Some(i) => w = w.left_mul_simple(g, i),
            None => return Ok(w),
        }
    }
    unreachable!("reflection descent is bounded by the number of positive roots")
}

/// Piecewise-linear path of central charges.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargePath {
    samples: Vec<CentralCharge>,
}

impl ChargePath {
    pub fn new(g: &CoxeterGraph, samples: Vec<CentralCharge>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidArgument("a path needs at least one sample".into()));
        }
        for s in &samples {
            s.check(g)?;
        }
        for (k, w) in samples.windows(2).enumerate() {
            if w[0].max_distance(&w[1]) == 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "samples {k} and {} coincide",
                    k + 1
                )));
            }
        }
        Ok(ChargePath { samples })
    }

    /// Sample `f(t)` at `n + 1` evenly spaced parameters in `[0, 1]`.
    pub fn sampled(
        g: &CoxeterGraph,
        n: usize,
        f: impl Fn(f64) -> CentralCharge,
    ) -> Result<Self> {
        Self::new(g, (0..=n).map(|k| f(k as f64 / n as f64)).collect())
    }

    pub fn samples(&self) -> &[CentralCharge] {
        &self.samples
    }

    pub fn reversed(&self) -> Self {
        ChargePath {
            samples: self.samples.iter().rev().cloned().collect(),
        }
    }

    /// Insert the midpoint of every segment.
    pub fn refined(&self) -> Self {
        let mut out = vec![self.samples[0].clone()];
        for w in self.samples.windows(2) {
            out.push(w[0].lerp(&w[1], 0.5));
            out.push(w[1].clone());
        }
        ChargePath { samples: out }
    }

    /// Join two paths; the second must start where the first ends.
    pub fn concat(&self, other: &ChargePath) -> Result<Self> {
        let end = self.samples.last().expect("nonempty");
        if end.max_distance(&other.samples[0]) > SIGN_TOL {
            return Err(Error::InvalidArgument("paths do not meet".into()));
        }
        let mut s = self.samples.clone();
        s.extend(other.samples[1..].iter().cloned());
        Ok(ChargePath { samples: s })
    }

    pub fn from_json(g: &CoxeterGraph, text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Raw {
            samples: Vec<Vec<(f64, f64)>>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        let samples = raw
            .samples
            .into_iter()
            .map(|s| CentralCharge::new(s.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()))
            .collect();
        Self::new(g, samples)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "samples": self.samples.iter().map(CentralCharge::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingSign {
    /// `Im Z(α)` goes from positive to negative.
    Downward,
    /// `Im Z(α)` goes from negative to positive.
    Upward,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WallEvent {
    pub segment: usize,
    pub t: f64,
    pub root: RootVector,
    pub sign: CrossingSign,
    /// Sign of `Re Z(α)` at the crossing.
    pub re_sign: i8,
}

fn distance_to_origin(a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return a.norm();
    }
    let t = (-(a.re * d.re + a.im * d.im) / len2).clamp(0.0, 1.0);
    (a + d * t).norm()
}

fn check_hyperplanes(za: &CentralCharge, zb: &CentralCharge, rs: &[RootVector], seg: usize) -> Result<()> {
    for a in rs {
        if distance_to_origin(za.eval(a), zb.eval(a)) < HYPERPLANE_TOL {
            return Err(Error::Genericity(format!(
                "segment {seg} passes through the hyperplane of {:?}",
                a
            )));
        }
    }
    Ok(())
}

fn check_sample_walls(z: &CentralCharge, rs: &[RootVector], k: usize) -> Result<()> {
    for a in rs {
        if z.eval(a).im.abs() <= SIGN_TOL {
            return Err(Error::Genericity(format!(
                "sample {k} lies on the wall of {a:?}; perturb the path"
            )));
        }
    }
    Ok(())
}

/// Crossing of the wall of `a` inside one segment, if `Im Z(a)` changes sign.
fn crossing(za: &CentralCharge, zb: &CentralCharge, a: &RootVector, seg: usize) -> Option<WallEvent> {
    let (va, vb) = (za.eval(a), zb.eval(a));
    if va.im * vb.im >= 0.0 {
        return None;
    }
    let f = |t: f64| (va * (1.0 - t) + vb * t).im;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let up = va.im < 0.0;
    while hi - lo > BISECT_TOL {
        let mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) == up {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let re = (va * (1.0 - t) + vb * t).re;
    Some(WallEvent {
        segment: seg,
        t,
        root: a.clone(),
        sign: if up { CrossingSign::Upward } else { CrossingSign::Downward },
        re_sign: if re < 0.0 { -1 } else { 1 },
    })
}

pub fn detect_crossings(
    g: &CoxeterGraph,
    path: &ChargePath,
    tracked: &[RootVector],
) -> Result<Vec<WallEvent>> {
    let rs = roots(g)?;
    for (k, z) in path.samples.iter().enumerate() {
        check_sample_walls(z, tracked, k)?;
    }
    let mut events = Vec::new();
    for (seg, w) in path.samples.windows(2).enumerate() {
        check_hyperplanes(&w[0], &w[1], &rs, seg)?;
        let found: Vec<WallEvent> = tracked
            .iter()
            .filter_map(|a| crossing(&w[0], &w[1], a, seg))
            .collect();
        if found.len() > 1 {
            return Err(Error::Genericity(format!(
                "segment {seg} crosses {} walls; refine the path",
                found.len()
            )));
        }
        events.extend(found);
    }
    Ok(events)
}

fn simple_index(heart: &HeartDescriptor, a: &RootVector) -> Option<(usize, i64)> {
    let neg = -a;
    heart.simple_classes.iter().enumerate().find_map(|(i, c)| {
        if c == a {
            Some((i, 1))
        } else if *c == neg {
            Some((i, -1))
        } else {
            None
        }
    })
}

/// Follow the path, switching hearts at each simple-charge wall.
pub fn lift_path(
    g: &CoxeterGraph,
    path: &ChargePath,
    start: &HeartDescriptor,
) -> Result<(BraidWord, HeartDescriptor)> {
    let rs = roots(g)?;
    let first = StabilityData::new(g, start.clone(), path.samples[0].clone())?;
    if !is_stability_function(&first)? {
        return Err(Error::InvalidArgument(
            "the first sample is not a stability function on the start heart".into(),
        ));
    }
    for (k, z) in path.samples.iter().enumerate() {
        check_sample_walls(z, &rs, k)?;
    }
    let mut heart = start.clone();
    let mut word = BraidWord::empty();
    for (seg, w) in path.samples.windows(2).enumerate() {
        check_hyperplanes(&w[0], &w[1], &rs, seg)?;
        let mut events: Vec<WallEvent> = rs
            .iter()
            .filter_map(|a| crossing(&w[0], &w[1], a, seg))
            .collect();
        events.sort_by(|a, b| a.t.total_cmp(&b.t));
        for pair in events.windows(2) {
            if pair[1].t - pair[0].t < BISECT_TOL {
                return Err(Error::Genericity(format!(
                    "segment {seg} crosses the walls of {:?} and {:?} simultaneously",
                    pair[0].root, pair[1].root
                )));
            }
        }
        for ev in events {
            let Some((i, sign)) = simple_index(&heart, &ev.root) else {
                return Err(Error::Refinement(format!(
                    "segment {seg} crosses the wall of {:?}, which is not a simple class of the current heart",
                    ev.root
                )));
            };
            let leaving = match ev.sign {
                CrossingSign::Downward => sign > 0,
                CrossingSign::Upward => sign < 0,
            };
            if !leaving {
                return Err(Error::Refinement(format!(
                    "simple charge {} enters the upper half plane at segment {seg}",
                    i + 1
                )));
            }
            let re = ev.re_sign as i64 * sign;
            word.push(i, if re < 0 { 1 } else { -1 });
            heart = HeartDescriptor::new(g, word_with_start(start, &word))?;
        }
    }
    let last = StabilityData::new(g, heart.clone(), path.samples.last().expect("nonempty").clone())?;
    if !is_stability_function(&last)? {
        return Err(Error::Genericity(
            "the final charge is not a stability function on the lifted heart".into(),
        ));
    }
    Ok((word, heart))
}

fn word_with_start(start: &HeartDescriptor, tail: &BraidWord) -> BraidWord {
    start.word.concat(tail)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monodromy {
    pub word: BraidWord,
    pub weyl_image: IntMatrix,
}

/// Braid word of a loop in charge space (`quotient = false`) or in its
/// quotient by the Weyl group (`quotient = true`).
pub fn monodromy(g: &CoxeterGraph, path: &ChargePath, quotient: bool) -> Result<Monodromy> {
    let start = &path.samples[0];
    let end = path.samples.last().expect("nonempty");
    let (word, heart) = lift_path(g, path, &HeartDescriptor::standard(g))?;
    let weyl = word.weyl_image(g)?;
    let scale = start.values().iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = 1e-9 * scale;
    if quotient {
        let expected = contragredient_apply(g, &weyl, start)?;
        if expected.max_distance(end) > tol {
            return Err(Error::NotALoop(
                "the end charge is not the Weyl image of the start matching the lifted word".into(),
            ));
        }
    } else if start.max_distance(end) > tol {
        return Err(Error::NotALoop("the path does not return to its start".into()));
    } else if weyl.matrix() != &identity_matrix(g.n()) {
        return Err(Error::NotALoop(
            "the lifted word does not map to the identity in the Weyl group".into(),
        ));
    }
    let burau = specialize_matrix(&induced_matrix(g, &word)?);
    debug_assert_eq!(&burau, heart.weyl_matrix());
    if &burau != weyl.matrix() {
        return Err(Error::Unsupported(
            "categorical action disagrees with the Weyl image".into(),
        ));
    }
    Ok(Monodromy {
        word,
        weyl_image: burau,
    })
}
