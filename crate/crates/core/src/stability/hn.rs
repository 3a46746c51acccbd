//! Harder-Narasimhan filtrations refined from the heart filtration, phase
//! bounds, slicing distance and the deformation condition.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::catalogue::{find_mono, semistable_entries, Catalogue};
use super::{heart_phase, require_stability, CentralCharge, StabilityData, PHASE_TOL};
use crate::complex::{
    compose_chain, cone, cone_inclusion, minimal_model, translate, ChainMap, ComplexKG,
};
use crate::coxeter::{mat_apply, CoxeterGraph};
use crate::error::{Error, Result};
use crate::heart::linear_weight_filtration;
use crate::k0::root_class;

#[derive(Clone, Debug)]
pub struct HnPiece {
    pub object: ComplexKG,
    pub phase: f64,
}

#[derive(Clone, Debug)]
pub struct HNFiltration {
    pub pieces: Vec<HnPiece>,
    pub catalogue_complete: bool,
}

impl HNFiltration {
    pub fn phases(&self) -> Vec<f64> {
        self.pieces.iter().map(|p| p.phase).collect()
    }
}

/// One greedy extraction: a semistable subobject of the current quotient.
struct Step {
    phase: f64,
    iota: ChainMap,
}

/// HN pieces of an object `l` of `H_lin`, with phases in `(0, 1]`.
fn hn_in_heart(
    g: &CoxeterGraph,
    cat: &Catalogue,
    semistable: &[(usize, f64)],
    l: &ComplexKG,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(ComplexKG, f64)>> {
    let mut q = l.clone();
    let mut steps: Vec<Step> = Vec::new();
    while !minimal_model(g, &q).is_zero() {
        let mut found = None;
        for &(i, p) in semistable {
            if let Some(f) = find_mono(g, &cat.entries[i].rep, &q, cat.shift_window, rng) {
                found = Some((f, p));
                break;
            }
        }
        let Some((f, p)) = found else {
            return Err(Error::Unsupported(format!(
                "catalogue has no subobject of {:?}; enlarge the word length",
                minimal_model(g, &q)
            )));
        };
        let iota = cone_inclusion(&f);
        q = iota.target.clone();
        steps.push(Step { phase: p, iota });
    }

    let mut pieces = Vec::new();
    let mut a = 0;
    while a < steps.len() {
        let mut b = a;
        let mut comp = steps[a].iota.clone();
        while b + 1 < steps.len() && (steps[b + 1].phase - steps[a].phase).abs() <= PHASE_TOL {
            b += 1;
            comp = compose_chain(g, &steps[b].iota, &comp)?;
        }
        let fiber = minimal_model(g, &translate(&cone(&comp), -1, 0));
        pieces.push((fiber, steps[a].phase));
        a = b + 1;
    }
    Ok(pieces)
}

/// The HN filtration of `x`: heart filtration in the identity frame, each
/// layer refined greedily by maximal-phase semistable subobjects.
pub fn hn_filtration(
    g: &CoxeterGraph,
    sd: &StabilityData,
    x: &ComplexKG,
    cat: &Catalogue,
) -> Result<HNFiltration> {
    require_stability(sd)?;
    if x.is_zero() {
        return Err(Error::ZeroComplex);
    }
    let zb = sd.transported();
    let std = sd.heart.to_standard(g, x)?;
    let mut semistable: Vec<(usize, f64)> = semistable_entries(g, &zb, cat)?
        .into_iter()
        .map(|i| Ok((i, heart_phase(zb.eval_complex(g, &cat.entries[i].rep))?)))
        .collect::<Result<_>>()?;
    semistable.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut rng = ChaCha8Rng::seed_from_u64(cat.seed);

    let mut pieces = Vec::new();
    for (k, layer) in linear_weight_filtration(g, &std) {
        let l = minimal_model(g, &translate(&layer, -k, 0));
        for (s, p) in hn_in_heart(g, cat, &semistable, &l, &mut rng)? {
            let object = sd.heart.from_standard(g, &translate(&s, k, 0))?;
            pieces.push(HnPiece {
                object,
                phase: p + k as f64,
            });
        }
    }
    debug_assert!(pieces.windows(2).all(|w| w[0].phase > w[1].phase));
    Ok(HNFiltration {
        pieces,
        catalogue_complete: cat.complete,
    })
}

/// `(φ₊, φ₋)`: the first and last HN phases.
pub fn phi_bounds(
    g: &CoxeterGraph,
    sd: &StabilityData,
    x: &ComplexKG,
    cat: &Catalogue,
) -> Result<(f64, f64)> {
    let hn = hn_filtration(g, sd, x, cat)?;
    let first = hn.pieces.first().expect("nonzero object has a piece").phase;
    let last = hn.pieces.last().expect("nonzero object has a piece").phase;
    Ok((first, last))
}

/// Largest discrepancy of `φ₊` and `φ₋` over the test objects.
pub fn slicing_distance_lb(
    g: &CoxeterGraph,
    sd1: &StabilityData,
    cat1: &Catalogue,
    sd2: &StabilityData,
    cat2: &Catalogue,
    tests: &[ComplexKG],
) -> Result<f64> {
    let mut d: f64 = 0.0;
    for e in tests {
        let (p1, m1) = phi_bounds(g, sd1, e, cat1)?;
        let (p2, m2) = phi_bounds(g, sd2, e, cat2)?;
        d = d.max((p1 - p2).abs()).max((m1 - m2).abs());
    }
    Ok(d)
}

/// `|W(E) - Z(E)| < sin(επ)|Z(E)|` for every semistable catalogue object.
pub fn deformation_ok(
    g: &CoxeterGraph,
    sd: &StabilityData,
    w: &CentralCharge,
    eps: f64,
    cat: &Catalogue,
) -> Result<bool> {
    if !(eps > 0.0 && eps < 0.125) {
        return Err(Error::InvalidArgument(format!("eps = {eps} outside (0, 1/8)")));
    }
    w.check(g)?;
    require_stability(sd)?;
    let zb = sd.transported();
    let bound = (eps * std::f64::consts::PI).sin();
    for i in semistable_entries(g, &zb, cat)? {
        let class = mat_apply(sd.heart.weyl_matrix(), &root_class(g, &cat.entries[i].rep));
        let (ze, we) = (sd.z.eval(&class), w.eval(&class));
        if (we - ze).norm() >= bound * ze.norm() {
            return Ok(false);
        }
    }
    Ok(true)
}
