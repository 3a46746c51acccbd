//! Braid-orbit catalogue of heart indecomposables and catalogue-based
//! semistability.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{heart_phase, require_stability, standard_member, CentralCharge, HeartDescriptor, StabilityData, PHASE_TOL};
use crate::braid::{apply_word, BraidWord};
use crate::complex::{cone, translate, ChainMap, ComplexKG};
use crate::coxeter::{is_finite_type, CoxeterGraph};
use crate::error::{Error, Result};
use crate::heart::{is_linear, normalize_linear_shift, single_layer};
use crate::hom::{iso_minimal, HomSpace};

/// Number of random combinations tried when a hom space has dimension > 1.
const RANDOM_MAPS: usize = 8;

#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub label: String,
    /// Representative in `H_lin`, normalised so its top degree is 0.
    pub rep: ComplexKG,
    /// The corresponding object of the catalogue's heart.
    pub object: ComplexKG,
}

#[derive(Clone, Debug)]
pub struct Catalogue {
    pub heart: HeartDescriptor,
    pub entries: Vec<CatalogueEntry>,
    /// Whether the entries are known to exhaust the heart's indecomposables.
    pub complete: bool,
    pub word_len: usize,
    pub shift_window: i32,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Semistability {
    pub semistable: bool,
    pub catalogue_complete: bool,
}

fn letters(n: usize) -> Vec<(usize, i8)> {
    (0..n).map(|s| (s, 1)).chain((0..n).map(|s| (s, -1))).collect()
}

/// Freely reduced words of length exactly `len`, in lexicographic letter order.
fn words_of_length(n: usize, len: usize) -> Vec<BraidWord> {
    let alphabet = letters(n);
    let mut words = vec![BraidWord::empty()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &words {
            for &(s, e) in &alphabet {
                if w.letters.last() == Some(&(s, -e)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(s, e);
                next.push(v);
            }
        }
        words = next;
    }
    words
}

fn label(w: &BraidWord, i: usize) -> String {
    if w.is_empty() {
        format!("P{}", i + 1)
    } else {
        format!("{w}(P{})", i + 1)
    }
}

fn known_complete(g: &CoxeterGraph, word_len: usize) -> bool {
    let edges = g.edges().count();
    edges == 0 || (g.n() == 2 && edges == 1 && word_len >= 1)
}

/// Heart members up to linear shift among `u(P_i)` for words `u` of length
/// at most `word_len`, deduplicated up to isomorphism.
pub fn heart_indecomposables(
    g: &CoxeterGraph,
    heart: &HeartDescriptor,
    word_len: usize,
    shift_window: i32,
    seed: u64,
) -> Result<Catalogue> {
    if !is_finite_type(g) {
        return Err(Error::Unsupported(
            "heart catalogues need a finite-type graph".into(),
        ));
    }
    let mut entries: Vec<CatalogueEntry> = Vec::new();
    for len in 0..=word_len {
        for w in words_of_length(g.n(), len) {
            for i in 0..g.n() {
                let x = apply_word(g, &w, &ComplexKG::generator(i, 0))?;
                let Some(k) = single_layer(g, &x) else { continue };
                let (rep, _) = normalize_linear_shift(&translate(&x, -k, 0))?;
                let mut seen = false;
                for e in &entries {
                    if e.rep.shape() == rep.shape() && iso_minimal(g, &e.rep, &rep, seed)? {
                        seen = true;
                        break;
                    }
                }
                if !seen {
                    let object = heart.from_standard(g, &rep)?;
                    entries.push(CatalogueEntry {
                        label: label(&w, i),
                        rep,
                        object,
                    });
                }
            }
        }
    }
    Ok(Catalogue {
        heart: heart.clone(),
        entries,
        complete: known_complete(g, word_len),
        word_len,
        shift_window,
        seed,
    })
}

/// Whether `f: U -> E` is a monomorphism in the heart: its cone stays in it.
pub fn subobject_test(
    g: &CoxeterGraph,
    sd: &StabilityData,
    _u: &ComplexKG,
    _e: &ComplexKG,
    f: &ChainMap,
) -> Result<bool> {
    let c = sd.heart.to_standard(g, &cone(f))?;
    Ok(is_linear(g, &c))
}

fn shift_range(c: &ComplexKG) -> (i32, i32) {
    let mut lo = i32::MAX;
    let mut hi = i32::MIN;
    for (_, (_, m)) in c.summands() {
        lo = lo.min(m);
        hi = hi.max(m);
    }
    (lo, hi)
}

/// Candidate maps `U -> X`: a basis of the hom space, plus random
/// combinations when it has dimension above one.
pub(crate) fn candidate_maps(
    g: &CoxeterGraph,
    u: &ComplexKG,
    x: &ComplexKG,
    rng: &mut ChaCha8Rng,
) -> Vec<ChainMap> {
    let hs = HomSpace::new(g, u, x);
    let mut maps = hs.basis_maps();
    if hs.dim() > 1 {
        for _ in 0..RANDOM_MAPS {
            let coeffs: Vec<i64> = (0..hs.dim()).map(|_| rng.gen_range(-50..=50)).collect();
            maps.push(hs.combination(&coeffs));
        }
    }
    maps
}

/// Linear shifts `U<t>[t]` of `u` that can map nontrivially into `x`.
pub(crate) fn placements(u: &ComplexKG, x: &ComplexKG, window: i32) -> Vec<ComplexKG> {
    let (ulo, uhi) = shift_range(u);
    let (xlo, xhi) = shift_range(x);
    (xlo - uhi - window..=xhi - ulo + window)
        .map(|t| translate(u, t, t))
        .collect()
}

/// A monomorphism `U<t>[t] -> x` in `H_lin` from the given object, if any.
pub(crate) fn find_mono(
    g: &CoxeterGraph,
    u: &ComplexKG,
    x: &ComplexKG,
    window: i32,
    rng: &mut ChaCha8Rng,
) -> Option<ChainMap> {
    for ut in placements(u, x, window) {
        for f in candidate_maps(g, &ut, x, rng) {
            if is_linear(g, &cone(&f)) {
                return Some(f);
            }
        }
    }
    None
}

/// Phases of the catalogue representatives under an identity-frame charge.
pub(crate) fn entry_phases(g: &CoxeterGraph, zb: &CentralCharge, cat: &Catalogue) -> Result<Vec<f64>> {
    cat.entries
        .iter()
        .map(|e| heart_phase(zb.eval_complex(g, &e.rep)))
        .collect()
}

/// Whether some catalogue object of larger phase is a subobject of `l`.
pub(crate) fn destabilized(
    g: &CoxeterGraph,
    cat: &Catalogue,
    phases: &[f64],
    l: &ComplexKG,
    phi: f64,
    rng: &mut ChaCha8Rng,
) -> bool {
    cat.entries.iter().zip(phases).any(|(e, &p)| {
        p > phi + PHASE_TOL && find_mono(g, &e.rep, l, cat.shift_window, rng).is_some()
    })
}

/// Indices of the semistable catalogue entries under an identity-frame charge.
pub(crate) fn semistable_entries(
    g: &CoxeterGraph,
    zb: &CentralCharge,
    cat: &Catalogue,
) -> Result<Vec<usize>> {
    let phases = entry_phases(g, zb, cat)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cat.seed);
    Ok((0..cat.entries.len())
        .filter(|&i| !destabilized(g, cat, &phases, &cat.entries[i].rep, phases[i], &mut rng))
        .collect())
}

/// Semistability of a (shifted) heart object against the catalogue.
pub fn is_semistable(
    g: &CoxeterGraph,
    sd: &StabilityData,
    e: &ComplexKG,
    cat: &Catalogue,
) -> Result<Semistability> {
    require_stability(sd)?;
    let x = sd.heart.to_standard(g, e)?;
    let (l, _) = standard_member(g, &x)?;
    let zb = sd.transported();
    let phi = heart_phase(zb.eval_complex(g, &l))?;
    let phases = entry_phases(g, &zb, cat)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cat.seed);
    Ok(Semistability {
        semistable: !destabilized(g, cat, &phases, &l, phi, &mut rng),
        catalogue_complete: cat.complete,
    })
}
