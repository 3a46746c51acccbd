//! Property tests over seeded random inputs.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use num_complex::Complex64;
use zigzag_stab::braid::{apply_word, twist, untwist, BraidWord};
use zigzag_stab::chamber::{chamber_identify, lift_path, ChargePath};
use zigzag_stab::complex::{cone, is_minimal, minimal_model, translate, ComplexKG};
use zigzag_stab::coxeter::{contragredient_apply, positive_roots, CoxeterGraph};
use zigzag_stab::gen::{blow_up, random_complex};
use zigzag_stab::hom::{iso_minimal, HomSpace};
use zigzag_stab::json::{complex_from_json, complex_to_json};
use zigzag_stab::k0::{class_of, induced_matrix, LaurentPoly};
use zigzag_stab::linalg::{QMatrix, Q};
use zigzag_stab::stability::{CentralCharge, HeartDescriptor};
use zigzag_stab::walk::{compose_matrices, has_hom, GradedObject, MatrixMorphism};

fn rand_complex(g: &CoxeterGraph, seed: u64) -> ComplexKG {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_complex(g, &mut rng).unwrap()
}

fn word_strategy(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((0..n, prop::bool::ANY), 0..=max_len)
        .prop_map(|v| BraidWord::new(v.into_iter().map(|(s, e)| (s, if e { 1 } else { -1 })).collect()))
}

fn object_strategy(n: usize) -> impl Strategy<Value = GradedObject> {
    prop::collection::vec((0..n, -2i32..=2), 1..=3).prop_map(GradedObject::new)
}

fn morphism(g: &CoxeterGraph, x: &GradedObject, y: &GradedObject, coeffs: &[i64]) -> MatrixMorphism {
    let mut m = QMatrix::zeros(y.len(), x.len());
    let mut k = 0;
    for r in 0..y.len() {
        for c in 0..x.len() {
            if has_hom(g, x.get(c), y.get(r)) {
                m.set(r, c, Q::from_integer(coeffs[k % coeffs.len()].into()));
            }
            k += 1;
        }
    }
    MatrixMorphism::new(g, x.clone(), y.clone(), m).unwrap()
}

fn graph_strategy() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A2", "A3", "D4"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative(
        x in object_strategy(3), y in object_strategy(3), z in object_strategy(3), w in object_strategy(3),
        coeffs in prop::collection::vec(-4i64..=4, 1..8),
    ) {
        let g = graph("A3");
        let f = morphism(&g, &x, &y, &coeffs);
        let h = morphism(&g, &y, &z, &coeffs[1..].iter().chain(&coeffs[..1]).copied().collect::<Vec<_>>());
        let k = morphism(&g, &z, &w, &coeffs.iter().rev().copied().collect::<Vec<_>>());
        let left = compose_matrices(&g, &k, &compose_matrices(&g, &h, &f).unwrap()).unwrap();
        let right = compose_matrices(&g, &compose_matrices(&g, &k, &h).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn braid_images_are_complexes(name in graph_strategy(), seed in 0u64..1000, w in word_strategy(4, 4)) {
        let g = graph(name);
        let w = BraidWord::new(w.letters.into_iter().filter(|l| l.0 < g.n()).collect());
        let x = apply_word(&g, &w, &rand_complex(&g, seed)).unwrap();
        prop_assert!(x.check_d_squared(&g).is_ok());
        prop_assert!(is_minimal(&x));
    }

    #[test]
    fn minimal_model_is_idempotent_and_canonical(name in graph_strategy(), seed in 0u64..1000) {
        let g = graph(name);
        let c = minimal_model(&g, &rand_complex(&g, seed));
        prop_assert_eq!(&minimal_model(&g, &c), &c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 1);
        let back = minimal_model(&g, &blow_up(&g, &c, &mut rng).unwrap());
        prop_assert!(iso_minimal(&g, &c, &back, seed).unwrap());
    }

    #[test]
    fn twist_and_untwist_are_inverse(seed in 0u64..1000, s in 0usize..3) {
        let g = graph("A3");
        let c = minimal_model(&g, &rand_complex(&g, seed));
        let a = untwist(&g, s, &twist(&g, s, &c).unwrap()).unwrap();
        let b = twist(&g, s, &untwist(&g, s, &c).unwrap()).unwrap();
        prop_assert!(iso_minimal(&g, &a, &c, seed).unwrap());
        prop_assert!(iso_minimal(&g, &b, &c, seed).unwrap());
    }

    #[test]
    fn braid_relations_hold(name in graph_strategy(), seed in 0u64..1000) {
        let g = graph(name);
        let x = minimal_model(&g, &rand_complex(&g, seed));
        for a in 0..g.n() {
            for b in a + 1..g.n() {
                let (l, r) = if g.adjacent(a, b) {
                    (vec![(a, 1), (b, 1), (a, 1)], vec![(b, 1), (a, 1), (b, 1)])
                } else {
                    (vec![(a, 1), (b, 1)], vec![(b, 1), (a, 1)])
                };
                let lx = apply_word(&g, &BraidWord::new(l), &x).unwrap();
                let rx = apply_word(&g, &BraidWord::new(r), &x).unwrap();
                prop_assert!(iso_minimal(&g, &lx, &rx, seed).unwrap());
            }
        }
    }

    #[test]
    fn k0_is_equivariant(seed in 0u64..1000, w in word_strategy(3, 3)) {
        let g = graph("A3");
        let x = rand_complex(&g, seed);
        let m = induced_matrix(&g, &w).unwrap();
        let cx = class_of(&g, &x).components;
        let lhs = class_of(&g, &apply_word(&g, &w, &x).unwrap()).components;
        let rhs: Vec<LaurentPoly> = m
            .iter()
            .map(|row| row.iter().zip(&cx).fold(LaurentPoly::zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn k0_of_cone_is_difference(seed in 0u64..1000, other in 0u64..1000, k in 0usize..4) {
        let g = graph("A2");
        let x = minimal_model(&g, &rand_complex(&g, seed));
        let y = minimal_model(&g, &rand_complex(&g, other));
        let hs = HomSpace::new(&g, &x, &y);
        let f = if hs.dim() == 0 {
            zigzag_stab::complex::ChainMap::zero(x.clone(), y.clone())
        } else {
            hs.basis_maps()[k % hs.dim()].clone()
        };
        let c = class_of(&g, &cone(&f)).components;
        let (cx, cy) = (class_of(&g, &x).components, class_of(&g, &y).components);
        let diff: Vec<LaurentPoly> = cy.iter().zip(&cx).map(|(a, b)| a - b).collect();
        prop_assert_eq!(c, diff);
    }

    #[test]
    fn translation_shifts_class(seed in 0u64..1000, k in -2i32..=2, m in -2i32..=2) {
        let g = graph("A2");
        let x = rand_complex(&g, seed);
        let factor = LaurentPoly::monomial(if k % 2 == 0 { 1 } else { -1 }, m);
        let expect: Vec<LaurentPoly> = class_of(&g, &x).components.iter().map(|p| &factor * p).collect();
        prop_assert_eq!(class_of(&g, &translate(&x, k, m)).components, expect);
    }

    #[test]
    fn complex_json_round_trips(name in graph_strategy(), seed in 0u64..1000) {
        let g = graph(name);
        let x = rand_complex(&g, seed);
        let v = complex_to_json(&g, &x);
        let text = v.to_string();
        let back = complex_from_json(&g, &serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn word_text_round_trips(w in word_strategy(5, 6)) {
        let s = w.to_string();
        prop_assert_eq!(s.parse::<BraidWord>().unwrap(), w.clone());
        prop_assert_eq!(BraidWord::from_json(&w.to_json()).unwrap(), w);
    }

    #[test]
    fn chamber_identify_is_self_verifying(
        name in prop::sample::select(vec!["A2", "A3", "D4"]),
        angles in prop::collection::vec(0.0f64..2.0, 4),
        radii in prop::collection::vec(0.5f64..2.0, 4),
    ) {
        let g = graph(name);
        let z = CentralCharge::new(
            (0..g.n()).map(|i| Complex64::from_polar(radii[i], std::f64::consts::PI * angles[i])).collect(),
        );
        let roots = positive_roots(&g, 1000).unwrap();
        prop_assume!(roots.iter().all(|a| z.eval(a).im.abs() > 1e-6));
        let w = chamber_identify(&g, &z).unwrap();
        let img = contragredient_apply(&g, &w, &z).unwrap();
        prop_assert!(img.values().iter().all(|v| v.im > 0.0));
        prop_assert!(chamber_identify(&g, &img).unwrap().is_identity());
    }
}

/// Random generic polyline starting in the fundamental chamber of A2.
fn random_path(g: &CoxeterGraph, seed: u64, len: usize) -> ChargePath {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = vec![a2_example_charge()];
    for _ in 0..len {
        let last = samples.last().unwrap().clone();
        let step: Vec<Complex64> = last
            .values()
            .iter()
            .map(|z| z + Complex64::new(rng.gen_range(-0.05..0.05), rng.gen_range(-0.05..0.05)))
            .collect();
        samples.push(CentralCharge::new(step));
    }
    ChargePath::new(g, samples).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lifting_respects_reversal_and_concatenation(seed in 0u64..10_000, len in 2usize..60) {
        let g = graph("A2");
        let path = random_path(&g, seed, len);
        let start = HeartDescriptor::standard(&g);
        let Ok((w, end)) = lift_path(&g, &path, &start) else {
            // non-generic or too coarse; nothing to check
            return Ok(());
        };
        // the Weyl image maps the start chamber to the chamber of the end charge
        let last = path.samples().last().unwrap();
        prop_assert!(end.simple_classes.iter().all(|c| last.eval(c).im > 0.0 || last.eval(c).re < 0.0));
        let (back, home) = lift_path(&g, &path.reversed(), &end).unwrap();
        prop_assert_eq!(home.word.freely_reduced(), BraidWord::empty());
        prop_assert_eq!(back.freely_reduced(), w.inverse().freely_reduced());

        let mid = len / 2;
        let first = ChargePath::new(&g, path.samples()[..=mid].to_vec()).unwrap();
        let second = ChargePath::new(&g, path.samples()[mid..].to_vec()).unwrap();
        let (w1, h1) = lift_path(&g, &first, &start).unwrap();
        let (w2, _) = lift_path(&g, &second, &h1).unwrap();
        prop_assert_eq!(w1.concat(&w2), w);
    }
}

#[test]
fn type_a_root_counts_match_closed_form() {
    for n in 1..=8 {
        let g = graph(&format!("A{n}"));
        assert_eq!(positive_roots(&g, 10_000).unwrap().len(), n * (n + 1) / 2);
    }
    for (name, count) in [("D5", 20), ("D6", 30), ("E7", 63), ("E8", 120)] {
        assert_eq!(positive_roots(&graph(name), 10_000).unwrap().len(), count);
    }
}
