#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use zigzag_stab::chamber::ChargePath;
use zigzag_stab::complex::ComplexKG;
use zigzag_stab::coxeter::CoxeterGraph;
use zigzag_stab::linalg::{q, QMatrix};
use zigzag_stab::stability::{CentralCharge, HeartDescriptor, StabilityData};
use zigzag_stab::walk::GradedObject;

pub fn graph(name: &str) -> CoxeterGraph {
    CoxeterGraph::preset(name).unwrap()
}

pub fn p(v: usize) -> ComplexKG {
    ComplexKG::generator(v, 0)
}

/// `a -> b -> ...` with one summand per degree and unit coefficients, ending in degree 0.
pub fn chain(g: &CoxeterGraph, summands: &[(usize, i32)], coeffs: &[i64]) -> ComplexKG {
    let lo = 1 - summands.len() as i32;
    let terms = summands.iter().map(|&s| GradedObject::new(vec![s])).collect();
    let diffs = coeffs.iter().map(|&c| QMatrix::from_rows(vec![vec![q(c)]])).collect();
    ComplexKG::new(g, lo, terms, diffs).unwrap()
}

pub fn a2_example_charge() -> CentralCharge {
    CentralCharge::from_phases(&[1.0 / 36.0, 25.0 / 36.0])
}

pub fn a2_example(g: &CoxeterGraph) -> StabilityData {
    StabilityData::new(g, HeartDescriptor::standard(g), a2_example_charge()).unwrap()
}

pub fn on_heart(g: &CoxeterGraph, word: &str, z: CentralCharge) -> StabilityData {
    StabilityData::new(g, HeartDescriptor::new(g, word.parse().unwrap()).unwrap(), z).unwrap()
}

/// Quotient loop: `Z(α1)` turns by `π`, `Z(α2)` picks up `e^{0.9πi}`.
pub fn quotient_loop(g: &CoxeterGraph, n: usize) -> ChargePath {
    ChargePath::sampled(g, n, |t| {
        CentralCharge::new(vec![
            Complex64::from_polar(1.0, PI * (0.9 + t)),
            Complex64::from_polar(1.0, 0.4 * PI) + Complex64::from_polar(t, 0.9 * PI),
        ])
    })
    .unwrap()
}

/// `Z(α1)` winds once around the origin while `Z(α2) = 2i`.
pub fn encircling_loop(g: &CoxeterGraph, n: usize) -> ChargePath {
    ChargePath::sampled(g, n, |t| {
        CentralCharge::new(vec![
            Complex64::from_polar(1.0, PI * (0.5 + 2.0 * t)),
            Complex64::new(0.0, 2.0),
        ])
    })
    .unwrap()
}
