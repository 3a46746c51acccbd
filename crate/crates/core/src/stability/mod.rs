//! Central charges, stability functions on braid-twisted linear hearts,
//! semistability, Harder-Narasimhan filtrations and slicing comparisons.
//!
//! Objects of a heart `β(H_lin)` are handled by transporting them back with
//! `β^{-1}` and working in `H_lin` against the transported charge
//! `Z_β(v) = Z(β_* v)`, where `β_*` is the Weyl image of `β`.

mod catalogue;
mod hn;

pub use catalogue::{
    heart_indecomposables, is_semistable, subobject_test, Catalogue, CatalogueEntry, Semistability,
};
pub use hn::{
    deformation_ok, hn_filtration, phi_bounds, slicing_distance_lb, HNFiltration, HnPiece,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::braid::{apply_word, BraidWord};
use crate::complex::{translate, ComplexKG};
use crate::coxeter::{mat_apply, CoxeterGraph, IntMatrix, RootVector};
use crate::error::{Error, Result};
use crate::heart::single_layer;
use crate::k0::root_class;

/// Absolute tolerance for sign tests on real and imaginary parts.
pub const SIGN_TOL: f64 = 1e-9;
/// Charges smaller than this are treated as zero.
pub const ZERO_TOL: f64 = 1e-12;
/// Tolerance for comparing phases.
pub const PHASE_TOL: f64 = 1e-9;

/// `Z(α_i)` for each vertex, extended linearly.
#[derive(Clone, PartialEq, Debug)]
pub struct CentralCharge {
    values: Vec<Complex64>,
}

impl CentralCharge {
    pub fn new(values: Vec<Complex64>) -> Self {
        CentralCharge { values }
    }

    /// Charge with `Z(α_i) = e^{iπ θ_i}`.
    pub fn from_phases(phases: &[f64]) -> Self {
        Self::new(
            phases
                .iter()
                .map(|&t| Complex64::from_polar(1.0, std::f64::consts::PI * t))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn eval(&self, v: &RootVector) -> Complex64 {
        self.values
            .iter()
            .zip(&v.0)
            .map(|(z, &c)| z * c as f64)
            .sum()
    }

    pub fn eval_complex(&self, g: &CoxeterGraph, c: &ComplexKG) -> Complex64 {
        self.eval(&root_class(g, c))
    }

    /// `v -> Z(M v)`.
    pub fn pullback(&self, m: &IntMatrix) -> CentralCharge {
        let n = self.values.len();
        CentralCharge::new(
            (0..n)
                .map(|i| self.eval(&mat_apply(m, &RootVector::simple(n, i))))
                .collect(),
        )
    }

    pub fn lerp(&self, other: &CentralCharge, t: f64) -> CentralCharge {
        CentralCharge::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * (1.0 - t) + b * t)
                .collect(),
        )
    }

    pub fn max_distance(&self, other: &CentralCharge) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.values
                .iter()
                .map(|z| serde_json::json!([crate::json::round15(z.re), crate::json::round15(z.im)]))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: Vec<(f64, f64)> = serde_json::from_value(v.clone())?;
        Ok(Self::new(raw.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()))
    }

    pub fn check(&self, g: &CoxeterGraph) -> Result<()> {
        if self.values.len() == g.n() {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: g.n(),
                got: self.values.len(),
            })
        }
    }
}

/// The heart `β(H_lin)`.
#[derive(Clone, PartialEq, Debug)]
pub struct HeartDescriptor {
    pub word: BraidWord,
    pub simple_classes: Vec<RootVector>,
    weyl: IntMatrix,
}

impl HeartDescriptor {
    pub fn new(g: &CoxeterGraph, word: BraidWord) -> Result<Self> {
        word.check(g)?;
        let weyl = word.weyl_image(g)?.matrix().clone();
        let n = g.n();
        let simple_classes = (0..n)
            .map(|i| mat_apply(&weyl, &RootVector::simple(n, i)))
            .collect();
        Ok(HeartDescriptor {
            word,
            simple_classes,
            weyl,
        })
    }

    pub fn standard(g: &CoxeterGraph) -> Self {
        Self::new(g, BraidWord::empty()).expect("empty word is valid")
    }

    /// `β_*` on the root lattice.
    pub fn weyl_matrix(&self) -> &IntMatrix {
        &self.weyl
    }

    /// Recompute the simple classes from the categorical action.
    pub fn verify(&self, g: &CoxeterGraph) -> Result<bool> {
        for (i, c) in self.simple_classes.iter().enumerate() {
            let img = apply_word(g, &self.word, &ComplexKG::generator(i, 0))?;
            if &root_class(g, &img) != c {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Move an object of this heart into the identity frame.
    pub fn to_standard(&self, g: &CoxeterGraph, c: &ComplexKG) -> Result<ComplexKG> {
        apply_word(g, &self.word.inverse(), c)
    }

    pub fn from_standard(&self, g: &CoxeterGraph, c: &ComplexKG) -> Result<ComplexKG> {
        apply_word(g, &self.word, c)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct StabilityData {
    pub heart: HeartDescriptor,
    pub z: CentralCharge,
}

#[derive(Serialize, Deserialize)]
struct StabilityJson {
    word: BraidWord,
    charge: Vec<(f64, f64)>,
}

impl StabilityData {
    pub fn new(g: &CoxeterGraph, heart: HeartDescriptor, z: CentralCharge) -> Result<Self> {
        z.check(g)?;
        Ok(StabilityData { heart, z })
    }

    /// The charge seen from the identity frame: `v -> Z(β_* v)`.
    pub fn transported(&self) -> CentralCharge {
        self.z.pullback(self.heart.weyl_matrix())
    }

    pub fn from_json(g: &CoxeterGraph, text: &str) -> Result<Self> {
        let raw: StabilityJson = serde_json::from_str(text)?;
        let heart = HeartDescriptor::new(g, raw.word)?;
        let z = CentralCharge::new(
            raw.charge
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        );
        Self::new(g, heart, z)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "word": self.heart.word.to_string(),
            "charge": self.z.to_json(),
        })
    }
}

/// Whether `z` lies in the strict upper half plane or on the negative reals.
pub fn in_stability_region(z: Complex64) -> Result<bool> {
    if z.norm() < ZERO_TOL {
        return Err(Error::DegenerateCharge(format!("charge {z} is zero")));
    }
    Ok(z.im > SIGN_TOL || (z.im.abs() <= SIGN_TOL && z.re < 0.0))
}

pub fn is_stability_function(sd: &StabilityData) -> Result<bool> {
    for c in &sd.heart.simple_classes {
        if !in_stability_region(sd.z.eval(c))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_stability(sd: &StabilityData) -> Result<()> {
    if is_stability_function(sd)? {
        Ok(())
    } else {
        Err(Error::InvalidArgument(
            "charge is not a stability function on the heart".into(),
        ))
    }
}

/// Phase in `(0, 1]` of a charge of a heart object.
pub fn heart_phase(z: Complex64) -> Result<f64> {
    if z.norm() < ZERO_TOL {
        return Err(Error::DegenerateCharge(format!("charge {z} is zero")));
    }
    if z.im.abs() <= SIGN_TOL {
        return if z.re < 0.0 {
            Ok(1.0)
        } else {
            Err(Error::DegenerateCharge(format!(
                "charge {z} lies on the positive real axis"
            )))
        };
    }
    if z.im < 0.0 {
        return Err(Error::DegenerateCharge(format!(
            "charge {z} lies in the lower half plane"
        )));
    }
    Ok(z.im.atan2(z.re) / std::f64::consts::PI)
}

/// Place an identity-frame object into `H_lin` and report its shift `k`.
pub(crate) fn standard_member(g: &CoxeterGraph, x: &ComplexKG) -> Result<(ComplexKG, i32)> {
    if x.is_zero() {
        return Err(Error::DegenerateCharge("the zero object has no phase".into()));
    }
    let k = single_layer(g, x)
        .ok_or_else(|| Error::NotInHeart(format!("{x:?} spans several shifted hearts")))?;
    Ok((crate::complex::minimal_model(g, &translate(x, -k, 0)), k))
}

/// `φ(E)` for an object of a shifted copy of the heart.
pub fn phase(g: &CoxeterGraph, sd: &StabilityData, e: &ComplexKG) -> Result<f64> {
    require_stability(sd)?;
    let x = sd.heart.to_standard(g, e)?;
    let (l, k) = standard_member(g, &x)?;
    let z = sd.transported().eval_complex(g, &l);
    Ok(heart_phase(z)? + k as f64)
}
