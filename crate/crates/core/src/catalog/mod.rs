//! Horikawa-line classification data and the explicit constructions built
//! on top of the lattice, cover and singularity modules.

mod certificates;
mod constructions;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covers::CoverError;
use crate::lattice::{DivisorClass, LatticeError};
use crate::scroll::CurveError;
use crate::stable::StableError;

pub use certificates::{
    ampleness_certificate, nef_certificate, AmplenessCertificate, AmplenessVerdict, BoundaryRay, ExceptionalWitness,
    NefCertificate, NefVerdict, WitnessCheck,
};
pub use constructions::{
    build_component_one, build_component_two, build_stable, component_two_curve, epsilon_family, fiber_components_over_point,
    parity_discriminator, Certificate, ConstructionRecipe, CurveFamily, EpsilonRecord, FiberComponent, ParityVerdict,
    StableConstruction,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("{what} = {value} is out of range: {reason}")]
    OutOfRange { what: &'static str, value: i64, reason: &'static str },
    #[error("(K^2, chi) = ({k_squared}, {chi}) is not admissible")]
    Inadmissible { k_squared: i64, chi: i64 },
    #[error("(K^2, chi) = ({k_squared}, {chi}) is not on the line K^2 = 2chi - 6")]
    OffHorikawaLine { k_squared: i64, chi: i64 },
    #[error("D^2 = {0} is not positive")]
    NonPositiveSquare(BigInt),
    #[error("auxiliary curve {class} has no section through the blown-up points (virtual count {count})")]
    WitnessUnavailable { class: String, count: BigInt },
    #[error("D meets {curve} with intersection number {intersection}")]
    NegativeOnCurve { curve: String, intersection: BigInt },
    #[error("exceptional coefficient of E{index} is {coefficient}, expected -1")]
    NonUniformExceptional { index: usize, coefficient: BigInt },
    #[error("candidate curve class {a}D0 + {b}F could meet D negatively and cannot be excluded")]
    CertificateUnavailable { a: BigInt, b: BigInt },
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Stable(#[from] StableError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdmissiblePair {
    pub k_squared: i64,
    pub chi: i64,
}

/// `χ ≥ 1`, `K² ≥ 1` and `2χ - 6 ≤ K² ≤ 9χ`.
pub fn admissible(k_squared: i64, chi: i64) -> bool {
    let (k2, chi) = (i128::from(k_squared), i128::from(chi));
    chi >= 1 && k2 >= 1 && 2 * chi - 6 <= k2 && k2 <= 9 * chi
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentLabel {
    I,
    II,
    Unlabeled,
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentLabel::I => "I",
            ComponentLabel::II => "II",
            ComponentLabel::Unlabeled => "unlabeled",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CanonicalImageKind {
    Hirzebruch { e: u32 },
    ProjectivePlane,
    ConeOverRationalQuartic,
}

impl fmt::Display for CanonicalImageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalImageKind::Hirzebruch { e } => write!(f, "F_{e}"),
            CanonicalImageKind::ProjectivePlane => f.write_str("P2"),
            CanonicalImageKind::ConeOverRationalQuartic => f.write_str("cone over a rational quartic in P4"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub label: ComponentLabel,
    /// Possible canonical images; empty when the classification data says nothing.
    pub canonical_images: Vec<CanonicalImageKind>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentInfo {
    pub count: u8,
    pub components: Vec<ComponentEntry>,
}

impl ComponentInfo {
    pub fn images_of(&self, label: ComponentLabel) -> &[CanonicalImageKind] {
        self.components
            .iter()
            .find(|c| c.label == label)
            .map(|c| c.canonical_images.as_slice())
            .unwrap_or(&[])
    }
}

/// Connected components of the moduli space on the line `K² = 2χ - 6`.
///
/// One component unless `K² ∈ 8Z`. Otherwise component I has canonical
/// image `F_e` with `e ∈ {0, 2, ..., K²/4}`, and component II has image
/// `F_{K²/4+2}` for `K² > 8`, or `P²` or the quartic cone for `K² = 8`.
pub fn classify(k_squared: i64, chi: i64) -> Result<ComponentInfo, CatalogError> {
    if !admissible(k_squared, chi) {
        return Err(CatalogError::Inadmissible { k_squared, chi });
    }
    if i128::from(k_squared) != 2 * i128::from(chi) - 6 {
        return Err(CatalogError::OffHorikawaLine { k_squared, chi });
    }
    if k_squared % 8 != 0 {
        return Ok(ComponentInfo {
            count: 1,
            components: vec![ComponentEntry { label: ComponentLabel::Unlabeled, canonical_images: vec![] }],
        });
    }
    let quarter = (k_squared / 4) as u32;
    let first = (0..=quarter).step_by(2).map(|e| CanonicalImageKind::Hirzebruch { e }).collect();
    let second = if k_squared > 8 {
        vec![CanonicalImageKind::Hirzebruch { e: quarter + 2 }]
    } else {
        vec![CanonicalImageKind::ProjectivePlane, CanonicalImageKind::ConeOverRationalQuartic]
    };
    Ok(ComponentInfo {
        count: 2,
        components: vec![
            ComponentEntry { label: ComponentLabel::I, canonical_images: first },
            ComponentEntry { label: ComponentLabel::II, canonical_images: second },
        ],
    })
}

/// `(e, α, β)` for the triple-cover constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Parameters {
    pub e: u32,
    pub alpha: i64,
    pub beta: i64,
}

impl Parameters {
    /// `2α + 2β - 4e`: transversal intersections of `D_1 ∈ |2Δ0 + αF|` and `D_2 ∈ |2Δ0 + βF|`.
    pub fn intersection_count(&self) -> i64 {
        2 * self.alpha + 2 * self.beta - 4 * i64::from(self.e)
    }
}

pub fn pick_parameters(chi: i64) -> Result<Parameters, CatalogError> {
    if chi < 3 {
        return Err(CatalogError::OutOfRange { what: "chi", value: chi, reason: "parameters are defined for chi >= 3" });
    }
    let (e, beta) = match chi.rem_euclid(3) {
        0 => (1, 3),
        1 => (0, 1),
        _ => (2, 5),
    };
    Ok(Parameters { e, alpha: chi, beta })
}

/// Declared geometric assumptions; switching one off makes the constructions
/// that rely on it fail instead of silently proceeding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumptions {
    pub general_position: bool,
    pub smoothness_assumed: bool,
}

impl Default for Assumptions {
    fn default() -> Self {
        Assumptions { general_position: true, smoothness_assumed: true }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildOptions {
    pub assumptions: Assumptions,
    /// Harness self-test: corrupt one coefficient inside a pipeline.
    pub perturbation: Option<Perturbation>,
}

impl BuildOptions {
    pub fn with_perturbation(perturbation: Perturbation) -> Self {
        BuildOptions { perturbation: Some(perturbation), ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    ComponentOne,
    ComponentTwo,
    Stable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerturbedClass {
    FirstBranch,
    SecondBranch,
    CertificateDivisor,
}

/// Which basis coefficient to corrupt.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientSlot {
    /// `H` on the plane, `Δ0` on `F_e`.
    Leading,
    Fiber,
    /// `E_j`, 1-based.
    Exceptional(usize),
}

/// A single-coefficient fault: the coefficient is negated, or set to 1 if it was 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perturbation {
    pub pipeline: Pipeline,
    pub class: PerturbedClass,
    pub slot: CoefficientSlot,
}

impl Perturbation {
    pub fn new(pipeline: Pipeline, class: PerturbedClass, slot: CoefficientSlot) -> Self {
        Perturbation { pipeline, class, slot }
    }

    fn index_on(&self, class: &DivisorClass) -> Option<usize> {
        let minimal_rank = class.surface().minimal_model().picard_rank();
        let index = match self.slot {
            CoefficientSlot::Leading => 0,
            CoefficientSlot::Fiber if minimal_rank == 2 => 1,
            CoefficientSlot::Fiber => return None,
            CoefficientSlot::Exceptional(j) if j >= 1 => minimal_rank + j - 1,
            CoefficientSlot::Exceptional(_) => return None,
        };
        (index < class.coeffs().len()).then_some(index)
    }

    /// Apply to `class` if the fault targets this pipeline and class.
    pub fn apply(&self, pipeline: Pipeline, target: PerturbedClass, class: DivisorClass) -> DivisorClass {
        if self.pipeline != pipeline || self.class != target {
            return class;
        }
        match self.index_on(&class) {
            Some(i) => {
                let old = class.coeff(i).clone();
                let new = if old == BigInt::from(0) { BigInt::from(1) } else { -old };
                class.with_coeff(i, new).expect("index checked")
            }
            None => class,
        }
    }
}

pub(crate) fn perturb(opts: &BuildOptions, pipeline: Pipeline, target: PerturbedClass, class: DivisorClass) -> DivisorClass {
    match &opts.perturbation {
        Some(p) => p.apply(pipeline, target, class),
        None => class,
    }
}

impl fmt::Display for Perturbation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pipeline = match self.pipeline {
            Pipeline::ComponentOne => "component-one",
            Pipeline::ComponentTwo => "component-two",
            Pipeline::Stable => "stable",
        };
        let class = match self.class {
            PerturbedClass::FirstBranch => "first",
            PerturbedClass::SecondBranch => "second",
            PerturbedClass::CertificateDivisor => "certificate",
        };
        match self.slot {
            CoefficientSlot::Leading => write!(f, "{pipeline}:{class}:leading"),
            CoefficientSlot::Fiber => write!(f, "{pipeline}:{class}:fiber"),
            CoefficientSlot::Exceptional(j) => write!(f, "{pipeline}:{class}:e{j}"),
        }
    }
}

impl FromStr for Perturbation {
    type Err = String;

    /// `pipeline:class:slot`, e.g. `stable:first:e3` or `component-two:first:fiber`.
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [pipeline, class, slot] = parts.as_slice() else {
            return Err(format!("expected pipeline:class:slot, got {s:?}"));
        };
        let pipeline = match *pipeline {
            "component-one" | "component-I" => Pipeline::ComponentOne,
            "component-two" | "component-II" => Pipeline::ComponentTwo,
            "stable" => Pipeline::Stable,
            other => return Err(format!("unknown pipeline {other:?}")),
        };
        let class = match *class {
            "first" => PerturbedClass::FirstBranch,
            "second" => PerturbedClass::SecondBranch,
            "certificate" => PerturbedClass::CertificateDivisor,
            other => return Err(format!("unknown class {other:?}")),
        };
        let slot = match *slot {
            "leading" => CoefficientSlot::Leading,
            "fiber" => CoefficientSlot::Fiber,
            other => match other.strip_prefix('e').and_then(|j| j.parse::<usize>().ok()) {
                Some(j) if j >= 1 => CoefficientSlot::Exceptional(j),
                _ => return Err(format!("unknown coefficient slot {other:?}")),
            },
        };
        Ok(Perturbation { pipeline, class, slot })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(admissible(8, 7));
        assert!(!admissible(0, 1));
        assert!(!admissible(1, 0));
        assert!(!admissible(10, 1));
        assert!(admissible(9, 1));
        for chi in 4..=100 {
            assert!(admissible(2 * chi - 6, chi));
            assert!(!admissible(2 * chi - 7, chi));
        }
    }

    #[test]
    fn classification_table() {
        let single = classify(10, 8).unwrap();
        assert_eq!(single.count, 1);

        let two = classify(8, 7).unwrap();
        assert_eq!(two.count, 2);
        assert_eq!(
            two.images_of(ComponentLabel::II),
            &[CanonicalImageKind::ProjectivePlane, CanonicalImageKind::ConeOverRationalQuartic]
        );
        assert_eq!(
            two.images_of(ComponentLabel::I),
            &[CanonicalImageKind::Hirzebruch { e: 0 }, CanonicalImageKind::Hirzebruch { e: 2 }]
        );

        let sixteen = classify(16, 11).unwrap();
        assert_eq!(sixteen.count, 2);
        assert_eq!(sixteen.images_of(ComponentLabel::II), &[CanonicalImageKind::Hirzebruch { e: 6 }]);

        assert_eq!(classify(9, 7), Err(CatalogError::OffHorikawaLine { k_squared: 9, chi: 7 }));
        assert_eq!(classify(0, 3), Err(CatalogError::Inadmissible { k_squared: 0, chi: 3 }));
    }

    #[test]
    fn parameter_table() {
        assert_eq!(pick_parameters(6).unwrap(), Parameters { e: 1, alpha: 6, beta: 3 });
        assert_eq!(pick_parameters(7).unwrap(), Parameters { e: 0, alpha: 7, beta: 1 });
        assert_eq!(pick_parameters(5).unwrap(), Parameters { e: 2, alpha: 5, beta: 5 });
        assert!(pick_parameters(2).is_err());
        for chi in 3..=100 {
            let p = pick_parameters(chi).unwrap();
            assert_eq!((p.alpha + 2 * p.beta) % 3, 0, "chi = {chi}");
            assert_eq!(p.alpha + p.beta - 2 * i64::from(p.e) - 1, chi);
        }
    }

    #[test]
    fn perturbation_strings() {
        for s in ["stable:first:e3", "component-one:second:fiber", "component-two:first:leading", "stable:certificate:e1"] {
            let p: Perturbation = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("stable:first".parse::<Perturbation>().is_err());
        assert!("stable:first:e0".parse::<Perturbation>().is_err());
        assert!("nowhere:first:leading".parse::<Perturbation>().is_err());
    }

    #[test]
    fn perturbation_flips_one_coefficient() {
        let p = Perturbation::new(Pipeline::Stable, PerturbedClass::FirstBranch, CoefficientSlot::Fiber);
        let d = DivisorClass::hirzebruch_class(1, 2, 6);
        assert_eq!(p.apply(Pipeline::Stable, PerturbedClass::FirstBranch, d.clone()), DivisorClass::hirzebruch_class(1, 2, -6));
        assert_eq!(p.apply(Pipeline::ComponentOne, PerturbedClass::FirstBranch, d.clone()), d);
        let zero = DivisorClass::hirzebruch_class(1, 2, 0);
        assert_eq!(p.apply(Pipeline::Stable, PerturbedClass::FirstBranch, zero), DivisorClass::hirzebruch_class(1, 2, 1));
    }
}
