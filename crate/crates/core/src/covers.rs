//! Cyclic covers of degree 2 and 3 described by reduced building data, and
//! the numerical invariants of the covering surface.
//!
//! Every supported base is a rational surface, so `χ(O_Y) = 1`,
//! `p_g(Y) = 0`, and the Picard group is torsion free: the class `L` with
//! `d·L = Σ j·D_j` is determined by the branch divisors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{canonical_class, h0, intersect, is_ample_on_minimal, DivisorClass, LatticeError, SectionCount, SurfaceModel};
use crate::num::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("unsupported cover degree {0}; only 2 and 3 are modelled")]
    UnsupportedDegree(u8),
    #[error("degree {degree} cover needs {expected} branch classes, got {found}")]
    BranchCount { degree: u8, expected: usize, found: usize },
    #[error("operation expects a degree {expected} cover, got degree {found}")]
    DegreeMismatch { expected: u8, found: u8 },
    #[error("branch class {index} lives on {found}, not on the base {base}")]
    BranchOffBase { index: usize, base: String, found: String },
    #[error("building data is not divisible: {degree}·L = {target} has no integral solution")]
    NotDivisible { degree: u8, target: String },
    #[error("stored class L = {stored} does not match the derived {derived}")]
    LineClassMismatch { stored: String, derived: String },
    #[error("smoothness of the branch locus is not assumed; the smooth-cover formulas do not apply")]
    SmoothnessNotAssumed,
    #[error("{0} unresolved nodes on the branch locus; resolve them first")]
    NodesPresent(u32),
    #[error("holomorphic Euler characteristic came out non-integral ({0}); building data is inconsistent")]
    NonIntegralChi(ExactRational),
    #[error("K^2 came out non-integral ({0}) for a smooth cover")]
    NonIntegralKSquared(ExactRational),
    #[error("canonical image needs h0(K_Y) = 0 on the base, found {0}")]
    BaseHasCanonicalSections(BigInt),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Reduced building data of a cyclic cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCoverSpec")]
pub struct CoverSpec {
    degree: u8,
    base: SurfaceModel,
    branch: Vec<DivisorClass>,
    line_class: DivisorClass,
    smoothness_assumed: bool,
    transversal_node_count: u32,
}

#[derive(Deserialize)]
struct RawCoverSpec {
    degree: u8,
    base: SurfaceModel,
    branch: Vec<DivisorClass>,
    line_class: DivisorClass,
    smoothness_assumed: bool,
    transversal_node_count: u32,
}

impl TryFrom<RawCoverSpec> for CoverSpec {
    type Error = CoverError;
    fn try_from(raw: RawCoverSpec) -> Result<Self, CoverError> {
        let spec = CoverSpec::new(raw.degree, raw.base, raw.branch)?
            .with_smoothness(raw.smoothness_assumed)
            .with_nodes(raw.transversal_node_count);
        if spec.line_class != raw.line_class {
            return Err(CoverError::LineClassMismatch {
                stored: raw.line_class.to_string(),
                derived: spec.line_class.to_string(),
            });
        }
        Ok(spec)
    }
}

impl CoverSpec {
    /// Building data with `L` derived from the branch classes. Smoothness is
    /// assumed and no nodes are declared until changed.
    pub fn new(degree: u8, base: SurfaceModel, branch: Vec<DivisorClass>) -> Result<Self, CoverError> {
        let line_class = derive_line_class(degree, &branch, &base)?;
        Ok(CoverSpec {
            degree,
            base,
            branch,
            line_class,
            smoothness_assumed: true,
            transversal_node_count: 0,
        })
    }

    pub fn double(base: SurfaceModel, branch: DivisorClass) -> Result<Self, CoverError> {
        CoverSpec::new(2, base, vec![branch])
    }

    pub fn triple(base: SurfaceModel, first: DivisorClass, second: DivisorClass) -> Result<Self, CoverError> {
        CoverSpec::new(3, base, vec![first, second])
    }

    pub fn with_smoothness(mut self, assumed: bool) -> Self {
        self.smoothness_assumed = assumed;
        self
    }

    /// Declare `count` transversal intersection points of `D_1` and `D_2`
    /// kept as nodes of the branch locus.
    pub fn with_nodes(mut self, count: u32) -> Self {
        self.transversal_node_count = count;
        self
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn base(&self) -> &SurfaceModel {
        &self.base
    }

    pub fn branch(&self) -> &[DivisorClass] {
        &self.branch
    }

    pub fn line_class(&self) -> &DivisorClass {
        &self.line_class
    }

    pub fn smoothness_assumed(&self) -> bool {
        self.smoothness_assumed
    }

    pub fn transversal_node_count(&self) -> u32 {
        self.transversal_node_count
    }

    /// Total branch divisor `Σ D_j`.
    pub fn branch_total(&self) -> DivisorClass {
        self.branch.iter().fold(DivisorClass::zero(&self.base), |acc, d| &acc + d)
    }
}

/// The unique `L` with `degree·L = Σ_j j·D_j`.
pub fn derive_line_class(degree: u8, branch: &[DivisorClass], base: &SurfaceModel) -> Result<DivisorClass, CoverError> {
    if degree != 2 && degree != 3 {
        return Err(CoverError::UnsupportedDegree(degree));
    }
    let expected = usize::from(degree) - 1;
    if branch.len() != expected {
        return Err(CoverError::BranchCount { degree, expected, found: branch.len() });
    }
    let mut weighted = DivisorClass::zero(base);
    for (j, d) in branch.iter().enumerate() {
        if d.surface() != base {
            return Err(CoverError::BranchOffBase {
                index: j + 1,
                base: base.to_string(),
                found: d.surface().to_string(),
            });
        }
        weighted = &weighted + &d.scale(j as i64 + 1);
    }
    weighted.divide_exact(degree).ok_or_else(|| CoverError::NotDivisible {
        degree,
        target: weighted.to_string(),
    })
}

/// `p_g`, or a marker that a section count behind it was only virtual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometricGenus {
    Value(#[serde(with = "crate::num::bigint")] BigInt),
    UnavailableVirtual,
}

impl fmt::Display for GeometricGenus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometricGenus::Value(v) => write!(f, "{v}"),
            GeometricGenus::UnavailableVirtual => f.write_str("unavailable (virtual)"),
        }
    }
}

impl GeometricGenus {
    fn from_counts(counts: &[SectionCount]) -> Self {
        if counts.iter().all(SectionCount::is_exact) {
            GeometricGenus::Value(counts.iter().map(|c| c.value.clone()).sum())
        } else {
            GeometricGenus::UnavailableVirtual
        }
    }
}

/// `m·K_X` is the pullback of `class` from the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalMultiple {
    pub multiple: u32,
    pub class: DivisorClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Minimality {
    NefCertified,
    AmpleCertified,
    Asserted,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub k_squared: ExactRational,
    #[serde(with = "crate::num::bigint")]
    pub chi: BigInt,
    pub p_g: GeometricGenus,
    pub canonical_multiple: CanonicalMultiple,
    pub minimality: Minimality,
    pub warnings: Vec<String>,
}

pub const IRREGULARITY_NOTE: &str = "q(X) is not computed; taken to be 0 for these constructions";
pub const EMPTY_BRANCH_WARNING: &str = "empty branch locus: unramified degenerate case";

fn half_integer(value: BigInt) -> Result<BigInt, CoverError> {
    let (q, r) = value.div_rem(&BigInt::from(2));
    if r.is_zero() {
        Ok(q)
    } else {
        Err(CoverError::NonIntegralChi(ExactRational::new(value, 2).expect("nonzero denominator")))
    }
}

fn check_smooth_formulas(spec: &CoverSpec, degree: u8) -> Result<(), CoverError> {
    if spec.degree != degree {
        return Err(CoverError::DegreeMismatch { expected: degree, found: spec.degree });
    }
    if !spec.smoothness_assumed {
        return Err(CoverError::SmoothnessNotAssumed);
    }
    if spec.transversal_node_count > 0 {
        return Err(CoverError::NodesPresent(spec.transversal_node_count));
    }
    Ok(())
}

fn base_warnings(spec: &CoverSpec) -> Vec<String> {
    let mut warnings = vec![IRREGULARITY_NOTE.to_string()];
    if spec.branch.iter().all(DivisorClass::is_zero) {
        warnings.push(EMPTY_BRANCH_WARNING.to_string());
    }
    warnings
}

/// Invariants of a smooth double cover:
/// `K_X = f*(K_Y + L)`, `K² = 2(K_Y + L)²`, `χ = 2χ(O_Y) + L(K_Y + L)/2`,
/// `p_g = p_g(Y) + h⁰(K_Y + L)`.
pub fn z2_invariants(spec: &CoverSpec) -> Result<InvariantReport, CoverError> {
    check_smooth_formulas(spec, 2)?;
    let k = canonical_class(&spec.base);
    let adjoint = &k + &spec.line_class;
    let k_squared = BigInt::from(2) * adjoint.self_intersection();
    let chi = BigInt::from(2) + half_integer(intersect(&spec.line_class, &adjoint)?)?;
    let p_g = GeometricGenus::from_counts(&[h0(&adjoint)?]);
    Ok(InvariantReport {
        k_squared: k_squared.into(),
        chi,
        p_g,
        canonical_multiple: CanonicalMultiple { multiple: 1, class: adjoint },
        minimality: Minimality::Unknown,
        warnings: base_warnings(spec),
    })
}

/// Invariants of a smooth cyclic triple cover with data `{L, D_1, D_2}`:
/// `3K_X = f*(3K_Y + 2D_1 + 2D_2)`, `3K² = (3K_Y + 2D_1 + 2D_2)²`,
/// `χ = 3χ(O_Y) + L(K_Y+L)/2 + M(K_Y+M)/2` and
/// `p_g = p_g(Y) + h⁰(K_Y+L) + h⁰(K_Y+M)` where `M = D_1 + D_2 - L`.
pub fn z3_invariants(spec: &CoverSpec) -> Result<InvariantReport, CoverError> {
    check_smooth_formulas(spec, 3)?;
    let k = canonical_class(&spec.base);
    let (d1, d2) = (&spec.branch[0], &spec.branch[1]);
    let l = &spec.line_class;
    let m = &(d1 + d2) - l;
    let tricanonical = &(&k.scale(3) + &d1.scale(2)) + &d2.scale(2);
    let k_squared = ExactRational::new(tricanonical.self_intersection(), 3).expect("nonzero denominator");
    if !k_squared.is_integer() {
        return Err(CoverError::NonIntegralKSquared(k_squared));
    }
    let kl = &k + l;
    let km = &k + &m;
    let chi = BigInt::from(3) + half_integer(intersect(l, &kl)? + intersect(&m, &km)?)?;
    let p_g = GeometricGenus::from_counts(&[h0(&kl)?, h0(&km)?]);
    Ok(InvariantReport {
        k_squared,
        chi,
        p_g,
        canonical_multiple: CanonicalMultiple { multiple: 3, class: tricanonical },
        minimality: Minimality::Unknown,
        warnings: base_warnings(spec),
    })
}

/// The canonical map of a double cover over a base with `h⁰(K_Y) = 0`
/// factors through the map given by `|K_Y + L|` on the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalImageInfo {
    /// `N = h⁰(K_Y + L) = p_g(X)`.
    pub sections: SectionCount,
    pub system: DivisorClass,
    /// `Some(true)` when `|K_Y + L|` is very ample on a minimal base.
    pub very_ample: Option<bool>,
    /// When `|K_Y + L|` embeds the base, the canonical image is the base itself.
    pub image: Option<SurfaceModel>,
    pub factors_through_base: bool,
}

pub fn canonical_image_info(spec: &CoverSpec) -> Result<CanonicalImageInfo, CoverError> {
    if spec.degree != 2 {
        return Err(CoverError::DegreeMismatch { expected: 2, found: spec.degree });
    }
    let k = canonical_class(&spec.base);
    let base_sections = h0(&k)?;
    if !base_sections.value.is_zero() {
        return Err(CoverError::BaseHasCanonicalSections(base_sections.value));
    }
    let system = &k + &spec.line_class;
    let sections = h0(&system)?;
    let very_ample = is_ample_on_minimal(&system);
    let image = match very_ample {
        Some(true) => Some(spec.base.clone()),
        _ => None,
    };
    Ok(CanonicalImageInfo {
        sections,
        system,
        very_ample,
        image,
        factors_through_base: true,
    })
}

/// `p_g ≤ χ - 1` holds for covers with `q = 0`; a report that breaks it
/// flags an inconsistency.
pub fn genus_bound_holds(report: &InvariantReport) -> Option<bool> {
    match &report.p_g {
        GeometricGenus::Value(p) => Some(p <= &(&report.chi - 1)),
        GeometricGenus::UnavailableVirtual => None,
    }
}

/// `K²` of a report as a machine integer, if it is one.
pub fn k_squared_i64(report: &InvariantReport) -> Option<i64> {
    report.k_squared.to_integer().and_then(|v| v.to_i64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{blow_up, pullback};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn dectic_double_plane() {
        let spec = CoverSpec::double(SurfaceModel::plane(), DivisorClass::plane_class(10)).unwrap();
        assert_eq!(spec.line_class(), &DivisorClass::plane_class(5));
        let r = z2_invariants(&spec).unwrap();
        assert_eq!(r.k_squared, ExactRational::integer(8));
        assert_eq!(r.chi, big(7));
        assert_eq!(r.p_g, GeometricGenus::Value(big(6)));
        assert_eq!(r.canonical_multiple.class, DivisorClass::plane_class(2));

        let image = canonical_image_info(&spec).unwrap();
        assert_eq!(image.sections.value, big(6));
        assert_eq!(image.system, DivisorClass::plane_class(2));
        assert_eq!(image.image, Some(SurfaceModel::plane()));
    }

    #[test]
    fn double_cover_of_f6_with_disconnected_branch() {
        let k = 2;
        let e = 2 * k + 2;
        let branch = DivisorClass::hirzebruch_class(e, 1, 0) + DivisorClass::hirzebruch_class(e, 5, 10 * k + 10);
        let spec = CoverSpec::double(SurfaceModel::hirzebruch(e), branch).unwrap();
        assert_eq!(spec.line_class(), &DivisorClass::hirzebruch_class(e, 3, 15));
        let r = z2_invariants(&spec).unwrap();
        assert_eq!(r.canonical_multiple.class, DivisorClass::hirzebruch_class(e, 1, 7));
        assert_eq!(r.k_squared, ExactRational::integer(16));
        assert_eq!(r.chi, big(11));
        assert_eq!(r.canonical_multiple.class.scale(2), DivisorClass::hirzebruch_class(e, 2, 14));
        let image = canonical_image_info(&spec).unwrap();
        assert_eq!(image.very_ample, Some(true));
        assert_eq!(image.image, Some(SurfaceModel::hirzebruch(e)));
    }

    #[test]
    fn empty_branch_double_cover() {
        let f0 = SurfaceModel::hirzebruch(0);
        let spec = CoverSpec::double(f0.clone(), DivisorClass::zero(&f0)).unwrap();
        assert!(spec.line_class().is_zero());
        let r = z2_invariants(&spec).unwrap();
        assert_eq!(r.k_squared, ExactRational::integer(16));
        assert_eq!(r.chi, big(2));
        assert!(r.warnings.iter().any(|w| w == EMPTY_BRANCH_WARNING));
        let image = canonical_image_info(&spec).unwrap();
        assert_eq!(image.sections.value, big(0));
        assert_eq!(image.image, None);
    }

    #[test]
    fn empty_branch_triple_cover() {
        let f0 = SurfaceModel::hirzebruch(0);
        let zero = DivisorClass::zero(&f0);
        let spec = CoverSpec::triple(f0, zero.clone(), zero).unwrap();
        assert!(spec.line_class().is_zero());
        let r = z3_invariants(&spec).unwrap();
        assert_eq!(r.canonical_multiple.class.self_intersection(), big(72));
        assert_eq!(r.k_squared, ExactRational::integer(24));
        assert_eq!(r.chi, big(3));
        assert!(r.warnings.iter().any(|w| w == EMPTY_BRANCH_WARNING));
    }

    #[test]
    fn triple_cover_line_class_on_blown_up_quadric() {
        // χ ≡ 1 (3): e = 0, branch classes 2Δ0 + χF and 2Δ0 + F minus all exceptionals.
        for chi in [4i64, 7, 10, 13] {
            let n = (2 * chi + 2) as u32;
            let s = blow_up(&SurfaceModel::hirzebruch(0), n, true).unwrap();
            let ex = DivisorClass::outer_exceptional_sum(&s).unwrap();
            let d1 = pullback(&s, &DivisorClass::hirzebruch_class(0, 2, chi)).unwrap() - ex.clone();
            let d2 = pullback(&s, &DivisorClass::hirzebruch_class(0, 2, 1)).unwrap() - ex.clone();
            let spec = CoverSpec::triple(s.clone(), d1, d2).unwrap();
            let expected = pullback(&s, &DivisorClass::hirzebruch_class(0, 2, (chi + 2) / 3)).unwrap() - ex;
            assert_eq!(spec.line_class(), &expected);
        }
    }

    #[test]
    fn derive_line_class_errors() {
        let p2 = SurfaceModel::plane();
        assert!(matches!(
            CoverSpec::double(p2.clone(), DivisorClass::plane_class(5)),
            Err(CoverError::NotDivisible { .. })
        ));
        assert!(matches!(
            derive_line_class(4, &[], &p2),
            Err(CoverError::UnsupportedDegree(4))
        ));
        assert!(matches!(
            derive_line_class(3, &[DivisorClass::plane_class(3)], &p2),
            Err(CoverError::BranchCount { .. })
        ));
        assert!(matches!(
            CoverSpec::double(p2, DivisorClass::hirzebruch_class(0, 2, 2)),
            Err(CoverError::BranchOffBase { .. })
        ));
    }

    #[test]
    fn order_of_triple_branch_matters() {
        let f1 = SurfaceModel::hirzebruch(1);
        let a = DivisorClass::hirzebruch_class(1, 2, 6);
        let b = DivisorClass::hirzebruch_class(1, 2, 3);
        let ab = CoverSpec::triple(f1.clone(), a.clone(), b.clone()).unwrap();
        assert_eq!(ab.line_class(), &DivisorClass::hirzebruch_class(1, 2, 4));
        let ba = CoverSpec::triple(f1, b, a).unwrap();
        assert_eq!(ba.line_class(), &DivisorClass::hirzebruch_class(1, 2, 5));
    }

    #[test]
    fn formula_preconditions() {
        let p2 = SurfaceModel::plane();
        let double = CoverSpec::double(p2.clone(), DivisorClass::plane_class(10)).unwrap();
        assert!(matches!(z3_invariants(&double), Err(CoverError::DegreeMismatch { .. })));
        let rough = double.clone().with_smoothness(false);
        assert_eq!(z2_invariants(&rough), Err(CoverError::SmoothnessNotAssumed));

        let triple = CoverSpec::triple(p2.clone(), DivisorClass::plane_class(3), DivisorClass::plane_class(3)).unwrap();
        assert!(matches!(z2_invariants(&triple), Err(CoverError::DegreeMismatch { .. })));
        assert!(matches!(canonical_image_info(&triple), Err(CoverError::DegreeMismatch { .. })));
        assert_eq!(z3_invariants(&triple.with_nodes(2)), Err(CoverError::NodesPresent(2)));
    }

    #[test]
    fn virtual_sections_hide_the_genus() {
        let s = blow_up(&SurfaceModel::plane(), 1, true).unwrap();
        // L = 4H - E1, so K + L = H: imposes no point, exact.
        let spec = CoverSpec::double(s.clone(), DivisorClass::from_ints(s.clone(), &[8, -2]).unwrap()).unwrap();
        let r = z2_invariants(&spec).unwrap();
        assert_eq!(r.p_g, GeometricGenus::Value(big(3)));
        // L = 5H - 2E1 gives K + L = 2H - E1, which imposes a point.
        let spec = CoverSpec::double(s.clone(), DivisorClass::from_ints(s, &[10, -4]).unwrap()).unwrap();
        let r = z2_invariants(&spec).unwrap();
        assert_eq!(r.p_g, GeometricGenus::UnavailableVirtual);
        assert_eq!(genus_bound_holds(&r), None);
    }

    #[test]
    fn spec_json_round_trip_rechecks_line_class() {
        let spec = CoverSpec::double(SurfaceModel::plane(), DivisorClass::plane_class(10)).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<CoverSpec>(&json).unwrap(), spec);
        let tampered = json.replace("\"coeffs\":[5]", "\"coeffs\":[4]");
        assert!(serde_json::from_str::<CoverSpec>(&tampered).is_err());
    }
}
