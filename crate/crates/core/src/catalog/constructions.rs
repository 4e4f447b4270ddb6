//! The explicit constructions: smooth triple covers for the first component,
//! double covers of `P²` and `F_{2k+2}` for the second, and the singular
//! triple covers whose contracted curves give stable surfaces off the line.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::certificates::tricanonical_target;
use super::{
    ampleness_certificate, classify, nef_certificate, perturb, pick_parameters, AdmissiblePair, AmplenessCertificate,
    BuildOptions, CanonicalImageKind, CatalogError, ComponentLabel, NefCertificate, NefVerdict, Parameters,
    PerturbedClass, Pipeline,
};
use crate::covers::{
    canonical_image_info, z2_invariants, z3_invariants, CanonicalImageInfo, CoverSpec, GeometricGenus, InvariantReport,
    Minimality,
};
use crate::lattice::{blow_up, intersect, is_ample_on_minimal, pullback, DivisorClass, SurfaceModel};
use crate::num::ExactRational;
use crate::scroll::{
    classify_germ, germ_shape, invariance_check, scroll_class, AdeLabel, CurveAction, CurveEquation, GermShape,
    LocalPolynomial, PlaneCurve, ScrollCurve, ScrollMonomial,
};
use crate::stable::{contract_minus3, h0_2k, resolve_node_bookkeeping, NodeResolution, SingularityLedger, StableSurfaceRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityVerdict {
    /// An odd self-intersection rules out the second component.
    ComponentOne,
    Inconclusive,
}

/// Surfaces in the second component have even intersection form.
pub fn parity_discriminator(self_intersections: &[i64]) -> ParityVerdict {
    if self_intersections.iter().any(|v| v.rem_euclid(2) == 1) {
        ParityVerdict::ComponentOne
    } else {
        ParityVerdict::Inconclusive
    }
}

/// One piece of evidence attached to a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    ClassIdentity { name: String, computed: DivisorClass, expected: DivisorClass, holds: bool },
    NumberIdentity {
        name: String,
        computed: ExactRational,
        expected: ExactRational,
        holds: bool,
    },
    Nef(NefCertificate),
    Ampleness(AmplenessCertificate),
    Invariance { curve: CurveEquation, action: CurveAction, holds: bool },
    Germ { point: String, local: LocalPolynomial, shape: GermShape, label: Option<AdeLabel> },
    CanonicalImage { info: CanonicalImageInfo, expected: Vec<CanonicalImageKind>, holds: bool },
    Parity { self_intersections: Vec<i64>, verdict: ParityVerdict },
}

impl Certificate {
    fn class_identity(name: &str, computed: DivisorClass, expected: DivisorClass) -> Self {
        let holds = computed == expected;
        Certificate::ClassIdentity { name: name.into(), computed, expected, holds }
    }

    fn number_identity(name: &str, computed: impl Into<ExactRational>, expected: impl Into<ExactRational>) -> Self {
        let (computed, expected) = (computed.into(), expected.into());
        let holds = computed == expected;
        Certificate::NumberIdentity { name: name.into(), computed, expected, holds }
    }

    /// Whether the evidence supports the construction. Germs, parity data
    /// and asserted nefness are informational and always hold.
    pub fn holds(&self) -> bool {
        match self {
            Certificate::ClassIdentity { holds, .. }
            | Certificate::NumberIdentity { holds, .. }
            | Certificate::Invariance { holds, .. }
            | Certificate::CanonicalImage { holds, .. } => *holds,
            Certificate::Nef(_) | Certificate::Ampleness(_) | Certificate::Germ { .. } | Certificate::Parity { .. } => true,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Certificate::ClassIdentity { name, .. } | Certificate::NumberIdentity { name, .. } => name.clone(),
            Certificate::Nef(_) => "nef".into(),
            Certificate::Ampleness(_) => "ampleness".into(),
            Certificate::Invariance { .. } => "invariance".into(),
            Certificate::Germ { point, .. } => format!("germ at {point}"),
            Certificate::CanonicalImage { .. } => "canonical image".into(),
            Certificate::Parity { .. } => "parity".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRecipe {
    pub pipeline: Pipeline,
    pub target: AdmissiblePair,
    pub parameters: Option<Parameters>,
    pub cover: CoverSpec,
    pub report: InvariantReport,
    pub component_claim: ComponentLabel,
    pub ledger: SingularityLedger,
    pub certificates: Vec<Certificate>,
    pub notes: Vec<String>,
}

impl ConstructionRecipe {
    pub fn all_hold(&self) -> bool {
        self.certificates.iter().all(Certificate::holds)
    }

    pub fn failed_certificates(&self) -> Vec<String> {
        self.certificates.iter().filter(|c| !c.holds()).map(Certificate::name).collect()
    }
}

fn out_of_range(what: &'static str, value: i64, reason: &'static str) -> CatalogError {
    CatalogError::OutOfRange { what, value, reason }
}

fn point_count(n: i64) -> Result<u32, CatalogError> {
    u32::try_from(n).map_err(|_| out_of_range("blown-up points", n, "must fit in 32 bits"))
}

/// `q*(2Δ0 + αF) - ΣE` and `q*(2Δ0 + βF) - ΣE`.
fn branch_pair(params: &Parameters, surface: &SurfaceModel) -> Result<(DivisorClass, DivisorClass), CatalogError> {
    let ex = DivisorClass::outer_exceptional_sum(surface)?;
    let d1 = &pullback(surface, &DivisorClass::hirzebruch_class(params.e, 2, params.alpha))? - &ex;
    let d2 = &pullback(surface, &DivisorClass::hirzebruch_class(params.e, 2, params.beta))? - &ex;
    Ok((d1, d2))
}

/// A fiber component over a blown-up point, seen on the triple cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberComponent {
    pub class: DivisorClass,
    pub base_self_intersection: i64,
    pub branch_intersections: Vec<i64>,
    /// The preimage is irreducible when the curve meets the branch locus.
    pub irreducible_preimage: bool,
    /// Self-intersection of one component of the preimage.
    pub cover_self_intersection: i64,
}

/// `q*F - E_j` and `E_j` with their preimages on the cover.
pub fn fiber_components_over_point(cover: &CoverSpec, j: usize) -> Result<Vec<FiberComponent>, CatalogError> {
    let base = cover.base();
    let minimal_rank = base.minimal_model().picard_rank();
    if minimal_rank != 2 || j == 0 || j > base.exceptional_count() {
        return Err(out_of_range("fiber index", j as i64, "needs a blown-up point of a Hirzebruch surface"));
    }
    let ej = DivisorClass::basis_element(base, 1 + j)?;
    let fiber = DivisorClass::basis_element(base, 1)?;
    let degree = i64::from(cover.degree());
    let mut out = Vec::new();
    for class in [&fiber - &ej, ej] {
        let square = class.self_intersection().to_i64().expect("small");
        let branch_intersections: Vec<i64> = cover
            .branch()
            .iter()
            .map(|d| intersect(&class, d).map(|v| v.to_i64().expect("small")))
            .collect::<Result<_, _>>()?;
        let irreducible_preimage = branch_intersections.iter().any(|v| *v != 0);
        let cover_self_intersection = if irreducible_preimage { degree * square } else { square };
        out.push(FiberComponent {
            class,
            base_self_intersection: square,
            branch_intersections,
            irreducible_preimage,
            cover_self_intersection,
        });
    }
    Ok(out)
}

/// Smooth cyclic triple cover of `Bl_N(F_e)`, `N = 2α + 2β - 4e`, with
/// `(K², χ) = (2χ - 6, χ)`.
pub fn build_component_one(chi: i64, opts: &BuildOptions) -> Result<ConstructionRecipe, CatalogError> {
    if chi < 4 {
        return Err(out_of_range("chi", chi, "component I constructions need chi >= 4"));
    }
    let params = pick_parameters(chi)?;
    let n = point_count(params.intersection_count())?;
    let base = blow_up(&SurfaceModel::hirzebruch(params.e), n, opts.assumptions.general_position)?;
    let (d1, d2) = branch_pair(&params, &base)?;
    let d1 = perturb(opts, Pipeline::ComponentOne, PerturbedClass::FirstBranch, d1);
    let d2 = perturb(opts, Pipeline::ComponentOne, PerturbedClass::SecondBranch, d2);
    let cover = CoverSpec::triple(base.clone(), d1, d2)?.with_smoothness(opts.assumptions.smoothness_assumed);
    let mut report = z3_invariants(&cover)?;
    let target = AdmissiblePair { k_squared: 2 * chi - 6, chi };

    let mut certificates = vec![
        Certificate::number_identity("K^2", report.k_squared.clone(), target.k_squared),
        Certificate::number_identity("chi", report.chi.clone(), chi),
    ];
    if let GeometricGenus::Value(p) = &report.p_g {
        certificates.push(Certificate::number_identity("p_g", p.clone(), chi - 1));
    }

    // 3K = (α + 2β - 3e - 6)·q*F + D1~, built from the parameters alone.
    let (clean_d1, _) = branch_pair(&params, &base)?;
    let shift = params.alpha + 2 * params.beta - 3 * i64::from(params.e) - 6;
    let expected = &pullback(&base, &DivisorClass::hirzebruch_class(params.e, 0, shift))? + &clean_d1;
    certificates.push(Certificate::class_identity("tricanonical", report.canonical_multiple.class.clone(), expected));
    certificates.push(Certificate::class_identity(
        "tricanonical closed form",
        report.canonical_multiple.class.clone(),
        tricanonical_target(&params, &base)?,
    ));

    let nef = nef_certificate(params, opts)?;
    certificates.push(Certificate::class_identity(
        "nef divisor is 3K",
        nef.divisor.clone(),
        report.canonical_multiple.class.clone(),
    ));
    report.minimality = match nef.verdict {
        NefVerdict::Certified => Minimality::NefCertified,
        NefVerdict::Asserted { .. } => Minimality::Asserted,
    };
    let mut notes = Vec::new();
    if let NefVerdict::Asserted { gap } = &nef.verdict {
        notes.push(format!("nefness of K is asserted, not certified: {gap}"));
    }
    certificates.push(Certificate::Nef(nef));

    let info = classify(target.k_squared, chi)?;
    let component_claim = if info.count == 2 {
        let fibers = fiber_components_over_point(&cover, 1)?;
        let squares: Vec<i64> = fibers.iter().map(|f| f.cover_self_intersection).collect();
        let verdict = parity_discriminator(&squares);
        certificates.push(Certificate::Parity { self_intersections: squares, verdict });
        if target.k_squared == 8 {
            notes.push("K^2 = 8: the canonical map also separates the two components; only parity is checked".into());
        }
        match verdict {
            ParityVerdict::ComponentOne => ComponentLabel::I,
            ParityVerdict::Inconclusive => ComponentLabel::Unlabeled,
        }
    } else {
        ComponentLabel::Unlabeled
    };
    notes.push("the genus 2 fibration is taken from the fiber structure of F_e, not recomputed".into());

    Ok(ConstructionRecipe {
        pipeline: Pipeline::ComponentOne,
        target,
        parameters: Some(params),
        cover,
        report,
        component_claim,
        ledger: SingularityLedger::default(),
        certificates,
        notes,
    })
}

/// Branch curves for the second component, chosen by `k mod 3` so that the
/// order 3 automorphism `t1 ↦ ζ·t1` preserves them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveFamily {
    /// `X0^10 + X1^10 + X2^10` on `P²`.
    Fermat,
    /// `x1^5 + x2^5·t1^{10k+10} + x2^5·t2^{10k+10}`.
    ResidueTwo,
    /// `x1^5 + x2^5·t1^{10k+9}·t2 + x2^5·t2^{10k+10}`.
    ResidueZero,
    /// `x1^5 + x2^5·t1^{10k+8}·t2^2 + x2^5·t2^{10k+10}`.
    ResidueOne,
}

impl CurveFamily {
    pub fn for_k(k: u64) -> Self {
        match (k, k % 3) {
            (1, _) => CurveFamily::Fermat,
            (_, 2) => CurveFamily::ResidueTwo,
            (_, 0) => CurveFamily::ResidueZero,
            _ => CurveFamily::ResidueOne,
        }
    }

    /// The family member of class `5Δ0 + (10k+10)F` on `F_{2k+2}` (or the Fermat curve).
    pub fn curve(self, k: u64) -> CurveEquation {
        let top = 10 * k + 10;
        let e = u32::try_from(2 * k + 2).expect("k fits");
        let t1_t2 = match self {
            CurveFamily::Fermat => {
                return CurveEquation::Plane(PlaneCurve::new([[10, 0, 0], [0, 10, 0], [0, 0, 10]]));
            }
            CurveFamily::ResidueTwo => (top, 0),
            CurveFamily::ResidueZero => (top - 1, 1),
            CurveFamily::ResidueOne => (top - 2, 2),
        };
        CurveEquation::Scroll(ScrollCurve::new(
            e,
            [
                ScrollMonomial::new(0, 0, 5, 0),
                ScrollMonomial::new(t1_t2.0, t1_t2.1, 0, 5),
                ScrollMonomial::new(0, top, 0, 5),
            ],
        ))
    }
}

pub fn component_two_curve(k: u64) -> CurveEquation {
    CurveFamily::for_k(k).curve(k)
}

/// Double cover of `P²` (k = 1) or `F_{2k+2}` with `(K², χ) = (8k, 4k + 3)`.
pub fn build_component_two(k: i64, opts: &BuildOptions) -> Result<ConstructionRecipe, CatalogError> {
    if k < 1 {
        return Err(out_of_range("k", k, "component II constructions need k >= 1"));
    }
    if k > i64::from(u32::MAX / 4) {
        return Err(out_of_range("k", k, "F_{2k+2} index must fit in 32 bits"));
    }
    let ku = k as u64;
    let target = AdmissiblePair { k_squared: 8 * k, chi: 4 * k + 3 };
    let curve = component_two_curve(ku);
    let mut certificates = Vec::new();
    let mut ledger = SingularityLedger::default();

    let (base, branch, bicanonical_expected, action) = match &curve {
        CurveEquation::Plane(plane) => {
            let degree = plane.degree()?;
            let class = DivisorClass::plane_class(degree);
            certificates.push(Certificate::class_identity("branch curve class", class.clone(), DivisorClass::plane_class(10)));
            (SurfaceModel::plane(), class, DivisorClass::plane_class(4), CurveAction::PermutePlaneCoordinates)
        }
        CurveEquation::Scroll(scroll) => {
            let e = scroll.e;
            let section = ScrollCurve::new(e, [ScrollMonomial::new(0, 0, 0, 1)]);
            let quintic = scroll_class(scroll)?;
            certificates.push(Certificate::class_identity(
                "branch curve class",
                quintic.clone(),
                DivisorClass::hirzebruch_class(e, 5, 10 * k + 10),
            ));
            certificates.push(Certificate::Invariance {
                curve: CurveEquation::Scroll(section.clone()),
                action: CurveAction::ScaleT1ByPrimitiveRoot,
                holds: invariance_check(&CurveEquation::Scroll(section.clone()), CurveAction::ScaleT1ByPrimitiveRoot),
            });
            let local = scroll.local_at_t1_x2_chart();
            let shape = germ_shape(&local);
            let label = match shape {
                GermShape::SquarePlusPowers { m, p } => Some(classify_germ(m, p)?),
                _ => None,
            };
            if label.is_some() {
                ledger.canonical_count += 1;
            }
            certificates.push(Certificate::Germ { point: "(1:0; 0:1)".into(), local, shape, label });
            let branch = &scroll_class(&section)? + &quintic;
            (SurfaceModel::hirzebruch(e), branch, DivisorClass::hirzebruch_class(e, 2, 6 * k + 2), CurveAction::ScaleT1ByPrimitiveRoot)
        }
    };
    certificates.push(Certificate::Invariance { curve: curve.clone(), action, holds: invariance_check(&curve, action) });

    let branch = perturb(opts, Pipeline::ComponentTwo, PerturbedClass::FirstBranch, branch);
    let cover = CoverSpec::double(base, branch)?.with_smoothness(opts.assumptions.smoothness_assumed);
    let mut report = z2_invariants(&cover)?;
    certificates.push(Certificate::number_identity("K^2", report.k_squared.clone(), target.k_squared));
    certificates.push(Certificate::number_identity("chi", report.chi.clone(), target.chi));
    if let GeometricGenus::Value(p) = &report.p_g {
        certificates.push(Certificate::number_identity("p_g", p.clone(), 4 * k + 2));
    }
    certificates.push(Certificate::class_identity(
        "bicanonical",
        report.canonical_multiple.class.scale(2),
        bicanonical_expected,
    ));

    // K is the pullback of K_Y + L under a finite map, so ample when K_Y + L is.
    if is_ample_on_minimal(&report.canonical_multiple.class) == Some(true) {
        report.minimality = Minimality::AmpleCertified;
    }

    let info = canonical_image_info(&cover)?;
    let expected = classify(target.k_squared, target.chi)?.images_of(ComponentLabel::II).to_vec();
    let image_kind = match &info.image {
        Some(SurfaceModel::ProjectivePlane) => Some(CanonicalImageKind::ProjectivePlane),
        Some(SurfaceModel::Hirzebruch { e }) => Some(CanonicalImageKind::Hirzebruch { e: *e }),
        _ => None,
    };
    let holds = image_kind.is_some_and(|kind| expected.contains(&kind));
    certificates.push(Certificate::CanonicalImage { info, expected, holds });

    let mut notes = Vec::new();
    if ledger.canonical_count > 0 {
        notes.push("the branch curve has an ADE point; the double cover carries a canonical singularity there".into());
    }
    Ok(ConstructionRecipe {
        pipeline: Pipeline::ComponentTwo,
        target,
        parameters: None,
        cover,
        report,
        component_claim: if holds { ComponentLabel::II } else { ComponentLabel::Unlabeled },
        ledger,
        certificates,
        notes,
    })
}

/// The singular triple cover with three `1/3(1,1)` points and its smooth resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableConstruction {
    pub record: StableSurfaceRecord,
    #[serde(with = "crate::num::bigint")]
    pub bicanonical_sections: BigInt,
    pub resolution: NodeResolution,
    pub recipe: ConstructionRecipe,
}

/// Triple cover of `Bl_n(F_e)`, `n = 2α + 2β - 4e - 3`, branched over two
/// curves meeting transversally in three further points. It has
/// `K² = 2χ - 5`, ample `K` and three `1/3(1,1)` points.
pub fn build_stable(chi: i64, opts: &BuildOptions) -> Result<StableConstruction, CatalogError> {
    if chi < 3 {
        return Err(out_of_range("chi", chi, "stable constructions need chi >= 3"));
    }
    let params = pick_parameters(chi)?;
    let n = point_count(params.intersection_count() - 3)?;
    let base = blow_up(&SurfaceModel::hirzebruch(params.e), n, opts.assumptions.general_position)?;
    let (d1, d2) = branch_pair(&params, &base)?;
    let d1 = perturb(opts, Pipeline::Stable, PerturbedClass::FirstBranch, d1);
    let d2 = perturb(opts, Pipeline::Stable, PerturbedClass::SecondBranch, d2);
    let cover = CoverSpec::triple(base.clone(), d1.clone(), d2.clone())?
        .with_smoothness(opts.assumptions.smoothness_assumed)
        .with_nodes(3);
    let resolution = resolve_node_bookkeeping(&cover)?;
    let target = AdmissiblePair { k_squared: 2 * chi - 5, chi };

    let mut certificates = vec![
        Certificate::number_identity("resolved K^2", resolution.resolved.k_squared.clone(), 2 * chi - 6),
        Certificate::number_identity("chi", resolution.unresolved.chi.clone(), chi),
        Certificate::number_identity("K^2", resolution.unresolved.k_squared.clone(), target.k_squared),
    ];

    let cert = ampleness_certificate(params, opts)?;
    let tricanonical = &(&base.canonical_class().scale(3) + &d1.scale(2)) + &d2.scale(2);
    let identity = Certificate::class_identity("tricanonical", tricanonical.clone(), cert.divisor.clone());
    let identity_holds = identity.holds();
    certificates.push(identity);
    let three_k2 = resolution.unresolved.k_squared.clone() + resolution.unresolved.k_squared.clone() + resolution.unresolved.k_squared.clone();
    certificates.push(Certificate::number_identity("D^2 = 3K^2", cert.self_intersection.clone(), three_k2));
    certificates.push(Certificate::Ampleness(cert));

    let mut record = resolution.unresolved.clone();
    record.ample_canonical = identity_holds;
    let bicanonical_sections = h0_2k(&mut record)?;
    certificates.push(Certificate::number_identity("h0(2K)", bicanonical_sections.clone(), chi + target.k_squared - 1));

    let mut warnings = resolution.resolved.warnings.clone();
    warnings.push("three 1/3(1,1) points: the surface has no Q-Gorenstein smoothing".into());
    let report = InvariantReport {
        k_squared: record.k_squared.clone(),
        chi: record.chi.clone(),
        p_g: resolution.resolved.p_g.clone(),
        canonical_multiple: crate::covers::CanonicalMultiple { multiple: 3, class: tricanonical },
        minimality: if identity_holds { Minimality::AmpleCertified } else { Minimality::Unknown },
        warnings,
    };
    let recipe = ConstructionRecipe {
        pipeline: Pipeline::Stable,
        target,
        parameters: Some(params),
        cover,
        report,
        component_claim: ComponentLabel::Unlabeled,
        ledger: record.ledger,
        certificates,
        notes: vec!["p_g is read off the resolution; 1/3(1,1) points are rational".into()],
    };
    Ok(StableConstruction { record, bicanonical_sections, resolution, recipe })
}

/// Stable surfaces from contracting `3ε` disjoint `(-3)`-curves on a
/// surface on the line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonRecord {
    pub epsilon: i64,
    pub record: StableSurfaceRecord,
    #[serde(with = "crate::num::bigint")]
    pub bicanonical_sections: BigInt,
    pub three_k_squared: ExactRational,
    /// `8χ - 16`.
    #[serde(with = "crate::num::bigint")]
    pub bound: BigInt,
    pub bound_holds: bool,
    pub bound_tight: bool,
}

pub fn epsilon_family(chi: i64, epsilon: i64) -> Result<EpsilonRecord, CatalogError> {
    if chi < 4 {
        return Err(out_of_range("chi", chi, "the family starts at chi = 4"));
    }
    if epsilon < 1 || 3 * i128::from(epsilon) > 2 * i128::from(chi) + 2 {
        return Err(out_of_range("epsilon", epsilon, "need 1 <= 3 epsilon <= 2 chi + 2"));
    }
    let mut record = contract_minus3(chi, 2 * chi - 6, (3 * epsilon) as u64)?;
    let bicanonical_sections = h0_2k(&mut record)?;
    let k2 = record.k_squared.clone();
    let three_k_squared = k2.clone() + k2.clone() + k2;
    let bound = BigInt::from(8) * BigInt::from(chi) - 16i32;
    let bound_value = ExactRational::integer(bound.clone());
    let bound_holds = three_k_squared <= bound_value;
    let bound_tight = three_k_squared == bound_value;
    Ok(EpsilonRecord { epsilon, record, bicanonical_sections, three_k_squared, bound, bound_holds, bound_tight })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_one_small_cases() {
        for chi in 4..=20 {
            let r = build_component_one(chi, &BuildOptions::default()).unwrap();
            assert!(r.all_hold(), "chi = {chi}: {:?}", r.failed_certificates());
            assert_eq!(r.report.k_squared, ExactRational::integer(2 * chi - 6));
            assert_eq!(r.report.p_g, GeometricGenus::Value(BigInt::from(chi - 1)));
            let expected = if chi % 4 == 3 { ComponentLabel::I } else { ComponentLabel::Unlabeled };
            assert_eq!(r.component_claim, expected, "chi = {chi}");
        }
        assert!(build_component_one(3, &BuildOptions::default()).is_err());
    }

    #[test]
    fn component_one_fibers_are_minus_three() {
        let r = build_component_one(7, &BuildOptions::default()).unwrap();
        let fibers = fiber_components_over_point(&r.cover, 1).unwrap();
        assert_eq!(fibers.iter().map(|f| f.cover_self_intersection).collect::<Vec<_>>(), vec![-3, -3]);
        assert!(fibers.iter().all(|f| f.branch_intersections == vec![1, 1]));
    }

    #[test]
    fn component_two_small_cases() {
        for k in 1..=12 {
            let r = build_component_two(k, &BuildOptions::default()).unwrap();
            assert!(r.all_hold(), "k = {k}: {:?}", r.failed_certificates());
            assert_eq!(r.component_claim, ComponentLabel::II);
            assert_eq!(r.report.minimality, Minimality::AmpleCertified);
            let expected_ade = if k >= 2 && k % 3 == 1 { 1 } else { 0 };
            assert_eq!(r.ledger.canonical_count, expected_ade, "k = {k}");
        }
    }

    #[test]
    fn a4_point_for_residue_one() {
        let r = build_component_two(7, &BuildOptions::default()).unwrap();
        let label = r.certificates.iter().find_map(|c| match c {
            Certificate::Germ { label, shape, .. } => Some((*label, shape.clone())),
            _ => None,
        });
        assert_eq!(label, Some((Some(AdeLabel::A(4)), GermShape::SquarePlusPowers { m: 80, p: 5 })));
    }

    #[test]
    fn wrong_family_breaks_invariance() {
        let curve = CurveFamily::ResidueTwo.curve(4);
        assert!(!invariance_check(&curve, CurveAction::ScaleT1ByPrimitiveRoot));
        let curve = CurveFamily::ResidueOne.curve(4);
        assert!(invariance_check(&curve, CurveAction::ScaleT1ByPrimitiveRoot));
    }

    #[test]
    fn stable_small_cases() {
        for chi in 3..=20 {
            let s = build_stable(chi, &BuildOptions::default()).unwrap();
            assert!(s.recipe.all_hold(), "chi = {chi}: {:?}", s.recipe.failed_certificates());
            assert!(s.record.ample_canonical);
            assert!(!s.record.smoothable);
            assert!(s.record.in_component_without_canonical_models);
            assert_eq!(s.record.k_squared, ExactRational::integer(2 * chi - 5));
            assert_eq!(s.bicanonical_sections, BigInt::from(3 * chi - 6));
        }
    }

    #[test]
    fn epsilon_bound() {
        let r = epsilon_family(8, 6).unwrap();
        assert!(r.bound_holds && r.bound_tight);
        let r = epsilon_family(8, 5).unwrap();
        assert!(r.bound_holds && !r.bound_tight);
        assert!(epsilon_family(8, 7).is_err());
        assert!(epsilon_family(8, 0).is_err());
        assert!(epsilon_family(3, 1).is_err());
    }

    #[test]
    fn parity() {
        assert_eq!(parity_discriminator(&[-3, -3]), ParityVerdict::ComponentOne);
        assert_eq!(parity_discriminator(&[-2, -4]), ParityVerdict::Inconclusive);
        assert_eq!(parity_discriminator(&[]), ParityVerdict::Inconclusive);
    }
}
