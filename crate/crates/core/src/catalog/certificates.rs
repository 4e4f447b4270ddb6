//! Nakai–Moishezon style certificates for the divisors `q*(2Δ0 + cF) - ΣE`
//! on blow-ups of `F_e` at general points.
//!
//! A curve `C̃` with `D·C̃ < 0` is the strict transform of an irreducible
//! `C ≡ aΔ0 + bF` through the points with multiplicities `c_i`, and then
//! `Σ c_i > D0·C`. An auxiliary `R ≡ Δ0 + mF` through all points gives
//! `R·C ≥ Σ c_i`, so `(D0 - R)·C < 0`. That linear condition on `(a, b)`
//! is solved exactly over the classes that can hold irreducible curves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{perturb, BuildOptions, CatalogError, Parameters, PerturbedClass, Pipeline};
use crate::lattice::{blow_up, h0, intersect, pullback, DivisorClass, SectionCount, SurfaceModel};

/// `D·C` for one explicit curve class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub curve: String,
    pub class: DivisorClass,
    #[serde(with = "crate::num::bigint")]
    pub intersection: BigInt,
    pub holds: bool,
}

/// `Δ0` would have to pass through `required_points` general points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalWitness {
    #[serde(with = "crate::num::bigint")]
    pub a: BigInt,
    #[serde(with = "crate::num::bigint")]
    pub b: BigInt,
    #[serde(with = "crate::num::bigint")]
    pub required_points: BigInt,
    /// Sections of `Δ0` through that many points; `None` when there are not enough points.
    pub sections_through_points: Option<SectionCount>,
    pub excluded: bool,
}

/// Classes `t·(a, b)` on which `D0 - R` vanishes; curves there could have `D·C = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryRay {
    #[serde(with = "crate::num::bigint")]
    pub a: BigInt,
    #[serde(with = "crate::num::bigint")]
    pub b: BigInt,
    /// Every irreducible curve on the ray is ruled out by a direct check.
    pub excluded: bool,
    pub reason: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmplenessVerdict {
    Infeasible,
    ExceptionalCaseExcluded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmplenessCertificate {
    pub parameters: Parameters,
    pub surface: SurfaceModel,
    pub divisor: DivisorClass,
    #[serde(with = "crate::num::bigint")]
    pub self_intersection: BigInt,
    pub checks: Vec<WitnessCheck>,
    pub auxiliary: DivisorClass,
    pub auxiliary_sections: SectionCount,
    /// `((D0 - R)·Δ0, (D0 - R)·F)`.
    #[serde(with = "crate::num::bigint_vec")]
    pub linear_form: Vec<BigInt>,
    pub exceptional: Option<ExceptionalWitness>,
    /// Classes where only `D·C ≤ 0` is ruled out; listed, never hidden.
    pub boundary: Vec<BoundaryRay>,
    pub verdict: AmplenessVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum NefVerdict {
    Certified,
    Asserted { gap: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefCertificate {
    pub parameters: Parameters,
    pub surface: SurfaceModel,
    pub divisor: DivisorClass,
    pub checks: Vec<WitnessCheck>,
    pub auxiliary: DivisorClass,
    pub auxiliary_sections: SectionCount,
    #[serde(with = "crate::num::bigint_vec")]
    pub linear_form: Vec<BigInt>,
    pub verdict: NefVerdict,
}

impl NefCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == NefVerdict::Certified
    }
}

/// Where `ca·a + cb·b < 0` meets the classes that may hold irreducible curves.
#[derive(Clone, Debug, PartialEq, Eq)]
enum NegativeRegion {
    Empty,
    /// Only `Δ0` itself, with `e > 0`.
    NegativeSection,
    Unbounded { a: BigInt, b: BigInt },
}

fn negative_region(e: u32, ca: &BigInt, cb: &BigInt) -> NegativeRegion {
    // Candidates: Δ0, F, and the cone a ≥ 1, b ≥ a·e spanned by (1, e) and (0, 1).
    let e_big = BigInt::from(e);
    let at_corner = ca + cb * &e_big;
    if at_corner.is_negative() {
        return NegativeRegion::Unbounded { a: BigInt::one(), b: e_big };
    }
    if cb.is_negative() {
        let t = at_corner.div_floor(&-cb) + 1;
        return NegativeRegion::Unbounded { a: BigInt::one(), b: e_big + t };
    }
    if ca.is_negative() && e > 0 {
        return NegativeRegion::NegativeSection;
    }
    NegativeRegion::Empty
}

fn surface_for(params: &Parameters, points: i64, general_position: bool) -> Result<SurfaceModel, CatalogError> {
    let n = u32::try_from(points).map_err(|_| CatalogError::OutOfRange {
        what: "blown-up points",
        value: points,
        reason: "must be a positive 32-bit count",
    })?;
    Ok(blow_up(&SurfaceModel::hirzebruch(params.e), n, general_position)?)
}

fn lift(surface: &SurfaceModel, e: u32, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<DivisorClass, CatalogError> {
    Ok(pullback(surface, &DivisorClass::hirzebruch_class(e, a, b))?)
}

fn exceptional(surface: &SurfaceModel, j: usize) -> Result<DivisorClass, CatalogError> {
    Ok(DivisorClass::basis_element(surface, 1 + j)?)
}

/// `q*(2Δ0 + (2α + 2β - 3e - 6)F) - Σ E` on `Bl_points(F_e)`.
pub(crate) fn tricanonical_target(params: &Parameters, surface: &SurfaceModel) -> Result<DivisorClass, CatalogError> {
    let c = 2 * params.alpha + 2 * params.beta - 3 * i64::from(params.e) - 6;
    let ex = DivisorClass::outer_exceptional_sum(surface)?;
    Ok(&lift(surface, params.e, 2, c)? - &ex)
}

fn check(curve: String, divisor: &DivisorClass, class: DivisorClass, strict: bool) -> Result<WitnessCheck, CatalogError> {
    let intersection = intersect(divisor, &class)?;
    let holds = if strict { intersection.is_positive() } else { !intersection.is_negative() };
    Ok(WitnessCheck { curve, class, intersection, holds })
}

/// Split `D = q*D0 - Σ d_i E_i`, requiring every `d_i = 1`.
fn base_part(divisor: &DivisorClass, e: u32) -> Result<DivisorClass, CatalogError> {
    let coeffs = divisor.coeffs();
    if let Some((j, c)) = coeffs[2..].iter().enumerate().find(|(_, c)| **c != BigInt::from(-1)) {
        return Err(CatalogError::NonUniformExceptional { index: j + 1, coefficient: c.clone() });
    }
    Ok(DivisorClass::hirzebruch_class(e, coeffs[0].clone(), coeffs[1].clone()))
}

fn linear_form(d0: &DivisorClass, r: &DivisorClass, e: u32) -> Result<(BigInt, BigInt), CatalogError> {
    let diff = d0.checked_sub(r)?;
    let ca = intersect(&diff, &DivisorClass::hirzebruch_class(e, 1, 0))?;
    let cb = intersect(&diff, &DivisorClass::hirzebruch_class(e, 0, 1))?;
    Ok((ca, cb))
}

fn first_failure(checks: &[WitnessCheck]) -> Result<(), CatalogError> {
    match checks.iter().find(|c| !c.holds) {
        Some(c) => Err(CatalogError::NegativeOnCurve { curve: c.curve.clone(), intersection: c.intersection.clone() }),
        None => Ok(()),
    }
}

/// Ampleness of `D = q*(2Δ0 + (2α+2β-3e-6)F) - Σ_{i ≤ n} E_i` on the blow-up of
/// `F_e` at `n = 2α + 2β - 4e - 3` general points, using `R = Δ0 + (α+β-e-2)F`.
pub fn ampleness_certificate(params: Parameters, opts: &BuildOptions) -> Result<AmplenessCertificate, CatalogError> {
    let e = params.e;
    let n = params.intersection_count() - 3;
    let surface = surface_for(&params, n, opts.assumptions.general_position)?;
    let divisor = perturb(opts, Pipeline::Stable, PerturbedClass::CertificateDivisor, tricanonical_target(&params, &surface)?);
    let self_intersection = divisor.self_intersection();
    if !self_intersection.is_positive() {
        return Err(CatalogError::NonPositiveSquare(self_intersection));
    }

    let d0 = base_part(&divisor, e)?;
    let fiber = lift(&surface, e, 0, 1)?;
    let mut checks = vec![
        check("q*D0".into(), &divisor, lift(&surface, e, 1, 0)?, true)?,
        check("q*F".into(), &divisor, fiber.clone(), true)?,
    ];
    for j in 1..=n as usize {
        let ej = exceptional(&surface, j)?;
        checks.push(check(format!("E{j}"), &divisor, ej.clone(), true)?);
        checks.push(check(format!("q*F - E{j}"), &divisor, &fiber - &ej, true)?);
    }
    first_failure(&checks)?;

    let m = params.alpha + params.beta - i64::from(e) - 2;
    let r = DivisorClass::hirzebruch_class(e, 1, m);
    let auxiliary = &pullback(&surface, &r)? - &DivisorClass::outer_exceptional_sum(&surface)?;
    let auxiliary_sections = h0(&auxiliary)?;
    if auxiliary_sections.value < BigInt::one() {
        return Err(CatalogError::WitnessUnavailable { class: auxiliary.to_string(), count: auxiliary_sections.value });
    }

    let (ca, cb) = linear_form(&d0, &r, e)?;
    let (verdict, exceptional) = match negative_region(e, &ca, &cb) {
        NegativeRegion::Empty => (AmplenessVerdict::Infeasible, None),
        NegativeRegion::Unbounded { a, b } => return Err(CatalogError::CertificateUnavailable { a, b }),
        NegativeRegion::NegativeSection => {
            let witness = exclude_negative_section(&params, &d0, n, opts)?;
            if !witness.excluded {
                return Err(CatalogError::CertificateUnavailable { a: witness.a, b: witness.b });
            }
            (AmplenessVerdict::ExceptionalCaseExcluded, Some(witness))
        }
    };
    let boundary = boundary_rays(e, &ca, &cb, &checks);

    Ok(AmplenessCertificate {
        parameters: params,
        surface,
        divisor,
        self_intersection,
        checks,
        auxiliary,
        auxiliary_sections,
        linear_form: vec![ca, cb],
        exceptional,
        boundary,
        verdict,
    })
}

/// `Δ0` is smooth, so `Σ c_i > D0·Δ0` needs `D0·Δ0 + 1` distinct points on it.
fn exclude_negative_section(params: &Parameters, d0: &DivisorClass, n: i64, opts: &BuildOptions) -> Result<ExceptionalWitness, CatalogError> {
    let e = params.e;
    let required = intersect(d0, &DivisorClass::hirzebruch_class(e, 1, 0))? + 1i32;
    let (a, b) = (BigInt::one(), BigInt::zero());
    if !required.is_positive() {
        return Ok(ExceptionalWitness { a, b, required_points: required, sections_through_points: None, excluded: false });
    }
    if required > BigInt::from(n) {
        return Ok(ExceptionalWitness { a, b, required_points: required, sections_through_points: None, excluded: true });
    }
    let s = i64::try_from(&required).expect("bounded by n");
    let small = surface_for(params, s, opts.assumptions.general_position)?;
    let through = &lift(&small, e, 1, 0)? - &DivisorClass::outer_exceptional_sum(&small)?;
    let sections = h0(&through)?;
    let excluded = sections.value.is_zero();
    Ok(ExceptionalWitness { a, b, required_points: required, sections_through_points: Some(sections), excluded })
}

fn boundary_rays(e: u32, ca: &BigInt, cb: &BigInt, checks: &[WitnessCheck]) -> Vec<BoundaryRay> {
    let section_ok = checks.iter().any(|c| c.curve == "q*D0" && c.holds);
    let fibers_ok = checks.iter().filter(|c| c.curve.starts_with("q*F")).all(|c| c.holds);
    let mut rays = Vec::new();
    if ca.is_zero() && e > 0 {
        rays.push(BoundaryRay {
            a: BigInt::one(),
            b: BigInt::zero(),
            excluded: section_ok,
            reason: "the negative section is rigid and avoids general points".into(),
        });
    }
    if cb.is_zero() {
        rays.push(BoundaryRay {
            a: BigInt::zero(),
            b: BigInt::one(),
            excluded: fibers_ok,
            reason: "fibers meet at most one general point".into(),
        });
    }
    let corner = ca + cb * BigInt::from(e);
    if corner.is_zero() && (e > 0 || !ca.is_zero()) {
        rays.push(BoundaryRay {
            a: BigInt::one(),
            b: BigInt::from(e),
            excluded: false,
            reason: "curves on this ray are not ruled out by the auxiliary curve".into(),
        });
    }
    rays
}

/// Nefness of `D = q*(2Δ0 + (2α+2β-3e-6)F) - Σ E` on the blow-up at all
/// `N = 2α + 2β - 4e` points, with `R = Δ0 + mF` for the least `m` whose
/// virtual count through the `N` points is positive.
pub fn nef_certificate(params: Parameters, opts: &BuildOptions) -> Result<NefCertificate, CatalogError> {
    let e = params.e;
    let n = params.intersection_count();
    let surface = surface_for(&params, n, opts.assumptions.general_position)?;
    let divisor = perturb(opts, Pipeline::ComponentOne, PerturbedClass::CertificateDivisor, tricanonical_target(&params, &surface)?);
    let d0 = base_part(&divisor, e)?;
    let ex = DivisorClass::outer_exceptional_sum(&surface)?;
    let fiber = lift(&surface, e, 0, 1)?;

    let mut checks = vec![
        check("q*D0".into(), &divisor, lift(&surface, e, 1, 0)?, false)?,
        check("q*F".into(), &divisor, fiber.clone(), false)?,
        check("D1~".into(), &divisor, &lift(&surface, e, 2, params.alpha)? - &ex, false)?,
        check("D2~".into(), &divisor, &lift(&surface, e, 2, params.beta)? - &ex, false)?,
    ];
    for j in 1..=n as usize {
        let ej = exceptional(&surface, j)?;
        checks.push(check(format!("E{j}"), &divisor, ej.clone(), false)?);
        checks.push(check(format!("q*F - E{j}"), &divisor, &fiber - &ej, false)?);
    }
    first_failure(&checks)?;

    let mut found = None;
    for m in 0..=(n + i64::from(e) + 1) {
        let candidate = &lift(&surface, e, 1, m)? - &ex;
        let sections = h0(&candidate)?;
        if sections.value.is_positive() {
            found = Some((m, candidate, sections));
            break;
        }
    }
    let Some((m, auxiliary, auxiliary_sections)) = found else {
        return Err(CatalogError::WitnessUnavailable { class: "q*(D0 + mF) - sum E".to_string(), count: BigInt::zero() });
    };
    let r = DivisorClass::hirzebruch_class(e, 1, m);
    let (ca, cb) = linear_form(&d0, &r, e)?;
    let verdict = match negative_region(e, &ca, &cb) {
        NegativeRegion::Empty => NefVerdict::Certified,
        // Δ0 avoids general points, so the direct check on q*Δ0 already covers it.
        NegativeRegion::NegativeSection => NefVerdict::Certified,
        NegativeRegion::Unbounded { a, b } => NefVerdict::Asserted {
            gap: format!("irreducible curves of class {a}D0 + {b}F through the points are not excluded"),
        },
    };
    Ok(NefCertificate { parameters: params, surface, divisor, checks, auxiliary, auxiliary_sections, linear_form: vec![ca, cb], verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::pick_parameters;

    #[test]
    fn region_solver_matches_enumeration() {
        for e in 0..4u32 {
            for ca in -4..5i64 {
                for cb in -3..4i64 {
                    let region = negative_region(e, &BigInt::from(ca), &BigInt::from(cb));
                    let mut hits = Vec::new();
                    for a in 0..12i64 {
                        for b in 0..40i64 {
                            let ok = crate::lattice::may_contain_irreducible(e, &BigInt::from(a), &BigInt::from(b));
                            if ok && ca * a + cb * b < 0 {
                                hits.push((a, b));
                            }
                        }
                    }
                    match region {
                        NegativeRegion::Empty => assert!(hits.is_empty(), "e={e} ca={ca} cb={cb}: {hits:?}"),
                        NegativeRegion::NegativeSection => assert_eq!(hits, vec![(1, 0)]),
                        NegativeRegion::Unbounded { a, b } => {
                            assert!(hits.len() > 1);
                            let (a, b) = (i64::try_from(a).unwrap(), i64::try_from(b).unwrap());
                            assert!(hits.contains(&(a, b)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ampleness_for_small_chi() {
        for chi in 3..=40 {
            let cert = ampleness_certificate(pick_parameters(chi).unwrap(), &BuildOptions::default()).unwrap();
            let expected = if chi == 3 { AmplenessVerdict::ExceptionalCaseExcluded } else { AmplenessVerdict::Infeasible };
            assert_eq!(cert.verdict, expected, "chi = {chi}");
            assert_eq!(cert.self_intersection, BigInt::from(3 * (2 * chi - 5)));
        }
    }

    #[test]
    fn boundary_only_at_chi_three() {
        let cert = ampleness_certificate(pick_parameters(3).unwrap(), &BuildOptions::default()).unwrap();
        assert_eq!(cert.boundary.len(), 1);
        assert!(!cert.boundary[0].excluded);
        let cert = ampleness_certificate(pick_parameters(5).unwrap(), &BuildOptions::default()).unwrap();
        assert!(cert.boundary.iter().all(|r| r.excluded));
        for chi in [4, 6, 7, 8, 9, 10, 11] {
            let cert = ampleness_certificate(pick_parameters(chi).unwrap(), &BuildOptions::default()).unwrap();
            assert!(cert.boundary.is_empty(), "chi = {chi}");
        }
    }

    #[test]
    fn nef_for_small_chi() {
        for chi in 4..=40 {
            let cert = nef_certificate(pick_parameters(chi).unwrap(), &BuildOptions::default()).unwrap();
            assert_eq!(cert.is_certified(), chi != 4, "chi = {chi}");
        }
    }

    #[test]
    fn needs_general_position() {
        let opts = BuildOptions {
            assumptions: crate::catalog::Assumptions { general_position: false, smoothness_assumed: true },
            perturbation: None,
        };
        assert!(ampleness_certificate(pick_parameters(7).unwrap(), &opts).is_err());
    }
}
