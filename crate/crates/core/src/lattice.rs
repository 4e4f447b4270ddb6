//! Picard lattices of the projective plane, Hirzebruch surfaces and their
//! blow-ups at anonymous points.
//!
//! Basis conventions: `[H]` on the plane, `[Δ0, F]` on `F_e`, and a blow-up
//! appends `[E_1, ..., E_n]` after the basis of its base. Exceptional classes
//! are numbered consecutively across nested blow-ups.

use std::fmt;
use std::num::NonZeroU32;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::num::bigint_vec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("divisor classes live on different surfaces ({left} vs {right})")]
    SurfaceMismatch { left: String, right: String },
    #[error("expected {expected} coefficients for {surface}, found {found}")]
    CoefficientCount { surface: String, expected: usize, found: usize },
    #[error("basis index {index} out of range for {surface} (rank {rank})")]
    BasisIndex { surface: String, index: usize, rank: usize },
    #[error("{0} is not a blow-up")]
    NotABlowUp(String),
    #[error("class on {class_surface} is not carried by any base of {target}")]
    BaseMismatch { class_surface: String, target: String },
    #[error("a blow-up needs at least one point")]
    EmptyBlowUp,
    #[error("exceptional coefficient {coefficient} at {label}: only simple points (coefficient -1) are supported")]
    UnsupportedMultiplicity { label: String, coefficient: BigInt },
    #[error("section count on {0} imposes points that are not declared to be in general position")]
    NotGeneralPosition(String),
    #[error("operation needs a Hirzebruch surface, got {0}")]
    NotHirzebruch(String),
}

/// The ambient surface of a divisor calculation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceModel {
    ProjectivePlane,
    Hirzebruch {
        e: u32,
    },
    BlowUp {
        base: Box<SurfaceModel>,
        point_count: NonZeroU32,
        general_position: bool,
    },
}

impl SurfaceModel {
    pub fn plane() -> Self {
        SurfaceModel::ProjectivePlane
    }

    pub fn hirzebruch(e: u32) -> Self {
        SurfaceModel::Hirzebruch { e }
    }

    pub fn picard_rank(&self) -> usize {
        match self {
            SurfaceModel::ProjectivePlane => 1,
            SurfaceModel::Hirzebruch { .. } => 2,
            SurfaceModel::BlowUp { base, point_count, .. } => base.picard_rank() + point_count.get() as usize,
        }
    }

    /// Total number of exceptional classes over all nested blow-ups.
    pub fn exceptional_count(&self) -> usize {
        self.picard_rank() - self.minimal_model().picard_rank()
    }

    /// The plane or Hirzebruch surface at the bottom of the blow-up tower.
    pub fn minimal_model(&self) -> &SurfaceModel {
        match self {
            SurfaceModel::BlowUp { base, .. } => base.minimal_model(),
            other => other,
        }
    }

    /// Indices of the exceptional classes added by the outermost blow-up.
    pub fn outer_exceptional_range(&self) -> Option<std::ops::Range<usize>> {
        match self {
            SurfaceModel::BlowUp { base, .. } => Some(base.picard_rank()..self.picard_rank()),
            _ => None,
        }
    }

    pub fn basis_labels(&self) -> Vec<String> {
        match self {
            SurfaceModel::ProjectivePlane => vec!["H".into()],
            SurfaceModel::Hirzebruch { .. } => vec!["D0".into(), "F".into()],
            SurfaceModel::BlowUp { base, point_count, .. } => {
                let mut labels = base.basis_labels();
                let first = base.exceptional_count() + 1;
                labels.extend((first..first + point_count.get() as usize).map(|j| format!("E{j}")));
                labels
            }
        }
    }

    /// Every blow-up level in the tower assumes general position.
    pub fn points_in_general_position(&self) -> bool {
        match self {
            SurfaceModel::BlowUp { base, general_position, .. } => *general_position && base.points_in_general_position(),
            _ => true,
        }
    }

    pub fn canonical_class(&self) -> DivisorClass {
        canonical_class(self)
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceModel::ProjectivePlane => write!(f, "P2"),
            SurfaceModel::Hirzebruch { e } => write!(f, "F_{e}"),
            SurfaceModel::BlowUp { base, point_count, general_position } => {
                let gp = if *general_position { "general" } else { "special" };
                write!(f, "Bl_{point_count}({base}, {gp})")
            }
        }
    }
}

/// Blow up `n` further points of `surface`.
pub fn blow_up(surface: &SurfaceModel, n: u32, general_position: bool) -> Result<SurfaceModel, LatticeError> {
    let point_count = NonZeroU32::new(n).ok_or(LatticeError::EmptyBlowUp)?;
    Ok(SurfaceModel::BlowUp {
        base: Box::new(surface.clone()),
        point_count,
        general_position,
    })
}

/// An integer combination of the Picard basis of a surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawClass")]
pub struct DivisorClass {
    surface: SurfaceModel,
    #[serde(with = "bigint_vec")]
    coeffs: Vec<BigInt>,
}

#[derive(Deserialize)]
struct RawClass {
    surface: SurfaceModel,
    #[serde(with = "bigint_vec")]
    coeffs: Vec<BigInt>,
}

impl TryFrom<RawClass> for DivisorClass {
    type Error = LatticeError;
    fn try_from(raw: RawClass) -> Result<Self, Self::Error> {
        DivisorClass::new(raw.surface, raw.coeffs)
    }
}

impl DivisorClass {
    pub fn new(surface: SurfaceModel, coeffs: Vec<BigInt>) -> Result<Self, LatticeError> {
        let expected = surface.picard_rank();
        if coeffs.len() != expected {
            return Err(LatticeError::CoefficientCount {
                surface: surface.to_string(),
                expected,
                found: coeffs.len(),
            });
        }
        Ok(DivisorClass { surface, coeffs })
    }

    pub fn from_ints(surface: SurfaceModel, coeffs: &[i64]) -> Result<Self, LatticeError> {
        DivisorClass::new(surface, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(surface: &SurfaceModel) -> Self {
        DivisorClass {
            coeffs: vec![BigInt::zero(); surface.picard_rank()],
            surface: surface.clone(),
        }
    }

    pub fn basis_element(surface: &SurfaceModel, index: usize) -> Result<Self, LatticeError> {
        let rank = surface.picard_rank();
        if index >= rank {
            return Err(LatticeError::BasisIndex { surface: surface.to_string(), index, rank });
        }
        let mut class = DivisorClass::zero(surface);
        class.coeffs[index] = BigInt::one();
        Ok(class)
    }

    /// `d·H` on the projective plane.
    pub fn plane_class(d: impl Into<BigInt>) -> Self {
        DivisorClass {
            surface: SurfaceModel::ProjectivePlane,
            coeffs: vec![d.into()],
        }
    }

    /// `a·Δ0 + b·F` on `F_e`.
    pub fn hirzebruch_class(e: u32, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        DivisorClass {
            surface: SurfaceModel::hirzebruch(e),
            coeffs: vec![a.into(), b.into()],
        }
    }

    /// Sum of the exceptional classes of the outermost blow-up level.
    pub fn outer_exceptional_sum(surface: &SurfaceModel) -> Result<Self, LatticeError> {
        let range = surface
            .outer_exceptional_range()
            .ok_or_else(|| LatticeError::NotABlowUp(surface.to_string()))?;
        let mut class = DivisorClass::zero(surface);
        for i in range {
            class.coeffs[i] = BigInt::one();
        }
        Ok(class)
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> &BigInt {
        &self.coeffs[index]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, factor: impl Into<BigInt>) -> Self {
        let factor = factor.into();
        DivisorClass {
            surface: self.surface.clone(),
            coeffs: self.coeffs.iter().map(|c| c * &factor).collect(),
        }
    }

    /// Exact division by an integer; `None` when some coefficient is not divisible.
    pub fn divide_exact(&self, divisor: impl Into<BigInt>) -> Option<Self> {
        let divisor = divisor.into();
        if divisor.is_zero() {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(&divisor);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(DivisorClass { surface: self.surface.clone(), coeffs })
    }

    /// Replace one coefficient, keeping the surface.
    pub fn with_coeff(mut self, index: usize, value: impl Into<BigInt>) -> Result<Self, LatticeError> {
        let rank = self.coeffs.len();
        match self.coeffs.get_mut(index) {
            Some(slot) => {
                *slot = value.into();
                Ok(self)
            }
            None => Err(LatticeError::BasisIndex { surface: self.surface.to_string(), index, rank }),
        }
    }

    pub fn checked_add(&self, other: &DivisorClass) -> Result<Self, LatticeError> {
        self.same_surface(other)?;
        Ok(DivisorClass {
            surface: self.surface.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &DivisorClass) -> Result<Self, LatticeError> {
        self.checked_add(&-other)
    }

    pub fn self_intersection(&self) -> BigInt {
        pairing(&self.surface, &self.coeffs, &self.coeffs)
    }

    fn same_surface(&self, other: &DivisorClass) -> Result<(), LatticeError> {
        if self.surface == other.surface {
            Ok(())
        } else {
            Err(LatticeError::SurfaceMismatch {
                left: self.surface.to_string(),
                right: other.surface.to_string(),
            })
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.surface.basis_labels();
        let mut wrote = false;
        for (c, label) in self.coeffs.iter().zip(&labels) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if wrote { "+" } else { "" };
            let mag = c.abs();
            if wrote {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            if mag.is_one() {
                write!(f, "{label}")?;
            } else {
                write!(f, "{mag}{label}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Operators panic on mismatched surfaces, like shape mismatches in array code.
// Use `checked_add`/`checked_sub` where the surfaces are not known to agree.

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_add(rhs).expect("adding divisor classes on different surfaces")
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_sub(rhs).expect("subtracting divisor classes on different surfaces")
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            surface: self.surface.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        -&self
    }
}

fn pairing(surface: &SurfaceModel, a: &[BigInt], b: &[BigInt]) -> BigInt {
    match surface {
        SurfaceModel::ProjectivePlane => &a[0] * &b[0],
        SurfaceModel::Hirzebruch { e } => {
            // Δ0² = -e, Δ0·F = 1, F² = 0
            -(BigInt::from(*e) * &a[0] * &b[0]) + &a[0] * &b[1] + &a[1] * &b[0]
        }
        SurfaceModel::BlowUp { base, .. } => {
            let r = base.picard_rank();
            let exceptional: BigInt = a[r..].iter().zip(&b[r..]).map(|(x, y)| x * y).sum();
            pairing(base, &a[..r], &b[..r]) - exceptional
        }
    }
}

/// The intersection number of two classes on the same surface.
pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> Result<BigInt, LatticeError> {
    a.same_surface(b)?;
    Ok(pairing(&a.surface, &a.coeffs, &b.coeffs))
}

pub fn canonical_class(surface: &SurfaceModel) -> DivisorClass {
    match surface {
        SurfaceModel::ProjectivePlane => DivisorClass::plane_class(-3),
        SurfaceModel::Hirzebruch { e } => DivisorClass::hirzebruch_class(*e, -2, -(BigInt::from(*e) + 2i32)),
        SurfaceModel::BlowUp { base, point_count, .. } => {
            let mut coeffs = canonical_class(base).coeffs;
            coeffs.extend(std::iter::repeat_n(BigInt::one(), point_count.get() as usize));
            DivisorClass { surface: surface.clone(), coeffs }
        }
    }
}

/// Pull a class back along a (possibly nested) blow-up onto `target`.
///
/// The class must live on `target` itself or on one of the bases below it.
pub fn pullback(target: &SurfaceModel, class: &DivisorClass) -> Result<DivisorClass, LatticeError> {
    if class.surface == *target {
        return Ok(class.clone());
    }
    match target {
        SurfaceModel::BlowUp { base, .. } => {
            let on_base = pullback(base, class).map_err(|_| LatticeError::BaseMismatch {
                class_surface: class.surface.to_string(),
                target: target.to_string(),
            })?;
            let mut coeffs = on_base.coeffs;
            coeffs.resize(target.picard_rank(), BigInt::zero());
            Ok(DivisorClass { surface: target.clone(), coeffs })
        }
        _ => Err(LatticeError::BaseMismatch {
            class_surface: class.surface.to_string(),
            target: target.to_string(),
        }),
    }
}

/// Whether a section count is a theorem or an expected dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    Virtual,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectionCount {
    #[serde(with = "crate::num::bigint")]
    pub value: BigInt,
    pub exactness: Exactness,
}

impl SectionCount {
    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Exact
    }
}

/// `Σ_{i=0..a} max(0, b - i·e + 1)`: sections of `aΔ0 + bF` on `F_e`.
pub fn hirzebruch_section_count(e: u32, a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_negative() || b.is_negative() {
        return BigInt::zero();
    }
    let e = BigInt::from(e);
    let b1 = b + 1;
    if e.is_zero() {
        return (a + 1) * b1;
    }
    // Terms are positive exactly for i ≤ b / e.
    let last = std::cmp::min(a.clone(), b.div_floor(&e));
    let n = last + 1;
    &n * &b1 - &e * &n * (&n - 1) / 2
}

/// Number of global sections of a class.
///
/// Exact on the plane and on `F_e`. On a blow-up, exceptional coefficient
/// `-1` imposes a simple general point and the answer is the base count
/// minus the number of imposed points, clamped at zero and tagged virtual.
/// Nonnegative exceptional coefficients are fixed components and do not
/// change the count.
pub fn h0(class: &DivisorClass) -> Result<SectionCount, LatticeError> {
    section_count(&class.surface, &class.coeffs)
}

fn section_count(surface: &SurfaceModel, coeffs: &[BigInt]) -> Result<SectionCount, LatticeError> {
    match surface {
        SurfaceModel::ProjectivePlane => {
            let d = &coeffs[0];
            let value = if d.is_negative() { BigInt::zero() } else { (d + 2) * (d + 1) / 2 };
            Ok(SectionCount { value, exactness: Exactness::Exact })
        }
        SurfaceModel::Hirzebruch { e } => Ok(SectionCount {
            value: hirzebruch_section_count(*e, &coeffs[0], &coeffs[1]),
            exactness: Exactness::Exact,
        }),
        SurfaceModel::BlowUp { base, general_position, .. } => {
            let r = base.picard_rank();
            let labels = surface.basis_labels();
            let mut imposed = 0usize;
            for (c, label) in coeffs[r..].iter().zip(&labels[r..]) {
                if c == &BigInt::from(-1) {
                    imposed += 1;
                } else if c.is_negative() {
                    return Err(LatticeError::UnsupportedMultiplicity {
                        label: label.clone(),
                        coefficient: c.clone(),
                    });
                }
            }
            let base_count = section_count(base, &coeffs[..r])?;
            if imposed == 0 {
                return Ok(base_count);
            }
            if !general_position {
                return Err(LatticeError::NotGeneralPosition(surface.to_string()));
            }
            let value = std::cmp::max(BigInt::zero(), base_count.value - BigInt::from(imposed));
            Ok(SectionCount { value, exactness: Exactness::Virtual })
        }
    }
}

/// Ampleness on the minimal models: `dH` with `d > 0`; `aΔ0 + bF` with
/// `a > 0` and `b > a·e`. On these surfaces ample and very ample agree.
/// `None` on blow-ups, where no criterion is modelled.
pub fn is_ample_on_minimal(class: &DivisorClass) -> Option<bool> {
    match class.surface {
        SurfaceModel::ProjectivePlane => Some(class.coeffs[0].is_positive()),
        SurfaceModel::Hirzebruch { e } => {
            let (a, b) = (&class.coeffs[0], &class.coeffs[1]);
            Some(a.is_positive() && b > &(a * BigInt::from(e)))
        }
        SurfaceModel::BlowUp { .. } => None,
    }
}

/// Necessary numerical condition for `aΔ0 + bF` on `F_e` to contain an
/// irreducible curve: the curve is `Δ0`, a fiber, or meets both `Δ0` and
/// `F` nonnegatively (`a > 0`, `b ≥ a·e`).
pub fn may_contain_irreducible(e: u32, a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        return b.is_one();
    }
    if a.is_one() && b.is_zero() {
        return true;
    }
    a.is_positive() && b >= &(a * BigInt::from(e))
}

/// `(a, b)` of a class on `F_e`.
pub fn hirzebruch_coords(class: &DivisorClass) -> Result<(u32, &BigInt, &BigInt), LatticeError> {
    match class.surface {
        SurfaceModel::Hirzebruch { e } => Ok((e, &class.coeffs[0], &class.coeffs[1])),
        _ => Err(LatticeError::NotHirzebruch(class.surface.to_string())),
    }
}

/// Small helper for tests and reports: the class as machine integers, if they fit.
pub fn coeffs_i64(class: &DivisorClass) -> Option<Vec<i64>> {
    class.coeffs.iter().map(ToPrimitive::to_i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn negative_section_on_f2() {
        let d0 = DivisorClass::hirzebruch_class(2, 1, 0);
        assert_eq!(intersect(&d0, &d0).unwrap(), big(-2));
    }

    #[test]
    fn zero_pairs_to_zero() {
        let s = blow_up(&SurfaceModel::hirzebruch(3), 4, true).unwrap();
        let d = DivisorClass::from_ints(s.clone(), &[2, 7, -1, 0, 3, -1]).unwrap();
        assert_eq!(intersect(&DivisorClass::zero(&s), &d).unwrap(), big(0));
    }

    #[test]
    fn genus_two_pencil_class_on_blown_up_f1() {
        let s = blow_up(&SurfaceModel::hirzebruch(1), 8, true).unwrap();
        let c = pullback(&s, &DivisorClass::hirzebruch_class(1, 2, 3)).unwrap()
            - DivisorClass::outer_exceptional_sum(&s).unwrap();
        assert_eq!(c.self_intersection(), big(0));
    }

    #[test]
    fn canonical_squares() {
        assert_eq!(canonical_class(&SurfaceModel::plane()), DivisorClass::plane_class(-3));
        assert_eq!(canonical_class(&SurfaceModel::plane()).self_intersection(), big(9));
        for e in 0..10 {
            assert_eq!(canonical_class(&SurfaceModel::hirzebruch(e)).self_intersection(), big(8));
        }
        let s = blow_up(&SurfaceModel::hirzebruch(1), 8, true).unwrap();
        assert_eq!(canonical_class(&s).self_intersection(), big(0));
    }

    #[test]
    fn blow_up_rank_and_labels() {
        let s = blow_up(&SurfaceModel::hirzebruch(1), 8, true).unwrap();
        assert_eq!(s.picard_rank(), 10);
        let t = blow_up(&s, 2, true).unwrap();
        assert_eq!(t.basis_labels()[10..], ["E9".to_string(), "E10".to_string()]);
        assert_eq!(t.exceptional_count(), 10);
        assert_eq!(blow_up(&s, 0, true), Err(LatticeError::EmptyBlowUp));
    }

    #[test]
    fn pullback_is_orthogonal_to_exceptionals() {
        let s = blow_up(&SurfaceModel::hirzebruch(2), 5, true).unwrap();
        let d = pullback(&s, &DivisorClass::hirzebruch_class(2, 2, 7)).unwrap();
        assert!(d.coeffs()[2..].iter().all(Zero::is_zero));
        for i in 2..7 {
            let ei = DivisorClass::basis_element(&s, i).unwrap();
            assert_eq!(intersect(&d, &ei).unwrap(), big(0));
        }
        let f = pullback(&s, &DivisorClass::hirzebruch_class(2, 0, 1)).unwrap();
        assert_eq!(f.self_intersection(), big(0));
        assert!(pullback(&s, &DivisorClass::zero(&SurfaceModel::hirzebruch(2))).unwrap().is_zero());
    }

    #[test]
    fn pullback_pairing_counts_intersection_points() {
        // (2Δ0 + αF)·(2Δ0 + βF) = 2α + 2β - 4e
        for e in 0..4u32 {
            for (alpha, beta) in [(3, 3), (7, 1), (5, 5), (11, 2)] {
                let s = blow_up(&SurfaceModel::hirzebruch(e), 3, true).unwrap();
                let d1 = DivisorClass::hirzebruch_class(e, 2, alpha);
                let d2 = DivisorClass::hirzebruch_class(e, 2, beta);
                let up = intersect(&pullback(&s, &d1).unwrap(), &pullback(&s, &d2).unwrap()).unwrap();
                assert_eq!(up, big(2 * alpha + 2 * beta - 4 * e as i64));
            }
        }
    }

    #[test]
    fn pullback_through_nested_blow_ups() {
        let inner = blow_up(&SurfaceModel::hirzebruch(0), 3, true).unwrap();
        let outer = blow_up(&inner, 2, true).unwrap();
        let d = DivisorClass::hirzebruch_class(0, 1, 1);
        let up = pullback(&outer, &d).unwrap();
        assert_eq!(up.coeffs().len(), 7);
        assert_eq!(up.self_intersection(), big(2));
        let wrong = DivisorClass::hirzebruch_class(1, 1, 1);
        assert!(matches!(pullback(&outer, &wrong), Err(LatticeError::BaseMismatch { .. })));
    }

    #[test]
    fn mismatched_surfaces_are_rejected() {
        let a = DivisorClass::hirzebruch_class(0, 1, 0);
        let b = DivisorClass::hirzebruch_class(1, 1, 0);
        assert!(matches!(intersect(&a, &b), Err(LatticeError::SurfaceMismatch { .. })));
        assert!(DivisorClass::from_ints(SurfaceModel::plane(), &[1, 2]).is_err());
    }

    #[test]
    fn section_counts() {
        let conics = h0(&DivisorClass::plane_class(2)).unwrap();
        assert_eq!(conics, SectionCount { value: big(6), exactness: Exactness::Exact });
        assert_eq!(h0(&DivisorClass::plane_class(-1)).unwrap().value, big(0));

        let c = h0(&DivisorClass::hirzebruch_class(2, 2, 5)).unwrap();
        assert_eq!(c, SectionCount { value: big(12), exactness: Exactness::Exact });

        let s = blow_up(&SurfaceModel::hirzebruch(1), 8, true).unwrap();
        let r = pullback(&s, &DivisorClass::hirzebruch_class(1, 1, 4)).unwrap()
            - DivisorClass::outer_exceptional_sum(&s).unwrap();
        assert_eq!(h0(&r).unwrap(), SectionCount { value: big(1), exactness: Exactness::Virtual });
    }

    #[test]
    fn section_count_edge_cases() {
        let s = blow_up(&SurfaceModel::hirzebruch(0), 2, true).unwrap();
        // Pure pullbacks and positive exceptional parts keep the exact base count.
        let d = DivisorClass::from_ints(s.clone(), &[1, 1, 0, 2]).unwrap();
        assert_eq!(h0(&d).unwrap(), SectionCount { value: big(4), exactness: Exactness::Exact });
        let double = DivisorClass::from_ints(s.clone(), &[1, 1, -2, 0]).unwrap();
        assert!(matches!(h0(&double), Err(LatticeError::UnsupportedMultiplicity { .. })));

        let special = blow_up(&SurfaceModel::hirzebruch(0), 1, false).unwrap();
        let through = DivisorClass::from_ints(special, &[1, 1, -1]).unwrap();
        assert!(matches!(h0(&through), Err(LatticeError::NotGeneralPosition(_))));

        // Clamped at zero.
        let many = DivisorClass::from_ints(s, &[0, 0, -1, -1]).unwrap();
        assert_eq!(h0(&many).unwrap().value, big(0));
    }

    #[test]
    fn ampleness_on_minimal_models() {
        assert_eq!(is_ample_on_minimal(&DivisorClass::plane_class(2)), Some(true));
        assert_eq!(is_ample_on_minimal(&DivisorClass::plane_class(0)), Some(false));
        assert_eq!(is_ample_on_minimal(&DivisorClass::hirzebruch_class(6, 1, 7)), Some(true));
        assert_eq!(is_ample_on_minimal(&DivisorClass::hirzebruch_class(6, 1, 6)), Some(false));
        let s = blow_up(&SurfaceModel::plane(), 1, true).unwrap();
        assert_eq!(is_ample_on_minimal(&DivisorClass::zero(&s)), None);
    }

    #[test]
    fn irreducibility_filter() {
        assert!(may_contain_irreducible(1, &big(1), &big(0)));
        assert!(may_contain_irreducible(1, &big(0), &big(1)));
        assert!(!may_contain_irreducible(1, &big(0), &big(2)));
        assert!(!may_contain_irreducible(1, &big(2), &big(1)));
        assert!(may_contain_irreducible(1, &big(2), &big(2)));
        assert!(may_contain_irreducible(0, &big(2), &big(1)));
    }

    #[test]
    fn display_uses_basis_labels() {
        let s = blow_up(&SurfaceModel::hirzebruch(2), 2, true).unwrap();
        let d = DivisorClass::from_ints(s, &[2, 7, -1, -1]).unwrap();
        assert_eq!(d.to_string(), "2D0 + 7F - E1 - E2");
        assert_eq!(DivisorClass::zero(&SurfaceModel::plane()).to_string(), "0");
    }

    #[test]
    fn class_json_is_validated() {
        let d = DivisorClass::hirzebruch_class(2, 1, 7);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<DivisorClass>(&json).unwrap(), d);
        let bad = r#"{"surface":{"kind":"hirzebruch","e":2},"coeffs":[1]}"#;
        assert!(serde_json::from_str::<DivisorClass>(bad).is_err());
        let zero_points = r#"{"kind":"blow_up","base":{"kind":"projective_plane"},"point_count":0,"general_position":true}"#;
        assert!(serde_json::from_str::<SurfaceModel>(zero_points).is_err());
    }
}
