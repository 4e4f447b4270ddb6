//! Curves on `F_e` written as polynomials in the scroll coordinates
//! `(t1, t2; x1, x2)`, plane curves in `(X0, X1, X2)`, and the local germs
//! the constructions need to classify.
//!
//! Weights: `t1, t2` have class `F`, `x2` has class `Δ0`, `x1` has class
//! `Δ0 + eF`. Coefficients are not modelled; a curve is its monomial support.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::DivisorClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("curve has no monomials")]
    Empty,
    #[error("monomials {first} and {second} have different bidegrees")]
    Inhomogeneous { first: String, second: String },
    #[error("germ x^2 + x^{m} + y^{p} is outside the supported family (needs m >= 2, p >= 2)")]
    UnsupportedGerm { m: u64, p: u64 },
}

/// Exponents of `t1^c1 t2^c2 x1^d1 x2^d2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ScrollMonomial {
    pub t1: u64,
    pub t2: u64,
    pub x1: u64,
    pub x2: u64,
}

impl ScrollMonomial {
    pub fn new(t1: u64, t2: u64, x1: u64, x2: u64) -> Self {
        ScrollMonomial { t1, t2, x1, x2 }
    }

    /// `(a, b)` with the monomial a section of `aΔ0 + bF` on `F_e`.
    pub fn bidegree(&self, e: u32) -> (u64, u64) {
        (self.x1 + self.x2, u64::from(e) * self.x1 + self.t1 + self.t2)
    }
}

impl fmt::Display for ScrollMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [("t1", self.t1), ("t2", self.t2), ("x1", self.x1), ("x2", self.x2)]
            .into_iter()
            .filter(|&(_, p)| p > 0)
            .map(|(v, p)| if p == 1 { v.to_string() } else { format!("{v}^{p}") })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScrollCurve {
    pub e: u32,
    pub monomials: BTreeSet<ScrollMonomial>,
}

impl ScrollCurve {
    pub fn new(e: u32, monomials: impl IntoIterator<Item = ScrollMonomial>) -> Self {
        ScrollCurve { e, monomials: monomials.into_iter().collect() }
    }

    /// The common bidegree `(a, b)` of the monomials.
    pub fn bidegree(&self) -> Result<(u64, u64), CurveError> {
        let mut iter = self.monomials.iter();
        let first = iter.next().ok_or(CurveError::Empty)?;
        let degree = first.bidegree(self.e);
        for m in iter {
            if m.bidegree(self.e) != degree {
                return Err(CurveError::Inhomogeneous { first: first.to_string(), second: m.to_string() });
            }
        }
        Ok(degree)
    }

    /// Dehomogenise on the chart `t1 = 1, x2 = 1`; local coordinates are
    /// `(t2, x1)`, centred at the point `(1 : 0 ; 0 : 1)`.
    pub fn local_at_t1_x2_chart(&self) -> LocalPolynomial {
        LocalPolynomial::new(self.monomials.iter().map(|m| (m.t2, m.x1)))
    }
}

impl fmt::Display for ScrollCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.monomials.iter().map(ToString::to_string).collect();
        write!(f, "{} on F_{}", terms.join(" + "), self.e)
    }
}

/// The class `aΔ0 + bF` cut out by a homogeneous scroll polynomial.
pub fn scroll_class(curve: &ScrollCurve) -> Result<DivisorClass, CurveError> {
    let (a, b) = curve.bidegree()?;
    Ok(DivisorClass::hirzebruch_class(curve.e, BigInt::from(a), BigInt::from(b)))
}

/// Plane curve support: exponents of `X0^i X1^j X2^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneCurve {
    pub monomials: BTreeSet<[u64; 3]>,
}

impl PlaneCurve {
    pub fn new(monomials: impl IntoIterator<Item = [u64; 3]>) -> Self {
        PlaneCurve { monomials: monomials.into_iter().collect() }
    }

    pub fn degree(&self) -> Result<u64, CurveError> {
        let mut iter = self.monomials.iter();
        let first = iter.next().ok_or(CurveError::Empty)?;
        let d: u64 = first.iter().sum();
        for m in iter {
            if m.iter().sum::<u64>() != d {
                return Err(CurveError::Inhomogeneous { first: format!("{first:?}"), second: format!("{m:?}") });
            }
        }
        Ok(d)
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .monomials
            .iter()
            .map(|m| {
                let parts: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|&(_, &p)| p > 0)
                    .map(|(i, &p)| if p == 1 { format!("X{i}") } else { format!("X{i}^{p}") })
                    .collect();
                parts.join(" ")
            })
            .collect();
        write!(f, "{} on P2", terms.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "curve", rename_all = "snake_case")]
pub enum CurveEquation {
    Scroll(ScrollCurve),
    Plane(PlaneCurve),
}

/// Order-3 automorphisms the constructions lift to the covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveAction {
    /// `(t1 : t2 ; x1 : x2) ↦ (ζ t1 : t2 ; x1 : x2)` with `ζ` a primitive cube root of unity.
    ScaleT1ByPrimitiveRoot,
    /// `(X0 : X1 : X2) ↦ (X2 : X0 : X1)`.
    PermutePlaneCoordinates,
}

/// Whether the curve is carried to itself by the action.
///
/// Scaling `t1` multiplies a monomial by `ζ^c1`, so the equation is
/// preserved up to a global character iff all `t1` exponents agree mod 3.
/// The coordinate permutation sends `X0^i X1^j X2^k` to `X0^j X1^k X2^i`.
/// An action that does not apply to the curve's ambient surface gives `false`.
pub fn invariance_check(curve: &CurveEquation, action: CurveAction) -> bool {
    match (curve, action) {
        (CurveEquation::Scroll(c), CurveAction::ScaleT1ByPrimitiveRoot) => {
            let mut residues = c.monomials.iter().map(|m| m.t1 % 3);
            match residues.next() {
                Some(r) => residues.all(|s| s == r),
                None => true,
            }
        }
        (CurveEquation::Plane(c), CurveAction::PermutePlaneCoordinates) => c
            .monomials
            .iter()
            .all(|&[i, j, k]| c.monomials.contains(&[j, k, i])),
        _ => false,
    }
}

/// A polynomial support in local coordinates `(a, b)` centred at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalPolynomial {
    pub monomials: BTreeSet<(u64, u64)>,
}

impl LocalPolynomial {
    pub fn new(monomials: impl IntoIterator<Item = (u64, u64)>) -> Self {
        LocalPolynomial { monomials: monomials.into_iter().collect() }
    }
}

/// A simple (ADE) curve singularity. Only the `A_n` series occurs here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdeLabel {
    A(u64),
}

impl fmt::Display for AdeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeLabel::A(n) => write!(f, "A_{n}"),
        }
    }
}

/// Type of the germ `x² + x^m + y^p`.
///
/// For `m > 2` the term `x^m` is absorbed into `x²` by a unit change
/// `x ↦ x·sqrt(1 + x^{m-2})`; for `m = 2` the quadratic part is `2x²`.
/// Either way the germ is `x² + y^p`, an `A_{p-1}` point.
pub fn classify_germ(m: u64, p: u64) -> Result<AdeLabel, CurveError> {
    if m < 2 || p < 2 {
        return Err(CurveError::UnsupportedGerm { m, p });
    }
    Ok(AdeLabel::A(p - 1))
}

/// What the origin looks like on a local curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GermShape {
    NotOnCurve,
    Smooth,
    /// `a² + a^m + b^p` (or with the roles of `a, b` swapped).
    SquarePlusPowers { m: u64, p: u64 },
    Unrecognised,
}

/// Read off the shape of a local equation at the origin, assuming generic
/// nonzero coefficients on its monomials.
pub fn germ_shape(local: &LocalPolynomial) -> GermShape {
    let mons = &local.monomials;
    if mons.contains(&(0, 0)) {
        return GermShape::NotOnCurve;
    }
    if mons.contains(&(1, 0)) || mons.contains(&(0, 1)) {
        return GermShape::Smooth;
    }
    if mons.len() != 3 {
        return GermShape::Unrecognised;
    }
    let pure_a: Vec<u64> = mons.iter().filter(|&&(_, j)| j == 0).map(|&(i, _)| i).collect();
    let pure_b: Vec<u64> = mons.iter().filter(|&&(i, _)| i == 0).map(|&(_, j)| j).collect();
    match (pure_a.as_slice(), pure_b.as_slice()) {
        ([2, m], [p]) | ([p], [2, m]) => GermShape::SquarePlusPowers { m: *m, p: *p },
        _ => GermShape::Unrecognised,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residue_two_curve(k: u64) -> ScrollCurve {
        ScrollCurve::new(
            (2 * k + 2) as u32,
            [
                ScrollMonomial::new(0, 0, 5, 0),
                ScrollMonomial::new(10 * k + 10, 0, 0, 5),
                ScrollMonomial::new(0, 10 * k + 10, 0, 5),
            ],
        )
    }

    #[test]
    fn quintic_class() {
        for k in 2..6 {
            let class = scroll_class(&residue_two_curve(k)).unwrap();
            let e = (2 * k + 2) as u32;
            assert_eq!(class, DivisorClass::hirzebruch_class(e, 5, BigInt::from(10 * k + 10)));
        }
    }

    #[test]
    fn coordinate_curves() {
        for e in 0..5 {
            let negative = ScrollCurve::new(e, [ScrollMonomial::new(0, 0, 0, 1)]);
            assert_eq!(scroll_class(&negative).unwrap(), DivisorClass::hirzebruch_class(e, 1, 0));
            let positive = ScrollCurve::new(e, [ScrollMonomial::new(0, 0, 1, 0)]);
            assert_eq!(scroll_class(&positive).unwrap(), DivisorClass::hirzebruch_class(e, 1, e));
        }
        let fiber = ScrollCurve::new(1, [ScrollMonomial::new(1, 0, 0, 0), ScrollMonomial::new(0, 1, 0, 0)]);
        assert_eq!(scroll_class(&fiber).unwrap(), DivisorClass::hirzebruch_class(1, 0, 1));
    }

    #[test]
    fn inhomogeneous_and_empty_curves() {
        let bad = ScrollCurve::new(1, [ScrollMonomial::new(1, 0, 0, 0), ScrollMonomial::new(0, 0, 1, 0)]);
        assert!(matches!(scroll_class(&bad), Err(CurveError::Inhomogeneous { .. })));
        assert_eq!(scroll_class(&ScrollCurve::new(1, [])), Err(CurveError::Empty));
        // Same class but different t-distribution is still homogeneous.
        let ok = ScrollCurve::new(1, [ScrollMonomial::new(1, 0, 0, 1), ScrollMonomial::new(0, 0, 1, 0)]);
        assert_eq!(scroll_class(&ok).unwrap(), DivisorClass::hirzebruch_class(1, 1, 1));
    }

    #[test]
    fn t1_scaling_invariance() {
        let k = 3;
        let c = CurveEquation::Scroll(ScrollCurve::new(
            8,
            [
                ScrollMonomial::new(0, 0, 5, 0),
                ScrollMonomial::new(10 * k + 9, 1, 0, 5),
                ScrollMonomial::new(0, 10 * k + 10, 0, 5),
            ],
        ));
        assert!(invariance_check(&c, CurveAction::ScaleT1ByPrimitiveRoot));
        assert!(!invariance_check(&c, CurveAction::PermutePlaneCoordinates));

        let x1 = CurveEquation::Scroll(ScrollCurve::new(4, [ScrollMonomial::new(0, 0, 1, 0)]));
        assert!(invariance_check(&x1, CurveAction::ScaleT1ByPrimitiveRoot));

        let broken = CurveEquation::Scroll(ScrollCurve::new(
            4,
            [ScrollMonomial::new(0, 0, 1, 0), ScrollMonomial::new(1, 3, 0, 1)],
        ));
        assert!(!invariance_check(&broken, CurveAction::ScaleT1ByPrimitiveRoot));
    }

    #[test]
    fn fermat_dectic_is_permutation_invariant() {
        let b = CurveEquation::Plane(PlaneCurve::new([[10, 0, 0], [0, 10, 0], [0, 0, 10]]));
        assert!(invariance_check(&b, CurveAction::PermutePlaneCoordinates));
        assert!(!invariance_check(&b, CurveAction::ScaleT1ByPrimitiveRoot));
        let lopsided = CurveEquation::Plane(PlaneCurve::new([[10, 0, 0], [0, 10, 0], [1, 0, 9]]));
        assert!(!invariance_check(&lopsided, CurveAction::PermutePlaneCoordinates));
        if let CurveEquation::Plane(p) = b {
            assert_eq!(p.degree().unwrap(), 10);
        }
    }

    #[test]
    fn germ_types() {
        assert_eq!(classify_germ(20, 5).unwrap(), AdeLabel::A(4));
        assert_eq!(classify_germ(2, 2).unwrap(), AdeLabel::A(1));
        assert_eq!(classify_germ(7, 3).unwrap(), AdeLabel::A(2));
        assert!(classify_germ(1, 5).is_err());
        assert!(classify_germ(4, 1).is_err());
        assert_eq!(AdeLabel::A(4).to_string(), "A_4");
    }

    #[test]
    fn germ_shapes_on_the_t1_x2_chart() {
        // k ≡ 1 (3): x1^5 + x2^5 t1^(10k+8) t2^2 + x2^5 t2^(10k+10) at (1:0;0:1)
        let k = 4;
        let c = ScrollCurve::new(
            10,
            [
                ScrollMonomial::new(0, 0, 5, 0),
                ScrollMonomial::new(10 * k + 8, 2, 0, 5),
                ScrollMonomial::new(0, 10 * k + 10, 0, 5),
            ],
        );
        assert_eq!(germ_shape(&c.local_at_t1_x2_chart()), GermShape::SquarePlusPowers { m: 50, p: 5 });
        assert_eq!(germ_shape(&residue_two_curve(2).local_at_t1_x2_chart()), GermShape::NotOnCurve);
        let linear = LocalPolynomial::new([(1, 0), (0, 5), (51, 0)]);
        assert_eq!(germ_shape(&linear), GermShape::Smooth);
        assert_eq!(germ_shape(&LocalPolynomial::new([(2, 2), (0, 5), (7, 0)])), GermShape::Unrecognised);
    }
}
