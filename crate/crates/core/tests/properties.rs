use horikawa_core::catalog::{admissible, classify, CoefficientSlot, Perturbation, PerturbedClass, Pipeline};
use horikawa_core::covers::{z2_invariants, CoverSpec, GeometricGenus};
use horikawa_core::lattice::{blow_up, h0, hirzebruch_section_count, pullback, DivisorClass, SurfaceModel};
use horikawa_core::num::ExactRational;
use horikawa_core::stable::{contract_minus3, h0_2k};
use num_bigint::BigInt;
use proptest::prelude::*;

fn surface() -> impl Strategy<Value = SurfaceModel> {
    let minimal = prop_oneof![Just(SurfaceModel::plane()), (0u32..=8).prop_map(SurfaceModel::hirzebruch)];
    (minimal, proptest::collection::vec(1u32..5, 0..3)).prop_map(|(mut s, steps)| {
        for n in steps {
            s = blow_up(&s, n, true).unwrap();
        }
        s
    })
}

fn class() -> impl Strategy<Value = DivisorClass> {
    surface().prop_flat_map(|s| {
        let r = s.picard_rank();
        proptest::collection::vec(-1_000i64..1_000, r).prop_map(move |c| DivisorClass::from_ints(s.clone(), &c).unwrap())
    })
}

proptest! {
    #[test]
    fn rational_json_round_trip(n in any::<i64>(), d in 1i64..i64::MAX, scale in 0u32..3) {
        let mut big = BigInt::from(n);
        for _ in 0..scale {
            big *= BigInt::from(i64::MAX);
        }
        let r = ExactRational::new(big, d).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<ExactRational>(&text).unwrap(), r);
    }

    #[test]
    fn class_json_round_trip(c in class()) {
        let text = serde_json::to_string(&c).unwrap();
        prop_assert_eq!(serde_json::from_str::<DivisorClass>(&text).unwrap(), c);
    }

    #[test]
    fn self_intersection_is_quadratic(c in class(), k in -20i64..20) {
        prop_assert_eq!(c.scale(k).self_intersection(), c.self_intersection() * BigInt::from(k * k));
    }

    #[test]
    fn imposing_points_never_adds_sections(e in 0u32..6, a in 0i64..8, b in 0i64..40, n in 1u32..12) {
        let base = DivisorClass::hirzebruch_class(e, a, b);
        let up = blow_up(&SurfaceModel::hirzebruch(e), n, true).unwrap();
        let through = &pullback(&up, &base).unwrap() - &DivisorClass::outer_exceptional_sum(&up).unwrap();
        let before = h0(&base).unwrap().value;
        let after = h0(&through).unwrap().value;
        prop_assert!(after <= before);
        prop_assert!(after >= &before - BigInt::from(n));
        prop_assert_eq!(h0(&pullback(&up, &base).unwrap()).unwrap().value, before);
    }

    #[test]
    fn section_count_grows_with_fiber_degree(e in 0u32..8, a in 0i64..10, b in 0i64..60) {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        prop_assert!(hirzebruch_section_count(e, &a, &b) <= hirzebruch_section_count(e, &a, &(&b + 1)));
    }

    #[test]
    fn plane_double_covers_satisfy_noether(d in 1i64..60) {
        // Branch of degree 2d; e(X) = 2·3 - e(B) with e(B) = -2d(2d - 3).
        let spec = CoverSpec::double(SurfaceModel::plane(), DivisorClass::plane_class(2 * d)).unwrap();
        let r = z2_invariants(&spec).unwrap();
        let k2 = r.k_squared.to_integer().unwrap();
        let euler = BigInt::from(6 + 2 * d * (2 * d - 3));
        prop_assert_eq!(BigInt::from(12) * &r.chi, k2 + euler);
        if let GeometricGenus::Value(p) = r.p_g {
            prop_assert!(p < r.chi);
        }
    }

    #[test]
    fn contraction_bookkeeping(chi in 1i64..500, k2 in -10i64..1000, count in 1u64..60) {
        let mut r = contract_minus3(chi, k2, count).unwrap();
        let expected = ExactRational::integer(k2) + ExactRational::new(count, 3).unwrap();
        prop_assert_eq!(&r.k_squared, &expected);
        prop_assert_eq!(h0_2k(&mut r).unwrap(), BigInt::from(chi + k2));
        prop_assert!(r.in_component_without_canonical_models);
    }

    #[test]
    fn classification_agrees_with_admissibility(k2 in -20i64..400, chi in -5i64..100) {
        match classify(k2, chi) {
            Ok(info) => {
                prop_assert!(admissible(k2, chi));
                prop_assert_eq!(k2, 2 * chi - 6);
                prop_assert_eq!(info.count == 2, k2 % 8 == 0);
            }
            Err(_) => prop_assert!(!admissible(k2, chi) || k2 != 2 * chi - 6),
        }
    }

    #[test]
    fn perturbation_changes_exactly_one_coefficient(c in class(), slot in 0usize..4) {
        let slot = match slot {
            0 => CoefficientSlot::Leading,
            1 => CoefficientSlot::Fiber,
            j => CoefficientSlot::Exceptional(j - 1),
        };
        let p = Perturbation::new(Pipeline::Stable, PerturbedClass::FirstBranch, slot);
        let changed = p.apply(Pipeline::Stable, PerturbedClass::FirstBranch, c.clone());
        let diffs = c.coeffs().iter().zip(changed.coeffs()).filter(|(x, y)| x != y).count();
        prop_assert!(diffs <= 1);
        let applicable = match slot {
            CoefficientSlot::Leading => true,
            CoefficientSlot::Fiber => c.surface().minimal_model().picard_rank() == 2,
            CoefficientSlot::Exceptional(j) => j <= c.surface().exceptional_count(),
        };
        prop_assert_eq!(diffs == 1, applicable);
    }
}
