//! A deterministic sweep over every construction with independent
//! cross-checks: Noether's formula from topological Euler numbers,
//! monomial enumeration for section counts, and the classification table.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::catalog::{
    build_component_one, build_component_two, build_stable, classify, epsilon_family, pick_parameters, BuildOptions,
    ComponentLabel, ConstructionRecipe, Perturbation,
};
use crate::covers::CoverSpec;
use crate::lattice::{canonical_class, hirzebruch_section_count, intersect, DivisorClass};

pub const MIN_CHI_MAX: i64 = 6;
pub const MIN_K_MAX: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationPlan {
    pub chi_max: i64,
    pub k_max: i64,
    pub perturbation: Option<Perturbation>,
}

impl VerificationPlan {
    pub fn new(chi_max: i64, k_max: i64) -> Result<Self, String> {
        if chi_max < MIN_CHI_MAX {
            return Err(format!("chi-max must be at least {MIN_CHI_MAX}, got {chi_max}"));
        }
        if k_max < MIN_K_MAX {
            return Err(format!("k-max must be at least {MIN_K_MAX}, got {k_max}"));
        }
        Ok(VerificationPlan { chi_max, k_max, perturbation: None })
    }

    pub fn with_perturbation(mut self, perturbation: Perturbation) -> Self {
        self.perturbation = Some(perturbation);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: String,
    /// The identity or statement being checked.
    pub anchor: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub plan: VerificationPlan,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
    pub first_failure: Option<String>,
}

struct Sink(Vec<CheckOutcome>);

impl Sink {
    fn push(&mut self, id: String, anchor: &str, passed: bool, detail: String) {
        self.0.push(CheckOutcome { id, anchor: anchor.to_string(), passed, detail });
    }
}

/// Euler number of a smooth rational surface: `ρ + 2`.
fn rational_euler(spec: &CoverSpec) -> BigInt {
    BigInt::from(spec.base().picard_rank() + 2)
}

/// `e(C) = -C·(C + K)` for a smooth curve.
fn curve_euler(class: &DivisorClass) -> BigInt {
    let k = canonical_class(class.surface());
    -intersect(class, &(class + &k)).expect("same surface")
}

/// `12χ = K² + e(X)` with `e(X) = d·e(Y) - (d - 1)·Σ e(B_i)` for a cover
/// branched over disjoint smooth curves.
fn noether_holds(recipe: &ConstructionRecipe) -> (bool, String) {
    let spec = &recipe.cover;
    let degree = BigInt::from(spec.degree());
    let branch_euler: BigInt = spec.branch().iter().map(curve_euler).sum();
    let euler = &degree * rational_euler(spec) - (&degree - 1) * branch_euler;
    let Some(k2) = recipe.report.k_squared.to_integer() else {
        return (false, format!("K^2 = {} is not an integer", recipe.report.k_squared));
    };
    let lhs = BigInt::from(12) * &recipe.report.chi;
    let rhs = &k2 + &euler;
    (lhs == rhs, format!("12chi = {lhs}, K^2 + e = {k2} + {euler} = {rhs}"))
}

fn branches_disjoint(spec: &CoverSpec) -> bool {
    match spec.branch() {
        [a, b] => intersect(a, b).map(|v| v == BigInt::from(0)).unwrap_or(false),
        _ => true,
    }
}

fn record_recipe(sink: &mut Sink, id: &str, anchor: &str, result: Result<ConstructionRecipe, String>) -> Option<ConstructionRecipe> {
    match result {
        Ok(recipe) => {
            let failed = recipe.failed_certificates();
            let detail = if failed.is_empty() {
                format!("{} certificates hold", recipe.certificates.len())
            } else {
                format!("failed: {}", failed.join(", "))
            };
            sink.push(id.to_string(), anchor, failed.is_empty(), detail);
            Some(recipe)
        }
        Err(err) => {
            sink.push(id.to_string(), anchor, false, err);
            None
        }
    }
}

pub fn run(plan: &VerificationPlan) -> VerificationReport {
    let mut sink = Sink(Vec::new());
    let opts = BuildOptions { perturbation: plan.perturbation, ..Default::default() };

    classification_checks(&mut sink, plan);
    section_count_checks(&mut sink);

    for chi in 4..=plan.chi_max {
        let id = format!("component-one/chi={chi}");
        let built = build_component_one(chi, &opts).map_err(|e| e.to_string());
        if let Some(recipe) = record_recipe(&mut sink, &id, "3K = (a + 2b - 3e - 6) q*F + D1~", built) {
            let (ok, detail) = noether_holds(&recipe);
            let ok = ok && branches_disjoint(&recipe.cover);
            sink.push(format!("{id}/noether"), "12chi = K^2 + e(X)", ok, detail);
            let expected = if (2 * chi - 6) % 8 == 0 { ComponentLabel::I } else { ComponentLabel::Unlabeled };
            sink.push(
                format!("{id}/component"),
                "odd fiber self-intersection places the surface in component I",
                recipe.component_claim == expected,
                format!("claimed {}", recipe.component_claim),
            );
        }
    }

    for k in 1..=plan.k_max {
        let id = format!("component-two/k={k}");
        let built = build_component_two(k, &opts).map_err(|e| e.to_string());
        if let Some(recipe) = record_recipe(&mut sink, &id, "2K = pi*(2D0 + (6k + 2)F)", built) {
            let (ok, detail) = noether_holds(&recipe);
            sink.push(format!("{id}/noether"), "12chi = K^2 + e(X)", ok, detail);
            sink.push(
                format!("{id}/component"),
                "canonical image matches component II",
                recipe.component_claim == ComponentLabel::II,
                format!("claimed {}", recipe.component_claim),
            );
        }
    }

    for chi in 3..=plan.chi_max {
        let id = format!("stable/chi={chi}");
        match build_stable(chi, &opts) {
            Ok(s) => {
                record_recipe(&mut sink, &id, "K ample, K^2 = 2chi - 5", Ok(s.recipe.clone()));
                let (ok, detail) = noether_holds(&ConstructionRecipe {
                    cover: s.resolution.resolved_spec.clone(),
                    report: s.resolution.resolved.clone(),
                    ..s.recipe.clone()
                });
                sink.push(format!("{id}/noether"), "12chi = K^2 + e(resolution)", ok, detail);
                sink.push(
                    format!("{id}/bicanonical"),
                    "h0(2K) = chi + K^2 - 1",
                    s.bicanonical_sections == BigInt::from(3 * chi - 6) && s.record.in_component_without_canonical_models,
                    format!("h0(2K) = {}", s.bicanonical_sections),
                );
            }
            Err(err) => sink.push(id, "K ample, K^2 = 2chi - 5", false, err.to_string()),
        }
    }

    for chi in 4..=plan.chi_max {
        let max_eps = (2 * chi + 2) / 3;
        let mut ok = true;
        let mut detail = String::new();
        for eps in 1..=max_eps {
            match epsilon_family(chi, eps) {
                Ok(r) => {
                    let tight_expected = 3 * eps == 2 * chi + 2;
                    if !r.bound_holds || r.bound_tight != tight_expected {
                        ok = false;
                        detail = format!("epsilon = {eps}: 3K^2 = {}, bound {}", r.three_k_squared, r.bound);
                    }
                }
                Err(err) => {
                    ok = false;
                    detail = err.to_string();
                }
            }
        }
        if ok {
            detail = format!("epsilon = 1..{max_eps}");
        }
        sink.push(format!("epsilon/chi={chi}"), "3K^2 <= 8chi - 16, equality iff 3 epsilon = 2chi + 2", ok, detail);
    }

    let checks = sink.0;
    let first_failure = checks.iter().find(|c| !c.passed).map(|c| c.id.clone());
    VerificationReport { plan: *plan, passed: first_failure.is_none(), first_failure, checks }
}

fn classification_checks(sink: &mut Sink, plan: &VerificationPlan) {
    for chi in 4..=plan.chi_max {
        let k2 = 2 * chi - 6;
        let id = format!("classify/chi={chi}");
        match classify(k2, chi) {
            Ok(info) => {
                let two = k2 % 8 == 0;
                let mut ok = info.count == if two { 2 } else { 1 };
                if two {
                    let first = info.images_of(ComponentLabel::I).len() as i64;
                    ok &= first == k2 / 8 + 1;
                    ok &= !info.images_of(ComponentLabel::II).is_empty();
                }
                sink.push(id, "two components exactly when K^2 is divisible by 8", ok, format!("{} component(s)", info.count));
            }
            Err(err) => sink.push(id, "two components exactly when K^2 is divisible by 8", false, err.to_string()),
        }
        match pick_parameters(chi) {
            Ok(p) => {
                let ok = (p.alpha + 2 * p.beta) % 3 == 0 && p.alpha + p.beta - 2 * i64::from(p.e) - 1 == chi;
                sink.push(format!("parameters/chi={chi}"), "chi = a + b - 2e - 1, 3 | a + 2b", ok, format!("{p:?}"));
            }
            Err(err) => sink.push(format!("parameters/chi={chi}"), "chi = a + b - 2e - 1", false, err.to_string()),
        }
    }
}

/// Count bihomogeneous monomials `t1^i t2^j x1^p x2^q` of class `aΔ0 + bF`
/// by brute force: `p + q = a` and `e·p + i + j = b`.
pub fn enumerate_monomials(e: u32, a: u64, b: u64) -> u64 {
    let mut count = 0;
    for p in 0..=a {
        for i in 0..=b {
            for j in 0..=b {
                if u64::from(e) * p + i + j == b {
                    count += 1;
                }
            }
        }
    }
    count
}

fn section_count_checks(sink: &mut Sink) {
    let mut mismatches = Vec::new();
    for e in 0..=4u32 {
        for a in 0..=4u64 {
            for b in 0..=16u64 {
                let formula = hirzebruch_section_count(e, &BigInt::from(a), &BigInt::from(b));
                if formula.to_u64() != Some(enumerate_monomials(e, a, b)) {
                    mismatches.push(format!("(e, a, b) = ({e}, {a}, {b})"));
                }
            }
        }
    }
    let detail = if mismatches.is_empty() { "e <= 4, a <= 4, b <= 16".to_string() } else { mismatches.join("; ") };
    sink.push("sections/enumeration".into(), "h0(aD0 + bF) counts monomials of bidegree (a, b)", mismatches.is_empty(), detail);
}
