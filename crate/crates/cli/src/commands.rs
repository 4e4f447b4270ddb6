use horikawa_core::catalog::{
    admissible, build_component_one, build_component_two, build_stable, classify, epsilon_family, AdmissiblePair,
    BuildOptions, ConstructionRecipe, Pipeline, StableConstruction,
};
use horikawa_core::covers::GeometricGenus;
use horikawa_core::verify::{run, VerificationPlan};

use crate::report::{
    ConstructionEntry, ConstructionLine, EnumerationRow, LineEntry, Payload, Report, Status, TrailEntry,
};
use crate::scenario::CommandSpec;

const ADMISSIBILITY: &str = "chi >= 1, K^2 >= 1, 2chi - 6 <= K^2 <= 9chi";
const COMPONENTS: &str = "two components on K^2 = 2chi - 6 exactly when K^2 is divisible by 8";
const Z2_FORMULAS: &str = "K = f*(K_Y + L), K^2 = 2(K_Y + L)^2, chi = 2 + L(K_Y + L)/2";
const Z3_FORMULAS: &str = "3K = f*(3K_Y + 2D1 + 2D2), chi = 3 + L(K_Y + L)/2 + M(K_Y + M)/2";
const STABLE_FORMULAS: &str = "K^2 gains 1/3 per contracted (-3)-curve; h0(2K) = chi + K^2 - 1/3 per 1/3(1,1) point";
const BOUND: &str = "3K^2 <= 8chi - 16";

fn report(command: &CommandSpec, opts: &BuildOptions, status: Status, payload: Payload, trail: Vec<TrailEntry>, references: &[&str]) -> Report {
    Report {
        command: command.clone(),
        assumptions: opts.assumptions,
        status,
        payload,
        trail,
        references: references.iter().map(|s| s.to_string()).collect(),
    }
}

fn error_report(command: &CommandSpec, opts: &BuildOptions, message: String, references: &[&str]) -> Report {
    report(command, opts, Status::Failed, Payload::Error { message }, Vec::new(), references)
}

/// Run a command. `Err` is a usage problem rather than a mathematical one.
pub fn execute(command: &CommandSpec, opts: &BuildOptions) -> Result<Report, String> {
    Ok(match command {
        CommandSpec::Classify { k_squared, chi } => cmd_classify(command, opts, *k_squared, *chi),
        CommandSpec::ConstructComponentOne { chi } => match build_component_one(*chi, opts) {
            Ok(recipe) => recipe_report(command, opts, recipe),
            Err(e) => error_report(command, opts, e.to_string(), &[Z3_FORMULAS]),
        },
        CommandSpec::ConstructComponentTwo { k } => match build_component_two(*k, opts) {
            Ok(recipe) => recipe_report(command, opts, recipe),
            Err(e) => error_report(command, opts, e.to_string(), &[Z2_FORMULAS]),
        },
        CommandSpec::ConstructStable { chi, epsilon: None } => match build_stable(*chi, opts) {
            Ok(s) => stable_report(command, opts, s),
            Err(e) => error_report(command, opts, e.to_string(), &[STABLE_FORMULAS]),
        },
        CommandSpec::ConstructStable { chi, epsilon: Some(eps) } => match epsilon_family(*chi, *eps) {
            Ok(record) => {
                let trail = vec![
                    TrailEntry::new("K^2", &record.record.k_squared, "contract_minus3: 2chi - 6 + (3 epsilon)/3"),
                    TrailEntry::new("h0(2K)", &record.bicanonical_sections, "chi + K^2 + rr_correction"),
                    TrailEntry::new("3K^2", &record.three_k_squared, "3 * K^2"),
                    TrailEntry::new("bound", &record.bound, "8chi - 16"),
                ];
                let status = if record.bound_holds { Status::Ok } else { Status::Failed };
                report(command, opts, status, Payload::Epsilon { record }, trail, &[STABLE_FORMULAS, BOUND])
            }
            Err(e) => error_report(command, opts, e.to_string(), &[BOUND]),
        },
        CommandSpec::Enumerate { chi, chi_max } => cmd_enumerate(command, opts, *chi, *chi_max),
        CommandSpec::VerifyPaper { chi_max, k_max, inject_fault } => {
            let mut plan = VerificationPlan::new(*chi_max, *k_max)?;
            if let Some(fault) = inject_fault {
                plan = plan.with_perturbation(*fault);
            }
            let result = run(&plan);
            let status = if result.passed { Status::Ok } else { Status::Failed };
            let trail = vec![TrailEntry::new(
                "checks",
                result.checks.len(),
                "verify::run over classification, sections, components I and II, stable and epsilon suites",
            )];
            report(command, opts, status, Payload::Verification { report: result }, trail, &[])
        }
    })
}

fn cmd_classify(command: &CommandSpec, opts: &BuildOptions, k_squared: i64, chi: i64) -> Report {
    let pair = AdmissiblePair { k_squared, chi };
    let ok = admissible(k_squared, chi);
    let mut trail = vec![TrailEntry::new("admissible", ok, ADMISSIBILITY)];
    if !ok {
        let payload = Payload::Classification {
            pair,
            admissible: false,
            on_line: false,
            info: None,
            explanation: format!("inadmissible: need {ADMISSIBILITY}"),
        };
        return report(command, opts, Status::Failed, payload, trail, &[ADMISSIBILITY]);
    }
    let (on_line, info, explanation) = match classify(k_squared, chi) {
        Ok(info) => {
            trail.push(TrailEntry::new("component count", info.count, "K^2 mod 8 on the line K^2 = 2chi - 6"));
            (true, Some(info), "on the line K^2 = 2chi - 6".to_string())
        }
        Err(_) => (false, None, "admissible, not on the line K^2 = 2chi - 6; no component data".to_string()),
    };
    let payload = Payload::Classification { pair, admissible: true, on_line, info, explanation };
    report(command, opts, Status::Ok, payload, trail, &[ADMISSIBILITY, COMPONENTS])
}

fn recipe_trail(recipe: &ConstructionRecipe) -> Vec<TrailEntry> {
    let triple = recipe.cover.degree() == 3;
    let mut trail = Vec::new();
    if let Some(p) = &recipe.parameters {
        trail.push(TrailEntry::new("(e, alpha, beta)", format!("({}, {}, {})", p.e, p.alpha, p.beta), "pick_parameters: chi mod 3"));
        trail.push(TrailEntry::new("blown-up points", recipe.cover.base().exceptional_count(), "2alpha + 2beta - 4e"));
    }
    trail.push(TrailEntry::new(
        "L",
        recipe.cover.line_class(),
        if triple { "derive_line_class: (D1 + 2D2)/3" } else { "derive_line_class: B/2" },
    ));
    trail.push(TrailEntry::new(
        "K^2",
        &recipe.report.k_squared,
        if triple { "(3K_Y + 2D1 + 2D2)^2 / 3" } else { "2(K_Y + L)^2" },
    ));
    trail.push(TrailEntry::new(
        "chi",
        &recipe.report.chi,
        if triple { "3 + L(K_Y + L)/2 + M(K_Y + M)/2" } else { "2 + L(K_Y + L)/2" },
    ));
    let p_g = match &recipe.report.p_g {
        GeometricGenus::Value(v) => v.to_string(),
        GeometricGenus::UnavailableVirtual => "unavailable".into(),
    };
    trail.push(TrailEntry::new("p_g", p_g, if triple { "h0(K_Y + L) + h0(K_Y + M)" } else { "h0(K_Y + L)" }));
    trail.push(TrailEntry::new(
        "canonical multiple",
        &recipe.report.canonical_multiple.class,
        if triple { "3K_Y + 2D1 + 2D2" } else { "K_Y + L" },
    ));
    trail
}

fn recipe_report(command: &CommandSpec, opts: &BuildOptions, recipe: ConstructionRecipe) -> Report {
    let trail = recipe_trail(&recipe);
    let status = if recipe.all_hold() { Status::Ok } else { Status::Failed };
    let references: &[&str] = match recipe.pipeline {
        Pipeline::ComponentTwo => &[Z2_FORMULAS, COMPONENTS],
        _ => &[Z3_FORMULAS, COMPONENTS],
    };
    report(command, opts, status, Payload::Construction { recipe: Box::new(recipe) }, trail, references)
}

fn stable_report(command: &CommandSpec, opts: &BuildOptions, s: StableConstruction) -> Report {
    let mut trail = recipe_trail(&s.recipe);
    trail.retain(|t| t.quantity != "K^2" && t.quantity != "chi");
    trail.push(TrailEntry::new("resolved K^2", &s.resolution.resolved.k_squared, "z3_invariants on the resolution"));
    trail.push(TrailEntry::new("K^2", &s.record.k_squared, "contract_minus3: resolved K^2 + 3/3"));
    trail.push(TrailEntry::new("chi", &s.record.chi, "unchanged by contraction"));
    trail.push(TrailEntry::new("h0(2K)", &s.bicanonical_sections, "chi + K^2 + rr_correction"));
    let status = if s.recipe.all_hold() && s.record.ample_canonical { Status::Ok } else { Status::Failed };
    report(command, opts, status, Payload::Stable { construction: Box::new(s) }, trail, &[Z3_FORMULAS, STABLE_FORMULAS])
}

fn entry(name: String, recipe: Result<ConstructionRecipe, impl std::fmt::Display>) -> ConstructionEntry {
    match recipe {
        Ok(r) => ConstructionEntry { name, verified: r.all_hold(), ledger: r.ledger },
        Err(_) => ConstructionEntry { name, verified: false, ledger: Default::default() },
    }
}

fn cmd_enumerate(command: &CommandSpec, opts: &BuildOptions, start: i64, end: i64) -> Report {
    let mut rows = Vec::new();
    for chi in start..=end {
        let horikawa_line = (chi >= 4).then(|| {
            let k_squared = 2 * chi - 6;
            let component_count = classify(k_squared, chi).map(|i| i.count).unwrap_or(0);
            let mut constructions = vec![entry("component-I".into(), build_component_one(chi, opts))];
            if chi % 4 == 3 {
                let k = (chi - 3) / 4;
                constructions.push(entry(format!("component-II (k = {k})"), build_component_two(k, opts)));
            }
            LineEntry { k_squared, component_count, constructions }
        });
        let stable_line = (chi >= 3).then(|| ConstructionLine {
            k_squared: 2 * chi - 5,
            construction: entry("stable".into(), build_stable(chi, opts).map(|s| s.recipe)),
        });
        rows.push(EnumerationRow { chi, horikawa_line, stable_line });
    }
    let all_verified = rows.iter().all(|r| {
        r.horikawa_line.iter().flat_map(|l| &l.constructions).all(|c| c.verified)
            && r.stable_line.iter().all(|l| l.construction.verified)
    });
    let trail = vec![TrailEntry::new("rows", rows.len(), "one row per chi in the range")];
    let status = if all_verified { Status::Ok } else { Status::Failed };
    report(command, opts, status, Payload::Enumeration { rows }, trail, &[COMPONENTS])
}
