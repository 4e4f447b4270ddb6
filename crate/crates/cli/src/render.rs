//! Plain-text rendering of reports.

use std::fmt::Write;

use horikawa_core::catalog::{
    AmplenessVerdict, Certificate, ComponentInfo, ConstructionRecipe, EpsilonRecord, NefVerdict, StableConstruction,
};
use horikawa_core::covers::Minimality;
use horikawa_core::verify::VerificationReport;

use crate::report::{EnumerationRow, Payload, Report, Status};

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    match &report.payload {
        Payload::Classification { pair, admissible, info, explanation, .. } => {
            let _ = writeln!(out, "(K^2, chi) = ({}, {})", pair.k_squared, pair.chi);
            let _ = writeln!(out, "{}", if *admissible { "admissible" } else { "not admissible" });
            let _ = writeln!(out, "{explanation}");
            if let Some(info) = info {
                components(&mut out, info);
            }
        }
        Payload::Construction { recipe } => construction(&mut out, recipe),
        Payload::Stable { construction } => stable(&mut out, construction),
        Payload::Epsilon { record } => epsilon(&mut out, record),
        Payload::Enumeration { rows } => enumeration(&mut out, rows),
        Payload::Verification { report } => verification(&mut out, report),
        Payload::Error { message } => {
            let _ = writeln!(out, "error: {message}");
        }
    }
    if report.status == Status::Failed && !matches!(report.payload, Payload::Error { .. } | Payload::Verification { .. }) {
        let _ = writeln!(out, "status: failed");
    }
    out
}

fn components(out: &mut String, info: &ComponentInfo) {
    let _ = writeln!(out, "components: {}", info.count);
    for c in &info.components {
        let images: Vec<String> = c.canonical_images.iter().map(ToString::to_string).collect();
        if images.is_empty() {
            let _ = writeln!(out, "  {}", c.label);
        } else {
            let _ = writeln!(out, "  {}: canonical image {}", c.label, images.join(", "));
        }
    }
}

fn minimality(m: Minimality) -> &'static str {
    match m {
        Minimality::NefCertified => "K nef (certified)",
        Minimality::AmpleCertified => "K ample (certified)",
        Minimality::Asserted => "K nef (asserted)",
        Minimality::Unknown => "unknown",
    }
}

fn certificate_line(out: &mut String, c: &Certificate) {
    let mark = if c.holds() { "ok" } else { "FAIL" };
    let detail = match c {
        Certificate::ClassIdentity { computed, expected, .. } => format!("{computed} = {expected}"),
        Certificate::NumberIdentity { computed, expected, .. } => format!("{computed} = {expected}"),
        Certificate::Nef(n) => match &n.verdict {
            NefVerdict::Certified => format!("certified with auxiliary {}", n.auxiliary),
            NefVerdict::Asserted { gap } => format!("asserted: {gap}"),
        },
        Certificate::Ampleness(a) => format!("{:?}, D^2 = {}", a.verdict, a.self_intersection),
        Certificate::Invariance { action, holds, .. } => format!("{action:?}: {holds}"),
        Certificate::Germ { shape, label, .. } => match label {
            Some(l) => format!("{l}"),
            None => format!("{shape:?}"),
        },
        Certificate::CanonicalImage { info, .. } => match &info.image {
            Some(s) => format!("image {s}, {} sections", info.sections.value),
            None => "image not determined".into(),
        },
        Certificate::Parity { self_intersections, verdict } => format!("{self_intersections:?} -> {verdict:?}"),
    };
    let _ = writeln!(out, "  [{mark}] {}: {detail}", c.name());
}

fn construction(out: &mut String, r: &ConstructionRecipe) {
    let _ = writeln!(out, "target (K^2, chi) = ({}, {})", r.target.k_squared, r.target.chi);
    if let Some(p) = &r.parameters {
        let _ = writeln!(out, "parameters: e = {}, alpha = {}, beta = {}", p.e, p.alpha, p.beta);
    }
    let _ = writeln!(out, "base: {}", r.cover.base());
    for (i, d) in r.cover.branch().iter().enumerate() {
        let _ = writeln!(out, "branch {}: {d}", i + 1);
    }
    let _ = writeln!(out, "L: {}", r.cover.line_class());
    let _ = writeln!(out, "K^2 = {}, chi = {}, p_g = {}", r.report.k_squared, r.report.chi, r.report.p_g);
    let _ = writeln!(out, "minimality: {}", minimality(r.report.minimality));
    let _ = writeln!(out, "component: {}", r.component_claim);
    if r.ledger.canonical_count > 0 || r.ledger.third11_count > 0 {
        let _ = writeln!(out, "singularities: {} x 1/3(1,1), {} ADE", r.ledger.third11_count, r.ledger.canonical_count);
    }
    let _ = writeln!(out, "certificates:");
    for c in &r.certificates {
        certificate_line(out, c);
    }
    for note in r.notes.iter().chain(&r.report.warnings) {
        let _ = writeln!(out, "note: {note}");
    }
}

fn stable(out: &mut String, s: &StableConstruction) {
    construction(out, &s.recipe);
    let _ = writeln!(out, "h0(2K) = {}", s.bicanonical_sections);
    let _ = writeln!(out, "smoothable: {}", if s.record.smoothable { "yes" } else { "no" });
    for c in &s.recipe.certificates {
        if let Certificate::Ampleness(a) = c {
            if a.verdict == AmplenessVerdict::ExceptionalCaseExcluded {
                let _ = writeln!(out, "ampleness: exceptional case (negative section) excluded");
            }
            for ray in &a.boundary {
                let state = if ray.excluded { "excluded" } else { "open" };
                let _ = writeln!(out, "boundary D.C = 0 on {}D0 + {}F: {state} ({})", ray.a, ray.b, ray.reason);
            }
        }
    }
}

fn epsilon(out: &mut String, r: &EpsilonRecord) {
    let _ = writeln!(out, "epsilon = {}: K^2 = {}, chi = {}", r.epsilon, r.record.k_squared, r.record.chi);
    let _ = writeln!(out, "singularities: {} x 1/3(1,1)", r.record.ledger.third11_count);
    let _ = writeln!(out, "h0(2K) = {}", r.bicanonical_sections);
    let relation = if r.bound_tight { "=" } else if r.bound_holds { "<" } else { ">" };
    let _ = writeln!(out, "3K^2 = {} {relation} 8chi - 16 = {}", r.three_k_squared, r.bound);
}

fn enumeration(out: &mut String, rows: &[EnumerationRow]) {
    let _ = writeln!(out, "{:>6}  {:>6}  {:>10}  {:<40}  {:>6}  stable", "chi", "K^2", "components", "constructions", "K^2");
    for row in rows {
        let (k2, count, names) = match &row.horikawa_line {
            Some(l) => {
                let names: Vec<String> = l
                    .constructions
                    .iter()
                    .map(|c| {
                        let mark = if c.verified { "" } else { " (unverified)" };
                        let ade = if c.ledger.canonical_count > 0 { format!(" [{} ADE]", c.ledger.canonical_count) } else { String::new() };
                        format!("{}{ade}{mark}", c.name)
                    })
                    .collect();
                (l.k_squared.to_string(), l.component_count.to_string(), names.join(", "))
            }
            None => ("-".into(), "-".into(), "-".into()),
        };
        let (sk2, sdesc) = match &row.stable_line {
            Some(s) => {
                let mark = if s.construction.verified { "" } else { " (unverified)" };
                (s.k_squared.to_string(), format!("{} x 1/3(1,1){mark}", s.construction.ledger.third11_count))
            }
            None => ("-".into(), "-".into()),
        };
        let _ = writeln!(out, "{:>6}  {:>6}  {:>10}  {:<40}  {:>6}  {sdesc}", row.chi, k2, count, names, sk2);
    }
}

fn verification(out: &mut String, r: &VerificationReport) {
    for c in &r.checks {
        let mark = if c.passed { "pass" } else { "FAIL" };
        let _ = writeln!(out, "[{mark}] {}  ({})  {}", c.id, c.anchor, c.detail);
    }
    let passed = r.checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "{passed}/{} checks passed", r.checks.len());
    if let Some(id) = &r.first_failure {
        let anchor = r.checks.iter().find(|c| &c.id == id).map(|c| c.anchor.as_str()).unwrap_or("");
        let _ = writeln!(out, "first failure: {id} ({anchor})");
    }
}
