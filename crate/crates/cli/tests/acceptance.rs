//! Acceptance suite: one pass/fail line per criterion.
//!
//! Every comparison is exact except the numeric oracle of criterion 7, whose
//! thresholds are pinned in the support module and printed below. The process
//! fails when a criterion fails, except for the documented unfolding gap in
//! criterion 6, which must match its recorded case list exactly.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use flatspin_cli::verify::{
    check_gallery, check_hyperelliptic, check_ngon, check_quotient, check_rotation, check_rotation_partner,
    check_stratum, check_triangulation_k, check_unfolding, family_cases, GALLERY_GENERA,
};
use flatspin_cli::Check;
use flatspin_core::{double_ngon, regular_ngon, unfold_right_triangle, CanonicalDecomposition, Family, FamilySpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TABLE_GENERA: std::ops::RangeInclusive<u32> = 2..=8;
const POLYGON_GENERA: std::ops::RangeInclusive<u32> = 2..=5;
const QUOTIENT_GENERA: std::ops::RangeInclusive<u32> = 2..=4;
const CRITERION_1_BUDGET: Duration = Duration::from_secs(60);
const CRITERION_4_BUDGET: Duration = Duration::from_secs(120);
const REGLUINGS: usize = 200;
const PRESENTATIONS: usize = 50;
const RANDOM_ELEMENTS: usize = 1000;

/// Cases where the minimal right-triangle unfolding is not the family
/// surface: every apolar case and the two cases with gcd(a, b, M) > 1.
fn documented_unfolding_gaps() -> Vec<String> {
    let mut cases: Vec<String> =
        family_cases(&[Family::Apolar], QUOTIENT_GENERA).iter().map(ToString::to_string).collect();
    cases.push("polar g=4 k=3".into());
    cases.push("dipolar g=3 k=2".into());
    cases
}

struct Line {
    number: u32,
    passed: bool,
    text: String,
}

fn report(number: u32, passed: bool, text: String) -> Line {
    println!("criterion {number} [{}] {text}", if passed { "PASS" } else { "FAIL" });
    Line { number, passed, text }
}

fn failed_cases<'a>(results: &'a [(FamilySpec, Check)]) -> Vec<&'a (FamilySpec, Check)> {
    results.iter().filter(|(_, c)| !c.passed).collect()
}

fn summary(results: &[(FamilySpec, Check)]) -> String {
    let bad = failed_cases(results);
    let mut s = format!("{}/{}", results.len() - bad.len(), results.len());
    if !bad.is_empty() {
        let names: Vec<String> = bad.iter().map(|(spec, _)| spec.to_string()).collect();
        s.push_str(&format!(" (failing: {})", names.join(", ")));
    }
    s
}

fn criterion_1() -> Line {
    let start = Instant::now();
    let results: Vec<(FamilySpec, Check)> = family_cases(&Family::ALL, TABLE_GENERA)
        .into_iter()
        .map(|spec| (spec, check_stratum(&spec, &spec.build().unwrap())))
        .collect();
    let elapsed = start.elapsed();
    let passed = failed_cases(&results).is_empty() && elapsed < CRITERION_1_BUDGET;
    report(1, passed, format!("table strata, g in 2..=8: {} exact, {:.1?} (budget {:?})", summary(&results), elapsed, CRITERION_1_BUDGET))
}

fn criteria_2_and_3() -> [Line; 2] {
    let mut rotations = Vec::new();
    let mut involutions = Vec::new();
    for spec in family_cases(&Family::ALL, TABLE_GENERA) {
        let cd = CanonicalDecomposition::of(&spec.build().unwrap());
        let [found, order] = check_rotation(&spec, &cd);
        let both = Check::new("rotation", found.passed && order.passed, format!("{}; {}", found.witness, order.witness));
        rotations.push((spec, both));
        involutions.push((spec, check_hyperelliptic(&spec, &cd)));
    }
    [
        report(
            2,
            failed_cases(&rotations).is_empty(),
            format!("eigenvalue symmetry found and σ^N = id, g in 2..=8: {}", summary(&rotations)),
        ),
        report(
            3,
            failed_cases(&involutions).is_empty(),
            format!("half-turn with exactly 2g+2 fixed points, g in 2..=8: {}", summary(&involutions)),
        ),
    ]
}

fn criterion_4() -> Line {
    let start = Instant::now();
    let mut results = Vec::new();
    for g in POLYGON_GENERA {
        for (family, k) in [(Family::Apolar, 1), (Family::Polar, 1), (Family::Polar, g), (Family::Dipolar, 1)] {
            let spec = FamilySpec::new(family, g, k).unwrap();
            let check = check_ngon(&spec, &spec.build().unwrap()).expect("a polygon partner exists");
            results.push((spec, check));
        }
    }
    let elapsed = start.elapsed();
    let passed = failed_cases(&results).is_empty() && elapsed < CRITERION_4_BUDGET;
    report(
        4,
        passed,
        format!("n-gon similarities with exact factors, g in 2..=5: {}, {:.1?} (budget {:?})", summary(&results), elapsed, CRITERION_4_BUDGET),
    )
}

fn criterion_5() -> Line {
    let results: Vec<(FamilySpec, Check)> = family_cases(&[Family::Apolar, Family::Dipolar], POLYGON_GENERA)
        .into_iter()
        .map(|spec| (spec, check_rotation_partner(&spec, &spec.build().unwrap()).unwrap()))
        .collect();
    report(5, failed_cases(&results).is_empty(), format!("k ↔ g−k+1 rotation with unit factor, g in 2..=5: {}", summary(&results)))
}

fn criterion_6() -> (Line, bool) {
    let (mut quotients, mut triangulations, mut unfoldings) = (Vec::new(), Vec::new(), Vec::new());
    for spec in family_cases(&Family::ALL, QUOTIENT_GENERA) {
        let s = spec.build().unwrap();
        let cd = CanonicalDecomposition::of(&s);
        quotients.push((spec, check_quotient(&spec, &s, &cd)));
        triangulations.push((spec, check_triangulation_k(&spec, &s)));
        unfoldings.push((spec, check_unfolding(&spec, &s)));
    }
    let passed = [&quotients, &triangulations, &unfoldings].iter().all(|r| failed_cases(r).is_empty());
    let text = format!(
        "g in 2..=4: (i) quotient ≅ model sphere {}; (ii) T(S^k) ≅ T(S^1) {}; (iii) unfolding similar {}",
        summary(&quotients),
        summary(&triangulations),
        summary(&unfoldings)
    );
    let line = report(6, passed, text);
    let mut gaps: Vec<String> = failed_cases(&unfoldings).iter().map(|(spec, _)| spec.to_string()).collect();
    let mut documented = documented_unfolding_gaps();
    gaps.sort();
    documented.sort();
    let only_documented = failed_cases(&quotients).is_empty() && failed_cases(&triangulations).is_empty() && gaps == documented;
    if only_documented && !passed {
        println!("    (iii) fails on exactly the {} documented cases where the minimal unfolding is a proper quotient", gaps.len());
    }
    (line, only_documented)
}

fn criterion_7() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut surfaces = support::family_surfaces(*TABLE_GENERA.end());
    for n in 3..=12 {
        surfaces.push((format!("regular {}", 2 * n), regular_ngon(2 * n).unwrap()));
        surfaces.push((format!("double {n}"), double_ngon(n).unwrap()));
    }
    for spec in family_cases(&Family::ALL, QUOTIENT_GENERA) {
        let (a, b, m) = spec.triangle();
        surfaces.push((format!("unfold({a}, {b}, {m})"), unfold_right_triangle(a, b, m).unwrap()));
    }
    let constructed_ok = surfaces.iter().filter(|(_, s)| support::gauss_bonnet_holds(s)).count();

    let sources = support::family_surfaces(4);
    let (mut regluings, mut regluings_ok) = (0, 0);
    while regluings < REGLUINGS {
        let Some(r) = support::random_regluing(&sources[regluings % sources.len()].1, &mut rng) else { continue };
        regluings += 1;
        regluings_ok += usize::from(support::gauss_bonnet_holds(&r));
    }

    let gallery = support::gallery();
    let stable: Vec<String> = gallery
        .iter()
        .filter_map(|(name, s)| support::canonical_is_stable(s, &mut rng, PRESENTATIONS).err().map(|e| format!("{name}: {e}")))
        .collect();

    let mut oracle = support::Oracle::default();
    let tally = support::check_element_signs(&mut rng, &mut oracle, RANDOM_ELEMENTS);

    let passed = constructed_ok == surfaces.len()
        && regluings_ok == REGLUINGS
        && stable.is_empty()
        && tally.mismatches == 0
        && tally.skipped == 0;
    report(
        7,
        passed,
        format!(
            "Gauss-Bonnet {constructed_ok}/{} constructed + {regluings_ok}/{REGLUINGS} regluings; canonical form stable on {}/{} gallery surfaces x {PRESENTATIONS} presentations{}; signs of {RANDOM_ELEMENTS} random elements: {} compared, {} exact zeros, {} skipped, {} mismatches",
            surfaces.len(),
            gallery.len() - stable.len(),
            gallery.len(),
            if stable.is_empty() { String::new() } else { format!(" ({})", stable.join(", ")) },
            tally.compared,
            tally.zeros,
            tally.skipped,
            tally.mismatches,
        ),
    )
}

fn criterion_8() -> Line {
    let mut identifications = Vec::new();
    let mut results = Vec::new();
    for spec in family_cases(&Family::ALL, GALLERY_GENERA[0]..=GALLERY_GENERA[1]) {
        let s = spec.build().unwrap();
        if let Some(c) = check_rotation_partner(&spec, &s) {
            if spec.rotation_partner().is_some_and(|p| p.k > spec.k) {
                identifications.push(c.witness.split(',').next().unwrap_or_default().to_owned());
            }
            results.push((spec, c));
        }
        results.push((spec, check_gallery(&spec, &s)));
    }
    report(
        8,
        failed_cases(&results).is_empty(),
        format!("genus 2/3 gallery: {} checks, identifications {}", summary(&results), identifications.join(", ")),
    )
}

fn main() -> ExitCode {
    println!(
        "tolerances: exact arithmetic everywhere (zero tolerance); numeric oracle at {} bits, signs compared beyond 2^-{}, exact zeros must evaluate below 2^-{}",
        support::ORACLE_BITS,
        support::ZERO_BITS,
        support::EXACT_ZERO_BITS
    );
    let mut lines = vec![criterion_1()];
    lines.extend(criteria_2_and_3());
    lines.push(criterion_4());
    lines.push(criterion_5());
    let (six, six_documented) = criterion_6();
    lines.push(six);
    lines.push(criterion_7());
    lines.push(criterion_8());
    let unexpected: Vec<&Line> = lines.iter().filter(|l| !l.passed && !(l.number == 6 && six_documented)).collect();
    let passed = lines.iter().filter(|l| l.passed).count();
    println!("{passed} of {} criteria pass", lines.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        for l in unexpected {
            eprintln!("unexpected failure: criterion {}: {}", l.number, l.text);
        }
        ExitCode::FAILURE
    }
}
