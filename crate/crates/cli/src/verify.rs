//! The verification suite: per eigenform checks of strata, symmetries,
//! polygon identifications, triangulations and unfoldings.

use flatspin_core::{
    complex_isomorphic, diagonal_triangulation, double_ngon, equivalent_up_to, model_sphere, quotient_complex,
    regular_ngon, transport, translation_equivalent, unfold_right_triangle, CanonicalDecomposition, CycloNum, Family,
    FamilySpec, Mode, TranslationSurface,
};
use rayon::prelude::*;

use crate::numeric;
use crate::report::{Check, VerificationReport};

const WITNESS_BITS: u32 = 53;

pub fn check_stratum(spec: &FamilySpec, s: &TranslationSurface) -> Check {
    let stratum = s.stratum();
    let passed = stratum.orders == spec.expected_orders() && stratum.genus == spec.genus;
    Check::new("stratum", passed, format!("{}, genus {}", stratum.with_marked_points(), stratum.genus))
}

/// The rotation with the eigenvalue as derivative, and its order.
pub fn check_rotation(spec: &FamilySpec, cd: &CanonicalDecomposition) -> [Check; 2] {
    let n = spec.automorphism_order();
    let Some(sigma) = cd.find_symmetry(&spec.eigenvalue()) else {
        return [
            Check::new("automorphism", false, format!("no symmetry with derivative {}", spec.eigenvalue())),
            Check::new("order", false, "no symmetry to iterate"),
        ];
    };
    let order = (1..=n).find(|&d| sigma.power(d, cd).is_identity());
    let found = Check::new("automorphism", true, format!("derivative {}", sigma.derivative));
    let witness = match order {
        Some(d) => format!("σ^{n} = id, exact order {d}"),
        None => format!("σ^{n} ≠ id"),
    };
    [found, Check::new("order", order.is_some_and(|d| n % d == 0), witness)]
}

pub fn check_hyperelliptic(spec: &FamilySpec, cd: &CanonicalDecomposition) -> Check {
    let expected = 2 * spec.genus as usize + 2;
    match cd.hyperelliptic_involution() {
        Some((_, report)) => Check::new("hyperelliptic", report.count == expected, format!("{} fixed points", report.count)),
        None => Check::new("hyperelliptic", false, format!("no half-turn with {expected} fixed points")),
    }
}

/// S^k ≅ S^{g−k+1} up to rotation, for the families that have the extra automorphism.
pub fn check_rotation_partner(spec: &FamilySpec, s: &TranslationSurface) -> Option<Check> {
    let partner = spec.rotation_partner()?;
    let other = partner.build().ok()?;
    let name = format!("{} = {}", spec.surface_name(), partner.surface_name());
    let check = match equivalent_up_to(s, &other, Mode::Rotation) {
        Some(c) => {
            let unit = &c * &c.conj() == CycloNum::one(1);
            let scaled = other.transform(&c).ok()?;
            let witnessed = translation_equivalent(s, &scaled).is_some();
            Check::new("rotation-partner", unit && witnessed, format!("{name}, factor {}", numeric(&c, WITNESS_BITS)))
        }
        None => Check::new("rotation-partner", false, format!("{name} fails")),
    };
    Some(check)
}

/// The regular polygon or double polygon similar to this eigenform, if any.
pub fn ngon_partner(spec: &FamilySpec) -> Option<(String, TranslationSurface)> {
    let (g, k) = (spec.genus, spec.k);
    let (name, surface) = match spec.family {
        Family::Apolar if k == 1 || k == g => (format!("double {}-gon", 2 * g + 2), double_ngon(2 * g + 2)),
        Family::Polar if k == 1 => (format!("double {}-gon", 2 * g + 1), double_ngon(2 * g + 1)),
        Family::Polar if k == g => (format!("regular {}-gon", 4 * g + 2), regular_ngon(4 * g + 2)),
        Family::Dipolar if k == 1 || k == g => (format!("regular {}-gon", 4 * g), regular_ngon(4 * g)),
        _ => return None,
    };
    Some((name, surface.ok()?))
}

fn similarity_check(name: &'static str, what: String, s: &TranslationSurface, other: &TranslationSurface) -> Check {
    match equivalent_up_to(s, other, Mode::Similarity) {
        Some(c) => {
            let witnessed = other.transform(&c).is_ok_and(|t| translation_equivalent(s, &t).is_some());
            Check::new(name, witnessed, format!("{what}, factor {}", numeric(&c, WITNESS_BITS)))
        }
        None => Check::new(name, false, format!("{what}: not similar")),
    }
}

pub fn check_ngon(spec: &FamilySpec, s: &TranslationSurface) -> Option<Check> {
    let (what, other) = ngon_partner(spec)?;
    Some(similarity_check("ngon", what, s, &other))
}

/// The quotient of the rhombus-diagonal triangulation by the hyperelliptic
/// involution against the model sphere.
pub fn check_quotient(spec: &FamilySpec, s: &TranslationSurface, cd: &CanonicalDecomposition) -> Check {
    let n = spec.rhombi() as usize;
    let result = (|| {
        let t = diagonal_triangulation(s).ok()?;
        let (eta, _) = cd.hyperelliptic_involution()?;
        let q = quotient_complex(&t.complex, &[transport(&t, &eta)?]).ok()?;
        Some((q.euler_characteristic(), complex_isomorphic(&q, &model_sphere(n)).is_some()))
    })();
    match result {
        Some((chi, iso)) => {
            Check::new("quotient-sphere", chi == 2 && iso, format!("χ = {chi}, model sphere {n}: {}", if iso { "isomorphic" } else { "not isomorphic" }))
        }
        None => Check::new("quotient-sphere", false, "triangulation or involution missing"),
    }
}

/// T(S^k_N) against T(S^1_N).
pub fn check_triangulation_k(spec: &FamilySpec, s: &TranslationSurface) -> Check {
    let first = FamilySpec { k: 1, ..*spec };
    let name = format!("T({}) ≅ T({})", spec.surface_name(), first.surface_name());
    let iso = (|| {
        let a = diagonal_triangulation(s).ok()?;
        let b = diagonal_triangulation(&first.build().ok()?).ok()?;
        complex_isomorphic(&a.complex, &b.complex)
    })();
    Check::new("triangulation-k", iso.is_some(), name)
}

pub fn check_unfolding(spec: &FamilySpec, s: &TranslationSurface) -> Check {
    let (a, b, m) = spec.triangle();
    let what = format!("unfold({a}, {b}, {m})");
    match unfold_right_triangle(a, b, m) {
        Ok(u) => {
            let mut check = similarity_check("unfolding", what, s, &u);
            if !check.passed {
                check.witness = format!("{}, unfolding genus {} vs {}", check.witness, u.genus(), s.genus());
            }
            check
        }
        Err(e) => Check::new("unfolding", false, format!("{what}: {e}")),
    }
}

/// Within one genus column: the rotation partner is identified and every
/// other eigenform is not similar.
pub fn check_gallery(spec: &FamilySpec, s: &TranslationSurface) -> Check {
    let partner = spec.rotation_partner().map(|p| p.k);
    let mut notes = Vec::new();
    let mut passed = true;
    for other in FamilySpec::all_k(spec.family, spec.genus) {
        if other.k == spec.k {
            continue;
        }
        let Ok(t) = other.build() else {
            passed = false;
            continue;
        };
        let (mode, expect, sign) =
            if partner == Some(other.k) { (Mode::Rotation, true, "=") } else { (Mode::Similarity, false, "≠") };
        let ok = equivalent_up_to(s, &t, mode).is_some() == expect;
        passed &= ok;
        notes.push(format!("{} {sign} {}{}", spec.surface_name(), other.surface_name(), if ok { "" } else { " FAILED" }));
    }
    Check::new("gallery", passed, notes.join("; "))
}

/// Genera whose eigenforms appear in the low-genus tables.
pub const GALLERY_GENERA: [u32; 2] = [2, 3];

pub fn verify_case(spec: &FamilySpec) -> VerificationReport {
    let case = format!("{spec} ({})", spec.surface_name());
    let s = match spec.build() {
        Ok(s) => s,
        Err(e) => return VerificationReport::new(case, Some(*spec), vec![Check::new("build", false, e.to_string())]),
    };
    let cd = CanonicalDecomposition::of(&s);
    let mut checks = vec![check_stratum(spec, &s)];
    checks.extend(check_rotation(spec, &cd));
    checks.push(check_hyperelliptic(spec, &cd));
    checks.extend(check_rotation_partner(spec, &s));
    checks.extend(check_ngon(spec, &s));
    checks.push(check_quotient(spec, &s, &cd));
    checks.push(check_triangulation_k(spec, &s));
    checks.push(check_unfolding(spec, &s));
    if GALLERY_GENERA.contains(&spec.genus) {
        checks.push(check_gallery(spec, &s));
    }
    VerificationReport::new(case, Some(*spec), checks)
}

/// Every case in parallel; reports come back sorted by (family, genus, k).
pub fn verify_cases(specs: &[FamilySpec]) -> Vec<VerificationReport> {
    let mut reports: Vec<VerificationReport> = specs.par_iter().map(verify_case).collect();
    reports.sort_by_key(|r| r.spec);
    reports
}

pub fn family_cases(families: &[Family], genera: std::ops::RangeInclusive<u32>) -> Vec<FamilySpec> {
    families.iter().flat_map(|&f| genera.clone().flat_map(move |g| FamilySpec::all_k(f, g))).collect()
}

/// Checks that make sense for any surface read from a file.
pub fn verify_surface(name: &str, s: &TranslationSurface) -> VerificationReport {
    let chi = s.euler_characteristic();
    let orders: i64 = s.cone_points().iter().map(|c| c.angle_multiple as i64 - 1).sum();
    let mut checks = vec![Check::new("gauss-bonnet", orders == -chi, format!("Σ(m − 1) = {orders}, χ = {chi}"))];
    let cd = CanonicalDecomposition::of(s);
    let again = CanonicalDecomposition::of(&cd.to_surface());
    checks.push(Check::new(
        "canonical-idempotent",
        again.serialization() == cd.serialization(),
        format!("{} cells", cd.cell_count()),
    ));
    VerificationReport::new(name, None, checks)
}
