//! Identifications between family surfaces, regular polygons, double
//! polygons and triangle unfoldings.

use flatspin_core::{
    double_ngon, equivalent_up_to, half_spingon, regular_ngon, spingon, translation_equivalent, unfold_right_triangle,
    CycloNum, Family, FamilySpec, Mode, TranslationSurface,
};

/// Checks a similarity witness independently of the search that produced it.
fn assert_similar(a: &TranslationSurface, b: &TranslationSurface, what: &str) -> CycloNum {
    let c = equivalent_up_to(a, b, Mode::Similarity).unwrap_or_else(|| panic!("{what}: not similar"));
    let scaled = b.transform(&c).unwrap();
    assert!(translation_equivalent(a, &scaled).is_some(), "{what}: witness factor does not map B onto A");
    assert_eq!(scaled.area(), a.area(), "{what}: area after scaling");
    c
}

#[test]
fn double_even_gon_is_the_first_apolar_spingon() {
    for g in 2..=5 {
        let n = 2 * g + 2;
        assert_similar(&spingon(n, 1).unwrap(), &double_ngon(n).unwrap(), &format!("double {n}-gon"));
    }
}

#[test]
fn double_odd_gon_is_the_first_polar_spingon() {
    for g in 2..=5 {
        let n = 2 * g + 1;
        assert_similar(&spingon(n, 1).unwrap(), &double_ngon(n).unwrap(), &format!("double {n}-gon"));
    }
}

#[test]
fn regular_4g_plus_2_gon_is_the_last_polar_spingon() {
    for g in 2..=5 {
        let n = 4 * g + 2;
        assert_similar(&spingon(2 * g + 1, g).unwrap(), &regular_ngon(n).unwrap(), &format!("regular {n}-gon"));
    }
}

#[test]
fn regular_4g_gon_is_the_first_half_spingon() {
    for g in 2..=5 {
        let n = 4 * g;
        assert_similar(&half_spingon(2 * g, 1).unwrap(), &regular_ngon(n).unwrap(), &format!("regular {n}-gon"));
    }
}

#[test]
fn switching_the_rotation_centre_is_a_rotation() {
    for family in [Family::Apolar, Family::Dipolar] {
        for g in 2..=5 {
            for spec in FamilySpec::all_k(family, g) {
                let partner = spec.rotation_partner().unwrap();
                let (a, b) = (spec.build().unwrap(), partner.build().unwrap());
                let c = equivalent_up_to(&a, &b, Mode::Rotation).unwrap_or_else(|| panic!("{spec}"));
                assert_eq!(&c * &c.conj(), CycloNum::one(1), "{spec}: factor is not a unit");
                assert!(translation_equivalent(&a, &b.transform(&c).unwrap()).is_some(), "{spec}");
            }
        }
    }
}

#[test]
fn low_genus_gallery_identifications() {
    for (a, b) in [
        (spingon(6, 1), spingon(6, 2)),
        (spingon(8, 1), spingon(8, 3)),
        (half_spingon(4, 1), half_spingon(4, 2)),
        (half_spingon(6, 1), half_spingon(6, 3)),
    ] {
        assert!(equivalent_up_to(&a.unwrap(), &b.unwrap(), Mode::Rotation).is_some());
    }
    // Different strata inside one gallery column.
    assert!(equivalent_up_to(&spingon(7, 1).unwrap(), &spingon(7, 2).unwrap(), Mode::Similarity).is_none());
    assert!(equivalent_up_to(&spingon(8, 1).unwrap(), &spingon(8, 2).unwrap(), Mode::Similarity).is_none());
}

#[test]
fn polar_and_dipolar_triangles_unfold_to_the_family_surface() {
    for family in [Family::Polar, Family::Dipolar] {
        for g in 2..=4 {
            for spec in FamilySpec::all_k(family, g) {
                let (a, b, m) = spec.triangle();
                if num_integer::gcd(num_integer::gcd(a, b), m) > 1 {
                    continue;
                }
                let u = unfold_right_triangle(a, b, m).unwrap();
                assert_similar(&spec.build().unwrap(), &u, &format!("{spec}"));
            }
        }
    }
}

#[test]
fn apolar_triangle_unfolding_is_smaller_than_the_spingon() {
    // The (π/2, π/6, π/3) triangle unfolds to the hexagonal torus.
    let spec = FamilySpec::new(Family::Apolar, 2, 1).unwrap();
    assert_eq!(spec.triangle(), (1, 2, 6));
    let u = unfold_right_triangle(1, 2, 6).unwrap();
    assert_eq!(u.genus(), 1);
    assert!(equivalent_up_to(&spec.build().unwrap(), &u, Mode::Similarity).is_none());
}
