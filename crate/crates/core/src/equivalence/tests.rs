use super::*;
use crate::constructors::{double_ngon, half_spingon, regular_ngon, spingon};
use crate::surface::tests::square_torus;

fn zeta(order: u32, j: i64) -> CycloNum {
    CycloNum::root_of_unity(order, j)
}

#[test]
fn triangulation_counts() {
    assert_eq!(triangulate(&square_torus()).surface.polygons().len(), 2);
    assert_eq!(triangulate(&spingon(7, 1).unwrap()).surface.polygons().len(), 14);
    let t = triangulate(&regular_ngon(12).unwrap());
    assert_eq!(t.surface.polygons().len(), 10);
    assert!(t.provenance.iter().all(|&p| p == 0));
}

#[test]
fn square_torus_is_one_square_cell() {
    let cd = delaunay(&triangulate(&square_torus()));
    assert_eq!(cd.cell_count(), 1);
    assert_eq!(cd.cell(0).len(), 4);
    assert_eq!(cd.vertex_classes().len(), 1);
}

#[test]
fn decomposition_is_idempotent() {
    for s in [spingon(7, 2).unwrap(), half_spingon(6, 1).unwrap(), double_ngon(5).unwrap()] {
        let cd = CanonicalDecomposition::of(&s);
        let again = CanonicalDecomposition::of(&cd.to_surface());
        assert_eq!(cd.serialization(), again.serialization());
    }
}

#[test]
fn spingon_decomposition_is_rotation_invariant() {
    let s = spingon(6, 1).unwrap();
    let rotated = s.transform(&zeta(6, 1)).unwrap();
    assert_eq!(CanonicalDecomposition::of(&s), CanonicalDecomposition::of(&rotated));
    assert!(translation_equivalent(&s, &rotated).is_some());
}

#[test]
fn translation_equivalence_examples() {
    let s = spingon(7, 1).unwrap();
    let m = translation_equivalent(&s, &s).unwrap();
    assert!(m.cell_map.iter().enumerate().all(|(i, &(j, r))| i == j && r == 0));
    let doubled = s.transform(&CycloNum::from_integer(1, 2)).unwrap();
    assert!(translation_equivalent(&s, &doubled).is_none());
    let torus = square_torus();
    assert!(translation_equivalent(&torus, &torus.transform(&zeta(4, 1)).unwrap()).is_some());
}

#[test]
fn double_heptagon_is_a_scaled_spingon() {
    let a = spingon(7, 1).unwrap();
    let b = double_ngon(7).unwrap();
    let c = equivalent_up_to(&a, &b, Mode::Similarity).expect("similar");
    assert!(translation_equivalent(&a, &b.transform(&c).unwrap()).is_some());
}

#[test]
fn regular_polygons_match_spingons() {
    let a = spingon(7, 3).unwrap();
    let b = regular_ngon(14).unwrap();
    assert!(equivalent_up_to(&a, &b, Mode::Similarity).is_some());
    let a = half_spingon(6, 1).unwrap();
    let b = regular_ngon(12).unwrap();
    assert!(equivalent_up_to(&a, &b, Mode::Similarity).is_some());
}

#[test]
fn rotation_equivalence_has_unit_factor() {
    let a = spingon(8, 1).unwrap();
    let b = spingon(8, 3).unwrap();
    let c = equivalent_up_to(&a, &b, Mode::Rotation).expect("rotation equivalent");
    assert_eq!(&c * &c.conj(), CycloNum::one(1));
    assert!(equivalent_up_to(&spingon(7, 1).unwrap(), &spingon(7, 2).unwrap(), Mode::Similarity).is_none());
}

#[test]
fn family_rotations_are_symmetries() {
    for k in 1..=3 {
        let s = spingon(7, k).unwrap();
        let cd = CanonicalDecomposition::of(&s);
        let sigma = cd.find_symmetry(&zeta(7, k as i64)).expect("rotation symmetry");
        assert!(!sigma.is_identity());
        assert!(sigma.power(7, &cd).is_identity());
    }
    for k in 1..=3 {
        let s = half_spingon(6, k).unwrap();
        assert!(find_symmetry(&s, &zeta(12, 2 * k as i64 - 1)).is_some());
    }
    assert!(find_symmetry(&square_torus(), &zeta(3, 1)).is_none());
}

#[test]
fn hyperelliptic_involutions() {
    for (s, expected) in [
        (spingon(7, 1).unwrap(), 8),
        (spingon(6, 1).unwrap(), 6),
        (half_spingon(6, 2).unwrap(), 8),
    ] {
        let (sigma, report) = is_hyperelliptic_flat(&s).expect("hyperelliptic");
        assert_eq!(report.count, expected);
        assert_eq!(report.locations.len(), report.count);
        assert_eq!(sigma.derivative, -CycloNum::one(1));
    }
    assert!(is_hyperelliptic_flat(&square_torus()).is_none());
}

#[test]
fn half_spingon_involution_fixes_both_cone_points() {
    let (_, report) = is_hyperelliptic_flat(&half_spingon(6, 2).unwrap()).unwrap();
    let vertices = report.locations.iter().filter(|l| matches!(l, FixedPoint::Vertex { .. })).count();
    assert_eq!(vertices, 2);
}

#[test]
fn non_involution_is_rejected() {
    let s = spingon(7, 1).unwrap();
    let cd = CanonicalDecomposition::of(&s);
    let sigma = cd.find_symmetry(&zeta(7, 1)).unwrap();
    assert_eq!(fixed_points(&cd, &sigma), Err(SymmetryError::NotInvolution));
    assert_eq!(fixed_points(&cd, &AffineSymmetry::identity(&cd)), Err(SymmetryError::Identity));
}

#[test]
fn tracked_points_follow_the_decomposition() {
    let s = spingon(7, 1).unwrap();
    // Rhombus centres are the fixed points of the involution in the cell interiors.
    let centres: Vec<(usize, CycloNum)> = (0..7)
        .map(|p| {
            let poly = &s.polygons()[p];
            let half = num_rational::BigRational::new(1.into(), 2.into());
            (p, (poly.vertex(0) + poly.vertex(2)).scale(&half))
        })
        .collect();
    let (cd, located) = CanonicalDecomposition::with_points(&s, &centres);
    let (sigma, _) = cd.hyperelliptic_involution().unwrap();
    for loc in &located {
        assert_eq!(&sigma.map_location(loc, &cd), loc);
    }
    let rot = cd.find_symmetry(&zeta(7, 1)).unwrap();
    let moved: Vec<PointLocation> = located.iter().map(|l| rot.map_location(l, &cd)).collect();
    for m in &moved {
        assert!(located.contains(m));
    }
}
