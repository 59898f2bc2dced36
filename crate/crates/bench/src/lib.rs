//! Fixtures shared by the benchmarks.

use flatspin_core::{CycloNum, Family, FamilySpec, TranslationSurface};

/// One eigenform per family at the given genus, with k = 1.
pub fn family_fixtures(genus: u32) -> Vec<(FamilySpec, TranslationSurface)> {
    Family::ALL
        .iter()
        .map(|&family| {
            let spec = FamilySpec::new(family, genus, 1).expect("genus at least 2");
            (spec, spec.build().expect("family surfaces build"))
        })
        .collect()
}

/// A dense element of Q(ζ_M): the sum of (j + 1) ζ^j over the power basis.
pub fn dense_element(order: u32) -> CycloNum {
    (0..order as i64).fold(CycloNum::zero(order), |acc, j| {
        acc + CycloNum::root_of_unity(order, j) * CycloNum::from_integer(order, j + 1)
    })
}
