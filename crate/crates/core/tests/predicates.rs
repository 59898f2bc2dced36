//! Exact sign predicates against 256-bit floating-point evaluation, and
//! refinement of the interval embedding.

mod support;

use flatspin_core::CycloNum;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{dyadic_to_float, random_terms, Oracle, Terms};

#[test]
fn signs_of_random_elements_agree_with_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let tally = support::check_element_signs(&mut rng, &mut Oracle::default(), 1000);
    assert_eq!(tally.mismatches, 0, "{tally:?}");
    assert_eq!(tally.total(), 2000);
    assert!(tally.compared > 1000, "{tally:?}");
    assert!(tally.zeros > 100, "the forced real and imaginary cases give exact zeros: {tally:?}");
}

#[test]
fn orientation_agrees_with_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let tally = support::check_orientations(&mut rng, &mut Oracle::default(), 300);
    assert_eq!(tally.mismatches, 0, "{tally:?}");
    assert!(tally.zeros > 50, "{tally:?}");
}

#[test]
fn incircle_agrees_with_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (tally, shifts) = support::check_incircles(&mut rng, &mut Oracle::default(), 200);
    assert_eq!(tally.mismatches, 0, "{tally:?}");
    assert_eq!(shifts, 0);
    assert!(tally.zeros > 50, "{tally:?}");
}

fn terms() -> impl Strategy<Value = Terms> {
    (1u32..=24, any::<u64>()).prop_map(|(order, seed)| random_terms(&mut ChaCha8Rng::seed_from_u64(seed), order))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn embeddings_are_nested(t in terms(), lo in 16u32..120, extra in 0u32..200) {
        let a = t.to_cyclo();
        prop_assert!(a.embed(lo + extra).is_subset_of(&a.embed(lo)));
    }

    #[test]
    fn embedding_contains_the_numeric_value(t in terms(), bits in 16u32..160) {
        let a = t.to_cyclo();
        let z = Oracle::default().eval(&t);
        let b = a.embed(bits);
        for (iv, x) in [(&b.re, &z.re), (&b.im, &z.im)] {
            let lo = dyadic_to_float(&iv.lo, iv.scale);
            let hi = dyadic_to_float(&iv.hi, iv.scale);
            prop_assert!(lo <= *x && *x <= hi);
        }
    }

    #[test]
    fn norms_are_real_and_nonnegative(t in terms()) {
        let a = t.to_cyclo();
        let n = &a * &a.conj();
        prop_assert_eq!(n.sign_imag(), std::cmp::Ordering::Equal);
        prop_assert_ne!(n.sign_real(), std::cmp::Ordering::Less);
        prop_assert!((&a - &a).is_zero());
    }
}

#[test]
fn roots_of_unity_have_the_right_order() {
    for m in 1..=48u32 {
        for j in 0..m as i64 {
            assert_eq!(CycloNum::root_of_unity(m, j).pow(m), CycloNum::one(m), "ζ_{m}^{j}");
        }
    }
}
