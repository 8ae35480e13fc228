mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use geoideal::poly::HomIdeal;

fn three(seed: u64) -> (HomIdeal, HomIdeal, HomIdeal) {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(2..=3);
    let pick = |rng: &mut StdRng| {
        if rng.gen_bool(0.5) {
            random_monomial_ideal(rng, n, 3, 2)
        } else {
            random_ideal(rng, n).1
        }
    };
    (pick(&mut rng), pick(&mut rng), pick(&mut rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quotient_adjunction(seed in any::<u64>()) {
        let (i, j, k) = three(seed);
        let c = i.ideal_quotient(&j);
        prop_assert!(i.contains_ideal(&c.product(&j)));
        prop_assert!(c.contains_ideal(&i));
        // K·J ⊆ I  <=>  K ⊆ (I : J)
        prop_assert_eq!(i.contains_ideal(&k.product(&j)), c.contains_ideal(&k));
        for f in k.gens() {
            let all = j.gens().iter().all(|g| i.contains(&f.mul(g)));
            prop_assert_eq!(c.contains(f), all);
        }
    }

    #[test]
    fn saturation_is_idempotent_and_preserved_by_quotients(seed in any::<u64>()) {
        let (i, j, _) = three(seed);
        let s = i.saturate().unwrap();
        prop_assert!(s.contains_ideal(&i));
        prop_assert_eq!(s.saturate().unwrap(), s.clone());
        prop_assert!(s.is_saturated());
        let c = s.ideal_quotient(&j);
        prop_assert_eq!(c.saturate().unwrap(), c);
        prop_assert_eq!(s.hilbert_polynomial(), i.hilbert_polynomial());
    }

    #[test]
    fn hilbert_function_is_additive(seed in any::<u64>()) {
        let (i, j, _) = three(seed);
        let sum = i.sum(&j);
        let cap = i.intersect(&j);
        for d in 0..=6 {
            prop_assert_eq!(
                i.hilbert_function(d) + j.hilbert_function(d),
                sum.hilbert_function(d) + cap.hilbert_function(d)
            );
        }
    }

    #[test]
    fn intersection_membership(seed in any::<u64>()) {
        let (i, j, _) = three(seed);
        let cap = i.intersect(&j);
        prop_assert!(i.contains_ideal(&cap) && j.contains_ideal(&cap));
        prop_assert!(cap.contains_ideal(&i.product(&j)));
    }
}
