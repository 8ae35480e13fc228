mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use geoideal::homology::{graded_tor, homologically_transverse, serre_multiplicity_total, tor_series_all, Transversality};
use geoideal::poly::{Field, HomIdeal};

fn ideal(s: &str, nvars: usize) -> HomIdeal {
    HomIdeal::parse(s, nvars, Field::Rational).unwrap()
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trim(mut v: Vec<i128>) -> Vec<i128> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn random_pair(seed: u64) -> (HomIdeal, HomIdeal) {
    let mut rng = StdRng::seed_from_u64(seed);
    let nvars = rng.gen_range(2..=3);
    if rng.gen_bool(0.5) {
        (random_monomial_ideal(&mut rng, nvars, 3, 3), random_monomial_ideal(&mut rng, nvars, 3, 2))
    } else {
        (random_ideal(&mut rng, nvars).1, random_ideal(&mut rng, nvars).1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn tor_is_symmetric(seed in any::<u64>()) {
        let (i, j) = random_pair(seed);
        prop_assert_eq!(tor_series_all(&i, &j), tor_series_all(&j, &i));
    }

    #[test]
    fn euler_characteristic_of_tor(seed in any::<u64>()) {
        let (i, j) = random_pair(seed);
        let n = i.nvars();
        let series = tor_series_all(&i, &j);
        let mut alt = vec![0i128; 1];
        for (k, s) in series.iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let num = s.numerator();
            if alt.len() < num.len() {
                alt.resize(num.len(), 0);
            }
            for (a, b) in alt.iter_mut().zip(num) {
                *a += sign * b;
            }
        }
        let expected = poly_mul(i.hilbert_series().numerator(), j.hilbert_series().numerator());
        prop_assert_eq!(trim(alt), trim(expected));

        // Degreewise: Tor_0 = S/(I+J) and Tor_1 = (I∩J)/IJ.
        let sum = i.sum(&j);
        let cap = i.intersect(&j);
        let prod = i.product(&j);
        for d in 0..=6u32 {
            prop_assert_eq!(series[0].function(d as i64) as u64, sum.hilbert_function(d));
            let t1 = prod.hilbert_function(d) as i128 - cap.hilbert_function(d) as i128;
            prop_assert_eq!(series[1].function(d as i64), t1);
        }
        // Nothing beyond homological degree n.
        prop_assert_eq!(series.len(), n + 1);
    }
}

#[test]
fn nested_pairs_fail_transversality_at_one() {
    let mut rng = StdRng::seed_from_u64(56);
    let mut tested = 0;
    while tested < 10 {
        let nvars = rng.gen_range(3..=4);
        let v = random_monomial_ideal(&mut rng, nvars, 2, 2);
        let w = v.sum(&random_monomial_ideal(&mut rng, nvars, 2, 2));
        let w_sat = w.saturate().unwrap();
        if !v.saturate().unwrap().is_proper() || !w_sat.is_proper() {
            continue;
        }
        assert_eq!(homologically_transverse(&v, &w).unwrap(), Transversality::Fails { j: 1 }, "{v} ⊇ {w}");
        tested += 1;
    }
}

#[test]
fn koszul_law_and_examples() {
    // Regular sequence meeting a curve properly.
    assert!(homologically_transverse(&ideal("x0", 3), &ideal("x0^2 + x1^2 - x2^2", 3)).unwrap().holds());
    assert!(homologically_transverse(&ideal("x0 - x1, x2", 3), &ideal("x0*x1 - x2^2", 3)).unwrap().holds());
    assert_eq!(
        homologically_transverse(&ideal("x0, x1", 3), &ideal("x0", 3)).unwrap(),
        Transversality::Fails { j: 1 }
    );
    assert!(homologically_transverse(&ideal("x0, x1", 3), &HomIdeal::zero(3, Field::Rational)).unwrap().holds());

    let t = graded_tor(&ideal("x0", 2), &ideal("x1", 2), 1, 4);
    assert!(t.is_sheaf_zero());
    let t = graded_tor(&ideal("x0, x1", 3), &ideal("x0", 3), 1, 4);
    assert!(!t.hilbert_polynomial.is_zero());

    assert_eq!(serre_multiplicity_total(&ideal("x0", 3), &ideal("x1", 3)).unwrap(), 1);
    assert_eq!(
        serre_multiplicity_total(&ideal("x0^2 + x1^2 - x2^2", 3), &ideal("x0^2 - 4*x1^2 + x0*x2", 3)).unwrap(),
        4
    );
    assert!(serre_multiplicity_total(&ideal("x0", 3), &ideal("x0*x1", 3)).is_err());
}
