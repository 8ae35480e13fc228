mod common;

use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use geoideal::geometry::{forward_orbit_hits, OrbitVerdict, RationalPoint};
use geoideal::poly::{Field, HomIdeal};
use geoideal::twist::ProjAutomorphism;

const EIGEN: [(i64, i64); 8] = [(1, 1), (-1, 1), (2, 1), (3, 1), (1, 2), (-2, 1), (2, 3), (5, 1)];

/// Upper-triangular σ, so every eigenvalue is rational.
fn random_triangular(rng: &mut StdRng, n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| match c.cmp(&r) {
                    std::cmp::Ordering::Less => q(0),
                    std::cmp::Ordering::Equal => {
                        let (a, b) = EIGEN[rng.gen_range(0..EIGEN.len())];
                        q(a) / q(b)
                    }
                    std::cmp::Ordering::Greater => {
                        if rng.gen_bool(0.3) {
                            q(rng.gen_range(-1..=1))
                        } else {
                            q(0)
                        }
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_vec(m: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn eval(f: &NPoly, p: &[BigRational]) -> BigRational {
    f.iter()
        .map(|(e, c)| {
            let mut t = c.clone();
            for (x, k) in p.iter().zip(e) {
                for _ in 0..*k {
                    t *= x;
                }
            }
            t
        })
        .sum()
}

/// Hits `n <= bound` computed by plain iteration.
fn naive_hits(m: &[Vec<BigRational>], p: &[BigRational], z: &[NPoly], bound: u64) -> Vec<u64> {
    let mut cur = p.to_vec();
    let mut out = Vec::new();
    for n in 0..=bound {
        if z.iter().all(|g| eval(g, &cur).is_zero()) {
            out.push(n);
        }
        cur = mat_vec(m, &cur);
        let g = cur.iter().find(|c| !c.is_zero()).unwrap().clone();
        cur = cur.iter().map(|c| c / &g).collect();
    }
    out
}

fn random_case(rng: &mut StdRng) -> (Vec<Vec<BigRational>>, ProjAutomorphism, RationalPoint, HomIdeal) {
    let n = rng.gen_range(2..=3);
    let m = random_triangular(rng, n);
    let sigma = ProjAutomorphism::new(m.clone(), Field::Rational).unwrap();
    let p = loop {
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        if let Ok(p) = RationalPoint::from_integers(&c) {
            break p;
        }
    };
    let z = if rng.gen_bool(0.5) {
        // A point on the orbit, so hits exist.
        let k = rng.gen_range(0..4);
        p.image(&sigma, k).ideal(Field::Rational).unwrap()
    } else {
        let form = random_form(rng, n, 1, 2);
        HomIdeal::new(n, Field::Rational, vec![from_npoly(&form)]).unwrap()
    };
    (m, sigma, p, z)
}

#[test]
fn certified_orbits_are_sound() {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut certified = 0;
    for case in 0..120 {
        let (m, sigma, p, z) = random_case(&mut rng);
        let gens: Vec<NPoly> = z.gens().iter().map(|g| to_npoly(g, sigma.nvars())).collect();
        let horizon = 10;
        let r = forward_orbit_hits(&p, &sigma, &z, horizon);
        let shown = format!("case {case}: σ={sigma} p={p} Z={z} -> {r:?}");
        match &r.verdict {
            OrbitVerdict::CertifiedFinite { n0, .. } => {
                certified += 1;
                let all = naive_hits(&m, p.coords(), &gens, (2 * n0).max(horizon));
                assert!(all.iter().all(|h| h < n0), "{shown}: hits {all:?}");
                let complete: Vec<u64> = all.iter().copied().filter(|&h| h <= (*n0).max(horizon)).collect();
                assert_eq!(r.hits, complete, "{shown}");
                assert_eq!(all, complete, "{shown}: hit beyond the certified bound");
            }
            OrbitVerdict::Infinite { period } => {
                let all = naive_hits(&m, p.coords(), &gens, 4 * horizon);
                let first = *all.first().expect("infinite orbit must hit");
                for k in 0..6 {
                    assert!(all.contains(&(first + k * period)), "{shown}");
                }
            }
            _ => assert_eq!(r.hits, naive_hits(&m, p.coords(), &gens, horizon), "{shown}"),
        }
    }
    assert!(certified > 40, "only {certified} certificates");
}

#[test]
fn orbit_hits_shift_under_sigma() {
    let mut rng = StdRng::seed_from_u64(77);
    for _ in 0..40 {
        let (_, sigma, p, z) = random_case(&mut rng);
        let a = forward_orbit_hits(&p, &sigma, &z, 12);
        let b = forward_orbit_hits(&p.image(&sigma, 1), &sigma, &z, 11);
        let shifted: Vec<u64> = a.hits.iter().filter(|&&h| h >= 1).map(|h| h - 1).collect();
        assert_eq!(b.hits, shifted);
        assert_eq!(a.is_infinite(), b.is_infinite());
    }
}

#[test]
fn veronese_orbits_take_every_vth_hit() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..30 {
        let (_, sigma, p, z) = random_case(&mut rng);
        let v = rng.gen_range(2..=3);
        let a = forward_orbit_hits(&p, &sigma, &z, 6 * v);
        let b = forward_orbit_hits(&p, &sigma.pow(v as i64), &z, 6);
        let sub: Vec<u64> = a.hits.iter().filter(|&&h| h % v == 0 && h <= 6 * v).map(|h| h / v).collect();
        let b_hits: Vec<u64> = b.hits.iter().copied().filter(|&h| h <= 6).collect();
        assert_eq!(b_hits, sub);
    }
}

#[test]
fn verdicts_ignore_scaling_of_sigma() {
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..30 {
        let (_, sigma, p, z) = random_case(&mut rng);
        let scaled = sigma.scaled(&(q(-5) / q(2))).unwrap();
        assert_eq!(forward_orbit_hits(&p, &sigma, &z, 10), forward_orbit_hits(&p, &scaled, &z, 10));
    }
}
