//! One line per acceptance criterion, with runtime against its budget.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_integer::binomial;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use geoideal::classify::{classify, Evidence, Verdict};
use geoideal::geometry::{critical_transversality_certificate, forward_orbit_hits, CtVerdict, OrbitVerdict, RationalPoint};
use geoideal::homology::{
    graded_tor, homologically_transverse, serre_multiplicity_total, tor_series_all, truncated_tor_over_quotient,
    Transversality,
};
use geoideal::idealizer::{idealizer_piece, oracle_subspace, IdealizerScene};
use geoideal::poly::{Field, HomIdeal, Poly};
use geoideal::scene::{parse_scene, SceneFile};
use geoideal::twist::{twist_multiply, ProjAutomorphism, TwistedElement};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ideal(s: &str, n: usize) -> HomIdeal {
    HomIdeal::parse(s, n, Field::Rational).unwrap()
}

fn diag(e: &[i64]) -> ProjAutomorphism {
    let e: Vec<BigRational> = e.iter().map(|&x| q(x)).collect();
    ProjAutomorphism::diagonal(&e, Field::Rational).unwrap()
}

fn load(name: &str) -> SceneFile {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenes").join(name);
    parse_scene(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn example_3_10() -> Check {
    let s = diag(&[1, 2, 3]);
    let x = |i| TwistedElement::new(1, Poly::var(i, Field::Rational)).unwrap();
    for (i, j, c) in [(0, 1, q(2)), (0, 2, q(3)), (1, 2, q(3) / q(2))] {
        let ab = twist_multiply(&x(i), &x(j), &s);
        let ba = twist_multiply(&x(j), &x(i), &s);
        let c = Field::Rational.from_rational(&c).unwrap();
        ensure(ab.poly() == &ba.poly().scale(&c), || format!("x{i}*x{j} != {c} x{j}*x{i}"))?;
    }
    let sc = IdealizerScene::new(s, &ideal("x0 + x1, x0^2", 3)).map_err(|e| e.to_string())?;
    let m = ideal("x0, x1", 3);
    for n in 1..=5u32 {
        let c = sc.colon(n);
        ensure(c == m && c.is_saturated(), || format!("colon at n={n} is {c}"))?;
        let expected = binomial(n as u64 + 2, 2) - 1;
        let got = idealizer_piece(&sc, n).dim() as u64;
        ensure(got == expected, || format!("dim R_{n} = {got}, expected {expected}"))?;
    }
    Ok(())
}

fn transversality_laws() -> Check {
    let mut rng = StdRng::seed_from_u64(56);
    let mut tested = 0;
    while tested < 10 {
        let nvars = rng.gen_range(3..=4);
        let v = random_monomial_ideal(&mut rng, nvars, 2, 2);
        let w = v.sum(&random_monomial_ideal(&mut rng, nvars, 2, 2));
        if !v.saturate().unwrap().is_proper() || !w.saturate().unwrap().is_proper() {
            continue;
        }
        let t = homologically_transverse(&v, &w).map_err(|e| e.to_string())?;
        ensure(t == Transversality::Fails { j: 1 }, || format!("{v} ⊇ {w}: {t:?}"))?;
        tested += 1;
    }
    let conic_a = ideal("x0^2 + x1^2 - x2^2", 3);
    let conic_b = ideal("x0^2 - 4*x1^2 + x0*x2", 3);
    let total = serre_multiplicity_total(&conic_a, &conic_b).map_err(|e| e.to_string())?;
    ensure(total == 4, || format!("two conics give {total}"))?;
    let conic = ideal("x0*x2 - x1^2", 3);
    let tangent = ideal("x0", 3);
    let total = serre_multiplicity_total(&conic, &tangent).map_err(|e| e.to_string())?;
    ensure(total == 2, || format!("tangent line gives {total}"))?;
    for j in 1..=3 {
        let t = graded_tor(&conic, &tangent, j, 6);
        ensure(t.is_sheaf_zero(), || format!("tangent Tor_{j} sheaf nonzero"))?;
    }
    Ok(())
}

fn transport_consistency() -> Check {
    for name in ["translation-p1.scene", "flagship.scene"] {
        let sc = load(name).idealizer_scene().map_err(|e| e.to_string())?;
        for n in 1..=4 {
            let a = idealizer_piece(&sc, n);
            let b = oracle_subspace(&sc, n, 6);
            ensure(a.basis() == b.basis(), || format!("{name}: R_{n} differs from the oracle"))?;
        }
    }
    Ok(())
}

fn ct_certificates() -> Check {
    let s = diag(&[1, 2, 3]);
    let c = critical_transversality_certificate(&s, &ideal("x0 - x1, x0 - x2", 3));
    ensure(c.is_certified(), || format!("[1:1:1]: {:?}", c.verdict))?;
    ensure(c.checked.iter().all(|(_, t)| t.holds()), || "unchecked union".into())?;
    let z = ideal("x1, x2", 3);
    let c = critical_transversality_certificate(&s, &z);
    let witness = c.witness.clone().ok_or("no witness for [1:0:0]")?;
    ensure(matches!(c.verdict, CtVerdict::Refuted { j: 1, .. }), || format!("{:?}", c.verdict))?;
    ensure(witness.contains_ideal(&z) || z.contains_ideal(&witness), || format!("witness {witness} is not nested"))?;
    Ok(())
}

fn infinite_hd_probe() -> Check {
    let cusp = ideal("x1^2*x2 - x0^3", 3);
    let t = truncated_tor_over_quotient(&cusp, &ideal("x0, x1", 3), &ideal("x0, x1", 3), 6, None)
        .map_err(|e| e.to_string())?;
    ensure(t.infinite_hd_evidence(), || format!("cusp Tor table {:?}", t.sheaf_nonzero))?;
    let smooth = ideal("x0 - x2, x1 - x2", 3);
    let t = truncated_tor_over_quotient(&cusp, &smooth, &smooth, 4, None).map_err(|e| e.to_string())?;
    ensure(t.vanishing_from() == Some(2), || format!("smooth point Tor table {:?}", t.sheaf_nonzero))?;
    Ok(())
}

fn property_suites() -> Check {
    let mut rng = StdRng::seed_from_u64(0x9b1);
    for case in 0..200 {
        let nvars = rng.gen_range(2..=3);
        let (gens, i) = random_ideal(&mut rng, nvars);
        let naive = naive_reduced_gb(&gens);
        let ours: Vec<NPoly> = i.groebner().iter().map(|p| to_npoly(p, nvars)).collect();
        ensure(naive.iter().all(|g| ours.contains(g)) && naive.len() == ours.len(), || format!("GB case {case}"))?;
        let again = HomIdeal::new(nvars, Field::Rational, i.gens().iter().rev().cloned().collect()).unwrap();
        ensure(again.groebner() == i.groebner(), || format!("GB determinism case {case}"))?;
        let fd = rng.gen_range(1..=3);
        let f = random_form(&mut rng, nvars, fd, 4);
        ensure(i.contains(&from_npoly(&f)) == la_member(&f, &gens, nvars), || format!("membership case {case}"))?;
    }
    for case in 0..40 {
        let nvars = rng.gen_range(2..=3);
        let (a, b) = (random_ideal(&mut rng, nvars).1, random_monomial_ideal(&mut rng, nvars, 3, 2));
        let s = a.saturate().map_err(|e| e.to_string())?;
        let c = s.ideal_quotient(&b);
        ensure(c.saturate().unwrap() == c, || format!("quotient saturation case {case}"))?;
        let (ab, ba) = (tor_series_all(&a, &b), tor_series_all(&b, &a));
        ensure(ab == ba, || format!("Tor symmetry case {case}"))?;
        for d in 0..=5i64 {
            let alt: i128 = ab.iter().enumerate().map(|(j, t)| if j % 2 == 0 { t.function(d) } else { -t.function(d) }).sum();
            let expected = euler_expected(&a, &b, d);
            ensure(alt == expected, || format!("Euler identity case {case} degree {d}: {alt} vs {expected}"))?;
        }
    }
    for case in 0..100 {
        let n = rng.gen_range(2..=4);
        let s = loop {
            let rows: Vec<Vec<BigRational>> = (0..n).map(|_| (0..n).map(|_| q(rng.gen_range(-2..=2))).collect()).collect();
            if let Ok(s) = ProjAutomorphism::new(rows, Field::Rational) {
                break s;
            }
        };
        let mut el = || {
            let d = rng.gen_range(0..=2);
            TwistedElement::new(d, from_npoly(&random_form(&mut rng, n, d, 3))).unwrap()
        };
        let (a, b, c) = (el(), el(), el());
        let left = twist_multiply(&twist_multiply(&a, &b, &s), &c, &s);
        let right = twist_multiply(&a, &twist_multiply(&b, &c, &s), &s);
        ensure(left == right, || format!("associativity case {case}"))?;
    }
    let mut certified = 0;
    for case in 0..60 {
        let e = [q(1), q(2), q(3), q(-1), q(1) / q(2), q(5)];
        let d: Vec<BigRational> = (0..3).map(|_| e[rng.gen_range(0..e.len())].clone()).collect();
        let s = ProjAutomorphism::diagonal(&d, Field::Rational).unwrap();
        let c: Vec<i64> = (0..3).map(|_| rng.gen_range(1..=3)).collect();
        let p = RationalPoint::from_integers(&c).unwrap();
        let z = p.image(&s, rng.gen_range(0..3)).ideal(Field::Rational).unwrap();
        let r = forward_orbit_hits(&p, &s, &z, 8);
        if let OrbitVerdict::CertifiedFinite { n0, .. } = r.verdict {
            certified += 1;
            for k in 0..=(2 * n0).max(8) {
                let hit = p.image(&s, k as i64).lies_on(&z);
                ensure(!hit || (k < n0 && r.hits.contains(&k)), || format!("orbit case {case}: hit at {k}, n0 = {n0}"))?;
            }
        }
    }
    ensure(certified > 0, || "no orbit certificates issued".into())
}

/// Degree-`d` coefficient of `HS(S/A)·HS(S/B)·(1-t)^n`.
fn euler_expected(a: &HomIdeal, b: &HomIdeal, d: i64) -> i128 {
    let n = a.nvars() as i64;
    let ha = |k: i64| a.hilbert_series().function(k);
    let hb = |k: i64| b.hilbert_series().function(k);
    let prod = |m: i64| -> i128 { (0..=m).map(|k| ha(k) * hb(m - k)).sum() };
    // Multiply by (1-t)^n.
    (0..=n.min(d))
        .map(|i| {
            let c = binomial(n as i128, i as i128) * if i % 2 == 0 { 1 } else { -1 };
            c * prod(d - i)
        })
        .sum()
}

fn flagship_report() -> Check {
    let r = classify(&load("flagship.scene")).map_err(|e| e.to_string())?;
    let row = |p: &str| r.row(p).map(|x| (x.verdict, x.evidence.clone())).ok_or(format!("missing {p}"));
    let expect: [(&str, Verdict, fn(&Evidence) -> bool); 8] = [
        ("right-noetherian", Verdict::Holds, |e| matches!(e, Evidence::Heuristic { .. })),
        ("strongly-right-noetherian", Verdict::Holds, |e| matches!(e, Evidence::Heuristic { .. })),
        ("left-chi-1", Verdict::Fails, |e| *e == Evidence::Certified),
        ("left-noetherian", Verdict::Holds, |e| *e == Evidence::Certified),
        ("strongly-left-noetherian", Verdict::Fails, |e| matches!(e, Evidence::Refuted { .. })),
        ("right-chi", Verdict::Holds, |e| *e == Evidence::Certified),
        ("finite-cohomological-dimension", Verdict::Holds, |e| *e == Evidence::Certified),
        ("tensor-square-left-noetherian", Verdict::Fails, |e| matches!(e, Evidence::Refuted { .. })),
    ];
    for (p, v, ev) in expect {
        let (got_v, got_e) = row(p)?;
        ensure(got_v == v && ev(&got_e), || format!("{p}: {got_v:?} {got_e:?}"))?;
    }
    let chi = r.row("right-chi").unwrap();
    ensure(chi.note.contains("right χ_1 holds, right χ_2 fails"), || chi.note.clone())?;
    // The certified left-noetherian row rests on a certificate that re-checks.
    let c = critical_transversality_certificate(&load("flagship.scene").sigma, &ideal("x0 - x1, x0 - x2", 3));
    ensure(c.is_certified(), || "left-noetherian certificate does not re-check".into())
}

fn main() {
    let criteria: [(&str, u64, fn() -> Check); 7] = [
        ("1 twist relations, colons and dim R_n for the non-reduced point", 10, example_3_10),
        ("2 nested pairs, conic Bezout and tangency", 30, transversality_laws),
        ("3 colon pieces agree with the membership oracle", 60, transport_consistency),
        ("4 critical-transversality certificates", 30, ct_certificates),
        ("5 infinite homological dimension at the cusp", 60, infinite_hd_probe),
        ("6 property suites", 300, property_suites),
        ("7 flagship classification report", 60, flagship_report),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let t = Instant::now();
        let outcome = check();
        let dt = t.elapsed();
        let over = dt > Duration::from_secs(budget);
        match (&outcome, over) {
            (Ok(()), false) => println!("PASS  criterion {name}  ({:.2}s < {budget}s)", dt.as_secs_f64()),
            (Ok(()), true) => println!("FAIL  criterion {name}  (took {:.2}s, budget {budget}s)", dt.as_secs_f64()),
            (Err(e), _) => println!("FAIL  criterion {name}  ({:.2}s): {e}", dt.as_secs_f64()),
        }
        if outcome.is_err() || over {
            failed += 1;
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
