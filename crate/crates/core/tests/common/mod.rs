//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use geoideal::poly::{Field, HomIdeal, Monomial, Poly, Scalar};

pub type Exps = Vec<u32>;
/// Dense-key polynomial over Q, independent of the library representation.
pub type NPoly = BTreeMap<Exps, BigRational>;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn grevlex(a: &Exps, b: &Exps) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

pub fn to_npoly(p: &Poly, nvars: usize) -> NPoly {
    p.terms()
        .iter()
        .map(|(m, c)| match c {
            Scalar::Q(c) => (m.exps(nvars), c.clone()),
            _ => panic!("rational coefficients expected"),
        })
        .collect()
}

pub fn from_npoly(p: &NPoly) -> Poly {
    Poly::from_terms(
        p.iter()
            .map(|(e, c)| (Monomial::from_exps(e), Scalar::Q(c.clone())))
            .collect(),
    )
}

fn lead(p: &NPoly) -> Option<(&Exps, &BigRational)> {
    p.iter().max_by(|a, b| grevlex(a.0, b.0))
}

fn divides(a: &Exps, b: &Exps) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn add_scaled(p: &mut NPoly, g: &NPoly, c: &BigRational, shift: &Exps) {
    for (e, v) in g {
        let k: Exps = e.iter().zip(shift).map(|(a, b)| a + b).collect();
        let nv = p.get(&k).cloned().unwrap_or_else(BigRational::zero) + c * v;
        if nv.is_zero() {
            p.remove(&k);
        } else {
            p.insert(k, nv);
        }
    }
}

/// Full reduction of `f` by `basis`.
pub fn reduce(f: &NPoly, basis: &[NPoly]) -> NPoly {
    let mut p = f.clone();
    let mut rem = NPoly::new();
    while let Some((le, lc)) = lead(&p).map(|(e, c)| (e.clone(), c.clone())) {
        let div = basis.iter().find(|g| divides(lead(g).unwrap().0, &le));
        match div {
            Some(g) => {
                let (ge, gc) = lead(g).unwrap();
                let shift: Exps = le.iter().zip(ge).map(|(a, b)| a - b).collect();
                add_scaled(&mut p, g, &(-(&lc / gc)), &shift);
            }
            None => {
                p.remove(&le);
                rem.insert(le, lc);
            }
        }
    }
    rem
}

fn monic(p: &NPoly) -> NPoly {
    let c = lead(p).unwrap().1.clone();
    p.iter().map(|(e, v)| (e.clone(), v / &c)).collect()
}

/// Textbook Buchberger over every pair, followed by interreduction.
pub fn naive_reduced_gb(gens: &[NPoly]) -> Vec<NPoly> {
    let mut g: Vec<NPoly> = gens.iter().filter(|p| !p.is_empty()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (ai, ci) = lead(&g[i]).unwrap();
        let (aj, cj) = lead(&g[j]).unwrap();
        let l: Exps = ai.iter().zip(aj).map(|(a, b)| *a.max(b)).collect();
        let si: Exps = l.iter().zip(ai).map(|(a, b)| a - b).collect();
        let sj: Exps = l.iter().zip(aj).map(|(a, b)| a - b).collect();
        let mut s = NPoly::new();
        add_scaled(&mut s, &g[i], &ci.recip(), &si);
        add_scaled(&mut s, &g[j], &(-cj.recip()), &sj);
        let r = reduce(&s, &g);
        if !r.is_empty() {
            let k = g.len();
            g.push(r);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // Keep elements whose leading monomial is minimal, then interreduce.
    let mut min: Vec<NPoly> = Vec::new();
    for (idx, p) in g.iter().enumerate() {
        let lp = lead(p).unwrap().0;
        let redundant = g.iter().enumerate().any(|(k, h)| {
            let lh = lead(h).unwrap().0;
            k != idx && divides(lh, lp) && (lh != lp || k < idx)
        });
        if !redundant {
            min.push(monic(p));
        }
    }
    let mut out: Vec<NPoly> = (0..min.len())
        .map(|i| {
            let others: Vec<NPoly> = min.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, p)| p.clone()).collect();
            let lt: NPoly = [(lead(&min[i]).unwrap().0.clone(), q(1))].into();
            let mut tail = min[i].clone();
            tail.remove(lead(&min[i]).unwrap().0);
            let mut r = reduce(&tail, &others);
            r.extend(lt);
            r
        })
        .collect();
    out.sort_by(|a, b| grevlex(lead(a).unwrap().0, lead(b).unwrap().0));
    out
}

/// Rank of a list of rational row vectors.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &piv;
                for k in c..ncols {
                    let d = &f * &rows[r][k];
                    rows[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn monomials(nvars: usize, deg: u32) -> Vec<Exps> {
    if nvars == 1 {
        return vec![vec![deg]];
    }
    (0..=deg)
        .rev()
        .flat_map(|a| {
            monomials(nvars - 1, deg - a).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

fn coords(p: &NPoly, basis: &[Exps]) -> Vec<BigRational> {
    basis.iter().map(|e| p.get(e).cloned().unwrap_or_else(BigRational::zero)).collect()
}

/// The degree-`n` piece of `(gens)` as row vectors in the monomial basis.
pub fn degree_piece(gens: &[NPoly], nvars: usize, n: u32) -> Vec<Vec<BigRational>> {
    let basis = monomials(nvars, n);
    let mut rows = Vec::new();
    for g in gens {
        let d: u32 = g.keys().next().unwrap().iter().sum();
        if d > n {
            continue;
        }
        for m in monomials(nvars, n - d) {
            let mut p = NPoly::new();
            add_scaled(&mut p, g, &q(1), &m);
            rows.push(coords(&p, &basis));
        }
    }
    rows
}

/// Homogeneous membership by linear algebra in a single degree.
pub fn la_member(f: &NPoly, gens: &[NPoly], nvars: usize) -> bool {
    if f.is_empty() {
        return true;
    }
    let n: u32 = f.keys().next().unwrap().iter().sum();
    let rows = degree_piece(gens, nvars, n);
    let r0 = rank(rows.clone());
    let mut with = rows;
    with.push(coords(f, &monomials(nvars, n)));
    rank(with) == r0
}

pub fn la_hilbert(gens: &[NPoly], nvars: usize, n: u32) -> usize {
    monomials(nvars, n).len() - rank(degree_piece(gens, nvars, n))
}

pub fn random_form(rng: &mut StdRng, nvars: usize, deg: u32, terms: usize) -> NPoly {
    let all = monomials(nvars, deg);
    let mut p = NPoly::new();
    for _ in 0..terms {
        let e = all[rng.gen_range(0..all.len())].clone();
        let c = q(rng.gen_range(-3..=3));
        if !c.is_zero() {
            p.insert(e, c);
        }
    }
    if p.is_empty() {
        p.insert(all[0].clone(), BigRational::one());
    }
    p
}

pub fn random_ideal(rng: &mut StdRng, nvars: usize) -> (Vec<NPoly>, HomIdeal) {
    let k = rng.gen_range(1..=3);
    let gens: Vec<NPoly> = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            let t = rng.gen_range(1..=3);
            random_form(rng, nvars, d, t)
        })
        .collect();
    let ideal = HomIdeal::new(nvars, Field::Rational, gens.iter().map(from_npoly).collect()).unwrap();
    (gens, ideal)
}

pub fn random_monomial_ideal(rng: &mut StdRng, nvars: usize, max_gens: usize, max_deg: u32) -> HomIdeal {
    let k = rng.gen_range(1..=max_gens);
    let gens: Vec<Poly> = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=max_deg);
            let all = monomials(nvars, d);
            let e = &all[rng.gen_range(0..all.len())];
            Poly::monomial(Monomial::from_exps(e), Field::Rational.one())
        })
        .collect();
    HomIdeal::new(nvars, Field::Rational, gens).unwrap()
}

pub fn npoly_mul(a: &NPoly, b: &NPoly) -> NPoly {
    let mut out = NPoly::new();
    for (e, c) in b {
        add_scaled(&mut out, a, c, e);
    }
    out
}

pub fn npoly_add(a: &NPoly, b: &NPoly) -> NPoly {
    let mut out = a.clone();
    let zero = vec![0; a.keys().chain(b.keys()).next().map_or(0, |e| e.len())];
    add_scaled(&mut out, b, &q(1), &zero);
    out
}
