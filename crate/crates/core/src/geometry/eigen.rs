//! Rational eigenvalues of σ and multiplicative relations among rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Field, Matrix, Scalar};

/// Characteristic polynomial `det(t I - M)`, coefficients lowest degree first.
pub fn characteristic_polynomial(m: &Matrix) -> Vec<BigRational> {
    let n = m.rows;
    let q = |s: &Scalar| s.as_rational().expect("rational matrix").clone();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk = Matrix::zeros(n, n, Field::Rational);
    for k in 1..=n {
        // M_k = M M_{k-1} + c_{n-k+1} I
        let mut next = m.mul(&mk);
        for i in 0..n {
            let v = next.get(i, i) + &Scalar::Q(coeffs[n - k + 1].clone());
            next.set(i, i, v);
        }
        mk = next;
        let prod = m.mul(&mk);
        let mut tr = BigRational::zero();
        for i in 0..n {
            tr += q(prod.get(i, i));
        }
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    coeffs
}

/// Positive divisors of `n` by trial division (`n != 0`).
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        factors.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn eval(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Synthetic division by `(t - r)`; assumes `r` is a root.
fn deflate(coeffs: &[BigRational], r: &BigRational) -> Vec<BigRational> {
    let n = coeffs.len() - 1;
    let mut out = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for i in (0..n).rev() {
        carry = &coeffs[i + 1] + &carry * r;
        out[i] = carry.clone();
    }
    out
}

/// Rational roots with multiplicity; `None` when some root is irrational.
pub fn rational_roots(coeffs: &[BigRational]) -> Option<Vec<(BigRational, usize)>> {
    let mut poly: Vec<BigRational> = coeffs.to_vec();
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    let mut roots: Vec<(BigRational, usize)> = Vec::new();
    let push = |roots: &mut Vec<(BigRational, usize)>, r: BigRational| match roots.iter_mut().find(|x| x.0 == r) {
        Some(x) => x.1 += 1,
        None => roots.push((r, 1)),
    };
    while poly.len() > 1 && poly[0].is_zero() {
        poly.remove(0);
        push(&mut roots, BigRational::zero());
    }
    if poly.len() <= 1 {
        return Some(roots);
    }
    // Integer coefficients.
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let ps = divisors(&ints[0]);
    let qs = divisors(ints.last().expect("nonconstant"));
    let mut candidates: Vec<BigRational> = Vec::new();
    for p in &ps {
        for q in &qs {
            for s in [1, -1] {
                let r = BigRational::new(p * s, q.clone());
                if !candidates.contains(&r) {
                    candidates.push(r);
                }
            }
        }
    }
    candidates.sort();
    for r in candidates {
        while poly.len() > 1 && eval(&poly, &r).is_zero() {
            poly = deflate(&poly, &r);
            push(&mut roots, r.clone());
        }
    }
    if poly.len() > 1 {
        return None;
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Some(roots)
}

/// Eigenvalue data of a rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenData {
    /// Distinct eigenvalues with algebraic multiplicity, when all are rational.
    pub eigenvalues: Option<Vec<(BigRational, usize)>>,
    pub diagonalizable: bool,
}

pub fn eigen_data(m: &Matrix) -> EigenData {
    let eigenvalues = rational_roots(&characteristic_polynomial(m));
    let diagonalizable = match &eigenvalues {
        None => false,
        Some(ev) => ev.iter().all(|(l, mult)| {
            let mut shifted = m.clone();
            for i in 0..m.rows {
                let v = shifted.get(i, i) - &Scalar::Q(l.clone());
                shifted.set(i, i, v);
            }
            m.rows - shifted.rank() == *mult
        }),
    };
    EigenData {
        eigenvalues,
        diagonalizable,
    }
}

/// Outcome of a multiplicative independence test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Multiplicative {
    /// The exponent matrix over the coprime base has full row rank.
    Independent { base: Vec<BigInt>, rank: usize },
    /// `Π q_i^{a_i} = 1` with not all `a_i` zero.
    Relation(Vec<BigInt>),
}

impl Multiplicative {
    pub fn is_independent(&self) -> bool {
        matches!(self, Multiplicative::Independent { .. })
    }
}

/// Pairwise coprime base (all entries > 1) in which every input factors.
pub fn coprime_base(nums: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = nums.iter().map(|n| n.abs()).filter(|n| n > &BigInt::one()).collect();
    base.sort();
    base.dedup();
    loop {
        let mut split = None;
        'outer: for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if g > BigInt::one() {
                    split = Some((i, j, g));
                    break 'outer;
                }
            }
        }
        let Some((i, j, g)) = split else {
            break;
        };
        let a = &base[i] / &g;
        let b = &base[j] / &g;
        base.remove(j);
        base.remove(i);
        base.extend([a, b, g]);
        base.retain(|n| n > &BigInt::one());
        base.sort();
        base.dedup();
    }
    base
}

fn exponent(mut n: BigInt, b: &BigInt) -> (i64, BigInt) {
    let mut e = 0;
    while (&n % b).is_zero() {
        n /= b;
        e += 1;
    }
    (e, n)
}

/// Decides whether the given nonzero rationals are multiplicatively independent.
pub fn multiplicative_independence(values: &[BigRational]) -> Result<Multiplicative> {
    if values.iter().any(|v| v.is_zero()) {
        return Err(Error::ZeroEntry);
    }
    let mut nums = Vec::new();
    for v in values {
        nums.push(v.numer().clone());
        nums.push(v.denom().clone());
    }
    let base = coprime_base(&nums);
    let k = values.len();
    // Columns are the values so that the kernel gives relation exponents.
    let mut mat = Matrix::zeros(base.len(), k, Field::Rational);
    for (c, v) in values.iter().enumerate() {
        let mut num = v.numer().abs();
        let mut den = v.denom().clone();
        for (r, b) in base.iter().enumerate() {
            let (en, rn) = exponent(num, b);
            let (ed, rd) = exponent(den, b);
            num = rn;
            den = rd;
            mat.set(r, c, Field::Rational.from_i64(en - ed));
        }
        debug_assert!(num.is_one() && den.is_one());
    }
    let rank = mat.rank();
    if rank == k {
        return Ok(Multiplicative::Independent { base, rank });
    }
    let kv = mat.kernel().into_iter().next().expect("rank deficient");
    let lcm = kv
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.as_rational().expect("rational").denom()));
    let mut ints: Vec<BigInt> = kv
        .iter()
        .map(|x| (x.as_rational().expect("rational") * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut ints {
                *x = -x.clone();
            }
        }
    }
    // Remove a sign: Π q^a = -1 becomes Π q^{2a} = 1.
    let negative = values
        .iter()
        .zip(&ints)
        .filter(|(v, a)| v.is_negative() && a.is_odd())
        .count()
        % 2
        == 1;
    if negative {
        for x in &mut ints {
            *x *= 2;
        }
    }
    Ok(Multiplicative::Relation(ints))
}

/// Evaluates `Π q_i^{a_i}` (for checking witnesses).
pub fn relation_product(values: &[BigRational], exps: &[BigInt]) -> BigRational {
    let mut acc = BigRational::one();
    for (v, e) in values.iter().zip(exps) {
        let e = e.to_i32().expect("small exponent");
        let base = if e < 0 { v.recip() } else { v.clone() };
        for _ in 0..e.unsigned_abs() {
            acc *= &base;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn char_poly_and_roots() {
        let m = Matrix::from_rows(
            vec![
                vec![Scalar::Q(q(1)), Scalar::Q(q(1))],
                vec![Scalar::Q(q(0)), Scalar::Q(q(1))],
            ],
            2,
            Field::Rational,
        );
        assert_eq!(characteristic_polynomial(&m), vec![q(1), q(-2), q(1)]);
        let ed = eigen_data(&m);
        assert_eq!(ed.eigenvalues, Some(vec![(q(1), 2)]));
        assert!(!ed.diagonalizable);
        // t^2 - 2 has no rational roots.
        assert_eq!(rational_roots(&[q(-2), q(0), q(1)]), None);
        let half = BigRational::new(1.into(), 2.into());
        let r = rational_roots(&[-&half * q(3), &half * q(5), q(1)]).unwrap();
        assert_eq!(r, vec![(q(-3), 1), (BigRational::new(1.into(), 2.into()), 1)]);
    }

    #[test]
    fn independence_examples() {
        assert!(multiplicative_independence(&[q(2), q(3)]).unwrap().is_independent());
        assert!(multiplicative_independence(&[q(6), q(10), q(15)]).unwrap().is_independent());
        let r = multiplicative_independence(&[q(2), q(4)]).unwrap();
        assert_eq!(r, Multiplicative::Relation(vec![2.into(), (-1).into()]));
        let r = multiplicative_independence(&[q(-1), q(3)]).unwrap();
        let Multiplicative::Relation(w) = r else { panic!() };
        assert_eq!(relation_product(&[q(-1), q(3)], &w), q(1));
        assert!(matches!(multiplicative_independence(&[q(0)]), Err(Error::ZeroEntry)));
    }

    #[test]
    fn coprime_refinement() {
        let b = coprime_base(&[12.into(), 18.into()]);
        assert_eq!(b, vec![BigInt::from(2), BigInt::from(3)]);
    }
}
