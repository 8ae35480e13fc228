//! Forward orbits of points under σ and their intersections with `Z`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::eigen::eigen_data;
use super::point::RationalPoint;
use crate::poly::{Field, HomIdeal, Matrix, Poly, Scalar};
use crate::twist::ProjAutomorphism;

/// Largest analytic bound for which hits are enumerated exhaustively.
pub const CERTIFICATE_CAP: u64 = 5000;
const DOMINANCE_SEARCH: u64 = 4000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointOrder {
    Finite(u64),
    NoPeriodWithin(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitVerdict {
    /// No hits at any `n >= n0`; the hit list is complete.
    CertifiedFinite { n0: u64, justification: String },
    FiniteWithinHorizon,
    /// Hits recur with the given period.
    Infinite { period: u64 },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub point: RationalPoint,
    pub horizon: u64,
    pub hits: Vec<u64>,
    pub verdict: OrbitVerdict,
}

impl OrbitReport {
    pub fn is_certified(&self) -> bool {
        matches!(
            self.verdict,
            OrbitVerdict::CertifiedFinite { .. } | OrbitVerdict::Infinite { .. }
        )
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.verdict, OrbitVerdict::Infinite { .. })
    }
}

/// Projective orbit over the working field, normalized at each step.
struct FieldOrbit {
    matrix: Matrix,
    current: Vec<Scalar>,
}

impl FieldOrbit {
    fn new(p: &RationalPoint, sigma: &ProjAutomorphism, field: Field) -> Option<FieldOrbit> {
        let m = sigma.matrix();
        let mut matrix = Matrix::zeros(m.rows, m.cols, field);
        for r in 0..m.rows {
            for c in 0..m.cols {
                matrix.set(r, c, field.from_rational(m.get(r, c).as_rational()?).ok()?);
            }
        }
        let current = normalize(p.scalars(field).ok()?)?;
        Some(FieldOrbit { matrix, current })
    }

    fn step(&mut self) {
        let next = self.matrix.mul_vec(&self.current);
        self.current = normalize(next).expect("σ is invertible mod p");
    }
}

fn normalize(v: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let lead = v.iter().find(|c| !c.is_zero())?.inv();
    Some(v.iter().map(|c| c * &lead).collect())
}

fn in_zero_set(gens: &[Poly], pt: &[Scalar], field: Field) -> bool {
    gens.iter().all(|g| g.eval(pt, field).is_zero())
}

/// Least `k <= bound` with `σ^k(p) = p`.
pub fn point_order(p: &RationalPoint, sigma: &ProjAutomorphism, bound: u64) -> PointOrder {
    let mut orbit = FieldOrbit::new(p, sigma, Field::Rational).expect("rational orbit");
    let start = orbit.current.clone();
    for k in 1..=bound {
        orbit.step();
        if orbit.current == start {
            return PointOrder::Finite(k);
        }
    }
    PointOrder::NoPeriodWithin(bound)
}

fn order_over(p: &RationalPoint, sigma: &ProjAutomorphism, field: Field, bound: u64) -> Option<u64> {
    let mut orbit = FieldOrbit::new(p, sigma, field)?;
    let start = orbit.current.clone();
    (1..=bound).find(|_| {
        orbit.step();
        orbit.current == start
    })
}

fn hits_up_to(p: &RationalPoint, sigma: &ProjAutomorphism, z: &HomIdeal, last: u64) -> Option<Vec<u64>> {
    let field = z.field();
    let mut orbit = FieldOrbit::new(p, sigma, field)?;
    let mut hits = Vec::new();
    for n in 0..=last {
        if in_zero_set(z.gens(), &orbit.current, field) {
            hits.push(n);
        }
        if n < last {
            orbit.step();
        }
    }
    Some(hits)
}

/// The set `{n : σ^n(p) ∈ Z}`, with a certificate when one can be found.
///
/// Without a certificate the verdict is `FiniteWithinHorizon` when no hit lies
/// in the upper half of the horizon, and `Inconclusive` otherwise.
pub fn forward_orbit_hits(p: &RationalPoint, sigma: &ProjAutomorphism, z: &HomIdeal, horizon: u64) -> OrbitReport {
    let horizon = horizon.max(1);
    let field = z.field();
    let report = |hits, verdict| OrbitReport {
        point: p.clone(),
        horizon,
        hits,
        verdict,
    };
    let Some(hits) = hits_up_to(p, sigma, z, horizon) else {
        return report(
            Vec::new(),
            OrbitVerdict::Inconclusive {
                reason: "point or σ does not reduce modulo the characteristic".into(),
            },
        );
    };
    // A periodic orbit decides everything within one period.
    if let Some(k) = order_over(p, sigma, field, horizon) {
        let in_period = hits.iter().any(|&n| n < k);
        let verdict = if in_period {
            OrbitVerdict::Infinite { period: k }
        } else {
            OrbitVerdict::CertifiedFinite {
                n0: 0,
                justification: format!("periodic orbit of length {k} avoids Z"),
            }
        };
        return report(hits, verdict);
    }
    if field.is_rational() {
        match dominant_term_bound(p, sigma, z) {
            Some(Certificate::Bound(n0)) if n0 <= CERTIFICATE_CAP => {
                let last = n0.max(horizon);
                let hits = hits_up_to(p, sigma, z, last).expect("rational orbit");
                return report(
                    hits,
                    OrbitVerdict::CertifiedFinite {
                        n0,
                        justification: "dominant-term bound on exponential-polynomial sums".into(),
                    },
                );
            }
            Some(Certificate::Recurring(period)) => {
                return report(hits, OrbitVerdict::Infinite { period });
            }
            _ => {}
        }
    }
    let verdict = if hits.iter().any(|&n| 2 * n > horizon) {
        OrbitVerdict::Inconclusive {
            reason: "hits persist into the upper half of the horizon".into(),
        }
    } else {
        OrbitVerdict::FiniteWithinHorizon
    };
    report(hits, verdict)
}

enum Certificate {
    /// No hits for `n >= n0`.
    Bound(u64),
    /// Every generator vanishes identically along a residue class.
    Recurring(u64),
}

/// `Σ_γ R_γ(m) γ^m` with `R_γ` given by coefficients, lowest degree first.
type ExpPoly = Vec<(BigRational, Vec<BigRational>)>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow_q(b: &BigRational, e: u64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= b;
    }
    acc
}

/// Multisets of size `e` from `values`, as products.
fn products(values: &[BigRational], e: u32) -> Vec<BigRational> {
    fn rec(values: &[BigRational], start: usize, left: u32, acc: BigRational, out: &mut Vec<BigRational>) {
        if left == 0 {
            if !out.contains(&acc) {
                out.push(acc);
            }
            return;
        }
        for i in start..values.len() {
            rec(values, i, left - 1, &acc * &values[i], out);
        }
    }
    let mut out = Vec::new();
    rec(values, 0, e, BigRational::one(), &mut out);
    out
}

/// Coefficients `c_{β,k}` with `g(M^n p) = Σ c_{β,k} n^k β^n`, verified on extra terms.
fn fit_exponential_polynomial(
    g: &Poly,
    p: &RationalPoint,
    sigma: &ProjAutomorphism,
    eigen: &[(BigRational, usize)],
) -> Option<Vec<(BigRational, u32, BigRational)>> {
    let e = g.homogeneous_degree()?;
    let mmax = eigen.iter().map(|(_, m)| *m).max()? as u32;
    let kmax = e * (mmax - 1);
    let values: Vec<BigRational> = eigen.iter().map(|(l, _)| l.clone()).collect();
    let bases = products(&values, e);
    let unknowns: Vec<(BigRational, u32)> = bases
        .iter()
        .flat_map(|b| (0..=kmax).map(move |k| (b.clone(), k)))
        .collect();
    let rows = unknowns.len() + 3;
    let mut w: Vec<BigRational> = p.coords().to_vec();
    let mut u = Vec::with_capacity(rows);
    for _ in 0..rows {
        let pt: Vec<Scalar> = w.iter().map(|c| Scalar::Q(c.clone())).collect();
        u.push(g.eval(&pt, Field::Rational));
        w = sigma.apply(&w, 1);
    }
    let mut a = Matrix::zeros(rows, unknowns.len(), Field::Rational);
    for n in 0..rows {
        for (c, (b, k)) in unknowns.iter().enumerate() {
            let v = pow_q(&q(n as i64), *k as u64) * pow_q(b, n as u64);
            a.set(n, c, Scalar::Q(v));
        }
    }
    let sol = a.solve(&u)?;
    Some(
        unknowns
            .into_iter()
            .zip(sol)
            .filter(|(_, c)| !c.is_zero())
            .map(|((b, k), c)| (b, k, c.as_rational().expect("rational").clone()))
            .collect(),
    )
}

/// The subsequence `n = 2m + r` as a sum over `γ = β²`.
fn parity_class(terms: &[(BigRational, u32, BigRational)], r: u32) -> ExpPoly {
    let mut out: ExpPoly = Vec::new();
    for (b, k, c) in terms {
        let gamma = b * b;
        let scale = c * pow_q(b, r as u64);
        let mut coeffs = vec![BigRational::zero(); *k as usize + 1];
        // (2m + r)^k = Σ_j C(k,j) 2^j r^{k-j} m^j
        for j in 0..=*k {
            let bin = BigRational::from_integer(binomial(BigInt::from(*k), BigInt::from(j)));
            let term = bin * pow_q(&q(2), j as u64) * pow_q(&q(r as i64), (*k - j) as u64);
            coeffs[j as usize] += &scale * term;
        }
        match out.iter_mut().find(|(g, _)| *g == gamma) {
            Some((_, existing)) => {
                if existing.len() < coeffs.len() {
                    existing.resize(coeffs.len(), BigRational::zero());
                }
                for (x, y) in existing.iter_mut().zip(coeffs) {
                    *x += y;
                }
            }
            None => out.push((gamma, coeffs)),
        }
    }
    for (_, c) in &mut out {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
    }
    out.retain(|(_, c)| !c.is_empty());
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out
}

/// Least `m0 >= 1` with `V(m) != 0` for all `m >= m0`, or `None` if no bound
/// is found within the search limit. `V` must be nonzero.
fn dominance_start(v: &ExpPoly) -> Option<u64> {
    let (gamma1, lead_poly) = &v[0];
    let s1 = lead_poly.len() - 1;
    let c = lead_poly[s1].abs();
    let lower: BigRational = lead_poly[..s1].iter().map(|x| x.abs()).sum();
    // Σ_{i<s1} |c_i| m^{i-s1} <= lower/m <= |c|/2 once m >= 2·lower/|c|.
    let m1 = (q(2) * &lower / &c).ceil().to_integer();
    let mut start: u64 = m1.try_into().ok()?;
    start = start.max(1);
    // Tail terms A·m^{j-s1}·ρ^m, each nonincreasing from its own threshold.
    let mut tail: Vec<(BigRational, i64, BigRational)> = Vec::new();
    for (gamma, poly) in &v[1..] {
        let rho = gamma / gamma1;
        for (j, a) in poly.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let s = j as i64 - s1 as i64;
            if s > 0 {
                let mut m = 1u64;
                loop {
                    let growth = pow_q(&(q(1) + BigRational::new(1.into(), m.into())), s as u64);
                    if growth * &rho <= q(1) {
                        break;
                    }
                    m += 1;
                    if m > DOMINANCE_SEARCH {
                        return None;
                    }
                }
                start = start.max(m);
            }
            tail.push((a.abs(), s, rho.clone()));
        }
    }
    if tail.is_empty() {
        return Some(start);
    }
    let half = &c / q(2);
    let mut values: Vec<BigRational> = tail
        .iter()
        .map(|(a, s, rho)| {
            let m = q(start as i64);
            let mpow = if *s >= 0 {
                pow_q(&m, *s as u64)
            } else {
                pow_q(&m, s.unsigned_abs()).recip()
            };
            a * mpow * pow_q(rho, start)
        })
        .collect();
    for m in start..start + DOMINANCE_SEARCH {
        let total: BigRational = values.iter().sum();
        if total < half {
            return Some(m);
        }
        let ratio = BigRational::new(BigInt::from(m + 1), BigInt::from(m));
        for (val, (_, s, rho)) in values.iter_mut().zip(&tail) {
            let step = if *s >= 0 {
                pow_q(&ratio, *s as u64)
            } else {
                pow_q(&ratio, s.unsigned_abs()).recip()
            };
            *val = &*val * step * rho;
        }
    }
    None
}

fn dominant_term_bound(p: &RationalPoint, sigma: &ProjAutomorphism, z: &HomIdeal) -> Option<Certificate> {
    let eigen = eigen_data(sigma.matrix()).eigenvalues?;
    let gens: Vec<Poly> = z.gens().iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Some(Certificate::Recurring(1));
    }
    let mut fits = Vec::with_capacity(gens.len());
    for g in &gens {
        fits.push(fit_exponential_polynomial(g, p, sigma, &eigen)?);
    }
    let mut n0 = 0u64;
    let mut recurring = Vec::new();
    for r in 0..2u32 {
        let mut best: Option<u64> = None;
        for f in &fits {
            let v = parity_class(f, r);
            if v.is_empty() {
                continue;
            }
            if let Some(m0) = dominance_start(&v) {
                let bound = 2 * m0 + r as u64;
                best = Some(best.map_or(bound, |b| b.min(bound)));
            }
        }
        let all_zero = fits.iter().all(|f| parity_class(f, r).is_empty());
        if all_zero {
            recurring.push(r);
            continue;
        }
        n0 = n0.max(best?);
    }
    if !recurring.is_empty() {
        let period = if recurring.len() == 2 { 1 } else { 2 };
        return Some(Certificate::Recurring(period));
    }
    Some(Certificate::Bound(n0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(rows: &[&[i64]]) -> ProjAutomorphism {
        ProjAutomorphism::from_integers(rows, Field::Rational).unwrap()
    }

    fn pt(c: &[i64]) -> RationalPoint {
        RationalPoint::from_integers(c).unwrap()
    }

    #[test]
    fn orders() {
        let id = ProjAutomorphism::identity(3, Field::Rational);
        assert_eq!(point_order(&pt(&[1, 2, 3]), &id, 10), PointOrder::Finite(1));
        let flip = sigma(&[&[1, 0], &[0, -1]]);
        assert_eq!(point_order(&pt(&[1, 1]), &flip, 10), PointOrder::Finite(2));
        let tau = sigma(&[&[1, 1], &[0, 1]]);
        assert_eq!(point_order(&pt(&[0, 1]), &tau, 100), PointOrder::NoPeriodWithin(100));
    }

    #[test]
    fn diagonal_certificate() {
        let s = sigma(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let z = HomIdeal::parse("x0 - x1", 3, Field::Rational).unwrap();
        let r = forward_orbit_hits(&pt(&[1, 1, 1]), &s, &z, 20);
        assert_eq!(r.hits, vec![0]);
        assert!(matches!(r.verdict, OrbitVerdict::CertifiedFinite { .. }));
    }

    #[test]
    fn unipotent_certificate() {
        let tau = sigma(&[&[1, 1], &[0, 1]]);
        let z = HomIdeal::parse("x0", 2, Field::Rational).unwrap();
        let r = forward_orbit_hits(&pt(&[0, 1]), &tau, &z, 10);
        assert_eq!(r.hits, vec![0]);
        assert!(matches!(r.verdict, OrbitVerdict::CertifiedFinite { .. }));
    }

    #[test]
    fn fixed_point_in_z() {
        let s = sigma(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let z = HomIdeal::parse("x1, x2", 3, Field::Rational).unwrap();
        let r = forward_orbit_hits(&pt(&[1, 0, 0]), &s, &z, 5);
        assert_eq!(r.hits, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(r.verdict, OrbitVerdict::Infinite { period: 1 });
    }

    #[test]
    fn sign_alternation_splits_by_parity() {
        // σ = diag(1, -1): orbit of [1:1] alternates, hitting x0 - x1 at even n.
        let s = sigma(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 2]]);
        let z = HomIdeal::parse("x0 - x1", 3, Field::Rational).unwrap();
        let r = forward_orbit_hits(&pt(&[1, 1, 1]), &s, &z, 6);
        assert_eq!(r.hits, vec![0, 2, 4, 6]);
        assert_eq!(r.verdict, OrbitVerdict::Infinite { period: 2 });
        // 1 + (-1)^n - 2^{n+1} vanishes only at n = 0.
        let z = HomIdeal::parse("x0 + x1 - x2", 3, Field::Rational).unwrap();
        let r = forward_orbit_hits(&pt(&[1, 1, 2]), &s, &z, 6);
        assert_eq!(r.hits, vec![0]);
        assert!(matches!(r.verdict, OrbitVerdict::CertifiedFinite { .. }));
    }

    #[test]
    fn irrational_eigenvalues_fall_back() {
        let s = sigma(&[&[0, 2, 0], &[1, 0, 0], &[0, 0, 1]]);
        let z = HomIdeal::parse("x0 - 7*x2, x1 - 5*x2", 3, Field::Rational).unwrap();
        let r = forward_orbit_hits(&pt(&[1, 1, 1]), &s, &z, 12);
        assert!(r.hits.is_empty());
        // Eigenvalues ±√2 are irrational, so no certificate is attempted.
        assert_eq!(r.verdict, OrbitVerdict::FiniteWithinHorizon);
    }

    #[test]
    fn prime_field_orbits_are_periodic() {
        let s = ProjAutomorphism::from_integers(&[&[1, 0], &[0, 2]], Field::prime(7).unwrap()).unwrap();
        let z = HomIdeal::parse("x0 - 4*x1", 2, Field::prime(7).unwrap()).unwrap();
        let r = forward_orbit_hits(&pt(&[1, 1]), &s, &z, 10);
        // 2^n ≡ 1/4 ≡ 2 (mod 7) exactly when n ≡ 1 (mod 3).
        assert_eq!(r.hits, vec![1, 4, 7, 10]);
        assert_eq!(r.verdict, OrbitVerdict::Infinite { period: 3 });
    }
}
