//! Sparse multivariate polynomials with terms kept in decreasing degrevlex order.

use std::cmp::Ordering;
use std::fmt;

use super::monomial::{Monomial, MonomialOrder};
use super::scalar::{Field, Scalar};

/// A polynomial. Terms are strictly decreasing in degrevlex and carry no zero
/// coefficients; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Scalar)>,
}

const ORD: MonomialOrder = MonomialOrder::DegRevLex;

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Poly {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn one(field: Field) -> Poly {
        Self::constant(field.one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(i: usize, field: Field) -> Poly {
        Self::monomial(Monomial::var(i), field.one())
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, Scalar)>) -> Poly {
        terms.sort_by(|a, b| ORD.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    /// Wraps terms already sorted in decreasing degrevlex with no zeros.
    pub(crate) fn from_sorted(terms: Vec<(Monomial, Scalar)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| ORD.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term in degrevlex.
    pub fn lead(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn field(&self) -> Option<Field> {
        self.terms.first().map(|t| t.1.field())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|t| t.0.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    /// Number of variables actually used (max index + 1).
    pub fn support_len(&self) -> usize {
        self.terms.iter().map(|t| t.0.support_len()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms
            .binary_search_by(|t| ORD.cmp(m, &t.0))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.combine(other, true)
    }

    fn combine(&self, other: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match ORD.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(
            b[j..]
                .iter()
                .map(|(m, c)| (*m, if negate { -c } else { c.clone() })),
        );
        Poly { terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Poly::zero();
        for (m, c) in &small.terms {
            let part = Poly {
                terms: large
                    .terms
                    .iter()
                    .map(|(t, d)| (t.mul(m), d * c))
                    .collect(),
            };
            acc = acc.add(&part);
        }
        acc
    }

    pub fn pow(&self, e: u32, field: Field) -> Poly {
        let mut acc = Poly::one(field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division; returns `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (dm, dc) = divisor.lead()?.clone();
        let dinv = dc.inv();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.lead().cloned() {
            let q = dm.div(&m)?;
            let qc = &c * &dinv;
            rem = rem.sub(&divisor.mul_monomial(&q).scale(&qc));
            quot.push((q, qc));
        }
        Some(Poly::from_sorted(quot))
    }

    pub fn eval(&self, point: &[Scalar], field: Field) -> Scalar {
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Poly], field: Field) -> Poly {
        // powers[i][e] = images[i]^e, built lazily
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|_| vec![Poly::one(field)]).collect();
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(img);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Coefficient vector with respect to the given monomial basis; monomials
    /// outside the basis are an error.
    pub fn coordinates(&self, basis: &[Monomial], field: Field) -> Option<Vec<Scalar>> {
        let mut out = vec![field.zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = basis.iter().position(|b| b == m)?;
            out[i] = c.clone();
        }
        Some(out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
