//! Hilbert series of monomial ideals and graded free-module quotients.
//!
//! A series is stored as the numerator `N(t)` of `N(t) / (1 - t)^n`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::Monomial;

/// Hilbert series `N(t) / (1 - t)^nvars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: Vec<i128>,
    nvars: usize,
}

impl HilbertSeries {
    pub fn zero(nvars: usize) -> HilbertSeries {
        HilbertSeries {
            numerator: Vec::new(),
            nvars,
        }
    }

    /// Series of `S / (gens)` for a monomial ideal.
    pub fn of_monomial_ideal(gens: &[Monomial], nvars: usize) -> HilbertSeries {
        HilbertSeries {
            numerator: trim(numerator(gens.to_vec())),
            nvars,
        }
    }

    /// Series of `(+)_c S(-shift_c) / in_c` given per-component monomial ideals.
    pub fn of_monomial_module(components: &[(u32, Vec<Monomial>)], nvars: usize) -> HilbertSeries {
        let mut acc = HilbertSeries::zero(nvars);
        for (shift, gens) in components {
            let n = numerator(gens.clone());
            let mut shifted = vec![0i128; *shift as usize];
            shifted.extend(n);
            acc = acc.add(&HilbertSeries {
                numerator: shifted,
                nvars,
            });
        }
        acc
    }

    pub fn numerator(&self) -> &[i128] {
        &self.numerator
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        assert_eq!(self.nvars, other.nvars);
        let len = self.numerator.len().max(other.numerator.len());
        let mut n = vec![0i128; len];
        for (i, v) in self.numerator.iter().enumerate() {
            n[i] += v;
        }
        for (i, v) in other.numerator.iter().enumerate() {
            n[i] += v;
        }
        HilbertSeries {
            numerator: trim(n),
            nvars: self.nvars,
        }
    }

    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        self.add(&other.negate())
    }

    fn negate(&self) -> HilbertSeries {
        HilbertSeries {
            numerator: self.numerator.iter().map(|v| -v).collect(),
            nvars: self.nvars,
        }
    }

    /// Product of series (tensor over k of graded pieces); variable counts add.
    pub fn mul(&self, other: &HilbertSeries) -> HilbertSeries {
        let mut n = vec![0i128; self.numerator.len() + other.numerator.len()];
        for (i, a) in self.numerator.iter().enumerate() {
            for (j, b) in other.numerator.iter().enumerate() {
                n[i + j] += a * b;
            }
        }
        HilbertSeries {
            numerator: trim(n),
            nvars: self.nvars + other.nvars,
        }
    }

    /// Multiplies by `(1 - t)^k`, lowering the denominator exponent.
    pub fn times_one_minus_t_pow(&self, k: usize) -> HilbertSeries {
        assert!(k <= self.nvars);
        let mut n = self.numerator.clone();
        for _ in 0..k {
            let mut next = vec![0i128; n.len() + 1];
            for (i, v) in n.iter().enumerate() {
                next[i] += v;
                next[i + 1] -= v;
            }
            n = next;
        }
        HilbertSeries {
            numerator: trim(n),
            nvars: self.nvars - k,
        }
    }

    /// Coefficient of `t^k`.
    pub fn function(&self, k: i64) -> i128 {
        if k < 0 {
            return 0;
        }
        let n = self.nvars as i64;
        let mut acc = 0i128;
        for (i, c) in self.numerator.iter().enumerate() {
            let m = k - i as i64;
            if m < 0 || *c == 0 {
                continue;
            }
            acc += c * binom_i128(m + n - 1, n - 1);
        }
        acc
    }

    /// The eventual polynomial agreeing with [`Self::function`] in large degree.
    pub fn polynomial(&self) -> QPoly {
        let n = self.nvars;
        if n == 0 {
            return QPoly::zero();
        }
        let mut acc = QPoly::zero();
        for (i, c) in self.numerator.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            // C(k - i + n - 1, n - 1) = prod_{r=1}^{n-1} (k - i + r) / (n - 1)!
            let mut term = QPoly::constant(BigRational::from_integer(BigInt::from(*c)));
            let mut fact = BigInt::one();
            for r in 1..n {
                term = term.mul_linear(BigRational::from_integer(BigInt::from(r as i64 - i as i64)));
                fact *= BigInt::from(r);
            }
            acc = acc.add(&term.scale(&BigRational::new(BigInt::one(), fact)));
        }
        acc
    }

    /// Krull dimension of the module: `nvars` minus the multiplicity of the root `t = 1`.
    pub fn krull_dim(&self) -> usize {
        let mut n = self.numerator.clone();
        let mut k = self.nvars;
        while k > 0 && !n.is_empty() && n.iter().sum::<i128>() == 0 {
            // divide by (1 - t)
            let mut q = vec![0i128; n.len() - 1];
            let mut carry = 0i128;
            for i in 0..q.len() {
                carry += n[i];
                q[i] = carry;
            }
            n = trim(q);
            k -= 1;
        }
        if n.is_empty() {
            0
        } else {
            k
        }
    }

    /// Smallest degree from which the Hilbert function agrees with the polynomial.
    pub fn regularity_index(&self) -> i64 {
        (self.numerator.len() as i64 - self.nvars as i64).max(0)
    }
}

fn trim(mut v: Vec<i128>) -> Vec<i128> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn binom_i128(n: i64, k: i64) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of `S / (gens)` via pivoting on variable powers.
fn numerator(gens: Vec<Monomial>) -> Vec<i128> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![1i128];
        for g in &gens {
            let d = g.degree() as usize;
            let mut next = vec![0i128; acc.len() + d];
            for (i, v) in acc.iter().enumerate() {
                next[i] += v;
                next[i + d] -= v;
            }
            acc = next;
        }
        return acc;
    }
    // Pivot on x_i^e taken from a generator that is not a pure power and
    // shares a variable with another generator.
    let m = gens
        .iter()
        .find(|g| g.pure_power_var().is_none())
        .copied()
        .unwrap_or(gens[0]);
    let i = (0..super::monomial::MAX_VARS)
        .filter(|&i| m.exp(i) > 0)
        .max_by_key(|&i| gens.iter().filter(|g| g.exp(i) > 0).count())
        .expect("nonconstant generator");
    let e = m.exp(i);
    let p = Monomial::var_pow(i, e);
    let mut plus = gens.clone();
    plus.push(p);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| g.gcd(&p).div(g).expect("gcd divides"))
        .collect();
    let a = numerator(plus);
    let b = numerator(colon);
    let mut out = vec![0i128; a.len().max(b.len() + e as usize)];
    for (k, v) in a.iter().enumerate() {
        out[k] += v;
    }
    for (k, v) in b.iter().enumerate() {
        out[k + e as usize] += v;
    }
    trim(out)
}

/// Univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> QPoly {
        QPoly { coeffs: vec![c] }.trimmed()
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> QPoly {
        QPoly { coeffs }.trimmed()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn trimmed(mut self) -> QPoly {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Constant value when the polynomial is constant.
    pub fn constant_value(&self) -> Option<i64> {
        if !self.is_constant() {
            return None;
        }
        match self.coeffs.first() {
            None => Some(0),
            Some(c) if c.is_integer() => c.to_integer().to_i64(),
            Some(_) => None,
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![BigRational::zero(); len];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[i] += v;
        }
        for (i, v) in other.coeffs.iter().enumerate() {
            c[i] += v;
        }
        QPoly { coeffs: c }.trimmed()
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, s: &BigRational) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
        .trimmed()
    }

    /// Multiplies by `(k + a)`.
    fn mul_linear(&self, a: BigRational) -> QPoly {
        let mut c = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[i + 1] += v;
            c[i] += v * &a;
        }
        QPoly { coeffs: c }.trimmed()
    }

    pub fn eval(&self, k: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(k));
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = e == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
                if e > 0 {
                    write!(f, "*")?;
                }
            }
            match e {
                0 => {}
                1 => write!(f, "n")?,
                _ => write!(f, "n^{e}")?,
            }
        }
        Ok(())
    }
}
