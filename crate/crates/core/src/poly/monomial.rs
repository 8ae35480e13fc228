//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

/// Upper bound on the number of ring variables, including the auxiliary
/// variable used by elimination.
pub const MAX_VARS: usize = 12;

/// Dense exponent vector with cached total degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
        deg: 0,
    };

    pub fn var(i: usize) -> Monomial {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Monomial {
        let mut m = Self::ONE;
        m.exps[i] = e as u16;
        m.deg = e;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Self::ONE;
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = e as u16;
            m.deg += e;
        }
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    /// Largest variable index with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m.deg += other.deg;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self` when `self` divides `other`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut m = *other;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Self::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = Self::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Returns `Some(i)` when this is a pure power `x_i^e` with `e >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for i in 0..MAX_VARS {
            if self.exps[i] != 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut m = *self;
        m.deg = m.deg - m.exps[i] as u32 + e;
        m.exps[i] = e as u16;
        m
    }

    /// Drops variable `i` (sets its exponent to zero).
    pub fn without(&self, i: usize) -> Monomial {
        self.with_exp(i, 0)
    }

    /// All monomials of total degree `deg` in `nvars` variables, in
    /// decreasing degrevlex order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial::from_exps(cur));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if deg == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        rec(0, deg, &mut cur, &mut out);
        out.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(b, a));
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for i in 0..MAX_VARS {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Monomial well-orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
    /// Block order: the variables whose bits are set in the mask form the
    /// first block and are eliminated; each block compares by degrevlex.
    Elimination { mask: u16 },
}

impl MonomialOrder {
    pub fn is_degree_compatible(&self) -> bool {
        !matches!(self, MonomialOrder::Lex | MonomialOrder::Elimination { .. })
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => degrevlex(a, b, u16::MAX),
            MonomialOrder::Lex => {
                for i in 0..MAX_VARS {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Elimination { mask } => {
                degrevlex(a, b, mask).then_with(|| degrevlex(a, b, !mask))
            }
        }
    }
}

#[inline]
fn degrevlex(a: &Monomial, b: &Monomial, mask: u16) -> Ordering {
    let (da, db) = if mask == u16::MAX {
        (a.deg, b.deg)
    } else {
        let mut da = 0u32;
        let mut db = 0u32;
        for i in 0..MAX_VARS {
            if mask & (1 << i) != 0 {
                da += a.exps[i] as u32;
                db += b.exps[i] as u32;
            }
        }
        (da, db)
    };
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..MAX_VARS).rev() {
        if mask & (1 << i) == 0 {
            continue;
        }
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}
