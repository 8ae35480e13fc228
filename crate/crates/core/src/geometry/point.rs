//! Rational points of `P^d`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{parse_rational, Field, HomIdeal, Monomial, Poly, Scalar};
use crate::twist::ProjAutomorphism;

/// Homogeneous coordinates normalized so the first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalPoint {
    coords: Vec<BigRational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<RationalPoint> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::DimensionMismatch("all coordinates are zero".into()));
        };
        Ok(RationalPoint {
            coords: coords.into_iter().map(|c| c / &lead).collect(),
        })
    }

    pub fn from_integers(coords: &[i64]) -> Result<RationalPoint> {
        RationalPoint::new(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// Parses `[a0 : a1 : ... : ad]` with integer or `a/b` entries.
    pub fn parse(text: &str) -> Result<RationalPoint> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: "point must look like [a0 : a1 : ...]".into(),
            })?;
        let mut coords = Vec::new();
        let mut pos = 1;
        for part in inner.split(':') {
            let q = parse_rational(part.trim()).ok_or_else(|| Error::Parse {
                pos,
                msg: format!("bad rational {:?}", part.trim()),
            })?;
            coords.push(q);
            pos += part.len() + 1;
        }
        RationalPoint::new(coords)
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    /// Coordinates in the working field.
    pub fn scalars(&self, field: Field) -> Result<Vec<Scalar>> {
        self.coords.iter().map(|c| field.from_rational(c)).collect()
    }

    /// `σ^n(p)`.
    pub fn image(&self, sigma: &ProjAutomorphism, n: i64) -> RationalPoint {
        RationalPoint::new(sigma.apply(&self.coords, n)).expect("σ is invertible")
    }

    /// Every generator of `ideal` vanishes at the point.
    pub fn lies_on(&self, ideal: &HomIdeal) -> bool {
        let Ok(pt) = self.scalars(ideal.field()) else {
            return false;
        };
        ideal.gens().iter().all(|g| g.eval(&pt, ideal.field()).is_zero())
    }

    /// The ideal `(x_i - a_i x_k)` of the point, `k` the normalizing coordinate.
    pub fn ideal(&self, field: Field) -> Result<HomIdeal> {
        let k = self.coords.iter().position(|c| !c.is_zero()).expect("nonzero point");
        let mut gens = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if i == k {
                continue;
            }
            let xi = Poly::var(i, field);
            let xk = Poly::monomial(Monomial::var(k), field.from_rational(c)?);
            gens.push(xi.sub(&xk));
        }
        let mut i = HomIdeal::new(self.nvars(), field, gens)?;
        i = i.with_groebner();
        Ok(i)
    }

    pub fn is_one_at(&self, i: usize) -> bool {
        self.coords[i].is_one()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A rational point on the linear subspace `V(ideal)`, chosen away from
/// coordinate hyperplanes when possible. `salt` varies the choice.
pub fn point_on_linear_space(ideal: &HomIdeal, salt: u64) -> Option<RationalPoint> {
    let nvars = ideal.nvars();
    let field = Field::Rational;
    if !ideal.is_linear() && !ideal.is_zero() {
        return None;
    }
    let rows: Vec<Vec<Scalar>> = ideal
        .groebner()
        .iter()
        .map(|g| {
            (0..nvars)
                .map(|i| {
                    g.coefficient(&Monomial::var(i))
                        .and_then(|c| c.as_rational().cloned())
                        .map(Scalar::Q)
                        .unwrap_or_else(|| field.zero())
                })
                .collect()
        })
        .collect();
    let kernel = if rows.is_empty() {
        (0..nvars)
            .map(|i| (0..nvars).map(|j| field.from_i64((i == j) as i64)).collect())
            .collect()
    } else {
        crate::poly::Matrix::from_rows(rows, nvars, field).kernel()
    };
    if kernel.is_empty() {
        return None;
    }
    let weights = [1i64, 2, 3, 5, 7, 11, 13, 17, 19, 23];
    let mut coords = vec![BigRational::zero(); nvars];
    for (t, v) in kernel.iter().enumerate() {
        let w = weights[(t + salt as usize) % weights.len()] + salt as i64 * (t as i64 + 1);
        for (c, x) in coords.iter_mut().zip(v) {
            *c += x.as_rational().expect("rational") * BigRational::from_integer(w.into());
        }
    }
    RationalPoint::new(coords).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_parsing() {
        let p = RationalPoint::parse("[2 : 4 : 1/2]").unwrap();
        assert_eq!(p, RationalPoint::parse("[1:2:1/4]").unwrap());
        assert_eq!(p.to_string(), "[1:2:1/4]");
        assert!(RationalPoint::parse("[0:0]").is_err());
        assert!(RationalPoint::parse("1:2").is_err());
    }

    #[test]
    fn point_ideal() {
        let p = RationalPoint::from_integers(&[1, 1, 1]).unwrap();
        let i = p.ideal(Field::Rational).unwrap();
        assert!(p.lies_on(&i));
        assert_eq!(i.hilbert_polynomial().to_string(), "1");
        assert!(!RationalPoint::from_integers(&[1, 0, 0]).unwrap().lies_on(&i));
    }

    #[test]
    fn points_on_linear_spaces() {
        let line = HomIdeal::parse("x0 - x2", 3, Field::Rational).unwrap();
        for salt in 0..3 {
            let p = point_on_linear_space(&line, salt).unwrap();
            assert!(p.lies_on(&line));
        }
    }
}
