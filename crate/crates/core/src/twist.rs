//! Linear automorphisms of `P^d` and the Zhang-twisted product `a ⋆ b = a·(b∘σ^n)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::idealizer::DegreePiece;
use crate::poly::{Field, HomIdeal, Matrix, Monomial, Poly, Scalar};

/// An invertible `(d+1)×(d+1)` rational matrix acting by `σ(p) = M p`, so that
/// `x_i ∘ σ = Σ_j M_ij x_j`.
pub struct ProjAutomorphism {
    matrix: Matrix,
    inverse: Matrix,
    field: Field,
    powers: Mutex<HashMap<i64, Matrix>>,
}

impl Clone for ProjAutomorphism {
    fn clone(&self) -> Self {
        let cache = self.powers.lock().expect("power cache poisoned").clone();
        ProjAutomorphism {
            matrix: self.matrix.clone(),
            inverse: self.inverse.clone(),
            field: self.field,
            powers: Mutex::new(cache),
        }
    }
}

impl fmt::Debug for ProjAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjAutomorphism({self})")
    }
}

impl fmt::Display for ProjAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.matrix.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.matrix.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.matrix.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl PartialEq for ProjAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.field == other.field
    }
}

impl ProjAutomorphism {
    /// Builds σ from rational rows; the entries of σ and σ^{-1} must make sense in `field`.
    pub fn new(rows: Vec<Vec<BigRational>>, field: Field) -> Result<ProjAutomorphism> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("σ must be a square matrix".into()));
        }
        let data = rows
            .into_iter()
            .map(|r| r.into_iter().map(Scalar::Q).collect())
            .collect();
        let matrix = Matrix::from_rows(data, n, Field::Rational);
        let inverse = matrix.inverse().ok_or(Error::SingularMatrix)?;
        if !field.is_rational() {
            for m in [&matrix, &inverse] {
                for x in &m.data {
                    field.from_rational(x.as_rational().expect("rational"))?;
                }
            }
            let det = field.from_rational(matrix.determinant().as_rational().expect("rational"))?;
            if det.is_zero() {
                return Err(Error::SingularMatrix);
            }
        }
        Ok(ProjAutomorphism {
            matrix,
            inverse,
            field,
            powers: Mutex::new(HashMap::new()),
        })
    }

    pub fn from_integers(rows: &[&[i64]], field: Field) -> Result<ProjAutomorphism> {
        ProjAutomorphism::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
            field,
        )
    }

    pub fn diagonal(entries: &[BigRational], field: Field) -> Result<ProjAutomorphism> {
        let n = entries.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { entries[i].clone() } else { BigRational::from_integer(0.into()) })
                    .collect()
            })
            .collect();
        ProjAutomorphism::new(rows, field)
    }

    pub fn identity(nvars: usize, field: Field) -> ProjAutomorphism {
        let one = BigRational::from_integer(1.into());
        ProjAutomorphism::diagonal(&vec![one; nvars], field).expect("identity is invertible")
    }

    pub fn nvars(&self) -> usize {
        self.matrix.rows
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// The rational matrix of σ.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigRational {
        self.matrix.get(r, c).as_rational().expect("rational")
    }

    /// Rational matrix of σ^n (cached).
    pub fn power(&self, n: i64) -> Matrix {
        if n == 0 {
            return Matrix::identity(self.nvars(), Field::Rational);
        }
        if n == 1 {
            return self.matrix.clone();
        }
        if n == -1 {
            return self.inverse.clone();
        }
        if let Some(m) = self.powers.lock().expect("power cache poisoned").get(&n) {
            return m.clone();
        }
        let base = if n > 0 { &self.matrix } else { &self.inverse };
        let mut e = n.unsigned_abs();
        let mut acc = Matrix::identity(self.nvars(), Field::Rational);
        let mut sq = base.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        self.powers
            .lock()
            .expect("power cache poisoned")
            .insert(n, acc.clone());
        acc
    }

    /// σ^n as a new automorphism.
    pub fn pow(&self, n: i64) -> ProjAutomorphism {
        let m = self.power(n);
        let rows = (0..m.rows)
            .map(|r| (0..m.cols).map(|c| m.get(r, c).as_rational().expect("rational").clone()).collect())
            .collect();
        ProjAutomorphism::new(rows, self.field).expect("powers of σ are invertible")
    }

    /// The same automorphism with its matrix scaled by `lambda`.
    pub fn scaled(&self, lambda: &BigRational) -> Result<ProjAutomorphism> {
        let rows = (0..self.nvars())
            .map(|r| (0..self.nvars()).map(|c| self.entry(r, c) * lambda).collect())
            .collect();
        ProjAutomorphism::new(rows, self.field)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.nvars()).all(|r| (0..self.nvars()).all(|c| r == c || self.matrix.get(r, c).is_zero()))
    }

    /// Diagonal entries, when σ is diagonal.
    pub fn diagonal_entries(&self) -> Option<Vec<BigRational>> {
        self.is_diagonal()
            .then(|| (0..self.nvars()).map(|i| self.entry(i, i).clone()).collect())
    }

    /// True when σ^n is a scalar matrix, i.e. acts trivially on `P^d`.
    pub fn power_is_projectively_trivial(&self, n: i64) -> bool {
        let m = self.power(n);
        let d = m.get(0, 0).clone();
        (0..m.rows).all(|r| (0..m.cols).all(|c| if r == c { *m.get(r, c) == d } else { m.get(r, c).is_zero() }))
    }

    /// Linear forms `x_i ∘ σ^n` over the working field.
    pub fn linear_forms(&self, n: i64) -> Vec<Poly> {
        let m = self.power(n);
        (0..m.rows)
            .map(|r| {
                let terms = (0..m.cols)
                    .filter(|&c| !m.get(r, c).is_zero())
                    .map(|c| {
                        let q = m.get(r, c).as_rational().expect("rational");
                        (Monomial::var(c), self.field.from_rational(q).expect("validated"))
                    })
                    .collect();
                Poly::from_terms(terms)
            })
            .collect()
    }

    /// σ^n applied to a coordinate vector: `M^n p`.
    pub fn apply(&self, point: &[BigRational], n: i64) -> Vec<BigRational> {
        let m = self.power(n);
        (0..m.rows)
            .map(|r| {
                let mut acc = BigRational::from_integer(0.into());
                for (c, x) in point.iter().enumerate() {
                    acc += m.get(r, c).as_rational().expect("rational") * x;
                }
                acc
            })
            .collect()
    }
}

/// `f ∘ σ^n`.
pub fn pullback(f: &Poly, sigma: &ProjAutomorphism, n: i64) -> Poly {
    if n == 0 || f.is_zero() {
        return f.clone();
    }
    f.substitute(&sigma.linear_forms(n), sigma.field())
}

/// `I^{σ^n} = { f ∘ σ^n : f ∈ I }`, generator by generator.
pub fn pullback_ideal(ideal: &HomIdeal, sigma: &ProjAutomorphism, n: i64) -> HomIdeal {
    let forms = sigma.linear_forms(n);
    let field = sigma.field();
    ideal.map_gens(|g| if n == 0 { g.clone() } else { g.substitute(&forms, field) })
}

/// Homogeneous element of the twisted ring `B` in degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedElement {
    degree: u32,
    poly: Poly,
}

impl TwistedElement {
    pub fn new(degree: u32, poly: Poly) -> Result<TwistedElement> {
        if !poly.is_zero() && poly.homogeneous_degree() != Some(degree) {
            return Err(Error::Inhomogeneous(format!("{poly} is not a form of degree {degree}")));
        }
        Ok(TwistedElement { degree, poly })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }
}

/// `a ⋆ b = a · (b ∘ σ^{deg a})`.
pub fn twist_multiply(a: &TwistedElement, b: &TwistedElement, sigma: &ProjAutomorphism) -> TwistedElement {
    let shifted = pullback(&b.poly, sigma, a.degree as i64);
    TwistedElement {
        degree: a.degree + b.degree,
        poly: a.poly.mul(&shifted),
    }
}

/// `B_n`: all forms of degree `n` in `d+1` variables.
#[allow(non_snake_case)]
pub fn graded_piece_B(nvars: usize, n: u32, field: Field) -> DegreePiece {
    let basis = Monomial::all_of_degree(nvars, n)
        .into_iter()
        .map(|m| Poly::monomial(m, field.one()))
        .collect();
    DegreePiece::from_basis_unchecked(nvars, n, field, basis)
}
