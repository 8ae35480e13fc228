//! Degree-truncated resolutions over a quotient coordinate ring `A = S/Amb`.
//!
//! Everything is linear algebra on graded pieces spanned by standard
//! monomials, so the results are exact in every degree up to the bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{HomIdeal, Matrix, Monomial, Poly, RowSpace, Scalar};

use super::module::Column;

/// Graded dimensions of `Tor_j^A(A/M, A/P)` for `j = 0..=j_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientTorTable {
    pub j_max: usize,
    pub deg_bound: u32,
    /// `dims[j][n] = dim Tor_j` in degree `n`.
    pub dims: Vec<Vec<u64>>,
    /// Degrees of the generators of each free module in the truncated resolution.
    pub generator_degrees: Vec<Vec<u32>>,
    /// Multiplication by a linear form not vanishing at `P` is nonzero on
    /// `Tor_j` between the two top degrees.
    pub sheaf_nonzero: Vec<bool>,
}

impl QuotientTorTable {
    /// Every `Tor_j`, `1 <= j <= j_max`, survives into the top degree.
    pub fn infinite_hd_evidence(&self) -> bool {
        (1..=self.j_max).all(|j| self.sheaf_nonzero[j])
    }

    /// Least `j` from which all computed `Tor` vanish at the top degree.
    pub fn vanishing_from(&self) -> Option<usize> {
        (0..=self.j_max).find(|&j| self.sheaf_nonzero[j..].iter().all(|b| !b))
    }
}

/// Graded ring `S/G` handled through standard monomials.
struct Ring<'a> {
    ideal: &'a HomIdeal,
    std: Vec<Vec<Monomial>>,
}

impl<'a> Ring<'a> {
    fn new(ideal: &'a HomIdeal, top: u32) -> Ring<'a> {
        let std = (0..=top).map(|n| ideal.standard_monomials(n)).collect();
        Ring { ideal, std }
    }

    fn basis(&self, n: i64) -> &[Monomial] {
        if n < 0 {
            &[]
        } else {
            &self.std[n as usize]
        }
    }

    fn dim(&self, shifts: &[u32], n: u32) -> usize {
        shifts.iter().map(|&a| self.basis(n as i64 - a as i64).len()).sum()
    }

    /// Coordinates of a homogeneous column of degree `n` in `(+)_k (S/G)(-a_k)`.
    fn coords(&self, col: &[Poly], shifts: &[u32], n: u32) -> Vec<Scalar> {
        let field = self.ideal.field();
        let mut out = Vec::with_capacity(self.dim(shifts, n));
        for (p, &a) in col.iter().zip(shifts) {
            let b = self.basis(n as i64 - a as i64);
            if b.is_empty() {
                continue;
            }
            let r = self.ideal.normal_form(p);
            out.extend(r.coordinates(b, field).expect("normal forms are standard"));
        }
        out
    }

    fn from_coords(&self, v: &[Scalar], shifts: &[u32], n: u32) -> Column {
        let mut out = Vec::with_capacity(shifts.len());
        let mut pos = 0;
        for &a in shifts {
            let b = self.basis(n as i64 - a as i64);
            let terms = b
                .iter()
                .zip(&v[pos..pos + b.len()])
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (*m, c.clone()))
                .collect();
            pos += b.len();
            out.push(Poly::from_terms(terms));
        }
        out
    }

    /// Matrix in degree `n` of the map sending `e_k` to `cols[k]`.
    fn map_matrix(&self, cols: &[Column], src: &[u32], tgt: &[u32], n: u32) -> Matrix {
        let field = self.ideal.field();
        let rows = self.dim(tgt, n);
        let mut columns = Vec::new();
        for (col, &a) in cols.iter().zip(src) {
            for m in self.basis(n as i64 - a as i64) {
                let img: Column = col.iter().map(|p| p.mul_monomial(m)).collect();
                columns.push(self.coords(&img, tgt, n));
            }
        }
        let mut mat = Matrix::zeros(rows, columns.len(), field);
        for (c, v) in columns.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    mat.set(r, c, x.clone());
                }
            }
        }
        mat
    }
}

/// Truncated `Tor_j^A(A/M, A/P)` for `A = S/ambient` and `j <= j_max`.
///
/// `deg_bound` defaults to `j_max` plus the largest generator degree plus 2.
pub fn truncated_tor_over_quotient(
    ambient: &HomIdeal,
    m_ideal: &HomIdeal,
    p_ideal: &HomIdeal,
    j_max: usize,
    deg_bound: Option<u32>,
) -> Result<QuotientTorTable> {
    let field = ambient.field();
    if !p_ideal.contains_ideal(ambient) {
        return Err(Error::PointNotOnVariety);
    }
    let p_sat = p_ideal.saturate()?;
    if !p_sat.is_linear() || p_sat.hilbert_polynomial().constant_value() != Some(1) {
        return Err(Error::NotARationalPoint);
    }
    let maxgen = [ambient, m_ideal, p_ideal]
        .iter()
        .flat_map(|i| i.gens().iter().filter_map(Poly::homogeneous_degree))
        .max()
        .unwrap_or(1);
    let top = deg_bound.unwrap_or(j_max as u32 + maxgen + 2);
    let nvars = ambient.nvars();

    let a_ideal = ambient.clone().with_groebner();
    let a = Ring::new(&a_ideal, top);
    let quot_ideal = ambient.sum(m_ideal).with_groebner();
    let quot = Ring::new(&quot_ideal, top);
    let c_ideal = ambient.sum(p_ideal).with_groebner();
    let c = Ring::new(&c_ideal, top);

    // shifts[j] and cols[j] (images of the basis of F_j in F_{j-1}, j >= 1).
    let mut shifts: Vec<Vec<u32>> = vec![vec![0]];
    let mut cols: Vec<Vec<Column>> = vec![Vec::new()];
    for j in 1..=j_max + 1 {
        let prev = shifts[j - 1].clone();
        let mut new_cols = Vec::new();
        let mut new_shifts = Vec::new();
        let mut last_kernel: Vec<Vec<Scalar>> = Vec::new();
        for n in 0..=top {
            let kernel = if j == 1 {
                let src = a.basis(n as i64);
                let tgt = quot.basis(n as i64);
                let mut mat = Matrix::zeros(tgt.len(), src.len(), field);
                for (ci, m) in src.iter().enumerate() {
                    let v = quot.coords(&[Poly::monomial(*m, field.one())], &[0], n);
                    for (r, x) in v.into_iter().enumerate() {
                        mat.set(r, ci, x);
                    }
                }
                mat.kernel()
            } else {
                a.map_matrix(&cols[j - 1], &prev, &shifts[j - 2], n).kernel()
            };
            let mut span = RowSpace::new(a.dim(&prev, n), field);
            for v in &last_kernel {
                let col = a.from_coords(v, &prev, n - 1);
                for x in 0..nvars {
                    let xm = Monomial::var(x);
                    let shifted: Column = col.iter().map(|p| p.mul_monomial(&xm)).collect();
                    span.insert(&a.coords(&shifted, &prev, n));
                }
            }
            for v in &kernel {
                if span.insert(v) {
                    new_cols.push(a.from_coords(v, &prev, n));
                    new_shifts.push(n);
                }
            }
            last_kernel = kernel;
        }
        shifts.push(new_shifts);
        cols.push(new_cols);
    }

    // Homology of F ⊗_A A/P.
    let mut dims = Vec::with_capacity(j_max + 1);
    let mut sheaf_nonzero = Vec::with_capacity(j_max + 1);
    let l = (0..nvars)
        .map(Monomial::var)
        .find(|m| !c_ideal.contains(&Poly::monomial(*m, field.one())));
    for j in 0..=j_max {
        let mut row = Vec::with_capacity(top as usize + 1);
        let mut cycles_prev: Vec<Vec<Scalar>> = Vec::new();
        let mut mult_rank = 0usize;
        for n in 0..=top {
            let dim_f = c.dim(&shifts[j], n);
            let cycles = if j == 0 {
                identity_rows(dim_f, field)
            } else {
                c.map_matrix(&cols[j], &shifts[j], &shifts[j - 1], n).kernel()
            };
            let bmat = c.map_matrix(&cols[j + 1], &shifts[j + 1], &shifts[j], n);
            let mut bspace = RowSpace::new(dim_f, field);
            for col in columns_of(&bmat) {
                bspace.insert(&col);
            }
            let b_rank = bspace.rank();
            row.push((cycles.len() - b_rank) as u64);
            if n == top {
                if let Some(l) = &l {
                    for v in &cycles_prev {
                        let col = c.from_coords(v, &shifts[j], n - 1);
                        let moved: Column = col.iter().map(|p| p.mul_monomial(l)).collect();
                        bspace.insert(&c.coords(&moved, &shifts[j], n));
                    }
                    mult_rank = bspace.rank() - b_rank;
                }
            }
            cycles_prev = cycles;
        }
        dims.push(row);
        sheaf_nonzero.push(mult_rank > 0);
    }
    shifts.truncate(j_max + 2);
    Ok(QuotientTorTable {
        j_max,
        deg_bound: top,
        dims,
        generator_degrees: shifts,
        sheaf_nonzero,
    })
}

fn identity_rows(n: usize, field: crate::poly::Field) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|i| {
            let mut v = vec![field.zero(); n];
            v[i] = field.one();
            v
        })
        .collect()
}

fn columns_of(m: &Matrix) -> Vec<Vec<Scalar>> {
    (0..m.cols)
        .map(|c| (0..m.rows).map(|r| m.get(r, c).clone()).collect())
        .collect()
}
