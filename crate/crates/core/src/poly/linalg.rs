//! Dense exact linear algebra over a [`Field`].

use super::scalar::{Field, Scalar};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
    pub field: Field,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
            field,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize, field: Field) -> Matrix {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols,
            data,
            field,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv();
            for k in c..self.cols {
                let v = self.get(r, k) * &inv;
                self.set(r, k, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for k in c..self.cols {
                    if self.get(r, k).is_zero() {
                        continue;
                    }
                    let v = self.get(i, k) - &(&f * self.get(r, k));
                    self.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, f);
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc = &acc + &(self.get(r, c) * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        let mut m = Matrix::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant of a square matrix by elimination.
    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -&det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv();
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for k in c..m.cols {
                    let v = m.get(i, k) - &(&f * m.get(c, k));
                    m.set(i, k, v);
                }
            }
        }
        det
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, self.field);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut out = Matrix::zeros(n, n, self.field);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(out)
    }

    /// Solves `self * x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::zeros(self.rows, self.cols + 1, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let piv = aug.rref();
        if piv.len() != self.cols || piv.contains(&self.cols) {
            return None;
        }
        Some((0..self.cols).map(|r| aug.get(r, self.cols).clone()).collect())
    }
}

/// Incrementally maintained echelon basis of a subspace of `field^dim`.
#[derive(Clone, Debug)]
pub struct RowSpace {
    dim: usize,
    field: Field,
    /// (pivot column, normalized row); rows are fully reduced against each other's pivots.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl RowSpace {
    pub fn new(dim: usize, field: Field) -> RowSpace {
        RowSpace {
            dim,
            field,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` modulo the space.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v[k] = &v[k] - &(&f * x);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns `true` if it enlarged the space.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv();
        let r: Vec<Scalar> = r.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (k, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    row[k] = &row[k] - &(&f * x);
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    /// Canonical basis: fully reduced rows sorted by pivot.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|r| r.0);
        rows.into_iter().map(|r| r.1).collect()
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// Intersection of two subspaces given by spanning sets.
pub fn intersect_spaces(a: &[Vec<Scalar>], b: &[Vec<Scalar>], dim: usize, field: Field) -> Vec<Vec<Scalar>> {
    // Solve sum x_i a_i = sum y_j b_j.
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len();
    let mut m = Matrix::zeros(dim, n, field);
    for (i, v) in a.iter().enumerate() {
        for k in 0..dim {
            m.set(k, i, v[k].clone());
        }
    }
    for (j, v) in b.iter().enumerate() {
        for k in 0..dim {
            m.set(k, a.len() + j, -&v[k]);
        }
    }
    let mut space = RowSpace::new(dim, field);
    for kv in m.kernel() {
        let mut w = vec![field.zero(); dim];
        for (i, v) in a.iter().enumerate() {
            if kv[i].is_zero() {
                continue;
            }
            for k in 0..dim {
                w[k] = &w[k] + &(&kv[i] * &v[k]);
            }
        }
        space.insert(&w);
    }
    space.basis()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rational.from_i64(n)
    }

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_rows(
            vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]],
            3,
            Field::Rational,
        );
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(3)]], 2, Field::Rational);
        assert_eq!(m.determinant(), q(5));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2, Field::Rational));
        let s = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]], 2, Field::Rational);
        assert!(s.inverse().is_none());
        assert!(s.determinant().is_zero());
    }

    #[test]
    fn solve_square() {
        let m = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(3)]], 2, Field::Rational);
        let x = m.solve(&[q(3), q(4)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
    }

    #[test]
    fn rowspace_insert() {
        let mut s = RowSpace::new(3, Field::Rational);
        assert!(s.insert(&[q(1), q(1), q(0)]));
        assert!(s.insert(&[q(0), q(1), q(1)]));
        assert!(!s.insert(&[q(1), q(2), q(1)]));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn subspace_intersection() {
        let a = vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]];
        let b = vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]];
        let i = intersect_spaces(&a, &b, 3, Field::Rational);
        assert_eq!(i, vec![vec![q(0), q(1), q(0)]]);
    }
}
