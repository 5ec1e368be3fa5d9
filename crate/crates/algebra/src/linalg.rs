//! Dense exact linear algebra over a field.

use crate::error::{AlgebraError, Result};
use crate::field::{Coeff, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<C: Coeff> {
    field: Field,
    nrows: usize,
    ncols: usize,
    data: Vec<C>,
}

impl<C: Coeff> Matrix<C> {
    pub fn zeros(field: Field, nrows: usize, ncols: usize) -> Self {
        Matrix { field, nrows, ncols, data: vec![C::zero(field); nrows * ncols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = C::one(field);
        }
        m
    }

    /// Rows must all have length `ncols`.
    pub fn from_rows(field: Field, ncols: usize, rows: &[Vec<C>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(AlgebraError::RaggedRows { row: i, len: r.len(), expected: ncols });
            }
            for c in r {
                if c.field() != field {
                    return Err(AlgebraError::FieldMismatch(c.field().to_string(), field.to_string()));
                }
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { field, nrows: rows.len(), ncols, data })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<C>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| C::from_i64(field, v)).collect())
            .collect();
        Self::from_rows(field, ncols, &rows).expect("rectangular literal")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> Vec<Vec<C>> {
        (0..self.nrows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<C> {
        (0..self.nrows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix<C>) -> Result<Matrix<C>> {
        if self.ncols != o.nrows {
            return Err(AlgebraError::Dimension(format!(
                "{}x{} times {}x{}",
                self.nrows, self.ncols, o.nrows, o.ncols
            )));
        }
        let mut out = Self::zeros(self.field, self.nrows, o.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.ncols {
                    let v = out[(i, j)].clone() + a.clone() * o[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(v.len(), self.ncols);
        (0..self.nrows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.nrows {
                break;
            }
            let Some(p) = (r..self.nrows).find(|&i| !self[(i, c)].is_zero()) else { continue };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv().expect("nonzero pivot");
            for j in c..self.ncols {
                let v = self[(r, j)].clone() * inv.clone();
                self[(r, j)] = v;
            }
            for i in 0..self.nrows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.ncols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = self[(i, j)].clone() - f.clone() * self[(r, j)].clone();
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix<C>, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column with a 1 in that
    /// column.
    pub fn kernel(&self) -> Vec<Vec<C>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.ncols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![C::zero(self.field); self.ncols];
            v[f] = C::one(self.field);
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_space(&self) -> Vec<Vec<C>> {
        let (r, pivots) = self.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    pub fn det(&self) -> Result<C> {
        if self.nrows != self.ncols {
            return Err(AlgebraError::Dimension("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let mut det = C::one(self.field);
        for c in 0..m.ncols {
            let Some(p) = (c..m.nrows).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(C::zero(self.field));
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..m.nrows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * inv.clone();
                for j in c..m.ncols {
                    let v = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        Ok(det)
    }

    /// Some solution of `self * x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[C]) -> Result<Option<Vec<C>>> {
        if b.len() != self.nrows {
            return Err(AlgebraError::Dimension("right-hand side length".into()));
        }
        let mut aug = Self::zeros(self.field, self.nrows, self.ncols + 1);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.ncols)] = b[i].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.ncols) {
            return Ok(None);
        }
        let mut x = vec![C::zero(self.field); self.ncols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug[(row, self.ncols)].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Option<Matrix<C>>> {
        if self.nrows != self.ncols {
            return Err(AlgebraError::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.nrows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = C::one(self.field);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Ok(None);
        }
        let mut inv = Self::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(Some(inv))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.ncols {
            self.data.swap(a * self.ncols + j, b * self.ncols + j);
        }
    }
}

impl<C: Coeff> std::ops::Index<(usize, usize)> for Matrix<C> {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.ncols + j]
    }
}

impl<C: Coeff> std::ops::IndexMut<(usize, usize)> for Matrix<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.ncols + j]
    }
}

pub fn dot<C: Coeff>(a: &[C], b: &[C]) -> C {
    assert_eq!(a.len(), b.len());
    let mut it = a.iter().zip(b);
    let Some((x, y)) = it.next() else { panic!("dot product of empty vectors") };
    let mut acc = x.clone() * y.clone();
    for (x, y) in it {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y.clone();
        }
    }
    acc
}

/// Right kernel of the matrix with the given rows; `ncols` is taken from the
/// first row.
pub fn matrix_kernel<C: Coeff>(field: Field, rows: &[Vec<C>]) -> Result<Vec<Vec<C>>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    Ok(Matrix::from_rows(field, ncols, rows)?.kernel())
}

/// Dimension of the span of a family of vectors.
pub fn span_rank<C: Coeff>(field: Field, vectors: &[Vec<C>]) -> Result<usize> {
    let ncols = vectors.first().map_or(0, |r| r.len());
    Ok(Matrix::from_rows(field, ncols, vectors)?.rank())
}

/// Canonical basis (reduced row echelon rows) of the span of `vectors`;
/// two families span the same space iff these agree.
pub fn canonical_span<C: Coeff>(field: Field, ncols: usize, vectors: &[Vec<C>]) -> Result<Vec<Vec<C>>> {
    Ok(Matrix::from_rows(field, ncols, vectors)?.row_space())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = Matrix::<Rational>::identity(Field::Rational, 3);
        assert!(m.kernel().is_empty());
    }

    #[test]
    fn kernel_of_single_row() {
        let k = matrix_kernel(Field::Rational, &[vec![Rational::from_integer(1), Rational::from_integer(1)]]).unwrap();
        assert_eq!(k, vec![vec![Rational::from_integer(-1), Rational::from_integer(1)]]);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let rows = vec![vec![Rational::from_integer(1); 2], vec![Rational::from_integer(1); 3]];
        assert_eq!(
            matrix_kernel(Field::Rational, &rows),
            Err(AlgebraError::RaggedRows { row: 1, len: 3, expected: 2 })
        );
    }

    #[test]
    fn det_inverse_solve() {
        let f = Field::Rational;
        let m = Matrix::<Rational>::from_i64(f, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det().unwrap(), Rational::from_integer(18));
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f, 3));
        let b: Vec<Rational> = [1, 2, 3].iter().map(|&v| Rational::from_integer(v)).collect();
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let sing = Matrix::<Rational>::from_i64(f, &[&[1, 2], &[2, 4]]);
        assert!(sing.det().unwrap().is_zero());
        assert!(sing.inverse().unwrap().is_none());
    }

    #[test]
    fn rank_over_prime_field() {
        let f = Field::Prime(5);
        // second row is 2x the first mod 5
        let m = Matrix::<Fp>::from_i64(f, &[&[1, 2, 3], &[2, 4, 1], &[0, 0, 1]]);
        assert_eq!(m.rank(), 2);
    }
}
