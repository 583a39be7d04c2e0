//! Exact Gaussian elimination over a coefficient field.

use crate::scalar::{Field, Scalar};

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![vec![field.zero(); cols]; rows] }
    }

    /// Builds a matrix from columns of equal length.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.data[i][j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i][j] = v;
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.data[i][c].is_zero()) else { continue };
            m.data.swap(r, p);
            let inv = m.data[r][c].inv().expect("nonzero pivot");
            for v in m.data[r].iter_mut() {
                *v = &*v * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m.data[i][c].is_zero() {
                    let f = m.data[i][c].clone();
                    for j in 0..m.cols {
                        let sub = &f * &m.data[r][j];
                        m.data[i][j] = &m.data[i][j] - &sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&r.data[row][f];
                }
                v
            })
            .collect()
    }

    /// Some `x` with `M x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][self.cols] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.data[row][self.cols].clone();
        }
        Some(x)
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.data
            .iter()
            .map(|row| row.iter().zip(x).fold(self.field.zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    #[test]
    fn nullspace_and_solve() {
        let m = Matrix::from_columns(Field::Rational, 2, &[vec![q(1), q(2)], vec![q(2), q(4)], vec![q(0), q(1)]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Scalar::is_zero));
        let x = m.solve(&[q(3), q(7)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(3), q(7)]);
        let singular = Matrix::from_columns(Field::Rational, 2, &[vec![q(1), q(1)]]);
        assert!(singular.solve(&[q(1), q(2)]).is_none());
    }

    #[test]
    fn prime_field_elimination() {
        let f = Field::prime(5).unwrap();
        let m = Matrix::from_columns(f, 2, &[vec![f.from_i64(2), f.from_i64(1)], vec![f.from_i64(4), f.from_i64(2)]]);
        assert_eq!(m.rank(), 1);
    }
}
