//! Small dense integer matrices with exact rational elimination.

use num_rational::Ratio;
use std::fmt;

type Q = Ratio<i128>;

/// Row-major dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntMatrix { rows: r, cols: c, data: rows.concat() }
    }

    pub fn from_columns(cols: &[Vec<i64>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// `vᵀ · self · w`.
    pub fn bilinear(&self, v: &[i64], w: &[i64]) -> i64 {
        v.iter().zip(self.mul_vec(w)).map(|(a, b)| a * b).sum()
    }

    fn to_rational(&self) -> Vec<Vec<Q>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| Q::from_integer(x as i128)).collect())
            .collect()
    }

    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rational();
        let mut det = Q::from_integer(1);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| a[r][col] != Q::from_integer(0)) else {
                return 0;
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col];
            det *= pivot;
            let pivot_row = a[col].clone();
            for row in a.iter_mut().skip(col + 1) {
                let f = row[col] / pivot;
                if f != Q::from_integer(0) {
                    for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                        *x -= f * p;
                    }
                }
            }
        }
        assert!(det.is_integer());
        *det.numer() as i64
    }

    /// Exact solution of `self · x = rhs` for square nonsingular `self`;
    /// `None` if singular or the solution is not integral.
    pub fn solve(&self, rhs: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(rhs.len(), self.rows);
        let cols: Vec<Vec<i64>> = vec![rhs.to_vec()];
        self.solve_many(&cols).map(|mut s| s.remove(0))
    }

    fn solve_many(&self, rhs_cols: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
        let n = self.rows;
        let m = rhs_cols.len();
        let zero = Q::from_integer(0);
        let mut a = self.to_rational();
        for (i, row) in a.iter_mut().enumerate() {
            row.extend(rhs_cols.iter().map(|c| Q::from_integer(c[i] as i128)));
        }
        for col in 0..n {
            let p = (col..n).find(|&r| a[r][col] != zero)?;
            a.swap(p, col);
            let pivot = a[col][col];
            for x in a[col][col..].iter_mut() {
                *x /= pivot;
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && row[col] != zero {
                    let f = row[col];
                    for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                        *x -= f * p;
                    }
                }
            }
        }
        (0..m)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        let q = a[i][n + j];
                        q.is_integer().then(|| *q.numer() as i64)
                    })
                    .collect()
            })
            .collect()
    }

    /// Integer inverse; `None` unless the matrix is invertible over ℤ.
    pub fn inverse(&self) -> Option<IntMatrix> {
        let n = self.rows;
        let id: Vec<Vec<i64>> = (0..n).map(|j| IntMatrix::identity(n).column(j)).collect();
        self.solve_many(&id).map(|cols| IntMatrix::from_columns(&cols))
    }

    /// True if every row and column has a single ±1 entry.
    pub fn is_signed_permutation(&self) -> bool {
        let ok_line = |it: &mut dyn Iterator<Item = i64>| {
            let nz: Vec<i64> = it.filter(|&x| x != 0).collect();
            nz.len() == 1 && nz[0].abs() == 1
        };
        (0..self.rows).all(|i| ok_line(&mut self.row(i).iter().copied()))
            && (0..self.cols).all(|j| ok_line(&mut self.column(j).into_iter()))
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = IntMatrix::from_rows(&[vec![2, 3, 1], vec![0, -1, 4], vec![5, 2, 2]]);
        let l = crate::lattice::Mat3::from_rows([[2, 3, 1], [0, -1, 4], [5, 2, 2]]);
        assert_eq!(m.det(), l.det());
    }

    #[test]
    fn unimodular_inverse() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 0], vec![0, 1, 0], vec![3, 7, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), IntMatrix::identity(3));
    }

    #[test]
    fn non_integral_solution_is_rejected() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(m.solve(&[1, 1]), None);
        assert_eq!(m.solve(&[4, -3]), Some(vec![2, -3]));
        assert_eq!(IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).det(), 0);
    }
}
