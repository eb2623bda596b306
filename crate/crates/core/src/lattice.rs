//! Integer vectors and 3×3 integer matrices on the lattice ℤ³.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A point of the lattice ℤ³.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub [i64; 3]);

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector([0, 0, 0]);

    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        LatticeVector([x, y, z])
    }

    pub fn coords(&self) -> [i64; 3] {
        self.0
    }

    /// Gcd of the absolute values of the coordinates (0 for the zero vector).
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0, |g, &c| gcd(g, c))
    }

    /// A ray generator must be primitive: the gcd of its coordinates is 1.
    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn dot(&self, other: &LatticeVector) -> i64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: i64) -> LatticeVector {
        LatticeVector(self.0.map(|c| c * k))
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: Self) -> Self {
        LatticeVector([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> Self {
        LatticeVector(self.0.map(|c| -c))
    }
}

impl std::iter::Sum for LatticeVector {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(LatticeVector::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A 3×3 integer matrix acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat3(pub [[i64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);

    pub fn from_rows(rows: [[i64; 3]; 3]) -> Self {
        Mat3(rows)
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(cols: [LatticeVector; 3]) -> Self {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| cols[j].0[i])))
    }

    pub fn rows(&self) -> [[i64; 3]; 3] {
        self.0
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn det(&self) -> i64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    /// Adjugate, so that `self * adjugate = det * I`.
    pub fn adjugate(&self) -> Mat3 {
        let m = &self.0;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        Mat3([
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ])
    }

    /// Integer inverse; `None` unless the matrix is unimodular.
    pub fn inverse(&self) -> Option<Mat3> {
        match self.det() {
            1 => Some(self.adjugate()),
            -1 => Some(self.adjugate().scale(-1)),
            _ => None,
        }
    }

    pub fn scale(&self, k: i64) -> Mat3 {
        Mat3(self.0.map(|r| r.map(|c| c * k)))
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        let m = &self.0;
        LatticeVector([
            m[0][0] * v.0[0] + m[0][1] * v.0[1] + m[0][2] * v.0[2],
            m[1][0] * v.0[0] + m[1][1] * v.0[1] + m[1][2] * v.0[2],
            m[2][0] * v.0[0] + m[2][1] * v.0[1] + m[2][2] * v.0[2],
        ])
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        let mut out = [[0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Mat3(out)
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("[{}, {}, {}]", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
