//! Fixed-size 3×3 linear algebra: coordinate triples, row-major matrices,
//! symmetric matrices and a cyclic Jacobi eigensolver.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Three components of a vector with respect to some basis.
///
/// Which basis is meant depends on context: the ambient reference basis for
/// basis vectors and origins, a [`Frame`](crate::Frame) for everything
/// passed to the product and projection functions.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Coordinates3(pub [f64; 3]);

impl Coordinates3 {
    pub const ZERO: Self = Self([0.0; 3]);

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self([x1, x2, x3])
    }

    /// Unit coordinate triple with a one at 0-based position `i`.
    pub fn unit(i: usize) -> Self {
        let mut c = [0.0; 3];
        c[i] = 1.0;
        Self(c)
    }

    pub fn x1(&self) -> f64 {
        self.0[0]
    }

    pub fn x2(&self) -> f64 {
        self.0[1]
    }

    pub fn x3(&self) -> f64 {
        self.0[2]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    /// Component-wise dot product. This is the scalar product only when the
    /// components refer to an orthonormal basis.
    pub fn dot(&self, other: &Self) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    /// Component-wise cross product (right-handed orthonormal basis).
    pub fn cross(&self, other: &Self) -> Self {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        Self([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    /// Euclidean norm of the components.
    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

impl Index<usize> for Coordinates3 {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl From<[f64; 3]> for Coordinates3 {
    fn from(c: [f64; 3]) -> Self {
        Self(c)
    }
}

impl Add for Coordinates3 {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl AddAssign for Coordinates3 {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Coordinates3 {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        Self([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Coordinates3 {
    type Output = Self;

    fn neg(self) -> Self {
        Self([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for Coordinates3 {
    type Output = Self;

    fn mul(self, s: f64) -> Self {
        Self([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

impl Mul<Coordinates3> for f64 {
    type Output = Coordinates3;

    fn mul(self, v: Coordinates3) -> Coordinates3 {
        v * self
    }
}

/// Row-major 3×3 matrix. Row `i` holds the upper index, column `j` the lower
/// one, so `m[(i, j)]` is the component `Mⁱⱼ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix3(pub [[f64; 3]; 3]);

impl Matrix3 {
    pub const IDENTITY: Self = Self([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn from_columns(c0: Coordinates3, c1: Coordinates3, c2: Coordinates3) -> Self {
        Self([
            [c0[0], c1[0], c2[0]],
            [c0[1], c1[1], c2[1]],
            [c0[2], c1[2], c2[2]],
        ])
    }

    pub fn from_rows(r0: Coordinates3, r1: Coordinates3, r2: Coordinates3) -> Self {
        Self([r0.0, r1.0, r2.0])
    }

    pub fn column(&self, j: usize) -> Coordinates3 {
        Coordinates3([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn row(&self, i: usize) -> Coordinates3 {
        Coordinates3(self.0[i])
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Transposed cofactor matrix, so that `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Self {
        let m = &self.0;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
        };
        Self([
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ])
    }

    /// Closed-form inverse through the adjugate. Returns `None` for an exactly
    /// singular matrix; callers are expected to have checked conditioning.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        let adj = self.adjugate();
        Some(adj.scale(1.0 / d))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.0;
        out.iter_mut().flatten().for_each(|v| *v *= s);
        Self(out)
    }

    pub fn mul_vec(&self, v: &Coordinates3) -> Coordinates3 {
        Coordinates3([self.row(0).dot(v), self.row(1).dot(v), self.row(2).dot(v)])
    }

    /// Largest absolute entry of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.0
            .iter()
            .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|v| v.is_finite())
    }

    /// `‖MᵀM − I‖` measured as the largest absolute entry.
    pub fn orthogonality_defect(&self) -> f64 {
        (self.transpose() * *self).max_abs_diff(&Self::IDENTITY)
    }
}

impl Index<(usize, usize)> for Matrix3 {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl Mul for Matrix3 {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        Self(out)
    }
}

impl Mul<Coordinates3> for Matrix3 {
    type Output = Coordinates3;

    fn mul(self, v: Coordinates3) -> Coordinates3 {
        self.mul_vec(&v)
    }
}

/// Symmetric 3×3 matrix stored as its six independent entries
/// `[m11, m12, m13, m22, m23, m33]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix3([f64; 6]);

impl SymMatrix3 {
    pub const IDENTITY: Self = Self([1.0, 0.0, 0.0, 1.0, 0.0, 1.0]);

    pub const fn from_upper(m11: f64, m12: f64, m13: f64, m22: f64, m23: f64, m33: f64) -> Self {
        Self([m11, m12, m13, m22, m23, m33])
    }

    /// Builds from the upper triangle of `m`; the lower triangle is ignored.
    pub fn from_matrix_upper(m: &Matrix3) -> Self {
        let m = &m.0;
        Self([m[0][0], m[0][1], m[0][2], m[1][1], m[1][2], m[2][2]])
    }

    const fn slot(i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        match (i, j) {
            (0, 0) => 0,
            (0, 1) => 1,
            (0, 2) => 2,
            (1, 1) => 3,
            (1, 2) => 4,
            _ => 5,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[Self::slot(i, j)]
    }

    pub fn upper(&self) -> [f64; 6] {
        self.0
    }

    pub fn to_matrix(&self) -> Matrix3 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.get(i, j);
            }
        }
        Matrix3(m)
    }

    pub fn det(&self) -> f64 {
        self.to_matrix().det()
    }

    /// Inverse through the adjugate, which is symmetric for a symmetric input.
    pub fn inverse(&self) -> Option<Self> {
        self.to_matrix().inverse().map(|m| Self::from_matrix_upper(&m))
    }

    pub fn mul_vec(&self, v: &Coordinates3) -> Coordinates3 {
        self.to_matrix().mul_vec(v)
    }

    /// The bilinear form `Σ aⁱ bʲ mᵢⱼ`.
    pub fn bilinear(&self, a: &Coordinates3, b: &Coordinates3) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += a[i] * b[j] * self.get(i, j);
            }
        }
        s
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    /// Eigenvalues and orthonormal eigenvectors (as matrix columns) by cyclic
    /// Jacobi rotations. Eigenvalue `k` belongs to column `k`; no ordering is
    /// imposed.
    pub fn eigen(&self) -> SymEigen {
        jacobi_eigen(self)
    }
}

impl Index<(usize, usize)> for SymMatrix3 {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[Self::slot(i, j)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymEigen {
    pub values: [f64; 3],
    pub vectors: Matrix3,
    pub sweeps: usize,
}

const MAX_SWEEPS: usize = 20;

fn jacobi_eigen(m: &SymMatrix3) -> SymEigen {
    let mut a = m.to_matrix().0;
    let mut v = Matrix3::IDENTITY.0;
    let scale = m.max_abs();
    let mut sweeps = 0;

    if scale == 0.0 {
        return SymEigen {
            values: [0.0; 3],
            vectors: Matrix3::IDENTITY,
            sweeps,
        };
    }

    while sweeps < MAX_SWEEPS {
        let off = a[0][1].abs() + a[0][2].abs() + a[1][2].abs();
        if off <= f64::EPSILON * f64::EPSILON * scale {
            break;
        }
        sweeps += 1;
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let apq = a[p][q];
            if apq.abs() <= f64::MIN_POSITIVE {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;

            // A ← JᵀAJ with J the plane rotation in (p, q).
            for k in 0..3 {
                let akp = a[k][p];
                let akq = a[k][q];
                a[k][p] = c * akp - s * akq;
                a[k][q] = s * akp + c * akq;
            }
            for k in 0..3 {
                let apk = a[p][k];
                let aqk = a[q][k];
                a[p][k] = c * apk - s * aqk;
                a[q][k] = s * apk + c * aqk;
            }
            a[p][q] = 0.0;
            a[q][p] = 0.0;

            for row in v.iter_mut() {
                let vkp = row[p];
                let vkq = row[q];
                row[p] = c * vkp - s * vkq;
                row[q] = s * vkp + c * vkq;
            }
        }
    }

    SymEigen {
        values: [a[0][0], a[1][1], a[2][2]],
        vectors: Matrix3(v),
        sweeps,
    }
}
