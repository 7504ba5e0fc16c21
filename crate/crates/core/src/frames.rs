//! Bases, their metric data, and changes of basis.
//!
//! A [`Frame`] is three non-coplanar vectors given in the ambient right-handed
//! orthonormal basis. Everything else the crate needs about the basis (Gram
//! matrix, its inverse, oriented volume, handedness) is computed once at
//! construction.

use serde::{Deserialize, Serialize};

use crate::linalg::{Coordinates3, Matrix3, SymMatrix3};
use crate::{tol, GeomError, Result};

/// Handedness of an ordered triple of vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Right,
    Left,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Right => 1.0,
            Orientation::Left => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    basis: [Coordinates3; 3],
    gram: SymMatrix3,
    gram_inv: SymMatrix3,
    oriented_volume: f64,
    orientation: Orientation,
}

impl Frame {
    /// The ambient reference basis itself.
    pub fn standard() -> Self {
        Self {
            basis: [
                Coordinates3::unit(0),
                Coordinates3::unit(1),
                Coordinates3::unit(2),
            ],
            gram: SymMatrix3::IDENTITY,
            gram_inv: SymMatrix3::IDENTITY,
            oriented_volume: 1.0,
            orientation: Orientation::Right,
        }
    }

    /// Builds a frame from three ambient vectors.
    ///
    /// Fails with [`GeomError::DegenerateBasis`] when
    /// `|det[e1 e2 e3]| ≤ 1e-12 · |e1| |e2| |e3|`.
    pub fn from_vectors(e1: Coordinates3, e2: Coordinates3, e3: Coordinates3) -> Result<Self> {
        if !(e1.is_finite() && e2.is_finite() && e3.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let volume = Matrix3::from_columns(e1, e2, e3).det();
        let threshold = tol::DEGENERACY * e1.norm() * e2.norm() * e3.norm();
        if !(volume.abs() > threshold) {
            return Err(GeomError::DegenerateBasis { volume, threshold });
        }

        let basis = [e1, e2, e3];
        let g = |i: usize, j: usize| basis[i].dot(&basis[j]);
        let gram = SymMatrix3::from_upper(g(0, 0), g(0, 1), g(0, 2), g(1, 1), g(1, 2), g(2, 2));
        let gram_inv = gram.inverse().ok_or(GeomError::DegenerateBasis { volume, threshold })?;
        let orientation = if volume > 0.0 {
            Orientation::Right
        } else {
            Orientation::Left
        };

        Ok(Self {
            basis,
            gram,
            gram_inv,
            oriented_volume: volume,
            orientation,
        })
    }

    /// Basis vector `e_i` in ambient components, 0-based `i`.
    pub fn basis_vector(&self, i: usize) -> Coordinates3 {
        self.basis[i]
    }

    pub fn basis(&self) -> [Coordinates3; 3] {
        self.basis
    }

    /// `g_ij = (e_i, e_j)`.
    pub fn gram(&self) -> &SymMatrix3 {
        &self.gram
    }

    /// `g^{ij}`, the inverse of the Gram matrix.
    pub fn gram_inv(&self) -> &SymMatrix3 {
        &self.gram_inv
    }

    /// `(e1, e2, e3)`, the signed volume of the basis parallelepiped.
    pub fn oriented_volume(&self) -> f64 {
        self.oriented_volume
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Matrix whose columns are the basis vectors in ambient components.
    pub fn basis_matrix(&self) -> Matrix3 {
        Matrix3::from_columns(self.basis[0], self.basis[1], self.basis[2])
    }

    /// Coordinates of the ambient vector `v` in this frame.
    ///
    /// Uses `xⁱ = (v, e_j × e_k) / (e1, e2, e3)` for cyclic `(i, j, k)`,
    /// which is the closed-form solution of `v = Σ xⁱ e_i`.
    pub fn expand(&self, v: &Coordinates3) -> Coordinates3 {
        let [e1, e2, e3] = &self.basis;
        let inv = 1.0 / self.oriented_volume;
        Coordinates3([
            v.dot(&e2.cross(e3)) * inv,
            v.dot(&e3.cross(e1)) * inv,
            v.dot(&e1.cross(e2)) * inv,
        ])
    }

    /// Ambient vector `Σ xⁱ e_i` for coordinates `x` in this frame.
    pub fn reconstruct(&self, x: &Coordinates3) -> Coordinates3 {
        self.basis[0] * x[0] + self.basis[1] * x[1] + self.basis[2] * x[2]
    }
}

/// Coordinates of `v_ambient` in frame `f`.
pub fn expand_in_frame(v_ambient: &Coordinates3, f: &Frame) -> Coordinates3 {
    f.expand(v_ambient)
}

/// Direct and inverse transition matrices of a change of basis.
///
/// Column `j` of `direct` holds the coordinates of the new basis vector
/// `ẽ_j` in the old basis, so `ẽ_j = Σ Sⁱⱼ e_i`. `inverse` is `T = S⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionPair {
    pub direct: Matrix3,
    pub inverse: Matrix3,
}

impl TransitionPair {
    pub fn identity() -> Self {
        Self {
            direct: Matrix3::IDENTITY,
            inverse: Matrix3::IDENTITY,
        }
    }

    /// Rotation of an orthonormal pair by `phi` in the `e1–e2` plane, with
    /// `e3` fixed.
    pub fn rotation_about_e3(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Self {
            direct: Matrix3([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]),
            inverse: Matrix3([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]]),
        }
    }

    /// `‖S·T − I‖∞`.
    pub fn defect(&self) -> f64 {
        (self.direct * self.inverse)
            .max_abs_diff(&Matrix3::IDENTITY)
            .max((self.inverse * self.direct).max_abs_diff(&Matrix3::IDENTITY))
    }
}

pub fn transition_between(old: &Frame, new: &Frame) -> TransitionPair {
    let direct = Matrix3::from_columns(
        old.expand(&new.basis[0]),
        old.expand(&new.basis[1]),
        old.expand(&new.basis[2]),
    );
    // Both frames are non-degenerate, so det S = V_new / V_old ≠ 0.
    let inverse = direct
        .inverse()
        .expect("transition matrix between valid frames is invertible");
    TransitionPair { direct, inverse }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Old coordinates to new: `x̃ = T x`.
    Direct,
    /// New coordinates to old: `x = S x̃`.
    Inverse,
}

pub fn transform_coordinates(x: &Coordinates3, pair: &TransitionPair, direction: Direction) -> Coordinates3 {
    match direction {
        Direction::Direct => pair.inverse * *x,
        Direction::Inverse => pair.direct * *x,
    }
}

/// `δ(i, j)` with 1-based indices.
pub fn kronecker(i: usize, j: usize) -> Result<i32> {
    check_index(i)?;
    check_index(j)?;
    Ok(i32::from(i == j))
}

pub(crate) fn check_index(i: usize) -> Result<()> {
    if (1..=3).contains(&i) {
        Ok(())
    } else {
        Err(GeomError::IndexOutOfRange { index: i })
    }
}

/// Whether the given ambient vectors are linearly dependent.
///
/// One vector: its norm is at most [`tol::ZERO_LENGTH`]. Two vectors: the
/// cross product is small relative to `|a| |b|`. Three vectors: the
/// determinant is small relative to the product of norms. Four or more
/// vectors in space are always dependent.
pub fn linear_dependence(vectors: &[Coordinates3]) -> Result<bool> {
    if vectors.iter().any(|v| !v.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    match vectors {
        [] => Err(GeomError::EmptyInput),
        [a] => Ok(a.norm() <= tol::ZERO_LENGTH),
        [a, b] => Ok(a.cross(b).norm() <= tol::COLLINEAR * a.norm() * b.norm()),
        [a, b, c] => {
            let det = Matrix3::from_columns(*a, *b, *c).det();
            Ok(det.abs() <= tol::DEGENERACY * a.norm() * b.norm() * c.norm())
        }
        _ => Ok(true),
    }
}
