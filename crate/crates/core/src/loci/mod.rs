//! Lines and planes in all their equation forms, plus Cartesian coordinate
//! systems.
//!
//! Point coordinates are taken relative to some coordinate system whose basis
//! is the [`Frame`] passed to each operation. A line on a plane uses the first
//! two basis vectors and the top-left 2×2 block of the Gram matrix.
//!
//! General equations keep the minus-D convention: `A x + B y − D = 0` and
//! `A x + B y + C z − D = 0`. Their coefficients are the covariant components
//! of a normal vector. Conversions emit General forms scaled so that the
//! first nonzero of `A, B[, C]` equals one.

mod line2;
mod line3;
mod plane;

use serde::{Deserialize, Serialize};

use crate::frames::{transition_between, Frame, TransitionPair};
use crate::linalg::Coordinates3;
use crate::{tol, GeomError, Result};

pub use line2::{convert_plane_line, CanonicalLine2, Line2Case, LineCoefficients, PlaneLineForm, PlaneLineTag, Point2};
pub use line3::{convert_space_line, CanonicalLine3, Line3Case, SpaceLineForm, SpaceLineTag};
pub use plane::{convert_plane, PlaneCoefficients, PlaneForm, PlaneTag};

/// A frame attached to a fixed point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoordinateSystem {
    /// Ambient position of the origin.
    pub origin: Coordinates3,
    pub frame: Frame,
}

impl CoordinateSystem {
    pub fn new(origin: Coordinates3, frame: Frame) -> Result<Self> {
        if !origin.is_finite() {
            return Err(GeomError::NonFinite);
        }
        Ok(Self { origin, frame })
    }

    pub fn standard() -> Self {
        Self { origin: Coordinates3::ZERO, frame: Frame::standard() }
    }

    /// Ambient position of the point with coordinates `x`.
    pub fn locate(&self, x: &Coordinates3) -> Coordinates3 {
        self.origin + self.frame.reconstruct(x)
    }

    /// Coordinates of an ambient point.
    pub fn coordinates_of(&self, p: &Coordinates3) -> Coordinates3 {
        self.frame.expand(&(*p - self.origin))
    }
}

/// `a`: from the old origin to the new one, in the old basis.
/// `a_tilde`: from the new origin to the old one, in the new basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OriginDisplacement {
    pub a: Coordinates3,
    pub a_tilde: Coordinates3,
}

impl OriginDisplacement {
    pub fn between(old: &CoordinateSystem, new: &CoordinateSystem) -> Self {
        Self {
            a: old.frame.expand(&(new.origin - old.origin)),
            a_tilde: new.frame.expand(&(old.origin - new.origin)),
        }
    }

    /// Deviation of `a_tilde` from `−T a`.
    pub fn defect(&self, pair: &TransitionPair) -> f64 {
        (self.a_tilde + pair.inverse * self.a).max_abs()
    }
}

/// `x̃ = T x + ã`.
pub fn change_coordinate_system(p: &Coordinates3, old: &CoordinateSystem, new: &CoordinateSystem) -> Coordinates3 {
    let pair = transition_between(&old.frame, &new.frame);
    let shift = OriginDisplacement::between(old, new);
    pair.inverse * *p + shift.a_tilde
}

/// Lowered components `n_i = Σ g_ij nʲ` of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovariantNormal {
    pub n_lower: Coordinates3,
}

impl CovariantNormal {
    pub fn from_contravariant(n: &Coordinates3, f: &Frame) -> Self {
        Self { n_lower: f.gram().mul_vec(n) }
    }

    pub fn to_contravariant(&self, f: &Frame) -> Coordinates3 {
        f.gram_inv().mul_vec(&self.n_lower)
    }
}

pub(crate) fn require_finite(values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(GeomError::NonFinite)
    }
}

/// Index of the first component that is nonzero relative to the largest one.
pub(crate) fn first_significant(v: &[f64]) -> Option<usize> {
    let scale = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    v.iter().position(|x| x.abs() > tol::COLLINEAR * scale)
}

/// Components negligible relative to the largest are set to exactly zero.
pub(crate) fn snap_small(v: &mut [f64]) {
    let scale = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    for x in v.iter_mut() {
        if x.abs() <= tol::COLLINEAR * scale {
            *x = 0.0;
        }
    }
}

/// Evenly spread parameters in `[-2, 2]`.
pub(crate) fn sample_parameters(n: usize) -> impl Iterator<Item = f64> {
    let m = n.max(2) - 1;
    (0..n).map(move |k| -2.0 + 4.0 * k as f64 / m as f64)
}
