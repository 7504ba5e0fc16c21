//! Orthogonal projections and rotations about an axis, all under the metric
//! of a frame.

use crate::frames::Frame;
use crate::linalg::Coordinates3;
use crate::tensorkit::{frame_norm, scalar_product, vector_product};
use crate::tol;
use crate::{GeomError, Result};

fn axis_length_sq(a: &Coordinates3, f: &Frame) -> Result<f64> {
    let n2 = scalar_product(a, a, f);
    if !(n2.sqrt() > tol::ZERO_LENGTH) {
        return Err(GeomError::ZeroAxis);
    }
    Ok(n2)
}

/// `π_a(b) = (b, a) / |a|² · a`.
pub fn project_onto_line(b: &Coordinates3, a: &Coordinates3, f: &Frame) -> Result<Coordinates3> {
    let n2 = axis_length_sq(a, f)?;
    Ok(*a * (scalar_product(b, a, f) / n2))
}

/// `π⊥a(b) = b − π_a(b)`.
pub fn project_onto_plane(b: &Coordinates3, a: &Coordinates3, f: &Frame) -> Result<Coordinates3> {
    Ok(*b - project_onto_line(b, a, f)?)
}

/// Counterclockwise rotation of `b` by `phi` about `a`, looking from the tip of `a`.
///
/// The component along `a` is kept; the perpendicular part `b⊥` becomes
/// `cos φ · b⊥ + sin φ · [â, b⊥]`.
pub fn rotate_about_axis(b: &Coordinates3, a: &Coordinates3, phi: f64, f: &Frame) -> Result<Coordinates3> {
    let n2 = axis_length_sq(a, f)?;
    let along = *a * (scalar_product(b, a, f) / n2);
    let perp = *b - along;
    let unit = *a * (1.0 / n2.sqrt());
    let turned = vector_product(&unit, &perp, f);
    Ok(along + perp * phi.cos() + turned * phi.sin())
}

/// `[a, b] = −|b| · θ_b^{π/2}(π⊥b(a))`.
pub fn vector_product_via_rotation(a: &Coordinates3, b: &Coordinates3, f: &Frame) -> Result<Coordinates3> {
    let perp = project_onto_plane(a, b, f)?;
    let turned = rotate_about_axis(&perp, b, std::f64::consts::FRAC_PI_2, f)?;
    Ok(turned * (-frame_norm(b, f)))
}
