//! Numeric thresholds shared across modules.
//!
//! Identities checked by the crate are multilinear, so residual thresholds
//! are applied relative to the product of argument norms unless a constant
//! says otherwise.

/// Relative threshold for coplanarity of a basis: `|det[e1 e2 e3]|` must
/// exceed this times `|e1| |e2| |e3|`.
pub const DEGENERACY: f64 = 1e-12;

/// Relative threshold for collinearity tests and for treating a vector
/// component as zero.
pub const COLLINEAR: f64 = 1e-12;

/// A vector whose frame-metric length is at most this is treated as zero.
pub const ZERO_LENGTH: f64 = 1e-12;

/// Relative threshold on a canonical-equation residual for a point to count
/// as lying on a conic.
pub const ON_CURVE: f64 = 1e-9;

/// Default relative zero threshold of the second-order classifier.
pub const CLASSIFIER_ZERO: f64 = 1e-9;

/// Maximum deviation of `RᵀR` from the identity accepted for a rotation.
pub const ORTHOGONALITY: f64 = 1e-10;

/// Component-wise relative tolerance used when asserting basis invariants.
pub const IDENTITY: f64 = 1e-9;
