//! Analytic geometry in three dimensions over arbitrary skew-angular bases.
//!
//! The crate is split along the usual lines of a first course in analytic
//! geometry:
//!
//! - [`frames`]: bases, Gram matrices, transition matrices, expansion of
//!   vectors in a basis and linear-dependence predicates.
//! - [`tensorkit`]: the Levi-Civita and Kronecker symbols, scalar, vector and
//!   mixed products through coordinates, structural constants and the
//!   contraction identities built from them.
//! - [`maps`]: orthogonal projections and rotations about an axis.
//! - [`loci`]: every equation form of a line on a plane, a plane in space and
//!   a line in space, with conversions between them, plus Cartesian
//!   coordinate systems.
//! - [`conics`]: ellipses, hyperbolas and parabolas in canonical coordinates.
//! - [`quadrics`]: reduction of second-order curves and surfaces to canonical
//!   form.
//!
//! All vectors are stored as [`Coordinates3`]. Every [`Frame`] is anchored to a
//! single right-handed orthonormal reference basis, called the *ambient*
//! basis below, so that results computed through skew-basis formulas can
//! always be compared against plain Cartesian arithmetic.
//!
//! Indexing: functions that mirror index notation (the Levi-Civita symbol,
//! the Kronecker symbol, structural constants, contraction formulas) take
//! 1-based indices in `1..=3`. Matrix types index 0-based like Rust arrays.

#![forbid(unsafe_code)]
// `!(x > t)` also rejects NaN; index loops mirror the index notation.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod checks;
pub mod conics;
mod error;
pub mod frames;
pub mod linalg;
pub mod loci;
pub mod maps;
pub mod quadrics;
pub mod sample;
pub mod tensorkit;
pub mod tol;

pub use error::{GeomError, Result};
pub use frames::{Frame, Orientation, TransitionPair};
pub use linalg::{Coordinates3, Matrix3, SymMatrix3};
