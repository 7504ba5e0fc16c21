//! Seeded random frames, vectors and rotations for property checks.
//!
//! Everything is drawn from [`ChaCha8Rng`], so a seed fixes the whole
//! sequence on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frames::Frame;
use crate::linalg::{Coordinates3, Matrix3};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Components uniform in `[-scale, scale]`.
pub fn vector(rng: &mut SampleRng, scale: f64) -> Coordinates3 {
    Coordinates3(std::array::from_fn(|_| rng.random_range(-scale..=scale)))
}

/// Ratio of the extreme eigenvalues of the Gram matrix.
pub fn gram_condition(f: &Frame) -> f64 {
    let values = f.gram().eigen().values;
    let hi = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let lo = values.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    hi / lo
}

/// A frame with basis components in `[-1, 1]` and Gram condition number at
/// most `max_condition`, by rejection.
pub fn frame(rng: &mut SampleRng, max_condition: f64) -> Frame {
    loop {
        let (e1, e2, e3) = (vector(rng, 1.0), vector(rng, 1.0), vector(rng, 1.0));
        if let Ok(f) = Frame::from_vectors(e1, e2, e3) {
            if gram_condition(&f) <= max_condition {
                return f;
            }
        }
    }
}

/// Condition bound used by the shipped checks.
pub const MAX_CONDITION: f64 = 1e4;

/// A uniformly distributed proper rotation, from a unit quaternion.
pub fn rotation(rng: &mut SampleRng) -> Matrix3 {
    let (u1, u2, u3): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
    let tau = std::f64::consts::TAU;
    let (s1, s2) = ((1.0 - u1).sqrt(), u1.sqrt());
    let (w, x, y, z) = (s1 * (tau * u2).sin(), s1 * (tau * u2).cos(), s2 * (tau * u3).sin(), s2 * (tau * u3).cos());
    Matrix3([
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ])
}

/// A plane rotation by an angle uniform in `[0, 2π)`.
pub fn rotation2(rng: &mut SampleRng) -> [[f64; 2]; 2] {
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let (s, c) = phi.sin_cos();
    [[c, -s], [s, c]]
}
