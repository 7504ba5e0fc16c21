//! Reduction of second-order curves and surfaces to canonical form.
//!
//! Coefficient conventions carry the factors of two:
//!
//! - conic: `A x² + 2B xy + C y² + 2D x + 2E y + F = 0`;
//! - quadric: `A x² + C y² + F z² + 2B xy + 2D xz + 2E yz + 2G x + 2H y + 2I z + J = 0`.
//!
//! A report describes the canonical coordinates `p̃` through
//! `p = R p̃ + t`, with `R` a proper rotation, and a nonzero factor `k` such
//! that `k · original(R p̃ + t) = canonical(p̃)` identically.
//!
//! Canonical forms (all with positive leading coefficients):
//!
//! | class | canonical |
//! |---|---|
//! | Ellipse, Ellipsoid | `Σ xᵢ²/aᵢ² − 1`, semiaxes non-increasing |
//! | imaginary ellipse/ellipsoid | `Σ xᵢ²/aᵢ² + 1` |
//! | Point | `x² + Σ λᵢ xᵢ²`, `λᵢ ≥ 1` |
//! | Hyperbola | `x²/a² − y²/b² − 1` |
//! | hyperboloids | `x²/a² + y²/b² − z²/c² ∓ 1` (one sheet: `−1`) |
//! | IntersectingLines, Cone | `x² − …` with unit first coefficient |
//! | Parabola | `y² − 2 p x` |
//! | paraboloids | `x²/a² ± y²/b² − 2 z` |
//! | line pairs | `y² − b²`, `y²`, `y² + b²` |
//!
//! Cylindrical surfaces reuse the curve forms in `x, y` with `z` free.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{Coordinates3, Matrix3, SymMatrix3};
use crate::{tol, GeomError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicEquation {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadricEquation {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub h: f64,
    pub i: f64,
    pub j: f64,
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

impl ConicEquation {
    pub const fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Self {
        Self { a, b, c, d, e, f }
    }

    pub fn from_array(v: [f64; 6]) -> Self {
        Self::new(v[0], v[1], v[2], v[3], v[4], v[5])
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        self.a * x * x + 2.0 * self.b * x * y + self.c * y * y + 2.0 * self.d * x + 2.0 * self.e * y + self.f
    }

    fn homogeneous(&self) -> [[f64; 3]; 3] {
        [[self.a, self.b, self.d], [self.b, self.c, self.e], [self.d, self.e, self.f]]
    }

    fn from_homogeneous(m: &[[f64; 3]; 3]) -> Self {
        Self::new(m[0][0], m[0][1], m[1][1], m[0][2], m[1][2], m[2][2])
    }

    fn scaled(&self, s: f64) -> Self {
        Self::from_array(self.to_array().map(|v| v * s))
    }

    /// Finite coefficients with a quadratic part that is nonzero relative to
    /// the whole equation.
    pub fn validate(&self, zero_tol: f64) -> Result<()> {
        let all = self.to_array();
        if all.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let quad = max_abs(&all[..3]);
        if quad == 0.0 || quad <= zero_tol * max_abs(&all) {
            return Err(GeomError::NotSecondOrder);
        }
        Ok(())
    }
}

impl QuadricEquation {
    #[allow(clippy::too_many_arguments)]
    pub const fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64, g: f64, h: f64, i: f64, j: f64) -> Self {
        Self { a, b, c, d, e, f, g, h, i, j }
    }

    pub fn from_array(v: [f64; 10]) -> Self {
        Self::new(v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9])
    }

    pub fn to_array(&self) -> [f64; 10] {
        [self.a, self.b, self.c, self.d, self.e, self.f, self.g, self.h, self.i, self.j]
    }

    /// The symmetric matrix of the quadratic part.
    pub fn quadratic_part(&self) -> SymMatrix3 {
        SymMatrix3::from_upper(self.a, self.b, self.d, self.c, self.e, self.f)
    }

    pub fn linear_part(&self) -> Coordinates3 {
        Coordinates3::new(self.g, self.h, self.i)
    }

    pub fn evaluate(&self, p: &Coordinates3) -> f64 {
        let q = self.quadratic_part();
        q.bilinear(p, p) + 2.0 * self.linear_part().dot(p) + self.j
    }

    fn homogeneous(&self) -> [[f64; 4]; 4] {
        [
            [self.a, self.b, self.d, self.g],
            [self.b, self.c, self.e, self.h],
            [self.d, self.e, self.f, self.i],
            [self.g, self.h, self.i, self.j],
        ]
    }

    fn from_homogeneous(m: &[[f64; 4]; 4]) -> Self {
        Self::new(m[0][0], m[0][1], m[1][1], m[0][2], m[1][2], m[2][2], m[0][3], m[1][3], m[2][3], m[3][3])
    }

    fn scaled(&self, s: f64) -> Self {
        Self::from_array(self.to_array().map(|v| v * s))
    }

    pub fn validate(&self, zero_tol: f64) -> Result<()> {
        let all = self.to_array();
        if all.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let quad = max_abs(&all[..6]);
        if quad == 0.0 || quad <= zero_tol * max_abs(&all) {
            return Err(GeomError::NotSecondOrder);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConicClass {
    Ellipse,
    ImaginaryEllipse,
    Point,
    Hyperbola,
    IntersectingLines,
    Parabola,
    ParallelLines,
    CoincidingLines,
    ImaginaryParallelLines,
}

impl ConicClass {
    pub const ALL: [Self; 9] = [
        Self::Ellipse,
        Self::ImaginaryEllipse,
        Self::Point,
        Self::Hyperbola,
        Self::IntersectingLines,
        Self::Parabola,
        Self::ParallelLines,
        Self::CoincidingLines,
        Self::ImaginaryParallelLines,
    ];

    /// Whether the real point set is empty.
    pub fn is_imaginary(self) -> bool {
        matches!(self, Self::ImaginaryEllipse | Self::ImaginaryParallelLines)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuadricClass {
    Ellipsoid,
    ImaginaryEllipsoid,
    Point,
    HyperboloidOneSheet,
    HyperboloidTwoSheets,
    Cone,
    EllipticParaboloid,
    HyperbolicParaboloid,
    EllipticCylinder,
    ImaginaryEllipticCylinder,
    StraightLine,
    HyperbolicCylinder,
    IntersectingPlanes,
    ParabolicCylinder,
    ParallelPlanes,
    CoincidingPlanes,
    ImaginaryParallelPlanes,
}

impl QuadricClass {
    pub const ALL: [Self; 17] = [
        Self::Ellipsoid,
        Self::ImaginaryEllipsoid,
        Self::Point,
        Self::HyperboloidOneSheet,
        Self::HyperboloidTwoSheets,
        Self::Cone,
        Self::EllipticParaboloid,
        Self::HyperbolicParaboloid,
        Self::EllipticCylinder,
        Self::ImaginaryEllipticCylinder,
        Self::StraightLine,
        Self::HyperbolicCylinder,
        Self::IntersectingPlanes,
        Self::ParabolicCylinder,
        Self::ParallelPlanes,
        Self::CoincidingPlanes,
        Self::ImaginaryParallelPlanes,
    ];

    pub fn is_imaginary(self) -> bool {
        matches!(self, Self::ImaginaryEllipsoid | Self::ImaginaryEllipticCylinder | Self::ImaginaryParallelPlanes)
    }

    /// The curve class whose cylinder this is, if any.
    pub fn cross_section(self) -> Option<ConicClass> {
        ConicClass::ALL.into_iter().find(|&c| lift_conic_class(c) == self)
    }
}

macro_rules! debug_display {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Debug::fmt(self, f)
            }
        }
    )*};
}
debug_display!(ConicClass, QuadricClass);

/// The cylinder over a curve of the given class.
pub fn lift_conic_class(c: ConicClass) -> QuadricClass {
    match c {
        ConicClass::Ellipse => QuadricClass::EllipticCylinder,
        ConicClass::ImaginaryEllipse => QuadricClass::ImaginaryEllipticCylinder,
        ConicClass::Point => QuadricClass::StraightLine,
        ConicClass::Hyperbola => QuadricClass::HyperbolicCylinder,
        ConicClass::IntersectingLines => QuadricClass::IntersectingPlanes,
        ConicClass::Parabola => QuadricClass::ParabolicCylinder,
        ConicClass::ParallelLines => QuadricClass::ParallelPlanes,
        ConicClass::CoincidingLines => QuadricClass::CoincidingPlanes,
        ConicClass::ImaginaryParallelLines => QuadricClass::ImaginaryParallelPlanes,
    }
}

pub type Matrix2 = [[f64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicReport {
    pub class: ConicClass,
    pub canonical: ConicEquation,
    pub rotation: Matrix2,
    pub translation: [f64; 2],
    /// `k` in `k · original(R p̃ + t) = canonical(p̃)`.
    pub scale: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadricReport {
    pub class: QuadricClass,
    pub canonical: QuadricEquation,
    pub rotation: Matrix3,
    pub translation: Coordinates3,
    pub scale: f64,
    pub residual: f64,
}

/// `Hᵀ M H`, symmetrized.
fn congruence<const N: usize>(m: &[[f64; N]; N], h: &[[f64; N]; N]) -> [[f64; N]; N] {
    let mut mh = [[0.0; N]; N];
    for i in 0..N {
        for j in 0..N {
            mh[i][j] = (0..N).map(|k| m[i][k] * h[k][j]).sum();
        }
    }
    let mut out = [[0.0; N]; N];
    for i in 0..N {
        for j in 0..N {
            out[i][j] = (0..N).map(|k| h[k][i] * mh[k][j]).sum();
        }
    }
    for i in 0..N {
        for j in (i + 1)..N {
            let s = 0.5 * (out[i][j] + out[j][i]);
            out[i][j] = s;
            out[j][i] = s;
        }
    }
    out
}

fn orthogonality_defect2(r: &Matrix2) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..2 {
        for j in 0..2 {
            let dot = r[0][i] * r[0][j] + r[1][i] * r[1][j];
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - want).abs());
        }
    }
    worst
}

fn check_orthogonal(defect: f64) -> Result<()> {
    if defect.is_finite() && defect <= tol::ORTHOGONALITY {
        Ok(())
    } else {
        Err(GeomError::NonOrthogonalRotation { deviation: defect })
    }
}

fn substitute_conic(eq: &ConicEquation, r: &Matrix2, t: &[f64; 2]) -> ConicEquation {
    let h = [[r[0][0], r[0][1], t[0]], [r[1][0], r[1][1], t[1]], [0.0, 0.0, 1.0]];
    ConicEquation::from_homogeneous(&congruence(&eq.homogeneous(), &h))
}

fn substitute_quadric(eq: &QuadricEquation, r: &Matrix3, t: &Coordinates3) -> QuadricEquation {
    let r = &r.0;
    let h = [
        [r[0][0], r[0][1], r[0][2], t[0]],
        [r[1][0], r[1][1], r[1][2], t[1]],
        [r[2][0], r[2][1], r[2][2], t[2]],
        [0.0, 0.0, 0.0, 1.0],
    ];
    QuadricEquation::from_homogeneous(&congruence(&eq.homogeneous(), &h))
}

/// Coefficients of `eq` after the substitution `p = R p̃ + t`, i.e. the same
/// point set described in the coordinates `p̃`. `R` must be orthogonal.
pub fn apply_rigid_motion_conic(eq: &ConicEquation, rotation: &Matrix2, translation: &[f64; 2]) -> Result<ConicEquation> {
    check_orthogonal(orthogonality_defect2(rotation))?;
    Ok(substitute_conic(eq, rotation, translation))
}

/// Quadric counterpart of [`apply_rigid_motion_conic`].
pub fn apply_rigid_motion_quadric(eq: &QuadricEquation, rotation: &Matrix3, translation: &Coordinates3) -> Result<QuadricEquation> {
    check_orthogonal(rotation.orthogonality_defect())?;
    Ok(substitute_quadric(eq, rotation, translation))
}

/// `φ = π/4 − ½ arctan((A − C) / (2B))`, defined when `B ≠ 0`.
pub fn conic_rotation_angle(eq: &ConicEquation) -> Option<f64> {
    (eq.b != 0.0).then(|| std::f64::consts::FRAC_PI_4 - 0.5 * ((eq.a - eq.c) / (2.0 * eq.b)).atan())
}

/// `B̃ = (C − A)/2 · sin 2φ + B cos 2φ`.
pub fn cross_term_after_rotation(eq: &ConicEquation, phi: f64) -> f64 {
    let (s, c) = (2.0 * phi).sin_cos();
    0.5 * (eq.c - eq.a) * s + eq.b * c
}

fn rotation2(phi: f64) -> Matrix2 {
    let (s, c) = phi.sin_cos();
    [[c, -s], [s, c]]
}

const QUARTER_TURN: Matrix2 = [[0.0, -1.0], [1.0, 0.0]];
const HALF_TURN: Matrix2 = [[-1.0, 0.0], [0.0, -1.0]];
const IDENTITY2: Matrix2 = [[1.0, 0.0], [0.0, 1.0]];

fn mul2(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn mul2v(a: &Matrix2, v: &[f64; 2]) -> [f64; 2] {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

/// Accumulated motion `p = R p_cur + t` and factor `k` for a conic.
struct ConicWork {
    cur: ConicEquation,
    r: Matrix2,
    t: [f64; 2],
    k: f64,
}

impl ConicWork {
    fn motion(&mut self, r: &Matrix2, t: &[f64; 2]) {
        self.cur = substitute_conic(&self.cur, r, t);
        let shift = mul2v(&self.r, t);
        self.t = [self.t[0] + shift[0], self.t[1] + shift[1]];
        self.r = mul2(&self.r, r);
    }

    fn scale(&mut self, s: f64) {
        self.cur = self.cur.scaled(s);
        self.k *= s;
    }
}

fn is_zero(v: f64, scale: f64, zero_tol: f64) -> bool {
    v.abs() <= zero_tol * scale
}

fn grid2() -> impl Iterator<Item = [f64; 2]> {
    (0..25).map(|n| [(n % 5) as f64 - 2.0, (n / 5) as f64 - 2.0])
}

fn grid3() -> impl Iterator<Item = Coordinates3> {
    (0..125).map(|n| Coordinates3::new((n % 5) as f64 - 2.0, ((n / 5) % 5) as f64 - 2.0, (n / 25) as f64 - 2.0))
}

/// Largest `|k · original(R p̃ + t) − canonical(p̃)|` on a grid of `p̃`,
/// relative to the size of the two terms.
fn conic_residual(orig: &ConicEquation, rep: &ConicReport) -> f64 {
    let so = max_abs(&orig.to_array()) * rep.scale.abs();
    let sc = max_abs(&rep.canonical.to_array());
    grid2()
        .map(|q| {
            let p = mul2v(&rep.rotation, &q);
            let p = [p[0] + rep.translation[0], p[1] + rep.translation[1]];
            let lhs = rep.scale * orig.evaluate(p[0], p[1]);
            let rhs = rep.canonical.evaluate(q[0], q[1]);
            let size = so * (1.0 + p[0].hypot(p[1])).powi(2) + sc * (1.0 + q[0].hypot(q[1])).powi(2);
            (lhs - rhs).abs() / size
        })
        .fold(0.0, f64::max)
}

fn quadric_residual(orig: &QuadricEquation, rep: &QuadricReport) -> f64 {
    let so = max_abs(&orig.to_array()) * rep.scale.abs();
    let sc = max_abs(&rep.canonical.to_array());
    grid3()
        .map(|q| {
            let p = rep.rotation * q + rep.translation;
            let lhs = rep.scale * orig.evaluate(&p);
            let rhs = rep.canonical.evaluate(&q);
            let size = so * (1.0 + p.norm()).powi(2) + sc * (1.0 + q.norm()).powi(2);
            (lhs - rhs).abs() / size
        })
        .fold(0.0, f64::max)
}

/// [`classify_conic_with`] at the default zero threshold.
pub fn classify_conic(eq: &ConicEquation) -> Result<ConicReport> {
    classify_conic_with(eq, tol::CLASSIFIER_ZERO)
}

/// Reduces a curve to canonical form.
///
/// Rotates by [`conic_rotation_angle`] when the cross term is significant,
/// then completes squares per type (both squares / squares of opposite sign /
/// a single square). `zero_tol` is the relative threshold below which a
/// quantity counts as zero.
pub fn classify_conic_with(eq: &ConicEquation, zero_tol: f64) -> Result<ConicReport> {
    eq.validate(zero_tol)?;
    let mut w = ConicWork { cur: *eq, r: IDENTITY2, t: [0.0, 0.0], k: 1.0 };

    let quad_scale = max_abs(&[eq.a, eq.b, eq.c]);
    if !is_zero(eq.b, quad_scale, zero_tol) {
        let phi = conic_rotation_angle(eq).unwrap_or(0.0);
        w.motion(&rotation2(phi), &[0.0, 0.0]);
    }
    w.cur.b = 0.0;

    let quad_scale = w.cur.a.abs().max(w.cur.c.abs());
    let a_zero = is_zero(w.cur.a, quad_scale, zero_tol);
    let c_zero = is_zero(w.cur.c, quad_scale, zero_tol);

    let class = if !a_zero && !c_zero {
        central_conic(&mut w, zero_tol)
    } else {
        if a_zero {
            w.cur.a = 0.0;
        } else {
            w.cur.c = 0.0;
            w.motion(&QUARTER_TURN, &[0.0, 0.0]);
            w.cur.a = 0.0;
            w.cur.b = 0.0;
        }
        parabolic_conic(&mut w, zero_tol)
    };

    let mut rep = ConicReport {
        class,
        canonical: w.cur,
        rotation: w.r,
        translation: w.t,
        scale: w.k,
        residual: 0.0,
    };
    rep.residual = conic_residual(eq, &rep);
    Ok(rep)
}

fn central_conic(w: &mut ConicWork, zero_tol: f64) -> ConicClass {
    let elliptic = w.cur.a.signum() == w.cur.c.signum();
    if w.cur.a < 0.0 {
        w.scale(-1.0);
    }
    let (a, c, d, e) = (w.cur.a, w.cur.c, w.cur.d, w.cur.e);
    let f_scale = w.cur.f.abs().max(d * d / a.abs()).max(e * e / c.abs());
    w.motion(&IDENTITY2, &[-d / a, -e / c]);
    w.cur.b = 0.0;
    w.cur.d = 0.0;
    w.cur.e = 0.0;
    let f = w.cur.f;
    let f_zero = is_zero(f, f_scale, zero_tol);
    if f_zero {
        w.cur.f = 0.0;
    }

    if elliptic {
        if w.cur.a > w.cur.c {
            w.motion(&QUARTER_TURN, &[0.0, 0.0]);
            w.cur.b = 0.0;
        }
        if f_zero {
            let s = 1.0 / w.cur.a;
            w.scale(s);
            w.cur.a = 1.0;
            ConicClass::Point
        } else if f < 0.0 {
            w.scale(-1.0 / f);
            w.cur.f = -1.0;
            ConicClass::Ellipse
        } else {
            w.scale(1.0 / f);
            w.cur.f = 1.0;
            ConicClass::ImaginaryEllipse
        }
    } else if f_zero {
        let s = 1.0 / w.cur.a;
        w.scale(s);
        w.cur.a = 1.0;
        ConicClass::IntersectingLines
    } else {
        if f > 0.0 {
            w.scale(-1.0);
            w.motion(&QUARTER_TURN, &[0.0, 0.0]);
            w.cur.b = 0.0;
        }
        let s = -1.0 / w.cur.f;
        w.scale(s);
        w.cur.f = -1.0;
        ConicClass::Hyperbola
    }
}

/// The single square is on `y`: `C y² + 2D x + 2E y + F = 0`.
fn parabolic_conic(w: &mut ConicWork, zero_tol: f64) -> ConicClass {
    let s = 1.0 / w.cur.c;
    w.scale(s);
    w.cur.c = 1.0;
    let e = w.cur.e;
    let f_scale = w.cur.f.abs().max(e * e);
    let lin_scale = 1.0_f64.max(w.cur.d.abs()).max(e.abs());
    // y = ỹ − E leaves F̃ = F − E².
    w.motion(&IDENTITY2, &[0.0, -e]);
    w.cur.e = 0.0;
    w.cur.b = 0.0;
    w.cur.a = 0.0;

    let d = w.cur.d;
    if !is_zero(d, lin_scale, zero_tol) {
        w.motion(&IDENTITY2, &[-w.cur.f / (2.0 * d), 0.0]);
        w.cur.f = 0.0;
        if w.cur.d > 0.0 {
            w.motion(&HALF_TURN, &[0.0, 0.0]);
        }
        w.cur.e = 0.0;
        w.cur.f = 0.0;
        w.cur.a = 0.0;
        w.cur.b = 0.0;
        return ConicClass::Parabola;
    }
    w.cur.d = 0.0;
    let f = w.cur.f;
    if is_zero(f, f_scale, zero_tol) {
        w.cur.f = 0.0;
        ConicClass::CoincidingLines
    } else if f < 0.0 {
        ConicClass::ParallelLines
    } else {
        ConicClass::ImaginaryParallelLines
    }
}

/// Accumulated motion and factor for a quadric.
struct QuadricWork {
    cur: QuadricEquation,
    r: Matrix3,
    t: Coordinates3,
    k: f64,
}

impl QuadricWork {
    fn motion(&mut self, r: &Matrix3, t: &Coordinates3) {
        self.cur = substitute_quadric(&self.cur, r, t);
        self.t = self.r * *t + self.t;
        self.r = self.r * *r;
    }

    fn scale(&mut self, s: f64) {
        self.cur = self.cur.scaled(s);
        self.k *= s;
    }

    fn diagonal(&self) -> [f64; 3] {
        [self.cur.a, self.cur.c, self.cur.f]
    }

    fn linear(&self) -> [f64; 3] {
        [self.cur.g, self.cur.h, self.cur.i]
    }

    fn set_diagonal(&mut self, d: [f64; 3]) {
        self.cur.a = d[0];
        self.cur.c = d[1];
        self.cur.f = d[2];
        self.cur.b = 0.0;
        self.cur.d = 0.0;
        self.cur.e = 0.0;
    }

    fn set_linear(&mut self, l: [f64; 3]) {
        self.cur.g = l[0];
        self.cur.h = l[1];
        self.cur.i = l[2];
    }

    /// Reorders axes: new axis `m` is old axis `order[m]`. The column
    /// `fix_column` is negated if needed to keep a proper rotation.
    fn permute(&mut self, order: [usize; 3], fix_column: usize) {
        let mut p = [[0.0; 3]; 3];
        for (m, &old) in order.iter().enumerate() {
            p[old][m] = 1.0;
        }
        let mut p = Matrix3(p);
        if p.det() < 0.0 {
            for row in p.0.iter_mut() {
                row[fix_column] = -row[fix_column];
            }
        }
        let (d, l) = (self.diagonal(), self.linear());
        self.motion(&p, &Coordinates3::ZERO);
        let sign = |m: usize| p.0[order[m]][m];
        self.set_diagonal([d[order[0]], d[order[1]], d[order[2]]]);
        self.set_linear([
            l[order[0]] * sign(0),
            l[order[1]] * sign(1),
            l[order[2]] * sign(2),
        ]);
    }
}

/// [`classify_quadric_with`] at the default zero threshold.
pub fn classify_quadric(eq: &QuadricEquation) -> Result<QuadricReport> {
    classify_quadric_with(eq, tol::CLASSIFIER_ZERO)
}

/// Reduces a surface to canonical form.
///
/// Diagonalizes the quadratic part by Jacobi rotations, removes linear terms
/// along axes with nonzero eigenvalues, then branches on the number and
/// signs of nonzero eigenvalues and on the remaining linear terms. Surfaces
/// that lose a variable are reduced to the curve case.
pub fn classify_quadric_with(eq: &QuadricEquation, zero_tol: f64) -> Result<QuadricReport> {
    eq.validate(zero_tol)?;
    let mut w = QuadricWork { cur: *eq, r: Matrix3::IDENTITY, t: Coordinates3::ZERO, k: 1.0 };

    let eig = eq.quadratic_part().eigen();
    let mut v = eig.vectors;
    if v.det() < 0.0 {
        for row in v.0.iter_mut() {
            row[2] = -row[2];
        }
    }
    w.motion(&v, &Coordinates3::ZERO);
    let lam_scale = max_abs(&eig.values);
    let mut lam = eig.values;
    for l in lam.iter_mut() {
        if is_zero(*l, lam_scale, zero_tol) {
            *l = 0.0;
        }
    }
    w.set_diagonal(lam);

    // Translate along every axis with a nonzero eigenvalue.
    let g = w.linear();
    let lin_scale = lam_scale.max(max_abs(&eq.linear_part().0));
    let mut j_scale = w.cur.j.abs();
    let mut shift = Coordinates3::ZERO;
    for m in 0..3 {
        if lam[m] != 0.0 {
            shift.0[m] = -g[m] / lam[m];
            j_scale = j_scale.max(g[m] * g[m] / lam[m].abs());
        }
    }
    w.motion(&Matrix3::IDENTITY, &shift);
    w.set_diagonal(lam);
    let mut g = w.linear();
    for m in 0..3 {
        if lam[m] != 0.0 || is_zero(g[m], lin_scale, zero_tol) {
            g[m] = 0.0;
        }
    }
    w.set_linear(g);

    let nonzero: Vec<usize> = (0..3).filter(|&m| lam[m] != 0.0).collect();
    let zeros: Vec<usize> = (0..3).filter(|&m| lam[m] == 0.0).collect();

    let class = match nonzero.len() {
        3 => central_quadric(&mut w, j_scale, zero_tol),
        2 if g[zeros[0]] != 0.0 => paraboloid(&mut w, zeros[0]),
        2 => {
            let free = zeros[0];
            cylinder(&mut w, free, j_scale, zero_tol)?
        }
        _ => {
            let (zj, zk) = (zeros[0], zeros[1]);
            let free = match (g[zj] != 0.0, g[zk] != 0.0) {
                (true, true) => {
                    // Turn within the zero plane so the linear term lies on one axis.
                    let n = g[zj].hypot(g[zk]);
                    let (cj, ck) = (g[zj] / n, g[zk] / n);
                    let mut r = Matrix3::IDENTITY;
                    r.0[zj][zj] = cj;
                    r.0[zk][zj] = ck;
                    r.0[zj][zk] = -ck;
                    r.0[zk][zk] = cj;
                    let d = w.diagonal();
                    w.motion(&r, &Coordinates3::ZERO);
                    w.set_diagonal(d);
                    let mut l = [0.0; 3];
                    l[zj] = n;
                    w.set_linear(l);
                    zk
                }
                (true, false) => zk,
                (false, true) => zj,
                (false, false) => zk,
            };
            cylinder(&mut w, free, j_scale, zero_tol)?
        }
    };

    let mut rep = QuadricReport {
        class,
        canonical: w.cur,
        rotation: w.r,
        translation: w.t,
        scale: w.k,
        residual: 0.0,
    };
    rep.residual = quadric_residual(eq, &rep);
    Ok(rep)
}

/// Positives first, each sign group by ascending magnitude.
fn central_order(d: [f64; 3], idx: &[usize]) -> Vec<usize> {
    let mut idx = idx.to_vec();
    idx.sort_by(|&i, &j| (d[i] < 0.0).cmp(&(d[j] < 0.0)).then(d[i].abs().total_cmp(&d[j].abs())));
    idx
}

fn central_quadric(w: &mut QuadricWork, j_scale: f64, zero_tol: f64) -> QuadricClass {
    let d = w.diagonal();
    let neg = d.iter().filter(|&&l| l < 0.0).count();
    if neg >= 2 {
        w.scale(-1.0);
    }
    let d = w.diagonal();
    let order = central_order(d, &[0, 1, 2]);
    w.permute([order[0], order[1], order[2]], 0);
    w.set_linear([0.0; 3]);
    let elliptic = neg == 0 || neg == 3;
    let jv = w.cur.j;
    if is_zero(jv, j_scale * w.k.abs(), zero_tol) {
        w.cur.j = 0.0;
        let s = 1.0 / w.cur.a;
        w.scale(s);
        w.cur.a = 1.0;
        return if elliptic { QuadricClass::Point } else { QuadricClass::Cone };
    }
    let s = 1.0 / jv.abs();
    w.scale(s);
    w.cur.j = jv.signum();
    match (elliptic, jv < 0.0) {
        (true, true) => QuadricClass::Ellipsoid,
        (true, false) => QuadricClass::ImaginaryEllipsoid,
        (false, true) => QuadricClass::HyperboloidOneSheet,
        (false, false) => QuadricClass::HyperboloidTwoSheets,
    }
}

fn paraboloid(w: &mut QuadricWork, zero_axis: usize) -> QuadricClass {
    let d = w.diagonal();
    let idx: Vec<usize> = (0..3).filter(|&m| m != zero_axis).collect();
    if idx.iter().all(|&m| d[m] < 0.0) {
        w.scale(-1.0);
    }
    let d = w.diagonal();
    let order = central_order(d, &idx);
    w.permute([order[0], order[1], zero_axis], 0);
    let gz = w.cur.i;
    w.motion(&Matrix3::IDENTITY, &Coordinates3::new(0.0, 0.0, -w.cur.j / (2.0 * gz)));
    w.cur.j = 0.0;
    if w.cur.i > 0.0 {
        let flip = Matrix3([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]);
        w.motion(&flip, &Coordinates3::ZERO);
    }
    let s = -1.0 / w.cur.i;
    w.scale(s);
    let d = w.diagonal();
    w.set_diagonal(d);
    w.set_linear([0.0, 0.0, -1.0]);
    w.cur.j = 0.0;
    if d[0] > 0.0 && d[1] > 0.0 {
        QuadricClass::EllipticParaboloid
    } else {
        QuadricClass::HyperbolicParaboloid
    }
}

fn cylinder(w: &mut QuadricWork, free: usize, j_scale: f64, zero_tol: f64) -> Result<QuadricClass> {
    if is_zero(w.cur.j, j_scale, zero_tol) {
        w.cur.j = 0.0;
    }
    let kept: Vec<usize> = (0..3).filter(|&m| m != free).collect();
    let l = w.linear();
    let mut l2 = l;
    l2[free] = 0.0;
    w.set_linear(l2);
    w.permute([kept[0], kept[1], free], 2);
    let q = w.cur;
    let section = ConicEquation::new(q.a, 0.0, q.c, q.g, q.h, q.j);
    let rep = classify_conic_with(&section, zero_tol)?;
    let r = Matrix3([
        [rep.rotation[0][0], rep.rotation[0][1], 0.0],
        [rep.rotation[1][0], rep.rotation[1][1], 0.0],
        [0.0, 0.0, 1.0],
    ]);
    w.motion(&r, &Coordinates3::new(rep.translation[0], rep.translation[1], 0.0));
    w.scale(rep.scale);
    let c = rep.canonical;
    w.cur = QuadricEquation::new(c.a, c.b, c.c, 0.0, 0.0, 0.0, c.d, c.e, 0.0, c.f);
    Ok(lift_conic_class(rep.class))
}
