//! Ellipses, hyperbolas and parabolas in their canonical coordinates.
//!
//! Canonical equations:
//! `x²/a² + y²/b² = 1`, `x²/a² − y²/b² = 1` and `y² = 2 p x`.
//! The foci of the central curves are `(∓c, 0)`, the left directrix is
//! `x = −d` with `d = a²/c`. The parabola has focus `(p/2, 0)` and directrix
//! `x = −p/2`.
//!
//! Tangent lines are returned in General form `A x + B y − D = 0` with the
//! coefficients left exactly as the tangent equation gives them (no
//! normalization).

use serde::{Deserialize, Serialize};

use crate::loci::{LineCoefficients, PlaneLineForm, Point2};
use crate::{tol, GeomError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub eps: f64,
    /// Directrix distance `a²/c`; `None` for a circle.
    pub d: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolaParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub eps: f64,
    pub d: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolaParams {
    pub p: f64,
}

fn finite(values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(GeomError::NonFinite)
    }
}

fn on_curve(residual: f64, scale: f64) -> Result<()> {
    if residual.abs() <= tol::ON_CURVE * scale.max(1.0) {
        Ok(())
    } else {
        Err(GeomError::PointNotOnCurve { residual })
    }
}

fn dist(p: Point2, q: Point2) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

fn general(a: f64, b: f64, d: f64) -> PlaneLineForm {
    PlaneLineForm::General(LineCoefficients { a, b, d })
}

impl EllipseParams {
    /// Requires `0 ≤ c < a`.
    pub fn from_a_c(a: f64, c: f64) -> Result<Self> {
        finite(&[a, c])?;
        if !(a > 0.0) {
            return Err(GeomError::InvalidShape("semimajor axis must be positive"));
        }
        if !(0.0..a).contains(&c) {
            return Err(GeomError::InvalidShape("ellipse requires 0 <= c < a"));
        }
        let b = ((a - c) * (a + c)).sqrt();
        Ok(Self { a, b, c, eps: c / a, d: (c > 0.0).then(|| a * a / c) })
    }

    /// Requires `0 < b ≤ a`.
    pub fn from_a_b(a: f64, b: f64) -> Result<Self> {
        finite(&[a, b])?;
        if !(b > 0.0 && b <= a) {
            return Err(GeomError::InvalidShape("ellipse requires 0 < b <= a"));
        }
        let c = ((a - b) * (a + b)).sqrt();
        Ok(Self { a, b, c, eps: c / a, d: (c > 0.0).then(|| a * a / c) })
    }

    /// `x²/a² + y²/b² − 1`.
    pub fn equation(&self, x: f64, y: f64) -> f64 {
        x * x / (self.a * self.a) + y * y / (self.b * self.b) - 1.0
    }

    fn scale(&self) -> f64 {
        (self.a * self.a).max(self.b * self.b)
    }

    pub fn check_on_curve(&self, x: f64, y: f64) -> Result<()> {
        finite(&[x, y])?;
        on_curve(self.equation(x, y), self.scale())
    }

    pub fn foci(&self) -> [Point2; 2] {
        [[-self.c, 0.0], [self.c, 0.0]]
    }

    /// `(a cos t, b sin t)`.
    pub fn point_at(&self, t: f64) -> Point2 {
        [self.a * t.cos(), self.b * t.sin()]
    }

    /// `|MF1| = a + ε x`, `|MF2| = a − ε x`.
    pub fn focal_radii(&self, x: f64) -> [f64; 2] {
        [self.a + self.eps * x, self.a - self.eps * x]
    }

    /// `x x0/a² + y y0/b² = 1`.
    pub fn tangent_at(&self, x0: f64, y0: f64) -> Result<PlaneLineForm> {
        self.check_on_curve(x0, y0)?;
        Ok(general(x0 / (self.a * self.a), y0 / (self.b * self.b), 1.0))
    }

    /// `|MF1| / |MH1|` for the left focus and directrix.
    pub fn directrix_ratio(&self, x: f64, y: f64) -> Result<f64> {
        self.check_on_curve(x, y)?;
        let d = self.d.ok_or(GeomError::UndefinedForCircle)?;
        Ok(dist([x, y], self.foci()[0]) / (x + d).abs())
    }

    /// `|(MF1, n)/|MF1| − (MF2, n)/|MF2||` with the tangent normal `n`.
    pub fn focal_bisector_residual(&self, x0: f64, y0: f64) -> Result<f64> {
        self.check_on_curve(x0, y0)?;
        let n = [x0 / (self.a * self.a), y0 / (self.b * self.b)];
        let [f1, f2] = self.foci();
        let side = |f: Point2| {
            let v = [f[0] - x0, f[1] - y0];
            (v[0] * n[0] + v[1] * n[1]) / v[0].hypot(v[1])
        };
        Ok((side(f1) - side(f2)).abs())
    }
}

impl HyperbolaParams {
    /// Requires `c > a > 0`.
    pub fn from_a_c(a: f64, c: f64) -> Result<Self> {
        finite(&[a, c])?;
        if !(a > 0.0 && c > a) {
            return Err(GeomError::InvalidShape("hyperbola requires c > a > 0"));
        }
        let b = ((c - a) * (c + a)).sqrt();
        Ok(Self { a, b, c, eps: c / a, d: a * a / c })
    }

    /// Requires `a > 0`, `b > 0`.
    pub fn from_a_b(a: f64, b: f64) -> Result<Self> {
        finite(&[a, b])?;
        if !(a > 0.0 && b > 0.0) {
            return Err(GeomError::InvalidShape("hyperbola requires a > 0 and b > 0"));
        }
        let c = a.hypot(b);
        Ok(Self { a, b, c, eps: c / a, d: a * a / c })
    }

    /// `x²/a² − y²/b² − 1`.
    pub fn equation(&self, x: f64, y: f64) -> f64 {
        x * x / (self.a * self.a) - y * y / (self.b * self.b) - 1.0
    }

    fn scale(&self) -> f64 {
        (self.a * self.a).max(self.b * self.b)
    }

    pub fn check_on_curve(&self, x: f64, y: f64) -> Result<()> {
        finite(&[x, y])?;
        on_curve(self.equation(x, y), self.scale())
    }

    pub fn foci(&self) -> [Point2; 2] {
        [[-self.c, 0.0], [self.c, 0.0]]
    }

    /// `(± a cosh s, b sinh s)`, the sign choosing the branch.
    pub fn point_at(&self, right_branch: bool, s: f64) -> Point2 {
        let sign = if right_branch { 1.0 } else { -1.0 };
        [sign * self.a * s.cosh(), self.b * s.sinh()]
    }

    /// `|MF1| = |ε x + a|`, `|MF2| = |ε x − a|`.
    pub fn focal_radii(&self, x: f64) -> [f64; 2] {
        [(self.eps * x + self.a).abs(), (self.eps * x - self.a).abs()]
    }

    /// `x x0/a² − y y0/b² = 1`.
    pub fn tangent_at(&self, x0: f64, y0: f64) -> Result<PlaneLineForm> {
        self.check_on_curve(x0, y0)?;
        Ok(general(x0 / (self.a * self.a), -y0 / (self.b * self.b), 1.0))
    }

    /// `|MF1| / |MH1|` for the left focus and directrix.
    pub fn directrix_ratio(&self, x: f64, y: f64) -> Result<f64> {
        self.check_on_curve(x, y)?;
        Ok(dist([x, y], self.foci()[0]) / (x + self.d).abs())
    }

    /// `|(F1M, n)/|F1M| − (MF2, n)/|MF2||` with the tangent normal `n`.
    pub fn focal_bisector_residual(&self, x0: f64, y0: f64) -> Result<f64> {
        self.check_on_curve(x0, y0)?;
        let n = [x0 / (self.a * self.a), -y0 / (self.b * self.b)];
        let [f1, f2] = self.foci();
        let cos = |v: Point2| (v[0] * n[0] + v[1] * n[1]) / v[0].hypot(v[1]);
        Ok((cos([x0 - f1[0], y0 - f1[1]]) - cos([f2[0] - x0, f2[1] - y0])).abs())
    }

    /// `y = (b/a) x` and `y = −(b/a) x`, each scaled so that `A = 1`.
    pub fn asymptotes(&self) -> [PlaneLineForm; 2] {
        let k = self.a / self.b;
        [general(1.0, -k, 0.0), general(1.0, k, 0.0)]
    }
}

impl ParabolaParams {
    pub fn new(p: f64) -> Result<Self> {
        finite(&[p])?;
        if !(p > 0.0) {
            return Err(GeomError::InvalidShape("parabola requires p > 0"));
        }
        Ok(Self { p })
    }

    pub const ECCENTRICITY: f64 = 1.0;

    /// `y² − 2 p x`.
    pub fn equation(&self, x: f64, y: f64) -> f64 {
        y * y - 2.0 * self.p * x
    }

    pub fn check_on_curve(&self, x: f64, y: f64) -> Result<()> {
        finite(&[x, y])?;
        on_curve(self.equation(x, y), (self.p * self.p).max(y * y))
    }

    pub fn focus(&self) -> Point2 {
        [self.p / 2.0, 0.0]
    }

    /// `(y²/(2p), y)`.
    pub fn point_at(&self, y: f64) -> Point2 {
        [y * y / (2.0 * self.p), y]
    }

    /// `y y0 = p x + p x0`, stored as `A = p`, `B = −y0`, `D = −p x0`.
    pub fn tangent_at(&self, x0: f64, y0: f64) -> Result<PlaneLineForm> {
        self.check_on_curve(x0, y0)?;
        Ok(general(self.p, -y0, -self.p * x0))
    }

    /// `|MF| / |MH|` for the directrix `x = −p/2`.
    pub fn directrix_ratio(&self, x: f64, y: f64) -> Result<f64> {
        self.check_on_curve(x, y)?;
        Ok(dist([x, y], self.focus()) / (x + self.p / 2.0).abs())
    }

    /// `||MF| − |NF||` with `N = (−x0, 0)` where the tangent meets the axis.
    pub fn focal_bisector_residual(&self, x0: f64, y0: f64) -> Result<f64> {
        self.check_on_curve(x0, y0)?;
        let f = self.focus();
        Ok((dist([x0, y0], f) - dist([-x0, 0.0], f)).abs())
    }
}

/// Any of the three curves in canonical coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CanonicalConic {
    Ellipse(EllipseParams),
    Hyperbola(HyperbolaParams),
    Parabola(ParabolaParams),
}

impl CanonicalConic {
    pub fn equation(&self, x: f64, y: f64) -> f64 {
        match self {
            Self::Ellipse(e) => e.equation(x, y),
            Self::Hyperbola(h) => h.equation(x, y),
            Self::Parabola(p) => p.equation(x, y),
        }
    }

    pub fn eccentricity(&self) -> f64 {
        match self {
            Self::Ellipse(e) => e.eps,
            Self::Hyperbola(h) => h.eps,
            Self::Parabola(_) => ParabolaParams::ECCENTRICITY,
        }
    }

    pub fn tangent_at(&self, x0: f64, y0: f64) -> Result<PlaneLineForm> {
        match self {
            Self::Ellipse(e) => e.tangent_at(x0, y0),
            Self::Hyperbola(h) => h.tangent_at(x0, y0),
            Self::Parabola(p) => p.tangent_at(x0, y0),
        }
    }

    pub fn directrix_ratio(&self, x: f64, y: f64) -> Result<f64> {
        match self {
            Self::Ellipse(e) => e.directrix_ratio(x, y),
            Self::Hyperbola(h) => h.directrix_ratio(x, y),
            Self::Parabola(p) => p.directrix_ratio(x, y),
        }
    }

    pub fn focal_bisector_residual(&self, x0: f64, y0: f64) -> Result<f64> {
        match self {
            Self::Ellipse(e) => e.focal_bisector_residual(x0, y0),
            Self::Hyperbola(h) => h.focal_bisector_residual(x0, y0),
            Self::Parabola(p) => p.focal_bisector_residual(x0, y0),
        }
    }

    /// Value and first derivative at `t = 0` of the curve equation along the
    /// line `(x0, y0) + t (−B, A)`; both vanish for a tangent at `(x0, y0)`.
    pub fn contact_defect(&self, line: &LineCoefficients, x0: f64, y0: f64) -> (f64, f64) {
        let (dx, dy) = (-line.b, line.a);
        let q = |t: f64| self.equation(x0 + dx * t, y0 + dy * t);
        // The restriction is a quadratic q(t) = q0 + q1 t + q2 t²; recover q1 exactly.
        let (qp, qm, q0) = (q(1.0), q(-1.0), q(0.0));
        let line_off = (line.a * x0 + line.b * y0 - line.d).abs();
        (q0.abs().max(line_off), ((qp - qm) / 2.0).abs())
    }
}
