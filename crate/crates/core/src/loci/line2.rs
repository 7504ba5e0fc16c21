//! Straight lines on a plane.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{first_significant, require_finite, sample_parameters, snap_small};
use crate::frames::Frame;
use crate::{tol, GeomError, Result};

/// Coordinates of a point or vector on the plane spanned by `e1, e2`.
pub type Point2 = [f64; 2];

fn sub(a: &Point2, b: &Point2) -> Point2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: &Point2, b: &Point2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn norm(a: &Point2) -> f64 {
    a[0].hypot(a[1])
}

fn dot(a: &Point2, b: &Point2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Gram matrix of `e1, e2`.
#[derive(Debug, Clone, Copy)]
struct Metric2 {
    g: [[f64; 2]; 2],
}

impl Metric2 {
    fn of(f: &Frame) -> Self {
        let g = f.gram();
        Self { g: [[g.get(0, 0), g.get(0, 1)], [g.get(1, 0), g.get(1, 1)]] }
    }

    fn lower(&self, v: &Point2) -> Point2 {
        [self.g[0][0] * v[0] + self.g[0][1] * v[1], self.g[1][0] * v[0] + self.g[1][1] * v[1]]
    }

    fn raise(&self, v: &Point2) -> Point2 {
        let det = self.g[0][0] * self.g[1][1] - self.g[0][1] * self.g[1][0];
        [
            (self.g[1][1] * v[0] - self.g[0][1] * v[1]) / det,
            (-self.g[1][0] * v[0] + self.g[0][0] * v[1]) / det,
        ]
    }
}

/// `A x + B y − D = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineCoefficients {
    pub a: f64,
    pub b: f64,
    pub d: f64,
}

/// Which components of the direction vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Line2Case {
    /// `(x − x0)/ax = (y − y0)/ay`.
    Ratio,
    /// `x = x0`.
    FixedX,
    /// `y = y0`.
    FixedY,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalLine2 {
    pub point: Point2,
    pub direction: Point2,
    pub case: Line2Case,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum PlaneLineForm {
    /// `r = r0 + a t`.
    Parametric { r0: Point2, a: Point2 },
    /// `(r, n) = D` with contravariant `n`.
    Normal { n: Point2, d: f64 },
    Canonical(CanonicalLine2),
    TwoPoint { p0: Point2, p1: Point2 },
    General(LineCoefficients),
    /// `x/a + y/b = 1`.
    Intercept { a: f64, b: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneLineTag {
    Parametric,
    Normal,
    Canonical,
    TwoPoint,
    General,
    Intercept,
}

impl PlaneLineTag {
    pub const ALL: [Self; 6] = [
        Self::Parametric,
        Self::Normal,
        Self::Canonical,
        Self::TwoPoint,
        Self::General,
        Self::Intercept,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Parametric => "parametric",
            Self::Normal => "normal",
            Self::Canonical => "canonical",
            Self::TwoPoint => "two_point",
            Self::General => "general",
            Self::Intercept => "intercept",
        }
    }
}

impl fmt::Display for PlaneLineTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PlaneLineTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown line form '{s}'"))
    }
}

/// A point and a nonzero direction.
#[derive(Debug, Clone, Copy)]
struct PointDir {
    point: Point2,
    dir: Point2,
    /// Exact coefficients when the source already carried a normal.
    general: Option<LineCoefficients>,
}

fn nonzero_direction(dir: &Point2) -> Result<()> {
    if norm(dir) <= tol::ZERO_LENGTH {
        Err(GeomError::InvalidForm("direction vector is zero"))
    } else {
        Ok(())
    }
}

fn from_covariant(n: Point2, d: f64) -> Result<PointDir> {
    let len = norm(&n);
    if len <= tol::ZERO_LENGTH {
        return Err(GeomError::InvalidForm("normal vector is zero"));
    }
    let s = d / (len * len);
    Ok(PointDir {
        point: [n[0] * s, n[1] * s],
        dir: [-n[1], n[0]],
        general: Some(LineCoefficients { a: n[0], b: n[1], d }),
    })
}

impl PlaneLineForm {
    pub fn tag(&self) -> PlaneLineTag {
        match self {
            Self::Parametric { .. } => PlaneLineTag::Parametric,
            Self::Normal { .. } => PlaneLineTag::Normal,
            Self::Canonical(_) => PlaneLineTag::Canonical,
            Self::TwoPoint { .. } => PlaneLineTag::TwoPoint,
            Self::General(_) => PlaneLineTag::General,
            Self::Intercept { .. } => PlaneLineTag::Intercept,
        }
    }

    fn values(&self) -> Vec<f64> {
        match *self {
            Self::Parametric { r0, a } => vec![r0[0], r0[1], a[0], a[1]],
            Self::Normal { n, d } => vec![n[0], n[1], d],
            Self::Canonical(c) => vec![c.point[0], c.point[1], c.direction[0], c.direction[1]],
            Self::TwoPoint { p0, p1 } => vec![p0[0], p0[1], p1[0], p1[1]],
            Self::General(c) => vec![c.a, c.b, c.d],
            Self::Intercept { a, b } => vec![a, b],
        }
    }

    fn point_dir(&self, f: &Frame) -> Result<PointDir> {
        require_finite(&self.values())?;
        match *self {
            Self::Parametric { r0, a } => {
                nonzero_direction(&a)?;
                Ok(PointDir { point: r0, dir: a, general: None })
            }
            Self::Normal { n, d } => from_covariant(Metric2::of(f).lower(&n), d),
            Self::Canonical(c) => {
                nonzero_direction(&c.direction)?;
                let mut snapped = c.direction;
                snap_small(&mut snapped);
                if line2_case(&snapped) != c.case {
                    return Err(GeomError::InvalidForm("canonical case does not match direction"));
                }
                Ok(PointDir { point: c.point, dir: c.direction, general: None })
            }
            Self::TwoPoint { p0, p1 } => {
                let dir = sub(&p1, &p0);
                if norm(&dir) <= tol::ZERO_LENGTH {
                    return Err(GeomError::InvalidForm("the two points coincide"));
                }
                Ok(PointDir { point: p0, dir, general: None })
            }
            Self::General(c) => from_covariant([c.a, c.b], c.d),
            Self::Intercept { a, b } => {
                if a == 0.0 || b == 0.0 {
                    return Err(GeomError::InvalidForm("intercepts must be nonzero"));
                }
                Ok(PointDir { point: [a, 0.0], dir: [-a, b], general: None })
            }
        }
    }

    /// Checks the form invariants.
    pub fn validate(&self, f: &Frame) -> Result<()> {
        self.point_dir(f).map(|_| ())
    }

    /// Deviation of `p` from the defining equation, in coordinate length units.
    pub fn residual(&self, p: &Point2, f: &Frame) -> f64 {
        match *self {
            Self::Parametric { r0, a } => cross(&sub(p, &r0), &a).abs() / norm(&a),
            Self::Normal { n, d } => {
                let lower = Metric2::of(f).lower(&n);
                (dot(p, &lower) - d).abs() / norm(&lower)
            }
            Self::Canonical(c) => {
                let q = sub(p, &c.point);
                match c.case {
                    Line2Case::Ratio => cross(&q, &c.direction).abs() / norm(&c.direction),
                    Line2Case::FixedX => q[0].abs(),
                    Line2Case::FixedY => q[1].abs(),
                }
            }
            Self::TwoPoint { p0, p1 } => {
                let dir = sub(&p1, &p0);
                cross(&sub(p, &p0), &dir).abs() / norm(&dir)
            }
            Self::General(c) => (c.a * p[0] + c.b * p[1] - c.d).abs() / c.a.hypot(c.b),
            Self::Intercept { a, b } => (p[0] / a + p[1] / b - 1.0).abs() / (1.0 / a).hypot(1.0 / b),
        }
    }

    /// `n` points `r0 + a t` spread along the line.
    pub fn sample_points(&self, f: &Frame, n: usize) -> Result<Vec<Point2>> {
        let pd = self.point_dir(f)?;
        let scale = 1.0 / norm(&pd.dir).max(f64::MIN_POSITIVE);
        Ok(sample_parameters(n)
            .map(|t| [pd.point[0] + pd.dir[0] * t * scale, pd.point[1] + pd.dir[1] * t * scale])
            .collect())
    }
}

fn line2_case(dir: &Point2) -> Line2Case {
    match (dir[0] == 0.0, dir[1] == 0.0) {
        (true, _) => Line2Case::FixedX,
        (_, true) => Line2Case::FixedY,
        _ => Line2Case::Ratio,
    }
}

/// Normalized General coefficients of the line through `pd`.
fn general_of(pd: &PointDir) -> LineCoefficients {
    let (mut n, d) = match pd.general {
        Some(g) => ([g.a, g.b], Some(g.d)),
        None => ([pd.dir[1], -pd.dir[0]], None),
    };
    snap_small(&mut n);
    let lead = first_significant(&n).map_or(1.0, |i| n[i]);
    let (a, b) = (n[0] / lead, n[1] / lead);
    let d = d.map_or(a * pd.point[0] + b * pd.point[1], |d| d / lead);
    LineCoefficients { a, b, d }
}

/// Rewrites `src` in the form `to`, metric taken from `e1, e2` of `f`.
pub fn convert_plane_line(src: &PlaneLineForm, to: PlaneLineTag, f: &Frame) -> Result<PlaneLineForm> {
    let pd = src.point_dir(f)?;
    Ok(match to {
        PlaneLineTag::Parametric => PlaneLineForm::Parametric { r0: pd.point, a: pd.dir },
        PlaneLineTag::Normal => {
            let g = general_of(&pd);
            PlaneLineForm::Normal { n: Metric2::of(f).raise(&[g.a, g.b]), d: g.d }
        }
        PlaneLineTag::Canonical => {
            let mut dir = pd.dir;
            snap_small(&mut dir);
            PlaneLineForm::Canonical(CanonicalLine2 { point: pd.point, direction: dir, case: line2_case(&dir) })
        }
        PlaneLineTag::TwoPoint => PlaneLineForm::TwoPoint {
            p0: pd.point,
            p1: [pd.point[0] + pd.dir[0], pd.point[1] + pd.dir[1]],
        },
        PlaneLineTag::General => PlaneLineForm::General(general_of(&pd)),
        PlaneLineTag::Intercept => {
            let g = general_of(&pd);
            let scale = g.a.abs().max(g.b.abs());
            if g.a == 0.0 || g.b == 0.0 {
                return Err(GeomError::NotRepresentable("line is parallel to a coordinate axis"));
            }
            if g.d.abs() <= tol::COLLINEAR * scale {
                return Err(GeomError::NotRepresentable("line passes through the origin"));
            }
            PlaneLineForm::Intercept { a: g.d / g.a, b: g.d / g.b }
        }
    })
}
