//! Planes in space.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{first_significant, require_finite, sample_parameters, snap_small, CovariantNormal};
use crate::frames::Frame;
use crate::linalg::{Coordinates3, Matrix3};
use crate::tensorkit::{scalar_product, vector_product};
use crate::{tol, GeomError, Result};

/// `A x + B y + C z − D = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl PlaneCoefficients {
    pub fn normal_lower(&self) -> Coordinates3 {
        Coordinates3::new(self.a, self.b, self.c)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        require_finite(&[self.a, self.b, self.c, self.d])?;
        if self.normal_lower().norm() <= tol::ZERO_LENGTH {
            return Err(GeomError::InvalidForm("normal vector is zero"));
        }
        Ok(())
    }

    pub fn residual(&self, p: &Coordinates3) -> f64 {
        let n = self.normal_lower();
        (n.dot(p) - self.d).abs() / n.norm()
    }

    /// Scaled so that the first nonzero of `A, B, C` is one.
    pub(crate) fn normalized(&self) -> Self {
        let mut n = [self.a, self.b, self.c];
        snap_small(&mut n);
        let lead = first_significant(&n).map_or(1.0, |i| n[i]);
        Self { a: n[0] / lead, b: n[1] / lead, c: n[2] / lead, d: self.d / lead }
    }

    /// A point of the plane and two directions spanning it.
    pub(crate) fn spanning(&self) -> (Coordinates3, Coordinates3, Coordinates3) {
        let n = self.normal_lower();
        let point = n * (self.d / n.dot(&n));
        let k = (0..3)
            .min_by(|&i, &j| n[i].abs().total_cmp(&n[j].abs()))
            .unwrap_or(0);
        let a = n.cross(&Coordinates3::unit(k));
        let b = n.cross(&a);
        (point, a, b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum PlaneForm {
    /// `r = r0 + a s + b t`.
    Parametric { r0: Coordinates3, a: Coordinates3, b: Coordinates3 },
    /// `(r, n) = D` with contravariant `n`.
    Normal { n: Coordinates3, d: f64 },
    /// `(r − r0, a, b) = 0`.
    Canonical { r0: Coordinates3, a: Coordinates3, b: Coordinates3 },
    ThreePoint { p0: Coordinates3, p1: Coordinates3, p2: Coordinates3 },
    General(PlaneCoefficients),
    /// `x/a + y/b + z/c = 1`.
    Intercept { a: f64, b: f64, c: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneTag {
    Parametric,
    Normal,
    Canonical,
    ThreePoint,
    General,
    Intercept,
}

impl PlaneTag {
    pub const ALL: [Self; 6] = [
        Self::Parametric,
        Self::Normal,
        Self::Canonical,
        Self::ThreePoint,
        Self::General,
        Self::Intercept,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Parametric => "parametric",
            Self::Normal => "normal",
            Self::Canonical => "canonical",
            Self::ThreePoint => "three_point",
            Self::General => "general",
            Self::Intercept => "intercept",
        }
    }
}

impl fmt::Display for PlaneTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PlaneTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown plane form '{s}'"))
    }
}

/// A point and two non-collinear directions.
#[derive(Debug, Clone, Copy)]
struct Span {
    point: Coordinates3,
    a: Coordinates3,
    b: Coordinates3,
    /// Exact coefficients when the source already carried a normal.
    general: Option<PlaneCoefficients>,
}

fn non_collinear(a: &Coordinates3, b: &Coordinates3) -> Result<()> {
    if a.cross(b).norm() <= tol::COLLINEAR * a.norm() * b.norm() || a.norm() <= tol::ZERO_LENGTH || b.norm() <= tol::ZERO_LENGTH {
        Err(GeomError::InvalidForm("directions are collinear"))
    } else {
        Ok(())
    }
}

fn span_of_general(g: &PlaneCoefficients) -> Result<Span> {
    g.validate()?;
    let (point, a, b) = g.spanning();
    Ok(Span { point, a, b, general: Some(*g) })
}

fn mixed_residual(p: &Coordinates3, r0: &Coordinates3, a: &Coordinates3, b: &Coordinates3) -> f64 {
    let n = a.cross(b);
    Matrix3::from_rows(*p - *r0, *a, *b).det().abs() / n.norm()
}

impl PlaneForm {
    pub fn tag(&self) -> PlaneTag {
        match self {
            Self::Parametric { .. } => PlaneTag::Parametric,
            Self::Normal { .. } => PlaneTag::Normal,
            Self::Canonical { .. } => PlaneTag::Canonical,
            Self::ThreePoint { .. } => PlaneTag::ThreePoint,
            Self::General(_) => PlaneTag::General,
            Self::Intercept { .. } => PlaneTag::Intercept,
        }
    }

    fn span(&self, f: &Frame) -> Result<Span> {
        match *self {
            Self::Parametric { r0, a, b } | Self::Canonical { r0, a, b } => {
                require_finite(&[r0[0], r0[1], r0[2], a[0], a[1], a[2], b[0], b[1], b[2]])?;
                non_collinear(&a, &b)?;
                Ok(Span { point: r0, a, b, general: None })
            }
            Self::Normal { n, d } => {
                require_finite(&[n[0], n[1], n[2], d])?;
                let lower = CovariantNormal::from_contravariant(&n, f).n_lower;
                span_of_general(&PlaneCoefficients { a: lower[0], b: lower[1], c: lower[2], d })
            }
            Self::ThreePoint { p0, p1, p2 } => {
                if !(p0.is_finite() && p1.is_finite() && p2.is_finite()) {
                    return Err(GeomError::NonFinite);
                }
                let (a, b) = (p1 - p0, p2 - p0);
                non_collinear(&a, &b).map_err(|_| GeomError::InvalidForm("the three points are collinear"))?;
                Ok(Span { point: p0, a, b, general: None })
            }
            Self::General(g) => span_of_general(&g),
            Self::Intercept { a, b, c } => {
                require_finite(&[a, b, c])?;
                if a == 0.0 || b == 0.0 || c == 0.0 {
                    return Err(GeomError::InvalidForm("intercepts must be nonzero"));
                }
                let p0 = Coordinates3::new(a, 0.0, 0.0);
                Ok(Span {
                    point: p0,
                    a: Coordinates3::new(0.0, b, 0.0) - p0,
                    b: Coordinates3::new(0.0, 0.0, c) - p0,
                    general: None,
                })
            }
        }
    }

    pub fn validate(&self, f: &Frame) -> Result<()> {
        self.span(f).map(|_| ())
    }

    /// Deviation of `p` from the defining equation, in coordinate length units.
    pub fn residual(&self, p: &Coordinates3, f: &Frame) -> f64 {
        match *self {
            Self::Parametric { r0, a, b } | Self::Canonical { r0, a, b } => mixed_residual(p, &r0, &a, &b),
            Self::Normal { n, d } => (scalar_product(p, &n, f) - d).abs() / f.gram().mul_vec(&n).norm(),
            Self::ThreePoint { p0, p1, p2 } => mixed_residual(p, &p0, &(p1 - p0), &(p2 - p0)),
            Self::General(g) => g.residual(p),
            Self::Intercept { a, b, c } => {
                let n = Coordinates3::new(1.0 / a, 1.0 / b, 1.0 / c);
                (n.dot(p) - 1.0).abs() / n.norm()
            }
        }
    }

    /// `n` points `r0 + a s + b t` on a spread of parameters.
    pub fn sample_points(&self, f: &Frame, n: usize) -> Result<Vec<Coordinates3>> {
        let sp = self.span(f)?;
        let (ua, ub) = (sp.a * (1.0 / sp.a.norm()), sp.b * (1.0 / sp.b.norm()));
        let ts: Vec<f64> = sample_parameters(n).collect();
        Ok(ts
            .iter()
            .enumerate()
            .map(|(k, &s)| {
                let t = ts[(k * 7 + 3) % ts.len()];
                sp.point + ua * s + ub * t
            })
            .collect())
    }
}

fn general_of(sp: &Span) -> PlaneCoefficients {
    if let Some(g) = sp.general {
        return g.normalized();
    }
    let n = sp.a.cross(&sp.b);
    PlaneCoefficients { a: n[0], b: n[1], c: n[2], d: n.dot(&sp.point) }.normalized()
}

/// Rewrites `src` in the form `to`.
pub fn convert_plane(src: &PlaneForm, to: PlaneTag, f: &Frame) -> Result<PlaneForm> {
    let sp = src.span(f)?;
    Ok(match to {
        PlaneTag::Parametric => PlaneForm::Parametric { r0: sp.point, a: sp.a, b: sp.b },
        PlaneTag::Normal => {
            let n = vector_product(&sp.a, &sp.b, f);
            PlaneForm::Normal { n, d: scalar_product(&sp.point, &n, f) }
        }
        PlaneTag::Canonical => PlaneForm::Canonical { r0: sp.point, a: sp.a, b: sp.b },
        PlaneTag::ThreePoint => PlaneForm::ThreePoint { p0: sp.point, p1: sp.point + sp.a, p2: sp.point + sp.b },
        PlaneTag::General => PlaneForm::General(general_of(&sp)),
        PlaneTag::Intercept => {
            let g = general_of(&sp);
            if g.a == 0.0 || g.b == 0.0 || g.c == 0.0 {
                return Err(GeomError::NotRepresentable("plane is parallel to a coordinate axis"));
            }
            if g.d.abs() <= tol::COLLINEAR * g.normal_lower().max_abs() {
                return Err(GeomError::NotRepresentable("plane passes through the origin"));
            }
            PlaneForm::Intercept { a: g.d / g.a, b: g.d / g.b, c: g.d / g.c }
        }
    })
}
