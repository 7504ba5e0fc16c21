//! Straight lines in space.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{first_significant, sample_parameters, snap_small, PlaneCoefficients};
use crate::frames::Frame;
use crate::linalg::{Coordinates3, Matrix3};
use crate::tensorkit::{frame_norm, scalar_product, vector_product};
use crate::{tol, GeomError, Result};

/// Which components of the direction vanish; each vanishing component `k`
/// turns into the equation `x_k = x0_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Line3Case {
    /// `(x − x0)/a1 = (y − y0)/a2 = (z − z0)/a3`.
    Full,
    FixedX,
    FixedY,
    FixedZ,
    FixedXY,
    FixedXZ,
    FixedYZ,
}

impl Line3Case {
    fn of(dir: &Coordinates3) -> Option<Self> {
        match (dir[0] == 0.0, dir[1] == 0.0, dir[2] == 0.0) {
            (false, false, false) => Some(Self::Full),
            (true, false, false) => Some(Self::FixedX),
            (false, true, false) => Some(Self::FixedY),
            (false, false, true) => Some(Self::FixedZ),
            (true, true, false) => Some(Self::FixedXY),
            (true, false, true) => Some(Self::FixedXZ),
            (false, true, true) => Some(Self::FixedYZ),
            (true, true, true) => None,
        }
    }

    fn fixed(self) -> [bool; 3] {
        match self {
            Self::Full => [false, false, false],
            Self::FixedX => [true, false, false],
            Self::FixedY => [false, true, false],
            Self::FixedZ => [false, false, true],
            Self::FixedXY => [true, true, false],
            Self::FixedXZ => [true, false, true],
            Self::FixedYZ => [false, true, true],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalLine3 {
    pub point: Coordinates3,
    pub direction: Coordinates3,
    pub case: Line3Case,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum SpaceLineForm {
    /// `r = r0 + a t`.
    Parametric { r0: Coordinates3, a: Coordinates3 },
    /// `[r, a] = b` with `(a, b) = 0`.
    Vectorial { a: Coordinates3, b: Coordinates3 },
    Canonical(CanonicalLine3),
    TwoPoint { p0: Coordinates3, p1: Coordinates3 },
    /// Intersection of two planes in General form.
    TwoPlanes { plane1: PlaneCoefficients, plane2: PlaneCoefficients },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceLineTag {
    Parametric,
    Vectorial,
    Canonical,
    TwoPoint,
    TwoPlanes,
}

impl SpaceLineTag {
    pub const ALL: [Self; 5] = [Self::Parametric, Self::Vectorial, Self::Canonical, Self::TwoPoint, Self::TwoPlanes];

    pub fn name(self) -> &'static str {
        match self {
            Self::Parametric => "parametric",
            Self::Vectorial => "vectorial",
            Self::Canonical => "canonical",
            Self::TwoPoint => "two_point",
            Self::TwoPlanes => "two_planes",
        }
    }
}

impl fmt::Display for SpaceLineTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpaceLineTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown space line form '{s}'"))
    }
}

#[derive(Debug, Clone, Copy)]
struct PointDir {
    point: Coordinates3,
    dir: Coordinates3,
}

fn finite(vs: &[&Coordinates3]) -> Result<()> {
    if vs.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(GeomError::NonFinite)
    }
}

fn nonzero_direction(a: &Coordinates3) -> Result<()> {
    if a.norm() <= tol::ZERO_LENGTH {
        Err(GeomError::InvalidForm("direction vector is zero"))
    } else {
        Ok(())
    }
}

/// `b` with its component along `a` removed under the frame metric.
fn perpendicular_part(b: &Coordinates3, a: &Coordinates3, f: &Frame) -> Coordinates3 {
    *b - *a * (scalar_product(b, a, f) / scalar_product(a, a, f))
}

impl SpaceLineForm {
    /// Vectorial form with `b` made exactly perpendicular to `a`.
    pub fn vectorial(a: Coordinates3, b: Coordinates3, f: &Frame) -> Result<Self> {
        finite(&[&a, &b])?;
        nonzero_direction(&a)?;
        Ok(Self::Vectorial { a, b: perpendicular_part(&b, &a, f) })
    }

    pub fn tag(&self) -> SpaceLineTag {
        match self {
            Self::Parametric { .. } => SpaceLineTag::Parametric,
            Self::Vectorial { .. } => SpaceLineTag::Vectorial,
            Self::Canonical(_) => SpaceLineTag::Canonical,
            Self::TwoPoint { .. } => SpaceLineTag::TwoPoint,
            Self::TwoPlanes { .. } => SpaceLineTag::TwoPlanes,
        }
    }

    fn point_dir(&self, f: &Frame) -> Result<PointDir> {
        match self {
            Self::Parametric { r0, a } => {
                finite(&[r0, a])?;
                nonzero_direction(a)?;
                Ok(PointDir { point: *r0, dir: *a })
            }
            Self::Vectorial { a, b } => {
                finite(&[a, b])?;
                nonzero_direction(a)?;
                let ab = scalar_product(a, b, f);
                if ab.abs() > tol::ON_CURVE * frame_norm(a, f) * frame_norm(b, f) {
                    return Err(GeomError::InvalidForm("b is not perpendicular to a"));
                }
                let b = perpendicular_part(b, a, f);
                let point = vector_product(a, &b, f) * (1.0 / scalar_product(a, a, f));
                Ok(PointDir { point, dir: *a })
            }
            Self::Canonical(c) => {
                finite(&[&c.point, &c.direction])?;
                nonzero_direction(&c.direction)?;
                let mut snapped = c.direction.0;
                snap_small(&mut snapped);
                if Line3Case::of(&Coordinates3(snapped)) != Some(c.case) {
                    return Err(GeomError::InvalidForm("canonical case does not match direction"));
                }
                Ok(PointDir { point: c.point, dir: c.direction })
            }
            Self::TwoPoint { p0, p1 } => {
                finite(&[p0, p1])?;
                let dir = *p1 - *p0;
                if dir.norm() <= tol::ZERO_LENGTH {
                    return Err(GeomError::InvalidForm("the two points coincide"));
                }
                Ok(PointDir { point: *p0, dir })
            }
            Self::TwoPlanes { plane1, plane2 } => {
                plane1.validate()?;
                plane2.validate()?;
                let (n1, n2) = (plane1.normal_lower(), plane2.normal_lower());
                let mut dir = n1.cross(&n2);
                if dir.norm() <= tol::COLLINEAR * n1.norm() * n2.norm() {
                    return Err(GeomError::ParallelPlanes);
                }
                snap_small(&mut dir.0);
                if let Some(i) = first_significant(&dir.0) {
                    if dir[i] < 0.0 {
                        dir = -dir;
                    }
                }
                let m = Matrix3::from_rows(n1, n2, dir);
                let inv = m.inverse().ok_or(GeomError::ParallelPlanes)?;
                let point = inv * Coordinates3::new(plane1.d, plane2.d, 0.0);
                Ok(PointDir { point, dir })
            }
        }
    }

    pub fn validate(&self, f: &Frame) -> Result<()> {
        self.point_dir(f).map(|_| ())
    }

    /// Deviation of `p` from the defining equations, in coordinate length units.
    pub fn residual(&self, p: &Coordinates3, f: &Frame) -> f64 {
        match self {
            Self::Parametric { r0, a } => (*p - *r0).cross(a).norm() / a.norm(),
            Self::Vectorial { a, b } => {
                frame_norm(&(vector_product(p, a, f) - *b), f) / frame_norm(a, f)
            }
            Self::Canonical(c) => {
                let q = *p - c.point;
                let fixed = c.case.fixed();
                let mut worst = (0..3).filter(|&k| fixed[k]).fold(0.0_f64, |m, k| m.max(q[k].abs()));
                let free: Vec<usize> = (0..3).filter(|&k| !fixed[k]).collect();
                // Consecutive ratios (q_i / a_i = q_j / a_j) cross-multiplied.
                for w in free.windows(2) {
                    let (i, j) = (w[0], w[1]);
                    let (ai, aj) = (c.direction[i], c.direction[j]);
                    worst = worst.max((q[i] * aj - q[j] * ai).abs() / ai.hypot(aj));
                }
                worst
            }
            Self::TwoPoint { p0, p1 } => {
                let dir = *p1 - *p0;
                (*p - *p0).cross(&dir).norm() / dir.norm()
            }
            Self::TwoPlanes { plane1, plane2 } => plane1.residual(p).max(plane2.residual(p)),
        }
    }

    /// `n` points `r0 + a t` spread along the line.
    pub fn sample_points(&self, f: &Frame, n: usize) -> Result<Vec<Coordinates3>> {
        let pd = self.point_dir(f)?;
        let unit = pd.dir * (1.0 / pd.dir.norm());
        Ok(sample_parameters(n).map(|t| pd.point + unit * t).collect())
    }
}

/// Two General-form planes through the line, normals perpendicular to it.
fn planes_through(pd: &PointDir) -> (PlaneCoefficients, PlaneCoefficients) {
    let d = pd.dir;
    let k = (0..3).min_by(|&i, &j| d[i].abs().total_cmp(&d[j].abs())).unwrap_or(0);
    let n1 = d.cross(&Coordinates3::unit(k));
    let n2 = d.cross(&n1);
    let plane = |n: Coordinates3| PlaneCoefficients { a: n[0], b: n[1], c: n[2], d: n.dot(&pd.point) }.normalized();
    (plane(n1), plane(n2))
}

/// Rewrites `src` in the form `to`.
pub fn convert_space_line(src: &SpaceLineForm, to: SpaceLineTag, f: &Frame) -> Result<SpaceLineForm> {
    let pd = src.point_dir(f)?;
    Ok(match to {
        SpaceLineTag::Parametric => SpaceLineForm::Parametric { r0: pd.point, a: pd.dir },
        SpaceLineTag::Vectorial => SpaceLineForm::vectorial(pd.dir, vector_product(&pd.point, &pd.dir, f), f)?,
        SpaceLineTag::Canonical => {
            let mut dir = pd.dir;
            snap_small(&mut dir.0);
            let case = Line3Case::of(&dir).ok_or(GeomError::NotRepresentable("direction vector is zero"))?;
            SpaceLineForm::Canonical(CanonicalLine3 { point: pd.point, direction: dir, case })
        }
        SpaceLineTag::TwoPoint => SpaceLineForm::TwoPoint { p0: pd.point, p1: pd.point + pd.dir },
        SpaceLineTag::TwoPlanes => {
            let (plane1, plane2) = planes_through(&pd);
            SpaceLineForm::TwoPlanes { plane1, plane2 }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64, z: f64) -> Coordinates3 {
        Coordinates3::new(x, y, z)
    }

    fn skew() -> Frame {
        Frame::from_vectors(c(1.0, 0.0, 0.0), c(1.0, 1.0, 0.0), c(0.2, -0.4, 1.0)).unwrap()
    }

    #[test]
    fn two_planes_to_parametric() {
        let src = SpaceLineForm::TwoPlanes {
            plane1: PlaneCoefficients { a: 0.0, b: 0.0, c: 1.0, d: 0.0 },
            plane2: PlaneCoefficients { a: 0.0, b: 1.0, c: 0.0, d: 0.0 },
        };
        let got = convert_space_line(&src, SpaceLineTag::Parametric, &Frame::standard()).unwrap();
        assert_eq!(got, SpaceLineForm::Parametric { r0: Coordinates3::ZERO, a: c(1.0, 0.0, 0.0) });
    }

    #[test]
    fn parametric_to_vectorial() {
        let f = Frame::standard();
        let src = SpaceLineForm::Parametric { r0: c(1.0, 0.0, 0.0), a: c(0.0, 0.0, 1.0) };
        let got = convert_space_line(&src, SpaceLineTag::Vectorial, &f).unwrap();
        assert_eq!(got, SpaceLineForm::Vectorial { a: c(0.0, 0.0, 1.0), b: c(0.0, -1.0, 0.0) });
    }

    #[test]
    fn two_point_to_canonical() {
        let src = SpaceLineForm::TwoPoint { p0: Coordinates3::ZERO, p1: c(1.0, 1.0, 1.0) };
        let got = convert_space_line(&src, SpaceLineTag::Canonical, &Frame::standard()).unwrap();
        assert_eq!(
            got,
            SpaceLineForm::Canonical(CanonicalLine3 {
                point: Coordinates3::ZERO,
                direction: c(1.0, 1.0, 1.0),
                case: Line3Case::Full
            })
        );
    }

    #[test]
    fn parallel_planes_rejected() {
        let src = SpaceLineForm::TwoPlanes {
            plane1: PlaneCoefficients { a: 1.0, b: 2.0, c: 3.0, d: 0.0 },
            plane2: PlaneCoefficients { a: -2.0, b: -4.0, c: -6.0, d: 5.0 },
        };
        assert_eq!(src.validate(&Frame::standard()), Err(GeomError::ParallelPlanes));
    }

    #[test]
    fn vectorial_must_be_perpendicular() {
        let f = Frame::standard();
        let bad = SpaceLineForm::Vectorial { a: c(0.0, 0.0, 1.0), b: c(0.0, 1.0, 1.0) };
        assert!(matches!(bad.validate(&f), Err(GeomError::InvalidForm(_))));
        if let SpaceLineForm::Vectorial { a, b } = SpaceLineForm::vectorial(c(1.0, 1.0, 0.0), c(1.0, 0.0, 2.0), &skew()).unwrap() {
            assert!(scalar_product(&a, &b, &skew()).abs() < 1e-15);
        }
    }

    #[test]
    fn all_seven_canonical_cases() {
        let f = skew();
        let dirs = [
            (c(1.0, 2.0, 3.0), Line3Case::Full),
            (c(0.0, 2.0, 3.0), Line3Case::FixedX),
            (c(1.0, 0.0, 3.0), Line3Case::FixedY),
            (c(1.0, 2.0, 0.0), Line3Case::FixedZ),
            (c(0.0, 0.0, 3.0), Line3Case::FixedXY),
            (c(0.0, 2.0, 0.0), Line3Case::FixedXZ),
            (c(1.0, 0.0, 0.0), Line3Case::FixedYZ),
        ];
        for (dir, case) in dirs {
            let src = SpaceLineForm::Parametric { r0: c(0.5, -1.0, 2.0), a: dir };
            let canon = convert_space_line(&src, SpaceLineTag::Canonical, &f).unwrap();
            match canon {
                SpaceLineForm::Canonical(cl) => assert_eq!(cl.case, case),
                other => panic!("unexpected {other:?}"),
            }
            for p in src.sample_points(&f, 20).unwrap() {
                assert!(canon.residual(&p, &f) < 1e-12);
            }
            // Off-line points are detected in every case.
            assert!(canon.residual(&(c(0.5, -1.0, 2.0) + c(0.3, 0.7, -0.2).cross(&dir)), &f) > 1e-3);
        }
    }

    #[test]
    fn all_pairs_preserve_point_set() {
        let f = skew();
        let sources = [
            SpaceLineForm::Parametric { r0: c(1.0, -1.0, 2.0), a: c(1.0, 2.0, 0.5) },
            SpaceLineForm::vectorial(c(0.0, 1.0, 1.0), c(2.0, 1.0, -1.0), &f).unwrap(),
            SpaceLineForm::TwoPoint { p0: c(0.0, 3.0, 0.0), p1: c(1.0, 1.0, 5.0) },
            SpaceLineForm::TwoPlanes {
                plane1: PlaneCoefficients { a: 1.0, b: 1.0, c: 0.0, d: 2.0 },
                plane2: PlaneCoefficients { a: 0.0, b: 1.0, c: -1.0, d: -1.0 },
            },
            SpaceLineForm::Canonical(CanonicalLine3 { point: c(1.0, 2.0, 3.0), direction: c(0.0, 0.0, -2.0), case: Line3Case::FixedXY }),
        ];
        for src in &sources {
            let pts = src.sample_points(&f, 20).unwrap();
            for to in SpaceLineTag::ALL {
                let dst = convert_space_line(src, to, &f).unwrap();
                for p in &pts {
                    let scale = 1.0_f64.max(p.norm());
                    assert!(dst.residual(p, &f) <= 1e-9 * scale, "{src:?} -> {dst:?}");
                }
            }
        }
    }

    #[test]
    fn serde_is_tagged() {
        let form = SpaceLineForm::TwoPoint { p0: Coordinates3::ZERO, p1: c(1.0, 1.0, 1.0) };
        let json = serde_json::to_string(&form).unwrap();
        assert_eq!(json, r#"{"form":"two_point","p0":[0.0,0.0,0.0],"p1":[1.0,1.0,1.0]}"#);
        assert_eq!(serde_json::from_str::<SpaceLineForm>(&json).unwrap(), form);
        assert_eq!("two-planes".parse::<SpaceLineTag>(), Ok(SpaceLineTag::TwoPlanes));
    }
}
