//! Products of vectors through their coordinates in a skew-angular basis.
//!
//! The vector and mixed products are computed with the closed forms
//! `±√det G · Σ aⁱ bʲ ε_ijq g^{qk}` and `±√det G · det[a; b; c]`, the sign
//! being the handedness of the frame. The structural constants can also be
//! obtained straight from their definition (products of basis vectors in
//! ambient components, expanded back into the frame) with
//! [`VectorStructConstants::from_definition`] and
//! [`MixedStructConstants::from_definition`]; those exist to cross-check the
//! closed forms.

use serde::{Deserialize, Serialize};

use crate::frames::{check_index, Frame};
use crate::linalg::{Coordinates3, Matrix3};
use crate::Result;

/// Levi-Civita symbol on 0-based indices.
pub(crate) const fn eps0(i: usize, j: usize, k: usize) -> i32 {
    if i == j || j == k || i == k {
        0
    } else if (i + 1) % 3 == j && (j + 1) % 3 == k {
        1
    } else {
        -1
    }
}

const fn delta0(i: usize, j: usize) -> i32 {
    if i == j {
        1
    } else {
        0
    }
}

/// `ε_ijk` with 1-based indices.
pub fn epsilon(i: usize, j: usize, k: usize) -> Result<i32> {
    check_index(i)?;
    check_index(j)?;
    check_index(k)?;
    Ok(eps0(i - 1, j - 1, k - 1))
}

/// `Σᵢⱼ aⁱ bʲ g_ij`.
pub fn scalar_product(a: &Coordinates3, b: &Coordinates3, f: &Frame) -> f64 {
    f.gram().bilinear(a, b)
}

/// Length of `a` under the frame metric.
pub fn frame_norm(a: &Coordinates3, f: &Frame) -> f64 {
    scalar_product(a, a, f).max(0.0).sqrt()
}

fn signed_root_det_gram(f: &Frame) -> f64 {
    f.orientation().sign() * f.gram().det().sqrt()
}

/// Coordinates of `[a, b]` in `f`.
pub fn vector_product(a: &Coordinates3, b: &Coordinates3, f: &Frame) -> Coordinates3 {
    // Σ aⁱ bʲ ε_ijq is the component-wise cross product; raise its index with g^{qk}.
    let lowered = a.cross(b);
    f.gram_inv().mul_vec(&lowered) * signed_root_det_gram(f)
}

/// `(a, b, c)` from coordinates in `f`.
pub fn mixed_product(a: &Coordinates3, b: &Coordinates3, c: &Coordinates3, f: &Frame) -> f64 {
    signed_root_det_gram(f) * Matrix3::from_rows(*a, *b, *c).det()
}

/// Structural constants `C^k_ij` of the vector product: `[e_i, e_j] = Σ C^k_ij e_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VectorStructConstants {
    /// 0-based storage `c[k][i][j]`.
    pub c: [[[f64; 3]; 3]; 3],
}

impl VectorStructConstants {
    /// `C^k_ij` with 1-based indices.
    pub fn entry(&self, k: usize, i: usize, j: usize) -> Result<f64> {
        check_index(k)?;
        check_index(i)?;
        check_index(j)?;
        Ok(self.c[k - 1][i - 1][j - 1])
    }

    /// Coordinates of `e_i × e_j` (ambient cross product) expanded in `f`.
    pub fn from_definition(f: &Frame) -> Self {
        let mut c = [[[0.0; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let prod = f.expand(&f.basis_vector(i).cross(&f.basis_vector(j)));
                for k in 0..3 {
                    c[k][i][j] = prod[k];
                }
            }
        }
        Self { c }
    }

    /// `[a, b] = Σ aⁱ bʲ C^k_ij e_k`.
    pub fn apply(&self, a: &Coordinates3, b: &Coordinates3) -> Coordinates3 {
        let mut out = [0.0; 3];
        for (k, o) in out.iter_mut().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    *o += a[i] * b[j] * self.c[k][i][j];
                }
            }
        }
        Coordinates3(out)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        flat_diff(&self.c, &other.c)
    }
}

/// Structural constants `c_ijk = (e_i, e_j, e_k)` of the mixed product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedStructConstants {
    /// 0-based storage `c[i][j][k]`.
    pub c: [[[f64; 3]; 3]; 3],
}

impl MixedStructConstants {
    pub fn entry(&self, i: usize, j: usize, k: usize) -> Result<f64> {
        check_index(i)?;
        check_index(j)?;
        check_index(k)?;
        Ok(self.c[i - 1][j - 1][k - 1])
    }

    /// Ambient triple products of basis vectors.
    pub fn from_definition(f: &Frame) -> Self {
        let mut c = [[[0.0; 3]; 3]; 3];
        for (i, ci) in c.iter_mut().enumerate() {
            for (j, cij) in ci.iter_mut().enumerate() {
                for (k, v) in cij.iter_mut().enumerate() {
                    *v = Matrix3::from_columns(f.basis_vector(i), f.basis_vector(j), f.basis_vector(k)).det();
                }
            }
        }
        Self { c }
    }

    /// `(a, b, c) = Σ aⁱ bʲ cᵏ c_ijk`.
    pub fn apply(&self, a: &Coordinates3, b: &Coordinates3, c: &Coordinates3) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    s += a[i] * b[j] * c[k] * self.c[i][j][k];
                }
            }
        }
        s
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        flat_diff(&self.c, &other.c)
    }
}

fn flat_diff(a: &[[[f64; 3]; 3]; 3], b: &[[[f64; 3]; 3]; 3]) -> f64 {
    a.iter()
        .flatten()
        .flatten()
        .zip(b.iter().flatten().flatten())
        .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
}

/// `C^k_ij = ±√det G · Σ_q ε_ijq g^{qk}`.
pub fn vector_struct_constants(f: &Frame) -> VectorStructConstants {
    let root = signed_root_det_gram(f);
    let ginv = f.gram_inv();
    let mut c = [[[0.0; 3]; 3]; 3];
    for (k, ck) in c.iter_mut().enumerate() {
        for (i, cki) in ck.iter_mut().enumerate() {
            for (j, v) in cki.iter_mut().enumerate() {
                let s: f64 = (0..3).map(|q| f64::from(eps0(i, j, q)) * ginv.get(q, k)).sum();
                *v = root * s;
            }
        }
    }
    VectorStructConstants { c }
}

/// `c_ijk = (e1, e2, e3) · ε_ijk`.
pub fn mixed_struct_constants(f: &Frame) -> MixedStructConstants {
    let vol = f.oriented_volume();
    let mut c = [[[0.0; 3]; 3]; 3];
    for (i, ci) in c.iter_mut().enumerate() {
        for (j, cij) in ci.iter_mut().enumerate() {
            for (k, v) in cij.iter_mut().enumerate() {
                *v = vol * f64::from(eps0(i, j, k));
            }
        }
    }
    MixedStructConstants { c }
}

/// Largest deviation in the two relations `c_ijk = Σ_q C^q_ij g_qk` and
/// `C^k_ij = Σ_q c_ijq g^{qk}` between the closed-form constants of `f`.
pub fn struct_constants_relation_check(f: &Frame) -> f64 {
    let vc = vector_struct_constants(f);
    let mc = mixed_struct_constants(f);
    let g = f.gram();
    let ginv = f.gram_inv();
    let mut worst = 0.0_f64;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let lowered: f64 = (0..3).map(|q| vc.c[q][i][j] * g.get(q, k)).sum();
                worst = worst.max((mc.c[i][j][k] - lowered).abs());
                let raised: f64 = (0..3).map(|q| mc.c[i][j][q] * ginv.get(q, k)).sum();
                worst = worst.max((vc.c[k][i][j] - raised).abs());
            }
        }
    }
    worst
}

/// Index arguments of the four contraction formulas, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contraction {
    /// `ε^{mnp} ε_{ijk}` as the 3×3 determinant of Kronecker deltas.
    First { upper: [usize; 3], lower: [usize; 3] },
    /// `Σ_k ε^{mnk} ε_{ijk} = δ^m_i δ^n_j − δ^m_j δ^n_i`.
    Second { upper: [usize; 2], lower: [usize; 2] },
    /// `Σ_jk ε^{mjk} ε_{ijk} = 2 δ^m_i`.
    Third { upper: usize, lower: usize },
    /// `Σ_ijk ε^{ijk} ε_{ijk} = 6`.
    Fourth,
}

/// Right-hand side of the selected contraction formula.
pub fn contraction(level: Contraction) -> Result<i32> {
    match level {
        Contraction::First { upper, lower } => {
            upper.iter().chain(lower.iter()).try_for_each(|&i| check_index(i))?;
            let d = |r: usize, c: usize| delta0(upper[r] - 1, lower[c] - 1);
            Ok(d(0, 0) * (d(1, 1) * d(2, 2) - d(1, 2) * d(2, 1))
                - d(0, 1) * (d(1, 0) * d(2, 2) - d(1, 2) * d(2, 0))
                + d(0, 2) * (d(1, 0) * d(2, 1) - d(1, 1) * d(2, 0)))
        }
        Contraction::Second { upper, lower } => {
            upper.iter().chain(lower.iter()).try_for_each(|&i| check_index(i))?;
            let d = |r: usize, c: usize| delta0(upper[r] - 1, lower[c] - 1);
            Ok(d(0, 0) * d(1, 1) - d(0, 1) * d(1, 0))
        }
        Contraction::Third { upper, lower } => {
            check_index(upper)?;
            check_index(lower)?;
            Ok(2 * delta0(upper - 1, lower - 1))
        }
        Contraction::Fourth => Ok(6),
    }
}

/// `b (a, c) − c (a, b)`, the expansion of `[a, [b, c]]`.
pub fn triple_product_expand(a: &Coordinates3, b: &Coordinates3, c: &Coordinates3, f: &Frame) -> Coordinates3 {
    *b * scalar_product(a, c, f) - *c * scalar_product(a, b, f)
}

/// Frame-metric length of `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]`.
pub fn jacobi_residual(a: &Coordinates3, b: &Coordinates3, c: &Coordinates3, f: &Frame) -> f64 {
    let vp = |x: &Coordinates3, y: &Coordinates3| vector_product(x, y, f);
    let sum = vp(a, &vp(b, c)) + vp(b, &vp(c, a)) + vp(c, &vp(a, b));
    frame_norm(&sum, f)
}

/// `(a, b, c)(x, y, z)` as the determinant of pairwise scalar products.
#[allow(clippy::too_many_arguments)]
pub fn mixed_product_pair(
    a: &Coordinates3,
    b: &Coordinates3,
    c: &Coordinates3,
    x: &Coordinates3,
    y: &Coordinates3,
    z: &Coordinates3,
    f: &Frame,
) -> f64 {
    let row = |w: &Coordinates3| {
        Coordinates3([
            scalar_product(a, w, f),
            scalar_product(b, w, f),
            scalar_product(c, w, f),
        ])
    };
    Matrix3::from_rows(row(x), row(y), row(z)).det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GeomError;

    fn c(x: f64, y: f64, z: f64) -> Coordinates3 {
        Coordinates3::new(x, y, z)
    }

    fn skew() -> Frame {
        Frame::from_vectors(c(1.0, 0.0, 0.0), c(1.0, 1.0, 0.0), c(0.0, 0.0, 1.0)).unwrap()
    }

    fn left_onb() -> Frame {
        Frame::from_vectors(c(0.0, 1.0, 0.0), c(1.0, 0.0, 0.0), c(0.0, 0.0, 1.0)).unwrap()
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(1, 2, 3), Ok(1));
        assert_eq!(epsilon(2, 3, 1), Ok(1));
        assert_eq!(epsilon(1, 3, 2), Ok(-1));
        assert_eq!(epsilon(3, 2, 1), Ok(-1));
        assert_eq!(epsilon(1, 1, 2), Ok(0));
        assert_eq!(epsilon(0, 1, 2), Err(GeomError::IndexOutOfRange { index: 0 }));
        assert_eq!(epsilon(1, 2, 4), Err(GeomError::IndexOutOfRange { index: 4 }));
    }

    #[test]
    fn epsilon_is_antisymmetric() {
        for i in 1..=3 {
            for j in 1..=3 {
                for k in 1..=3 {
                    let e = epsilon(i, j, k).unwrap();
                    assert_eq!(epsilon(j, i, k).unwrap(), -e);
                    assert_eq!(epsilon(i, k, j).unwrap(), -e);
                    assert_eq!(epsilon(k, j, i).unwrap(), -e);
                }
            }
        }
    }

    #[test]
    fn scalar_product_examples() {
        let onb = Frame::standard();
        assert_eq!(scalar_product(&c(1.0, 2.0, 3.0), &c(4.0, 5.0, 6.0), &onb), 32.0);
        assert_eq!(scalar_product(&c(1.0, 2.0, 3.0), &Coordinates3::ZERO, &skew()), 0.0);
        assert_eq!(scalar_product(&c(1.0, 0.0, 0.0), &c(0.0, 1.0, 0.0), &skew()), 1.0);
    }

    #[test]
    fn vector_product_examples() {
        let onb = Frame::standard();
        assert_eq!(vector_product(&c(1.0, 0.0, 0.0), &c(0.0, 1.0, 0.0), &onb), c(0.0, 0.0, 1.0));
        let a = c(0.3, -1.2, 2.0);
        assert_eq!(vector_product(&a, &a, &skew()), Coordinates3::ZERO);
        let left = left_onb();
        assert_eq!(vector_product(&c(1.0, 0.0, 0.0), &c(0.0, 1.0, 0.0), &left), c(0.0, 0.0, -1.0));
    }

    #[test]
    fn vector_product_is_perpendicular() {
        let f = skew();
        let a = c(1.0, 2.0, -1.0);
        let b = c(0.5, -3.0, 2.0);
        let p = vector_product(&a, &b, &f);
        assert!(scalar_product(&p, &a, &f).abs() < 1e-12);
        assert!(scalar_product(&p, &b, &f).abs() < 1e-12);
    }

    #[test]
    fn mixed_product_examples() {
        let onb = Frame::standard();
        let e = |i| Coordinates3::unit(i);
        assert_eq!(mixed_product(&e(0), &e(1), &e(2), &onb), 1.0);
        let f = skew();
        assert_eq!(mixed_product(&c(1.0, 2.0, 3.0), &c(0.0, 1.0, 1.0), &c(0.0, 1.0, 1.0), &f), 0.0);
        let scaled = Frame::from_vectors(c(2.0, 0.0, 0.0), c(1.0, 1.0, 0.0), c(0.0, 0.5, 1.0)).unwrap();
        let v = mixed_product(&e(0), &e(1), &e(2), &scaled);
        assert!((v - scaled.oriented_volume()).abs() < 1e-15);
        assert!((v - 2.0).abs() < 1e-15);
    }

    #[test]
    fn onb_struct_constants_are_epsilon() {
        let right = vector_struct_constants(&Frame::standard());
        let left = vector_struct_constants(&left_onb());
        for k in 1..=3 {
            for i in 1..=3 {
                for j in 1..=3 {
                    let e = f64::from(epsilon(i, j, k).unwrap());
                    assert_eq!(right.entry(k, i, j).unwrap(), e);
                    assert_eq!(left.entry(k, i, j).unwrap(), -e);
                }
            }
        }
        assert_eq!(right.entry(3, 1, 2), Ok(1.0));
        assert_eq!(right.entry(2, 1, 3), Ok(-1.0));
        assert_eq!(right.entry(1, 1, 1), Ok(0.0));
    }

    #[test]
    fn mixed_struct_constants_examples() {
        assert_eq!(mixed_struct_constants(&Frame::standard()).entry(1, 2, 3), Ok(1.0));
        let f = Frame::from_vectors(c(2.0, 0.0, 0.0), c(0.0, 1.0, 0.0), c(0.0, 0.0, 1.0)).unwrap();
        let m = mixed_struct_constants(&f);
        assert_eq!(m.entry(2, 1, 3), Ok(-2.0));
        for i in 1..=3 {
            for k in 1..=3 {
                assert_eq!(m.entry(i, i, k), Ok(0.0));
            }
        }
    }

    #[test]
    fn closed_forms_match_definitions() {
        let f = Frame::from_vectors(c(1.0, 0.2, -0.3), c(0.4, 1.1, 0.0), c(-0.2, 0.5, 0.9)).unwrap();
        assert!(vector_struct_constants(&f).max_abs_diff(&VectorStructConstants::from_definition(&f)) < 1e-13);
        assert!(mixed_struct_constants(&f).max_abs_diff(&MixedStructConstants::from_definition(&f)) < 1e-13);
    }

    #[test]
    fn relation_check_examples() {
        assert_eq!(struct_constants_relation_check(&Frame::standard()), 0.0);
        assert!(struct_constants_relation_check(&skew()) <= 1e-12);
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(contraction(Contraction::Fourth), Ok(6));
        assert_eq!(contraction(Contraction::Third { upper: 1, lower: 1 }), Ok(2));
        assert_eq!(contraction(Contraction::Third { upper: 1, lower: 2 }), Ok(0));
        assert_eq!(
            contraction(Contraction::Second { upper: [1, 2], lower: [1, 2] }),
            Ok(1)
        );
        assert_eq!(
            contraction(Contraction::First { upper: [1, 2, 3], lower: [2, 1, 3] }),
            Ok(-1)
        );
        assert_eq!(
            contraction(Contraction::Third { upper: 4, lower: 1 }),
            Err(GeomError::IndexOutOfRange { index: 4 })
        );
    }

    #[test]
    fn triple_expansion_example() {
        let onb = Frame::standard();
        let e1 = Coordinates3::unit(0);
        let e2 = Coordinates3::unit(1);
        let expanded = triple_product_expand(&e1, &e1, &e2, &onb);
        assert_eq!(expanded, -e2);
        assert_eq!(vector_product(&e1, &vector_product(&e1, &e2, &onb), &onb), -e2);
        let a = c(1.0, 2.0, 3.0);
        assert_eq!(triple_product_expand(&a, &a, &a, &skew()), Coordinates3::ZERO);
    }

    #[test]
    fn jacobi_examples() {
        let onb = Frame::standard();
        let e = |i| Coordinates3::unit(i);
        assert_eq!(jacobi_residual(&e(0), &e(1), &e(2), &onb), 0.0);
        let a = c(1.0, -2.0, 0.5);
        let b = c(0.3, 0.3, 4.0);
        assert!(jacobi_residual(&a, &a, &b, &skew()) < 1e-12);
    }

    #[test]
    fn mixed_pair_examples() {
        let f = Frame::from_vectors(c(1.0, 0.2, -0.3), c(0.4, 1.1, 0.0), c(-0.2, 0.5, 0.9)).unwrap();
        let e = |i| Coordinates3::unit(i);
        let v = mixed_product_pair(&e(0), &e(1), &e(2), &e(0), &e(1), &e(2), &f);
        assert!((v - f.gram().det()).abs() < 1e-14);
        let a = c(1.0, 2.0, 3.0);
        let x = c(0.1, 0.0, 1.0);
        assert_eq!(mixed_product_pair(&a, &a, &x, &x, &a, &e(2), &f).abs(), 0.0_f64.abs());
    }
}
