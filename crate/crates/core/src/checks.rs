//! Seeded identity suites reporting worst residuals.
//!
//! The contraction suites compare brute-force sums of products of
//! Levi-Civita symbols against the Kronecker-delta formulas over every index
//! tuple; their residuals are integers and must be exactly zero. The other
//! suites sample random vectors in random frames and report residuals
//! relative to the product of the frame-metric lengths of the arguments.

use serde::Serialize;

use crate::frames::Frame;
use crate::linalg::Coordinates3;
use crate::maps::vector_product_via_rotation;
use crate::sample::{self, SampleRng};
use crate::tensorkit::{
    contraction, epsilon, frame_norm, jacobi_residual, mixed_product, mixed_product_pair, mixed_struct_constants,
    struct_constants_relation_check, triple_product_expand, vector_product, vector_struct_constants, Contraction,
};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub samples: usize,
    pub max_residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &'static str, samples: usize, max_residual: f64, threshold: f64) -> Self {
        let passed = max_residual <= threshold;
        Self { name, samples, max_residual, threshold, passed }
    }
}

const IDX: [usize; 3] = [1, 2, 3];

fn eps(i: usize, j: usize, k: usize) -> i32 {
    epsilon(i, j, k).expect("index in range")
}

fn formula(level: Contraction) -> i32 {
    contraction(level).expect("index in range")
}

/// Worst `|Σ ε ε − formula|` and the number of index tuples visited, per formula.
pub fn contraction_residuals() -> [(usize, i32); 4] {
    let mut first = (0, 0);
    for m in IDX {
        for n in IDX {
            for p in IDX {
                for i in IDX {
                    for j in IDX {
                        for k in IDX {
                            let lhs = eps(m, n, p) * eps(i, j, k);
                            let rhs = formula(Contraction::First { upper: [m, n, p], lower: [i, j, k] });
                            first = (first.0 + 1, first.1.max((lhs - rhs).abs()));
                        }
                    }
                }
            }
        }
    }
    let mut second = (0, 0);
    for m in IDX {
        for n in IDX {
            for i in IDX {
                for j in IDX {
                    let lhs: i32 = IDX.iter().map(|&k| eps(m, n, k) * eps(i, j, k)).sum();
                    let rhs = formula(Contraction::Second { upper: [m, n], lower: [i, j] });
                    second = (second.0 + 1, second.1.max((lhs - rhs).abs()));
                }
            }
        }
    }
    let mut third = (0, 0);
    for m in IDX {
        for i in IDX {
            let lhs: i32 =
                IDX.iter().flat_map(|&j| IDX.iter().map(move |&k| eps(m, j, k) * eps(i, j, k))).sum();
            let rhs = formula(Contraction::Third { upper: m, lower: i });
            third = (third.0 + 1, third.1.max((lhs - rhs).abs()));
        }
    }
    let lhs: i32 = IDX
        .iter()
        .flat_map(|&i| IDX.iter().flat_map(move |&j| IDX.iter().map(move |&k| eps(i, j, k) * eps(i, j, k))))
        .sum();
    let fourth = (1, (lhs - formula(Contraction::Fourth)).abs());
    [first, second, third, fourth]
}

fn triple(rng: &mut SampleRng) -> (Frame, [Coordinates3; 3]) {
    let f = sample::frame(rng, sample::MAX_CONDITION);
    let v = [sample::vector(rng, 1.0), sample::vector(rng, 1.0), sample::vector(rng, 1.0)];
    (f, v)
}

fn norms(v: &[Coordinates3], f: &Frame) -> f64 {
    v.iter().map(|x| frame_norm(x, f)).product()
}

/// Runs every suite with `samples` random draws from `seed`.
pub fn run(seed: u64, samples: usize) -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = contraction_residuals()
        .into_iter()
        .zip(["contraction_first", "contraction_second", "contraction_third", "contraction_fourth"])
        .map(|((n, r), name)| CheckResult::new(name, n, f64::from(r), 0.0))
        .collect();

    let mut rng = sample::rng(seed);
    let (mut expand, mut jacobi, mut rotation, mut pair, mut consts) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..samples {
        let (f, [a, b, c]) = triple(&mut rng);
        let scale = norms(&[a, b, c], &f);
        let direct = vector_product(&a, &vector_product(&b, &c, &f), &f);
        expand = expand.max(frame_norm(&(direct - triple_product_expand(&a, &b, &c, &f)), &f) / scale);
        jacobi = jacobi.max(jacobi_residual(&a, &b, &c, &f) / scale);

        let via = vector_product_via_rotation(&a, &b, &f).expect("nonzero axis");
        let vp = vector_product(&a, &b, &f);
        rotation = rotation.max(frame_norm(&(via - vp), &f) / norms(&[a, b], &f));

        let [x, y, z] = [sample::vector(&mut rng, 1.0), sample::vector(&mut rng, 1.0), sample::vector(&mut rng, 1.0)];
        let lhs = mixed_product(&a, &b, &c, &f) * mixed_product(&x, &y, &z, &f);
        let rhs = mixed_product_pair(&a, &b, &c, &x, &y, &z, &f);
        pair = pair.max((lhs - rhs).abs() / (scale * norms(&[x, y, z], &f)));

        let vc = vector_struct_constants(&f);
        let mc = mixed_struct_constants(&f);
        let size = vc.c.iter().flatten().flatten().chain(mc.c.iter().flatten().flatten()).fold(1.0_f64, |m, v| m.max(v.abs()));
        let metric = f.gram().max_abs().max(f.gram_inv().max_abs());
        consts = consts.max(struct_constants_relation_check(&f) / (size * metric));
    }
    out.push(CheckResult::new("triple_product_expansion", samples, expand, tol::IDENTITY));
    out.push(CheckResult::new("jacobi", samples, jacobi, tol::IDENTITY));
    out.push(CheckResult::new("rotation_decomposition", samples, rotation, tol::IDENTITY));
    out.push(CheckResult::new("mixed_product_pair", samples, pair, tol::IDENTITY));
    out.push(CheckResult::new("struct_constant_relations", samples, consts, tol::IDENTITY));
    out
}
