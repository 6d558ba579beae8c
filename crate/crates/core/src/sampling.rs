//! Seeded generators for the property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::body2d::{boundary_geometry, SupportBody};
use crate::neumann::Poly2;
use crate::quad::periodic_nodes;
use crate::variations::BoundaryFunction;

/// Independent stream `stream` of the generator seeded by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Rescale the `k >= 2` modes so that `h + h''` stays above `floor * a0`.
fn keep_convex(a0: f64, cos: &mut [f64], sin: &mut [f64], floor: f64) {
    let min_p = periodic_nodes(256)
        .iter()
        .map(|&t| {
            (2..=cos.len())
                .map(|k| {
                    let kf = k as f64;
                    (1.0 - kf * kf) * (cos[k - 1] * (kf * t).cos() + sin[k - 1] * (kf * t).sin())
                })
                .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min);
    let room = (1.0 - floor) * a0;
    if -min_p > room {
        let s = room / -min_p;
        for k in 1..cos.len() {
            cos[k] *= s;
            sin[k] *= s;
        }
    }
}

fn body_from<R: Rng + ?Sized>(rng: &mut R, a0: f64, shift: f64, shape: f64, degree: usize) -> SupportBody {
    let degree = degree.max(1);
    let mut cos = vec![0.0; degree];
    let mut sin = vec![0.0; degree];
    cos[0] = shift * normal(rng);
    sin[0] = shift * normal(rng);
    for k in 2..=degree {
        let s = shape * a0 / (k * k) as f64;
        cos[k - 1] = s * normal(rng);
        sin[k - 1] = s * normal(rng);
    }
    keep_convex(a0, &mut cos, &mut sin, 0.25);
    SupportBody::new(a0, cos, sin)
}

/// A smooth convex body of Fourier degree `degree`, possibly off-center.
pub fn random_body<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> SupportBody {
    let a0 = rng.random_range(0.6..1.8);
    body_from(rng, a0, 0.5, 0.3, degree)
}

/// A body with `min H_gamma > min_h`; small bodies near the origin.
pub fn random_mean_convex_body<R: Rng + ?Sized>(rng: &mut R, degree: usize, min_h: f64) -> SupportBody {
    loop {
        let a0 = rng.random_range(0.3..0.75);
        let b = body_from(rng, a0, 0.1, 0.1, degree);
        if let Ok(g) = boundary_geometry(&b) {
            if g.h_gamma.iter().all(|h| *h > min_h) {
                return b;
            }
        }
    }
}

/// `c0 ~ N(0, 1)`, `a_k, b_k ~ N(0, 1) / k^2`.
pub fn random_function<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> BoundaryFunction {
    let c0 = normal(rng);
    let mut cos = Vec::with_capacity(degree);
    let mut sin = Vec::with_capacity(degree);
    for k in 1..=degree {
        let s = 1.0 / (k * k) as f64;
        cos.push(s * normal(rng));
        sin.push(s * normal(rng));
    }
    BoundaryFunction::new(c0, cos, sin)
}

/// Dense polynomial of total degree `degree` with damped Gaussian coefficients.
pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, degree: u32) -> Poly2 {
    let mut terms = Vec::new();
    for total in 0..=degree {
        for y in 0..=total {
            terms.push((total - y, y, normal(rng) / (1 + total) as f64));
        }
    }
    Poly2::new(terms)
}
