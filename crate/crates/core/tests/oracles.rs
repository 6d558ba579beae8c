//! Geometric functionals against independent computations that never touch the
//! support-function machinery.

use std::f64::consts::PI;

use gaussbm::body2d::{gaussian_functionals, lebesgue_functionals, SupportBody};
use gaussbm::sampling::{random_body, stream_rng};

/// Periodic trapezoid rule on `[0, 2 pi)`.
fn trapezoid(n: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = 2.0 * PI / n as f64;
    (0..n).map(|i| f(i as f64 * h)).sum::<f64>() * h
}

/// Modified Bessel function `I_0` by its power series.
fn bessel_i0(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let (mut term, mut sum) = (1.0, 1.0);
    for k in 1..60 {
        term *= q / (k * k) as f64;
        sum += term;
    }
    sum
}

/// Composite Simpson on `[a, b]` with `n` (even) panels.
fn simpson(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

struct Ellipse {
    a: f64,
    b: f64,
    c: [f64; 2],
}

impl Ellipse {
    fn support(&self, t: f64) -> f64 {
        (self.a * self.a * t.cos().powi(2) + self.b * self.b * t.sin().powi(2)).sqrt()
            + self.c[0] * t.cos()
            + self.c[1] * t.sin()
    }

    /// Distance from the origin to the boundary in direction `phi`.
    fn radial(&self, phi: f64) -> f64 {
        let (u, v) = (phi.cos() / self.a, phi.sin() / self.b);
        let (p, q) = (-self.c[0] / self.a, -self.c[1] / self.b);
        // |r (u, v) + (p, q)|^2 = 1.
        let (qa, qb, qc) = (u * u + v * v, 2.0 * (u * p + v * q), p * p + q * q - 1.0);
        (-qb + (qb * qb - 4.0 * qa * qc).sqrt()) / (2.0 * qa)
    }

    fn point(&self, s: f64) -> [f64; 2] {
        [self.c[0] + self.a * s.cos(), self.c[1] + self.b * s.sin()]
    }

    fn speed(&self, s: f64) -> f64 {
        (self.a * self.a * s.sin().powi(2) + self.b * self.b * s.cos().powi(2)).sqrt()
    }
}

#[test]
fn ellipse_against_polar_rays() {
    for e in [
        Ellipse { a: 1.3, b: 0.7, c: [0.0, 0.0] },
        Ellipse { a: 0.9, b: 1.4, c: [0.25, -0.3] },
    ] {
        let body = SupportBody::from_fn(|t| e.support(t), 64, 1024);
        let (v, m) = gaussian_functionals(&body.clone().into()).unwrap();
        let (area, perimeter) = lebesgue_functionals(&body).unwrap();

        let n = 4096;
        let v_ray = trapezoid(n, |phi| 1.0 - (-0.5 * e.radial(phi).powi(2)).exp()) / (2.0 * PI);
        let m_arc = trapezoid(n, |s| {
            let x = e.point(s);
            (-0.5 * (x[0] * x[0] + x[1] * x[1])).exp() * e.speed(s)
        }) / (2.0 * PI);
        let perimeter_arc = trapezoid(n, |s| e.speed(s));

        assert!((v - v_ray).abs() < 1e-10, "measure {v} vs {v_ray}");
        assert!((m - m_arc).abs() < 1e-10, "boundary mass {m} vs {m_arc}");
        assert!((area - PI * e.a * e.b).abs() < 1e-10, "area {area}");
        assert!((perimeter - perimeter_arc).abs() < 1e-10, "perimeter {perimeter} vs {perimeter_arc}");
    }
}

#[test]
fn off_center_disc_against_bessel_series() {
    for (r, c) in [(0.6, [0.3, 0.0]), (1.5, [-0.4, 0.9]), (2.0, [1.0, 1.0])] {
        let d = f64::hypot(c[0], c[1]);
        let v_exact = simpson(0.0, r, 4000, |p| p * (-0.5 * (p * p + d * d)).exp() * bessel_i0(p * d));
        let m_exact = r * (-0.5 * (r * r + d * d)).exp() * bessel_i0(r * d);
        let (v, m) = gaussian_functionals(&SupportBody::disc(r, c).into()).unwrap();
        assert!((v - v_exact).abs() < 1e-11, "r = {r}: {v} vs {v_exact}");
        assert!((m - m_exact).abs() < 1e-11, "r = {r}: {m} vs {m_exact}");
    }
}

#[test]
fn area_against_shoelace_with_richardson() {
    let mut rng = stream_rng(11, 0);
    for _ in 0..10 {
        let body = random_body(&mut rng, 5);
        let shoelace = |n: usize| {
            let pts: Vec<[f64; 2]> = (0..n).map(|i| body.point(2.0 * PI * i as f64 / n as f64)).collect();
            0.5 * (0..n)
                .map(|i| {
                    let (p, q) = (pts[i], pts[(i + 1) % n]);
                    p[0] * q[1] - q[0] * p[1]
                })
                .sum::<f64>()
        };
        let extrapolated = (4.0 * shoelace(8192) - shoelace(4096)) / 3.0;
        let (area, _) = lebesgue_functionals(&body).unwrap();
        assert!((area - extrapolated).abs() < 1e-9 * area, "{area} vs {extrapolated}");
    }
}
