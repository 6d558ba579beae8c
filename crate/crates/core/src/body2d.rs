//! Planar convex bodies given by truncated Fourier support functions.
//!
//! A body is `h(theta) = a0 + sum_k (a_k cos k theta + b_k sin k theta)`. The
//! boundary is parametrized by the outer normal angle:
//! `x(theta) = h nu + h' tau` with `nu = (cos, sin)` and `tau = (-sin, cos)`,
//! radius of curvature `h + h''` and arclength element `(h + h'') d theta`.
//! Every boundary integral is the uniform-`theta` trapezoid rule, which is
//! spectrally accurate for these periodic integrands.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussfn::{std_normal_cdf, std_normal_pdf};
use crate::quad::periodic_nodes;

pub const DEFAULT_GRID: usize = 512;
pub const DEFAULT_MIN_RADIUS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportBody {
    pub a0: f64,
    /// `a_k` for `k = 1..=d`.
    pub cos: Vec<f64>,
    /// `b_k` for `k = 1..=d`.
    pub sin: Vec<f64>,
    pub grid: usize,
}

/// Values of a trigonometric polynomial and its first three derivatives.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrigJet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

/// Evaluate `c0 + sum_k (cos[k-1] cos k t + sin[k-1] sin k t)` with derivatives.
pub fn trig_jet(c0: f64, cos: &[f64], sin: &[f64], t: f64) -> TrigJet {
    let mut jet = TrigJet {
        value: c0,
        ..Default::default()
    };
    let n = cos.len().max(sin.len());
    for k in 1..=n {
        let a = cos.get(k - 1).copied().unwrap_or(0.0);
        let b = sin.get(k - 1).copied().unwrap_or(0.0);
        if a == 0.0 && b == 0.0 {
            continue;
        }
        let kf = k as f64;
        let (s, c) = (kf * t).sin_cos();
        let even = a * c + b * s;
        let odd = -a * s + b * c;
        jet.value += even;
        jet.d1 += kf * odd;
        jet.d2 -= kf * kf * even;
        jet.d3 -= kf * kf * kf * odd;
    }
    jet
}

impl SupportBody {
    pub fn new(a0: f64, cos: Vec<f64>, sin: Vec<f64>) -> Self {
        Self {
            a0,
            cos,
            sin,
            grid: DEFAULT_GRID,
        }
    }

    pub fn disc(r: f64, center: [f64; 2]) -> Self {
        Self::new(r, vec![center[0]], vec![center[1]])
    }

    pub fn unit_disc() -> Self {
        Self::disc(1.0, [0.0, 0.0])
    }

    pub fn with_grid(mut self, grid: usize) -> Self {
        self.grid = grid;
        self
    }

    /// Fourier truncation of a sampled support function, coefficients from a
    /// trapezoid DFT on `samples` nodes.
    pub fn from_fn<F: Fn(f64) -> f64>(h: F, degree: usize, samples: usize) -> Self {
        let nodes = periodic_nodes(samples);
        let vals: Vec<f64> = nodes.iter().map(|&t| h(t)).collect();
        let n = samples as f64;
        let a0 = vals.iter().sum::<f64>() / n;
        let mut cos = Vec::with_capacity(degree);
        let mut sin = Vec::with_capacity(degree);
        for k in 1..=degree {
            let kf = k as f64;
            let (mut a, mut b) = (0.0, 0.0);
            for (t, v) in nodes.iter().zip(&vals) {
                let (s, c) = (kf * t).sin_cos();
                a += v * c;
                b += v * s;
            }
            cos.push(2.0 * a / n);
            sin.push(2.0 * b / n);
        }
        Self::new(a0, cos, sin)
    }

    pub fn degree(&self) -> usize {
        self.cos.len().max(self.sin.len())
    }

    pub fn jet(&self, theta: f64) -> TrigJet {
        trig_jet(self.a0, &self.cos, &self.sin, theta)
    }

    pub fn support(&self, theta: f64) -> f64 {
        self.jet(theta).value
    }

    /// Boundary point with outer normal angle `theta`.
    pub fn point(&self, theta: f64) -> [f64; 2] {
        let j = self.jet(theta);
        let (s, c) = theta.sin_cos();
        [j.value * c - j.d1 * s, j.value * s + j.d1 * c]
    }

    /// Coefficient of `cos k theta` / `sin k theta` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> (f64, f64) {
        if k == 0 {
            return (self.a0, 0.0);
        }
        (
            self.cos.get(k - 1).copied().unwrap_or(0.0),
            self.sin.get(k - 1).copied().unwrap_or(0.0),
        )
    }

    /// The body rotated by `alpha` about the origin: `h(theta - alpha)`.
    pub fn rotated(&self, alpha: f64) -> Self {
        let d = self.degree();
        let mut cos = Vec::with_capacity(d);
        let mut sin = Vec::with_capacity(d);
        for k in 1..=d {
            let (a, b) = self.coeff(k);
            let (s, c) = (k as f64 * alpha).sin_cos();
            cos.push(a * c - b * s);
            sin.push(a * s + b * c);
        }
        Self {
            a0: self.a0,
            cos,
            sin,
            grid: self.grid,
        }
    }

    /// `h + t g` for a perturbation given in the same Fourier form.
    pub fn perturbed(&self, t: f64, c0: f64, cos: &[f64], sin: &[f64]) -> Self {
        let d = self.degree().max(cos.len()).max(sin.len());
        let mut out_cos = Vec::with_capacity(d);
        let mut out_sin = Vec::with_capacity(d);
        for k in 1..=d {
            let (a, b) = self.coeff(k);
            out_cos.push(a + t * cos.get(k - 1).copied().unwrap_or(0.0));
            out_sin.push(b + t * sin.get(k - 1).copied().unwrap_or(0.0));
        }
        Self {
            a0: self.a0 + t * c0,
            cos: out_cos,
            sin: out_sin,
            grid: self.grid,
        }
    }
}

/// Outcome of [`validate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Validation {
    pub min_radius: f64,
    pub argmin_theta: f64,
    /// Maximal `theta` intervals (grid resolution) where `h + h'' < min_radius`.
    pub bad_ranges: Vec<(f64, f64)>,
    pub accepted: bool,
}

pub fn validate(body: &SupportBody) -> Validation {
    validate_with(body, DEFAULT_MIN_RADIUS)
}

pub fn validate_with(body: &SupportBody, min_radius: f64) -> Validation {
    let nodes = periodic_nodes(body.grid.max(8));
    let radii: Vec<f64> = nodes
        .iter()
        .map(|&t| {
            let j = body.jet(t);
            j.value + j.d2
        })
        .collect();
    let (mut min_r, mut arg) = (f64::INFINITY, 0.0);
    for (t, r) in nodes.iter().zip(&radii) {
        if *r < min_r || r.is_nan() {
            min_r = *r;
            arg = *t;
        }
    }
    let mut bad_ranges = Vec::new();
    let mut start: Option<f64> = None;
    for (t, r) in nodes.iter().zip(&radii) {
        let bad = !(*r >= min_radius);
        match (bad, start) {
            (true, None) => start = Some(*t),
            (false, Some(s)) => {
                bad_ranges.push((s, *t));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        bad_ranges.push((s, TAU));
    }
    Validation {
        min_radius: min_r,
        argmin_theta: arg,
        accepted: bad_ranges.is_empty() && body.a0.is_finite(),
        bad_ranges,
    }
}

fn check(body: &SupportBody) -> Result<()> {
    let v = validate(body);
    if v.accepted {
        Ok(())
    } else {
        Err(Error::NotConvex {
            min_radius: v.min_radius,
            theta: v.argmin_theta,
        })
    }
}

/// Sampled boundary geometry on a uniform normal-angle grid.
#[derive(Debug, Clone)]
pub struct BoundaryGrid {
    pub theta: Vec<f64>,
    pub points: Vec<[f64; 2]>,
    pub normals: Vec<[f64; 2]>,
    /// Support values `h`.
    pub support: Vec<f64>,
    /// `h'`, the tangential coordinate `<x, tau>`.
    pub support_d1: Vec<f64>,
    /// Radius of curvature `h + h''`.
    pub radius: Vec<f64>,
    /// `d/dtheta (h + h'')`.
    pub radius_d1: Vec<f64>,
    pub kappa: Vec<f64>,
    /// Arclength weights `(h + h'') 2 pi / M`.
    pub weights: Vec<f64>,
    /// Gaussian density at each boundary point.
    pub gauss_density: Vec<f64>,
    /// `kappa - <x, nu>`.
    pub h_gamma: Vec<f64>,
}

impl BoundaryGrid {
    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn dtheta(&self) -> f64 {
        TAU / self.len() as f64
    }

    /// `int g ds`.
    pub fn integrate_ds(&self, g: impl Fn(usize) -> f64) -> f64 {
        (0..self.len()).map(|j| g(j) * self.weights[j]).sum()
    }

    /// `int g d gamma_boundary`.
    pub fn integrate_gauss(&self, g: impl Fn(usize) -> f64) -> f64 {
        (0..self.len())
            .map(|j| g(j) * self.weights[j] * self.gauss_density[j])
            .sum()
    }

    pub fn tangent(&self, j: usize) -> [f64; 2] {
        [-self.normals[j][1], self.normals[j][0]]
    }
}

/// Gaussian density in the plane, `exp(-|x|^2/2) / (2 pi)`.
pub fn gauss_density(x: [f64; 2]) -> f64 {
    (-(x[0] * x[0] + x[1] * x[1]) / 2.0).exp() / TAU
}

pub fn boundary_geometry(body: &SupportBody) -> Result<BoundaryGrid> {
    check(body)?;
    Ok(boundary_geometry_unchecked(body, body.grid))
}

/// Geometry on an arbitrary grid size, skipping validation.
pub fn boundary_geometry_unchecked(body: &SupportBody, m: usize) -> BoundaryGrid {
    let theta = periodic_nodes(m);
    let dt = TAU / m as f64;
    let mut g = BoundaryGrid {
        theta: theta.clone(),
        points: Vec::with_capacity(m),
        normals: Vec::with_capacity(m),
        support: Vec::with_capacity(m),
        support_d1: Vec::with_capacity(m),
        radius: Vec::with_capacity(m),
        radius_d1: Vec::with_capacity(m),
        kappa: Vec::with_capacity(m),
        weights: Vec::with_capacity(m),
        gauss_density: Vec::with_capacity(m),
        h_gamma: Vec::with_capacity(m),
    };
    for &t in &theta {
        let j = body.jet(t);
        let (s, c) = t.sin_cos();
        let x = [j.value * c - j.d1 * s, j.value * s + j.d1 * c];
        let rho = j.value + j.d2;
        let kappa = 1.0 / rho;
        g.points.push(x);
        g.normals.push([c, s]);
        g.support.push(j.value);
        g.support_d1.push(j.d1);
        g.radius.push(rho);
        g.radius_d1.push(j.d1 + j.d3);
        g.kappa.push(kappa);
        g.weights.push(rho * dt);
        g.gauss_density.push(gauss_density(x));
        g.h_gamma.push(kappa - j.value);
    }
    g
}

/// Half-plane `{x : <x, omega> <= t}` with `omega = (cos angle, sin angle)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub t: f64,
    pub angle: f64,
}

impl HalfPlane {
    pub fn new(t: f64, angle: f64) -> Self {
        Self { t, angle }
    }

    pub fn direction(&self) -> [f64; 2] {
        let (s, c) = self.angle.sin_cos();
        [c, s]
    }

    pub fn measure(&self) -> f64 {
        std_normal_cdf(self.t)
    }

    pub fn boundary_mass(&self) -> f64 {
        std_normal_pdf(self.t)
    }

    /// Constant Gaussian mean curvature of the boundary line.
    pub fn h_gamma(&self) -> f64 {
        -self.t
    }
}

/// Either kind of body the inequality checks accept.
#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Fourier(SupportBody),
    HalfPlane(HalfPlane),
}

impl From<SupportBody> for Body {
    fn from(b: SupportBody) -> Self {
        Body::Fourier(b)
    }
}

impl From<HalfPlane> for Body {
    fn from(h: HalfPlane) -> Self {
        Body::HalfPlane(h)
    }
}

/// `(gamma(K), gamma_boundary(boundary K))`.
pub fn gaussian_functionals(body: &Body) -> Result<(f64, f64)> {
    match body {
        Body::HalfPlane(h) => Ok((h.measure(), h.boundary_mass())),
        Body::Fourier(b) => {
            let g = boundary_geometry(b)?;
            Ok(gaussian_functionals_on(&g))
        }
    }
}

/// Gaussian functionals from an already sampled boundary.
///
/// The measure is the line integral `oint Phi(x1) phi(x2) dx2`, whose
/// divergence is the planar Gaussian density; `dx2 = (h + h'') cos theta d theta`.
pub fn gaussian_functionals_on(g: &BoundaryGrid) -> (f64, f64) {
    let dt = g.dtheta();
    let mut measure = 0.0;
    let mut mass = 0.0;
    for j in 0..g.len() {
        let x = g.points[j];
        measure += std_normal_cdf(x[0]) * std_normal_pdf(x[1]) * g.radius[j] * g.normals[j][0] * dt;
        mass += g.gauss_density[j] * g.weights[j];
    }
    (measure, mass)
}

/// `gamma(K)` for a support body.
pub fn gaussian_measure(body: &SupportBody) -> Result<f64> {
    gaussian_functionals(&Body::Fourier(body.clone())).map(|(m, _)| m)
}

/// `(area, perimeter)`.
pub fn lebesgue_functionals(body: &SupportBody) -> Result<(f64, f64)> {
    let g = boundary_geometry(body)?;
    Ok(lebesgue_functionals_on(&g))
}

pub fn lebesgue_functionals_on(g: &BoundaryGrid) -> (f64, f64) {
    let dt = g.dtheta();
    let mut area = 0.0;
    let mut perimeter = 0.0;
    for j in 0..g.len() {
        area += g.points[j][0] * g.radius[j] * g.normals[j][0] * dt;
        perimeter += g.weights[j];
    }
    (area, perimeter)
}

/// `a K + b L`, coefficientwise on support functions.
pub fn combine(a: f64, k: &SupportBody, b: f64, l: &SupportBody) -> Result<SupportBody> {
    if !(a >= 0.0 && b >= 0.0 && a + b > 0.0) {
        return Err(Error::Invalid(format!(
            "Minkowski combination needs a, b >= 0 with a + b > 0 (got a = {a}, b = {b})"
        )));
    }
    let d = k.degree().max(l.degree());
    let mut cos = Vec::with_capacity(d);
    let mut sin = Vec::with_capacity(d);
    for i in 1..=d {
        let (ka, kb) = k.coeff(i);
        let (la, lb) = l.coeff(i);
        cos.push(a * ka + b * la);
        sin.push(a * kb + b * lb);
    }
    Ok(SupportBody {
        a0: a * k.a0 + b * l.a0,
        cos,
        sin,
        grid: k.grid.max(l.grid),
    })
}

/// Closed forms for the centered disc of radius `r`: `(gamma, gamma_boundary)`.
pub fn centered_disc_gaussian(r: f64) -> (f64, f64) {
    let e = (-r * r / 2.0).exp();
    (1.0 - e, r * e)
}

/// JSON body description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodySpec {
    Fourier {
        a0: f64,
        #[serde(default)]
        cos: Vec<f64>,
        #[serde(default)]
        sin: Vec<f64>,
        #[serde(default = "default_grid")]
        grid: usize,
    },
    Halfplane {
        t: f64,
        #[serde(default)]
        angle: f64,
    },
    Disc {
        r: f64,
        #[serde(default)]
        center: [f64; 2],
        #[serde(default = "default_grid")]
        grid: usize,
    },
}

fn default_grid() -> usize {
    DEFAULT_GRID
}

impl BodySpec {
    pub fn into_body(self) -> Result<Body> {
        match self {
            BodySpec::Fourier { a0, cos, sin, grid } => {
                if grid < 8 {
                    return Err(Error::Invalid(format!("grid must be at least 8, got {grid}")));
                }
                Ok(Body::Fourier(SupportBody { a0, cos, sin, grid }))
            }
            BodySpec::Disc { r, center, grid } => {
                if !(r > 0.0) {
                    return Err(Error::Invalid(format!("disc radius must be positive, got {r}")));
                }
                Ok(Body::Fourier(SupportBody::disc(r, center).with_grid(grid)))
            }
            BodySpec::Halfplane { t, angle } => Ok(Body::HalfPlane(HalfPlane { t, angle })),
        }
    }
}

impl From<&Body> for BodySpec {
    fn from(b: &Body) -> Self {
        match b {
            Body::Fourier(s) => BodySpec::Fourier {
                a0: s.a0,
                cos: s.cos.clone(),
                sin: s.sin.clone(),
                grid: s.grid,
            },
            Body::HalfPlane(h) => BodySpec::Halfplane {
                t: h.t,
                angle: h.angle,
            },
        }
    }
}

/// Area of the Steiner parallel body `K + tD` in closed form: `A + L t + pi t^2`.
pub fn steiner_area(area: f64, perimeter: f64, t: f64) -> f64 {
    area + perimeter * t + PI * t * t
}
