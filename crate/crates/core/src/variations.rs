//! First and second variations of `t -> mu(K_t)` for `h_{K_t} = h_K + t f`.
//!
//! With `f` read as a function of the normal angle, the boundary integrals are
//!
//! ```text
//! delta1 = int f dmu_boundary
//! delta2 = int H_mu f^2 dmu_boundary - int (df/ds)^2 / kappa dmu_boundary
//! ```
//!
//! where `H_mu` is the Gaussian mean curvature `kappa - <x, nu>` or plain
//! `kappa` for Lebesgue measure. [`fd_variations`] differentiates the bulk
//! functional directly and serves as the independent check.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::body2d::{
    boundary_geometry, boundary_geometry_unchecked, gaussian_functionals_on, lebesgue_functionals_on,
    trig_jet, validate, BoundaryGrid, SupportBody, TrigJet, DEFAULT_MIN_RADIUS,
};
use crate::error::{Error, Result};

/// A test function on the boundary, written as a Fourier series in the normal angle.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryFunction {
    #[serde(default)]
    pub c0: f64,
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

/// Samples of a [`BoundaryFunction`] on a grid.
#[derive(Debug, Clone)]
pub struct BoundarySamples {
    pub value: Vec<f64>,
    /// `d/dtheta`.
    pub d_theta: Vec<f64>,
    /// `d^2/dtheta^2`.
    pub d2_theta: Vec<f64>,
    /// Arclength derivative `f' kappa`.
    pub d_s: Vec<f64>,
}

impl BoundaryFunction {
    pub fn new(c0: f64, cos: Vec<f64>, sin: Vec<f64>) -> Self {
        Self { c0, cos, sin }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(c, vec![], vec![])
    }

    pub fn degree(&self) -> usize {
        self.cos.len().max(self.sin.len())
    }

    pub fn is_constant(&self) -> bool {
        self.cos.iter().chain(&self.sin).all(|c| *c == 0.0)
    }

    pub fn jet(&self, theta: f64) -> TrigJet {
        trig_jet(self.c0, &self.cos, &self.sin, theta)
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Self {
            c0: alpha * self.c0,
            cos: self.cos.iter().map(|c| alpha * c).collect(),
            sin: self.sin.iter().map(|c| alpha * c).collect(),
        }
    }

    pub fn shifted(&self, z: f64) -> Self {
        Self {
            c0: self.c0 + z,
            ..self.clone()
        }
    }

    /// `h_L - h_K`, the direction of the segment from `K` to `L`.
    pub fn difference(l: &SupportBody, k: &SupportBody) -> Self {
        let d = l.degree().max(k.degree());
        let (mut cos, mut sin) = (Vec::with_capacity(d), Vec::with_capacity(d));
        for i in 1..=d {
            let (la, lb) = l.coeff(i);
            let (ka, kb) = k.coeff(i);
            cos.push(la - ka);
            sin.push(lb - kb);
        }
        Self::new(l.a0 - k.a0, cos, sin)
    }

    pub fn sample(&self, grid: &BoundaryGrid) -> BoundarySamples {
        let n = grid.len();
        let mut s = BoundarySamples {
            value: Vec::with_capacity(n),
            d_theta: Vec::with_capacity(n),
            d2_theta: Vec::with_capacity(n),
            d_s: Vec::with_capacity(n),
        };
        for j in 0..n {
            let jet = self.jet(grid.theta[j]);
            s.value.push(jet.value);
            s.d_theta.push(jet.d1);
            s.d2_theta.push(jet.d2);
            s.d_s.push(jet.d1 * grid.kappa[j]);
        }
        s
    }

    /// `h + t f` as a support body.
    pub fn perturb(&self, body: &SupportBody, t: f64) -> SupportBody {
        body.perturbed(t, self.c0, &self.cos, &self.sin)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    Gaussian,
    Lebesgue,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariationReport {
    pub delta0: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub mode: WeightMode,
    pub grid: usize,
}

/// Bulk functional of a sampled body in the given mode.
pub fn bulk(grid: &BoundaryGrid, mode: WeightMode) -> f64 {
    match mode {
        WeightMode::Gaussian => gaussian_functionals_on(grid).0,
        WeightMode::Lebesgue => lebesgue_functionals_on(grid).0,
    }
}

pub fn variations(body: &SupportBody, f: &BoundaryFunction, mode: WeightMode) -> Result<VariationReport> {
    let grid = boundary_geometry(body)?;
    Ok(variations_on(&grid, f, mode))
}

pub fn variations_on(grid: &BoundaryGrid, f: &BoundaryFunction, mode: WeightMode) -> VariationReport {
    let s = f.sample(grid);
    let dt = grid.dtheta();
    let (mut d1, mut curv, mut dir) = (0.0, 0.0, 0.0);
    for j in 0..grid.len() {
        let (density, h_mu) = match mode {
            WeightMode::Gaussian => (grid.gauss_density[j], grid.h_gamma[j]),
            WeightMode::Lebesgue => (1.0, grid.kappa[j]),
        };
        let w = grid.weights[j] * density;
        d1 += s.value[j] * w;
        curv += h_mu * s.value[j] * s.value[j] * w;
        // (df/ds)^2 / kappa ds = f'^2 d theta
        dir += s.d_theta[j] * s.d_theta[j] * density * dt;
    }
    VariationReport {
        delta0: bulk(grid, mode),
        delta1: d1,
        delta2: curv - dir,
        mode,
        grid: grid.len(),
    }
}

/// Largest `s` with `h + s f` and `h - s f` both keeping `h + h'' >= DEFAULT_MIN_RADIUS` on the grid.
pub fn max_admissible_step(body: &SupportBody, f: &BoundaryFunction) -> f64 {
    let grid = boundary_geometry_unchecked(body, body.grid);
    let mut best = f64::INFINITY;
    for j in 0..grid.len() {
        let jet = f.jet(grid.theta[j]);
        let df = (jet.value + jet.d2).abs();
        if df > 0.0 {
            best = best.min((grid.radius[j] - DEFAULT_MIN_RADIUS) / df);
        }
    }
    best.max(0.0)
}

pub const DEFAULT_FD_STEP: f64 = 1e-3;

/// Central differences of `t -> mu(K + t f)` with one Richardson level.
pub fn fd_variations(
    body: &SupportBody,
    f: &BoundaryFunction,
    mode: WeightMode,
    step: f64,
) -> Result<(f64, f64)> {
    for t in [-2.0 * step, 2.0 * step] {
        if !validate(&f.perturb(body, t)).accepted || !validate(body).accepted {
            return Err(Error::StepRejected {
                step,
                max_step: 0.5 * max_admissible_step(body, f),
            });
        }
    }
    let value = |t: f64| {
        let b = f.perturb(body, t);
        bulk(&boundary_geometry_unchecked(&b, b.grid), mode)
    };
    let g0 = value(0.0);
    let diffs = |h: f64| {
        let (gp, gm) = (value(h), value(-h));
        ((gp - gm) / (2.0 * h), (gp - 2.0 * g0 + gm) / (h * h))
    };
    let (a1, a2) = diffs(step);
    let (b1, b2) = diffs(0.5 * step);
    Ok(((4.0 * b1 - a1) / 3.0, (4.0 * b2 - a2) / 3.0))
}

/// `(1/2) L^2 / A - int kappa ds`, Minkowski's second inequality with `L` the unit disc.
pub fn minkowski_second_slack(body: &SupportBody) -> Result<f64> {
    let grid = boundary_geometry(body)?;
    let (area, perimeter) = lebesgue_functionals_on(&grid);
    let total_curvature = grid.integrate_ds(|j| grid.kappa[j]);
    Ok(0.5 * perimeter * perimeter / area - total_curvature)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteinerFit {
    pub area: f64,
    pub perimeter: f64,
    pub quadratic: f64,
    pub residual: f64,
}

pub const STEINER_NODES: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// Least-squares quadratic through `t -> area(K + tD)` on [`STEINER_NODES`].
pub fn steiner_fit(body: &SupportBody) -> Result<SteinerFit> {
    validate_or_err(body)?;
    let n = STEINER_NODES.len();
    let mut vander = DMatrix::zeros(n, 3);
    let mut rhs = DVector::zeros(n);
    for (i, &t) in STEINER_NODES.iter().enumerate() {
        let b = body.perturbed(t, 1.0, &[], &[]);
        let (area, _) = lebesgue_functionals_on(&boundary_geometry_unchecked(&b, b.grid));
        vander[(i, 0)] = 1.0;
        vander[(i, 1)] = t;
        vander[(i, 2)] = t * t;
        rhs[i] = area;
    }
    let coef = vander
        .clone()
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let fitted = &vander * &coef;
    let residual = (fitted - rhs).amax();
    Ok(SteinerFit {
        area: coef[0],
        perimeter: coef[1],
        quadratic: coef[2],
        residual,
    })
}

fn validate_or_err(body: &SupportBody) -> Result<()> {
    boundary_geometry(body).map(|_| ())
}

/// Second-variation parts kept separate so quadratic scaling can be checked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondVariationParts {
    pub curvature: f64,
    pub dirichlet: f64,
}

pub fn second_variation_parts(grid: &BoundaryGrid, f: &BoundaryFunction, mode: WeightMode) -> SecondVariationParts {
    let s = f.sample(grid);
    let dt = grid.dtheta();
    let mut out = SecondVariationParts {
        curvature: 0.0,
        dirichlet: 0.0,
    };
    for j in 0..grid.len() {
        let (density, h_mu) = match mode {
            WeightMode::Gaussian => (grid.gauss_density[j], grid.h_gamma[j]),
            WeightMode::Lebesgue => (1.0, grid.kappa[j]),
        };
        out.curvature += h_mu * s.value[j] * s.value[j] * grid.weights[j] * density;
        out.dirichlet += s.d_theta[j] * s.d_theta[j] * density * dt;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn disc_constant_gaussian() {
        let r = variations(&SupportBody::unit_disc(), &BoundaryFunction::constant(1.0), WeightMode::Gaussian)
            .unwrap();
        assert_abs_diff_eq!(r.delta1, (-0.5f64).exp(), epsilon = 1e-14);
        assert_abs_diff_eq!(r.delta2, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.delta0, 1.0 - (-0.5f64).exp(), epsilon = 1e-14);
    }

    #[test]
    fn disc_constant_lebesgue() {
        let r = variations(&SupportBody::unit_disc(), &BoundaryFunction::constant(1.0), WeightMode::Lebesgue)
            .unwrap();
        assert_abs_diff_eq!(r.delta1, 2.0 * PI, epsilon = 1e-13);
        assert_abs_diff_eq!(r.delta2, 2.0 * PI, epsilon = 1e-13);
        assert_abs_diff_eq!(r.delta0, PI, epsilon = 1e-13);
    }

    #[test]
    fn disc_translation_direction_gaussian() {
        // f = cos theta translates the disc; delta2 = -int sin^2 dgamma = -e^{-1/2}/2.
        let body = SupportBody::unit_disc();
        let f = BoundaryFunction::new(0.0, vec![1.0], vec![]);
        let r = variations(&body, &f, WeightMode::Gaussian).unwrap();
        assert_abs_diff_eq!(r.delta2, -(-0.5f64).exp() / 2.0, epsilon = 1e-13);
        let (d1, d2) = fd_variations(&body, &f, WeightMode::Gaussian, DEFAULT_FD_STEP).unwrap();
        assert_abs_diff_eq!(d1, r.delta1, epsilon = 1e-8);
        assert_abs_diff_eq!(d2, r.delta2, epsilon = 1e-6);
    }

    #[test]
    fn fd_disc_constant() {
        let (d1, d2) = fd_variations(
            &SupportBody::unit_disc(),
            &BoundaryFunction::constant(1.0),
            WeightMode::Gaussian,
            DEFAULT_FD_STEP,
        )
        .unwrap();
        assert_abs_diff_eq!(d1, (-0.5f64).exp(), epsilon = 1e-8);
        assert_abs_diff_eq!(d2, 0.0, epsilon = 1e-6);
    }

    #[test]
    fn fd_rejects_large_step() {
        let body = SupportBody::unit_disc();
        let f = BoundaryFunction::new(0.0, vec![0.0, 1.0], vec![]);
        // h + h'' = 1 - 3 t cos 2 theta, so the admissible step is about 1/3.
        match fd_variations(&body, &f, WeightMode::Lebesgue, 0.5) {
            Err(Error::StepRejected { max_step, .. }) => {
                assert!(max_step > 0.1 && max_step < 1.0 / 3.0, "max_step = {max_step}")
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn minkowski_disc_equality_and_ellipse_slack() {
        for r in [0.3, 1.0, 2.5] {
            let s = minkowski_second_slack(&SupportBody::disc(r, [0.1, 0.0])).unwrap();
            assert_abs_diff_eq!(s, 0.0, epsilon = 1e-10);
        }
        let ellipse = SupportBody::from_fn(|t| (4.0 * t.cos().powi(2) + t.sin().powi(2)).sqrt(), 24, 2048);
        assert!(minkowski_second_slack(&ellipse).unwrap() > 0.0);
    }

    #[test]
    fn steiner_disc() {
        let fit = steiner_fit(&SupportBody::unit_disc()).unwrap();
        assert_abs_diff_eq!(fit.area, PI, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.perimeter, 2.0 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.quadratic, PI, epsilon = 1e-12);
        assert!(fit.residual <= 1e-10);
    }

    #[test]
    fn steiner_square_like() {
        // A rounded square: |cos|^p + |sin|^p support function smoothed by truncation.
        let body = SupportBody::new(1.0, vec![0.0, 0.0, 0.0, -0.05], vec![]);
        let fit = steiner_fit(&body).unwrap();
        assert_abs_diff_eq!(fit.quadratic, PI, epsilon = 1e-8);
        assert!(fit.residual <= 1e-9);
    }

    #[test]
    fn delta2_is_quadratic_in_f() {
        let body = SupportBody::new(1.1, vec![0.1, 0.05], vec![-0.2, 0.02]);
        let f = BoundaryFunction::new(0.4, vec![0.3, -0.1], vec![0.2]);
        let g = boundary_geometry(&body).unwrap();
        for mode in [WeightMode::Gaussian, WeightMode::Lebesgue] {
            let one = variations_on(&g, &f, mode);
            let two = variations_on(&g, &f.scaled(2.0), mode);
            assert_abs_diff_eq!(two.delta1, 2.0 * one.delta1, epsilon = 1e-13);
            assert_abs_diff_eq!(two.delta2, 4.0 * one.delta2, epsilon = 1e-12);
            let p1 = second_variation_parts(&g, &f, mode);
            let p2 = second_variation_parts(&g, &f.scaled(2.0), mode);
            assert_abs_diff_eq!(p2.dirichlet, 4.0 * p1.dirichlet, epsilon = 1e-12);
        }
    }
}
