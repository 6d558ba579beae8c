//! Both sides of the Gaussian boundary inequalities, with signed gaps.

use serde::Serialize;

use crate::body2d::{boundary_geometry, gaussian_functionals_on, Body, BoundaryGrid, SupportBody};
use crate::error::{Error, Result};
use crate::gaussfn::{gaussian_profile, std_normal_inv, std_normal_isf, std_normal_pdf};
use crate::quad::golden_section;
use crate::variations::BoundaryFunction;

/// Terms of the sharp Gaussian Poincare-type inequality
/// `curvature - mean <= dirichlet`, plus the refined and the weaker `1/v` variants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoincareReport {
    pub measure: f64,
    pub boundary_mass: f64,
    /// `(log I)'(gamma(K))`.
    pub log_profile_slope: f64,
    /// `int f dgamma_boundary`.
    pub f_integral: f64,
    /// `int H_gamma f^2 dgamma_boundary`.
    pub term_curvature: f64,
    /// `(log I)'(gamma(K)) (int f)^2`.
    pub term_mean: f64,
    /// `int (df/ds)^2 / kappa dgamma_boundary`.
    pub term_dirichlet: f64,
    /// `dirichlet + mean - curvature`, nonnegative when the inequality holds.
    pub gap: f64,
    /// `int beta dgamma_boundary` with `beta = (log I)'(gamma) gamma_boundary - H_gamma`.
    pub beta_integral: f64,
    /// `(int f beta)^2 / int beta`; absent when `int beta <= 0`.
    pub refined_extra: Option<f64>,
    pub refined_gap: Option<f64>,
    /// Gap with coefficient `1/gamma(K)` in place of `(log I)'`.
    pub prev_gap: f64,
}

pub fn poincare_report(body: &Body, f: &BoundaryFunction) -> Result<PoincareReport> {
    match body {
        Body::HalfPlane(h) => {
            if !f.is_constant() {
                return Err(Error::Invalid(
                    "half-plane bodies only accept constant test functions".into(),
                ));
            }
            let c = f.c0;
            let (v, mass) = (h.measure(), h.boundary_mass());
            let slope = -h.t / mass;
            let f_integral = c * mass;
            let term_curvature = h.h_gamma() * c * c * mass;
            let term_mean = slope * f_integral * f_integral;
            Ok(PoincareReport {
                measure: v,
                boundary_mass: mass,
                log_profile_slope: slope,
                f_integral,
                term_curvature,
                term_mean,
                term_dirichlet: 0.0,
                gap: term_mean - term_curvature,
                // beta vanishes identically on a half-plane.
                beta_integral: 0.0,
                refined_extra: Some(0.0),
                refined_gap: Some(term_mean - term_curvature),
                prev_gap: f_integral * f_integral / v - term_curvature,
            })
        }
        Body::Fourier(b) => {
            let grid = boundary_geometry(b)?;
            poincare_report_on(&grid, f)
        }
    }
}

pub fn poincare_report_on(grid: &BoundaryGrid, f: &BoundaryFunction) -> Result<PoincareReport> {
    let (v, mass) = gaussian_functionals_on(grid);
    let (_, slope) = gaussian_profile(v)?;
    let s = f.sample(grid);
    let dt = grid.dtheta();
    let (mut fi, mut curv, mut dir, mut beta_i, mut fbeta) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for j in 0..grid.len() {
        let w = grid.weights[j] * grid.gauss_density[j];
        let fv = s.value[j];
        let beta = slope * mass - grid.h_gamma[j];
        fi += fv * w;
        curv += grid.h_gamma[j] * fv * fv * w;
        dir += s.d_theta[j] * s.d_theta[j] * grid.gauss_density[j] * dt;
        beta_i += beta * w;
        fbeta += fv * beta * w;
    }
    let term_mean = slope * fi * fi;
    let gap = dir + term_mean - curv;
    let refined_extra = (beta_i > 0.0).then(|| fbeta * fbeta / beta_i);
    Ok(PoincareReport {
        measure: v,
        boundary_mass: mass,
        log_profile_slope: slope,
        f_integral: fi,
        term_curvature: curv,
        term_mean,
        term_dirichlet: dir,
        gap,
        beta_integral: beta_i,
        refined_extra,
        refined_gap: refined_extra.map(|e| gap - e),
        prev_gap: dir + fi * fi / v - curv,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanCurvatureSlack {
    pub measure: f64,
    pub boundary_mass: f64,
    /// `int H_gamma dgamma_boundary`.
    pub mean_curvature_integral: f64,
    /// `(log I)'(gamma) gamma_boundary^2 - int H_gamma`.
    pub slack: f64,
    /// When `gamma(K) >= 1/2`: whether `int H_gamma <= 0` holds.
    pub nonpositive_when_large: Option<bool>,
}

pub fn mean_curvature_slack(body: &Body) -> Result<MeanCurvatureSlack> {
    let r = poincare_report(body, &BoundaryFunction::constant(1.0))?;
    Ok(MeanCurvatureSlack {
        measure: r.measure,
        boundary_mass: r.boundary_mass,
        mean_curvature_integral: r.term_curvature,
        slack: r.gap,
        nonpositive_when_large: (r.measure >= 0.5).then_some(r.term_curvature <= 0.0),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoSecondVariation {
    pub delta2_body: f64,
    pub delta2_halfplane: f64,
    /// Offset of the half-plane with the same Gaussian measure.
    pub halfplane_t: f64,
    pub ok: bool,
}

pub const ISO_SECOND_VARIATION_TOL: f64 = 1e-8;

/// Compare `delta2` of the body with that of the equal-measure half-plane.
pub fn iso_second_variation_compare(body: &Body) -> Result<IsoSecondVariation> {
    let m = mean_curvature_slack(body)?;
    if m.measure < 0.5 {
        return Err(Error::Hypothesis(format!(
            "iso-second-variation comparison needs gamma(K) >= 1/2, got {}",
            m.measure
        )));
    }
    let t = match body {
        Body::HalfPlane(h) => h.t,
        Body::Fourier(_) => std_normal_inv(m.measure)?,
    };
    let delta2_halfplane = -t * std_normal_pdf(t);
    let delta2_body = m.mean_curvature_integral;
    let ok = delta2_body <= delta2_halfplane + ISO_SECOND_VARIATION_TOL
        && delta2_body <= ISO_SECOND_VARIATION_TOL
        && delta2_halfplane <= ISO_SECOND_VARIATION_TOL;
    Ok(IsoSecondVariation {
        delta2_body,
        delta2_halfplane,
        halfplane_t: t,
        ok,
    })
}

/// Both sides of the dual inequality for strictly Gaussian mean-convex bodies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualTerms {
    /// `int kappa (df/ds)^2 dgamma_boundary`.
    pub lhs: f64,
    /// `int (L f + (f - C)/2)^2 / H_gamma dgamma_boundary`.
    pub rhs: f64,
    pub gap: f64,
}

struct DualData {
    weights: Vec<f64>,
    inv_h: Vec<f64>,
    generator: Vec<f64>,
    values: Vec<f64>,
    lhs: f64,
}

fn dual_data(body: &SupportBody, f: &BoundaryFunction) -> Result<DualData> {
    let g = boundary_geometry(body)?;
    let min_h = g.h_gamma.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min_h > 0.0) {
        return Err(Error::NotMeanConvex { min_h });
    }
    let s = f.sample(&g);
    let n = g.len();
    let mut d = DualData {
        weights: Vec::with_capacity(n),
        inv_h: Vec::with_capacity(n),
        generator: Vec::with_capacity(n),
        values: s.value.clone(),
        lhs: 0.0,
    };
    for j in 0..n {
        let kappa = g.kappa[j];
        let rho = g.radius[j];
        let kappa_d = -g.radius_d1[j] / (rho * rho);
        let f_s = s.d_theta[j] * kappa;
        let f_ss = kappa * (s.d2_theta[j] * kappa + s.d_theta[j] * kappa_d);
        // Ornstein-Uhlenbeck generator on the curve: f_ss - <x, tau> f_s, with <x, tau> = h'.
        let generator = f_ss - g.support_d1[j] * f_s;
        let w = g.weights[j] * g.gauss_density[j];
        d.lhs += kappa * f_s * f_s * w;
        d.weights.push(w);
        d.inv_h.push(1.0 / g.h_gamma[j]);
        d.generator.push(generator);
    }
    Ok(d)
}

impl DualData {
    fn rhs(&self, c: f64) -> f64 {
        (0..self.weights.len())
            .map(|j| {
                let a = self.generator[j] + 0.5 * (self.values[j] - c);
                a * a * self.inv_h[j] * self.weights[j]
            })
            .sum()
    }

    fn terms(&self, c: f64) -> DualTerms {
        let rhs = self.rhs(c);
        DualTerms {
            lhs: self.lhs,
            rhs,
            gap: rhs - self.lhs,
        }
    }
}

pub fn dual_gap(body: &SupportBody, f: &BoundaryFunction, c: f64) -> Result<DualTerms> {
    Ok(dual_data(body, f)?.terms(c))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualReport {
    /// `(C, gap)` on the supplied grid.
    pub grid: Vec<(f64, f64)>,
    pub c_star: f64,
    pub gap_min: f64,
    pub lhs: f64,
}

/// Dual gaps on a grid of constants plus the golden-section minimizer over `C`.
pub fn dual_gap_scan(body: &SupportBody, f: &BoundaryFunction, c_grid: &[f64]) -> Result<DualReport> {
    let d = dual_data(body, f)?;
    let grid: Vec<(f64, f64)> = c_grid.iter().map(|&c| (c, d.terms(c).gap)).collect();
    // The right side is a convex quadratic in C; bracket around its weighted-mean vertex.
    let (num, den) = (0..d.weights.len()).fold((0.0, 0.0), |(n, m), j| {
        let w = d.inv_h[j] * d.weights[j];
        (n + (2.0 * d.generator[j] + d.values[j]) * w, m + w)
    });
    let center = num / den;
    let span = 1.0 + center.abs();
    let (lo, hi) = (center - span, center + span);
    let (c_star, _) = golden_section(|c| d.rhs(c), lo, hi, 1e-10 * span);
    let best = d.terms(c_star);
    Ok(DualReport {
        grid,
        c_star,
        gap_min: best.gap,
        lhs: d.lhs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoLedoux {
    pub measure: f64,
    pub boundary_mass: f64,
    /// `gamma_boundary - I(gamma)`.
    pub iso_slack: f64,
    /// `(Phi^{-1})'(gamma) gamma_boundary`.
    pub f_prime0: f64,
    /// `(t, Phi^{-1}(gamma(tD)) / t)`.
    pub limit_estimates: Vec<(f64, f64)>,
}

pub const LEDOUX_RADII: [f64; 3] = [5.0, 8.0, 12.0];

/// `Phi^{-1}(gamma(tD)) / t` for the centered disc of radius `t`.
///
/// `gamma(tD) = 1 - exp(-t^2/2)`, so the quantile is taken from the upper tail.
pub fn disc_quantile_ratio(t: f64) -> Result<f64> {
    let q = (-0.5 * t * t).exp();
    Ok(std_normal_isf(q)? / t)
}

pub fn isoperimetric_and_ledoux(body: &Body) -> Result<IsoLedoux> {
    let (v, mass) = match body {
        Body::HalfPlane(h) => (h.measure(), h.boundary_mass()),
        Body::Fourier(b) => gaussian_functionals_on(&boundary_geometry(b)?),
    };
    let i = match body {
        // I(Phi(t)) = phi(t) exactly.
        Body::HalfPlane(h) => std_normal_pdf(h.t),
        Body::Fourier(_) => gaussian_profile(v)?.0,
    };
    let limit_estimates = LEDOUX_RADII
        .iter()
        .map(|&t| disc_quantile_ratio(t).map(|r| (t, r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(IsoLedoux {
        measure: v,
        boundary_mass: mass,
        iso_slack: mass - i,
        f_prime0: mass / i,
        limit_estimates,
    })
}
