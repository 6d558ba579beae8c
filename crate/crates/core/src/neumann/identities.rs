use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussfn::{profile_log_derivative, std_normal_cdf, std_normal_pdf};
use crate::variations::BoundaryFunction;

use super::domain::WeightedDomain;
use super::poly::{Field2, Jet2};
use super::solve::{boundary_traces, solve_neumann, NeumannSolution};

/// Both sides of the integrated Bochner identity for a Neumann solution.
///
/// With `L u` constant, `int Gamma_2(u) dmu = int_boundary <Hess u nu, grad u> dmu_boundary`,
/// which on a curve equals `int (f_s u_s + u_nunu f - kappa u_s^2)`.
/// `rhs_stated` omits the curvature term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Gamma2Identity {
    pub lhs: f64,
    pub rhs: f64,
    pub rhs_stated: f64,
    /// `int kappa u_s^2 dmu_boundary`.
    pub curvature_term: f64,
    pub residual: f64,
    pub residual_stated: f64,
    /// Smallest interior value of `<Hess V grad u, grad u> + |Hess u|^2`.
    pub min_integrand: f64,
}

fn gamma2_point(v: &Jet2, u: &Jet2) -> f64 {
    u.hess_sq() + v.hess_form(u.grad, u.grad)
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(1.0)
}

pub fn gamma2_identity(domain: &WeightedDomain, sol: &NeumannSolution) -> Gamma2Identity {
    let mut lhs = 0.0;
    let mut min_integrand = f64::INFINITY;
    for (q, p) in domain.nodes.iter().enumerate() {
        let g = gamma2_point(&domain.potential_jets[q], &sol.jet(*p));
        lhs += g * domain.weights[q];
        min_integrand = min_integrand.min(g);
    }
    let t = &sol.traces;
    let rhs_stated = domain.integrate_boundary(|j| sol.flux_ds[j] * t.du[j] + t.u_nunu[j] * sol.flux[j]);
    let curvature_term = domain.integrate_boundary(|j| domain.boundary.kappa[j] * t.du[j] * t.du[j]);
    let rhs = rhs_stated - curvature_term;
    Gamma2Identity {
        lhs,
        rhs,
        rhs_stated,
        curvature_term,
        residual: relative(lhs, rhs),
        residual_stated: relative(lhs, rhs_stated),
        min_integrand,
    }
}

/// Terms of the generalized Reilly formula
/// `int (Lu)^2 = int |Hess u|^2 + int <Hess V grad u, grad u>
///   + int H_mu u_nu^2 + int kappa u_s^2 - 2 int (u_nu)_s u_s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReillyTerms {
    pub lhs: f64,
    pub hessian: f64,
    pub potential: f64,
    pub mean_curvature: f64,
    pub second_form: f64,
    pub cross: f64,
    pub residual: f64,
    /// Right side after the Cauchy-Schwarz step: `hessian + potential + mean_curvature - int (u_nu)_s^2 / kappa`.
    pub cs_bound: f64,
}

impl ReillyTerms {
    pub fn rhs(&self) -> f64 {
        self.hessian + self.potential + self.mean_curvature + self.second_form - 2.0 * self.cross
    }
}

pub fn reilly_residual(domain: &WeightedDomain, u: &dyn Field2) -> ReillyTerms {
    let (mut lhs, mut hessian, mut potential) = (0.0, 0.0, 0.0);
    for (q, p) in domain.nodes.iter().enumerate() {
        let jet = u.jet(*p);
        let w = domain.weights[q];
        let lu = domain.weighted_laplacian(q, &jet);
        lhs += lu * lu * w;
        hessian += jet.hess_sq() * w;
        potential += domain.potential_jets[q].hess_form(jet.grad, jet.grad) * w;
    }
    let t = boundary_traces(domain, u);
    let kappa = &domain.boundary.kappa;
    let mean_curvature = domain.integrate_boundary(|j| domain.h_mu[j] * t.u_nu[j] * t.u_nu[j]);
    let second_form = domain.integrate_boundary(|j| kappa[j] * t.du[j] * t.du[j]);
    let cross = domain.integrate_boundary(|j| t.du_nu[j] * t.du[j]);
    let inv_form = domain.integrate_boundary(|j| t.du_nu[j] * t.du_nu[j] / kappa[j]);
    let mut r = ReillyTerms {
        lhs,
        hessian,
        potential,
        mean_curvature,
        second_form,
        cross,
        residual: 0.0,
        cs_bound: hessian + potential + mean_curvature - inv_form,
    };
    r.residual = relative(lhs, r.rhs());
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CsSlack {
    pub min_slack: f64,
    pub argmin: usize,
}

/// Pointwise `kappa u_s^2 + (u_nu)_s^2 / kappa - 2 (u_nu)_s u_s` on the boundary grid.
pub fn cs_pointwise(domain: &WeightedDomain, u: &dyn Field2) -> CsSlack {
    let t = boundary_traces(domain, u);
    let mut out = CsSlack {
        min_slack: f64::INFINITY,
        argmin: 0,
    };
    for j in 0..domain.boundary.len() {
        let k = domain.boundary.kappa[j];
        let (g, q) = (t.du[j], t.du_nu[j]);
        let s = k * g * g + q * q / k - 2.0 * q * g;
        if s < out.min_slack {
            out = CsSlack { min_slack: s, argmin: j };
        }
    }
    out
}

/// Evidence for the Gaussian Neumann-to-Dirichlet question. Report only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct D2nProbe {
    pub measure: f64,
    pub f_integral: f64,
    /// `int (f_s u_s + u_nunu f) dgamma_boundary / (int f)^2`.
    pub ratio: f64,
    /// Same with the Gamma_2 integral as numerator.
    pub ratio_gamma2: f64,
    /// `1/v - (log I)'(v)`.
    pub f_conjectured: f64,
    pub margin: f64,
    pub margin_gamma2: f64,
    pub flux_residual: f64,
}

pub fn conjectured_coefficient(v: f64) -> Result<f64> {
    Ok(1.0 / v - profile_log_derivative(v)?)
}

pub fn d2n_probe(domain: &WeightedDomain, f: &BoundaryFunction, degree: usize) -> Result<D2nProbe> {
    if !domain.is_gaussian() {
        return Err(Error::Hypothesis("the probe is defined for the Gaussian potential".into()));
    }
    let sol = solve_neumann(domain, f, degree)?;
    let f_integral = domain.integrate_boundary(|j| sol.flux[j]);
    if f_integral.abs() < 1e-12 {
        return Err(Error::ZeroMean);
    }
    let id = gamma2_identity(domain, &sol);
    let f_conjectured = conjectured_coefficient(domain.measure)?;
    let sq = f_integral * f_integral;
    Ok(D2nProbe {
        measure: domain.measure,
        f_integral,
        ratio: id.rhs_stated / sq,
        ratio_gamma2: id.lhs / sq,
        f_conjectured,
        margin: id.rhs_stated / sq - f_conjectured,
        margin_gamma2: id.lhs / sq - f_conjectured,
        flux_residual: sol.flux_residual,
    })
}

/// The probe for the half-line `(-inf, t]` with `f = 1`, in one dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalflineProbe {
    pub t: f64,
    /// `u''(t) / phi(t)` from integrating the ODE.
    pub ratio: f64,
    /// `(phi(t)/Phi(t) + t) / phi(t)`.
    pub ratio_closed_form: f64,
    pub f_conjectured: f64,
    pub margin: f64,
}

const HALFLINE_SPAN: f64 = 14.0;
const HALFLINE_STEP: f64 = 1e-3;

/// Solve `u'' - x u' = c` on `(-inf, t]` with `u'(t) = 1` by RK4 on
/// `w = exp(-x^2/2) u'`, `w' = c exp(-x^2/2)`, starting from `w = 0` far out.
pub fn halfline_d2n(t: f64) -> Result<HalflineProbe> {
    if !t.is_finite() {
        return Err(Error::Domain { value: t });
    }
    let a = t.min(0.0) - HALFLINE_SPAN;
    let steps = ((t - a) / HALFLINE_STEP).ceil() as usize;
    let h = (t - a) / steps as f64;
    // Unit c first; the flux condition rescales it. Carry exp(-x^2/2 + t^2/2)
    // so nothing underflows when t is far in the tail.
    let rhs = |x: f64| (0.5 * (t * t - x * x)).exp();
    let mut w = 0.0;
    for k in 0..steps {
        let x = a + k as f64 * h;
        let (k1, k2, k4) = (rhs(x), rhs(x + 0.5 * h), rhs(x + h));
        w += h * (k1 + 4.0 * k2 + k4) / 6.0;
    }
    // u'(t) = c w, so c = 1 / w and u''(t) = c + t u'(t).
    let c = 1.0 / w;
    let phi = std_normal_pdf(t);
    let v = std_normal_cdf(t);
    let ratio = (c + t) / phi;
    let f_conjectured = conjectured_coefficient(v)?;
    Ok(HalflineProbe {
        t,
        ratio,
        ratio_closed_form: (phi / v + t) / phi,
        f_conjectured,
        margin: ratio - f_conjectured,
    })
}

/// The `1/N`-concave chain for Lebesgue measure in the plane (`N = 2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainCheck {
    /// `int (f_s u_s + u_nunu f) ds`.
    pub lhs: f64,
    /// `int |Hess u|^2 dx`.
    pub lhs_gamma2: f64,
    /// `(int f ds)^2 / (2 area)`.
    pub rhs: f64,
    pub slack: f64,
    pub slack_gamma2: f64,
}

pub fn concave_chain_check(domain: &WeightedDomain, f: &BoundaryFunction, degree: usize) -> Result<ChainCheck> {
    if !domain.is_lebesgue() {
        return Err(Error::Hypothesis("the chain check needs V = 0".into()));
    }
    let sol = solve_neumann(domain, f, degree)?;
    let id = gamma2_identity(domain, &sol);
    let total = domain.integrate_boundary(|j| sol.flux[j]);
    let rhs = 0.5 * total * total / domain.measure;
    Ok(ChainCheck {
        lhs: id.rhs_stated,
        lhs_gamma2: id.lhs,
        rhs,
        slack: id.rhs_stated - rhs,
        slack_gamma2: id.lhs - rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body2d::SupportBody;
    use crate::neumann::poly::Poly2;
    use crate::neumann::solve::DEFAULT_DEGREE;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn lebesgue_disc_linear_identity() {
        let d = WeightedDomain::lebesgue(&SupportBody::unit_disc()).unwrap();
        let s = solve_neumann(&d, &BoundaryFunction::new(0.0, vec![1.0], vec![]), DEFAULT_DEGREE).unwrap();
        let id = gamma2_identity(&d, &s);
        assert_abs_diff_eq!(id.lhs, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(id.rhs, 0.0, epsilon = 1e-10);
        // The statement without the curvature term gives int sin^2 = pi.
        assert_abs_diff_eq!(id.rhs_stated, PI, epsilon = 1e-10);
        assert!(id.residual <= 1e-10);
    }

    #[test]
    fn zero_flux_identity() {
        let d = WeightedDomain::gaussian(&SupportBody::unit_disc()).unwrap();
        let s = solve_neumann(&d, &BoundaryFunction::constant(0.0), 8).unwrap();
        let id = gamma2_identity(&d, &s);
        assert_eq!((id.lhs, id.rhs, id.residual), (0.0, 0.0, 0.0));
    }

    #[test]
    fn gaussian_disc_identity() {
        let d = WeightedDomain::gaussian(&SupportBody::unit_disc()).unwrap();
        let s = solve_neumann(&d, &BoundaryFunction::constant(1.0), DEFAULT_DEGREE).unwrap();
        let id = gamma2_identity(&d, &s);
        assert!(id.residual <= 1e-4, "{id:?}");
        assert!(id.min_integrand >= 0.0);
    }

    #[test]
    fn reilly_constant_and_linear() {
        let d = WeightedDomain::gaussian(&SupportBody::unit_disc()).unwrap();
        let r = reilly_residual(&d, &Poly2::new([(0, 0, 3.0)]));
        assert_eq!(r.lhs, 0.0);
        assert_eq!(r.rhs(), 0.0);

        let r = reilly_residual(&d, &Poly2::new([(1, 0, 1.0)]));
        assert!(r.residual <= 1e-8, "{r:?}");
        assert!(r.lhs > 0.0 && r.potential > 0.0);
        assert!(r.lhs >= r.cs_bound - 1e-7);
    }

    #[test]
    fn reilly_cubic_on_ellipse() {
        let b = SupportBody::new(1.0, vec![0.0, 0.2], vec![0.05]);
        let u = Poly2::new([(3, 0, 0.4), (1, 2, -0.7), (0, 1, 1.0), (2, 2, 0.3)]);
        for v in [Poly2::gaussian_potential(), Poly2::zero()] {
            let d = WeightedDomain::new(&b, v).unwrap();
            let r = reilly_residual(&d, &u);
            assert!(r.residual <= 1e-8, "{r:?}");
        }
    }

    #[test]
    fn cs_slack_examples() {
        let d = WeightedDomain::lebesgue(&SupportBody::unit_disc()).unwrap();
        // u = x1: u_s = -sin, (u_nu)_s = -sin, kappa = 1, so the slack vanishes.
        let c = cs_pointwise(&d, &Poly2::new([(1, 0, 1.0)]));
        assert_abs_diff_eq!(c.min_slack, 0.0, epsilon = 1e-14);
        let c = cs_pointwise(&d, &Poly2::new([(2, 1, 1.0), (0, 3, -0.5)]));
        assert!(c.min_slack >= -1e-12);
    }

    #[test]
    fn halfline_probe_is_tight() {
        for t in [-3.0, -1.0, 0.0, 0.5, 2.0] {
            let p = halfline_d2n(t).unwrap();
            assert_abs_diff_eq!(p.ratio, p.ratio_closed_form, epsilon = 1e-9 * p.ratio.abs().max(1.0));
            assert!(p.margin.abs() <= 1e-8, "t = {t}: {p:?}");
        }
    }

    #[test]
    fn chain_examples() {
        let d = WeightedDomain::lebesgue(&SupportBody::unit_disc()).unwrap();
        let r = concave_chain_check(&d, &BoundaryFunction::constant(1.0), DEFAULT_DEGREE).unwrap();
        // u = |x|^2/2 + const: |Hess u|^2 = 2, int = 2 pi; rhs = (2 pi)^2 / (2 pi) = 2 pi.
        assert_abs_diff_eq!(r.lhs_gamma2, 2.0 * PI, epsilon = 1e-8);
        assert_abs_diff_eq!(r.rhs, 2.0 * PI, epsilon = 1e-10);
        assert!(r.slack >= -1e-6);

        let r = concave_chain_check(&d, &BoundaryFunction::new(0.0, vec![1.0], vec![]), DEFAULT_DEGREE).unwrap();
        assert_abs_diff_eq!(r.rhs, 0.0, epsilon = 1e-20);
        assert!(r.lhs_gamma2 >= -1e-10);
    }

    #[test]
    fn d2n_requires_gaussian_and_mean() {
        let b = SupportBody::unit_disc();
        let l = WeightedDomain::lebesgue(&b).unwrap();
        assert!(d2n_probe(&l, &BoundaryFunction::constant(1.0), 8).is_err());
        let g = WeightedDomain::gaussian(&b).unwrap();
        assert!(matches!(
            d2n_probe(&g, &BoundaryFunction::new(0.0, vec![1.0], vec![]), 8),
            Err(Error::ZeroMean)
        ));
        let p = d2n_probe(&g, &BoundaryFunction::constant(1.0), DEFAULT_DEGREE).unwrap();
        assert!(p.ratio.is_finite() && p.f_conjectured > 0.0);
    }
}
