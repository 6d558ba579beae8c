//! Concavity of profile-transformed Minkowski interpolations.

use serde::Serialize;

use crate::body2d::{combine, gaussian_measure, HalfPlane, SupportBody};
use crate::error::{Error, Result};
use crate::gaussfn::{
    gaussian_profile, std_normal_cdf, std_normal_inv, std_normal_isf, std_normal_pdf,
    ProfileTransform,
};
use crate::inequalities::poincare_report_on;
use crate::quad::integrate;
use crate::variations::BoundaryFunction;

pub const DEFAULT_PROFILE_POINTS: usize = 65;
/// Largest second difference still read as concave.
pub const CONCAVITY_TOL: f64 = 1e-8;
/// Smallest second difference read as a decisive convexity witness.
pub const VIOLATION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcavityProfile {
    pub t: Vec<f64>,
    pub values: Vec<f64>,
    /// `F[j-1] - 2 F[j] + F[j+1]` for the interior points.
    pub second_diff: Vec<f64>,
    pub max_second_diff: f64,
    /// Index into `second_diff`; the grid point is `argmax + 1`.
    pub argmax: usize,
}

impl ConcavityProfile {
    pub fn new(t: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if t.len() != values.len() || t.len() < 3 {
            return Err(Error::Invalid(format!(
                "profile needs at least 3 matching samples, got {} and {}",
                t.len(),
                values.len()
            )));
        }
        if t.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Invalid("profile grid must be strictly increasing".into()));
        }
        let second_diff: Vec<f64> = values.windows(3).map(|w| w[0] - 2.0 * w[1] + w[2]).collect();
        let (argmax, max_second_diff) = second_diff
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, d)| if d > best.1 { (i, d) } else { best });
        Ok(Self {
            t,
            values,
            second_diff,
            max_second_diff,
            argmax,
        })
    }

    pub fn sample(grid: Vec<f64>, f: impl Fn(f64) -> Result<f64>) -> Result<Self> {
        let values = grid.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
        Self::new(grid, values)
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn is_concave(&self, tol: f64) -> bool {
        self.max_second_diff <= tol
    }
}

/// `m` uniform points on `[a, b]`.
pub fn uniform_grid(a: f64, b: f64, m: usize) -> Vec<f64> {
    let h = (b - a) / (m - 1) as f64;
    (0..m).map(|j| if j + 1 == m { b } else { a + j as f64 * h }).collect()
}

fn check_points(m: usize) -> Result<()> {
    if m < 3 {
        return Err(Error::Invalid(format!("need at least 3 profile points, got {m}")));
    }
    Ok(())
}

fn interpolate(k: &SupportBody, l: &SupportBody, t: f64) -> Result<SupportBody> {
    if t == 0.0 {
        Ok(k.clone())
    } else if t == 1.0 {
        Ok(l.clone())
    } else {
        combine(1.0 - t, k, t, l)
    }
}

/// `F(t) = Phi^{-1}(gamma((1-t)K + tL))` on `m` uniform points of `[0, 1]`.
pub fn ehrhard_concavity(k: &SupportBody, l: &SupportBody, m: usize) -> Result<ConcavityProfile> {
    check_points(m)?;
    ConcavityProfile::sample(uniform_grid(0.0, 1.0, m), |t| {
        std_normal_inv(gaussian_measure(&interpolate(k, l, t)?)?)
    })
}

/// Same as [`ehrhard_concavity`] with `Phi^{-1}` replaced by the given transform.
pub fn transform_concavity(
    k: &SupportBody,
    l: &SupportBody,
    transform: &ProfileTransform,
    m: usize,
) -> Result<ConcavityProfile> {
    check_points(m)?;
    ConcavityProfile::sample(uniform_grid(0.0, 1.0, m), |t| {
        transform.eval(gaussian_measure(&interpolate(k, l, t)?)?)
    })
}

/// Profile for parallel half-planes `{<x, e> <= (1-t)a + tc}`.
pub fn halfplane_profile(a: f64, c: f64, angle: f64, m: usize) -> Result<ConcavityProfile> {
    check_points(m)?;
    ConcavityProfile::sample(uniform_grid(0.0, 1.0, m), |t| {
        std_normal_inv(HalfPlane::new((1.0 - t) * a + t * c, angle).measure())
    })
}

/// Second derivative of `F` at `t0`: a central second difference next to the
/// value `-gap / I(gamma(K_t0))` predicted from the Poincare report with
/// `f = h_L - h_K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureCheck {
    pub t0: f64,
    pub finite_difference: f64,
    pub predicted: f64,
    pub gap: f64,
}

pub fn concavity_from_poincare(
    k: &SupportBody,
    l: &SupportBody,
    t0: f64,
    step: f64,
) -> Result<CurvatureCheck> {
    if !(step > 0.0 && t0 - 2.0 * step >= 0.0 && t0 + 2.0 * step <= 1.0) {
        return Err(Error::StepRejected {
            step,
            max_step: 0.5 * t0.min(1.0 - t0),
        });
    }
    let f_at = |t: f64| -> Result<f64> { std_normal_inv(gaussian_measure(&interpolate(k, l, t)?)?) };
    let f0 = f_at(t0)?;
    let d = |h: f64| -> Result<f64> { Ok((f_at(t0 - h)? - 2.0 * f0 + f_at(t0 + h)?) / (h * h)) };
    let finite_difference = (4.0 * d(step)? - d(2.0 * step)?) / 3.0;

    let body = interpolate(k, l, t0)?;
    let grid = crate::body2d::boundary_geometry(&body)?;
    let r = poincare_report_on(&grid, &BoundaryFunction::difference(l, k))?;
    let (i, _) = gaussian_profile(r.measure)?;
    Ok(CurvatureCheck {
        t0,
        finite_difference,
        predicted: -r.gap / i,
        gap: r.gap,
    })
}

/// `Phi(x) / phi(x)` for `x <= 0`, finite far below the range where `Phi` underflows.
fn lower_mills(x: f64) -> f64 {
    if x > -30.0 {
        return std_normal_cdf(x) / std_normal_pdf(x);
    }
    // Continued fraction 1/(y + 1/(y + 2/(y + 3/(y + ...)))) with y = -x.
    let y = -x;
    let mut acc = y;
    for k in (1..=80).rev() {
        acc = y + k as f64 / acc;
    }
    1.0 / acc
}

/// `g(t) = Phi^{-1}(Phi(t) / Phi(b))` for `t < b`, the Ehrhard profile of the
/// Gaussian conditioned on `(-inf, b]`.
pub fn conditioned_profile(b: f64, t: f64) -> Result<f64> {
    if !(t < b) || !b.is_finite() || !t.is_finite() {
        return Err(Error::Domain { value: t });
    }
    let len = b - t;
    if b >= 0.0 {
        let pb = std_normal_cdf(b);
        let upper = integrate(std_normal_pdf, t, b, 1e-17 * len.min(1.0))?;
        let q = upper / pb;
        return if q <= 0.5 {
            std_normal_isf(q)
        } else {
            std_normal_inv(std_normal_cdf(t) / pb)
        };
    }
    // Rescale by phi(b): the integrand becomes exp(-|b| u - u^2/2) on [0, b - t].
    let mb = lower_mills(b);
    let scaled = integrate(|u: f64| (b * u - 0.5 * u * u).exp(), 0.0, len, 1e-17 * len.min(1.0))?;
    let q = scaled / mb;
    if q <= 0.5 {
        std_normal_isf(q)
    } else {
        let ratio = (0.5 * (b * b - t * t)).exp() * lower_mills(t) / mb;
        std_normal_inv(ratio)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub b: f64,
    /// Distance of the last grid point from `b`.
    pub epsilon: f64,
    /// `t -> g(t)` on `[b - 2, b - epsilon]`.
    pub profile: ConcavityProfile,
    pub violated: bool,
    pub end_value: f64,
    /// `g` passes 6 before the grid end.
    pub blows_up: bool,
    /// `s -> Phi^{-1}(mu(K + s[-1, 1]))` for `K = (-inf, b - 2]`.
    pub dilation_profile: ConcavityProfile,
    pub dilation_violated: bool,
}

/// Stand-off from `b` at which `1 - Phi(t)/Phi(b)` is about `1e-10`, so `g` exceeds 6.
pub fn counterexample_epsilon(b: f64) -> f64 {
    let mills = if b <= 0.0 {
        lower_mills(b)
    } else {
        std_normal_cdf(b) / std_normal_pdf(b)
    };
    (1e-10 * mills).clamp(1e-300, 0.5)
}

pub fn cd1_counterexample(b: f64, m: usize) -> Result<CounterexampleReport> {
    check_points(m)?;
    if !b.is_finite() {
        return Err(Error::Domain { value: b });
    }
    let epsilon = counterexample_epsilon(b);
    let a = b - 2.0;
    let profile = ConcavityProfile::sample(uniform_grid(a, b - epsilon, m), |t| conditioned_profile(b, t))?;
    let dilation_profile =
        ConcavityProfile::sample(uniform_grid(0.0, b - epsilon - a, m), |s| conditioned_profile(b, a + s))?;
    let end_value = *profile.values.last().expect("nonempty profile");
    Ok(CounterexampleReport {
        b,
        epsilon,
        violated: profile.max_second_diff > VIOLATION_TOL,
        end_value,
        blows_up: end_value > 6.0,
        dilation_violated: dilation_profile.max_second_diff > VIOLATION_TOL,
        profile,
        dilation_profile,
    })
}
