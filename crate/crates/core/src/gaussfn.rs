//! Scalar Gaussian special functions.
//!
//! `erfc` follows W. J. Cody's rational Chebyshev approximations, which keep
//! full relative accuracy deep into the lower tail of the normal CDF. The
//! quantile starts from Acklam's rational approximation and is polished with
//! Halley steps against that CDF.

// Coefficients are kept as published.
#![allow(clippy::excessive_precision)]

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad;

/// 1 / sqrt(2 pi)
pub const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

const ERF_A: [f64; 5] = [
    3.161_123_743_870_565_6e0,
    1.138_641_541_510_501_6e2,
    3.774_852_376_853_020_2e2,
    3.209_377_589_138_469_5e3,
    1.857_777_061_846_031_5e-1,
];
const ERF_B: [f64; 4] = [
    2.360_129_095_234_412e1,
    2.440_246_379_344_441_7e2,
    1.282_616_526_077_372_3e3,
    2.844_236_833_439_170_6e3,
];
const ERFC_C: [f64; 9] = [
    5.641_884_969_886_701e-1,
    8.883_149_794_388_376,
    6.611_919_063_714_163e1,
    2.986_351_381_974_001e2,
    8.819_522_212_417_691e2,
    1.712_047_612_634_070_6e3,
    2.051_078_377_826_071_5e3,
    1.230_339_354_797_997_2e3,
    2.153_115_354_744_038_5e-8,
];
const ERFC_D: [f64; 8] = [
    1.574_492_611_070_983_5e1,
    1.176_939_508_913_125e2,
    5.371_811_018_620_099e2,
    1.621_389_574_566_690_2e3,
    3.290_799_235_733_459_7e3,
    4.362_619_090_143_247e3,
    3.439_367_674_143_721_6e3,
    1.230_339_354_803_749_4e3,
];
const ERFC_P: [f64; 6] = [
    3.053_266_349_612_323_4e-1,
    3.603_448_999_498_044_4e-1,
    1.257_817_261_112_292_5e-1,
    1.608_378_514_874_227_7e-2,
    6.587_491_615_298_378e-4,
    1.631_538_713_730_209_8e-2,
];
const ERFC_Q: [f64; 5] = [
    2.568_520_192_289_822_4,
    1.872_952_849_923_467_3,
    5.279_051_029_514_284e-1,
    6.051_834_131_244_132e-2,
    2.335_204_976_268_691_9e-3,
];

/// exp(-y^2) with the square split so the exponent carries no rounding.
fn exp_neg_sq(y: f64) -> f64 {
    let ysq = (y * 16.0).trunc() / 16.0;
    let del = (y - ysq) * (y + ysq);
    (-ysq * ysq).exp() * (-del).exp()
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let y = x.abs();
    let r = if y <= 0.468_75 {
        return 1.0 - erf_small(x);
    } else if y <= 4.0 {
        let mut num = ERFC_C[8] * y;
        let mut den = y;
        for i in 0..7 {
            num = (num + ERFC_C[i]) * y;
            den = (den + ERFC_D[i]) * y;
        }
        exp_neg_sq(y) * (num + ERFC_C[7]) / (den + ERFC_D[7])
    } else if y >= 26.55 {
        0.0
    } else {
        let ysq = 1.0 / (y * y);
        let mut num = ERFC_P[5] * ysq;
        let mut den = ysq;
        for i in 0..4 {
            num = (num + ERFC_P[i]) * ysq;
            den = (den + ERFC_Q[i]) * ysq;
        }
        let r = ysq * (num + ERFC_P[4]) / (den + ERFC_Q[4]);
        exp_neg_sq(y) * (FRAC_1_SQRT_PI - r) / y
    };
    if x < 0.0 {
        2.0 - r
    } else {
        r
    }
}

fn erf_small(x: f64) -> f64 {
    let ysq = x * x;
    let mut num = ERF_A[4] * ysq;
    let mut den = ysq;
    for i in 0..3 {
        num = (num + ERF_A[i]) * ysq;
        den = (den + ERF_B[i]) * ysq;
    }
    x * (num + ERF_A[3]) / (den + ERF_B[3])
}

/// Standard normal density.
pub fn std_normal_pdf(t: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * t * t).exp()
}

/// Standard normal CDF, relatively accurate in the lower tail.
pub fn std_normal_cdf(t: f64) -> f64 {
    0.5 * erfc(-t * FRAC_1_SQRT_2)
}

/// Upper tail `1 - Phi(t)` without cancellation.
pub fn std_normal_sf(t: f64) -> f64 {
    0.5 * erfc(t * FRAC_1_SQRT_2)
}

/// `(phi(t), Phi(t))`.
pub fn std_normal(t: f64) -> (f64, f64) {
    (std_normal_pdf(t), std_normal_cdf(t))
}

const ACKLAM_A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const ACKLAM_B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const ACKLAM_C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const ACKLAM_D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];

fn acklam_lower(q: f64) -> f64 {
    // q in (0, 1/2]
    if q < 0.024_25 {
        let r = (-2.0 * q.ln()).sqrt();
        (((((ACKLAM_C[0] * r + ACKLAM_C[1]) * r + ACKLAM_C[2]) * r + ACKLAM_C[3]) * r
            + ACKLAM_C[4])
            * r
            + ACKLAM_C[5])
            / ((((ACKLAM_D[0] * r + ACKLAM_D[1]) * r + ACKLAM_D[2]) * r + ACKLAM_D[3]) * r + 1.0)
    } else {
        let s = q - 0.5;
        let r = s * s;
        (((((ACKLAM_A[0] * r + ACKLAM_A[1]) * r + ACKLAM_A[2]) * r + ACKLAM_A[3]) * r
            + ACKLAM_A[4])
            * r
            + ACKLAM_A[5])
            * s
            / (((((ACKLAM_B[0] * r + ACKLAM_B[1]) * r + ACKLAM_B[2]) * r + ACKLAM_B[3]) * r
                + ACKLAM_B[4])
                * r
                + 1.0)
    }
}

/// Quantile for a lower-tail probability `q` in (0, 1/2].
fn lower_quantile(q: f64) -> f64 {
    let mut x = acklam_lower(q);
    for _ in 0..2 {
        // Halley step on Phi(x) - q, with the residual scaled by 1/phi(x).
        let e = std_normal_cdf(x) - q;
        let u = e * (2.0 * PI).sqrt() * (0.5 * x * x).exp();
        x -= u / (1.0 + 0.5 * x * u);
    }
    x
}

/// `Phi^{-1}(v)` for `v` in (0, 1).
pub fn std_normal_inv(v: f64) -> Result<f64> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::Domain { value: v });
    }
    if v == 0.5 {
        return Ok(0.0);
    }
    if v < 0.5 {
        Ok(lower_quantile(v))
    } else {
        // 1 - v is exact for v >= 1/2.
        Ok(-lower_quantile(1.0 - v))
    }
}

/// Quantile of an upper-tail probability: the `x` with `1 - Phi(x) = q`.
pub fn std_normal_isf(q: f64) -> Result<f64> {
    std_normal_inv(q).map(|x| -x)
}

/// Gaussian isoperimetric profile `I(v) = phi(Phi^{-1}(v))` and its log-derivative
/// `(log I)'(v) = -Phi^{-1}(v) / I(v)`.
pub fn gaussian_profile(v: f64) -> Result<(f64, f64)> {
    let z = std_normal_inv(v)?;
    let i = std_normal_pdf(z);
    Ok((i, -z / i))
}

/// `(log I)'(v)` alone.
pub fn profile_log_derivative(v: f64) -> Result<f64> {
    gaussian_profile(v).map(|(_, d)| d)
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Default absolute tolerance for the nested integrals of [`ProfileTransform`].
pub const TRANSFORM_TOL: f64 = 1e-10;

/// The profile transform `v -> int_{1/2}^v exp(-int_{1/2}^t G(s) ds) dt`.
///
/// The inner antiderivative is cached at knots `1/2 + k/64`, so each inner
/// evaluation only integrates over one short panel.
#[derive(Clone)]
pub struct ProfileTransform {
    g: ScalarFn,
    tol: f64,
    knots: Vec<f64>,
    antiderivative: Vec<Option<f64>>,
}

impl fmt::Debug for ProfileTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProfileTransform")
            .field("tol", &self.tol)
            .field("knots", &self.knots.len())
            .finish()
    }
}

const KNOT_SPACING: f64 = 1.0 / 64.0;

impl ProfileTransform {
    pub fn new<G>(g: G) -> Self
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::with_tolerance(g, TRANSFORM_TOL)
    }

    pub fn with_tolerance<G>(g: G, tol: f64) -> Self
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let g: ScalarFn = Arc::new(g);
        let knots: Vec<f64> = (-31..=31).map(|k| 0.5 + k as f64 * KNOT_SPACING).collect();
        let center = knots.len() / 2;
        let mut antiderivative = vec![None; knots.len()];
        antiderivative[center] = Some(0.0);
        // Accumulate outward from 1/2; a divergent panel poisons everything beyond it.
        for dir in [1isize, -1] {
            let mut acc = Some(0.0);
            let mut i = center as isize;
            loop {
                let j = i + dir;
                if j < 0 || j as usize >= knots.len() {
                    break;
                }
                acc = acc.and_then(|a| {
                    let (lo, hi) = (knots[i as usize], knots[j as usize]);
                    quad::integrate(|s| g(s), lo, hi, tol * 1e-2).ok().map(|v| a + v)
                });
                antiderivative[j as usize] = acc;
                i = j;
            }
        }
        Self {
            g,
            tol,
            knots,
            antiderivative,
        }
    }

    /// The transform for the Gaussian measure, `G = (log I)'`. Equals `phi(0) Phi^{-1}`.
    pub fn gaussian() -> Self {
        Self::new(|v| profile_log_derivative(v).unwrap_or(f64::NAN))
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn g(&self, v: f64) -> f64 {
        (self.g)(v)
    }

    /// `int_{1/2}^t G(s) ds`.
    pub fn inner(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::Domain { value: t });
        }
        let k = ((t - 0.5) / KNOT_SPACING).round() as isize + (self.knots.len() / 2) as isize;
        let k = k.clamp(0, self.knots.len() as isize - 1) as usize;
        let base = self.antiderivative[k].ok_or(Error::Divergent {
            a: 0.5,
            b: self.knots[k],
            estimate: f64::NAN,
            error: f64::INFINITY,
        })?;
        let g = &self.g;
        Ok(base + quad::integrate(|s| g(s), self.knots[k], t, self.tol * 1e-2)?)
    }

    /// `Phi_mu^{-1}(v)`.
    pub fn eval(&self, v: f64) -> Result<f64> {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::Domain { value: v });
        }
        if v == 0.5 {
            return Ok(0.0);
        }
        let failed = std::cell::Cell::new(None);
        let integrand = |t: f64| match self.inner(t) {
            Ok(i) => (-i).exp(),
            Err(e) => {
                failed.set(Some(e));
                f64::NAN
            }
        };
        let value = quad::integrate(integrand, 0.5, v, self.tol);
        if let Some(e) = failed.take() {
            return Err(e);
        }
        value
    }
}

/// `Phi^{-1}` scaled to the normalization of [`ProfileTransform::gaussian`].
pub fn gaussian_transform_reference(v: f64) -> Result<f64> {
    Ok(INV_SQRT_2PI * std_normal_inv(v)?)
}
