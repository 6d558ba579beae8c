//! One-dimensional quadrature and minimization helpers.

use crate::error::{Error, Result};

// Gauss-Kronrod 7/15 abscissae (positive half, descending) and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 48;

/// Single 15-point Kronrod panel; returns (kronrod estimate, |kronrod - gauss|).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let s = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Reversed limits give the negated integral. Non-finite panel values or
/// exhausted subdivision depth are reported as [`Error::Divergent`].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return integrate(f, b, a, tol).map(|v| -v);
    }
    let (est, err) = gk15(&f, a, b);
    let mut total_err = 0.0;
    let value = refine(&f, a, b, est, err, tol, 0, &mut total_err);
    if !value.is_finite() || total_err > tol.max(1e-14 * value.abs()) * 1e3 {
        return Err(Error::Divergent {
            a,
            b,
            estimate: value,
            error: total_err,
        });
    }
    Ok(value)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    est: f64,
    err: f64,
    tol: f64,
    depth: u32,
    total_err: &mut f64,
) -> f64 {
    if !est.is_finite() {
        *total_err = f64::INFINITY;
        return est;
    }
    if err <= tol.max(4.0 * f64::EPSILON * est.abs()) || depth >= MAX_DEPTH {
        if depth >= MAX_DEPTH {
            *total_err += err;
        }
        return est;
    }
    let mid = 0.5 * (a + b);
    let (l, le) = gk15(f, a, mid);
    let (r, re) = gk15(f, mid, b);
    refine(f, a, mid, l, le, 0.5 * tol, depth + 1, total_err)
        + refine(f, mid, b, r, re, 0.5 * tol, depth + 1, total_err)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..m {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let dp = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, dp)
}

/// Golden-section minimization of a unimodal function on `[a, b]`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Uniform periodic nodes `2 pi j / m`, `j = 0..m`.
pub fn periodic_nodes(m: usize) -> Vec<f64> {
    let step = std::f64::consts::TAU / m as f64;
    (0..m).map(|j| j as f64 * step).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn kronrod_weights_sum_to_two() {
        let s: f64 = WGK[..7].iter().map(|w| 2.0 * w).sum::<f64>() + WGK[7];
        assert_abs_diff_eq!(s, 2.0, epsilon = 1e-15);
        let g: f64 = WG[..3].iter().map(|w| 2.0 * w).sum::<f64>() + WG[3];
        assert_abs_diff_eq!(g, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn gk15_exact_on_degree_22() {
        let (v, _) = gk15(&|x: f64| x.powi(22), -1.0, 1.0);
        assert_abs_diff_eq!(v, 2.0 / 23.0, epsilon = 1e-15);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let v = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, 1e-10).unwrap();
        assert_abs_diff_eq!(v, 2.0, epsilon = 1e-8);
        let w = integrate(f64::exp, 1.0, 0.0, 1e-12).unwrap();
        assert_abs_diff_eq!(w, 1.0 - std::f64::consts::E, epsilon = 1e-12);
    }

    #[test]
    fn adaptive_flags_nonintegrable() {
        assert!(integrate(|x: f64| 1.0 / (x - 0.3).powi(2), 0.0, 1.0, 1e-10).is_err());
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in [1, 2, 5, 16, 64] {
            let (x, w) = gauss_legendre(n);
            let sum: f64 = w.iter().sum();
            assert_abs_diff_eq!(sum, 2.0, epsilon = 1e-13);
            let deg = 2 * n - 2;
            let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert_abs_diff_eq!(v, 2.0 / (deg as f64 + 1.0), epsilon = 1e-13);
        }
    }

    #[test]
    fn golden_section_finds_parabola_vertex() {
        let (x, fx) = golden_section(|x| (x - 0.3).powi(2) + 1.0, -2.0, 5.0, 1e-10);
        assert_abs_diff_eq!(x, 0.3, epsilon = 1e-7);
        assert_abs_diff_eq!(fx, 1.0, epsilon = 1e-14);
    }
}
