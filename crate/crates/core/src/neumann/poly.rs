//! Bivariate polynomials with exact second-order jets.

use serde::{Deserialize, Serialize};

/// Value, gradient and Hessian of a scalar field at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Jet2 {
    pub value: f64,
    pub grad: [f64; 2],
    pub hess: [[f64; 2]; 2],
}

impl Jet2 {
    /// Squared Hilbert-Schmidt norm of the Hessian.
    pub fn hess_sq(&self) -> f64 {
        let h = &self.hess;
        h[0][0] * h[0][0] + 2.0 * h[0][1] * h[0][1] + h[1][1] * h[1][1]
    }

    pub fn laplacian(&self) -> f64 {
        self.hess[0][0] + self.hess[1][1]
    }

    /// `H(a, b)`.
    pub fn hess_form(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        let h = &self.hess;
        a[0] * (h[0][0] * b[0] + h[0][1] * b[1]) + a[1] * (h[1][0] * b[0] + h[1][1] * b[1])
    }

    pub fn grad_dot(&self, a: [f64; 2]) -> f64 {
        self.grad[0] * a[0] + self.grad[1] * a[1]
    }
}

pub trait Field2 {
    fn jet(&self, x: [f64; 2]) -> Jet2;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
    pub c: f64,
}

/// Sparse polynomial `sum c x^a y^b`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Poly2 {
    pub terms: Vec<Monomial>,
}

/// `d^k/dx^k x^a`.
fn dpow(x: f64, a: u32, k: u32) -> f64 {
    if k > a {
        return 0.0;
    }
    let coef: f64 = (0..k).map(|i| (a - i) as f64).product();
    coef * x.powi((a - k) as i32)
}

impl Poly2 {
    pub fn new(terms: impl IntoIterator<Item = (u32, u32, f64)>) -> Self {
        Self {
            terms: terms.into_iter().map(|(x, y, c)| Monomial { x, y, c }).collect(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `|x|^2/2 + ln(2 pi)`, so that `exp(-V)` is the standard Gaussian density.
    pub fn gaussian_potential() -> Self {
        Self::new([(2, 0, 0.5), (0, 2, 0.5), (0, 0, std::f64::consts::TAU.ln())])
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().filter(|t| t.c != 0.0).map(|t| t.x + t.y).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.c == 0.0)
    }

    pub fn is_gaussian(&self) -> bool {
        let mut p = self.clone();
        p.terms.extend(Self::gaussian_potential().terms.iter().map(|t| Monomial { c: -t.c, ..*t }));
        p.simplified().terms.iter().all(|t| t.c.abs() <= 1e-15)
    }

    /// Merge equal monomials and drop zeros.
    pub fn simplified(&self) -> Self {
        let mut terms: Vec<Monomial> = Vec::new();
        for t in &self.terms {
            match terms.iter_mut().find(|s| s.x == t.x && s.y == t.y) {
                Some(s) => s.c += t.c,
                None => terms.push(*t),
            }
        }
        terms.retain(|t| t.c != 0.0);
        terms.sort_by_key(|t| (t.x + t.y, t.y));
        Self { terms }
    }

    pub fn eval(&self, p: [f64; 2]) -> f64 {
        self.terms.iter().map(|t| t.c * p[0].powi(t.x as i32) * p[1].powi(t.y as i32)).sum()
    }
}

impl Field2 for Poly2 {
    fn jet(&self, p: [f64; 2]) -> Jet2 {
        let mut j = Jet2::default();
        for t in &self.terms {
            let (x0, x1, x2) = (dpow(p[0], t.x, 0), dpow(p[0], t.x, 1), dpow(p[0], t.x, 2));
            let (y0, y1, y2) = (dpow(p[1], t.y, 0), dpow(p[1], t.y, 1), dpow(p[1], t.y, 2));
            j.value += t.c * x0 * y0;
            j.grad[0] += t.c * x1 * y0;
            j.grad[1] += t.c * x0 * y1;
            j.hess[0][0] += t.c * x2 * y0;
            j.hess[0][1] += t.c * x1 * y1;
            j.hess[1][1] += t.c * x0 * y2;
        }
        j.hess[1][0] = j.hess[0][1];
        j
    }
}

/// `T_k(x), T_k'(x), T_k''(x)` for `k = 0..=n`.
pub fn chebyshev_jets(n: usize, x: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let mut t = vec![0.0; n + 1];
    let mut d = vec![0.0; n + 1];
    let mut dd = vec![0.0; n + 1];
    t[0] = 1.0;
    if n >= 1 {
        t[1] = x;
        d[1] = 1.0;
    }
    for k in 1..n {
        t[k + 1] = 2.0 * x * t[k] - t[k - 1];
        d[k + 1] = 2.0 * t[k] + 2.0 * x * d[k] - d[k - 1];
        dd[k + 1] = 4.0 * d[k] + 2.0 * x * dd[k] - dd[k - 1];
    }
    (t, d, dd)
}

/// Tensor Chebyshev products `T_i(xi) T_j(eta)`, `i + j <= degree`, on an
/// axis-aligned box.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChebBasis {
    pub degree: usize,
    pub center: [f64; 2],
    pub half_width: [f64; 2],
    pub index: Vec<(usize, usize)>,
}

impl ChebBasis {
    pub fn new(degree: usize, lo: [f64; 2], hi: [f64; 2]) -> Self {
        let mut index = Vec::new();
        for total in 0..=degree {
            for j in 0..=total {
                index.push((total - j, j));
            }
        }
        Self {
            degree,
            center: [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])],
            half_width: [0.5 * (hi[0] - lo[0]), 0.5 * (hi[1] - lo[1])],
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Jets of every basis function at `p`, in `index` order.
    pub fn jets(&self, p: [f64; 2]) -> Vec<Jet2> {
        let (sx, sy) = (1.0 / self.half_width[0], 1.0 / self.half_width[1]);
        let (tx, dx, ddx) = chebyshev_jets(self.degree, (p[0] - self.center[0]) * sx);
        let (ty, dy, ddy) = chebyshev_jets(self.degree, (p[1] - self.center[1]) * sy);
        self.index
            .iter()
            .map(|&(i, j)| {
                let hxy = dx[i] * dy[j] * sx * sy;
                Jet2 {
                    value: tx[i] * ty[j],
                    grad: [dx[i] * ty[j] * sx, tx[i] * dy[j] * sy],
                    hess: [[ddx[i] * ty[j] * sx * sx, hxy], [hxy, tx[i] * ddy[j] * sy * sy]],
                }
            })
            .collect()
    }
}

/// A linear combination of [`ChebBasis`] functions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChebExpansion {
    pub basis: ChebBasis,
    pub coeffs: Vec<f64>,
}

impl Field2 for ChebExpansion {
    fn jet(&self, p: [f64; 2]) -> Jet2 {
        let mut out = Jet2::default();
        for (j, c) in self.basis.jets(p).iter().zip(&self.coeffs) {
            out.value += c * j.value;
            for a in 0..2 {
                out.grad[a] += c * j.grad[a];
                for b in 0..2 {
                    out.hess[a][b] += c * j.hess[a][b];
                }
            }
        }
        out
    }
}
