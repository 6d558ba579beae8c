use crate::body2d::{boundary_geometry, boundary_geometry_unchecked, BoundaryGrid, SupportBody};
use crate::error::{Error, Result};
use crate::quad::gauss_legendre;

use super::poly::{Field2, Jet2, Poly2};

pub const DEFAULT_RADIAL_NODES: usize = 64;
pub const DEFAULT_ANGULAR_NODES: usize = 256;

/// A convex body carrying the measure `exp(-V) dx`, with interior and boundary quadrature.
#[derive(Debug, Clone)]
pub struct WeightedDomain {
    pub body: SupportBody,
    pub potential: Poly2,
    pub boundary: BoundaryGrid,
    /// `exp(-V) ds` at the boundary nodes.
    pub boundary_weights: Vec<f64>,
    /// `H_mu = kappa - <grad V, nu>`.
    pub h_mu: Vec<f64>,
    /// Fan center.
    pub center: [f64; 2],
    /// `min <x - center, nu>` over the boundary.
    pub margin: f64,
    pub nodes: Vec<[f64; 2]>,
    /// `exp(-V) dx` at the interior nodes.
    pub weights: Vec<f64>,
    pub potential_jets: Vec<Jet2>,
    pub measure: f64,
    pub radial_nodes: usize,
    pub angular_nodes: usize,
}

impl WeightedDomain {
    pub fn new(body: &SupportBody, potential: Poly2) -> Result<Self> {
        Self::with_quadrature(body, potential, DEFAULT_RADIAL_NODES, DEFAULT_ANGULAR_NODES)
    }

    pub fn gaussian(body: &SupportBody) -> Result<Self> {
        Self::new(body, Poly2::gaussian_potential())
    }

    pub fn lebesgue(body: &SupportBody) -> Result<Self> {
        Self::new(body, Poly2::zero())
    }

    pub fn with_quadrature(
        body: &SupportBody,
        potential: Poly2,
        radial: usize,
        angular: usize,
    ) -> Result<Self> {
        let boundary = boundary_geometry(body)?;
        let fan = boundary_geometry_unchecked(body, angular);
        let (center, margin) = interior_point(body, &boundary);
        if !(margin > 0.0) {
            return Err(Error::BadInteriorPoint { margin });
        }

        let (s, ws) = gauss_legendre(radial);
        let mut nodes = Vec::with_capacity(radial * angular);
        let mut weights = Vec::with_capacity(radial * angular);
        let mut potential_jets = Vec::with_capacity(radial * angular);
        let dt = fan.dtheta();
        for k in 0..angular {
            let x = fan.points[k];
            let d = [x[0] - center[0], x[1] - center[1]];
            let reach = d[0] * fan.normals[k][0] + d[1] * fan.normals[k][1];
            for (si, wi) in s.iter().zip(&ws) {
                let r = 0.5 * (si + 1.0);
                let p = [center[0] + r * d[0], center[1] + r * d[1]];
                let jet = potential.jet(p);
                // Jacobian of (r, theta) -> center + r (x(theta) - center) is r rho <x - center, nu>.
                let w = 0.5 * wi * r * fan.radius[k] * reach * dt;
                nodes.push(p);
                weights.push(w * (-jet.value).exp());
                potential_jets.push(jet);
            }
        }
        let measure = weights.iter().sum();

        let mut boundary_weights = Vec::with_capacity(boundary.len());
        let mut h_mu = Vec::with_capacity(boundary.len());
        for j in 0..boundary.len() {
            let jet = potential.jet(boundary.points[j]);
            boundary_weights.push(boundary.weights[j] * (-jet.value).exp());
            h_mu.push(boundary.kappa[j] - jet.grad_dot(boundary.normals[j]));
        }

        Ok(Self {
            body: body.clone(),
            potential,
            boundary,
            boundary_weights,
            h_mu,
            center,
            margin,
            nodes,
            weights,
            potential_jets,
            measure,
            radial_nodes: radial,
            angular_nodes: angular,
        })
    }

    pub fn is_gaussian(&self) -> bool {
        self.potential.is_gaussian()
    }

    pub fn is_lebesgue(&self) -> bool {
        self.potential.is_zero()
    }

    /// `int_K g dmu`.
    pub fn integrate(&self, g: impl Fn(usize) -> f64) -> f64 {
        (0..self.nodes.len()).map(|q| g(q) * self.weights[q]).sum()
    }

    /// `int_{boundary} g dmu_boundary`.
    pub fn integrate_boundary(&self, g: impl Fn(usize) -> f64) -> f64 {
        (0..self.boundary.len()).map(|j| g(j) * self.boundary_weights[j]).sum()
    }

    /// `L u = Laplacian u - <grad V, grad u>` at interior node `q`.
    pub fn weighted_laplacian(&self, q: usize, u: &Jet2) -> f64 {
        u.laplacian() - u.grad_dot(self.potential_jets[q].grad)
    }

    /// Axis-aligned box containing the body.
    pub fn bounding_box(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in &self.boundary.points {
            for a in 0..2 {
                lo[a] = lo[a].min(p[a]);
                hi[a] = hi[a].max(p[a]);
            }
        }
        (lo, hi)
    }
}

fn margin_at(p: [f64; 2], g: &BoundaryGrid) -> f64 {
    (0..g.len())
        .map(|j| g.support[j] - p[0] * g.normals[j][0] - p[1] * g.normals[j][1])
        .fold(f64::INFINITY, f64::min)
}

/// Compass search for the point maximizing the distance to the supporting lines,
/// started at the Steiner point.
pub fn interior_point(body: &SupportBody, g: &BoundaryGrid) -> ([f64; 2], f64) {
    let (a1, b1) = body.coeff(1);
    let mut p = [a1, b1];
    let mut best = margin_at(p, g);
    let mut step = 0.25 * body.a0.abs().max(1e-3);
    let floor = 1e-9 * body.a0.abs().max(1e-3);
    while step > floor {
        let mut moved = false;
        for d in [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]] {
            let q = [p[0] + step * d[0], p[1] + step * d[1]];
            let m = margin_at(q, g);
            if m > best {
                p = q;
                best = m;
                moved = true;
                break;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    (p, best)
}
