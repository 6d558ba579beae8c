use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::variations::BoundaryFunction;

use super::domain::WeightedDomain;
use super::poly::{ChebBasis, ChebExpansion, Field2, Jet2};

pub const DEFAULT_DEGREE: usize = 12;
/// Pivots (and singular values) below this fraction of the largest count as rank loss.
pub const RANK_TOL: f64 = 1e-14;

/// Boundary data of a field on the domain's boundary grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryTraces {
    pub u: Vec<f64>,
    pub u_nu: Vec<f64>,
    pub u_nunu: Vec<f64>,
    /// Tangential derivative `<grad u, tau>`.
    pub du: Vec<f64>,
    /// Tangential derivative of `u_nu`: `Hess u(tau, nu) + kappa <grad u, tau>`.
    pub du_nu: Vec<f64>,
}

pub fn boundary_traces(domain: &WeightedDomain, u: &dyn Field2) -> BoundaryTraces {
    let g = &domain.boundary;
    let n = g.len();
    let mut t = BoundaryTraces {
        u: Vec::with_capacity(n),
        u_nu: Vec::with_capacity(n),
        u_nunu: Vec::with_capacity(n),
        du: Vec::with_capacity(n),
        du_nu: Vec::with_capacity(n),
    };
    for j in 0..n {
        let jet = u.jet(g.points[j]);
        let (nu, tau) = (g.normals[j], g.tangent(j));
        let du = jet.grad_dot(tau);
        t.u.push(jet.value);
        t.u_nu.push(jet.grad_dot(nu));
        t.u_nunu.push(jet.hess_form(nu, nu));
        t.du.push(du);
        t.du_nu.push(jet.hess_form(tau, nu) + g.kappa[j] * du);
    }
    t
}

/// Approximate solution of `L u = c` in `K`, `u_nu = f` on the boundary, `int u dmu = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeumannSolution {
    pub expansion: ChebExpansion,
    pub c: f64,
    /// `int_K u dmu`.
    pub mean: f64,
    /// `(int (L u - c)^2 dmu / mu(K))^{1/2}`.
    pub interior_residual: f64,
    /// `max |u_nu - f|` on the boundary grid.
    pub flux_residual: f64,
    pub rank: usize,
    pub traces: BoundaryTraces,
    /// Prescribed flux `f` and its arclength derivative on the boundary grid.
    pub flux: Vec<f64>,
    pub flux_ds: Vec<f64>,
}

impl Field2 for NeumannSolution {
    fn jet(&self, x: [f64; 2]) -> Jet2 {
        self.expansion.jet(x)
    }
}

/// Radial nodes used to assemble the Galerkin system at a given degree.
///
/// Products of basis gradients have radial degree below `2 degree + 1`; residuals
/// are still measured on the domain's own quadrature.
pub fn assembly_radial_nodes(degree: usize) -> usize {
    (2 * degree).max(16)
}

pub fn solve_neumann(domain: &WeightedDomain, f: &BoundaryFunction, degree: usize) -> Result<NeumannSolution> {
    let radial = assembly_radial_nodes(degree);
    let coarse;
    let assembly = if radial < domain.radial_nodes {
        coarse = WeightedDomain::with_quadrature(&domain.body, domain.potential.clone(), radial, domain.angular_nodes)?;
        &coarse
    } else {
        domain
    };
    let (lo, hi) = domain.bounding_box();
    let pad = 1e-6 * (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let basis = ChebBasis::new(degree, [lo[0] - pad, lo[1] - pad], [hi[0] + pad, hi[1] + pad]);
    let n = basis.len();
    let q = assembly.nodes.len();

    let samples = f.sample(&domain.boundary);
    let flux_total = domain.integrate_boundary(|j| samples.value[j]);
    let c = flux_total / domain.measure;
    let assembly_c = flux_total / assembly.measure;

    // Orthonormalize the basis in the inner product
    // int (u v + <grad u, grad v>) dmu + int_boundary u v dmu_boundary.
    // Working in that basis avoids squaring the conditioning of the raw products.
    let nb = domain.boundary.len();
    let mut stacked = DMatrix::<f64>::zeros(3 * q + nb, n);
    let sqrt_w: Vec<f64> = assembly.weights.iter().map(|w| w.sqrt()).collect();
    for (k, p) in assembly.nodes.iter().enumerate() {
        for (i, j) in basis.jets(*p).iter().enumerate() {
            stacked[(k, i)] = sqrt_w[k] * j.value;
            stacked[(q + k, i)] = sqrt_w[k] * j.grad[0];
            stacked[(2 * q + k, i)] = sqrt_w[k] * j.grad[1];
        }
    }
    let sqrt_wb: Vec<f64> = domain.boundary_weights.iter().map(|w| w.sqrt()).collect();
    for (j, p) in domain.boundary.points.iter().enumerate() {
        for (i, b) in basis.jets(*p).iter().enumerate() {
            stacked[(3 * q + j, i)] = sqrt_wb[j] * b.value;
        }
    }
    let qr = stacked.qr();
    let r = qr.r();
    let diag_max = r.diagonal().amax();
    let rank = r.diagonal().iter().filter(|d| d.abs() > RANK_TOL * diag_max).count();
    if rank < n {
        return Err(Error::RankDeficient { rank, size: n });
    }
    let qm = qr.q();
    let (qv, qx, qy, qb) = (qm.rows(0, q), qm.rows(q, q), qm.rows(2 * q, q), qm.rows(3 * q, nb));

    let stiffness = qx.tr_mul(&qx) + qy.tr_mul(&qy);
    let moments = qv.tr_mul(&DVector::from_vec(sqrt_w));
    let boundary_flux = DVector::from_iterator(nb, (0..nb).map(|j| sqrt_wb[j] * samples.value[j]));
    let load = qb.tr_mul(&boundary_flux) - &moments * assembly_c;

    // Bordered system: the multiplier row enforces the zero-mean normalization.
    let mut system = DMatrix::<f64>::zeros(n + 1, n + 1);
    system.view_mut((0, 0), (n, n)).copy_from(&stiffness);
    for i in 0..n {
        system[(i, n)] = moments[i];
        system[(n, i)] = moments[i];
    }
    let mut rhs = DVector::<f64>::zeros(n + 1);
    rhs.rows_mut(0, n).copy_from(&load);

    let svd = system.svd(true, true);
    let cutoff = RANK_TOL * svd.singular_values.max();
    let sol = svd
        .solve(&rhs, cutoff)
        .map_err(|e| Error::Invalid(format!("least-squares solve failed: {e}")))?;
    let sol = r
        .solve_upper_triangular(&sol.rows(0, n).into_owned())
        .ok_or(Error::RankDeficient { rank, size: n })?;
    let coeffs: Vec<f64> = sol.iter().copied().collect();
    let expansion = ChebExpansion { basis, coeffs };

    let mut mean = 0.0;
    let mut res2 = 0.0;
    for (k, p) in domain.nodes.iter().enumerate() {
        let jet = expansion.jet(*p);
        let r = domain.weighted_laplacian(k, &jet) - c;
        mean += domain.weights[k] * jet.value;
        res2 += domain.weights[k] * r * r;
    }
    let traces = boundary_traces(domain, &expansion);
    let flux_residual = traces
        .u_nu
        .iter()
        .zip(&samples.value)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    Ok(NeumannSolution {
        expansion,
        c,
        mean,
        interior_residual: (res2 / domain.measure).sqrt(),
        flux_residual,
        rank,
        traces,
        flux: samples.value,
        flux_ds: samples.d_s,
    })
}
