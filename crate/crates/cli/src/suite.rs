//! The full verification suite.
//!
//! Every case draws from its own RNG stream, so cases can run in any order and
//! the report only depends on the config.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use gaussbm::body2d::{centered_disc_gaussian, gaussian_functionals, HalfPlane};
use gaussbm::ehrhard::{cd1_counterexample, ehrhard_concavity, halfplane_profile, ConcavityProfile};
use gaussbm::gaussfn::{profile_log_derivative, std_normal_pdf};
use gaussbm::inequalities::{disc_quantile_ratio, dual_gap_scan, isoperimetric_and_ledoux, poincare_report};
use gaussbm::neumann::{
    concave_chain_check, cs_pointwise, d2n_probe, gamma2_identity, halfline_d2n, reilly_residual,
    solve_neumann, Field2, Poly2, WeightedDomain,
};
use gaussbm::sampling::{random_body, random_function, random_mean_convex_body, random_polynomial, stream_rng};
use gaussbm::variations::{fd_variations, minkowski_second_slack, steiner_fit, variations, DEFAULT_FD_STEP};
use gaussbm::{Body, BodySpec, BoundaryFunction, SupportBody, WeightMode};

use crate::config::SuiteConfig;
use crate::plot::line_plot;
use crate::report::{CheckBuilder, CheckRecord, Metric, ReportDocument};

/// An SVG file name and its contents.
pub type Plot = (String, String);

#[derive(Default)]
struct Output {
    checks: Vec<CheckRecord>,
    plots: Vec<Plot>,
}

impl Output {
    fn extend(&mut self, other: Output) {
        self.checks.extend(other.checks);
        self.plots.extend(other.plots);
    }
}

impl FromIterator<CheckRecord> for Output {
    fn from_iter<I: IntoIterator<Item = CheckRecord>>(iter: I) -> Self {
        Output {
            checks: iter.into_iter().collect(),
            plots: Vec::new(),
        }
    }
}

fn stream(suite: u64, case: u64) -> u64 {
    (suite << 32) | case
}

fn id(suite: u32, name: &str, case: impl std::fmt::Display) -> String {
    format!("{suite:02}-{name}/{case}")
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn body_json(b: &SupportBody) -> Value {
    to_value(&BodySpec::from(&Body::Fourier(b.clone())))
}

fn profile_plot(name: &str, title: &str, p: &ConcavityProfile) -> Plot {
    (format!("{name}.svg"), line_plot(title, &p.t, &p.values))
}

/// Body and test function of case `i` of the Poincare suite; the isoperimetric
/// suite reuses the bodies.
fn poincare_case(config: &SuiteConfig, i: usize) -> (SupportBody, BoundaryFunction) {
    let mut r = stream_rng(config.seed, stream(3, i as u64));
    let body = random_body(&mut r, 4).with_grid(config.grid);
    let f = random_function(&mut r, 4);
    (body, f)
}

fn halfplane(config: &SuiteConfig) -> Output {
    let tol = config.tol.halfplane;
    (-3..=3)
        .map(|t| {
            let t = t as f64;
            let body: Body = HalfPlane::new(t, 0.0).into();
            let f = BoundaryFunction::constant(1.0);
            let b = |values| {
                CheckBuilder::new(id(1, "halfplane", format!("t{t:+}")), "half-plane equality", json!({"body": BodySpec::from(&body), "f": f}), values)
            };
            match poincare_report(&body, &f) {
                Ok(r) => {
                    let phi = std_normal_pdf(t);
                    let curvature_ok = (r.term_curvature + t * phi).abs() <= tol;
                    let slope_ok = (r.log_profile_slope + t / phi).abs() <= tol * (t / phi).abs().max(1.0);
                    b(to_value(&r)).upper(Metric::Residual, r.gap.abs(), tol, curvature_ok && slope_ok)
                }
                Err(e) => b(Value::Null).error(e.to_string()),
            }
        })
        .collect()
}

fn discs(config: &SuiteConfig) -> Output {
    [0.5, 1.0, 2.0]
        .into_iter()
        .map(|r| {
            let body: Body = SupportBody::disc(r, [0.0, 0.0]).with_grid(config.grid).into();
            let b = |values| CheckBuilder::new(id(2, "disc", format!("r{r}")), "disc closed forms", json!({"body": BodySpec::from(&body)}), values);
            match gaussian_functionals(&body) {
                Ok((v, m)) => {
                    let (v0, m0) = centered_disc_gaussian(r);
                    let err = (v - v0).abs().max((m - m0).abs());
                    b(json!({"measure": v, "boundary_mass": m, "measure_exact": v0, "boundary_mass_exact": m0}))
                        .upper(Metric::Residual, err, config.tol.disc, true)
                }
                Err(e) => b(Value::Null).error(e.to_string()),
            }
        })
        .collect()
}

fn poincare(config: &SuiteConfig) -> Output {
    let tol = &config.tol;
    (0..config.cases.poincare)
        .into_par_iter()
        .map(|i| {
            let (body, f) = poincare_case(config, i);
            let b = |values| CheckBuilder::new(id(3, "poincare", format!("{i:03}")), "Poincare inequality", json!({"body": body_json(&body), "f": f}), values);
            let run = || -> gaussbm::Result<CheckRecord> {
                let kb: Body = body.clone().into();
                let r = poincare_report(&kb, &f)?;
                let centered = f.shifted(-r.f_integral / r.boundary_mass);
                let z = poincare_report(&kb, &centered)?;
                let zero_mean_diff = (z.prev_gap - z.gap).abs();
                let refined = r.refined_gap.unwrap_or(f64::NAN);
                let improvement = r.prev_gap - r.gap;
                let headline = r.gap.min(refined);
                let extra = zero_mean_diff <= tol.zero_mean && improvement > 0.0;
                Ok(b(json!({"report": r, "zero_mean_diff": zero_mean_diff, "prev_minus_gap": improvement}))
                    .lower(Metric::Gap, headline, tol.poincare, extra))
            };
            run().unwrap_or_else(|e| b(Value::Null).error(e.to_string()))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn variation_checks(config: &SuiteConfig) -> Output {
    let tol = &config.tol;
    (0..config.cases.variations)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut r = stream_rng(config.seed, stream(4, i as u64));
            let body = random_body(&mut r, 4).with_grid(config.grid);
            let f = random_function(&mut r, 3);
            [WeightMode::Gaussian, WeightMode::Lebesgue].into_iter().flat_map(move |mode| {
                let inputs = json!({"body": body_json(&body), "f": f, "mode": mode});
                let mode_name = to_value(&mode).as_str().unwrap_or_default().to_owned();
                let b = |order: &str, values| {
                    CheckBuilder::new(id(4, "variations", format!("{i:03}-{mode_name}-{order}")), format!("finite-difference delta{}", if order == "first" { 1 } else { 2 }), inputs.clone(), values)
                };
                match variations(&body, &f, mode).and_then(|v| Ok((v, fd_variations(&body, &f, mode, DEFAULT_FD_STEP)?))) {
                    Ok((v, (d1, d2))) => {
                        let r1 = (v.delta1 - d1).abs() / v.delta1.abs().max(1.0);
                        let r2 = (v.delta2 - d2).abs() / v.delta2.abs().max(1.0);
                        vec![
                            b("first", json!({"analytic": v.delta1, "finite_difference": d1})).upper(Metric::Residual, r1, tol.fd_first, true),
                            b("second", json!({"analytic": v.delta2, "finite_difference": d2})).upper(Metric::Residual, r2, tol.fd_second, true),
                        ]
                    }
                    Err(e) => vec![b("first", Value::Null).error(e.to_string()), b("second", Value::Null).error(e.to_string())],
                }
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn ehrhard(config: &SuiteConfig) -> Output {
    let m = config.profile_points;
    let pairs: Vec<(CheckRecord, Option<Plot>)> = (0..config.cases.ehrhard)
        .into_par_iter()
        .map(|i| {
            let mut r = stream_rng(config.seed, stream(5, i as u64));
            let k = random_body(&mut r, 4).with_grid(config.grid);
            let l = random_body(&mut r, 4).with_grid(config.grid);
            let b = |values| CheckBuilder::new(id(5, "ehrhard", format!("{i:03}")), "Ehrhard concavity", json!({"a": body_json(&k), "b": body_json(&l), "grid": m}), values);
            match ehrhard_concavity(&k, &l, m) {
                Ok(p) => {
                    let plot = profile_plot(&format!("ehrhard-{i:03}"), &format!("Ehrhard profile {i:03}"), &p);
                    (b(to_value(&p)).upper(Metric::Slack, p.max_second_diff, config.tol.concavity, true), Some(plot))
                }
                Err(e) => (b(Value::Null).error(e.to_string()), None),
            }
        })
        .collect();
    let mut out = Output::default();
    for (c, p) in pairs {
        out.checks.push(c);
        out.plots.extend(p);
    }
    for (j, (a, c, angle)) in [(-2.0, 1.5, 0.0), (0.3, -0.8, 1.1), (-1.0, 2.5, 2.0)].into_iter().enumerate() {
        let b = |values| CheckBuilder::new(id(5, "ehrhard", format!("halfline-{j}")), "half-line linearity", json!({"a": a, "c": c, "angle": angle, "grid": m}), values);
        out.checks.push(match halfplane_profile(a, c, angle, m) {
            Ok(p) => {
                let worst = p.second_diff.iter().fold(0.0f64, |w, d| w.max(d.abs()));
                out.plots.push(profile_plot(&format!("ehrhard-halfline-{j}"), "half-line profile", &p));
                b(to_value(&p)).upper(Metric::Residual, worst, config.tol.linearity, true)
            }
            Err(e) => b(Value::Null).error(e.to_string()),
        });
    }
    out
}

fn cd1(config: &SuiteConfig) -> Output {
    let mut out = Output::default();
    for b in [0.0, -4.0, 2.5] {
        let builder = |values| CheckBuilder::new(id(6, "cd1", format!("b{b:+}")), "conditioned Gaussian counterexample", json!({"b": b, "grid": config.profile_points}), values);
        match cd1_counterexample(b, config.profile_points) {
            Ok(r) => {
                let at = r.profile.t[r.profile.argmax + 1];
                out.plots.push(profile_plot(&format!("cd1-b{b:+}"), &format!("conditioned profile, b = {b}"), &r.profile));
                out.plots.push(profile_plot(&format!("cd1-dilation-b{b:+}"), &format!("dilation profile, b = {b}"), &r.dilation_profile));
                let values = json!({"report": r, "argmax_t": at});
                out.checks.push(if b == 0.0 {
                    builder(values).witness(r.profile.max_second_diff, 1e-3, r.violated && at > b - 0.5)
                } else {
                    builder(values).report_only(Metric::Witness, r.profile.max_second_diff)
                });
            }
            Err(e) => out.checks.push(builder(Value::Null).error(e.to_string())),
        }
    }
    out
}

fn log_profile(_config: &SuiteConfig) -> Output {
    let n = 10_000;
    let b = |values| CheckBuilder::new(id(7, "log-profile", "grid"), "(log I)' < 1/v", json!({"points": n, "lo": 1e-4, "hi": 1.0 - 1e-4}), values);
    let mut min = (f64::INFINITY, 0.0);
    for i in 0..n {
        let v = 1e-4 + (1.0 - 2e-4) * i as f64 / (n - 1) as f64;
        match profile_log_derivative(v) {
            Ok(d) if 1.0 / v - d < min.0 => min = (1.0 / v - d, v),
            Ok(_) => {}
            Err(e) => return std::iter::once(b(Value::Null).error(e.to_string())).collect(),
        }
    }
    std::iter::once(b(json!({"min_gap": min.0, "at": min.1})).lower(Metric::Slack, min.0, 0.0, min.0 > 0.0)).collect()
}

fn isoperimetry(config: &SuiteConfig) -> Output {
    let tol = config.tol.isoperimetric;
    let mut bodies: Vec<(String, Body)> = (0..config.cases.poincare)
        .map(|i| (format!("{i:03}"), poincare_case(config, i).0.into()))
        .collect();
    for t in [-2.0, 0.0, 1.5] {
        bodies.push((format!("halfplane-t{t:+}"), HalfPlane::new(t, 0.0).into()));
    }
    let mut out: Output = bodies
        .into_par_iter()
        .map(|(case, body)| {
            let b = |values| CheckBuilder::new(id(8, "isoperimetry", &case), "isoperimetric floor", json!({"body": BodySpec::from(&body)}), values);
            match isoperimetric_and_ledoux(&body) {
                Ok(r) => {
                    let fp_ok = r.f_prime0 >= 1.0 - tol;
                    b(json!({"measure": r.measure, "boundary_mass": r.boundary_mass, "iso_slack": r.iso_slack, "f_prime0": r.f_prime0}))
                        .lower(Metric::Slack, r.iso_slack, tol, fp_ok)
                }
                Err(e) => b(Value::Null).error(e.to_string()),
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let radii = [2.0, 5.0, 8.0, 12.0];
    let b = |values| CheckBuilder::new(id(8, "isoperimetry", "ledoux"), "Ledoux limit", json!({"radii": radii}), values);
    out.checks.push(match radii.iter().map(|&t| disc_quantile_ratio(t)).collect::<gaussbm::Result<Vec<_>>>() {
        Ok(ratios) => {
            let monotone = ratios.windows(2).all(|w| w[1] > w[0]);
            b(json!({"ratios": ratios, "monotone": monotone})).upper(Metric::Residual, (ratios[2] - 1.0).abs(), config.tol.ledoux, monotone)
        }
        Err(e) => b(Value::Null).error(e.to_string()),
    });
    out
}

fn reilly(config: &SuiteConfig) -> Output {
    let tol = &config.tol;
    let polys: Vec<Poly2> = (0..config.cases.reilly_polynomials)
        .map(|i| random_polynomial(&mut stream_rng(config.seed, stream(9, (1 << 16) | i as u64)), 1 + (i % 5) as u32))
        .collect();
    let jobs: Vec<(usize, &str)> = (0..config.cases.reilly_bodies).flat_map(|i| [(i, "gaussian"), (i, "lebesgue")]).collect();
    jobs.into_par_iter()
        .flat_map_iter(|(i, weight)| {
            let body = random_body(&mut stream_rng(config.seed, stream(9, i as u64)), 2).with_grid(config.grid);
            let potential = if weight == "gaussian" { Poly2::gaussian_potential() } else { Poly2::zero() };
            let domain = WeightedDomain::new(&body, potential);
            let body_value = body_json(&body);
            polys
                .iter()
                .enumerate()
                .map(|(p, u)| {
                    let b = |values| CheckBuilder::new(id(9, "reilly", format!("{i:02}-{weight}-{p:02}")), "Reilly identity", json!({"body": body_value, "weight": weight, "u": u}), values);
                    match &domain {
                        Ok(d) => {
                            let r = reilly_residual(d, u);
                            let cs = cs_pointwise(d, u);
                            b(json!({"terms": r, "cs": cs})).upper(Metric::Residual, r.residual, tol.reilly, cs.min_slack >= -tol.cauchy_schwarz)
                        }
                        Err(e) => b(Value::Null).error(e.to_string()),
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn neumann(config: &SuiteConfig) -> Output {
    let tol = &config.tol;
    let degree = config.neumann_degree;
    let disc = SupportBody::unit_disc().with_grid(config.grid);
    let mut out = Output::default();

    let b = |values| CheckBuilder::new(id(10, "neumann", "lebesgue-linear"), "Neumann solve u = x1", json!({"body": body_json(&disc), "f": {"cos": [1.0]}, "degree": degree}), values);
    let run = || -> gaussbm::Result<CheckRecord> {
        let d = WeightedDomain::lebesgue(&disc)?;
        let s = solve_neumann(&d, &BoundaryFunction::new(0.0, vec![1.0], vec![]), degree)?;
        let mut err: f64 = 0.0;
        for p in d.nodes.iter().step_by(37) {
            let j = s.jet(*p);
            err = err.max((j.value - p[0]).abs()).max((j.grad[0] - 1.0).abs()).max(j.grad[1].abs());
        }
        for (j, p) in d.boundary.points.iter().enumerate() {
            err = err.max((s.traces.u[j] - p[0]).abs());
        }
        let id = gamma2_identity(&d, &s);
        Ok(b(json!({"max_error": err, "flux_residual": s.flux_residual, "identity": id}))
            .upper(Metric::Residual, err, tol.neumann_exact, id.residual <= tol.gamma2))
    };
    out.checks.push(run().unwrap_or_else(|e| b(Value::Null).error(e.to_string())));

    let b = |values| CheckBuilder::new(id(10, "neumann", "gaussian-radial"), "Neumann solve f = 1 on the Gaussian disc", json!({"body": body_json(&disc), "f": {"c0": 1.0}, "degree": degree}), values);
    let run = || -> gaussbm::Result<CheckRecord> {
        let d = WeightedDomain::gaussian(&disc)?;
        let one = BoundaryFunction::constant(1.0);
        let s = solve_neumann(&d, &one, degree)?;
        let e = (-0.5f64).exp();
        let c_exact = e / (1.0 - e);
        let id = gamma2_identity(&d, &s);
        let coarse = solve_neumann(&d, &one, degree.saturating_sub(4).max(2))?;
        let ok = (s.c - c_exact).abs() <= tol.neumann_exact && id.residual <= tol.gamma2;
        Ok(b(json!({"c": s.c, "c_exact": c_exact, "flux_residual": s.flux_residual, "coarse_flux_residual": coarse.flux_residual, "interior_residual": s.interior_residual, "identity": id}))
            .upper(Metric::Residual, s.flux_residual, tol.flux, ok))
    };
    out.checks.push(run().unwrap_or_else(|e| b(Value::Null).error(e.to_string())));

    let solved: Vec<CheckRecord> = (0..config.cases.neumann)
        .into_par_iter()
        .map(|i| {
            let mut r = stream_rng(config.seed, stream(10, i as u64));
            let body = random_body(&mut r, 2).with_grid(config.grid);
            let f = random_function(&mut r, 2);
            let b = |values| CheckBuilder::new(id(10, "neumann", format!("{i:03}")), "Gamma_2 boundary identity", json!({"body": body_json(&body), "f": f, "degree": degree}), values);
            let run = || -> gaussbm::Result<CheckRecord> {
                let d = WeightedDomain::gaussian(&body)?;
                let s = solve_neumann(&d, &f, degree)?;
                let id = gamma2_identity(&d, &s);
                Ok(b(json!({"identity": id, "flux_residual": s.flux_residual, "interior_residual": s.interior_residual}))
                    .upper(Metric::Residual, id.residual, tol.gamma2, true))
            };
            run().unwrap_or_else(|e| b(Value::Null).error(e.to_string()))
        })
        .collect();
    out.checks.extend(solved);
    out
}

fn dual(config: &SuiteConfig) -> Output {
    (0..config.cases.dual)
        .into_par_iter()
        .map(|i| {
            let mut r = stream_rng(config.seed, stream(11, i as u64));
            let body = random_mean_convex_body(&mut r, 3, 0.1).with_grid(config.grid);
            let f = random_function(&mut r, 3);
            let c_grid = [-1.0, 0.0, 1.0];
            let b = |values| CheckBuilder::new(id(11, "dual", format!("{i:03}")), "dual inequality", json!({"body": body_json(&body), "f": f, "c_grid": c_grid}), values);
            match dual_gap_scan(&body, &f, &c_grid) {
                Ok(rep) => {
                    let min = rep.grid.iter().map(|(_, g)| *g).fold(rep.gap_min, f64::min);
                    b(to_value(&rep)).lower(Metric::Gap, min, config.tol.dual, true)
                }
                Err(e) => b(Value::Null).error(e.to_string()),
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn chain(config: &SuiteConfig) -> Output {
    let degree = config.neumann_degree;
    (0..config.cases.chain)
        .into_par_iter()
        .map(|i| {
            let mut r = stream_rng(config.seed, stream(12, i as u64));
            let body = random_body(&mut r, 2).with_grid(config.grid);
            let f = random_function(&mut r, 2);
            let b = |values| CheckBuilder::new(id(12, "chain", format!("{i:03}")), "1/N-concave chain", json!({"body": body_json(&body), "f": f, "degree": degree}), values);
            match WeightedDomain::lebesgue(&body).and_then(|d| concave_chain_check(&d, &f, degree)) {
                Ok(c) => b(to_value(&c)).lower(Metric::Slack, c.slack, config.tol.chain, true),
                Err(e) => b(Value::Null).error(e.to_string()),
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn d2n(config: &SuiteConfig) -> Output {
    let mut out: Output = (-3..=3)
        .map(|t| {
            let t = t as f64;
            let b = |values| CheckBuilder::new(id(13, "d2n", format!("halfline-t{t:+}")), "half-line Neumann-to-Dirichlet margin", json!({"t": t}), values);
            match halfline_d2n(t) {
                Ok(p) => b(to_value(&p)).upper(Metric::Margin, p.margin.abs(), config.tol.halfline, true),
                Err(e) => b(Value::Null).error(e.to_string()),
            }
        })
        .collect();
    let disc = SupportBody::unit_disc().with_grid(config.grid);
    for (name, f) in [
        ("disc-const", BoundaryFunction::constant(1.0)),
        ("disc-cos", BoundaryFunction::new(1.0, vec![0.3], vec![])),
    ] {
        let b = |values| CheckBuilder::new(id(13, "d2n", name), "disc Neumann-to-Dirichlet margin", json!({"body": body_json(&disc), "f": f, "degree": config.neumann_degree}), values);
        out.checks.push(match WeightedDomain::gaussian(&disc).and_then(|d| d2n_probe(&d, &f, config.neumann_degree)) {
            Ok(p) => b(to_value(&p)).report_only(Metric::Margin, p.margin),
            Err(e) => b(Value::Null).error(e.to_string()),
        });
    }
    out
}

fn classical(config: &SuiteConfig) -> Output {
    let tol = &config.tol;
    let mut out: Output = (0..config.cases.classical)
        .into_par_iter()
        .flat_map_iter(|i| {
            let body = random_body(&mut stream_rng(config.seed, stream(14, i as u64)), 4).with_grid(config.grid);
            let inputs = json!({"body": body_json(&body)});
            let steiner = CheckBuilder::new(id(14, "classical", format!("{i:03}-steiner")), "Steiner polynomial", inputs.clone(), Value::Null);
            let steiner = match steiner_fit(&body) {
                Ok(fit) => {
                    let c2_ok = (fit.quadratic - std::f64::consts::PI).abs() <= tol.steiner_quadratic;
                    CheckBuilder::new(id(14, "classical", format!("{i:03}-steiner")), "Steiner polynomial", inputs.clone(), to_value(&fit))
                        .upper(Metric::Residual, fit.residual, tol.steiner, c2_ok)
                }
                Err(e) => steiner.error(e.to_string()),
            };
            let b = |values| CheckBuilder::new(id(14, "classical", format!("{i:03}-minkowski")), "Minkowski second inequality", inputs.clone(), values);
            let minkowski = match minkowski_second_slack(&body) {
                Ok(s) => b(json!({"slack": s})).lower(Metric::Slack, s, tol.minkowski, true),
                Err(e) => b(Value::Null).error(e.to_string()),
            };
            [steiner, minkowski]
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    for (j, (r, c)) in [(0.5, [0.0, 0.0]), (1.0, [0.3, -1.0]), (2.5, [0.0, 2.0])].into_iter().enumerate() {
        let disc = SupportBody::disc(r, c).with_grid(config.grid);
        let b = |values| CheckBuilder::new(id(14, "classical", format!("disc-{j}")), "Minkowski equality on discs", json!({"body": body_json(&disc)}), values);
        out.checks.push(match minkowski_second_slack(&disc) {
            Ok(s) => b(json!({"slack": s})).upper(Metric::Residual, s.abs(), tol.minkowski_disc, true),
            Err(e) => b(Value::Null).error(e.to_string()),
        });
    }
    out
}

/// Run every suite without touching the file system.
pub fn evaluate(config: &SuiteConfig) -> (ReportDocument, Vec<Plot>) {
    let suites: [fn(&SuiteConfig) -> Output; 14] = [
        halfplane,
        discs,
        poincare,
        variation_checks,
        ehrhard,
        cd1,
        log_profile,
        isoperimetry,
        reilly,
        neumann,
        dual,
        chain,
        d2n,
        classical,
    ];
    let mut all = Output::default();
    for s in suites {
        all.extend(s(config));
    }
    all.plots.sort();
    (ReportDocument::new(config.clone(), all.checks), all.plots)
}

/// Run the suite and write `report.json`, `report.csv` and `plots/*.svg` under `config.out`.
pub fn run_suite(config: &SuiteConfig) -> Result<ReportDocument> {
    let out = &config.out;
    let plots_dir = out.join("plots");
    fs::create_dir_all(&plots_dir).with_context(|| format!("creating {}", plots_dir.display()))?;
    let (report, plots) = evaluate(config);
    report.write_json(&out.join("report.json"))?;
    report.write_csv(&out.join("report.csv"))?;
    for (name, svg) in &plots {
        let path: &Path = &plots_dir.join(name);
        fs::write(path, svg).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report)
}
