//! One-off checks on bodies and functions read from JSON files.

use std::path::Path;

use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::{json, Value};

use gaussbm::ehrhard::{cd1_counterexample, ehrhard_concavity};
use gaussbm::inequalities::{
    dual_gap_scan, iso_second_variation_compare, isoperimetric_and_ledoux, mean_curvature_slack,
    poincare_report,
};
use gaussbm::neumann::{
    cs_pointwise, d2n_probe, gamma2_identity, halfline_d2n, reilly_residual, solve_neumann, Poly2,
    WeightedDomain,
};
use gaussbm::variations::{fd_variations, variations};
use gaussbm::{Body, BodySpec, BoundaryFunction, SupportBody, WeightMode};

use crate::config::load_json;
use crate::report::digest;

/// Printed result of a single command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub command: &'static str,
    pub inputs_digest: String,
    pub inputs: Value,
    pub result: Value,
}

impl Record {
    fn new<T: Serialize>(command: &'static str, inputs: Value, result: &T) -> Result<Self> {
        Ok(Self {
            command,
            inputs_digest: digest(&inputs),
            inputs,
            result: serde_json::to_value(result)?,
        })
    }
}

pub fn load_body(path: &Path) -> Result<Body> {
    let spec: BodySpec = load_json(path)?;
    Ok(spec.into_body()?)
}

fn load_support(path: &Path) -> Result<SupportBody> {
    match load_body(path)? {
        Body::Fourier(b) => Ok(b),
        Body::HalfPlane(_) => bail!("{}: this command needs a bounded body, not a half-plane", path.display()),
    }
}

pub fn load_function(path: &Path) -> Result<BoundaryFunction> {
    load_json(path)
}

fn spec(b: &Body) -> Value {
    serde_json::to_value(BodySpec::from(b)).expect("body specs serialize")
}

fn domain(body: &SupportBody, weight: WeightMode) -> Result<WeightedDomain> {
    Ok(match weight {
        WeightMode::Gaussian => WeightedDomain::gaussian(body)?,
        WeightMode::Lebesgue => WeightedDomain::lebesgue(body)?,
    })
}

pub fn poincare(body: &Path, f: &Path) -> Result<Record> {
    let (b, f) = (load_body(body)?, load_function(f)?);
    let r = poincare_report(&b, &f)?;
    Record::new("poincare", json!({"body": spec(&b), "f": f}), &r)
}

pub fn variation(body: &Path, f: &Path, mode: WeightMode, step: f64) -> Result<Record> {
    let (b, f) = (load_support(body)?, load_function(f)?);
    let v = variations(&b, &f, mode)?;
    let (d1, d2) = fd_variations(&b, &f, mode, step)?;
    Record::new(
        "variations",
        json!({"body": spec(&b.clone().into()), "f": f, "mode": mode, "step": step}),
        &json!({"analytic": v, "fd_delta1": d1, "fd_delta2": d2}),
    )
}

pub fn ehrhard(a: &Path, b: &Path, grid: usize) -> Result<Record> {
    let (k, l) = (load_support(a)?, load_support(b)?);
    let p = ehrhard_concavity(&k, &l, grid)?;
    Record::new(
        "ehrhard",
        json!({"a": spec(&k.clone().into()), "b": spec(&l.clone().into()), "grid": grid}),
        &p,
    )
}

pub fn cd1(b: f64, grid: usize) -> Result<Record> {
    let r = cd1_counterexample(b, grid)?;
    Record::new("cd1", json!({"b": b, "grid": grid}), &r)
}

pub fn neumann(body: &Path, f: &Path, weight: WeightMode, degree: usize) -> Result<Record> {
    let (b, f) = (load_support(body)?, load_function(f)?);
    let d = domain(&b, weight)?;
    let s = solve_neumann(&d, &f, degree)?;
    let id = gamma2_identity(&d, &s);
    Record::new(
        "neumann",
        json!({"body": spec(&b.clone().into()), "f": f, "weight": weight, "degree": degree}),
        &json!({
            "c": s.c,
            "mean": s.mean,
            "interior_residual": s.interior_residual,
            "flux_residual": s.flux_residual,
            "rank": s.rank,
            "coefficients": s.expansion.coeffs,
            "identity": id,
        }),
    )
}

pub fn reilly(body: &Path, u: &Path, weight: WeightMode) -> Result<Record> {
    let b = load_support(body)?;
    let u: Poly2 = load_json(u)?;
    let d = domain(&b, weight)?;
    let r = reilly_residual(&d, &u);
    let cs = cs_pointwise(&d, &u);
    Record::new(
        "reilly",
        json!({"body": spec(&b.clone().into()), "u": u, "weight": weight}),
        &json!({"terms": r, "cs": cs}),
    )
}

pub fn d2n(body: Option<&Path>, f: Option<&Path>, t: Option<f64>, degree: usize) -> Result<Record> {
    match (body, t) {
        (None, Some(t)) => Record::new("d2n", json!({"t": t}), &halfline_d2n(t)?),
        (Some(body), None) => {
            let b = load_support(body)?;
            let f = match f {
                Some(p) => load_function(p)?,
                None => BoundaryFunction::constant(1.0),
            };
            let p = d2n_probe(&WeightedDomain::gaussian(&b)?, &f, degree)?;
            Record::new("d2n", json!({"body": spec(&b.clone().into()), "f": f, "degree": degree}), &p)
        }
        _ => bail!("d2n needs exactly one of --body and --t"),
    }
}

pub fn dual(body: &Path, f: &Path, c_grid: &[f64]) -> Result<Record> {
    let (b, f) = (load_support(body)?, load_function(f)?);
    let r = dual_gap_scan(&b, &f, c_grid)?;
    Record::new("dual", json!({"body": spec(&b.clone().into()), "f": f, "c_grid": c_grid}), &r)
}

pub fn iso(body: &Path) -> Result<Record> {
    let b = load_body(body)?;
    let r = isoperimetric_and_ledoux(&b)?;
    let h = mean_curvature_slack(&b)?;
    // Only defined for gamma(K) >= 1/2.
    let second = iso_second_variation_compare(&b).ok();
    Record::new(
        "iso",
        json!({"body": spec(&b)}),
        &json!({"isoperimetry": r, "mean_curvature": h, "second_variation": second}),
    )
}
