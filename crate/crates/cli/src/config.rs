use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// Read a JSON file, reporting schema errors with the path of the offending key.
pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_json(&text).with_context(|| format!("in {}", path.display()))
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        anyhow::anyhow!("at `{path}`: {}", e.into_inner())
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Not echoed into reports, so the output location does not change their bytes.
    #[serde(skip_serializing)]
    pub out: PathBuf,
    /// Boundary grid size for generated bodies.
    pub grid: usize,
    pub profile_points: usize,
    pub neumann_degree: usize,
    pub cases: CaseCounts,
    pub tol: Tolerances,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 20_240_601,
            out: PathBuf::from("gaussbm-report"),
            grid: 512,
            profile_points: 65,
            neumann_degree: 12,
            cases: CaseCounts::default(),
            tol: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CaseCounts {
    pub poincare: usize,
    pub variations: usize,
    pub ehrhard: usize,
    pub reilly_bodies: usize,
    pub reilly_polynomials: usize,
    pub neumann: usize,
    pub dual: usize,
    pub chain: usize,
    pub classical: usize,
}

impl Default for CaseCounts {
    fn default() -> Self {
        Self {
            poincare: 200,
            variations: 100,
            ehrhard: 50,
            reilly_bodies: 5,
            reilly_polynomials: 20,
            neumann: 3,
            dual: 50,
            chain: 20,
            classical: 20,
        }
    }
}

/// Every entry bounds an error or a negative slack; `--tol` overrides all of them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub halfplane: f64,
    pub disc: f64,
    pub poincare: f64,
    pub zero_mean: f64,
    pub fd_first: f64,
    pub fd_second: f64,
    pub concavity: f64,
    pub linearity: f64,
    pub isoperimetric: f64,
    pub ledoux: f64,
    pub reilly: f64,
    pub cauchy_schwarz: f64,
    pub neumann_exact: f64,
    pub flux: f64,
    pub gamma2: f64,
    pub dual: f64,
    pub chain: f64,
    pub halfline: f64,
    pub steiner: f64,
    pub steiner_quadratic: f64,
    pub minkowski: f64,
    pub minkowski_disc: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            halfplane: 1e-12,
            disc: 1e-10,
            poincare: 1e-7,
            zero_mean: 1e-10,
            fd_first: 1e-6,
            fd_second: 1e-5,
            concavity: 1e-8,
            linearity: 1e-12,
            isoperimetric: 1e-9,
            ledoux: 5e-2,
            reilly: 1e-8,
            cauchy_schwarz: 1e-12,
            neumann_exact: 1e-10,
            flux: 1e-6,
            gamma2: 1e-4,
            dual: 1e-7,
            chain: 1e-6,
            halfline: 1e-8,
            steiner: 1e-9,
            steiner_quadratic: 1e-8,
            minkowski: 1e-9,
            minkowski_disc: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn uniform(x: f64) -> Self {
        Self {
            halfplane: x,
            disc: x,
            poincare: x,
            zero_mean: x,
            fd_first: x,
            fd_second: x,
            concavity: x,
            linearity: x,
            isoperimetric: x,
            ledoux: x,
            reilly: x,
            cauchy_schwarz: x,
            neumann_exact: x,
            flux: x,
            gamma2: x,
            dual: x,
            chain: x,
            halfline: x,
            steiner: x,
            steiner_quadratic: x,
            minkowski: x,
            minkowski_disc: x,
        }
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub grid: Option<usize>,
    pub tol: Option<f64>,
}

impl SuiteConfig {
    pub fn load(path: Option<&Path>, overrides: &Overrides) -> Result<Self> {
        let mut config = match path {
            Some(p) => load_json(p)?,
            None => Self::default(),
        };
        if let Some(s) = overrides.seed {
            config.seed = s;
        }
        if let Some(o) = &overrides.out {
            config.out = o.clone();
        }
        if let Some(g) = overrides.grid {
            config.grid = g;
        }
        if let Some(t) = overrides.tol {
            config.tol = Tolerances::uniform(t);
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        anyhow::ensure!(self.grid >= 16, "grid: must be at least 16, got {}", self.grid);
        anyhow::ensure!(
            self.profile_points >= 3,
            "profile_points: must be at least 3, got {}",
            self.profile_points
        );
        anyhow::ensure!(
            (2..=24).contains(&self.neumann_degree),
            "neumann_degree: must lie in 2..=24, got {}",
            self.neumann_degree
        );
        let t = serde_json::to_value(&self.tol)?;
        for (name, v) in t.as_object().expect("struct serializes to an object") {
            let v = v.as_f64().unwrap_or(f64::NAN);
            anyhow::ensure!(v >= 0.0 && v.is_finite(), "tol.{name}: must be a finite nonnegative number, got {v}");
        }
        Ok(())
    }
}
