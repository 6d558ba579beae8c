use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::SuiteConfig;

pub const SCHEMA: &str = "gauss-bm-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    ReportOnly,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ReportOnly => "report-only",
        }
    }
}

/// What the headline number measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Gap,
    Slack,
    Residual,
    /// A quantity that must reach a threshold.
    Witness,
    Margin,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Gap => "gap",
            Metric::Slack => "slack",
            Metric::Residual => "residual",
            Metric::Witness => "witness",
            Metric::Margin => "margin",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    /// Stable identifier, `NN-suite/case`.
    pub id: String,
    pub name: String,
    pub inputs_digest: String,
    pub metric: Metric,
    pub value: f64,
    pub tolerance: Option<f64>,
    pub verdict: Verdict,
    pub values: Value,
}

pub fn digest(inputs: &Value) -> String {
    let bytes = serde_json::to_vec(inputs).expect("JSON values serialize");
    Sha256::digest(&bytes).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub struct CheckBuilder {
    id: String,
    name: String,
    inputs: Value,
    values: Value,
}

impl CheckBuilder {
    pub fn new(id: impl Into<String>, name: impl Into<String>, inputs: Value, values: Value) -> Self {
        Self {
            id: id.into(),
            name: name.into(),
            inputs,
            values,
        }
    }

    fn finish(self, metric: Metric, value: f64, tolerance: Option<f64>, verdict: Verdict) -> CheckRecord {
        CheckRecord {
            inputs_digest: digest(&self.inputs),
            id: self.id,
            name: self.name,
            metric,
            value,
            tolerance,
            verdict,
            values: self.values,
        }
    }

    /// Passes when `value >= -tol` and `extra` holds.
    pub fn lower(self, metric: Metric, value: f64, tol: f64, extra: bool) -> CheckRecord {
        self.finish(metric, value, Some(tol), Verdict::from_bool(value >= -tol && extra))
    }

    /// Passes when `value <= tol` and `extra` holds.
    pub fn upper(self, metric: Metric, value: f64, tol: f64, extra: bool) -> CheckRecord {
        self.finish(metric, value, Some(tol), Verdict::from_bool(value <= tol && extra))
    }

    /// Passes when `value >= threshold` and `extra` holds.
    pub fn witness(self, value: f64, threshold: f64, extra: bool) -> CheckRecord {
        self.finish(Metric::Witness, value, Some(threshold), Verdict::from_bool(value >= threshold && extra))
    }

    pub fn report_only(self, metric: Metric, value: f64) -> CheckRecord {
        self.finish(metric, value, None, Verdict::ReportOnly)
    }

    /// A case that could not be evaluated.
    pub fn error(mut self, message: String) -> CheckRecord {
        self.values = serde_json::json!({ "error": message });
        self.finish(Metric::Residual, f64::NAN, None, Verdict::Fail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub report_only: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub version: &'static str,
    pub config: SuiteConfig,
    pub summary: Summary,
    pub checks: Vec<CheckRecord>,
}

impl ReportDocument {
    pub fn new(config: SuiteConfig, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary {
            total: checks.len(),
            ..Default::default()
        };
        for c in &checks {
            match c.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::ReportOnly => summary.report_only += 1,
            }
        }
        Self {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION"),
            config,
            summary,
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).with_context(|| format!("writing {}", path.display()))
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
        w.write_record(["id", "name", "inputs_digest", "metric", "value", "tolerance", "verdict"])?;
        for c in &self.checks {
            w.write_record([
                c.id.as_str(),
                c.name.as_str(),
                c.inputs_digest.as_str(),
                c.metric.as_str(),
                &format!("{:e}", c.value),
                &c.tolerance.map(|t| format!("{t:e}")).unwrap_or_default(),
                c.verdict.as_str(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn rec(id: &str, v: f64) -> CheckRecord {
        CheckBuilder::new(id, "x", json!({ "id": id }), json!({})).lower(Metric::Gap, v, 1e-7, true)
    }

    #[test]
    fn verdict_thresholds() {
        assert_eq!(rec("a", -1e-8).verdict, Verdict::Pass);
        assert_eq!(rec("a", -1e-6).verdict, Verdict::Fail);
        let b = CheckBuilder::new("b", "x", json!(1), json!({}));
        assert_eq!(b.upper(Metric::Residual, f64::NAN, 1.0, true).verdict, Verdict::Fail);
    }

    #[test]
    fn summary_counts_and_order() {
        let ro = CheckBuilder::new("c", "x", json!(0), json!({})).report_only(Metric::Margin, 0.3);
        let doc = ReportDocument::new(SuiteConfig::default(), vec![rec("b", -1.0), ro, rec("a", 1.0)]);
        let ids: Vec<_> = doc.checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c"]);
        assert_eq!(
            doc.summary,
            Summary {
                total: 3,
                pass: 1,
                fail: 1,
                report_only: 1
            }
        );
        assert!(doc.to_json().contains("\"schema\": \"gauss-bm-report/1\""));
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest(&json!({"a": 1})), digest(&json!({"a": 1})));
        assert_ne!(digest(&json!({"a": 1})), digest(&json!({"a": 2})));
        assert_eq!(digest(&json!(null)).len(), 16);
    }
}
