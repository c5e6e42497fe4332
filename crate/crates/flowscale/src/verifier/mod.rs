//! Named verification procedures over the field gallery and grid operators.
//!
//! Each check measures residuals of one mathematical claim (incompressibility,
//! momentum closure, transport identities, vorticity forms, convergence
//! orders) and reports them with explicit tolerances. A check either carries
//! tolerances — then its verdict is `pass` exactly when every toleranced
//! value lies within bounds — or it carries none and is `informational`:
//! measured, reported, but not judged.

mod checks;
mod suite;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::fieldkit::FieldError;
use crate::gridops::GridError;

pub use checks::{
    bouton_residual, check_divergence, couette_diffusion_check, divergence_convergence,
    gaussian_laplacian_check, nse_residual, selfsimilarity_check, vorticity_convergence,
    vorticity_crosscheck,
};
pub use suite::run_suite;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("bad check input: {0}")]
    BadInput(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Informational,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Informational => "informational",
        }
    }
}

/// Outcome of one named check: measured values, the tolerances attached to
/// the judged subset of them, the resulting verdict, and a one-line
/// statement of the claim being exercised.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub check: String,
    pub values: BTreeMap<String, f64>,
    pub tolerances: BTreeMap<String, f64>,
    pub verdict: Verdict,
    pub claim: String,
}

impl VerificationReport {
    /// Builds a report, deriving the verdict: informational when no
    /// tolerances are attached, otherwise pass iff every toleranced value
    /// is within its bound in absolute value.
    pub(crate) fn new(
        check: impl Into<String>,
        claim: impl Into<String>,
        values: BTreeMap<String, f64>,
        tolerances: BTreeMap<String, f64>,
    ) -> VerificationReport {
        let verdict = if tolerances.is_empty() {
            Verdict::Informational
        } else if tolerances
            .iter()
            .all(|(key, tol)| values.get(key).is_some_and(|v| v.abs() <= *tol))
        {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        VerificationReport {
            check: check.into(),
            values,
            tolerances,
            verdict,
            claim: claim.into(),
        }
    }

    /// True unless the verdict is `fail` (informational counts as not
    /// failed).
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    /// Deterministic single-line JSON rendering with sorted keys.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\"check\":");
        out.push_str(&json_string(&self.check));
        out.push_str(",\"values\":");
        push_map(&mut out, &self.values);
        out.push_str(",\"tolerances\":");
        push_map(&mut out, &self.tolerances);
        out.push_str(",\"verdict\":");
        out.push_str(&json_string(self.verdict.as_str()));
        out.push_str(",\"paper_ref\":");
        out.push_str(&json_string(&self.claim));
        out.push('}');
        out
    }
}

/// Formats a float for report JSON: 12 significant digits in scientific
/// notation (a valid JSON number), with negative zero normalized.
pub(crate) fn fmt_f64(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.11e}")
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn push_map(out: &mut String, map: &BTreeMap<String, f64>) {
    out.push('{');
    for (i, (k, v)) in map.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&json_string(k));
        out.push(':');
        out.push_str(&fmt_f64(*v));
    }
    out.push('}');
}

/// Renders a list of reports as a JSON array, one report per line.
pub fn reports_to_json(reports: &[VerificationReport]) -> String {
    let mut out = String::from("[\n");
    for (i, r) in reports.iter().enumerate() {
        out.push_str("  ");
        out.push_str(&r.to_json());
        if i + 1 < reports.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push(']');
    out
}

/// Renders a fixed-width human-readable summary table.
pub fn reports_table(reports: &[VerificationReport]) -> String {
    let name_width = reports
        .iter()
        .map(|r| r.check.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let mut out = String::new();
    out.push_str(&format!("{:<name_width$}  {:<13}  worst/tolerance\n", "check", "verdict"));
    for r in reports {
        let worst = r
            .tolerances
            .iter()
            .filter_map(|(k, tol)| r.values.get(k).map(|v| (v.abs(), *tol)))
            .max_by(|a, b| (a.0 / a.1.max(f64::MIN_POSITIVE))
                .total_cmp(&(b.0 / b.1.max(f64::MIN_POSITIVE))));
        let detail = match worst {
            Some((v, tol)) => format!("{} / {}", fmt_f64(v), fmt_f64(tol)),
            None => "-".to_string(),
        };
        out.push_str(&format!(
            "{:<name_width$}  {:<13}  {detail}\n",
            r.check,
            r.verdict.as_str()
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(entries: &[(&str, f64)]) -> BTreeMap<String, f64> {
        entries.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn verdict_follows_tolerances() {
        let r = VerificationReport::new(
            "demo",
            "claim",
            map(&[("a", 1e-12), ("b", 5.0)]),
            map(&[("a", 1e-10)]),
        );
        assert_eq!(r.verdict, Verdict::Pass);
        let r = VerificationReport::new("demo", "claim", map(&[("a", 1e-8)]), map(&[("a", 1e-10)]));
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(!r.passed());
        let r = VerificationReport::new("demo", "claim", map(&[("a", 1.0)]), map(&[]));
        assert_eq!(r.verdict, Verdict::Informational);
        assert!(r.passed());
    }

    #[test]
    fn json_is_deterministic_and_normalizes_negative_zero() {
        let r = VerificationReport::new(
            "demo/x",
            "a \"quoted\" claim",
            map(&[("z", -0.0), ("a", 0.25)]),
            map(&[("a", 1.0)]),
        );
        let j1 = r.to_json();
        let j2 = r.to_json();
        assert_eq!(j1, j2);
        assert!(j1.contains("\"z\":0.00000000000e0"), "{j1}");
        assert!(j1.contains("\"a\":2.50000000000e-1"));
        assert!(j1.contains("\\\"quoted\\\""));
        // keys sorted
        assert!(j1.find("\"a\"").unwrap() < j1.find("\"z\"").unwrap());
        let parsed: serde_json::Value = serde_json::from_str(&j1).unwrap();
        assert_eq!(parsed["verdict"], "pass");
        assert_eq!(parsed["values"]["a"], 0.25);
    }

    #[test]
    fn report_array_and_table_render() {
        let reports = vec![
            VerificationReport::new("a", "c1", map(&[("v", 0.0)]), map(&[("v", 1.0)])),
            VerificationReport::new("b", "c2", map(&[("v", 2.0)]), map(&[])),
        ];
        let arr = reports_to_json(&reports);
        let parsed: serde_json::Value = serde_json::from_str(&arr).unwrap();
        assert_eq!(parsed.as_array().unwrap().len(), 2);
        let table = reports_table(&reports);
        assert!(table.contains("pass"));
        assert!(table.contains("informational"));
    }
}
