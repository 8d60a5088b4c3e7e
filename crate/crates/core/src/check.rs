//! Residual records shared by the validators, the theorem suite and the CLI.

use serde::{Serialize, Serializer};

/// Whether an observed value must stay below or exceed its threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    /// `observed < tol` passes (the usual residual test).
    Below,
    /// `observed > tol` passes; used for witnesses that something is *not*
    /// constant or *not* symmetric.
    Above,
}

/// One named identity and the worst residual observed for it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub connection: String,
    pub anchor: String,
    #[serde(serialize_with = "serialize_f64")]
    pub max_residual: f64,
    #[serde(serialize_with = "serialize_f64")]
    pub tol: f64,
    pub expect: Expect,
    pub pass: bool,
}

impl Check {
    pub fn below(
        name: impl Into<String>,
        connection: impl Into<String>,
        anchor: impl Into<String>,
        max_residual: f64,
        tol: f64,
    ) -> Self {
        Self {
            name: name.into(),
            connection: connection.into(),
            anchor: anchor.into(),
            max_residual,
            tol,
            expect: Expect::Below,
            // NaN must never pass
            pass: max_residual < tol,
        }
    }

    pub fn above(
        name: impl Into<String>,
        connection: impl Into<String>,
        anchor: impl Into<String>,
        observed: f64,
        threshold: f64,
    ) -> Self {
        Self {
            name: name.into(),
            connection: connection.into(),
            anchor: anchor.into(),
            max_residual: observed,
            tol: threshold,
            expect: Expect::Above,
            pass: observed > threshold,
        }
    }
}

/// A list of checks from one validator.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Running maximum that lets a NaN win, so a NaN residual is never hidden.
pub(crate) fn worst(acc: f64, value: f64) -> f64 {
    if acc.is_nan() || value.is_nan() {
        f64::NAN
    } else {
        acc.max(value)
    }
}

/// Renders floats with 17 significant digits; non-finite values become `null`.
pub fn serialize_f64<S: Serializer>(value: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    if !value.is_finite() {
        return serializer.serialize_none();
    }
    let text = format!("{value:.16e}");
    let raw = serde_json::value::RawValue::from_string(text).map_err(serde::ser::Error::custom)?;
    raw.serialize(serializer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_never_passes() {
        assert!(!Check::below("x", "c", "a", f64::NAN, 1.0).pass);
        assert!(!Check::above("x", "c", "a", f64::NAN, 1.0).pass);
        assert!(worst(0.0, f64::NAN).is_nan());
        assert!(worst(f64::NAN, 1.0).is_nan());
    }

    #[test]
    fn empty_report_does_not_pass() {
        assert!(!ValidationReport::default().pass());
    }

    #[test]
    fn floats_render_with_seventeen_digits() {
        let c = Check::below("x", "c", "a", 0.1, 1e-8);
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"max_residual\":1.0000000000000001e-1"), "{json}");
        assert!(json.contains("\"tol\":1.0000000000000000e-8"), "{json}");
    }
}
