//! Seeded end-to-end runs and their JSON reports.

use std::fmt::Write as _;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::check::{serialize_f64, Check};
use crate::error::{GeometryError, Result};
use crate::examples::{ExampleTag, TANGENCY_TOL};
use crate::theorems::{theorem_suite, ConnectionSelection, SuiteConfig};

pub const SCHEMA_VERSION: &str = "1";

/// Smallest singular value an embedding Jacobian may have.
pub const MIN_JACOBIAN_SV: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub example: ExampleTag,
    pub connection: ConnectionSelection,
    pub points: usize,
    pub planes: usize,
    pub seed: u64,
    pub tol: f64,
}

impl RunConfig {
    pub fn new(example: ExampleTag) -> Self {
        Self {
            example,
            connection: ConnectionSelection::All,
            points: 20,
            planes: 10,
            seed: 42,
            tol: 1e-8,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points == 0 {
            return Err(GeometryError::InvalidConfig("--points must be at least 1".into()));
        }
        if self.planes == 0 {
            return Err(GeometryError::InvalidConfig("--planes must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(GeometryError::InvalidConfig(format!("--tol must be positive, got {}", self.tol)));
        }
        match self.example {
            ExampleTag::Flat { m, t } if m == 0 || t == 0 => Err(GeometryError::InvalidConfig(format!(
                "flat example needs m ≥ 1 and t ≥ 1, got m={m}, t={t}"
            ))),
            ExampleTag::Sphere { n, s } if n == 0 || s < 2 => Err(GeometryError::InvalidConfig(format!(
                "sphere example needs n ≥ 1 and s ≥ 2, got n={n}, s={s}"
            ))),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleParams {
    pub name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub example: ExampleParams,
    pub connection: &'static str,
    pub points: usize,
    pub planes: usize,
    pub seed: u64,
    #[serde(serialize_with = "serialize_f64")]
    pub tol: f64,
}

impl From<&RunConfig> for ConfigEcho {
    fn from(c: &RunConfig) -> Self {
        let (m, t, n, s) = match c.example {
            ExampleTag::Flat { m, t } => (Some(m), Some(t), None, None),
            ExampleTag::Sphere { n, s } => (None, None, Some(n), Some(s)),
        };
        Self {
            example: ExampleParams {
                name: c.example.name(),
                m,
                t,
                n,
                s,
            },
            connection: c.connection.tag(),
            points: c.points,
            planes: c.planes,
            seed: c.seed,
            tol: c.tol,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub config: ConfigEcho,
    pub checks: Vec<Check>,
    pub pass: bool,
    #[serde(serialize_with = "serialize_f64")]
    pub wall_time_seconds: f64,
}

impl Report {
    pub fn new(config: ConfigEcho, mut checks: Vec<Check>, wall_time_seconds: f64) -> Self {
        checks.sort_by(|a, b| (&a.name, &a.connection).cmp(&(&b.name, &b.connection)));
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        Self {
            schema: SCHEMA_VERSION,
            config,
            checks,
            pass,
            wall_time_seconds,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// One line per check followed by a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let rel = match c.expect {
                crate::check::Expect::Below => "<",
                crate::check::Expect::Above => ">",
            };
            let _ = writeln!(
                out,
                "{} {:<32} {:<10} {:>12.3e} {rel} {:.0e}  {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.connection,
                c.max_residual,
                c.tol,
                c.anchor
            );
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{}: {} checks, {} failed ({:.2}s)",
            if self.pass { "PASS" } else { "FAIL" },
            self.checks.len(),
            failed,
            self.wall_time_seconds
        );
        out
    }
}

/// Builds the example, validates its structure and runs the theorem suite.
pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let ex = config.example.build()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let points = ex.sample_points(&mut rng, config.points)?;
    let s = &ex.structure;
    let mut checks = Vec::new();
    checks.extend(s.validate_axioms(&points, config.tol)?.checks);
    checks.extend(s.check_normality(&points, config.tol)?.checks);
    checks.extend(s.check_s_manifold(&points, config.tol)?.checks);
    if let Some(e) = &ex.embedding {
        checks.push(Check::below(
            "tangency",
            "structure",
            "J xi_pulled = xi_ambient",
            ex.tangency_residual(&points)?,
            TANGENCY_TOL,
        ));
        let mut min_sv = f64::INFINITY;
        for p in &points {
            let sv = e.min_singular_value(p)?;
            min_sv = if sv.is_nan() { f64::NAN } else { min_sv.min(sv) };
        }
        checks.push(Check::above(
            "embedding_rank",
            "structure",
            "min singular value of J",
            min_sv,
            MIN_JACOBIAN_SV,
        ));
    }
    let suite = SuiteConfig {
        planes: config.planes,
        seed: config.seed,
        tol: config.tol,
    };
    checks.extend(theorem_suite(&ex, config.connection, &points, &suite)?.checks);
    Ok(Report::new(config.into(), checks, start.elapsed().as_secs_f64()))
}

/// Pretty-printed JSON with a trailing newline.
pub fn emit_json(report: &Report) -> Result<Vec<u8>> {
    if report.checks.is_empty() {
        return Err(GeometryError::InvalidConfig("refusing to emit a report with no checks".into()));
    }
    let mut bytes = serde_json::to_vec_pretty(report).map_err(|e| GeometryError::InvalidConfig(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(tag: ExampleTag) -> RunConfig {
        RunConfig {
            points: 2,
            planes: 3,
            ..RunConfig::new(tag)
        }
    }

    #[test]
    fn flat_run_passes_and_is_sorted() {
        let r = run(&small(ExampleTag::Flat { m: 1, t: 1 })).unwrap();
        assert!(r.pass, "{}", r.to_text());
        let names: Vec<_> = r.checks.iter().map(|c| (&c.name, &c.connection)).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn invalid_configs() {
        let mut c = small(ExampleTag::Flat { m: 1, t: 1 });
        c.points = 0;
        assert!(run(&c).is_err());
        c.points = 1;
        c.tol = 0.0;
        assert!(run(&c).is_err());
        assert!(run(&small(ExampleTag::Sphere { n: 1, s: 1 })).is_err());
    }

    #[test]
    fn failing_check_fails_report() {
        let checks = vec![
            Check::below("a", "x", "", 0.0, 1.0),
            Check::below("b", "x", "", 2.0, 1.0),
        ];
        let r = Report::new((&small(ExampleTag::Flat { m: 1, t: 1 })).into(), checks, 0.0);
        assert!(!r.pass);
        let empty = Report::new((&small(ExampleTag::Flat { m: 1, t: 1 })).into(), vec![], 0.0);
        assert!(!empty.pass);
        assert!(emit_json(&empty).is_err());
    }

    #[test]
    fn json_shape() {
        let r = Report::new(
            (&small(ExampleTag::Sphere { n: 2, s: 2 })).into(),
            vec![Check::below("a", "x", "q", 0.1, f64::NAN)],
            1.5,
        );
        let text = String::from_utf8(emit_json(&r).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema"], "1");
        assert_eq!(v["config"]["example"]["n"], 2);
        assert!(v["config"]["example"].get("m").is_none());
        assert!(v["checks"][0]["tol"].is_null());
        assert!(text.contains("1.0000000000000001e-1"));
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys.len(), 5);
    }
}
