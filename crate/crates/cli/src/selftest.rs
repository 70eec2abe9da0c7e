//! Golden-matrix checks and dual-path identities over the bundled scenarios.

use std::fmt::Write as _;

use serde::Deserialize;
use tempocorr::linalg::ComplexMatrix;
use tempocorr::quasiprob::{
    born_quasi_three, born_quasi_three_from_pdm, born_quasi_two, disturbance_three, disturbance_two, lueders_three,
    lueders_two, margenau_hill_two, QuasiDistribution,
};
use tempocorr::tol;

use crate::config::{Scenario, ScenarioConfig};
use crate::report::{build_pdm, three_step};
use crate::CliError;

pub const BUNDLED_GOLDEN: &str = include_str!("../golden/matrices.json");

pub const BUNDLED_SCENARIOS: [(&str, &str); 5] = [
    ("maximally_mixed_identity", include_str!("../scenarios/maximally_mixed_identity.json")),
    ("maximally_mixed_depolarizing", include_str!("../scenarios/maximally_mixed_depolarizing.json")),
    ("pure_depolarizing", include_str!("../scenarios/pure_depolarizing.json")),
    ("rabi_three_step", include_str!("../scenarios/rabi_three_step.json")),
    ("three_step_identity", include_str!("../scenarios/three_step_identity.json")),
];

/// Entrywise tolerance for golden PDM matrices.
pub const GOLDEN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenMatrix {
    pub name: String,
    pub scenario: ScenarioConfig,
    /// Real row-major entries; every golden PDM here is real.
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub checks: Vec<Check>,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().map(|c| c.max_deviation).fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{verdict} {} max_deviation={:.3e} tolerance={:.0e}",
                c.name, c.max_deviation, c.tolerance
            );
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        let _ = writeln!(
            out,
            "{passed}/{} checks passed, overall max deviation {:.3e}",
            self.checks.len(),
            self.max_deviation()
        );
        out
    }
}

fn eval<T>(context: &str, r: tempocorr::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::from_evaluation(context, e))
}

fn parse_golden(text: &str) -> Result<Vec<GoldenMatrix>, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| CliError::Validation {
        path: format!("golden{}", e.path()).replace("golden.", "golden"),
        message: e.into_inner().to_string(),
    })
}

fn golden_deviation(g: &GoldenMatrix) -> Result<f64, CliError> {
    let pdm = build_pdm(&g.scenario.build()?)?;
    let m = pdm.matrix();
    if g.matrix.len() != m.dim() || g.matrix.iter().any(|row| row.len() != m.dim()) {
        return Ok(f64::INFINITY);
    }
    let rows: Vec<f64> = g.matrix.iter().flatten().copied().collect();
    let want = eval("golden", ComplexMatrix::from_real(m.dim(), &rows))?;
    Ok(m.max_abs_diff(&want))
}

fn diff(a: &QuasiDistribution, b: &QuasiDistribution) -> f64 {
    a.max_abs_diff(b)
}

fn sum(tables: &[&QuasiDistribution]) -> Result<QuasiDistribution, CliError> {
    let zero = QuasiDistribution::new(tables[0].shape().to_vec(), vec![0.0; tables[0].values().len()]);
    let mut acc = eval("tables", zero)?;
    for t in tables {
        let neg = eval("tables", QuasiDistribution::new(t.shape().to_vec(), t.values().iter().map(|v| -v).collect()))?;
        acc = eval("tables", acc.sub(&neg))?;
    }
    Ok(acc)
}

/// Dual-path identities on one scenario, as `(suffix, deviation)` pairs.
fn dual_paths(s: &Scenario) -> Result<Vec<(&'static str, f64)>, CliError> {
    let mut out = Vec::new();
    let mut state = s.rho.clone();
    let mut kraus_choi: f64 = 0.0;
    for ch in &s.channels {
        let direct = eval("channels", ch.apply(&state))?;
        let via = eval("channels", ch.apply_via_choi(&state))?;
        kraus_choi = kraus_choi.max(direct.max_abs_diff(&via));
        state = direct;
    }
    out.push(("kraus_vs_choi", kraus_choi));

    let pdm = build_pdm(s)?;
    let (m0, m1) = (&s.measurements[0], &s.measurements[1]);
    // The library's own disturbance routines refuse inconsistent inputs; a
    // refusal is reported as an infinite deviation so the check still prints.
    if s.steps() == 2 {
        let e = &s.channels[0];
        let q = eval("measurements", born_quasi_two(&pdm, m0, m1))?;
        let mh = eval("measurements", margenau_hill_two(&s.rho, e, m0, m1))?;
        out.push(("born_vs_margenau_hill", diff(&q, &mh)));
        let p = eval("measurements", lueders_two(&s.rho, e, m0, m1))?;
        let qpd = match disturbance_two(&s.rho, e, m0, m1) {
            Ok(d) => diff(&q, &sum(&[&p, &d])?),
            Err(_) => f64::INFINITY,
        };
        out.push(("q_equals_p_plus_d", qpd));
    } else {
        let st = three_step(s);
        let q = eval("measurements", born_quasi_three(&st))?;
        let via = eval("measurements", born_quasi_three_from_pdm(&pdm, m0, m1, &s.measurements[2]))?;
        out.push(("nested_vs_pdm_trace", diff(&q, &via)));
        let p = eval("measurements", lueders_three(&st))?;
        let (qpd, parts) = match disturbance_three(&st) {
            Ok(b) => (diff(&q, &sum(&[&p, &b.total])?), diff(&b.total, &sum(&b.subterms())?)),
            Err(_) => (f64::INFINITY, f64::INFINITY),
        };
        out.push(("q_equals_p_plus_d", qpd));
        out.push(("d_equals_subterm_sum", parts));
    }
    Ok(out)
}

/// Runs every golden check from `golden_text` and the dual-path checks on the bundled scenarios.
pub fn run(golden_text: &str) -> Result<Summary, CliError> {
    let mut checks = Vec::new();
    for g in parse_golden(golden_text)? {
        checks.push(Check {
            max_deviation: golden_deviation(&g)?,
            name: format!("golden/{}", g.name),
            tolerance: GOLDEN_TOLERANCE,
        });
    }
    for (name, text) in BUNDLED_SCENARIOS {
        let scenario = ScenarioConfig::from_json(text)?.build()?;
        for (suffix, max_deviation) in dual_paths(&scenario)? {
            checks.push(Check { name: format!("dual_path/{name}/{suffix}"), max_deviation, tolerance: tol::DUAL_PATH });
        }
    }
    Ok(Summary { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_suite_passes() {
        let summary = run(BUNDLED_GOLDEN).unwrap();
        assert!(summary.all_passed(), "{}", summary.render());
        assert!(summary.max_deviation() < 1e-9);
        assert!(summary.get("golden/mixed_identity").is_some());
        assert_eq!(run(BUNDLED_GOLDEN).unwrap().render(), summary.render());
    }

    #[test]
    fn corrupted_entry_fails_by_name() {
        let mut golden: serde_json::Value = serde_json::from_str(BUNDLED_GOLDEN).unwrap();
        golden[0]["matrix"][0][0] = serde_json::json!(0.75);
        let name = golden[0]["name"].as_str().unwrap().to_string();
        let summary = run(&golden.to_string()).unwrap();
        let check = summary.get(&format!("golden/{name}")).unwrap();
        assert!(!check.passed());
        assert!((check.max_deviation - 0.25).abs() < 1e-12);
        assert!(!summary.all_passed());
        assert!(summary.render().contains(&format!("FAIL golden/{name} max_deviation=2.500e-1")));
    }

    #[test]
    fn wrong_shape_is_infinite_deviation() {
        let mut golden: serde_json::Value = serde_json::from_str(BUNDLED_GOLDEN).unwrap();
        golden[0]["matrix"] = serde_json::json!([[1.0]]);
        let summary = run(&golden.to_string()).unwrap();
        assert!(summary.checks[0].max_deviation.is_infinite());
    }
}
