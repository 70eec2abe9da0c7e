//! One-parameter sweeps over a scenario, written as CSV.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use tempocorr::quasiprob::{
    born_quasi_three, born_quasi_two, disturbance_three, disturbance_two, lueders_three, lueders_two,
    nsit_quantifier_two, QuasiDistribution,
};
use tempocorr::witness::{self, LgiVariant};

use crate::config::{ChannelSpec, MeasurementSpec, Scenario, ScenarioConfig};
use crate::report::{build_pdm, three_step};
use crate::{format_value, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    /// Every depolarizing channel's `eta`.
    Eta,
    /// Every Rabi channel's `omega_t`.
    OmegaT,
    /// Polar angle of the first (Bloch) measurement.
    Theta1,
    /// Polar angle of the second (Bloch) measurement.
    Theta2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    Negativity,
    ChshMax,
    N01,
    N012,
    K3,
    LgiVariants,
    QTable,
    PTable,
    DTable,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: Parameter,
    pub range: Range,
    pub outputs: Vec<Output>,
}

fn invalid(path: &str, message: impl ToString) -> CliError {
    CliError::Validation { path: path.to_string(), message: message.to_string() }
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| invalid(&e.path().to_string(), e.into_inner()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::from_json(&crate::read_file(path)?)
    }

    /// `count` evenly spaced points from `start` to `stop` inclusive.
    pub fn grid(&self) -> Vec<f64> {
        let Range { start, stop, count } = self.range;
        (0..count)
            .map(|k| if k + 1 == count { stop } else { start + (stop - start) * k as f64 / (count - 1) as f64 })
            .collect()
    }

    fn validate(&self, base: &ScenarioConfig) -> Result<(), CliError> {
        let Range { start, stop, count } = self.range;
        if count < 2 {
            return Err(invalid("range.count", format!("must be at least 2, found {count}")));
        }
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(invalid("range", format!("need finite start < stop, found {start} and {stop}")));
        }
        if self.outputs.is_empty() {
            return Err(invalid("outputs", "no outputs requested"));
        }
        let mut probe = base.clone();
        if !apply(&mut probe, self.parameter, start) {
            return Err(invalid("parameter", format!("{:?} does not occur in the scenario", self.parameter)));
        }
        for (i, out) in self.outputs.iter().enumerate() {
            let path = format!("outputs[{i}]");
            match out {
                Output::N012 | Output::K3 | Output::LgiVariants if base.steps != 3 => {
                    return Err(invalid(&path, "needs a three-step scenario"));
                }
                Output::ChshMax if base.steps != 2 => return Err(invalid(&path, "needs a two-step scenario")),
                Output::K3 | Output::LgiVariants if base.lgi_axis.is_none() => {
                    return Err(invalid(&path, "needs `lgi_axis` in the scenario"));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Sets the swept parameter; returns false when the scenario has no such parameter.
fn apply(cfg: &mut ScenarioConfig, parameter: Parameter, value: f64) -> bool {
    let mut found = false;
    match parameter {
        Parameter::Eta | Parameter::OmegaT => {
            for ch in &mut cfg.channels {
                match (parameter, ch) {
                    (Parameter::Eta, ChannelSpec::Depolarizing { eta }) => {
                        *eta = value;
                        found = true;
                    }
                    (Parameter::OmegaT, ChannelSpec::UnitaryRabi { omega_t }) => {
                        *omega_t = value;
                        found = true;
                    }
                    _ => {}
                }
            }
        }
        Parameter::Theta1 | Parameter::Theta2 => {
            let index = if parameter == Parameter::Theta1 { 0 } else { 1 };
            if let Some(MeasurementSpec::Bloch { theta, .. }) = cfg.measurements.get_mut(index) {
                *theta = value;
                found = true;
            }
        }
    }
    found
}

fn table_columns(prefix: &str, shape: &[usize]) -> Vec<String> {
    let mut names = vec![prefix.to_string()];
    for &n in shape {
        names = names.iter().flat_map(|p| (0..n).map(move |i| format!("{p}_{i}"))).collect();
    }
    names
}

fn outcome_shape(cfg: &ScenarioConfig, scenario: &Scenario) -> Vec<usize> {
    scenario.measurements[..cfg.steps].iter().map(|m| m.outcomes()).collect()
}

pub fn header(spec: &SweepSpec, shape: &[usize]) -> Vec<String> {
    let mut cols = vec!["param".to_string()];
    for out in &spec.outputs {
        match out {
            Output::Negativity => cols.push("negativity".into()),
            Output::ChshMax => cols.push("chsh_max".into()),
            Output::N01 => cols.push("n01".into()),
            Output::N012 => cols.push("n012".into()),
            Output::K3 => cols.push("k3".into()),
            Output::LgiVariants => cols.extend(LgiVariant::ALL.iter().map(|v| format!("lgi_{}", v.label()))),
            Output::QTable => cols.extend(table_columns("q", shape)),
            Output::PTable => cols.extend(table_columns("p", shape)),
            Output::DTable => cols.extend(table_columns("d", shape)),
        }
    }
    cols
}

fn eval<T>(context: &str, r: tempocorr::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::from_evaluation(context, e))
}

fn row(spec: &SweepSpec, base: &ScenarioConfig, value: f64) -> Result<Vec<f64>, CliError> {
    let mut cfg = base.clone();
    apply(&mut cfg, spec.parameter, value);
    let s = cfg.build()?;
    let pdm = build_pdm(&s)?;
    let (m0, m1) = (&s.measurements[0], &s.measurements[1]);
    let three = s.steps() == 3;
    let mut values = vec![value];

    for out in &spec.outputs {
        match out {
            Output::Negativity => {
                let rep = eval("pdm", witness::nonclassicality_report(&pdm, None))?;
                values.push(rep.negativity);
            }
            Output::ChshMax => values.push(eval("pdm", witness::chsh_max(&pdm))?),
            Output::N01 => values.push(eval("measurements", nsit_quantifier_two(&s.rho, &s.channels[0], m0, m1))?),
            Output::N012 => {
                let d = eval("measurements", disturbance_three(&three_step(&s)))?;
                values.push(d.total.abs_sum());
            }
            Output::K3 => {
                values.push(eval("lgi_axis", witness::lgi_k3(&pdm, s.lgi_axis.as_ref().expect("validated")))?)
            }
            Output::LgiVariants => {
                let class = eval("lgi_axis", witness::lgi_full_class(&pdm, s.lgi_axis.as_ref().expect("validated")))?;
                values.extend(class.iter().map(|v| v.value));
            }
            Output::QTable | Output::PTable | Output::DTable => {
                let table: QuasiDistribution = match (out, three) {
                    (Output::QTable, false) => eval("measurements", born_quasi_two(&pdm, m0, m1))?,
                    (Output::PTable, false) => eval("measurements", lueders_two(&s.rho, &s.channels[0], m0, m1))?,
                    (Output::DTable, false) => eval("measurements", disturbance_two(&s.rho, &s.channels[0], m0, m1))?,
                    (Output::QTable, true) => eval("measurements", born_quasi_three(&three_step(&s)))?,
                    (Output::PTable, true) => eval("measurements", lueders_three(&three_step(&s)))?,
                    _ => eval("measurements", disturbance_three(&three_step(&s)))?.total,
                };
                values.extend_from_slice(table.values());
            }
        }
    }
    Ok(values)
}

/// Evaluates every grid point (in parallel) and returns the CSV text.
pub fn run_sweep(base: &ScenarioConfig, spec: &SweepSpec) -> Result<String, CliError> {
    let scenario = base.build()?;
    spec.validate(base)?;
    let shape = outcome_shape(base, &scenario);
    let rows: Vec<Vec<f64>> = spec.grid().par_iter().map(|&v| row(spec, base, v)).collect::<Result<_, _>>()?;

    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let write_err = |e: csv::Error| invalid("output", e);
    writer.write_record(header(spec, &shape)).map_err(write_err)?;
    for r in rows {
        writer.write_record(r.iter().map(|&v| format_value(v))).map_err(write_err)?;
    }
    writer.flush().map_err(|e| invalid("output", e))?;
    let bytes = writer.into_inner().map_err(|e| invalid("output", e))?;
    Ok(String::from_utf8(bytes).expect("CSV of ASCII numbers"))
}

pub fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    let mut file = std::fs::File::create(path).map_err(io)?;
    file.write_all(text.as_bytes()).map_err(io)
}
