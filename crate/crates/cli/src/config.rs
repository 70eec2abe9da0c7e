//! Scenario files: JSON description of an initial state, channels and measurements.

use std::path::Path;

use serde::{Deserialize, Serialize};
use tempocorr::linalg::{bloch_observable, ComplexMatrix, C64};
use tempocorr::pdm::validate_density_matrix;
use tempocorr::quasiprob::{Axis, ProjectiveMeasurement};
use tempocorr::QuantumChannel;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Complex {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// Row-major complex matrix as nested arrays of `{"re", "im"}` entries.
pub type MatrixEntries = Vec<Vec<Complex>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialState {
    /// Qubit Bloch vector with norm at most one.
    Bloch([f64; 3]),
    Matrix(MatrixEntries),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelSpec {
    Identity {},
    Depolarizing {
        eta: f64,
    },
    /// `exp(-i (omega_t / 2) sigma_x)`.
    UnitaryRabi {
        omega_t: f64,
    },
    Kraus {
        operators: Vec<MatrixEntries>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisName {
    X,
    Y,
    Z,
}

impl From<AxisName> for Axis {
    fn from(a: AxisName) -> Self {
        match a {
            AxisName::X => Axis::X,
            AxisName::Y => Axis::Y,
            AxisName::Z => Axis::Z,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasurementSpec {
    PauliAxis { axis: AxisName },
    Bloch { theta: f64, phi: f64 },
    Projectors { projectors: Vec<MatrixEntries> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub steps: usize,
    pub initial_state: InitialState,
    pub channels: Vec<ChannelSpec>,
    pub measurements: Vec<MeasurementSpec>,
    /// Observable direction for Leggett-Garg values in three-step scenarios.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lgi_axis: Option<[f64; 3]>,
}

/// Validated scenario ready for evaluation.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub rho: ComplexMatrix,
    pub channels: Vec<QuantumChannel>,
    pub measurements: Vec<ProjectiveMeasurement>,
    pub lgi_axis: Option<[f64; 3]>,
}

impl Scenario {
    pub fn steps(&self) -> usize {
        self.measurements.len()
    }
}

fn invalid(path: impl Into<String>, message: impl ToString) -> CliError {
    CliError::Validation { path: path.into(), message: message.to_string() }
}

fn build_matrix(entries: &MatrixEntries, path: &str) -> Result<ComplexMatrix, CliError> {
    let dim = entries.len();
    if let Some((r, row)) = entries.iter().enumerate().find(|(_, row)| row.len() != dim) {
        return Err(invalid(format!("{path}[{r}]"), format!("row has {} entries, expected {dim}", row.len())));
    }
    let data = entries.iter().flatten().map(|c| C64::new(c.re, c.im)).collect();
    ComplexMatrix::new(dim, data).map_err(|e| invalid(path, e))
}

fn matrix_entries(m: &ComplexMatrix) -> MatrixEntries {
    (0..m.dim())
        .map(|r| {
            (0..m.dim())
                .map(|c| {
                    let z = m.get(r, c);
                    Complex { re: z.re, im: z.im }
                })
                .collect()
        })
        .collect()
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            invalid(if path == "." { String::from("(root)") } else { path }, e.into_inner())
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::from_json(&crate::read_file(path)?)
    }

    pub fn build(&self) -> Result<Scenario, CliError> {
        if !(2..=3).contains(&self.steps) {
            return Err(invalid("steps", format!("must be 2 or 3, found {}", self.steps)));
        }
        if self.channels.len() != self.steps - 1 {
            return Err(invalid(
                "channels",
                format!("expected {} channels for {} steps, found {}", self.steps - 1, self.steps, self.channels.len()),
            ));
        }
        if self.measurements.len() != self.steps {
            return Err(invalid(
                "measurements",
                format!("expected {} measurements, found {}", self.steps, self.measurements.len()),
            ));
        }

        let rho = match &self.initial_state {
            InitialState::Bloch(r) => {
                let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > 1.0 + tempocorr::tol::DENSITY {
                    return Err(invalid("initial_state", format!("Bloch vector norm {norm} exceeds 1")));
                }
                (&ComplexMatrix::identity(2) + &bloch_observable(*r)).scale_real(0.5)
            }
            InitialState::Matrix(entries) => build_matrix(entries, "initial_state")?,
        };
        validate_density_matrix(&rho).map_err(|e| invalid("initial_state", e))?;
        let dim = rho.dim();

        let mut channels = Vec::with_capacity(self.channels.len());
        for (i, spec) in self.channels.iter().enumerate() {
            let path = format!("channels[{i}]");
            let ch = match spec {
                ChannelSpec::Identity {} => QuantumChannel::identity(dim),
                ChannelSpec::Depolarizing { eta } => {
                    QuantumChannel::depolarizing(*eta).map_err(|e| invalid(format!("{path}.eta"), e))?
                }
                ChannelSpec::UnitaryRabi { omega_t } => {
                    QuantumChannel::rabi(*omega_t).map_err(|e| invalid(format!("{path}.omega_t"), e))?
                }
                ChannelSpec::Kraus { operators } => {
                    let ops = operators
                        .iter()
                        .enumerate()
                        .map(|(k, op)| build_matrix(op, &format!("{path}.operators[{k}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    QuantumChannel::new(ops).map_err(|e| invalid(format!("{path}.operators"), e))?
                }
            };
            if ch.dim() != dim {
                return Err(invalid(path, format!("acts on dimension {}, state has dimension {dim}", ch.dim())));
            }
            channels.push(ch);
        }

        let mut measurements = Vec::with_capacity(self.measurements.len());
        for (i, spec) in self.measurements.iter().enumerate() {
            let path = format!("measurements[{i}]");
            let qubit_only = |m: ProjectiveMeasurement| {
                if dim == 2 {
                    Ok(m)
                } else {
                    Err(invalid(&path, format!("Bloch measurements need a qubit, state has dimension {dim}")))
                }
            };
            let m = match spec {
                MeasurementSpec::PauliAxis { axis } => qubit_only(ProjectiveMeasurement::pauli_axis((*axis).into()))?,
                MeasurementSpec::Bloch { theta, phi } => qubit_only(ProjectiveMeasurement::bloch(*theta, *phi))?,
                MeasurementSpec::Projectors { projectors } => {
                    let ps = projectors
                        .iter()
                        .enumerate()
                        .map(|(k, p)| build_matrix(p, &format!("{path}.projectors[{k}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    let m = ProjectiveMeasurement::new(ps).map_err(|e| invalid(format!("{path}.projectors"), e))?;
                    if m.dim() != dim {
                        return Err(invalid(path, format!("acts on dimension {}, state has dimension {dim}", m.dim())));
                    }
                    m
                }
            };
            measurements.push(m);
        }

        if let Some(q) = &self.lgi_axis {
            let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > tempocorr::tol::UNIT_VECTOR {
                return Err(invalid("lgi_axis", format!("must be a unit vector, norm is {norm}")));
            }
            if dim != 2 {
                return Err(invalid("lgi_axis", "Leggett-Garg values need qubit steps"));
            }
        }

        Ok(Scenario { rho, channels, measurements, lgi_axis: self.lgi_axis })
    }
}

impl InitialState {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        InitialState::Matrix(matrix_entries(m))
    }
}
