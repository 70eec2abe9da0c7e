//! End-to-end evaluation of one scenario into a JSON-serializable report.

use serde::{Deserialize, Serialize};
use tempocorr::quasiprob::{
    born_quasi_three, born_quasi_three_from_pdm, born_quasi_two, disturbance_three, disturbance_two, lueders_three,
    lueders_two, margenau_hill_two, nsit_condition_report_with_tolerance, nsit_deviation_two, QuasiDistribution,
    ThreeStep,
};
use tempocorr::witness::{self, LgiValue, MrCertificate, TemporalEntanglement};
use tempocorr::{tol, Pdm};

use crate::config::Scenario;
use crate::{clean, CliError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Table {
    pub shape: Vec<usize>,
    pub values: Vec<f64>,
}

impl From<&QuasiDistribution> for Table {
    fn from(d: &QuasiDistribution) -> Self {
        Table { shape: d.shape().to_vec(), values: d.values().iter().map(|&v| clean(v)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisturbanceTerms {
    pub d_02_012bar: Table,
    pub d_2_12bar: Table,
    pub d_012bar_02bar: Table,
    pub d_12_012bar: Table,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionEntry {
    pub name: String,
    pub max_deviation: f64,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LgiEntry {
    pub variant: String,
    pub value: f64,
    pub violated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    GuaranteedAllMeasurements,
    NotGuaranteed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Entanglement {
    EntangledByNegativity,
    EntangledByPpt,
    SeparablePpt2x2,
    PptInconclusive,
}

impl From<MrCertificate> for Certificate {
    fn from(c: MrCertificate) -> Self {
        match c {
            MrCertificate::GuaranteedAllMeasurements => Certificate::GuaranteedAllMeasurements,
            MrCertificate::NotGuaranteed => Certificate::NotGuaranteed,
        }
    }
}

impl From<TemporalEntanglement> for Entanglement {
    fn from(e: TemporalEntanglement) -> Self {
        match e {
            TemporalEntanglement::EntangledByNegativity => Entanglement::EntangledByNegativity,
            TemporalEntanglement::EntangledByPPT => Entanglement::EntangledByPpt,
            TemporalEntanglement::SeparablePPT2x2 => Entanglement::SeparablePpt2x2,
            TemporalEntanglement::PPTInconclusive => Entanglement::PptInconclusive,
        }
    }
}

/// Closed set of report fields; absent quantities serialize as `null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub steps: usize,
    pub step_dims: Vec<usize>,
    pub eigenvalues: Vec<f64>,
    pub negativity: f64,
    pub psd: bool,
    pub mr_certificate: Certificate,
    pub entanglement: Entanglement,
    pub chsh_max: Option<f64>,
    pub q_table: Table,
    pub p_table: Table,
    pub d_table: Table,
    pub d_subterms: Option<DisturbanceTerms>,
    pub nsit_quantifier: f64,
    pub nsit_tolerance: f64,
    pub nsit_conditions: Vec<ConditionEntry>,
    pub k3: Option<f64>,
    pub lgi: Option<Vec<LgiEntry>>,
}

pub const REPORT_FIELDS: [&str; 17] = [
    "steps",
    "step_dims",
    "eigenvalues",
    "negativity",
    "psd",
    "mr_certificate",
    "entanglement",
    "chsh_max",
    "q_table",
    "p_table",
    "d_table",
    "d_subterms",
    "nsit_quantifier",
    "nsit_tolerance",
    "nsit_conditions",
    "k3",
    "lgi",
];

fn eval<T>(context: &str, r: tempocorr::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::from_evaluation(context, e))
}

/// Builds the PDM for all configured steps.
pub fn build_pdm(s: &Scenario) -> Result<Pdm, CliError> {
    let mut pdm = eval("channels[0]", Pdm::two_step(&s.rho, &s.channels[0]))?;
    for (i, ch) in s.channels.iter().enumerate().skip(1) {
        pdm = eval(&format!("channels[{i}]"), pdm.extend(ch))?;
    }
    Ok(pdm)
}

pub(crate) fn three_step(s: &Scenario) -> ThreeStep<'_> {
    ThreeStep {
        rho: &s.rho,
        e1: &s.channels[0],
        e2: &s.channels[1],
        m0: &s.measurements[0],
        m1: &s.measurements[1],
        m2: &s.measurements[2],
    }
}

fn require_agreement(check: &'static str, a: &QuasiDistribution, b: &QuasiDistribution) -> Result<(), CliError> {
    let deviation = a.max_abs_diff(b);
    if deviation > tol::DUAL_PATH {
        return Err(CliError::Numeric(tempocorr::Error::Inconsistent { check, deviation }));
    }
    Ok(())
}

fn lgi_entries(values: &[LgiValue]) -> Vec<LgiEntry> {
    values
        .iter()
        .map(|v| LgiEntry { variant: v.variant.label().to_string(), value: clean(v.value), violated: v.violated })
        .collect()
}

pub fn evaluate(s: &Scenario, nsit_tolerance: f64) -> Result<Report, CliError> {
    let pdm = build_pdm(s)?;
    let eig = eval("pdm", pdm.eigen())?;
    let summary = eval("pdm", witness::nonclassicality_report(&pdm, s.lgi_axis.as_ref()))?;
    let (m0, m1) = (&s.measurements[0], &s.measurements[1]);

    let (q, p, d, d_subterms, nsit_quantifier, nsit_conditions) = if s.steps() == 2 {
        let e = &s.channels[0];
        let q = eval("measurements", born_quasi_two(&pdm, m0, m1))?;
        let mh = eval("measurements", margenau_hill_two(&s.rho, e, m0, m1))?;
        require_agreement("Born rule on the PDM equals the Margenau-Hill form", &q, &mh)?;
        let p = eval("measurements", lueders_two(&s.rho, e, m0, m1))?;
        let d = eval("measurements", disturbance_two(&s.rho, e, m0, m1))?;
        let n = d.abs_sum();
        let dev = eval("measurements", nsit_deviation_two(&s.rho, e, m0, m1))?;
        let conditions = vec![ConditionEntry {
            name: "nsit_0bar1".into(),
            max_deviation: clean(dev),
            satisfied: dev <= nsit_tolerance,
        }];
        (q, p, d, None, n, conditions)
    } else {
        let st = three_step(s);
        let q = eval("measurements", born_quasi_three(&st))?;
        let via_pdm = eval("measurements", born_quasi_three_from_pdm(&pdm, m0, m1, &s.measurements[2]))?;
        require_agreement("nested quasiprobability equals the PDM trace form", &q, &via_pdm)?;
        let p = eval("measurements", lueders_three(&st))?;
        let breakdown = eval("measurements", disturbance_three(&st))?;
        let report = eval("measurements", nsit_condition_report_with_tolerance(&st, nsit_tolerance))?;
        let conditions = report
            .checks
            .iter()
            .map(|c| ConditionEntry {
                name: c.condition.label().to_string(),
                max_deviation: clean(c.max_deviation),
                satisfied: c.satisfied,
            })
            .collect();
        let terms = DisturbanceTerms {
            d_02_012bar: (&breakdown.d_02_012bar).into(),
            d_2_12bar: (&breakdown.d_2_12bar).into(),
            d_012bar_02bar: (&breakdown.d_012bar_02bar).into(),
            d_12_012bar: (&breakdown.d_12_012bar).into(),
        };
        let n = breakdown.total.abs_sum();
        (q, p, breakdown.total, Some(terms), n, conditions)
    };

    let k3 = match (&summary.lgi_values, s.lgi_axis) {
        (Some(_), Some(axis)) => Some(clean(eval("lgi_axis", witness::lgi_k3(&pdm, &axis))?)),
        _ => None,
    };

    Ok(Report {
        steps: pdm.steps(),
        step_dims: pdm.step_dims().to_vec(),
        eigenvalues: eig.eigenvalues().iter().map(|&v| clean(v)).collect(),
        negativity: clean(summary.negativity),
        psd: summary.psd,
        mr_certificate: summary.mr_certificate.into(),
        entanglement: summary.entanglement.into(),
        chsh_max: summary.chsh_max.map(clean),
        q_table: (&q).into(),
        p_table: (&p).into(),
        d_table: (&d).into(),
        d_subterms,
        nsit_quantifier: clean(nsit_quantifier),
        nsit_tolerance,
        nsit_conditions,
        k3,
        lgi: summary.lgi_values.as_deref().map(lgi_entries),
    })
}
