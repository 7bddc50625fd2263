//! Schedule sweeps and their CSV/JSON reports.

use std::fmt::Write as _;

use serde_json::{json, Value};

use super::{defect, fit_rate, ContractionScenario, Quadrature, Rate, ScenarioError, ScenarioId, TestFunction};
use crate::lie::Basis;
use crate::rational::{to_f64, Rational};

/// Equispaced points of the sup grid on each support.
pub const SUP_GRID_POINTS: usize = 1001;

/// Allowed relative gap between measured and predicted L² defects.
pub const REL_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub epsilon: Rational,
    pub index: Option<u32>,
    pub basis: Basis,
    pub testfn: String,
    pub l2_defect: f64,
    pub sup_defect: f64,
    pub predicted_l2: f64,
    pub rel_err: f64,
    /// The exact defect operator is the zero operator.
    pub exact_zero: bool,
}

/// Fitted rate and monotonicity of one `(basis, test function)` series.
#[derive(Debug, Clone, PartialEq)]
pub struct RateEntry {
    pub basis: Basis,
    pub testfn: String,
    pub rate: Rate,
    /// L² defects never increase along the schedule.
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub scenario: ScenarioId,
    pub params: String,
    pub schedule: Vec<Rational>,
    /// Ordered by schedule position (|ε| descending), then basis, then test function.
    pub rows: Vec<ReportRow>,
    pub rates: Vec<RateEntry>,
}

fn relative_error(measured: f64, predicted: f64) -> f64 {
    if predicted == 0.0 {
        measured.abs()
    } else {
        (measured - predicted).abs() / predicted.abs()
    }
}

/// Defects for every schedule point, basis direction and test function.
pub fn sweep(
    scenario: &ContractionScenario,
    tests: &[TestFunction],
    quad: &Quadrature,
) -> Result<ConvergenceReport, ScenarioError> {
    if tests.is_empty() {
        return Err(ScenarioError::NoTests);
    }
    if scenario.schedule().is_empty() {
        return Err(ScenarioError::Schedule("empty".into()));
    }
    let mut rows = Vec::new();
    for point in scenario.schedule() {
        for y in Basis::GL2 {
            for f in tests {
                let d = defect(scenario, point, y, f, quad)?;
                rows.push(ReportRow {
                    epsilon: point.epsilon.clone(),
                    index: point.index,
                    basis: y,
                    testfn: f.id().to_string(),
                    l2_defect: d.l2,
                    sup_defect: d.sup,
                    predicted_l2: d.predicted_l2,
                    rel_err: relative_error(d.l2, d.predicted_l2),
                    exact_zero: d.operator.is_zero(),
                });
            }
        }
    }
    let mut rates = Vec::new();
    for y in Basis::GL2 {
        for f in tests {
            let series: Vec<&ReportRow> = rows.iter().filter(|r| r.basis == y && r.testfn == f.id()).collect();
            let pts: Vec<(f64, f64)> = series.iter().map(|r| (to_f64(&r.epsilon), r.l2_defect)).collect();
            rates.push(RateEntry {
                basis: y,
                testfn: f.id().to_string(),
                rate: fit_rate(&pts),
                monotone: series.windows(2).all(|w| w[1].l2_defect <= w[0].l2_defect),
            });
        }
    }
    Ok(ConvergenceReport {
        scenario: scenario.id(),
        params: scenario.params().to_string(),
        schedule: scenario.schedule().iter().map(|p| p.epsilon.clone()).collect(),
        rows,
        rates,
    })
}

/// Fixed 15-significant-digit scientific notation.
pub(crate) fn fmt_float(v: f64) -> String {
    format!("{v:.14e}")
}

fn rate_json(rate: Rate) -> Value {
    match rate {
        Rate::Fitted(r) => json!(fmt_float(r)),
        Rate::ExactZero => json!("exact-zero"),
        Rate::Undetermined => json!("undetermined"),
    }
}

impl ConvergenceReport {
    /// Every row agrees with its prediction and every series decreases.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.rel_err <= REL_TOLERANCE) && self.rates.iter().all(|r| r.monotone)
    }

    pub fn rate(&self, basis: Basis, testfn: &str) -> Option<Rate> {
        self.rates
            .iter()
            .find(|r| r.basis == basis && r.testfn == testfn)
            .map(|r| r.rate)
    }

    pub fn rows_for(&self, basis: Basis) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(move |r| r.basis == basis)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("scenario,epsilon,basis,testfn,l2_defect,sup_defect,predicted_l2,rel_err\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                self.scenario,
                r.epsilon,
                r.basis.label(),
                r.testfn,
                fmt_float(r.l2_defect),
                fmt_float(r.sup_defect),
                fmt_float(r.predicted_l2),
                fmt_float(r.rel_err),
            );
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "scenario": self.scenario.id(),
                    "epsilon": r.epsilon.to_string(),
                    "n": r.index,
                    "basis": r.basis.label(),
                    "testfn": r.testfn,
                    "l2_defect": fmt_float(r.l2_defect),
                    "sup_defect": fmt_float(r.sup_defect),
                    "predicted_l2": fmt_float(r.predicted_l2),
                    "rel_err": fmt_float(r.rel_err),
                    "exact_zero": r.exact_zero,
                })
            })
            .collect();
        let rates: Vec<Value> = self
            .rates
            .iter()
            .map(|r| {
                json!({
                    "basis": r.basis.label(),
                    "testfn": r.testfn,
                    "rate": rate_json(r.rate),
                    "monotone": r.monotone,
                })
            })
            .collect();
        json!({
            "header": {
                "scenario": self.scenario.id(),
                "params": self.params,
                "schedule": self.schedule.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "rates": rates,
            },
            "rows": rows,
        })
    }
}
