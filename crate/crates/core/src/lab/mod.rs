//! Numerical verification of strong contraction.
//!
//! A scenario pairs a family `ε ↦ π_ε` with a target `π_0` on the contracted
//! algebra. For each schedule point, basis direction `Y` and test vector `f`
//! the defect operator `π_ε(t_ε Y) − π_0(Y)` is assembled exactly and then
//! measured in L² and on a sup grid.

mod quadrature;
mod scenario;
mod sweep;
mod testfn;

use thiserror::Error;

use crate::catalog::CatalogError;
use crate::lie::LieError;
use crate::ops::ApplyError;
use crate::params::ParamError;

pub use quadrature::{sup_on_grid, GaussLegendre, Quadrature, QuadratureSettings};
pub use scenario::{
    build_scenario, defect, ContractionScenario, Defect, FamilyRule, Prediction, ScenarioId,
    SchedulePoint,
};
pub use sweep::{sweep, ConvergenceReport, RateEntry, ReportRow, REL_TOLERANCE, SUP_GRID_POINTS};
pub use testfn::{default_test_set, Domain, Interval, TestFunction};

/// Defects at or below this are treated as numerically zero when fitting rates.
pub const DEFECT_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("window {0} contains the origin of the punctured line")]
    WindowContainsOrigin(Interval),
    #[error("invalid interval [{lo}, {hi}]")]
    BadInterval { lo: f64, hi: f64 },
    #[error("test function lives on the {found}, expected the {expected}")]
    DomainMismatch { expected: Domain, found: Domain },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("invalid schedule: {0}")]
    Schedule(String),
    #[error("empty test set")]
    NoTests,
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Lab(#[from] LabError),
    #[error(transparent)]
    Apply(#[from] ApplyError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Outcome of a log-log fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rate {
    Fitted(f64),
    /// Every value is at or below [`DEFECT_FLOOR`].
    ExactZero,
    /// Fewer than four values above the floor.
    Undetermined,
}

impl Rate {
    pub fn value(self) -> Option<f64> {
        match self {
            Rate::Fitted(r) => Some(r),
            _ => None,
        }
    }
}

/// Least-squares slope of `log(defect)` against `log|ε|` over points with defect above the floor.
pub fn fit_rate(points: &[(f64, f64)]) -> Rate {
    let used: Vec<(f64, f64)> = points
        .iter()
        .filter(|(e, d)| *d > DEFECT_FLOOR && e.abs() > 0.0)
        .map(|(e, d)| (e.abs().ln(), d.ln()))
        .collect();
    if used.is_empty() {
        return Rate::ExactZero;
    }
    if used.len() < 4 {
        return Rate::Undetermined;
    }
    let m = used.len() as f64;
    let mx = used.iter().map(|p| p.0).sum::<f64>() / m;
    let my = used.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = used.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = used.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Rate::Undetermined;
    }
    Rate::Fitted(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_data_has_rate_one() {
        let pts: Vec<_> = (1..=5).map(|k| (10f64.powi(-k), 3.7 * 10f64.powi(-k))).collect();
        let r = fit_rate(&pts).value().unwrap();
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quadratic_data_and_sign_of_epsilon() {
        let pts: Vec<_> = [4.0, 8.0, 16.0, 32.0]
            .iter()
            .map(|n: &f64| (-4.0 / (n * n), 1.0 / n.powi(4)))
            .collect();
        assert!((fit_rate(&pts).value().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_and_sparse_data() {
        assert_eq!(fit_rate(&[(0.1, 0.0), (0.01, 0.0)]), Rate::ExactZero);
        assert_eq!(fit_rate(&[(0.1, 1e-14), (0.01, 1e-15)]), Rate::ExactZero);
        assert_eq!(fit_rate(&[(0.1, 1.0), (0.01, 0.1), (0.001, 0.0)]), Rate::Undetermined);
    }
}
