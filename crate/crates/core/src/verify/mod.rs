//! Verification suites. Each suite evaluates a family of inequalities and
//! returns a [`CheckReport`] with one row per asserted or reported comparison.

mod known;
mod suites;
mod sweep;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use known::{known_kottman, rotated_plane, rotated_planes};
pub use suites::{
    check_duality, check_identities, check_interpolation, check_lipschitz, check_lp_values, check_sum_formulas,
    check_twisted, LipschitzConstant,
};
pub use sweep::{run_sweep, Experiment, SweepParameter, SweepRow, SweepSpec, SweepTable};

/// Slack for comparisons against closed forms.
pub const CLOSED_FORM_SLACK: f64 = 1e-6;
/// Slack for comparisons between two solver estimates.
pub const SOLVER_SLACK: f64 = 5e-3;
/// Slack for the thickness and James Lipschitz rows.
pub const LIPSCHITZ_SLACK: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Pass,
    Fail,
    /// Informational comparison that never fails the suite.
    Reported,
}

impl RowStatus {
    pub fn label(self) -> &'static str {
        match self {
            RowStatus::Pass => "pass",
            RowStatus::Fail => "fail",
            RowStatus::Reported => "reported",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    /// `lhs <= rhs + slack`
    #[serde(rename = "<=")]
    Le,
    /// `lhs >= rhs - slack`
    #[serde(rename = ">=")]
    Ge,
    /// `|lhs - rhs| <= slack`
    #[serde(rename = "~=")]
    Approx,
}

impl Relation {
    pub fn holds(self, lhs: f64, rhs: f64, slack: f64) -> bool {
        match self {
            Relation::Le => lhs <= rhs + slack,
            Relation::Ge => lhs >= rhs - slack,
            Relation::Approx => (lhs - rhs).abs() <= slack,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Approx => "~=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub suite: String,
    /// Parameters and the quantity compared, e.g. `p=2 n=5: kottman_N >= 2^(1/p)`.
    pub param: String,
    pub lhs: f64,
    pub relation: Relation,
    pub rhs: f64,
    pub slack: f64,
    pub status: RowStatus,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl CheckRow {
    pub fn asserted(suite: &str, param: impl Into<String>, lhs: f64, relation: Relation, rhs: f64, slack: f64) -> Self {
        let ok = relation.holds(lhs, rhs, slack);
        CheckRow {
            suite: suite.to_string(),
            param: param.into(),
            lhs,
            relation,
            rhs,
            slack,
            status: if ok { RowStatus::Pass } else { RowStatus::Fail },
            note: String::new(),
        }
    }

    pub fn reported(suite: &str, param: impl Into<String>, lhs: f64, relation: Relation, rhs: f64, slack: f64) -> Self {
        CheckRow {
            status: RowStatus::Reported,
            ..CheckRow::asserted(suite, param, lhs, relation, rhs, slack)
        }
    }

    /// Failed row for a computation that raised an error.
    pub fn errored(suite: &str, param: impl Into<String>, err: &crate::Error) -> Self {
        CheckRow {
            suite: suite.to_string(),
            param: param.into(),
            lhs: f64::NAN,
            relation: Relation::Approx,
            rhs: f64::NAN,
            slack: 0.0,
            status: RowStatus::Fail,
            note: err.to_string(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status != RowStatus::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub rows: Vec<CheckRow>,
    pub status: SuiteStatus,
    /// Wall time in seconds; kept out of the serialized report so reruns are byte-identical.
    #[serde(skip)]
    pub wall_time: f64,
}

impl CheckReport {
    pub(crate) fn assemble(suite: &str, params: BTreeMap<String, String>, rows: Vec<CheckRow>, started: Instant) -> Self {
        let status = if rows.iter().all(CheckRow::passed) {
            SuiteStatus::Pass
        } else {
            SuiteStatus::Fail
        };
        CheckReport {
            suite: suite.to_string(),
            params,
            rows,
            status,
            wall_time: started.elapsed().as_secs_f64(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == SuiteStatus::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| r.status == RowStatus::Fail)
    }

    /// Rows whose parameter label contains `needle`.
    pub fn rows_matching<'a>(&'a self, needle: &'a str) -> impl Iterator<Item = &'a CheckRow> + 'a {
        self.rows.iter().filter(move |r| r.param.contains(needle))
    }
}
