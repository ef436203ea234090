//! Turns a bound report into pass/fail verdicts.

use serde::{Deserialize, Serialize};

use super::bounds::{BoundReport, RowStatus, Target};
use super::construct::ConstructionStatus;
use crate::codec::write_graph6;
use crate::coloring::Coloring;
use crate::exact::Certified;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Pass,
    Fail,
    /// The observed value or the bound is not certified tightly enough to decide.
    Inconclusive,
    NotApplicable,
    /// Shown but not enforced; `finding` marks an exceeded reported bound.
    Reported,
}

/// What is needed to reproduce a violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub graph6: String,
    pub seed: u64,
    pub coloring: Option<Coloring>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub row: String,
    pub status: VerdictStatus,
    pub observed: Option<Certified>,
    pub bound: Option<usize>,
    pub enforced: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub finding: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    /// A failure of an enforced row.
    pub fn is_violation(&self) -> bool {
        self.enforced && self.status == VerdictStatus::Fail
    }
}

fn gap(chi_2: Certified, chi: Certified) -> Certified {
    match (chi_2, chi) {
        (Certified::Exact { value: a }, Certified::Exact { value: b }) => Certified::Exact {
            value: a.saturating_sub(b),
        },
        _ => Certified::Unknown {
            lower: chi_2.lower().saturating_sub(chi.upper()),
            upper: chi_2.upper().saturating_sub(chi.lower()),
        },
    }
}

/// One verdict per bound row and per construction.
pub fn verify_instance(g: &Graph, r: usize, report: &BoundReport) -> Vec<Verdict> {
    let bundle = |coloring: Option<Coloring>| Counterexample {
        graph6: write_graph6(g).unwrap_or_default(),
        seed: report.seed,
        coloring,
    };
    let chi_r = if r == report.r {
        report.exact.chi_r
    } else {
        Certified::Unknown {
            lower: 0,
            upper: usize::MAX,
        }
    };
    let mut out = Vec::new();
    for row in &report.bounds {
        let observed = match row.target {
            Target::Chi2 => report.exact.chi_2,
            Target::ChiR => chi_r,
            Target::Gap => gap(report.exact.chi_2, report.exact.chi),
        };
        let mut verdict = Verdict {
            row: row.name.clone(),
            status: VerdictStatus::NotApplicable,
            observed: Some(observed),
            bound: row.bound,
            enforced: row.enforced,
            finding: false,
            counterexample: None,
        };
        let (Some(bound), Some(low)) = (row.bound, row.bound_low) else {
            out.push(verdict);
            continue;
        };
        let exceeded = observed.lower() > bound;
        let within = observed.upper() <= low && !row.conditional;
        verdict.status = match row.status {
            RowStatus::NotApplicable { .. } => VerdictStatus::NotApplicable,
            RowStatus::Reported => {
                verdict.finding = exceeded;
                VerdictStatus::Reported
            }
            RowStatus::Applicable if exceeded => VerdictStatus::Fail,
            RowStatus::Applicable if within => VerdictStatus::Pass,
            RowStatus::Applicable => VerdictStatus::Inconclusive,
        };
        if verdict.status == VerdictStatus::Fail || verdict.finding {
            verdict.counterexample = Some(bundle(report.chi_2_witness.clone()));
        }
        out.push(verdict);
    }
    for rec in &report.constructions {
        let status = match rec.status {
            ConstructionStatus::NotApplicable { .. } => VerdictStatus::NotApplicable,
            _ if rec.conforms() => VerdictStatus::Pass,
            _ => VerdictStatus::Fail,
        };
        out.push(Verdict {
            row: format!("construction:{}", rec.method),
            status,
            observed: rec.colors_used.map(|value| Certified::Exact { value }),
            bound: rec.bound,
            enforced: true,
            finding: false,
            counterexample: (status == VerdictStatus::Fail).then(|| bundle(None)),
        });
    }
    out
}
