//! Every upper bound on `χ_2` and `χ_r` the library knows, evaluated on one graph.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use super::construct::{run_method, ConstructionRecord, Method};
use super::verify::{verify_instance, Verdict};
use crate::codec::write_graph6;
use crate::coloring::Coloring;
use crate::exact::{chromatic_number, dsatur, invariant_numbers, r_dynamic_number, Budget, Certified, Solve};
use crate::graph::{DegreeProfile, Graph};
use crate::lll::partition::{feasibility_ratio, partition_log_term};
use crate::lll::product::product_condition_value;
use crate::pipeline::PipelineBudget;
use crate::transversal::bad_class_partition;

/// Relative widening applied before rounding real-valued bounds.
pub const ROUNDING_GUARD: f64 = 1.0 / (1u64 << 40) as f64;

/// An integer obtained by rounding a float, with both rounding candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guarded {
    /// The larger candidate (lenient for upper bounds).
    pub value: usize,
    pub low: usize,
    pub ambiguous: bool,
}

fn guarded(x: f64, round: fn(f64) -> f64) -> Guarded {
    let eps = ROUNDING_GUARD * x.abs().max(1.0);
    let low = round(x - eps).max(0.0) as usize;
    let value = round(x + eps).max(0.0) as usize;
    Guarded {
        value,
        low,
        ambiguous: low != value,
    }
}

pub fn guarded_ceil(x: f64) -> Guarded {
    guarded(x, f64::ceil)
}

pub fn guarded_floor(x: f64) -> Guarded {
    guarded(x, f64::floor)
}

/// `⌈e·log(d²+1) + e⌉`.
pub fn regular_dset_term(d: usize) -> Guarded {
    guarded_ceil(E * ((d * d + 1) as f64).ln() + E)
}

/// `⌈5.437·log d + 2.721⌉`.
pub fn simplified_term(d: usize) -> Guarded {
    guarded_ceil(5.437 * (d as f64).ln() + 2.721)
}

/// `⌈e(Δ/δ)·log(2e(Δ²+1))⌉`.
pub fn degree_ratio_term(min_degree: usize, max_degree: usize) -> Guarded {
    let l = (2.0 * E * (max_degree * max_degree + 1) as f64).ln();
    guarded_ceil(E * max_degree as f64 / min_degree as f64 * l)
}

/// `⌈e(Δ/δ)·log(2er(Δ²+1))⌉`, the per-part palette of the partition bound.
pub fn partition_term(min_degree: usize, max_degree: usize, r: usize) -> Guarded {
    guarded_ceil(E * max_degree as f64 / min_degree as f64 * partition_log_term(max_degree, r))
}

/// Smallest `d` in `lo..=hi` where the simplified ceiled term is below the
/// regular D-set term, if any.
pub fn simplified_below_regular(lo: usize, hi: usize) -> Option<usize> {
    (lo..=hi).find(|&d| simplified_term(d).value < regular_dset_term(d).value)
}

/// Which exact quantity a row bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Chi2,
    ChiR,
    /// `χ_2 - χ`.
    Gap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RowStatus {
    Applicable,
    NotApplicable { reason: String },
    /// Evaluated and shown, never enforced.
    Reported,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub name: String,
    pub target: Target,
    #[serde(flatten)]
    pub status: RowStatus,
    /// Integer bound, lenient side when the rounding is ambiguous.
    pub bound: Option<usize>,
    /// Strict side of an ambiguous rounding (equals `bound` otherwise).
    pub bound_low: Option<usize>,
    /// The real-valued quantity behind the bound, or the condition value.
    pub raw: Option<f64>,
    /// The bound uses an uncertified upper estimate of χ, α or γ.
    pub conditional: bool,
    pub enforced: bool,
}

impl BoundRow {
    fn new(name: &str, target: Target) -> Self {
        BoundRow {
            name: name.into(),
            target,
            status: RowStatus::NotApplicable { reason: String::new() },
            bound: None,
            bound_low: None,
            raw: None,
            conditional: false,
            enforced: true,
        }
    }

    fn skip(mut self, reason: impl Into<String>) -> Self {
        self.status = RowStatus::NotApplicable { reason: reason.into() };
        self
    }

    fn set(mut self, bound: usize, conditional: bool) -> Self {
        self.status = RowStatus::Applicable;
        self.bound = Some(bound);
        self.bound_low = Some(bound);
        self.conditional = conditional;
        self
    }

    /// `base + g`, keeping both rounding candidates.
    fn set_guarded(mut self, base: usize, g: Guarded, raw: f64, conditional: bool) -> Self {
        self = self.set(base + g.value, conditional);
        self.bound_low = Some(base + g.low);
        self.raw = Some(raw);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValues {
    pub chi: Certified,
    pub chi_r: Certified,
    pub chi_2: Certified,
    pub alpha: Certified,
    pub gamma: Certified,
}

/// The smallest `k + 2l` over the base colorings tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareBoundValue {
    pub k: usize,
    pub l: usize,
    pub l_exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub graph_id: String,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub profile: DegreeProfile,
    pub r: usize,
    pub seed: u64,
    pub exact: ExactValues,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_2_witness: Option<Coloring>,
    pub square_bound: Option<SquareBoundValue>,
    pub bounds: Vec<BoundRow>,
    pub constructions: Vec<ConstructionRecord>,
    pub conformance: Vec<Verdict>,
}

impl BoundReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn row(&self, name: &str) -> Option<&BoundRow> {
        self.bounds.iter().find(|r| r.name == name)
    }
}

fn has_c5_component(g: &Graph) -> bool {
    g.components().iter().any(|comp| {
        comp.len() == 5 && comp.iter().all(|v| g.degree(v) == 2)
    })
}

/// Exact χ, χ_r, χ_2, α and γ within `budget` (unknowns carry brackets).
pub fn exact_values(g: &Graph, r: usize, budget: Budget) -> (ExactValues, Solve, Solve) {
    let chi = chromatic_number(g, budget);
    let chi_2 = r_dynamic_number(g, 2, budget);
    let chi_r = match r {
        2 => chi_2.certified(),
        1 => chi.certified(),
        _ => r_dynamic_number(g, r, budget).certified(),
    };
    let inv = invariant_numbers(g, budget);
    let values = ExactValues {
        chi: chi.certified(),
        chi_r,
        chi_2: chi_2.certified(),
        alpha: inv.alpha,
        gamma: inv.gamma,
    };
    (values, chi, chi_2)
}

/// `k + 2l` minimized over the given proper colorings.
pub fn square_bound_value(g: &Graph, colorings: &[Coloring], budget: Budget) -> Option<SquareBoundValue> {
    colorings
        .iter()
        .filter_map(|c| {
            let dec = bad_class_partition(g, c, budget).ok()?;
            Some(SquareBoundValue {
                k: c.num_colors(),
                l: dec.l,
                l_exact: dec.l_exact,
            })
        })
        .min_by_key(|v| (v.k + 2 * v.l, !v.l_exact))
}

/// The bound rows for a graph with the given profile and exact values.
pub fn bound_rows(profile: &DegreeProfile, r: usize, exact: &ExactValues, square: Option<SquareBoundValue>, c5: bool) -> Vec<BoundRow> {
    let (delta, max) = (profile.min_degree, profile.max_degree);
    let chi = exact.chi.upper();
    let cond = exact.chi.value().is_none();
    let regular = profile.degree.filter(|&d| d >= 1);
    let not_regular = "graph is not regular with d >= 1";
    let mut rows = Vec::new();

    rows.push(BoundRow::new("delta_plus_three", Target::Chi2).set(max + 3, false));

    let row = BoundRow::new("delta_plus_one", Target::Chi2);
    rows.push(if max < 3 {
        row.skip("Δ < 3")
    } else if c5 {
        row.skip("a component is C5")
    } else {
        row.set(max + 1, false)
    });

    let row = BoundRow::new("regular_log", Target::Chi2);
    rows.push(match regular {
        Some(d) => {
            let raw = 14.06 * (d as f64).ln() + 1.0;
            row.set_guarded(chi, guarded_floor(raw), raw, cond)
        }
        None => row.skip(not_regular),
    });

    let row = BoundRow::new("regular_two_chi", Target::Chi2);
    rows.push(match regular {
        Some(_) => row.set(2 * chi, cond),
        None => row.skip(not_regular),
    });

    let mut row = BoundRow::new("r_times_chi", Target::ChiR);
    rows.push(if r < 2 || delta == 0 {
        row.skip("needs r >= 2 and δ >= 1")
    } else {
        let value = product_condition_value(delta, max, r);
        row.raw = Some(value);
        if value <= 1.0 {
            let mut row = row.set(r * chi, cond);
            row.raw = Some(value);
            row
        } else {
            row.skip(format!("condition value {value:.4} > 1"))
        }
    });

    let row = BoundRow::new("regular_dset", Target::Chi2);
    rows.push(match regular {
        Some(d) => {
            let raw = E * ((d * d + 1) as f64).ln() + E;
            row.set_guarded(chi, regular_dset_term(d), raw, cond)
        }
        None => row.skip(not_regular),
    });

    let row = BoundRow::new("regular_simplified", Target::Chi2);
    rows.push(match regular.filter(|&d| d >= 3) {
        Some(d) => {
            let raw = 5.437 * (d as f64).ln() + 2.721;
            row.set_guarded(chi, simplified_term(d), raw, cond)
        }
        None => row.skip("graph is not regular with d >= 3"),
    });

    let row = BoundRow::new("square_classes", Target::Chi2);
    rows.push(match (regular, square) {
        (Some(_), Some(v)) => row.set(v.k + 2 * v.l, false),
        (Some(_), None) => row.skip("no base coloring evaluated"),
        (None, _) => row.skip(not_regular),
    });

    let row = BoundRow::new("degree_ratio", Target::Chi2);
    rows.push(if delta == 0 {
        row.skip("δ = 0")
    } else {
        let raw = E * max as f64 / delta as f64 * (2.0 * E * (max * max + 1) as f64).ln();
        row.set_guarded(chi, degree_ratio_term(delta, max), raw, cond)
    });

    let feasible = r >= 2 && delta > 0 && r as f64 <= feasibility_ratio(delta, max, r);
    let row = BoundRow::new("r_partition", Target::ChiR);
    rows.push(if feasible {
        let t = partition_term(delta, max, r);
        let scaled = Guarded {
            value: (r - 1) * t.value,
            low: (r - 1) * t.low,
            ambiguous: t.ambiguous,
        };
        let raw = E * max as f64 / delta as f64 * partition_log_term(max, r);
        row.set_guarded(chi, scaled, raw, cond)
    } else {
        row.skip("needs 2 <= r <= δ/log(2er(Δ²+1))")
    });

    let row = BoundRow::new("r_partition_regular", Target::ChiR);
    rows.push(match regular.filter(|_| feasible) {
        Some(d) => {
            let raw = E * partition_log_term(d, r);
            let t = guarded_ceil(raw);
            let scaled = Guarded {
                value: (r - 1) * t.value,
                low: (r - 1) * t.low,
                ambiguous: t.ambiguous,
            };
            row.set_guarded(chi, scaled, raw, cond)
        }
        None => row.skip("needs a regular graph and 2 <= r <= d/log(2er(d²+1))"),
    });

    let row = BoundRow::new("gamma", Target::Chi2);
    rows.push(if exact.chi.lower() >= 4 {
        row.set(chi + exact.gamma.upper(), cond || exact.gamma.value().is_none())
    } else {
        row.skip("χ >= 4 not certified")
    });

    let row = BoundRow::new("alpha", Target::Chi2);
    rows.push(match regular {
        Some(_) => {
            let alpha = exact.alpha.upper().max(1);
            let raw = 2.0 * (alpha as f64).log2() + 3.0;
            row.set_guarded(chi, guarded_floor(raw), raw, cond || exact.alpha.value().is_none())
        }
        None => row.skip(not_regular),
    });

    let mut row = BoundRow::new("gap_at_most_two", Target::Gap);
    rows.push(match regular {
        Some(_) => {
            row = row.set(2, false);
            row.status = RowStatus::Reported;
            row.enforced = false;
            row
        }
        None => row.skip(not_regular),
    });
    rows
}

/// Methods worth running on a graph with this profile.
pub fn applicable_methods(profile: &DegreeProfile) -> Vec<Method> {
    let mut out = vec![Method::Delta3, Method::General];
    if profile.min_degree >= 1 {
        out.push(Method::Product);
        out.push(Method::Partition);
    }
    if profile.regular {
        out.push(Method::Dynam1);
        out.push(Method::Square);
    }
    out.sort();
    out
}

/// Exact values, every bound row, the applicable constructions, and the
/// verdicts comparing them.
pub fn bound_table(g: &Graph, graph_id: &str, r: usize, budget: &PipelineBudget, seed: u64) -> BoundReport {
    let profile = g.degree_stats().unwrap_or(DegreeProfile {
        min_degree: 0,
        max_degree: 0,
        regular: true,
        degree: Some(0),
    });
    let (exact, chi_solve, chi_2_solve) = exact_values(g, r, budget.exact);
    let mut bases: Vec<Coloring> = chi_solve.witness().cloned().into_iter().collect();
    bases.push(dsatur(g));
    let square = profile
        .regular
        .then(|| square_bound_value(g, &bases, budget.exact))
        .flatten();
    let bounds = bound_rows(&profile, r, &exact, square, has_c5_component(g));
    let constructions = applicable_methods(&profile)
        .into_iter()
        .map(|m| run_method(g, m, r, seed, budget).1)
        .collect();
    let mut report = BoundReport {
        graph_id: graph_id.into(),
        graph6: write_graph6(g).unwrap_or_default(),
        n: g.n(),
        m: g.m(),
        profile,
        r,
        seed,
        exact,
        chi_2_witness: chi_2_solve.witness().cloned(),
        square_bound: square,
        bounds,
        constructions,
        conformance: Vec::new(),
    };
    report.conformance = verify_instance(g, r, &report);
    report
}
