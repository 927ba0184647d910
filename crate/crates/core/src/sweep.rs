//! Formula-versus-enumeration verification over every small integer type.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_types, enumerate_wtrees, Budget, SymmetryCensus};
use crate::error::Error;
use crate::partition::{cardinality, cardinality_labeled, classify, derivative_type};
use crate::types::WeightedType;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Mismatch,
    Skipped,
}

/// Outcome of the exact-count property for simple types: `(s+t-2)!` when
/// non-decomposable, strictly below `(v-2)!` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorialCheck {
    NotApplicable,
    Exact,
    Below,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "type")]
    pub ty: String,
    pub weight: u32,
    pub simple: bool,
    pub decomposable: bool,
    /// Counts are decimal strings so that large values survive any JSON reader.
    pub formula: Option<String>,
    pub enumeration: Option<String>,
    pub census: Option<SymmetryCensus>,
    /// Labeled count of the derivative type, by formula and by `sum p / order`.
    pub labeled_formula: Option<String>,
    pub labeled_from_census: Option<String>,
    pub factorial_check: FactorialCheck,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub types_checked: usize,
    pub mismatches: usize,
    pub skipped: usize,
    /// Number of types of each exact total weight.
    pub types_by_weight: BTreeMap<u32, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub max_weight: u32,
    pub budget: u64,
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn passed(&self) -> bool {
        self.summary.mismatches == 0 && self.summary.skipped == 0
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Checks one type. Enumeration failures (budget) mark the row skipped.
pub fn check_type(ty: &WeightedType, weight: u32, budget_limit: u64) -> SweepRow {
    let class = classify(ty);
    let mut row = SweepRow {
        ty: ty.literal(),
        weight,
        simple: class.simple,
        decomposable: class.decomposable,
        formula: None,
        enumeration: None,
        census: None,
        labeled_formula: None,
        labeled_from_census: None,
        factorial_check: FactorialCheck::NotApplicable,
        status: Status::Ok,
        note: None,
    };
    let mut problems = Vec::new();

    let formula = cardinality(ty);
    let derived = derivative_type(ty);
    let labeled = cardinality_labeled(&derived.labeled);
    match (&formula, &labeled) {
        (Ok(f), Ok(l)) => {
            row.formula = Some(f.to_string());
            row.labeled_formula = Some(l.to_string());
        }
        (Err(e), _) | (_, Err(e)) => problems.push(format!("formula: {e}")),
    }

    let budget = Budget::new(budget_limit);
    match enumerate_wtrees(ty, &budget) {
        Ok(trees) => {
            let census = SymmetryCensus::from_trees(&trees);
            row.enumeration = Some(trees.len().to_string());
            let mut from_census = BigInt::zero();
            for (&order, &count) in &census.by_order {
                let order = BigInt::from(order);
                if !(&derived.p % &order).is_zero() {
                    problems.push(format!("automorphism order {order} does not divide p = {}", derived.p));
                }
                from_census += &derived.p / order * count;
            }
            row.labeled_from_census = Some(from_census.to_string());
            row.census = Some(census);
        }
        Err(Error::ResourceBudget { limit }) => {
            row.status = Status::Skipped;
            row.note = Some(format!("enumeration budget of {limit} exhausted"));
            return row;
        }
        Err(e) => problems.push(format!("enumeration: {e}")),
    }

    if row.formula.is_some() && row.formula != row.enumeration {
        problems.push("formula and enumeration counts differ".into());
    }
    if row.labeled_formula.is_some() && row.labeled_formula != row.labeled_from_census {
        problems.push("labeled count differs from sum of p / order".into());
    }
    if let (true, Ok(count)) = (class.simple, &formula) {
        let v = ty.vertex_count();
        row.factorial_check = if !class.decomposable {
            if *count == factorial(v - 2) {
                FactorialCheck::Exact
            } else {
                FactorialCheck::Failed
            }
        } else if *count < factorial(v - 2) {
            FactorialCheck::Below
        } else {
            FactorialCheck::Failed
        };
        if row.factorial_check == FactorialCheck::Failed {
            problems.push("factorial bound violated".into());
        }
    }

    if !problems.is_empty() {
        row.status = Status::Mismatch;
        row.note = Some(problems.join("; "));
    }
    row
}

/// All integer types of total weight `1..=max_weight`, in order of weight and
/// then of the partition pair. Rows are computed in parallel on the current
/// rayon pool; the report does not depend on scheduling.
pub fn run_sweep(max_weight: u32, budget_limit: u64) -> SweepReport {
    let work: Vec<(u32, WeightedType)> =
        (1..=max_weight).flat_map(|n| enumerate_types(n).into_iter().map(move |ty| (n, ty))).collect();
    let rows: Vec<SweepRow> = work.par_iter().map(|(n, ty)| check_type(ty, *n, budget_limit)).collect();
    let mut summary = SweepSummary { types_checked: rows.len(), ..Default::default() };
    for row in &rows {
        *summary.types_by_weight.entry(row.weight).or_insert(0) += 1;
        match row.status {
            Status::Mismatch => summary.mismatches += 1,
            Status::Skipped => summary.skipped += 1,
            Status::Ok => {}
        }
    }
    SweepReport { schema_version: SCHEMA_VERSION, max_weight, budget: budget_limit, rows, summary }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_BUDGET;

    #[test]
    fn weight_one() {
        let report = run_sweep(1, DEFAULT_BUDGET);
        assert_eq!(report.rows.len(), 1);
        let row = &report.rows[0];
        assert_eq!(row.ty, "1|1");
        assert_eq!(row.formula.as_deref(), Some("1"));
        assert_eq!(row.enumeration.as_deref(), Some("1"));
        assert!(report.passed());
    }

    #[test]
    fn small_sweep_passes() {
        let report = run_sweep(5, DEFAULT_BUDGET);
        assert_eq!(report.summary.types_by_weight[&5], 49);
        assert!(report.passed(), "{:?}", report.rows.iter().filter(|r| r.status != Status::Ok).collect::<Vec<_>>());
    }

    #[test]
    fn budget_exhaustion_skips() {
        let ty = WeightedType::parse("1,2,4|2,5").unwrap();
        let row = check_type(&ty, 7, 1);
        assert_eq!(row.status, Status::Skipped);
    }

    #[test]
    fn report_round_trips() {
        let report = run_sweep(3, DEFAULT_BUDGET);
        let back: SweepReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.schema_version, SCHEMA_VERSION);
    }
}
