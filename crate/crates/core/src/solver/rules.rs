//! Primal-feasibility pivot rules used as comparators.
//!
//! All three pick an infeasible row `i` (`dᵢ₀ < 0`) and a column `j` with
//! `dᵢⱼ < 0`, so that increasing `xⱼ` raises `xᵢ`. Bland and Dantzig then run
//! a ratio test over the rows that are already feasible (plus row `i`
//! itself), which keeps every feasible row feasible. The B-rule skips the
//! ratio test and pivots on `(i, j)` directly.

use std::cmp::Ordering;

use crate::scalar::Scalar;
use crate::tableau::{Dictionary, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeasibilityStep {
    Feasible,
    Pivot {
        leave: Var,
        enter: Var,
    },
    /// Row with negative value and no negative coefficient.
    Inconsistent {
        row: Var,
    },
}

fn infeasible_rows<S: Scalar>(d: &Dictionary<S>) -> impl Iterator<Item = usize> + '_ {
    (0..d.num_basic()).filter(move |&i| d.rows()[i + 1][0].is_neg(d.eps()))
}

fn smallest_label_negative_column<S: Scalar>(d: &Dictionary<S>, i: usize) -> Option<usize> {
    d.coefficients(i)
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_neg(d.eps()))
        .min_by_key(|(j, _)| d.nonbasis()[*j])
        .map(|(j, _)| j)
}

/// Rows allowed to leave when column `j` enters to repair row `i`, with their ratios.
fn ratio_candidates<S: Scalar>(d: &Dictionary<S>, i: usize, j: usize) -> Vec<(usize, S)> {
    let eps = d.eps();
    (0..d.num_basic())
        .filter(|&k| {
            let row = &d.rows()[k + 1];
            k == i || (!row[0].is_neg(eps) && row[j + 1].is_pos(eps))
        })
        .map(|k| {
            let row = &d.rows()[k + 1];
            (k, row[0].clone() / row[j + 1].clone())
        })
        .collect()
}

fn min_ratio<S: Scalar>(d: &Dictionary<S>, candidates: &[(usize, S)]) -> Vec<usize> {
    let eps = d.eps();
    let Some(best) = candidates
        .iter()
        .map(|(_, r)| r)
        .min_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
    else {
        return Vec::new();
    };
    candidates
        .iter()
        .filter(|(_, r)| r.cmp_eps(best, eps) == Ordering::Equal)
        .map(|(k, _)| *k)
        .collect()
}

/// Least-index feasibility rule.
///
/// Row: smallest-label infeasible basic variable. Column: smallest label with
/// a negative coefficient in that row. Leaving row: minimum ratio among the
/// feasible rows with positive coefficient and the chosen row, smallest label on ties.
pub fn bland_feasibility_step<S: Scalar>(d: &Dictionary<S>) -> FeasibilityStep {
    let Some(i) = infeasible_rows(d).min_by_key(|&i| d.basis()[i]) else {
        return FeasibilityStep::Feasible;
    };
    let Some(j) = smallest_label_negative_column(d, i) else {
        return FeasibilityStep::Inconsistent { row: d.basis()[i] };
    };
    let tied = min_ratio(d, &ratio_candidates(d, i, j));
    let k = tied.into_iter().min_by_key(|&k| d.basis()[k]).unwrap_or(i);
    FeasibilityStep::Pivot {
        leave: d.basis()[k],
        enter: d.nonbasis()[j],
    }
}

/// Largest-coefficient feasibility rule with a lexicographic ratio test.
///
/// Row: most negative basic value, kept as the target until it turns
/// feasible or leaves the basis. Column: most negative coefficient in the
/// target row. Ratio ties are broken lexicographically on the rows scaled by
/// the pivot column, comparing the rhs first and then the coefficients of the
/// labels that were basic when the rule started, in label order.
#[derive(Debug, Clone)]
pub struct DantzigLex {
    initial: Vec<Var>,
    target: Option<Var>,
}

impl DantzigLex {
    pub fn new<S: Scalar>(d: &Dictionary<S>) -> Self {
        let mut initial = d.basis().to_vec();
        initial.sort();
        DantzigLex { initial, target: None }
    }

    pub fn target(&self) -> Option<Var> {
        self.target
    }

    fn pick_target<S: Scalar>(&mut self, d: &Dictionary<S>) -> Option<usize> {
        let eps = d.eps();
        if let Some(i) = self.target.and_then(|t| d.basic_pos(t)) {
            if d.rows()[i + 1][0].is_neg(eps) {
                return Some(i);
            }
        }
        let i = infeasible_rows(d).min_by(|&a, &b| {
            d.rows()[a + 1][0]
                .cmp_eps(&d.rows()[b + 1][0], eps)
                .then(d.basis()[a].cmp(&d.basis()[b]))
        });
        self.target = i.map(|i| d.basis()[i]);
        i
    }

    // coefficient of `label` in row `k`, counting the basic variable itself as 1
    fn coefficient<S: Scalar>(d: &Dictionary<S>, k: usize, label: Var) -> S {
        match d.nonbasic_pos(label) {
            Some(c) => d.rows()[k + 1][c + 1].clone(),
            None if d.basis()[k] == label => S::one(),
            None => S::zero(),
        }
    }

    pub fn step<S: Scalar>(&mut self, d: &Dictionary<S>) -> FeasibilityStep {
        let eps = d.eps();
        let Some(i) = self.pick_target(d) else {
            return FeasibilityStep::Feasible;
        };
        let row = d.coefficients(i);
        let Some(j) = (0..row.len())
            .filter(|&j| row[j].is_neg(eps))
            .min_by(|&a, &b| row[a].cmp_eps(&row[b], eps).then(d.nonbasis()[a].cmp(&d.nonbasis()[b])))
        else {
            return FeasibilityStep::Inconsistent { row: d.basis()[i] };
        };
        let tied = min_ratio(d, &ratio_candidates(d, i, j));
        let scaled = |k: usize, label: Option<Var>| {
            let r = &d.rows()[k + 1];
            let v = match label {
                None => r[0].clone(),
                Some(l) => Self::coefficient(d, k, l),
            };
            v / r[j + 1].clone()
        };
        let k = tied
            .into_iter()
            .min_by(|&a, &b| {
                std::iter::once(None)
                    .chain(self.initial.iter().copied().map(Some))
                    .map(|l| scaled(a, l).cmp_eps(&scaled(b, l), eps))
                    .find(|o| *o != Ordering::Equal)
                    .unwrap_or(Ordering::Equal)
                    .then(d.basis()[a].cmp(&d.basis()[b]))
            })
            .unwrap_or(i);
        FeasibilityStep::Pivot {
            leave: d.basis()[k],
            enter: d.nonbasis()[j],
        }
    }
}

/// One step of [`DantzigLex`] started fresh on `d`.
pub fn dantzig_lex_step<S: Scalar>(d: &Dictionary<S>) -> FeasibilityStep {
    DantzigLex::new(d).step(d)
}

/// Least-index feasibility rule without a ratio test.
///
/// The smallest-label infeasible row leaves directly against the
/// smallest-label column with a negative coefficient in it. Other rows may
/// turn infeasible; least-index choices keep the rule finite.
pub fn brule_step<S: Scalar>(d: &Dictionary<S>) -> FeasibilityStep {
    let Some(i) = infeasible_rows(d).min_by_key(|&i| d.basis()[i]) else {
        return FeasibilityStep::Feasible;
    };
    match smallest_label_negative_column(d, i) {
        Some(j) => FeasibilityStep::Pivot {
            leave: d.basis()[i],
            enter: d.nonbasis()[j],
        },
        None => FeasibilityStep::Inconsistent { row: d.basis()[i] },
    }
}
