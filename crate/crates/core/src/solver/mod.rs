//! Uniform driver over the dual-feasibility rules, the dual simplex phase,
//! and the end-to-end `solve`.
//!
//! The comparator rules (Dantzig with lexicographic ratio test, Bland, and
//! the B-rule) are primal-feasibility rules. They reach dual feasibility by
//! working on the negative transpose of the dictionary, whose primal
//! feasibility is exactly the original's dual feasibility.

mod rules;

use std::fmt;
use std::str::FromStr;

pub use rules::{bland_feasibility_step, brule_step, dantzig_lex_step, DantzigLex, FeasibilityStep};

use crate::error::{Error, Result};
use crate::minangle::{self, CosineTable, SieContext};
use crate::scalar::Scalar;
use crate::tableau::{Dictionary, LpInstance, Var};

/// Default pivot cap for the comparator rules and the dual simplex.
pub const DEFAULT_PIVOT_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    BRule,
    Bland,
    DantzigLex,
    MinAngle,
}

impl RuleId {
    /// Table order used by reports.
    pub const ALL: [RuleId; 4] = [RuleId::BRule, RuleId::Bland, RuleId::DantzigLex, RuleId::MinAngle];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::MinAngle => "minangle",
            RuleId::DantzigLex => "dantzig",
            RuleId::Bland => "bland",
            RuleId::BRule => "brule",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            RuleId::MinAngle => "Minimum angle",
            RuleId::DantzigLex => "Dantzig",
            RuleId::Bland => "Bland's rule",
            RuleId::BRule => "B-rule",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule `{s}` (expected one of: minangle, dantzig, bland, brule)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    DualFeasible,
    Optimal,
    /// An improving edge with no resisting constraint. When reported by
    /// [`solve`], the system is also known to be feasible, so the LP is unbounded.
    DualInconsistent,
    PrimalInfeasible,
    LimitExceeded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::DualFeasible => "DualFeasible",
            Status::Optimal => "Optimal",
            Status::DualInconsistent => "DualInconsistent (unbounded)",
            Status::PrimalInfeasible => "PrimalInfeasible",
            Status::LimitExceeded => "LimitExceeded",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Limits {
    /// Cap on iterations; `None` picks the rule's default
    /// (`20·(m+n)` passes for the minimum-angle rule, 10⁴ pivots otherwise).
    pub max_iterations: Option<usize>,
    /// Record per-step dictionaries.
    pub trace: bool,
}

impl Limits {
    fn pivot_cap(&self) -> usize {
        self.max_iterations.unwrap_or(DEFAULT_PIVOT_CAP)
    }
}

/// One iteration of a rule.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord<S> {
    pub iteration: usize,
    pub rule: RuleId,
    /// Improving columns at the start of the pass.
    pub improving: Vec<Var>,
    pub main_direction: Option<Var>,
    /// Edge pivoted against a constraint: the driving variable after an SIE, else `main_direction`.
    pub edge: Option<Var>,
    pub sie: Option<SieContext>,
    pub resisting: Vec<Var>,
    pub cosines: Option<CosineTable>,
    /// `(leaving, entering)` pairs, in the order performed.
    pub pivots: Vec<(Var, Var)>,
    /// Driving row deleted at the end of the pass.
    pub removed: Option<Var>,
    /// Captioned dictionaries, filled only when tracing.
    pub snapshots: Vec<(String, Dictionary<S>)>,
}

impl<S: Scalar> StepRecord<S> {
    pub fn new(rule: RuleId) -> Self {
        StepRecord {
            iteration: 0,
            rule,
            improving: Vec::new(),
            main_direction: None,
            edge: None,
            sie: None,
            resisting: Vec::new(),
            cosines: None,
            pivots: Vec::new(),
            removed: None,
            snapshots: Vec::new(),
        }
    }

    pub(crate) fn snapshot(&mut self, caption: &str, d: &Dictionary<S>) {
        self.snapshots.push((caption.to_string(), d.clone()));
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome<S> {
    pub status: Status,
    /// Certificate label: the unresisted column for `DualInconsistent`,
    /// the inconsistent row for `PrimalInfeasible`.
    pub witness: Option<Var>,
    pub final_dictionary: Dictionary<S>,
    /// Dual-feasibility iterations (outer passes).
    pub iterations: usize,
    /// Dual-feasibility pivots, including SIE pivots.
    pub pivots: usize,
    pub dual_simplex_pivots: usize,
    /// Rule that took over after the requested rule hit its cap.
    pub fallback: Option<RuleId>,
    pub trace: Vec<StepRecord<S>>,
}

impl<S: Scalar> SolveOutcome<S> {
    pub(crate) fn new(d: Dictionary<S>) -> Self {
        SolveOutcome {
            status: Status::LimitExceeded,
            witness: None,
            final_dictionary: d,
            iterations: 0,
            pivots: 0,
            dual_simplex_pivots: 0,
            fallback: None,
            trace: Vec::new(),
        }
    }

    pub(crate) fn push_record(&mut self, record: StepRecord<S>, keep: bool) {
        if keep {
            self.trace.push(record);
        }
    }

    pub fn objective_value(&self) -> &S {
        self.final_dictionary.objective_value()
    }
}

/// Result of running a primal-feasibility rule on a dictionary.
#[derive(Debug, Clone)]
pub(crate) struct Phase1<S> {
    pub status: FeasibilityStep,
    pub dictionary: Dictionary<S>,
    pub pivots: usize,
    pub pivot_log: Vec<(Var, Var)>,
    pub snapshots: Vec<Dictionary<S>>,
    pub hit_cap: bool,
}

pub(crate) fn primal_feasibility<S: Scalar>(
    d: &Dictionary<S>,
    rule: RuleId,
    cap: usize,
    trace: bool,
) -> Result<Phase1<S>> {
    let mut lex = DantzigLex::new(d);
    let mut step = |current: &Dictionary<S>| match rule {
        RuleId::Bland => bland_feasibility_step(current),
        RuleId::DantzigLex => lex.step(current),
        RuleId::BRule => brule_step(current),
        RuleId::MinAngle => unreachable!("minimum-angle rule works on the dual side directly"),
    };
    let mut current = d.clone();
    let mut out = Phase1 {
        status: FeasibilityStep::Feasible,
        dictionary: d.clone(),
        pivots: 0,
        pivot_log: Vec::new(),
        snapshots: Vec::new(),
        hit_cap: false,
    };
    loop {
        let choice = step(&current);
        match choice {
            FeasibilityStep::Pivot { leave, enter } => {
                if out.pivots >= cap {
                    out.hit_cap = true;
                    out.status = choice;
                    break;
                }
                current.pivot_in_place(leave, enter)?;
                out.pivots += 1;
                out.pivot_log.push((leave, enter));
                if trace {
                    out.snapshots.push(current.clone());
                }
            }
            other => {
                out.status = other;
                break;
            }
        }
    }
    out.dictionary = current;
    Ok(out)
}

/// Drives `d` to dual feasibility with `rule`.
pub fn attain_dual_feasibility<S: Scalar>(d: &Dictionary<S>, rule: RuleId, limits: &Limits) -> Result<SolveOutcome<S>> {
    if rule == RuleId::MinAngle {
        return minangle::attain_dual_feasibility_minangle(d, limits);
    }
    let dual = d.negative_transpose();
    let phase = primal_feasibility(&dual, rule, limits.pivot_cap(), limits.trace)?;
    let mut outcome = SolveOutcome::new(phase.dictionary.negative_transpose());
    outcome.iterations = phase.pivots;
    outcome.pivots = phase.pivots;
    if limits.trace {
        let mut snapshots = phase.snapshots.into_iter();
        for (k, &(dual_leave, dual_enter)) in phase.pivot_log.iter().enumerate() {
            let mut record = StepRecord::new(rule);
            record.iteration = k + 1;
            // a dual pivot (row j, column i) is the primal pivot (leave i, enter j)
            record.pivots.push((dual_enter, dual_leave));
            if let Some(snap) = snapshots.next() {
                record.snapshot("after pivot", &snap.negative_transpose());
            }
            outcome.trace.push(record);
        }
    }
    match phase.status {
        _ if phase.hit_cap => outcome.status = Status::LimitExceeded,
        FeasibilityStep::Feasible => outcome.status = Status::DualFeasible,
        FeasibilityStep::Inconsistent { row } => {
            outcome.status = Status::DualInconsistent;
            outcome.witness = Some(row);
        }
        FeasibilityStep::Pivot { .. } => outcome.status = Status::LimitExceeded,
    }
    Ok(outcome)
}

/// Dual simplex from a dual feasible dictionary.
///
/// Leaving row: most negative basic value. Entering column: smallest
/// `d₀ⱼ / (−dᵢⱼ)` over `dᵢⱼ < 0`. Ties go to the smallest label.
pub fn dual_simplex<S: Scalar>(d: &Dictionary<S>, limits: &Limits) -> Result<SolveOutcome<S>> {
    if !d.is_dual_feasible() {
        return Err(Error::NotDualFeasible);
    }
    let cap = limits.pivot_cap();
    let eps = d.eps();
    let mut current = d.clone();
    let mut outcome = SolveOutcome::new(d.clone());
    loop {
        let leaving = current
            .basis()
            .iter()
            .enumerate()
            .filter(|(i, _)| current.rows()[i + 1][0].is_neg(eps))
            .min_by(|(i, a), (k, b)| {
                current.rows()[i + 1][0]
                    .cmp_eps(&current.rows()[k + 1][0], eps)
                    .then(a.cmp(b))
            })
            .map(|(i, &v)| (i, v));
        let Some((i, leave)) = leaving else {
            outcome.status = Status::Optimal;
            break;
        };
        let row = current.coefficients(i);
        let objective = current.objective_row();
        let mut best: Option<(usize, S)> = None;
        for (j, coef) in row.iter().enumerate() {
            if !coef.is_neg(eps) {
                continue;
            }
            let ratio = objective[j].clone() / (-coef.clone());
            best = match best {
                None => Some((j, ratio)),
                Some((bj, br)) => match ratio.cmp_eps(&br, eps) {
                    std::cmp::Ordering::Less => Some((j, ratio)),
                    std::cmp::Ordering::Equal if current.nonbasis()[j] < current.nonbasis()[bj] => Some((j, ratio)),
                    _ => Some((bj, br)),
                },
            };
        }
        let Some((j, _)) = best else {
            outcome.status = Status::PrimalInfeasible;
            outcome.witness = Some(leave);
            break;
        };
        if outcome.dual_simplex_pivots >= cap {
            outcome.status = Status::LimitExceeded;
            break;
        }
        let enter = current.nonbasis()[j];
        current.pivot_in_place(leave, enter)?;
        outcome.dual_simplex_pivots += 1;
        if limits.trace {
            let mut record = StepRecord::new(RuleId::MinAngle);
            record.iteration = outcome.dual_simplex_pivots;
            record.pivots.push((leave, enter));
            record.snapshot("after dual simplex pivot", &current);
            outcome.trace.push(record);
        }
    }
    outcome.final_dictionary = current;
    Ok(outcome)
}

/// Builds the slack dictionary for `inst` and solves it.
pub fn solve<S: Scalar>(inst: &LpInstance, rule: RuleId, limits: &Limits) -> Result<SolveOutcome<S>> {
    solve_dictionary(&Dictionary::from_instance(inst), rule, limits)
}

/// Dual feasibility with `rule`, then dual simplex.
///
/// No artificial variables are introduced. When the rule stops on an
/// unresisted improving edge, a least-index feasibility pass decides whether
/// the LP is unbounded (`DualInconsistent`) or has no feasible point at all
/// (`PrimalInfeasible`). If the minimum-angle rule hits its cap, Bland's rule
/// finishes the dual-feasibility phase and `fallback` records it.
pub fn solve_dictionary<S: Scalar>(d: &Dictionary<S>, rule: RuleId, limits: &Limits) -> Result<SolveOutcome<S>> {
    let mut outcome = attain_dual_feasibility(d, rule, limits)?;
    if outcome.status == Status::LimitExceeded && rule == RuleId::MinAngle {
        let rest = attain_dual_feasibility(
            &outcome.final_dictionary,
            RuleId::Bland,
            &Limits {
                max_iterations: None,
                trace: limits.trace,
            },
        )?;
        outcome.fallback = Some(RuleId::Bland);
        outcome.status = rest.status;
        outcome.witness = rest.witness;
        outcome.iterations += rest.iterations;
        outcome.pivots += rest.pivots;
        outcome.trace.extend(rest.trace);
        outcome.final_dictionary = rest.final_dictionary;
    }
    match outcome.status {
        Status::DualFeasible => {
            let phase2 = dual_simplex(&outcome.final_dictionary, limits)?;
            outcome.status = phase2.status;
            outcome.witness = phase2.witness;
            outcome.dual_simplex_pivots = phase2.dual_simplex_pivots;
            outcome.trace.extend(phase2.trace);
            outcome.final_dictionary = phase2.final_dictionary;
        }
        Status::DualInconsistent => {
            let check = primal_feasibility(&outcome.final_dictionary, RuleId::Bland, DEFAULT_PIVOT_CAP, false)?;
            if check.hit_cap {
                outcome.status = Status::LimitExceeded;
            } else if let FeasibilityStep::Inconsistent { row } = check.status {
                outcome.status = Status::PrimalInfeasible;
                outcome.witness = Some(row);
                outcome.final_dictionary = check.dictionary;
            }
        }
        _ => {}
    }
    Ok(outcome)
}
