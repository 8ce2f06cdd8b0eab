//! Minimum-angle rule for reaching a dual feasible dictionary.
//!
//! Each pass collapses all improving columns into a single improving edge by
//! adding a driving variable `x_r = −Σ_{j∈L} d₀ⱼ xⱼ` (the single improving
//! edge, or SIE, transformation), then pivots that edge against the most
//! contrary resisting constraint: the row whose h-vector has the largest
//! cosine with the edge direction. The driving row is dropped again at the
//! end of the pass so the dictionary keeps its original size.
//!
//! Nothing guarantees termination, so passes are capped; see [`Limits`].

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};
use crate::solver::{Limits, RuleId, SolveOutcome, Status, StepRecord};
use crate::tableau::{Dictionary, Var};

/// Cosines closer than this are treated as ties in float mode.
pub const COSINE_TIE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieContext {
    pub driving: Var,
    pub main_direction: Var,
    pub improving: Vec<Var>,
    /// Whether a driving row was physically added this pass.
    pub inserted: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CosineTable {
    /// `(row label, cosine)` for every resisting row, in basis order.
    pub entries: Vec<(Var, f64)>,
}

impl CosineTable {
    pub fn get(&self, k: Var) -> Option<f64> {
        self.entries.iter().find(|(v, _)| *v == k).map(|(_, c)| *c)
    }
}

/// Outcome of one pass of the rule.
#[derive(Debug, Clone)]
pub enum Iteration<S> {
    AlreadyDualFeasible,
    Pivoted(Dictionary<S>, StepRecord<S>),
    /// The improving edge `column` meets no resisting constraint. `dictionary`
    /// is the (possibly SIE-extended) dictionary carrying that certificate.
    DualInconsistent {
        dictionary: Dictionary<S>,
        column: Var,
        record: StepRecord<S>,
    },
}

/// Nonbasic labels with a negative objective entry, in nonbasis order.
pub fn improving_set<S: Scalar>(d: &Dictionary<S>) -> Vec<Var> {
    d.nonbasis()
        .iter()
        .zip(d.objective_row())
        .filter(|(_, v)| v.is_neg(d.eps()))
        .map(|(&j, _)| j)
        .collect()
}

/// Member of `improving` with the most negative objective entry, smallest label on ties.
pub fn main_direction<S: Scalar>(d: &Dictionary<S>, improving: &[Var]) -> Option<Var> {
    let mut best: Option<(Var, &S)> = None;
    for &j in improving {
        let value = d.entry(Var(0), j)?;
        best = match best {
            None => Some((j, value)),
            Some((bj, bv)) => match value.cmp_eps(bv, d.eps()) {
                Ordering::Less => Some((j, value)),
                Ordering::Equal if j < bj => Some((j, value)),
                _ => Some((bj, bv)),
            },
        };
    }
    best.map(|(j, _)| j)
}

/// Adds the driving row for `improving` and pivots it against `main`.
///
/// Afterwards the driving variable is the only improving column and its
/// objective entry is exactly `−1`.
pub fn sie_transform<S: Scalar>(
    d: &Dictionary<S>,
    improving: &[Var],
    main: Var,
) -> Result<(Dictionary<S>, SieContext)> {
    if improving.len() <= 1 {
        return Err(Error::DegenerateSie(improving.len()));
    }
    if !improving.contains(&main) {
        return Err(Error::NotNonbasic(main));
    }
    let driving = d.next_label();
    let mut row = Vec::with_capacity(d.num_nonbasic() + 1);
    row.push(S::zero());
    for (j, value) in d.nonbasis().iter().zip(d.objective_row()) {
        if improving.contains(j) {
            // x_r = Σ (−d₀ⱼ) xⱼ must be a nonnegative combination.
            debug_assert!(value.is_neg(d.eps()));
            row.push(value.clone());
        } else {
            row.push(S::zero());
        }
    }
    let mut next = d.clone();
    next.push_row(driving, row);
    next.pivot_in_place(driving, main)?;
    Ok((
        next,
        SieContext {
            driving,
            main_direction: main,
            improving: improving.to_vec(),
            inserted: true,
        },
    ))
}

/// Basic labels whose constraint resists motion along nonbasic `r` (`dᵢᵣ > 0`).
pub fn resisting_set<S: Scalar>(d: &Dictionary<S>, r: Var) -> Vec<Var> {
    let Some(j) = d.nonbasic_pos(r) else {
        return Vec::new();
    };
    d.basis()
        .iter()
        .enumerate()
        .filter(|(i, _)| d.coefficients(*i)[j].is_pos(d.eps()))
        .map(|(_, &k)| k)
        .collect()
}

/// Signed squared cosine `dₖᵣ·|dₖᵣ| / ‖dₖ‖²` between row `k`'s h-vector and edge `r`.
///
/// Monotone in the cosine, so exact comparisons never need a square root.
pub fn cosine_squared<S: Scalar>(d: &Dictionary<S>, k: Var, r: Var) -> Result<S> {
    let i = d.basic_pos(k).ok_or(Error::NotBasic(k))?;
    let j = d.nonbasic_pos(r).ok_or(Error::NotNonbasic(r))?;
    let row = d.coefficients(i);
    let norm_sq = row.iter().fold(S::zero(), |acc, v| acc + v.clone() * v.clone());
    let zero_norm = match S::MODE {
        Mode::Exact => norm_sq.is_zero(),
        Mode::Float => norm_sq.to_f64().sqrt() <= d.eps(),
    };
    if zero_norm {
        return Err(Error::ZeroRow(k));
    }
    let dot = row[j].clone();
    Ok(dot.clone() * dot.abs() / norm_sq)
}

/// Cosine of the angle between row `k`'s h-vector and the unit edge along `r`.
pub fn cosine<S: Scalar>(d: &Dictionary<S>, k: Var, r: Var) -> Result<f64> {
    let sq = cosine_squared(d, k, r)?.to_f64();
    Ok(sq.signum() * sq.abs().sqrt())
}

/// Most contrary member of `resisting` with respect to edge `r`: largest cosine,
/// smallest label on ties.
pub fn most_contrary<S: Scalar>(d: &Dictionary<S>, r: Var, resisting: &[Var]) -> Result<(Option<Var>, CosineTable)> {
    let mut table = CosineTable::default();
    let mut best: Option<(Var, S, f64)> = None;
    for &k in d.basis() {
        if !resisting.contains(&k) {
            continue;
        }
        let sq = cosine_squared(d, k, r)?;
        let cos = {
            let v = sq.to_f64();
            v.signum() * v.abs().sqrt()
        };
        table.entries.push((k, cos));
        let better = match &best {
            None => true,
            Some((bk, bsq, bcos)) => {
                let ord = match S::MODE {
                    Mode::Exact => sq.partial_cmp(bsq).unwrap_or(Ordering::Equal),
                    Mode::Float => {
                        if (cos - bcos).abs() <= COSINE_TIE {
                            Ordering::Equal
                        } else if cos > *bcos {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        }
                    }
                };
                ord == Ordering::Greater || (ord == Ordering::Equal && k < *bk)
            }
        };
        if better {
            best = Some((k, sq, cos));
        }
    }
    Ok((best.map(|(k, _, _)| k), table))
}

/// One full pass of the minimum-angle rule.
pub fn minangle_iteration<S: Scalar>(d: &Dictionary<S>, trace: bool) -> Result<Iteration<S>> {
    let improving = improving_set(d);
    let Some(main) = main_direction(d, &improving) else {
        return Ok(Iteration::AlreadyDualFeasible);
    };
    let mut record = StepRecord::new(RuleId::MinAngle);
    record.improving = improving.clone();
    record.main_direction = Some(main);
    if trace {
        record.snapshot("initial", d);
    }

    let (mut work, edge) = if improving.len() > 1 {
        let (next, ctx) = sie_transform(d, &improving, main)?;
        record.pivots.push((ctx.driving, main));
        if trace {
            let mut extended = d.clone();
            extended.push_row(
                ctx.driving,
                std::iter::once(S::zero())
                    .chain(d.nonbasis().iter().zip(d.objective_row()).map(|(j, v)| {
                        if improving.contains(j) {
                            v.clone()
                        } else {
                            S::zero()
                        }
                    }))
                    .collect(),
            );
            record.snapshot("driving row inserted", &extended);
            record.snapshot("after SIE pivot", &next);
        }
        let edge = ctx.driving;
        record.sie = Some(ctx);
        (next, edge)
    } else {
        (d.clone(), main)
    };
    record.edge = Some(edge);

    let resisting = resisting_set(&work, edge);
    record.resisting = resisting.clone();
    let (chosen, table) = most_contrary(&work, edge, &resisting)?;
    record.cosines = Some(table);
    let Some(leave) = chosen else {
        return Ok(Iteration::DualInconsistent {
            dictionary: work,
            column: edge,
            record,
        });
    };

    work.pivot_in_place(leave, edge)?;
    record.pivots.push((leave, edge));
    if trace {
        record.snapshot("after main pivot", &work);
    }
    if record.sie.is_some() {
        work.remove_row(edge)?;
        record.removed = Some(edge);
        if trace {
            record.snapshot("driving row removed", &work);
        }
    }
    Ok(Iteration::Pivoted(work, record))
}

/// Default pass cap: `20·(m + n)`.
pub fn default_cap<S: Scalar>(d: &Dictionary<S>) -> usize {
    20 * (d.num_basic() + d.num_nonbasic())
}

/// Repeats [`minangle_iteration`] until the dictionary is dual feasible, an
/// unresisted improving edge is found, or the pass cap is reached.
pub fn attain_dual_feasibility_minangle<S: Scalar>(d: &Dictionary<S>, limits: &Limits) -> Result<SolveOutcome<S>> {
    let cap = limits.max_iterations.unwrap_or_else(|| default_cap(d));
    let mut current = d.clone();
    let mut outcome = SolveOutcome::new(current.clone());
    loop {
        if current.is_dual_feasible() {
            outcome.status = Status::DualFeasible;
            break;
        }
        if outcome.iterations >= cap {
            outcome.status = Status::LimitExceeded;
            break;
        }
        match minangle_iteration(&current, limits.trace)? {
            Iteration::AlreadyDualFeasible => {
                outcome.status = Status::DualFeasible;
                break;
            }
            Iteration::Pivoted(next, mut record) => {
                outcome.iterations += 1;
                outcome.pivots += record.pivots.len();
                record.iteration = outcome.iterations;
                outcome.push_record(record, limits.trace);
                current = next;
            }
            Iteration::DualInconsistent {
                dictionary,
                column,
                mut record,
            } => {
                record.iteration = outcome.iterations + 1;
                outcome.pivots += record.pivots.len();
                outcome.push_record(record, limits.trace);
                outcome.status = Status::DualInconsistent;
                outcome.witness = Some(column);
                current = dictionary;
                break;
            }
        }
    }
    outcome.final_dictionary = current;
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, DEFAULT_EPS};
    use crate::tableau::LpInstance;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn example() -> Dictionary<Rational> {
        let inst = LpInstance::from_integers(&[3, 5], &[vec![1, 0], vec![0, 2], vec![3, 2]], &[4, 12, 18]).unwrap();
        Dictionary::from_instance(&inst)
    }

    #[test]
    fn improving_set_on_example() {
        let d = example();
        assert_eq!(improving_set(&d), vec![Var(1), Var(2)]);
        assert_eq!(main_direction(&d, &improving_set(&d)), Some(Var(2)));
    }

    #[test]
    fn improving_set_empty_when_dual_feasible() {
        let inst = LpInstance::from_integers(&[-1, 0], &[vec![1, 1]], &[3]).unwrap();
        let d: Dictionary<Rational> = Dictionary::from_instance(&inst);
        assert!(improving_set(&d).is_empty());
        assert!(matches!(
            minangle_iteration(&d, false).unwrap(),
            Iteration::AlreadyDualFeasible
        ));
    }

    #[test]
    fn sie_on_example() {
        let d = example();
        let (next, ctx) = sie_transform(&d, &[Var(1), Var(2)], Var(2)).unwrap();
        assert_eq!(ctx.driving, Var(6));
        assert!(ctx.inserted);
        assert_eq!(next.nonbasis(), &[Var(1), Var(6)]);
        assert_eq!(next.basis(), &[Var(3), Var(4), Var(5), Var(2)]);
        assert_eq!(next.objective_row(), &[q(0, 1), q(-1, 1)]);
        assert_eq!(next.objective_value(), &q(0, 1));
        assert_eq!(next.rows()[2], vec![q(12, 1), q(-6, 5), q(2, 5)]);
        assert_eq!(next.rows()[3], vec![q(18, 1), q(9, 5), q(2, 5)]);
        assert_eq!(next.rows()[4], vec![q(0, 1), q(3, 5), q(-1, 5)]);
        assert_eq!(resisting_set(&next, Var(6)), vec![Var(4), Var(5)]);
    }

    #[test]
    fn sie_requires_two_improving_columns() {
        let d = example();
        assert_eq!(
            sie_transform(&d, &[Var(2)], Var(2)).unwrap_err(),
            Error::DegenerateSie(1)
        );
    }

    #[test]
    fn cosines_match_worked_example() {
        let d = example();
        let (next, _) = sie_transform(&d, &[Var(1), Var(2)], Var(2)).unwrap();
        assert!((cosine(&next, Var(4), Var(6)).unwrap() - 0.316).abs() < 5e-4);
        assert!((cosine(&next, Var(5), Var(6)).unwrap() - 0.217).abs() < 5e-4);
        assert_eq!(cosine(&next, Var(3), Var(6)).unwrap(), 0.0);
        let (m, table) = most_contrary(&next, Var(6), &[Var(4), Var(5)]).unwrap();
        assert_eq!(m, Some(Var(4)));
        assert_eq!(table.entries.len(), 2);
    }

    #[test]
    fn zero_row_has_no_cosine() {
        let d: Dictionary<f64> = Dictionary::from_parts(
            vec![Var(2)],
            vec![Var(1)],
            vec![vec![0.0, -1.0], vec![1.0, 0.0]],
            DEFAULT_EPS,
        )
        .unwrap();
        assert_eq!(cosine(&d, Var(2), Var(1)).unwrap_err(), Error::ZeroRow(Var(2)));
    }

    #[test]
    fn example_passes() {
        let d = example();
        let Iteration::Pivoted(first, rec) = minangle_iteration(&d, false).unwrap() else {
            panic!("expected a pivot");
        };
        assert_eq!(rec.pivots, vec![(Var(6), Var(2)), (Var(4), Var(6))]);
        assert_eq!(rec.removed, Some(Var(6)));
        assert_eq!(first.objective_value(), &q(30, 1));
        assert_eq!(first.objective_row(), &[q(-3, 1), q(5, 2)]);
        assert_eq!(first.basis(), &[Var(3), Var(5), Var(2)]);

        let Iteration::Pivoted(second, rec) = minangle_iteration(&first, false).unwrap() else {
            panic!("expected a pivot");
        };
        assert!(rec.sie.is_none());
        assert_eq!(rec.removed, None);
        assert_eq!(rec.resisting, vec![Var(3), Var(5)]);
        assert_eq!(rec.pivots, vec![(Var(3), Var(1))]);
        assert_eq!(second.objective_value(), &q(42, 1));
        assert_eq!(second.objective_row(), &[q(3, 1), q(5, 2)]);
        assert!(matches!(
            minangle_iteration(&second, false).unwrap(),
            Iteration::AlreadyDualFeasible
        ));
    }

    #[test]
    fn unresisted_single_edge_is_dual_inconsistent() {
        let inst = LpInstance::from_integers(&[1], &[vec![-1]], &[1]).unwrap();
        let d: Dictionary<Rational> = Dictionary::from_instance(&inst);
        match minangle_iteration(&d, false).unwrap() {
            Iteration::DualInconsistent { column, .. } => assert_eq!(column, Var(1)),
            other => panic!("unexpected {other:?}"),
        }
        let out = attain_dual_feasibility_minangle(&d, &Limits::default()).unwrap();
        assert_eq!(out.status, Status::DualInconsistent);
        assert_eq!(out.witness, Some(Var(1)));
    }

    #[test]
    fn loop_counts_iterations_and_pivots() {
        let out = attain_dual_feasibility_minangle(&example(), &Limits::default()).unwrap();
        assert_eq!(out.status, Status::DualFeasible);
        assert_eq!(out.iterations, 2);
        assert_eq!(out.pivots, 3);

        let done = attain_dual_feasibility_minangle(&out.final_dictionary, &Limits::default()).unwrap();
        assert_eq!(done.iterations, 0);
        assert_eq!(done.status, Status::DualFeasible);
    }

    #[test]
    fn cap_is_reported() {
        let limits = Limits {
            max_iterations: Some(1),
            ..Limits::default()
        };
        let out = attain_dual_feasibility_minangle(&example(), &limits).unwrap();
        assert_eq!(out.status, Status::LimitExceeded);
        assert_eq!(out.iterations, 1);
    }
}
