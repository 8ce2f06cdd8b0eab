//! Dictionaries (tableaus) for `max cᵀx s.t. Ax ≤ b, x ≥ 0` and their pivot algebra.
//!
//! A [`Dictionary`] stores the `(1 + m) × (1 + n)` matrix
//!
//! ```text
//!   [ z   d₀₁ … d₀ₙ ]      d₀ⱼ = −c̄ⱼ  (negated reduced costs)
//!   [ b̄ᵢ  dᵢ₁ … dᵢₙ ]      dᵢⱼ = āᵢⱼ
//! ```
//!
//! where every row reads `x_row + Σⱼ dᵢⱼ xⱼ = dᵢ₀` and row 0 is the objective
//! (`z − c̄ᵀx_N = z₀`). Rows and columns are positional: a pivot swaps the
//! labels of the leaving row and the entering column in place, which keeps
//! the layout of successive tables stable for traces.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar, DEFAULT_EPS};

/// Variable label. Decision variables are `1..=n`, slacks `n+1..=n+m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub usize);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `max cᵀx` subject to `Ax ≤ b`, `x ≥ 0`, with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpInstance {
    objective: Vec<Rational>,
    matrix: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
}

impl LpInstance {
    pub fn new(objective: Vec<Rational>, matrix: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Result<Self> {
        let n = objective.len();
        let m = rhs.len();
        if n == 0 || m == 0 {
            return Err(Error::InvalidInstance(format!("need m ≥ 1 and n ≥ 1, got {m}×{n}")));
        }
        if matrix.len() != m {
            return Err(Error::InvalidInstance(format!(
                "constraint matrix has {} rows, rhs has {m}",
                matrix.len()
            )));
        }
        if let Some((i, row)) = matrix.iter().enumerate().find(|(_, row)| row.len() != n) {
            return Err(Error::InvalidInstance(format!(
                "row {} has {} coefficients, expected {n}",
                i + 1,
                row.len()
            )));
        }
        Ok(LpInstance { objective, matrix, rhs })
    }

    pub fn from_integers(objective: &[i64], matrix: &[Vec<i64>], rhs: &[i64]) -> Result<Self> {
        let q = |v: &i64| Rational::from_integer((*v).into());
        Self::new(
            objective.iter().map(q).collect(),
            matrix.iter().map(|row| row.iter().map(q).collect()).collect(),
            rhs.iter().map(q).collect(),
        )
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn num_cols(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    /// Label of the slack variable attached to constraint `i` (0-based).
    pub fn slack(&self, i: usize) -> Var {
        Var(self.num_cols() + i + 1)
    }
}

/// Sign-pattern classification of a dictionary.
///
/// Variants are listed from strongest to weakest; [`Dictionary::classify`]
/// reports the first one that applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DictionaryStatus {
    OptimalFeasible,
    /// A row with negative value and no negative coefficient: the system is infeasible.
    Inconsistent {
        row: Var,
    },
    /// An improving column with no positive coefficient: the objective is unbounded
    /// along it whenever the system is feasible.
    Unbounded {
        column: Var,
    },
    PrimalFeasible,
    DualFeasible,
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dictionary<S> {
    basis: Vec<Var>,
    nonbasis: Vec<Var>,
    rows: Vec<Vec<S>>,
    eps: f64,
}

impl<S: Scalar> Dictionary<S> {
    /// Builds a dictionary from raw parts. `rows[0]` is the objective row.
    pub fn from_parts(basis: Vec<Var>, nonbasis: Vec<Var>, rows: Vec<Vec<S>>, eps: f64) -> Result<Self> {
        if rows.len() != basis.len() + 1 {
            return Err(Error::InvalidInstance(format!(
                "tableau has {} rows for {} basic variables",
                rows.len(),
                basis.len()
            )));
        }
        if let Some(row) = rows.iter().find(|row| row.len() != nonbasis.len() + 1) {
            return Err(Error::InvalidInstance(format!(
                "tableau row has {} entries for {} nonbasic variables",
                row.len(),
                nonbasis.len()
            )));
        }
        let mut labels: Vec<Var> = basis.iter().chain(&nonbasis).copied().collect();
        labels.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) || labels.first() == Some(&Var(0)) {
            return Err(Error::InvalidInstance("labels must be unique positive integers".into()));
        }
        Ok(Dictionary {
            basis,
            nonbasis,
            rows,
            eps,
        })
    }

    /// Initial slack dictionary: `N = {1..n}`, `B = {n+1..n+m}`.
    pub fn from_instance(inst: &LpInstance) -> Self {
        Self::from_instance_with_eps(inst, DEFAULT_EPS)
    }

    pub fn from_instance_with_eps(inst: &LpInstance, eps: f64) -> Self {
        let n = inst.num_cols();
        let mut rows = Vec::with_capacity(inst.num_rows() + 1);
        let mut objective = Vec::with_capacity(n + 1);
        objective.push(S::zero());
        objective.extend(inst.objective().iter().map(|c| -S::from_rational(c)));
        rows.push(objective);
        for (a, b) in inst.matrix().iter().zip(inst.rhs()) {
            let mut row = Vec::with_capacity(n + 1);
            row.push(S::from_rational(b));
            row.extend(a.iter().map(S::from_rational));
            rows.push(row);
        }
        Dictionary {
            basis: (0..inst.num_rows()).map(|i| inst.slack(i)).collect(),
            nonbasis: (1..=n).map(Var).collect(),
            rows,
            eps,
        }
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn basis(&self) -> &[Var] {
        &self.basis
    }

    pub fn nonbasis(&self) -> &[Var] {
        &self.nonbasis
    }

    pub fn num_basic(&self) -> usize {
        self.basis.len()
    }

    pub fn num_nonbasic(&self) -> usize {
        self.nonbasis.len()
    }

    /// The full `(1 + m) × (1 + n)` tableau, objective row first.
    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn objective_value(&self) -> &S {
        &self.rows[0][0]
    }

    /// Objective-row entries `d₀ⱼ`, in nonbasis order.
    pub fn objective_row(&self) -> &[S] {
        &self.rows[0][1..]
    }

    /// Basic values `dᵢ₀`, in basis order.
    pub fn rhs(&self) -> Vec<&S> {
        self.rows[1..].iter().map(|row| &row[0]).collect()
    }

    /// Coefficient row of basic variable at position `pos`, excluding the rhs.
    pub fn coefficients(&self, pos: usize) -> &[S] {
        &self.rows[pos + 1][1..]
    }

    pub fn basic_pos(&self, v: Var) -> Option<usize> {
        self.basis.iter().position(|&b| b == v)
    }

    pub fn nonbasic_pos(&self, v: Var) -> Option<usize> {
        self.nonbasis.iter().position(|&n| n == v)
    }

    /// Entry `d(row, col)`; `Var(0)` addresses the objective row / rhs column.
    pub fn entry(&self, row: Var, col: Var) -> Option<&S> {
        let i = if row == Var(0) { 0 } else { self.basic_pos(row)? + 1 };
        let j = if col == Var(0) { 0 } else { self.nonbasic_pos(col)? + 1 };
        Some(&self.rows[i][j])
    }

    /// Fresh label above every label currently in use (`|B| + |N| + 1`).
    pub fn next_label(&self) -> Var {
        Var(self.basis.len() + self.nonbasis.len() + 1)
    }

    /// Exchanges basic `leave` with nonbasic `enter`, returning the new dictionary.
    pub fn pivot(&self, leave: Var, enter: Var) -> Result<Self> {
        let mut next = self.clone();
        next.pivot_in_place(leave, enter)?;
        Ok(next)
    }

    pub fn pivot_in_place(&mut self, leave: Var, enter: Var) -> Result<()> {
        let i = self.basic_pos(leave).ok_or(Error::NotBasic(leave))?;
        let j = self.nonbasic_pos(enter).ok_or(Error::NotNonbasic(enter))?;
        self.pivot_at(i, j)
    }

    /// Gauss–Jordan exchange on basis position `i` and nonbasis position `j`.
    pub(crate) fn pivot_at(&mut self, i: usize, j: usize) -> Result<()> {
        let (pr, pc) = (i + 1, j + 1);
        let p = self.rows[pr][pc].clone();
        if p.is_zero_eps(self.eps) || p.is_zero() {
            return Err(Error::ZeroPivot {
                leave: self.basis[i],
                enter: self.nonbasis[j],
            });
        }
        let inv = S::one() / p;
        let width = self.rows[pr].len();
        for k in 0..width {
            self.rows[pr][k] = if k == pc {
                inv.clone()
            } else {
                self.rows[pr][k].clone() * inv.clone()
            };
        }
        let pivot_row = std::mem::take(&mut self.rows[pr]);
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == pr || row[pc].is_zero() {
                continue;
            }
            let factor = row[pc].clone();
            for k in 0..width {
                row[k] = if k == pc {
                    -(factor.clone() * inv.clone())
                } else {
                    row[k].clone() - factor.clone() * pivot_row[k].clone()
                };
            }
        }
        self.rows[pr] = pivot_row;
        std::mem::swap(&mut self.basis[i], &mut self.nonbasis[j]);
        Ok(())
    }

    /// Appends a basic row labelled `label`; `row` holds the rhs followed by one
    /// coefficient per nonbasic column.
    pub(crate) fn push_row(&mut self, label: Var, row: Vec<S>) {
        debug_assert_eq!(row.len(), self.nonbasis.len() + 1);
        self.basis.push(label);
        self.rows.push(row);
    }

    /// Drops the row of basic variable `label`.
    pub(crate) fn remove_row(&mut self, label: Var) -> Result<Vec<S>> {
        let i = self.basic_pos(label).ok_or(Error::NotBasic(label))?;
        self.basis.remove(i);
        Ok(self.rows.remove(i + 1))
    }

    pub fn is_primal_feasible(&self) -> bool {
        self.rows[1..].iter().all(|row| !row[0].is_neg(self.eps))
    }

    pub fn is_dual_feasible(&self) -> bool {
        self.objective_row().iter().all(|d| !d.is_neg(self.eps))
    }

    /// Smallest-label basic variable whose row certifies infeasibility.
    pub fn inconsistent_row(&self) -> Option<Var> {
        self.basis
            .iter()
            .zip(&self.rows[1..])
            .filter(|(_, row)| row[0].is_neg(self.eps) && row[1..].iter().all(|d| !d.is_neg(self.eps)))
            .map(|(&v, _)| v)
            .min()
    }

    /// Smallest-label improving column with no positive coefficient.
    pub fn unbounded_column(&self) -> Option<Var> {
        (0..self.nonbasis.len())
            .filter(|&j| {
                self.rows[0][j + 1].is_neg(self.eps) && self.rows[1..].iter().all(|row| !row[j + 1].is_pos(self.eps))
            })
            .map(|j| self.nonbasis[j])
            .min()
    }

    pub fn classify(&self) -> DictionaryStatus {
        let primal = self.is_primal_feasible();
        let dual = self.is_dual_feasible();
        if primal && dual {
            return DictionaryStatus::OptimalFeasible;
        }
        if let Some(row) = self.inconsistent_row() {
            return DictionaryStatus::Inconsistent { row };
        }
        if let Some(column) = self.unbounded_column() {
            return DictionaryStatus::Unbounded { column };
        }
        match (primal, dual) {
            (true, _) => DictionaryStatus::PrimalFeasible,
            (_, true) => DictionaryStatus::DualFeasible,
            _ => DictionaryStatus::None,
        }
    }

    /// Values of the decision variables `x₁..xₙ` of `inst` in the basic solution.
    pub fn basic_solution(&self, inst: &LpInstance) -> Vec<S> {
        (1..=inst.num_cols())
            .map(|label| match self.basic_pos(Var(label)) {
                Some(i) => self.rows[i + 1][0].clone(),
                None => S::zero(),
            })
            .collect()
    }

    /// Dictionary of the dual problem.
    ///
    /// Rows become columns: the dual's basic values are the primal objective row,
    /// its objective row is the primal rhs, its coefficients are `−Āᵀ`, and
    /// `z` changes sign. Basis and nonbasis labels trade places, so
    /// `is_dual_feasible(D) ⇔ is_primal_feasible(negative_transpose(D))`.
    pub fn negative_transpose(&self) -> Self {
        let m = self.basis.len();
        let n = self.nonbasis.len();
        let mut rows = Vec::with_capacity(n + 1);
        let mut top = Vec::with_capacity(m + 1);
        top.push(-self.rows[0][0].clone());
        top.extend(self.rows[1..].iter().map(|row| row[0].clone()));
        rows.push(top);
        for j in 1..=n {
            let mut row = Vec::with_capacity(m + 1);
            row.push(self.rows[0][j].clone());
            row.extend(self.rows[1..].iter().map(|r| -r[j].clone()));
            rows.push(row);
        }
        Dictionary {
            basis: self.nonbasis.clone(),
            nonbasis: self.basis.clone(),
            rows,
            eps: self.eps,
        }
    }

    /// Float copy of this dictionary, for display and diagnostics.
    pub fn to_float(&self) -> Dictionary<f64> {
        Dictionary {
            basis: self.basis.clone(),
            nonbasis: self.nonbasis.clone(),
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(Scalar::to_f64).collect())
                .collect(),
            eps: self.eps,
        }
    }
}

impl<S: Scalar> fmt::Display for Dictionary<S> {
    /// Renders the tableau with basic labels down the left and nonbasic labels
    /// across the top; the objective row is labelled `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(Scalar::render).collect())
            .collect();
        let mut widths = vec![1usize; self.nonbasis.len() + 1];
        for (k, w) in widths.iter_mut().enumerate().skip(1) {
            *w = self.nonbasis[k - 1].to_string().len();
        }
        for row in &cells {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let label_width = self.basis.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        write!(f, "{:>lw$} | {:>w$} |", "", "", lw = label_width, w = widths[0])?;
        for (v, w) in self.nonbasis.iter().zip(&widths[1..]) {
            write!(f, " {:>w$}", v.to_string(), w = w)?;
        }
        writeln!(f)?;
        for (r, row) in cells.iter().enumerate() {
            let label = if r == 0 {
                "0".to_string()
            } else {
                self.basis[r - 1].to_string()
            };
            write!(f, "{:>lw$} | {:>w$} |", label, row[0], lw = label_width, w = widths[0])?;
            for (cell, w) in row[1..].iter().zip(&widths[1..]) {
                write!(f, " {:>w$}", cell, w = w)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn example() -> LpInstance {
        LpInstance::from_integers(&[3, 5], &[vec![1, 0], vec![0, 2], vec![3, 2]], &[4, 12, 18]).unwrap()
    }

    #[test]
    fn builds_slack_dictionary() {
        let d: Dictionary<Rational> = Dictionary::from_instance(&example());
        assert_eq!(d.basis(), &[Var(3), Var(4), Var(5)]);
        assert_eq!(d.nonbasis(), &[Var(1), Var(2)]);
        assert_eq!(d.objective_row(), &[q(-3, 1), q(-5, 1)]);
        assert_eq!(d.rows()[1], vec![q(4, 1), q(1, 1), q(0, 1)]);
        assert_eq!(d.rows()[2], vec![q(12, 1), q(0, 1), q(2, 1)]);
        assert_eq!(d.rows()[3], vec![q(18, 1), q(3, 1), q(2, 1)]);
        assert_eq!(d.next_label(), Var(6));
    }

    #[test]
    fn zero_instance_is_optimal_feasible() {
        let inst = LpInstance::from_integers(&[0], &[vec![0]], &[0]).unwrap();
        let d: Dictionary<Rational> = Dictionary::from_instance(&inst);
        assert!(d.rows().iter().flatten().all(|v| v == &q(0, 1)));
        assert_eq!(d.classify(), DictionaryStatus::OptimalFeasible);
    }

    #[test]
    fn negative_cost_starts_dual_feasible() {
        let inst = LpInstance::from_integers(&[-1], &[vec![1]], &[5]).unwrap();
        let d: Dictionary<Rational> = Dictionary::from_instance(&inst);
        assert_eq!(d.objective_row(), &[q(1, 1)]);
        assert!(d.is_dual_feasible());
    }

    #[test]
    fn rejects_malformed_instances() {
        assert!(LpInstance::from_integers(&[], &[vec![]], &[1]).is_err());
        assert!(LpInstance::from_integers(&[1, 2], &[vec![1]], &[1]).is_err());
        assert!(LpInstance::from_integers(&[1], &[vec![1], vec![1]], &[1]).is_err());
    }

    #[test]
    fn zero_pivot_is_an_error() {
        let d: Dictionary<Rational> = Dictionary::from_instance(&example());
        assert_eq!(
            d.pivot(Var(3), Var(2)),
            Err(Error::ZeroPivot {
                leave: Var(3),
                enter: Var(2)
            })
        );
        assert_eq!(d.pivot(Var(1), Var(2)), Err(Error::NotBasic(Var(1))));
        assert_eq!(d.pivot(Var(3), Var(4)), Err(Error::NotNonbasic(Var(4))));
        let f: Dictionary<f64> =
            Dictionary::from_parts(vec![Var(2)], vec![Var(1)], vec![vec![0.0, 1.0], vec![1.0, 1e-9]], 1e-7).unwrap();
        assert!(matches!(f.pivot(Var(2), Var(1)), Err(Error::ZeroPivot { .. })));
    }

    #[test]
    fn classify_unbounded_and_inconsistent() {
        let d: Dictionary<Rational> = Dictionary::from_parts(
            vec![Var(2), Var(3)],
            vec![Var(1)],
            vec![vec![q(0, 1), q(-1, 1)], vec![q(1, 1), q(-2, 1)], vec![q(3, 1), q(0, 1)]],
            DEFAULT_EPS,
        )
        .unwrap();
        assert_eq!(d.classify(), DictionaryStatus::Unbounded { column: Var(1) });

        let d: Dictionary<Rational> = Dictionary::from_parts(
            vec![Var(2)],
            vec![Var(1)],
            vec![vec![q(1, 1), q(1, 1)], vec![q(-1, 1), q(1, 1)]],
            DEFAULT_EPS,
        )
        .unwrap();
        assert_eq!(d.classify(), DictionaryStatus::Inconsistent { row: Var(2) });
    }

    #[test]
    fn from_parts_validates_shape_and_labels() {
        let bad = Dictionary::<f64>::from_parts(vec![Var(1)], vec![Var(1)], vec![vec![0.0; 2]; 2], 1e-7);
        assert!(bad.is_err());
        let bad = Dictionary::<f64>::from_parts(vec![Var(1)], vec![Var(2)], vec![vec![0.0; 3]; 2], 1e-7);
        assert!(bad.is_err());
    }

    #[test]
    fn displays_labelled_table() {
        let d: Dictionary<Rational> = Dictionary::from_instance(&example());
        let text = d.to_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[0].ends_with(" 1  2"));
        assert!(lines[1].starts_with("0 |  0 |"));
        assert!(lines[1].ends_with("-3 -5"));
        assert!(lines[4].starts_with("5 | 18 |"));
    }

    #[test]
    fn basic_solutions_along_the_example() {
        let inst = example();
        let d: Dictionary<Rational> = Dictionary::from_instance(&inst);
        assert_eq!(d.basic_solution(&inst), vec![q(0, 1), q(0, 1)]);
        let d = d.pivot(Var(4), Var(2)).unwrap().pivot(Var(3), Var(1)).unwrap();
        assert_eq!(d.objective_value(), &q(42, 1));
        assert_eq!(d.basic_solution(&inst), vec![q(4, 1), q(6, 1)]);
        assert_eq!(d.entry(Var(5), Var(0)), Some(&q(-6, 1)));
        assert_eq!(d.classify(), DictionaryStatus::DualFeasible);
        assert!(!d.is_primal_feasible());
        let d = d.pivot(Var(5), Var(3)).unwrap();
        assert_eq!(d.objective_value(), &q(36, 1));
        assert_eq!(d.basic_solution(&inst), vec![q(2, 1), q(6, 1)]);
        assert_eq!(d.classify(), DictionaryStatus::OptimalFeasible);
    }

    #[test]
    fn negative_transpose_of_example() {
        let d: Dictionary<Rational> = Dictionary::from_instance(&example());
        let t = d.negative_transpose();
        assert_eq!(t.basis(), &[Var(1), Var(2)]);
        assert_eq!(t.nonbasis(), &[Var(3), Var(4), Var(5)]);
        assert_eq!(t.rhs(), vec![&q(-3, 1), &q(-5, 1)]);
        assert_eq!(t.objective_row(), &[q(4, 1), q(12, 1), q(18, 1)]);
        assert!(!t.is_primal_feasible());
        assert!(t.is_dual_feasible());
        assert_eq!(t.negative_transpose(), d);

        let optimal = d
            .pivot(Var(4), Var(2))
            .unwrap()
            .pivot(Var(3), Var(1))
            .unwrap()
            .pivot(Var(5), Var(3))
            .unwrap();
        assert_eq!(
            optimal.negative_transpose().classify(),
            DictionaryStatus::OptimalFeasible
        );
    }
}
