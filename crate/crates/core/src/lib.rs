//! Dictionary-based linear programming with a minimum-angle rule for dual feasibility.
//!
//! Problems have the form `max cᵀx s.t. Ax ≤ b, x ≥ 0`. Solving runs two phases
//! on the slack dictionary, with no artificial variables:
//!
//! 1. reach a dual feasible dictionary with one of the [`RuleId`] rules;
//! 2. run the dual simplex method to optimality.
//!
//! ```
//! use minangle_lp::{solve, Limits, LpInstance, Rational, RuleId, Status};
//!
//! let inst = LpInstance::from_integers(
//!     &[3, 5],
//!     &[vec![1, 0], vec![0, 2], vec![3, 2]],
//!     &[4, 12, 18],
//! )
//! .unwrap();
//! let out = solve::<Rational>(&inst, RuleId::MinAngle, &Limits::default()).unwrap();
//! assert_eq!(out.status, Status::Optimal);
//! assert_eq!(out.objective_value(), &Rational::from_integer(36.into()));
//! ```

pub mod bench;
pub mod error;
pub mod instances;
pub mod minangle;
pub mod scalar;
pub mod solver;
pub mod tableau;

pub use error::{Error, Result};
pub use scalar::{Mode, Rational, Scalar, DEFAULT_EPS};
pub use solver::{
    attain_dual_feasibility, dual_simplex, solve, solve_dictionary, Limits, RuleId, SolveOutcome, Status, StepRecord,
};
pub use tableau::{Dictionary, DictionaryStatus, LpInstance, Var};
