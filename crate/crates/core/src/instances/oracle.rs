//! Ground truth by basis enumeration.
//!
//! Every `m`-subset of the columns of `[A | I]` is tried as a basis. Bases are
//! factorized from scratch with exact Gauss–Jordan elimination; nothing here
//! shares code with the dictionary pivots it is used to check.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::tableau::LpInstance;

/// Upper bound on `C(n + m, m)` accepted by [`oracle_solve`].
pub const ORACLE_BASIS_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleResult {
    /// Maximum objective value and a maximizing point (decision variables only).
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Inverse of the square matrix `m`, or `None` when singular.
fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let size = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..size).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..size {
        let pivot = (col..size).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..size {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            let pivot_row = aug[col].clone();
            for (v, p) in aug[r].iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
    }
    Some(aug.into_iter().map(|row| row[size..].to_vec()).collect())
}

fn next_combination(idx: &mut [usize], total: usize) -> bool {
    let k = idx.len();
    for pos in (0..k).rev() {
        if idx[pos] < total - k + pos {
            idx[pos] += 1;
            for later in pos + 1..k {
                idx[later] = idx[later - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Solves `inst` by enumerating all bases of the slack-extended system.
pub fn oracle_solve(inst: &LpInstance) -> Result<OracleResult> {
    let m = inst.num_rows();
    let n = inst.num_cols();
    let total = n + m;
    let bases = binomial(total, m);
    if bases > ORACLE_BASIS_LIMIT {
        return Err(Error::TooLarge {
            bases,
            limit: ORACLE_BASIS_LIMIT,
        });
    }
    // column j of [A | I]
    let column = |j: usize| -> Vec<Rational> {
        (0..m)
            .map(|i| {
                if j < n {
                    inst.matrix()[i][j].clone()
                } else if j - n == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    };
    let cost = |j: usize| -> Rational {
        if j < n {
            inst.objective()[j].clone()
        } else {
            Rational::zero()
        }
    };
    let columns: Vec<Vec<Rational>> = (0..total).map(column).collect();
    let apply = |inv: &[Vec<Rational>], v: &[Rational]| -> Vec<Rational> {
        inv.iter()
            .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    };

    let mut best: Option<(Rational, Vec<Rational>)> = None;
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        let basis_matrix: Vec<Vec<Rational>> = (0..m)
            .map(|i| idx.iter().map(|&j| columns[j][i].clone()).collect())
            .collect();
        if let Some(inv) = invert(&basis_matrix) {
            let values = apply(&inv, inst.rhs());
            if values.iter().all(|v| !v.is_negative()) {
                let objective = idx
                    .iter()
                    .zip(&values)
                    .fold(Rational::zero(), |acc, (&j, v)| acc + cost(j) * v);
                // certificate of unboundedness: improving nonbasic column that no basic row limits
                for j in (0..total).filter(|j| !idx.contains(j)) {
                    let direction = apply(&inv, &columns[j]);
                    let reduced = cost(j)
                        - idx
                            .iter()
                            .zip(&direction)
                            .fold(Rational::zero(), |acc, (&b, d)| acc + cost(b) * d);
                    if reduced.is_positive() && direction.iter().all(|d| !d.is_positive()) {
                        return Ok(OracleResult::Unbounded);
                    }
                }
                if best.as_ref().is_none_or(|(v, _)| objective > *v) {
                    let mut point = vec![Rational::zero(); n];
                    for (&j, v) in idx.iter().zip(&values) {
                        if j < n {
                            point[j] = v.clone();
                        }
                    }
                    best = Some((objective, point));
                }
            }
        }
        if !next_combination(&mut idx, total) {
            break;
        }
    }
    Ok(match best {
        Some((value, point)) => OracleResult::Optimal { value, point },
        None => OracleResult::Infeasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    #[test]
    fn example_optimum() {
        let inst = LpInstance::from_integers(&[3, 5], &[vec![1, 0], vec![0, 2], vec![3, 2]], &[4, 12, 18]).unwrap();
        assert_eq!(
            oracle_solve(&inst).unwrap(),
            OracleResult::Optimal {
                value: q(36),
                point: vec![q(2), q(6)]
            }
        );
    }

    #[test]
    fn infeasible_and_unbounded() {
        let inst = LpInstance::from_integers(&[1], &[vec![1]], &[-1]).unwrap();
        assert_eq!(oracle_solve(&inst).unwrap(), OracleResult::Infeasible);
        let inst = LpInstance::from_integers(&[1], &[vec![-1]], &[1]).unwrap();
        assert_eq!(oracle_solve(&inst).unwrap(), OracleResult::Unbounded);
    }

    #[test]
    fn guard_rejects_large_instances() {
        let inst = LpInstance::from_integers(&[1; 20], &vec![vec![1; 20]; 20], &[1; 20]).unwrap();
        assert!(matches!(oracle_solve(&inst), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(40, 20), 137_846_528_820);
    }

    #[test]
    fn enumerates_every_subset() {
        let mut idx = vec![0, 1];
        let mut seen = 1;
        while next_combination(&mut idx, 5) {
            seen += 1;
        }
        assert_eq!(seen, 10);
    }
}
