#![allow(dead_code)]

use std::collections::BTreeMap;

use minangle_lp::instances::{random_instance, GenConfig};
use minangle_lp::{Dictionary, LpInstance, Rational, Scalar, Var};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn example_instance() -> LpInstance {
    LpInstance::from_integers(&[3, 5], &[vec![1, 0], vec![0, 2], vec![3, 2]], &[4, 12, 18]).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Value of every label in the basic solution of `d`.
pub fn point<S: Scalar>(d: &Dictionary<S>) -> BTreeMap<Var, S> {
    let mut out: BTreeMap<Var, S> = d.nonbasis().iter().map(|&v| (v, S::zero())).collect();
    for (i, &v) in d.basis().iter().enumerate() {
        out.insert(v, d.rows()[i + 1][0].clone());
    }
    out
}

/// `Ax + s = b` evaluated exactly at the basic solution of `d`.
pub fn substitution_holds(inst: &LpInstance, d: &Dictionary<Rational>) -> bool {
    let values = point(d);
    let n = inst.num_cols();
    (0..inst.num_rows()).all(|i| {
        let lhs = (0..n).fold(Rational::zero(), |acc, j| {
            acc + &inst.matrix()[i][j] * &values[&Var(j + 1)]
        });
        lhs + &values[&inst.slack(i)] == inst.rhs()[i]
    })
}

/// Random instance of random size in `1..=max_dim`, followed by up to `max_pivots` random valid pivots.
pub fn random_dictionary(
    rng: &mut ChaCha8Rng,
    max_dim: usize,
    max_pivots: usize,
) -> (LpInstance, Dictionary<Rational>) {
    let m = rng.gen_range(1..=max_dim);
    let n = rng.gen_range(1..=max_dim);
    let mut cfg = GenConfig::new(m, n, rng.gen());
    cfg.lo = -9;
    cfg.hi = 9;
    let inst = random_instance(&cfg, 0).unwrap();
    let mut d: Dictionary<Rational> = Dictionary::from_instance(&inst);
    for _ in 0..rng.gen_range(0..=max_pivots) {
        let i = rng.gen_range(0..d.num_basic());
        let j = rng.gen_range(0..d.num_nonbasic());
        if !d.rows()[i + 1][j + 1].is_zero() {
            let (leave, enter) = (d.basis()[i], d.nonbasis()[j]);
            d.pivot_in_place(leave, enter).unwrap();
        }
    }
    (inst, d)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hand-built degenerate instances: zero rhs, repeated rows, empty columns.
pub fn degenerate_suite() -> Vec<(&'static str, LpInstance)> {
    let mk = |c: &[i64], a: &[&[i64]], b: &[i64]| {
        LpInstance::from_integers(c, &a.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), b).unwrap()
    };
    vec![
        (
            "zero rhs",
            mk(&[1, 1, 1], &[&[1, -1, 0], &[-1, 1, 1], &[0, 1, -1]], &[0, 0, 0]),
        ),
        (
            "zero rhs bounded",
            mk(&[2, 3, -1], &[&[1, 1, 1], &[2, -1, 3], &[-1, 2, 1]], &[0, 0, 0]),
        ),
        (
            "zero rhs, mixed signs",
            mk(&[3, -2, 4], &[&[-1, 2, 1], &[1, 1, -3], &[2, -1, 1]], &[0, 0, 0]),
        ),
        (
            "duplicated rows",
            mk(&[3, 5], &[&[3, 2], &[3, 2], &[3, 2]], &[18, 18, 18]),
        ),
        (
            "duplicated infeasible rows",
            mk(&[1, 1], &[&[-1, -1], &[-1, -1], &[1, 0]], &[-5, -5, 2]),
        ),
        (
            "duplicated rows, zero rhs",
            mk(&[1, 2, 3], &[&[1, 1, 1], &[1, 1, 1], &[0, 1, 2]], &[0, 0, 0]),
        ),
        (
            "zero column",
            mk(&[3, 0, 5], &[&[1, 0, 0], &[0, 0, 2], &[3, 0, 2]], &[4, 12, 18]),
        ),
        ("zero column, improving", mk(&[1, 2], &[&[1, 0], &[2, 0]], &[3, 5])),
        ("all zero", mk(&[0, 0], &[&[0, 0], &[0, 0]], &[0, 0])),
        ("zero matrix, negative rhs", mk(&[1], &[&[0]], &[-1])),
        (
            "classic cycling example",
            mk(
                &[10, -57, -9, -24],
                &[&[1, -11, -5, 18], &[1, -3, -1, 2], &[1, 0, 0, 0]],
                &[0, 0, 1],
            ),
        ),
        (
            "degenerate 3x3",
            mk(&[1, 1, 1], &[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]], &[0, 0, 0]),
        ),
    ]
}
