//! Random instances, the instance file format, and the enumeration oracle.

mod format;
pub mod oracle;

pub use format::{parse_instance, serialize_instance};
pub use oracle::{oracle_solve, OracleResult, ORACLE_BASIS_LIMIT};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::tableau::LpInstance;

/// Random model: every `cⱼ`, `bᵢ`, `aᵢⱼ` uniform on the integers `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    pub rows: usize,
    pub cols: usize,
    pub lo: i64,
    pub hi: i64,
    pub seed: u64,
    pub count: usize,
}

impl GenConfig {
    pub fn new(rows: usize, cols: usize, seed: u64) -> Self {
        GenConfig {
            rows,
            cols,
            lo: -50,
            hi: 50,
            seed,
            count: 500,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::InvalidInstance(format!(
                "need at least one row and one column, got {}x{}",
                self.rows, self.cols
            )));
        }
        if self.lo > self.hi {
            return Err(Error::InvalidInstance(format!(
                "empty coefficient range [{}, {}]",
                self.lo, self.hi
            )));
        }
        Ok(())
    }
}

/// Instance `index` of the stream described by `cfg`.
///
/// Each index reads its own ChaCha8 stream: the key packs `seed`, `rows` and
/// `cols` little-endian and the stream number is `index`, so the result does
/// not depend on which other indices were generated or in what order, and
/// different sizes under one seed do not share draws. Draw order: `c₁..cₙ`,
/// then each row `aᵢ₁..aᵢₙ, bᵢ`.
pub fn random_instance(cfg: &GenConfig, index: u64) -> Result<LpInstance> {
    cfg.validate()?;
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&cfg.seed.to_le_bytes());
    key[8..16].copy_from_slice(&(cfg.rows as u64).to_le_bytes());
    key[16..24].copy_from_slice(&(cfg.cols as u64).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    let mut draw = || Rational::from_integer(BigInt::from(rng.gen_range(cfg.lo..=cfg.hi)));
    let objective: Vec<Rational> = (0..cfg.cols).map(|_| draw()).collect();
    let mut matrix = Vec::with_capacity(cfg.rows);
    let mut rhs = Vec::with_capacity(cfg.rows);
    for _ in 0..cfg.rows {
        matrix.push((0..cfg.cols).map(|_| draw()).collect());
        rhs.push(draw());
    }
    LpInstance::new(objective, matrix, rhs)
}

/// The first `cfg.count` instances of the stream.
pub fn random_instances(cfg: &GenConfig) -> Result<Vec<LpInstance>> {
    (0..cfg.count as u64).map(|i| random_instance(cfg, i)).collect()
}
