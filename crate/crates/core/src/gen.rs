//! Seeded instance generators.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `SeedableRng::seed_from_u64(seed)`. Pairs are visited row by row
//! (`x_0 y_0, x_0 y_1, ..`) and each consumes one `next_u64`; the pair points
//! to Y when the top 53 bits, read as a fraction in `[0, 1)`, are below the
//! bias. Changing any of this changes every golden file.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{BipartiteDigraph, Orientation};
use crate::packing::greedy_pack;

/// Largest `m * n` accepted by [`enumerate_bt`].
pub const MAX_ENUMERATED_PAIRS: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("bias {0} is outside [0, 1]")]
    InvalidBias(f64),
    #[error("{pairs} pairs is too many to enumerate (limit {limit})")]
    TooLarge { pairs: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    bias: f64,
}

impl GenSpec {
    /// Unbiased orientations.
    pub fn new(m: usize, n: usize, seed: u64) -> Self {
        GenSpec { m, n, seed, bias: 0.5 }
    }

    /// `bias` is the probability that a pair points from X to Y.
    pub fn with_bias(self, bias: f64) -> Result<Self, GenError> {
        if !(0.0..=1.0).contains(&bias) {
            return Err(GenError::InvalidBias(bias));
        }
        Ok(GenSpec { bias, ..self })
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GenSpec { seed, ..self }
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }
}

pub fn random_bt(spec: &GenSpec) -> BipartiteDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    BipartiteDigraph::from_fn(spec.m, spec.n, |_, _| {
        let unit = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        if unit < spec.bias {
            Orientation::ToY
        } else {
            Orientation::ToX
        }
    })
}

/// A random tournament with a maximal greedy 4-cycle packing removed.
pub fn random_c4free(spec: &GenSpec) -> BipartiteDigraph {
    greedy_pack(&random_bt(spec), None).residual
}

/// Every orientation of the complete `m x n` bipartite graph. Instance `c`
/// orients pair `(x_i, y_j)` towards Y when bit `i * n + j` of `c` is set.
pub fn enumerate_bt(m: usize, n: usize) -> Result<impl Iterator<Item = BipartiteDigraph>, GenError> {
    let pairs = m * n;
    if pairs > MAX_ENUMERATED_PAIRS {
        return Err(GenError::TooLarge { pairs, limit: MAX_ENUMERATED_PAIRS });
    }
    Ok((0u32..1 << pairs).map(move |c| {
        BipartiteDigraph::from_fn(
            m,
            n,
            |i, j| {
                if c >> (i * n + j) & 1 == 1 {
                    Orientation::ToY
                } else {
                    Orientation::ToX
                }
            },
        )
    }))
}
