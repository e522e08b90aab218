//! Coefficient distributions and deterministic per-trial RNG streams.

use std::f64::consts::TAU;
use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal};
use serde::{Deserialize, Serialize};

use crate::dla::GeneratorSet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Distribution {
    Uniform { low: f64, high: f64 },
    Normal { mean: f64, std: f64 },
    Constant { value: f64 },
}

impl Default for Distribution {
    fn default() -> Self {
        Distribution::Uniform {
            low: 0.0,
            high: TAU,
        }
    }
}

impl Distribution {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Distribution::Uniform { low, high } => low.is_finite() && high.is_finite() && low <= high,
            Distribution::Normal { mean, std } => mean.is_finite() && std.is_finite() && std >= 0.0,
            Distribution::Constant { value } => value.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid distribution {self}")))
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Distribution::Uniform { low, high } if low == high => low,
            Distribution::Uniform { low, high } => rng.gen_range(low..high),
            Distribution::Normal { mean, std } if std == 0.0 => mean,
            Distribution::Normal { mean, std } => {
                Normal::new(mean, std).expect("validated std").sample(rng)
            }
            Distribution::Constant { value } => value,
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            Distribution::Uniform { low, high } => 0.5 * (low + high),
            Distribution::Normal { mean, .. } => mean,
            Distribution::Constant { value } => value,
        }
    }

    pub fn variance(&self) -> f64 {
        match *self {
            Distribution::Uniform { low, high } => (high - low).powi(2) / 12.0,
            Distribution::Normal { std, .. } => std * std,
            Distribution::Constant { .. } => 0.0,
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Distribution::Uniform { low, high } => write!(f, "uniform[{low}, {high})"),
            Distribution::Normal { mean, std } => write!(f, "normal({mean}, {std})"),
            Distribution::Constant { value } => write!(f, "constant({value})"),
        }
    }
}

/// One i.i.d. coefficient per generator.
pub fn random_hamiltonian<R: Rng + ?Sized>(
    gens: &GeneratorSet,
    rng: &mut R,
    distribution: &Distribution,
) -> Vec<f64> {
    (0..gens.len()).map(|_| distribution.sample(rng)).collect()
}

/// Stream `trial` of the generator seeded by `seed`; trials are independent
/// of scheduling order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}
