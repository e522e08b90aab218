//! Dense Monte-Carlo sampling of group elements and the estimators that
//! check the exact graph formulas.
//!
//! Haar measure on `exp(g)` is approximated by deep circuits of random
//! generator rotations, or by single random-coefficient Hamiltonians.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dense::{
    apply_rotation, hamiltonian_matrix, pauli_matrix, trace, unitary_from_hermitian, CMatrix,
    MAX_DENSE_QUBITS,
};
use crate::dla::GeneratorSet;
use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::random::{random_hamiltonian, trial_rng, Distribution};

pub const DEPTH_PER_GENERATOR: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase", deny_unknown_fields)]
pub enum SamplerMode {
    /// `depth` layers of `exp(-i theta p)` over every generator, `theta`
    /// uniform on `[0, 2 pi)`.
    Circuit { depth: usize },
    /// `exp(-i sum_j c_j p_j)` with i.i.d. coefficients.
    Hamiltonian { distribution: Distribution },
}

impl SamplerMode {
    pub fn default_circuit(gens: &GeneratorSet) -> Self {
        SamplerMode::Circuit {
            depth: DEPTH_PER_GENERATOR * gens.len(),
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            SamplerMode::Circuit { depth } => format!("circuit(depth={depth}, theta~uniform[0, 2pi))"),
            SamplerMode::Hamiltonian { distribution } => format!("hamiltonian(c~{distribution})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub mode: SamplerMode,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std: f64,
    pub samples: usize,
    pub descriptor: String,
}

impl MonteCarloEstimate {
    pub fn from_samples(xs: &[f64], descriptor: String) -> Self {
        let n = xs.len();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let std = if n > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        MonteCarloEstimate {
            mean,
            std,
            samples: n,
            descriptor,
        }
    }

    pub fn std_error(&self) -> f64 {
        self.std / (self.samples as f64).sqrt()
    }

    /// `|mean - target| <= k * stderr + slack`.
    pub fn agrees_with(&self, target: f64, k: f64, slack: f64) -> bool {
        (self.mean - target).abs() <= k * self.std_error() + slack
    }
}

fn check_dense(gens: &GeneratorSet) -> Result<()> {
    if gens.num_qubits() > MAX_DENSE_QUBITS {
        return Err(Error::Config(format!(
            "dense sampling needs n <= {MAX_DENSE_QUBITS}, got {}",
            gens.num_qubits()
        )));
    }
    Ok(())
}

/// Product over `depth` layers of `exp(-i theta_{l,p} p)` for every
/// generator `p`.
pub fn sample_group_element<R: Rng + ?Sized>(
    gens: &GeneratorSet,
    depth: usize,
    rng: &mut R,
) -> Result<CMatrix> {
    check_dense(gens)?;
    let d = 1usize << gens.num_qubits();
    let mut u = CMatrix::identity(d, d);
    for _ in 0..depth {
        for g in gens.generators() {
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            apply_rotation(g, theta, &mut u);
        }
    }
    Ok(u)
}

/// `exp(-i H)` for `H = sum_j c_j p_j` with sampled coefficients.
pub fn sample_hamiltonian_unitary<R: Rng + ?Sized>(
    gens: &GeneratorSet,
    distribution: &Distribution,
    rng: &mut R,
) -> Result<CMatrix> {
    check_dense(gens)?;
    let c = random_hamiltonian(gens, rng, distribution);
    Ok(unitary_from_hermitian(&hamiltonian_matrix(gens.generators(), &c), 1.0))
}

pub fn sample_unitary<R: Rng + ?Sized>(
    gens: &GeneratorSet,
    mode: &SamplerMode,
    rng: &mut R,
) -> Result<CMatrix> {
    match mode {
        SamplerMode::Circuit { depth } => sample_group_element(gens, *depth, rng),
        SamplerMode::Hamiltonian { distribution } => {
            sample_hamiltonian_unitary(gens, distribution, rng)
        }
    }
}

/// Runs `f` on `trials` independent samples; trial `k` draws from RNG
/// stream `k`, so results do not depend on thread scheduling.
pub fn monte_carlo<F>(gens: &GeneratorSet, cfg: &SamplerConfig, f: F) -> Result<MonteCarloEstimate>
where
    F: Fn(&CMatrix, &mut rand_chacha::ChaCha8Rng) -> Result<f64> + Sync,
{
    check_dense(gens)?;
    if cfg.trials == 0 {
        return Err(Error::Config("trials must be positive".into()));
    }
    let xs = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = trial_rng(cfg.seed, k);
            let u = sample_unitary(gens, &cfg.mode, &mut rng)?;
            f(&u, &mut rng)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(MonteCarloEstimate::from_samples(&xs, cfg.mode.descriptor()))
}

/// Like [`monte_carlo`], but every sampled unitary feeds all `k` outputs of
/// `f`, giving `k` estimates over shared samples.
pub fn monte_carlo_many<F>(
    gens: &GeneratorSet,
    cfg: &SamplerConfig,
    k: usize,
    f: F,
) -> Result<Vec<MonteCarloEstimate>>
where
    F: Fn(&CMatrix) -> Vec<f64> + Sync,
{
    check_dense(gens)?;
    if cfg.trials == 0 {
        return Err(Error::Config("trials must be positive".into()));
    }
    let rows = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, t);
            let u = sample_unitary(gens, &cfg.mode, &mut rng)?;
            let row = f(&u);
            if row.len() != k {
                return Err(Error::Contract(format!("estimator returned {} values, expected {k}", row.len())));
            }
            Ok(row)
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok((0..k)
        .map(|j| {
            let xs: Vec<f64> = rows.iter().map(|r| r[j]).collect();
            MonteCarloEstimate::from_samples(&xs, cfg.mode.descriptor())
        })
        .collect())
}

/// `|tr[W U V U^dag]|^2` for one sample.
pub fn spread_value(v: &CMatrix, w: &CMatrix, u: &CMatrix) -> f64 {
    trace(&(w * u * v * u.adjoint())).norm_sqr()
}

/// Single-shot OTOC `(1/d) tr[W V_t W V_t]` with `V_t = U^dag V U`.
pub fn otoc_value(v: &CMatrix, w: &CMatrix, u: &CMatrix) -> f64 {
    let vt = u.adjoint() * v * u;
    let wv = w * vt;
    trace(&(&wv * &wv)).re / v.nrows() as f64
}

pub fn monte_carlo_otoc(
    v: &PauliString,
    w: &PauliString,
    gens: &GeneratorSet,
    cfg: &SamplerConfig,
) -> Result<MonteCarloEstimate> {
    let (vm, wm) = (pauli_matrix(v), pauli_matrix(w));
    monte_carlo(gens, cfg, |u, _| Ok(otoc_value(&vm, &wm, u)))
}

/// Samples of `|tr[W U V U^dag]|^2`.
pub fn monte_carlo_spread(
    v: &PauliString,
    w: &PauliString,
    gens: &GeneratorSet,
    cfg: &SamplerConfig,
) -> Result<MonteCarloEstimate> {
    let (vm, wm) = (pauli_matrix(v), pauli_matrix(w));
    monte_carlo(gens, cfg, |u, _| Ok(spread_value(&vm, &wm, u)))
}

/// Real and imaginary parts of `tr[P U Q U^dag R U S U^dag]`.
pub fn monte_carlo_four_point(
    p: &PauliString,
    q: &PauliString,
    r: &PauliString,
    s: &PauliString,
    gens: &GeneratorSet,
    cfg: &SamplerConfig,
) -> Result<(MonteCarloEstimate, MonteCarloEstimate)> {
    let [pm, qm, rm, sm] = [p, q, r, s].map(pauli_matrix);
    let value = |u: &CMatrix| -> Complex64 {
        let ud = u.adjoint();
        trace(&(&pm * u * &qm * &ud * &rm * u * &sm * &ud))
    };
    let re = monte_carlo(gens, cfg, |u, _| Ok(value(u).re))?;
    let im = monte_carlo(gens, cfg, |u, _| Ok(value(u).im))?;
    Ok((re, im))
}

/// `F^(2) = E_{U,V} |tr[U^dag V]|^4` from pairs of independent samples.
pub fn monte_carlo_frame_potential(
    gens: &GeneratorSet,
    cfg: &SamplerConfig,
) -> Result<MonteCarloEstimate> {
    monte_carlo(gens, cfg, |u, rng| {
        let v = sample_unitary(gens, &cfg.mode, rng)?;
        Ok(trace(&(u.adjoint() * v)).norm_sqr().powi(2))
    })
}
