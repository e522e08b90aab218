//! Lanczos chain of `p` under the Liouvillian and Krylov complexity.

use super::{Liouvillian, OperatorVector};
use crate::error::Result;
use crate::pauli::PauliString;

pub const DEFAULT_LANCZOS_TOL: f64 = 1e-10;

/// Orthonormal Krylov basis `O_0 = p, O_1, ...` with `b_1, b_2, ...`.
///
/// For real antisymmetric `A` the recursion reads
/// `b_{n+1} O_{n+1} = A O_n + b_n O_{n-1}`, so all `O_n` and `phi_n` are
/// real.
#[derive(Clone, Debug)]
pub struct KrylovChain {
    pub b: Vec<f64>,
    pub basis: Vec<OperatorVector>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KrylovPoint {
    pub complexity: f64,
    /// `sum_n phi_n^2`
    pub total_probability: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn lanczos(l: &Liouvillian, p: &PauliString, tol: f64) -> Result<KrylovChain> {
    let start = OperatorVector::unit(l.component().clone(), p)?;
    let dim = l.dim();
    let mut vecs: Vec<Vec<f64>> = vec![start.coefficients.clone()];
    let mut b = Vec::new();
    let mut w = vec![0.0; dim];
    while vecs.len() < dim {
        let k = vecs.len();
        l.apply(&vecs[k - 1], &mut w);
        if k >= 2 {
            let bk = b[k - 2];
            for (wi, oi) in w.iter_mut().zip(&vecs[k - 2]) {
                *wi += bk * oi;
            }
        }
        // Full reorthogonalization, twice.
        for _ in 0..2 {
            for v in &vecs {
                let c = dot(&w, v);
                for (wi, vi) in w.iter_mut().zip(v) {
                    *wi -= c * vi;
                }
            }
        }
        let norm = dot(&w, &w).sqrt();
        if norm <= tol {
            break;
        }
        b.push(norm);
        vecs.push(w.iter().map(|x| x / norm).collect());
    }
    let basis = vecs
        .into_iter()
        .map(|coefficients| OperatorVector {
            component: start.component.clone(),
            coefficients,
        })
        .collect();
    Ok(KrylovChain { b, basis })
}

impl KrylovChain {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Largest `|<O_i, O_j> - delta_ij|`.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, c) in self.basis.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot(&a.coefficients, &c.coefficients) - target).abs());
            }
        }
        worst
    }

    /// `phi_n = <O_n, p_t>`.
    pub fn amplitudes(&self, op: &OperatorVector) -> Vec<f64> {
        self.basis
            .iter()
            .map(|o| dot(&o.coefficients, &op.coefficients))
            .collect()
    }
}

/// `K(p_t) = sum_n n phi_n^2`.
pub fn krylov_complexity(chain: &KrylovChain, op: &OperatorVector) -> KrylovPoint {
    let phi = chain.amplitudes(op);
    KrylovPoint {
        complexity: phi.iter().enumerate().map(|(n, f)| n as f64 * f * f).sum(),
        total_probability: phi.iter().map(|f| f * f).sum(),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::dla::{model_preset, GeneratorSet, Model};
    use crate::dynamics::{build_liouvillian, evolve, EvolveMethod};
    use crate::graph::component_of;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn setup(gens: &GeneratorSet, p: &str) -> Liouvillian {
        let c = component_of(&ps(p), gens, None, 1 << 20).unwrap();
        build_liouvillian(gens, Arc::new(c)).unwrap()
    }

    #[test]
    fn two_level_chain() {
        let gens = GeneratorSet::parse(&["Z"]).unwrap().with_coefficients(vec![1.0]).unwrap();
        let l = setup(&gens, "X");
        let chain = lanczos(&l, &ps("X"), DEFAULT_LANCZOS_TOL).unwrap();
        assert_eq!(chain.len(), 2);
        assert!((chain.b[0] - 2.0).abs() < 1e-14);
        for t in [0.0, 0.2, 1.1] {
            let v = evolve(&l, &ps("X"), t, EvolveMethod::Dense).unwrap();
            let k = krylov_complexity(&chain, &v);
            assert!((k.complexity - (2.0 * t).sin().powi(2)).abs() < 1e-12);
            assert!((k.total_probability - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn commuting_string_has_trivial_chain() {
        let gens = GeneratorSet::parse(&["Z"]).unwrap().with_coefficients(vec![1.0]).unwrap();
        let l = setup(&gens, "Z");
        let chain = lanczos(&l, &ps("Z"), DEFAULT_LANCZOS_TOL).unwrap();
        assert_eq!(chain.len(), 1);
        let v = evolve(&l, &ps("Z"), 3.0, EvolveMethod::default()).unwrap();
        assert_eq!(krylov_complexity(&chain, &v).complexity, 0.0);
    }

    #[test]
    fn chain_bounded_by_component() {
        for model in Model::ALL {
            let gens = model_preset(model, 3).unwrap();
            let c: Vec<f64> = (0..gens.len()).map(|i| 0.3 + 0.17 * i as f64).collect();
            let gens = gens.with_coefficients(c).unwrap();
            for p in ["XII", "ZYX", "IIZ"] {
                let l = setup(&gens, p);
                let chain = lanczos(&l, &ps(p), DEFAULT_LANCZOS_TOL).unwrap();
                assert!(chain.len() <= l.dim());
                assert!(chain.orthonormality_error() < 1e-8);
            }
        }
    }
}
