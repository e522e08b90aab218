//! Heisenberg evolution of a Pauli string restricted to its graph component.
//!
//! With `p_t = e^{iHt} p e^{-iHt} = sum_q c_q(t) q` and `c_q = tr[p_t q]/d`,
//! the coefficients obey `c' = A c` where `A` is the real antisymmetric
//! matrix of `i[H, .]` on the component basis.

mod integrate;
mod krylov;

use std::sync::Arc;

use nalgebra::DMatrix;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use integrate::{dopri5, StepStats};
pub use krylov::{krylov_complexity, lanczos, KrylovChain, KrylovPoint, DEFAULT_LANCZOS_TOL};

use crate::dense::{hamiltonian_matrix, pauli_matrix, trace_norm, MAX_DENSE_QUBITS};
use crate::dla::GeneratorSet;
use crate::error::{Error, Result};
use crate::graph::{Component, ShortestPaths};
use crate::pauli::PauliString;
use crate::rational::{rational, Rational};

/// Default relative and absolute tolerance of the adaptive integrator.
pub const DEFAULT_ODE_TOL: f64 = 1e-13;
/// Largest component evolved with the dense exponential.
pub const MAX_DENSE_COMPONENT: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "lowercase", deny_unknown_fields)]
pub enum EvolveMethod {
    /// Dormand-Prince 5(4) with equal relative and absolute tolerance.
    Adaptive { tol: f64 },
    /// `exp(tA)` by scaling and squaring.
    Dense,
    /// Sparse Taylor series on sub-steps of norm at most one.
    Taylor,
}

impl Default for EvolveMethod {
    fn default() -> Self {
        EvolveMethod::Adaptive {
            tol: DEFAULT_ODE_TOL,
        }
    }
}

/// Sparse row-compressed `A` over a component's members.
#[derive(Clone, Debug)]
pub struct Liouvillian {
    component: Arc<Component>,
    generators: Vec<PauliString>,
    coefficients: Vec<f64>,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    values: Vec<f64>,
}

/// `p_t` in the component basis.
#[derive(Clone, Debug)]
pub struct OperatorVector {
    component: Arc<Component>,
    pub coefficients: Vec<f64>,
}

impl OperatorVector {
    pub fn unit(component: Arc<Component>, p: &PauliString) -> Result<Self> {
        let i = component
            .position(p)
            .ok_or_else(|| Error::Contract(format!("{p} is not in the component")))?;
        let mut coefficients = vec![0.0; component.len()];
        coefficients[i] = 1.0;
        Ok(OperatorVector {
            component,
            coefficients,
        })
    }

    pub fn members(&self) -> &[PauliString] {
        self.component.members()
    }

    pub fn coefficient(&self, q: &PauliString) -> f64 {
        self.component
            .position(q)
            .map_or(0.0, |i| self.coefficients[i])
    }

    pub fn norm(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn norm_drift(&self) -> f64 {
        (self.norm() - 1.0).abs()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, f64)> {
        self.component.members().iter().zip(self.coefficients.iter().copied())
    }
}

/// Builds `A` for `H = sum_g c_g g`. Each anticommuting `(g, q)` with
/// `[g, q] = 2 i s q'` contributes `-2 s c_g` to `A[q', q]`.
pub fn build_liouvillian(gens: &GeneratorSet, component: Arc<Component>) -> Result<Liouvillian> {
    let coefficients = gens
        .coefficients()
        .ok_or_else(|| Error::Config("Liouvillian needs Hamiltonian coefficients".into()))?
        .to_vec();
    if let Some(m) = component.members().first() {
        if m.num_qubits() != gens.num_qubits() {
            return Err(Error::Dimension {
                left: gens.num_qubits(),
                right: m.num_qubits(),
            });
        }
    }
    let dim = component.len();
    let mut rows: Vec<Vec<(u32, f64)>> = vec![Vec::new(); dim];
    for (col, q) in component.members().iter().enumerate() {
        for (g, &c) in gens.generators().iter().zip(&coefficients) {
            if let Some(img) = g.commutator_unchecked(q) {
                let row = component.position(&img.image).ok_or_else(|| {
                    Error::Contract(format!(
                        "[{g}, {q}] leaves the component (weight-capped component?)"
                    ))
                })?;
                rows[row].push((col as u32, -2.0 * img.sign as f64 * c));
            }
        }
    }
    let mut row_ptr = Vec::with_capacity(dim + 1);
    let mut cols = Vec::new();
    let mut values = Vec::new();
    row_ptr.push(0);
    for mut r in rows {
        r.sort_unstable_by_key(|e| e.0);
        let mut i = 0;
        while i < r.len() {
            let (c, mut v) = r[i];
            i += 1;
            while i < r.len() && r[i].0 == c {
                v += r[i].1;
                i += 1;
            }
            cols.push(c);
            values.push(v);
        }
        row_ptr.push(cols.len());
    }
    Ok(Liouvillian {
        component,
        generators: gens.generators().to_vec(),
        coefficients,
        row_ptr,
        cols,
        values,
    })
}

impl Liouvillian {
    pub fn dim(&self) -> usize {
        self.component.len()
    }

    pub fn component(&self) -> &Arc<Component> {
        &self.component
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// `y = A x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (r, yr) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.values[k] * x[self.cols[k] as usize];
            }
            *yr = acc;
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        let range = self.row_ptr[row]..self.row_ptr[row + 1];
        match self.cols[range.clone()].binary_search(&(col as u32)) {
            Ok(k) => self.values[range.start + k],
            Err(_) => 0.0,
        }
    }

    /// Column `col` as `(row, value)` pairs, i.e. the one-step image of a
    /// basis string.
    pub fn column(&self, col: usize) -> Vec<(usize, f64)> {
        (0..self.dim())
            .filter_map(|r| {
                let v = self.entry(r, col);
                (v != 0.0).then_some((r, v))
            })
            .collect()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for r in 0..n {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                m[(r, self.cols[k] as usize)] = self.values[k];
            }
        }
        m
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim()).all(|r| {
            (self.row_ptr[r]..self.row_ptr[r + 1])
                .all(|k| self.entry(self.cols[k] as usize, r) == -self.values[k])
        })
    }

    /// Largest absolute column sum, an upper bound on `||A||`.
    pub fn one_norm(&self) -> f64 {
        let mut col = vec![0.0; self.dim()];
        for (k, &c) in self.cols.iter().enumerate() {
            col[c as usize] += self.values[k].abs();
        }
        col.into_iter().fold(0.0, f64::max)
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    fn taylor_step(&self, y: &mut [f64], h: f64) {
        let n = y.len();
        let mut term = y.to_vec();
        let mut next = vec![0.0; n];
        for k in 1.. {
            self.apply(&term, &mut next);
            let scale = h / k as f64;
            let mut size = 0.0f64;
            for i in 0..n {
                term[i] = next[i] * scale;
                y[i] += term[i];
                size = size.max(term[i].abs());
            }
            if size < 1e-18 || k > 200 {
                break;
            }
        }
    }

    /// `y <- exp(t A) y` by Taylor series on sub-steps with `h ||A|| <= 1`.
    pub fn taylor_propagate(&self, y: &mut [f64], t: f64) {
        let norm = self.one_norm();
        if norm == 0.0 || t == 0.0 {
            return;
        }
        let steps = (t.abs() * norm).ceil().max(1.0) as usize;
        let h = t / steps as f64;
        for _ in 0..steps {
            self.taylor_step(y, h);
        }
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Config(format!("evolution time must be finite and >= 0, got {t}")));
    }
    Ok(())
}

/// `p_t` from `e^{tA} e_p`.
pub fn evolve(l: &Liouvillian, p: &PauliString, t: f64, method: EvolveMethod) -> Result<OperatorVector> {
    Ok(trajectory(l, p, &[t], method)?.pop().expect("one time"))
}

/// `p_t` at each of the non-decreasing `times`, integrating incrementally.
pub fn trajectory(
    l: &Liouvillian,
    p: &PauliString,
    times: &[f64],
    method: EvolveMethod,
) -> Result<Vec<OperatorVector>> {
    for w in times.windows(2) {
        if w[1] < w[0] {
            return Err(Error::Config("trajectory times must be non-decreasing".into()));
        }
    }
    for &t in times {
        check_time(t)?;
    }
    let start = OperatorVector::unit(l.component.clone(), p)?;
    let mut out = Vec::with_capacity(times.len());
    match method {
        EvolveMethod::Dense => {
            if l.dim() > MAX_DENSE_COMPONENT {
                return Err(Error::cap("component size for dense exponential", MAX_DENSE_COMPONENT, l.dim()));
            }
            let a = l.to_dense();
            let i = l.component.position(p).expect("unit vector built");
            for &t in times {
                let e = (&a * t).exp();
                let mut v = start.clone();
                v.coefficients = e.column(i).iter().copied().collect();
                out.push(v);
            }
        }
        EvolveMethod::Taylor => {
            let mut y = start.coefficients.clone();
            let mut now = 0.0;
            for &t in times {
                l.taylor_propagate(&mut y, t - now);
                now = t;
                let mut v = start.clone();
                v.coefficients = y.clone();
                out.push(v);
            }
        }
        EvolveMethod::Adaptive { tol } => {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(Error::Config(format!("integrator tolerance {tol} out of range")));
            }
            let mut y = start.coefficients.clone();
            let mut now = 0.0;
            let norm = l.one_norm().max(1e-300);
            let mut h = 0.01 / norm;
            for &t in times {
                dopri5(|x, dx| l.apply(x, dx), &mut y, now, t, tol, tol, &mut h);
                now = t;
                let mut v = start.clone();
                v.coefficients = y.clone();
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// `G(p_t) = sum_q l(p, q) |c_q|^2`.
pub fn graph_complexity(op: &OperatorVector, distances: &ShortestPaths) -> f64 {
    op.coefficients
        .iter()
        .zip(&distances.distance)
        .map(|(c, &d)| d as f64 * c * c)
        .sum()
}

/// Long-time average `(1/|C|) sum_q l(p, q)`.
pub fn average_graph_complexity(component: &Component, p: &PauliString) -> Result<Rational> {
    let sp = component.shortest_paths_from(p)?;
    Ok(rational(sp.total() as i128, component.len() as i128))
}

/// Average distance from site `j` (1-based) of a path with `len` vertices:
/// `[j(j-1) + (len-j)(len-j+1)] / (2 len)`.
pub fn path_average(len: u64, j: u64) -> Result<Rational> {
    if len == 0 || j == 0 || j > len {
        return Err(Error::Config(format!("site {j} outside a path of {len} vertices")));
    }
    let (l, j) = (len as i128, j as i128);
    Ok(rational(j * (j - 1) + (l - j) * (l - j + 1), 2 * l))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShortTimeScaling {
    /// `p` commutes with `H`; every other field is zero.
    pub trivial: bool,
    pub times: Vec<f64>,
    pub complexities: Vec<f64>,
    /// Least-squares slope of `log G` against `log t`.
    pub slope: f64,
    /// Intercept of a quadratic fit of `G / t^2` in `t`.
    pub prefactor: f64,
    /// `sum_{q in N1(p)} A_{qp}^2`.
    pub column_prefactor: f64,
    pub neighbors: usize,
    /// `||ad_H(p)||_1` (trace norm, unnormalized), when computed densely.
    pub ad_trace_norm: Option<f64>,
    /// `prefactor <= |N1(p)| ||ad_H(p)||_1^2`.
    pub bound_holds: Option<bool>,
}

fn least_squares(xs: &[f64], ys: &[f64], degree: usize) -> Vec<f64> {
    let m = DMatrix::from_fn(xs.len(), degree + 1, |i, j| xs[i].powi(j as i32));
    let b = nalgebra::DVector::from_column_slice(ys);
    let svd = m.svd(true, true);
    svd.solve(&b, 1e-14).expect("full-rank fit").iter().copied().collect()
}

/// Samples `G(p_t)` on a log grid `t in [1e-3, 1e-2] / (2 sum |c_g|)` with
/// the Taylor propagator and fits the `t^2` law.
pub fn short_time_scaling(l: &Liouvillian, p: &PauliString) -> Result<ShortTimeScaling> {
    let comp = l.component.clone();
    let pos = comp
        .position(p)
        .ok_or_else(|| Error::Contract(format!("{p} is not in the component")))?;
    let column = l.column(pos);
    let column_prefactor: f64 = column.iter().map(|(_, v)| v * v).sum();
    let neighbors = comp.neighbors(pos).len();
    if column.is_empty() {
        return Ok(ShortTimeScaling {
            trivial: true,
            times: vec![],
            complexities: vec![],
            slope: 0.0,
            prefactor: 0.0,
            column_prefactor: 0.0,
            neighbors,
            ad_trace_norm: None,
            bound_holds: None,
        });
    }
    let scale: f64 = 2.0 * l.coefficients.iter().map(|c| c.abs()).sum::<f64>();
    let points = 11;
    let times: Vec<f64> = (0..points)
        .map(|k| 10f64.powf(-3.0 + k as f64 / (points - 1) as f64) / scale)
        .collect();
    let dist = comp.bfs(pos);
    let ops = trajectory(l, p, &times, EvolveMethod::Taylor)?;
    let complexities: Vec<f64> = ops.iter().map(|o| graph_complexity(o, &dist)).collect();
    let logs: Vec<f64> = times.iter().map(|t| t.ln()).collect();
    let logg: Vec<f64> = complexities.iter().map(|g| g.ln()).collect();
    let slope = least_squares(&logs, &logg, 1)[1];
    let ratios: Vec<f64> = times
        .iter()
        .zip(&complexities)
        .map(|(t, g)| g / (t * t))
        .collect();
    let prefactor = least_squares(&times, &ratios, 2)[0];

    let n = p.num_qubits();
    let (ad_trace_norm, bound_holds) = if n <= MAX_DENSE_QUBITS {
        let h = hamiltonian_matrix(&l.generators, &l.coefficients);
        let pm = pauli_matrix(p);
        let ad = &h * &pm - &pm * &h;
        let norm = trace_norm(&ad);
        (Some(norm), Some(prefactor <= neighbors as f64 * norm * norm * (1.0 + 1e-9)))
    } else {
        (None, None)
    };
    Ok(ShortTimeScaling {
        trivial: false,
        times,
        complexities,
        slope,
        prefactor,
        column_prefactor,
        neighbors,
        ad_trace_norm,
        bound_holds,
    })
}

/// Whether `G` stays zero: `p` commutes with every term of `H`.
pub fn is_stationary(l: &Liouvillian, p: &PauliString) -> bool {
    l.component
        .position(p)
        .is_some_and(|i| l.column(i).iter().all(|(_, v)| v.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dla::{model_preset, Model};
    use crate::graph::{component_of, DEFAULT_COMPONENT_CAP};
    use crate::random::{random_hamiltonian, trial_rng, Distribution};

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn setup(gens: &GeneratorSet, p: &PauliString) -> Liouvillian {
        let c = component_of(p, gens, None, DEFAULT_COMPONENT_CAP).unwrap();
        build_liouvillian(gens, Arc::new(c)).unwrap()
    }

    fn z_on_x(c: f64) -> Liouvillian {
        let gens = GeneratorSet::parse(&["Z"]).unwrap().with_coefficients(vec![c]).unwrap();
        setup(&gens, &ps("X"))
    }

    #[test]
    fn two_level_block() {
        let l = z_on_x(0.7);
        assert_eq!(l.dim(), 2);
        // members sorted by index: X (x=1, z=0) then Y.
        assert_eq!(l.component().members()[0], ps("X"));
        assert!((l.entry(1, 0) + 1.4).abs() < 1e-15);
        assert!((l.entry(0, 1) - 1.4).abs() < 1e-15);
        assert!(l.is_antisymmetric());
    }

    #[test]
    fn missing_coefficients() {
        let gens = GeneratorSet::parse(&["Z"]).unwrap();
        let c = component_of(&ps("X"), &gens, None, 10).unwrap();
        assert!(build_liouvillian(&gens, Arc::new(c)).is_err());
    }

    #[test]
    fn rotation_all_methods() {
        let l = z_on_x(1.0);
        for method in [EvolveMethod::default(), EvolveMethod::Dense, EvolveMethod::Taylor] {
            for t in [0.0, 0.3, 2.0] {
                let v = evolve(&l, &ps("X"), t, method).unwrap();
                assert!((v.coefficient(&ps("X")) - (2.0 * t).cos()).abs() < 1e-10);
                assert!((v.coefficient(&ps("Y")) + (2.0 * t).sin()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn antisymmetric_for_random_coefficients() {
        let gens = model_preset(Model::Matchgate, 3).unwrap();
        let c = random_hamiltonian(&gens, &mut trial_rng(9, 0), &Distribution::default());
        let gens = gens.with_coefficients(c).unwrap();
        for p in ["ZII", "XII", "XYZ"] {
            assert!(setup(&gens, &ps(p)).is_antisymmetric());
        }
    }

    #[test]
    fn methods_agree() {
        let gens = model_preset(Model::Orthogonal, 3).unwrap();
        let c = random_hamiltonian(&gens, &mut trial_rng(2, 0), &Distribution::default());
        let gens = gens.with_coefficients(c).unwrap();
        let p = ps("YXX");
        let l = setup(&gens, &p);
        let a = evolve(&l, &p, 1.7, EvolveMethod::default()).unwrap();
        let b = evolve(&l, &p, 1.7, EvolveMethod::Dense).unwrap();
        let c = evolve(&l, &p, 1.7, EvolveMethod::Taylor).unwrap();
        for i in 0..l.dim() {
            assert!((a.coefficients[i] - b.coefficients[i]).abs() < 1e-9);
            assert!((c.coefficients[i] - b.coefficients[i]).abs() < 1e-11);
        }
    }

    #[test]
    fn rejects_bad_times() {
        let l = z_on_x(1.0);
        assert!(evolve(&l, &ps("X"), -1.0, EvolveMethod::default()).is_err());
        assert!(trajectory(&l, &ps("X"), &[1.0, 0.5], EvolveMethod::Taylor).is_err());
    }

    #[test]
    fn path_average_branches() {
        // Endpoint of a 4-vertex path: (0 + 1 + 2 + 3)/4.
        assert_eq!(path_average(4, 1).unwrap(), rational(3, 2));
        assert_eq!(path_average(4, 4).unwrap(), rational(3, 2));
        assert_eq!(path_average(4, 2).unwrap(), rational(1, 1));
        assert_eq!(path_average(1, 1).unwrap(), rational(0, 1));
        assert!(path_average(4, 5).is_err());
    }

    #[test]
    fn average_complexity_matches_path() {
        let gens = model_preset(Model::Matchgate, 2).unwrap();
        let c = component_of(&ps("XI"), &gens, None, 100).unwrap();
        assert_eq!(average_graph_complexity(&c, &ps("XI")).unwrap(), rational(3, 2));
        let iso = component_of(&ps("ZZ"), &gens, None, 100).unwrap();
        assert!(average_graph_complexity(&iso, &ps("ZZ")).unwrap().is_zero());
    }

    #[test]
    fn short_time_two_level() {
        let l = z_on_x(1.0);
        let s = short_time_scaling(&l, &ps("X")).unwrap();
        assert!((s.slope - 2.0).abs() < 1e-3);
        assert!((s.prefactor - 4.0).abs() < 1e-6);
        assert!((s.column_prefactor - 4.0).abs() < 1e-12);
        assert_eq!(s.bound_holds, Some(true));
    }

    #[test]
    fn short_time_symmetry_is_trivial() {
        let l = z_on_x(1.0);
        let gens = GeneratorSet::parse(&["Z"]).unwrap().with_coefficients(vec![1.0]).unwrap();
        let lz = setup(&gens, &ps("Z"));
        assert!(short_time_scaling(&lz, &ps("Z")).unwrap().trivial);
        assert!(is_stationary(&lz, &ps("Z")));
        assert!(!is_stationary(&l, &ps("X")));
    }
}
