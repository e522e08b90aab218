//! Small dense complex matrices on the `2^n`-dimensional Hilbert space.
//!
//! Basis state `|b>` uses site 1 as the most significant bit of `b`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::pauli::PauliString;

pub type CMatrix = DMatrix<Complex64>;

pub const MAX_DENSE_QUBITS: usize = 5;

/// Mask on basis indices equivalent to a site mask.
fn basis_mask(n: usize, site_mask: u32) -> usize {
    let mut out = 0usize;
    for b in 0..n {
        if (site_mask >> b) & 1 == 1 {
            out |= 1 << (n - 1 - b);
        }
    }
    out
}

/// Action of a Pauli on a basis state: `P|b> = phase * |b ^ flip>`.
#[derive(Clone, Copy, Debug)]
pub struct BasisAction {
    flip: usize,
    zmask: usize,
    base: Complex64,
}

impl BasisAction {
    pub fn new(p: &PauliString) -> Self {
        let n = p.num_qubits();
        let y = (p.x_mask() & p.z_mask()).count_ones();
        let base = crate::pauli::Phase::from_exponent(y).to_complex();
        BasisAction {
            flip: basis_mask(n, p.x_mask()),
            zmask: basis_mask(n, p.z_mask()),
            base,
        }
    }

    /// Returns `(target, amplitude)` with `P|b> = amplitude |target>`.
    #[inline]
    pub fn apply(&self, b: usize) -> (usize, Complex64) {
        let amp = if (self.zmask & b).count_ones() % 2 == 1 {
            -self.base
        } else {
            self.base
        };
        (b ^ self.flip, amp)
    }
}

pub fn pauli_matrix(p: &PauliString) -> CMatrix {
    let d = 1usize << p.num_qubits();
    let act = BasisAction::new(p);
    let mut m = CMatrix::zeros(d, d);
    for b in 0..d {
        let (t, a) = act.apply(b);
        m[(t, b)] = a;
    }
    m
}

/// `M <- P M`, permuting and rephasing rows.
pub fn left_mul_pauli(p: &PauliString, m: &CMatrix) -> CMatrix {
    let act = BasisAction::new(p);
    let mut out = CMatrix::zeros(m.nrows(), m.ncols());
    for b in 0..m.nrows() {
        let (t, a) = act.apply(b);
        for c in 0..m.ncols() {
            out[(t, c)] = a * m[(b, c)];
        }
    }
    out
}

/// `M <- exp(-i theta P) M = (cos theta - i sin theta P) M`.
pub fn apply_rotation(p: &PauliString, theta: f64, m: &mut CMatrix) {
    let pm = left_mul_pauli(p, m);
    let (s, c) = theta.sin_cos();
    let mi_s = Complex64::new(0.0, -s);
    for (dst, src) in m.iter_mut().zip(pm.iter()) {
        *dst = *dst * c + mi_s * src;
    }
}

pub fn hamiltonian_matrix(gens: &[PauliString], coefficients: &[f64]) -> CMatrix {
    let n = gens[0].num_qubits();
    let d = 1usize << n;
    let mut h = CMatrix::zeros(d, d);
    for (g, &c) in gens.iter().zip(coefficients) {
        let act = BasisAction::new(g);
        for b in 0..d {
            let (t, a) = act.apply(b);
            h[(t, b)] += a * c;
        }
    }
    h
}

/// `exp(-i s H)` for Hermitian `H` via eigendecomposition.
pub fn unitary_from_hermitian(h: &CMatrix, s: f64) -> CMatrix {
    let eig = SymmetricEigen::new(h.clone());
    let phases = eig
        .eigenvalues
        .map(|e| Complex64::from_polar(1.0, -s * e));
    let v = &eig.eigenvectors;
    v * CMatrix::from_diagonal(&phases) * v.adjoint()
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Schatten 1-norm (sum of singular values).
pub fn trace_norm(m: &CMatrix) -> f64 {
    m.clone().singular_values().iter().sum()
}

/// Operator norm of `A - B`, used for unitarity and commutation checks.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}
