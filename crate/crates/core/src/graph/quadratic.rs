//! Quadratic symmetries `Q_{j,k} = sum_{S in C_k} S (x) L_j S` built from
//! graph components and Pauli linear symmetries.

use crate::dense::{kron, pauli_matrix, CMatrix};
use crate::error::{Error, Result};
use crate::graph::CommutatorGraph;
use crate::pauli::PauliString;

pub const MAX_MATERIALIZE_QUBITS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticSymmetry {
    pub component: u32,
    pub symmetry_index: usize,
    pub symmetry: PauliString,
}

/// One descriptor per (symmetry, component) pair.
pub fn quadratic_symmetries(
    graph: &CommutatorGraph,
    symmetries: &[PauliString],
) -> Vec<QuadraticSymmetry> {
    symmetries
        .iter()
        .enumerate()
        .flat_map(|(j, l)| {
            (0..graph.component_count() as u32).map(move |k| QuadraticSymmetry {
                component: k,
                symmetry_index: j,
                symmetry: *l,
            })
        })
        .collect()
}

/// Dense `d^2 x d^2` operator for `n <= 3`.
pub fn materialize(q: &QuadraticSymmetry, graph: &CommutatorGraph) -> Result<CMatrix> {
    let n = graph.num_qubits();
    if n > MAX_MATERIALIZE_QUBITS {
        return Err(Error::Config(format!(
            "materializing quadratic symmetries needs n <= {MAX_MATERIALIZE_QUBITS}, got {n}"
        )));
    }
    let d = 1usize << n;
    let l = pauli_matrix(&q.symmetry);
    let mut out = CMatrix::zeros(d * d, d * d);
    for s in graph.component_members(q.component) {
        let sm = pauli_matrix(&s);
        let ls = &l * &sm;
        out += kron(&sm, &ls);
    }
    Ok(out)
}
