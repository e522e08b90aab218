//! Exact chaos diagnostics read off the commutator graph: frame potential,
//! averaged OTOCs, four-point correlators and operator spread.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::dla::pauli_linear_symmetries;
use crate::error::{Error, Result};
use crate::graph::CommutatorGraph;
use crate::pauli::PauliString;
use crate::rational::{rational, serialize_rational, GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramePotential {
    pub value: u64,
    pub isolated: usize,
    pub components: usize,
    pub pauli_symmetries: u64,
    /// Isolated vertices coincide with the Pauli linear symmetries.
    pub hypothesis_holds: bool,
}

/// `#isolated * #components`.
///
/// Logs a warning when the isolated-vertex count differs from the number of
/// Pauli linear symmetries; the product is still reported.
pub fn frame_potential_2(graph: &CommutatorGraph) -> Result<FramePotential> {
    if graph.weight_cap().is_some() {
        return Err(Error::Contract(
            "frame potential needs the full graph (no weight cap)".into(),
        ));
    }
    let isolated = graph.isolated_count();
    let components = graph.component_count();
    let pauli_symmetries = pauli_linear_symmetries(graph.generators()).count();
    let hypothesis_holds = isolated as u64 == pauli_symmetries;
    if !hypothesis_holds {
        log::warn!(
            "isolated vertices ({isolated}) != Pauli linear symmetries ({pauli_symmetries}); \
             frame potential formula may not apply"
        );
    }
    Ok(FramePotential {
        value: (isolated * components) as u64,
        isolated,
        components,
        pauli_symmetries,
        hypothesis_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OtocResult {
    #[serde(serialize_with = "serialize_rational")]
    pub value: Rational,
    pub size_v: u64,
    /// `|{T in C(V) : {W, T} = 0}|`
    pub anticommuting_v: u64,
    pub size_w: u64,
    /// `|{T in C(W) : {V, T} = 0}|`
    pub anticommuting_w: u64,
    /// The same average computed by counting over `C(W)`.
    #[serde(serialize_with = "serialize_rational")]
    pub value_w_side: Rational,
    pub sides_agree: bool,
}

fn label_of(graph: &CommutatorGraph, p: &PauliString) -> Result<u32> {
    if p.num_qubits() != graph.num_qubits() {
        return Err(Error::Dimension {
            left: graph.num_qubits(),
            right: p.num_qubits(),
        });
    }
    graph
        .label(p)
        .ok_or_else(|| Error::Contract(format!("{p} was removed by the weight cap")))
}

fn anticommuting_count(members: &[PauliString], w: &PauliString) -> u64 {
    members.iter().filter(|t| !t.commutes_with(w)).count() as u64
}

/// `1 - 2 a / |C|`.
fn otoc_fraction(anticommuting: u64, size: u64) -> Rational {
    Rational::one() - rational(2 * anticommuting as i128, size as i128)
}

/// Haar-averaged OTOC `E F(W, U^dag V U)` by counting over `C(V)`, with the
/// `C(W)` count computed independently.
pub fn avg_otoc(v: &PauliString, w: &PauliString, graph: &CommutatorGraph) -> Result<OtocResult> {
    let cv = graph.component_members(label_of(graph, v)?);
    let cw = graph.component_members(label_of(graph, w)?);
    Ok(otoc_from_members(v, w, &cv, &cw))
}

pub fn otoc_from_members(
    v: &PauliString,
    w: &PauliString,
    cv: &[PauliString],
    cw: &[PauliString],
) -> OtocResult {
    let anticommuting_v = anticommuting_count(cv, w);
    let anticommuting_w = anticommuting_count(cw, v);
    let value = otoc_fraction(anticommuting_v, cv.len() as u64);
    let value_w_side = otoc_fraction(anticommuting_w, cw.len() as u64);
    OtocResult {
        value,
        size_v: cv.len() as u64,
        anticommuting_v,
        size_w: cw.len() as u64,
        anticommuting_w,
        value_w_side,
        sides_agree: value == value_w_side,
    }
}

/// `tr[A B C] / d` as a phase, or zero when the product is not the identity.
fn normalized_trace3(a: &PauliString, b: &PauliString, c: &PauliString) -> GaussianRational {
    let (ab, p1) = a.mul_unchecked(b);
    let (abc, p2) = ab.mul_unchecked(c);
    if abc.is_identity() {
        GaussianRational::from_phase(p1 * p2)
    } else {
        GaussianRational::zero()
    }
}

/// `E tr[P U Q U^dag R U S U^dag]`, evaluated as
/// `(1/d) sum_j tr[L_j Q S] tr[P R L_j] (1 - 2|{T in C_Q : {P,T}=0}|/|C_Q|)`
/// over the Pauli linear symmetries `L_j`.
pub fn four_point_avg(
    p: &PauliString,
    q: &PauliString,
    r: &PauliString,
    s: &PauliString,
    graph: &CommutatorGraph,
    symmetries: &[PauliString],
) -> Result<GaussianRational> {
    for x in [q, r, s] {
        if x.num_qubits() != p.num_qubits() {
            return Err(Error::Dimension {
                left: p.num_qubits(),
                right: x.num_qubits(),
            });
        }
    }
    let n = p.num_qubits();
    let d = rational(1i128 << n, 1);
    // Each trace is d times a phase, so (1/d) tr tr = d * phase * phase.
    let mut sum = GaussianRational::zero();
    for l in symmetries {
        let t1 = normalized_trace3(l, q, s);
        if t1.is_zero() {
            continue;
        }
        let t2 = normalized_trace3(p, r, l);
        sum = sum + t1 * t2;
    }
    if sum.is_zero() {
        return Ok(sum);
    }
    let cq = graph.component_members(label_of(graph, q)?);
    let factor = otoc_fraction(anticommuting_count(&cq, p), cq.len() as u64);
    Ok(sum * d * factor)
}

/// `E |<W, U V U^dag>_HS|^2 = d^2/|C(V)|` on a shared component, else 0.
pub fn spread_expectation(
    v: &PauliString,
    w: &PauliString,
    graph: &CommutatorGraph,
) -> Result<Rational> {
    let (lv, lw) = (label_of(graph, v)?, label_of(graph, w)?);
    if lv != lw {
        return Ok(Rational::zero());
    }
    let d2 = 1i128 << (2 * graph.num_qubits());
    Ok(rational(d2, graph.component_sizes()[lv as usize] as i128))
}

/// Exact check that the commuting and anticommuting fractions agree when
/// counted over `C(V)` against `W` and over `C(W)` against `V`.
pub fn symcounting_check(v: &PauliString, w: &PauliString, graph: &CommutatorGraph) -> Result<bool> {
    let cv = graph.component_members(label_of(graph, v)?);
    let cw = graph.component_members(label_of(graph, w)?);
    Ok(symcounting_from_members(v, w, &cv, &cw))
}

pub fn symcounting_from_members(
    v: &PauliString,
    w: &PauliString,
    cv: &[PauliString],
    cw: &[PauliString],
) -> bool {
    let (nv, nw) = (cv.len() as u64, cw.len() as u64);
    let anti_v = anticommuting_count(cv, w);
    let anti_w = anticommuting_count(cw, v);
    let comm_v = nv - anti_v;
    let comm_w = nw - anti_w;
    comm_w * nv == comm_v * nw && anti_w * nv == anti_v * nw
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dla::{model_preset, GeneratorSet, Model};

    fn graph(model: Model, n: usize) -> CommutatorGraph {
        CommutatorGraph::build_full(&model_preset(model, n).unwrap(), None).unwrap()
    }

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn frame_potential_examples() {
        assert_eq!(frame_potential_2(&graph(Model::Universal, 3)).unwrap().value, 2);
        let m = frame_potential_2(&graph(Model::Matchgate, 4)).unwrap();
        assert_eq!((m.isolated, m.components, m.value), (2, 9, 18));
        assert!(m.hypothesis_holds);
        assert_eq!(frame_potential_2(&graph(Model::IsingB, 4)).unwrap().value, 8);
    }

    #[test]
    fn frame_potential_rejects_weight_cap() {
        let gens = model_preset(Model::Universal, 2).unwrap();
        let g = CommutatorGraph::build_full(&gens, Some(1)).unwrap();
        assert!(frame_potential_2(&g).is_err());
    }

    #[test]
    fn universal_otoc() {
        let g = graph(Model::Universal, 2);
        let r = avg_otoc(&ps("XI"), &ps("IZ"), &g).unwrap();
        assert_eq!(r.value, rational(-1, 15));
        assert!(r.sides_agree);
        assert_eq!(avg_otoc(&ps("XI"), &ps("II"), &g).unwrap().value, Rational::one());
    }

    #[test]
    fn matchgate_otoc_counts() {
        let g = graph(Model::Matchgate, 3);
        let r = avg_otoc(&ps("ZII"), &ps("XIZ"), &g).unwrap();
        assert_eq!(r.size_v, 15);
        let brute = g
            .component_members(g.label(&ps("ZII")).unwrap())
            .iter()
            .filter(|t| !t.commutes_with(&ps("XIZ")))
            .count() as u64;
        assert_eq!(r.anticommuting_v, brute);
        assert!(r.sides_agree);
    }

    #[test]
    fn four_point_vanishes_without_symmetry() {
        let g = graph(Model::Matchgate, 3);
        let syms = pauli_linear_symmetries(g.generators()).all.unwrap();
        // RP = XII * YII ~ ZII, not a symmetry.
        let v = four_point_avg(&ps("XII"), &ps("XII"), &ps("YII"), &ps("XII"), &g, &syms).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn four_point_reduces_to_otoc() {
        let g = graph(Model::Universal, 2);
        let syms = pauli_linear_symmetries(g.generators()).all.unwrap();
        let w = ps("XY");
        let v = four_point_avg(&w, &w, &w, &w, &g, &syms).unwrap();
        assert_eq!(v, GaussianRational::real(rational(-4, 15)));
    }

    #[test]
    fn spread_examples() {
        let g = graph(Model::Universal, 2);
        assert_eq!(spread_expectation(&ps("II"), &ps("II"), &g).unwrap(), rational(16, 1));
        assert_eq!(spread_expectation(&ps("XI"), &ps("ZZ"), &g).unwrap(), rational(16, 15));
        assert!(spread_expectation(&ps("XI"), &ps("II"), &g).unwrap().is_zero());
    }

    #[test]
    fn spread_sums_to_d_squared() {
        let g = graph(Model::Matchgate, 3);
        let v = ps("XYI");
        let members = g.component_members(g.label(&v).unwrap());
        let total = members
            .iter()
            .map(|w| spread_expectation(&v, w, &g).unwrap())
            .fold(Rational::zero(), |a, b| a + b);
        assert_eq!(total, rational(64, 1));
    }

    #[test]
    fn symcounting_over_representatives() {
        let g = graph(Model::Matchgate, 3);
        for v in g.representatives() {
            for w in g.representatives() {
                assert!(symcounting_check(v, w, &g).unwrap());
            }
        }
        let gens = GeneratorSet::parse(&["XX", "ZI"]).unwrap();
        let g = CommutatorGraph::build_full(&gens, None).unwrap();
        assert!(symcounting_check(&ps("II"), &ps("YZ"), &g).unwrap());
    }
}
