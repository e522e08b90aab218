//! The commutator graph on all `4^n` Pauli strings.
//!
//! Vertices are dense Pauli indices. Two strings are adjacent when some
//! generator's commutator maps one onto (a multiple of) the other.

mod component;
pub mod export;
pub mod quadratic;
mod union_find;

use std::collections::BTreeMap;

use rayon::prelude::*;

pub use component::{component_of, Component, ShortestPaths, DEFAULT_COMPONENT_CAP};
pub use union_find::ConcurrentUnionFind;

use crate::dla::GeneratorSet;
use crate::error::{Error, Result};
use crate::pauli::PauliString;

/// Largest qubit count accepted by [`CommutatorGraph::build_full`].
pub const MAX_FULL_QUBITS: usize = 13;

/// Label of a vertex removed by the weight cap.
pub const DELETED: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct CommutatorGraph {
    gens: GeneratorSet,
    weight_cap: Option<usize>,
    labels: Vec<u32>,
    sizes: Vec<u64>,
    representatives: Vec<PauliString>,
    edges: Option<Vec<Vec<(u32, u32)>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentStats {
    pub count: usize,
    pub isolated_count: usize,
    /// size -> number of components of that size
    pub size_histogram: BTreeMap<u64, usize>,
    /// Per-component diameter, `None` where not computed.
    pub diameters: Option<Vec<Option<u32>>>,
}

impl CommutatorGraph {
    /// Builds the full graph with a parallel union-find over all vertices.
    ///
    /// Component labels are canonical: ascending by (size, smallest member
    /// index).
    pub fn build_full(gens: &GeneratorSet, weight_cap: Option<usize>) -> Result<Self> {
        let n = gens.num_qubits();
        if n > MAX_FULL_QUBITS {
            return Err(Error::cap(
                "qubits for the full 4^n graph (use component_of for single components)",
                MAX_FULL_QUBITS,
                n,
            ));
        }
        if let Some(cap) = weight_cap {
            if cap > n {
                return Err(Error::Config(format!("weight cap {cap} exceeds n = {n}")));
            }
        }
        let survives = |p: &PauliString| weight_cap.is_none_or(|c| p.weight() <= c);
        let total = 1usize << (2 * n);
        let uf = ConcurrentUnionFind::new(total);
        let g = gens.generators();
        (0..total)
            .into_par_iter()
            .with_min_len(1 << 12)
            .for_each(|i| {
                let i = i as u64;
                let p = PauliString::from_index(n, i);
                if !survives(&p) {
                    return;
                }
                for gen in g {
                    if let Some(c) = gen.commutator_unchecked(&p) {
                        let j = c.image.index();
                        if j > i && survives(&c.image) {
                            uf.union(i as u32, j as u32);
                        }
                    }
                }
            });

        let mut labels = uf.into_roots();
        let deleted: Vec<bool> = match weight_cap {
            None => Vec::new(),
            Some(_) => (0..total)
                .into_par_iter()
                .map(|i| !survives(&PauliString::from_index(n, i as u64)))
                .collect(),
        };
        let is_deleted = |i: usize| !deleted.is_empty() && deleted[i];

        // Roots are the minimal members, encountered in ascending order.
        let roots: Vec<u32> = (0..total)
            .filter(|&i| labels[i] == i as u32 && !is_deleted(i))
            .map(|i| i as u32)
            .collect();
        let mut sizes_by_root = vec![0u64; roots.len()];
        for i in 0..total {
            if !is_deleted(i) {
                let k = roots.binary_search(&labels[i]).expect("root present");
                sizes_by_root[k] += 1;
            }
        }
        let mut order: Vec<usize> = (0..roots.len()).collect();
        order.sort_by_key(|&k| (sizes_by_root[k], roots[k]));
        let mut label_of_root = vec![0u32; roots.len()];
        for (label, &k) in order.iter().enumerate() {
            label_of_root[k] = label as u32;
        }
        labels.par_iter_mut().enumerate().for_each(|(i, l)| {
            if is_deleted(i) {
                *l = DELETED;
            } else {
                let k = roots.binary_search(l).expect("root present");
                *l = label_of_root[k];
            }
        });
        let sizes = order.iter().map(|&k| sizes_by_root[k]).collect();
        let representatives = order
            .iter()
            .map(|&k| PauliString::from_index(n, roots[k] as u64))
            .collect();

        Ok(CommutatorGraph {
            gens: gens.clone(),
            weight_cap,
            labels,
            sizes,
            representatives,
            edges: None,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.gens.num_qubits()
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn weight_cap(&self) -> Option<usize> {
        self.weight_cap
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn surviving_count(&self) -> u64 {
        self.sizes.iter().sum()
    }

    pub fn component_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn component_sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// Smallest-index member of each component.
    pub fn representatives(&self) -> &[PauliString] {
        &self.representatives
    }

    pub fn isolated_count(&self) -> usize {
        self.sizes.iter().filter(|&&s| s == 1).count()
    }

    /// Component label of `p`, `None` if deleted by the weight cap.
    pub fn label(&self, p: &PauliString) -> Option<u32> {
        let l = self.labels[p.index() as usize];
        (l != DELETED).then_some(l)
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn size_of(&self, p: &PauliString) -> Option<u64> {
        self.label(p).map(|l| self.sizes[l as usize])
    }

    pub fn same_component(&self, p: &PauliString, q: &PauliString) -> bool {
        match (self.label(p), self.label(q)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    pub fn component_members(&self, label: u32) -> Vec<PauliString> {
        let n = self.num_qubits();
        self.labels
            .par_iter()
            .enumerate()
            .filter(|(_, &l)| l == label)
            .map(|(i, _)| PauliString::from_index(n, i as u64))
            .collect()
    }

    /// Members of every component, each list sorted by index.
    pub fn members_by_component(&self) -> Vec<Vec<PauliString>> {
        let n = self.num_qubits();
        let mut out: Vec<Vec<PauliString>> = self
            .sizes
            .iter()
            .map(|&s| Vec::with_capacity(s as usize))
            .collect();
        for (i, &l) in self.labels.iter().enumerate() {
            if l != DELETED {
                out[l as usize].push(PauliString::from_index(n, i as u64));
            }
        }
        out
    }

    /// Materializes one component with its adjacency.
    pub fn component(&self, label: u32) -> Component {
        Component::from_members(self.component_members(label), &self.gens, self.weight_cap)
    }

    pub fn component_containing(&self, p: &PauliString) -> Option<Component> {
        self.label(p).map(|l| self.component(l))
    }

    fn survives(&self, p: &PauliString) -> bool {
        self.weight_cap.is_none_or(|c| p.weight() <= c)
    }

    /// Number of undirected edges. Distinct generators acting on the same
    /// vertex always produce distinct neighbours.
    pub fn edge_count(&self) -> u64 {
        let n = self.num_qubits();
        let g = self.gens.generators();
        let twice: u64 = (0..self.labels.len() as u64)
            .into_par_iter()
            .map(|i| {
                let p = PauliString::from_index(n, i);
                if !self.survives(&p) {
                    return 0;
                }
                g.iter()
                    .filter_map(|gen| gen.commutator_unchecked(&p))
                    .filter(|c| self.survives(&c.image))
                    .count() as u64
            })
            .sum();
        twice / 2
    }

    /// Stores sorted per-component edge lists `(a, b)` with `a < b` (dense
    /// indices). Required by DOT export.
    pub fn materialize_adjacency(&mut self, max_edges: u64) -> Result<()> {
        let total = self.edge_count();
        if total > max_edges {
            return Err(Error::cap("edges to materialize", max_edges as usize, total as usize));
        }
        let n = self.num_qubits();
        let mut edges = vec![Vec::new(); self.component_count()];
        for (i, &l) in self.labels.iter().enumerate() {
            if l == DELETED {
                continue;
            }
            let p = PauliString::from_index(n, i as u64);
            for gen in self.gens.generators() {
                if let Some(c) = gen.commutator_unchecked(&p) {
                    let j = c.image.index();
                    if j > i as u64 && self.survives(&c.image) {
                        edges[l as usize].push((i as u32, j as u32));
                    }
                }
            }
        }
        for e in &mut edges {
            e.sort_unstable();
            e.dedup();
        }
        self.edges = Some(edges);
        Ok(())
    }

    pub fn adjacency(&self) -> Option<&[Vec<(u32, u32)>]> {
        self.edges.as_deref()
    }

    /// Component statistics; diameters (BFS from every vertex) only for
    /// components with at most `diameter_limit` vertices when requested.
    pub fn stats(&self, diameter_limit: Option<u64>) -> ComponentStats {
        let mut size_histogram = BTreeMap::new();
        for &s in &self.sizes {
            *size_histogram.entry(s).or_insert(0) += 1;
        }
        let diameters = diameter_limit.map(|limit| {
            let members = self.members_by_component();
            members
                .into_par_iter()
                .map(|m| {
                    (m.len() as u64 <= limit).then(|| {
                        Component::from_members(m, &self.gens, self.weight_cap).diameter()
                    })
                })
                .collect()
        });
        ComponentStats {
            count: self.component_count(),
            isolated_count: self.isolated_count(),
            size_histogram,
            diameters,
        }
    }

    /// Involution on component labels induced by multiplying with a Pauli
    /// linear symmetry `l`.
    ///
    /// Every vertex is checked to land in the paired component, and edge
    /// preservation is spot-checked on up to `10^4` edges per component.
    pub fn twin_map(&self, l: &PauliString) -> Result<Vec<u32>> {
        if l.num_qubits() != self.num_qubits() {
            return Err(Error::Dimension {
                left: self.num_qubits(),
                right: l.num_qubits(),
            });
        }
        if !self.gens.is_symmetry(l) {
            return Err(Error::Contract(format!(
                "{l} is not a linear symmetry of the generator set"
            )));
        }
        let n = self.num_qubits();
        let mut pairing = vec![DELETED; self.component_count()];
        for (label, rep) in self.representatives.iter().enumerate() {
            let img = l.mul_unchecked(rep).0;
            pairing[label] = self.label(&img).ok_or_else(|| {
                Error::Contract(format!("image {img} of {rep} is deleted by the weight cap"))
            })?;
        }
        let bad = (0..self.labels.len() as u64).into_par_iter().find_any(|&i| {
            let a = self.labels[i as usize];
            if a == DELETED {
                return false;
            }
            let img = l.mul_unchecked(&PauliString::from_index(n, i)).0;
            self.label(&img) != Some(pairing[a as usize])
        });
        if let Some(i) = bad {
            return Err(Error::Contract(format!(
                "multiplication by {l} does not map component of {} onto a component",
                PauliString::from_index(n, i)
            )));
        }

        const EDGE_SAMPLE: usize = 10_000;
        let mut checked = vec![0usize; self.component_count()];
        for (i, &a) in self.labels.iter().enumerate() {
            if a == DELETED || checked[a as usize] >= EDGE_SAMPLE {
                continue;
            }
            let p = PauliString::from_index(n, i as u64);
            let lp = l.mul_unchecked(&p).0;
            for gen in self.gens.generators() {
                let Some(c) = gen.commutator_unchecked(&p) else {
                    continue;
                };
                if !self.survives(&c.image) {
                    continue;
                }
                let expected = l.mul_unchecked(&c.image).0;
                let got = gen.commutator_unchecked(&lp).map(|c| c.image);
                if got != Some(expected) {
                    return Err(Error::Contract(format!(
                        "edge {p} -- {} not preserved under {l}",
                        c.image
                    )));
                }
                checked[a as usize] += 1;
            }
        }
        Ok(pairing)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dla::{model_preset, Model};

    fn sizes(model: Model, n: usize) -> Vec<u64> {
        let g = CommutatorGraph::build_full(&model_preset(model, n).unwrap(), None).unwrap();
        let mut s = g.component_sizes().to_vec();
        s.sort_unstable();
        s
    }

    #[test]
    fn catalog_component_sizes() {
        assert_eq!(sizes(Model::Matchgate, 3), [1, 1, 6, 6, 15, 15, 20]);
        assert_eq!(sizes(Model::Universal, 2), [1, 15]);
        // so(4) = su(2) + su(2): the antisymmetric strings split in two.
        assert_eq!(sizes(Model::Orthogonal, 2), [1, 3, 3, 9]);
        assert_eq!(sizes(Model::Orthogonal, 3), [1, 28, 35]);
        assert_eq!(sizes(Model::Symplectic, 3), [1, 27, 36]);
    }

    #[test]
    fn identity_is_isolated() {
        for model in Model::ALL {
            let g = CommutatorGraph::build_full(&model_preset(model, 3).unwrap(), None).unwrap();
            let id = PauliString::identity(3);
            assert_eq!(g.size_of(&id), Some(1));
            assert_eq!(g.surviving_count(), 64);
        }
    }

    #[test]
    fn labels_are_canonical() {
        let g = CommutatorGraph::build_full(&model_preset(Model::Matchgate, 3).unwrap(), None)
            .unwrap();
        let keys: Vec<_> = g
            .component_sizes()
            .iter()
            .zip(g.representatives())
            .map(|(s, r)| (*s, r.index()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
        assert_eq!(g.label(&PauliString::identity(3)), Some(0));
    }

    #[test]
    fn weight_cap_extremes() {
        let gens = model_preset(Model::Matchgate, 3).unwrap();
        let full = CommutatorGraph::build_full(&gens, None).unwrap();
        let capped = CommutatorGraph::build_full(&gens, Some(3)).unwrap();
        assert_eq!(full.labels(), capped.labels());
        let zero = CommutatorGraph::build_full(&gens, Some(0)).unwrap();
        assert_eq!(zero.component_sizes(), [1]);
        assert_eq!(zero.surviving_count(), 1);
        assert!(CommutatorGraph::build_full(&gens, Some(4)).is_err());
    }

    #[test]
    fn weight_cap_splits_components() {
        let gens = model_preset(Model::Universal, 3).unwrap();
        let g = CommutatorGraph::build_full(&gens, Some(1)).unwrap();
        // Weight <= 1 strings: identity plus 9 single-site strings.
        assert_eq!(g.surviving_count(), 10);
        assert_eq!(g.label(&"XXI".parse().unwrap()), None);
    }

    #[test]
    fn full_mode_rejects_large_n() {
        let gens = model_preset(Model::Matchgate, 14).unwrap();
        assert!(matches!(
            CommutatorGraph::build_full(&gens, None),
            Err(Error::ResourceCap { cap: 13, reached: 14, .. })
        ));
    }

    #[test]
    fn stats_examples() {
        let g = CommutatorGraph::build_full(&model_preset(Model::Matchgate, 3).unwrap(), None)
            .unwrap();
        let s = g.stats(Some(100));
        assert_eq!((s.count, s.isolated_count), (7, 2));
        let d = s.diameters.unwrap();
        // sizes 1,1,6,6,15,15,20 -> diameters k(2n-k)
        let mut by_size: Vec<_> = g
            .component_sizes()
            .iter()
            .zip(&d)
            .map(|(s, d)| (*s, d.unwrap()))
            .collect();
        by_size.sort_unstable();
        assert_eq!(by_size, [(1, 0), (1, 0), (6, 5), (6, 5), (15, 8), (15, 8), (20, 9)]);

        let u = CommutatorGraph::build_full(&model_preset(Model::Universal, 2).unwrap(), None)
            .unwrap()
            .stats(None);
        assert_eq!((u.count, u.isolated_count), (2, 1));
        assert!(u.diameters.is_none());
    }

    #[test]
    fn twin_map_matchgate() {
        let g = CommutatorGraph::build_full(&model_preset(Model::Matchgate, 3).unwrap(), None)
            .unwrap();
        let pairing = g.twin_map(&"ZZZ".parse().unwrap()).unwrap();
        for (a, &b) in pairing.iter().enumerate() {
            assert_eq!(pairing[b as usize] as usize, a);
            assert_eq!(g.component_sizes()[a], g.component_sizes()[b as usize]);
        }
        let ident = g.twin_map(&PauliString::identity(3)).unwrap();
        assert!(ident.iter().enumerate().all(|(a, &b)| a as u32 == b));
        assert!(matches!(
            g.twin_map(&"XII".parse().unwrap()),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn edge_count_matches_materialized() {
        let mut g = CommutatorGraph::build_full(&model_preset(Model::Orthogonal, 3).unwrap(), None)
            .unwrap();
        let e = g.edge_count();
        g.materialize_adjacency(1_000_000).unwrap();
        let m: usize = g.adjacency().unwrap().iter().map(Vec::len).sum();
        assert_eq!(e, m as u64);
        assert!(g.materialize_adjacency(1).is_err());
    }
}
