use std::collections::{HashSet, VecDeque};

use crate::dla::GeneratorSet;
use crate::error::{Error, Result};
use crate::pauli::PauliString;

pub const DEFAULT_COMPONENT_CAP: usize = 1 << 24;

/// One connected component with explicit adjacency. Members are sorted by
/// dense index; neighbour lists hold local positions.
#[derive(Clone, Debug)]
pub struct Component {
    members: Vec<PauliString>,
    neighbors: Vec<Vec<u32>>,
}

/// BFS distances from one source over a component.
#[derive(Clone, Debug)]
pub struct ShortestPaths {
    pub source: usize,
    pub distance: Vec<u32>,
}

impl ShortestPaths {
    pub fn eccentricity(&self) -> u32 {
        self.distance.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.distance.iter().map(|&d| d as u64).sum()
    }
}

/// BFS closure of `seed` under the generators' commutator images.
pub fn component_of(
    seed: &PauliString,
    gens: &GeneratorSet,
    weight_cap: Option<usize>,
    cap: usize,
) -> Result<Component> {
    Component::explore(seed, gens, weight_cap, cap)
}

impl Component {
    pub fn explore(
        seed: &PauliString,
        gens: &GeneratorSet,
        weight_cap: Option<usize>,
        cap: usize,
    ) -> Result<Self> {
        if seed.num_qubits() != gens.num_qubits() {
            return Err(Error::Dimension {
                left: gens.num_qubits(),
                right: seed.num_qubits(),
            });
        }
        let survives = |p: &PauliString| weight_cap.is_none_or(|c| p.weight() <= c);
        if !survives(seed) {
            return Err(Error::Contract(format!(
                "{seed} has weight above the cap and is not a vertex"
            )));
        }
        let mut seen = HashSet::from([*seed]);
        let mut queue = VecDeque::from([*seed]);
        while let Some(p) = queue.pop_front() {
            for g in gens.generators() {
                if let Some(c) = g.commutator_unchecked(&p) {
                    if survives(&c.image) && seen.insert(c.image) {
                        if seen.len() > cap {
                            return Err(Error::cap("component size", cap, seen.len()));
                        }
                        queue.push_back(c.image);
                    }
                }
            }
        }
        Ok(Self::from_members(seen.into_iter().collect(), gens, weight_cap))
    }

    /// Builds adjacency for a known member set (any order).
    pub fn from_members(
        mut members: Vec<PauliString>,
        gens: &GeneratorSet,
        weight_cap: Option<usize>,
    ) -> Self {
        members.sort_unstable_by_key(|p| p.index());
        let survives = |p: &PauliString| weight_cap.is_none_or(|c| p.weight() <= c);
        let position = |p: &PauliString| {
            members
                .binary_search_by_key(&p.index(), |m| m.index())
                .ok()
        };
        let neighbors = members
            .iter()
            .map(|p| {
                let mut nb: Vec<u32> = gens
                    .generators()
                    .iter()
                    .filter_map(|g| g.commutator_unchecked(p))
                    .filter(|c| survives(&c.image))
                    .map(|c| position(&c.image).expect("component closed under generators") as u32)
                    .collect();
                nb.sort_unstable();
                nb.dedup();
                nb
            })
            .collect();
        Component { members, neighbors }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[PauliString] {
        &self.members
    }

    pub fn neighbors(&self, local: usize) -> &[u32] {
        &self.neighbors[local]
    }

    pub fn position(&self, p: &PauliString) -> Option<usize> {
        self.members
            .binary_search_by_key(&p.index(), |m| m.index())
            .ok()
    }

    pub fn contains(&self, p: &PauliString) -> bool {
        self.position(p).is_some()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn bfs(&self, source: usize) -> ShortestPaths {
        let mut distance = vec![u32::MAX; self.len()];
        distance[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = distance[u];
            for &v in &self.neighbors[u] {
                if distance[v as usize] == u32::MAX {
                    distance[v as usize] = du + 1;
                    queue.push_back(v as usize);
                }
            }
        }
        ShortestPaths { source, distance }
    }

    pub fn shortest_paths_from(&self, p: &PauliString) -> Result<ShortestPaths> {
        let src = self
            .position(p)
            .ok_or_else(|| Error::Contract(format!("{p} is not in this component")))?;
        Ok(self.bfs(src))
    }

    pub fn diameter(&self) -> u32 {
        (0..self.len())
            .map(|s| self.bfs(s).eccentricity())
            .max()
            .unwrap_or(0)
    }

    /// Sum of `l(p, q)` over all ordered pairs.
    pub fn total_pair_distance(&self) -> u64 {
        (0..self.len()).map(|s| self.bfs(s).total()).sum()
    }
}
