//! Generator sets, Lie closure, Pauli linear symmetries, model presets and
//! frustration graphs.

use std::collections::HashSet;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliString;

pub const DEFAULT_CLOSURE_CAP: usize = 1 << 26;
pub const DEFAULT_SYMMETRY_ENUM_CAP: usize = 1 << 16;

/// Family-defining set of Pauli strings, optionally with Hamiltonian
/// coefficients.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorSet {
    n: usize,
    generators: Vec<PauliString>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    n: usize,
    generators: Vec<String>,
    #[serde(default)]
    coefficients: Option<Vec<f64>>,
}

impl GeneratorSet {
    pub fn new(generators: Vec<PauliString>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::Config("generator set is empty".into()));
        };
        let n = first.num_qubits();
        let mut seen = HashSet::new();
        for g in &generators {
            if g.num_qubits() != n {
                return Err(Error::Dimension {
                    left: n,
                    right: g.num_qubits(),
                });
            }
            if g.is_identity() {
                return Err(Error::Config("identity is not a valid generator".into()));
            }
            if !seen.insert(*g) {
                return Err(Error::Config(format!("duplicate generator {g}")));
            }
        }
        Ok(GeneratorSet {
            n,
            generators,
            coefficients: None,
        })
    }

    pub fn parse(strings: &[&str]) -> Result<Self> {
        let gens = strings
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<PauliString>>>()?;
        Self::new(gens)
    }

    pub fn with_coefficients(mut self, coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.len() != self.generators.len() {
            return Err(Error::Config(format!(
                "{} coefficients for {} generators",
                coefficients.len(),
                self.generators.len()
            )));
        }
        self.coefficients = Some(coefficients);
        Ok(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("model file: {e}")))?;
        let gens = file
            .generators
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<PauliString>>>()?;
        let set = Self::new(gens)?;
        if set.n != file.n {
            return Err(Error::Config(format!(
                "model file declares n = {} but generators have {} qubits",
                file.n, set.n
            )));
        }
        match file.coefficients {
            Some(c) => set.with_coefficients(c),
            None => Ok(set),
        }
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("generator set serializes")
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn coefficients(&self) -> Option<&[f64]> {
        self.coefficients.as_deref()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether `p` commutes with every generator.
    pub fn is_symmetry(&self, p: &PauliString) -> bool {
        self.generators.iter().all(|g| g.commutes_with(p))
    }
}

/// Pauli-string basis of a dynamical Lie algebra, sorted by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DlaBasis {
    pub strings: Vec<PauliString>,
}

impl DlaBasis {
    pub fn dimension(&self) -> usize {
        self.strings.len()
    }

    pub fn contains(&self, p: &PauliString) -> bool {
        self.strings
            .binary_search_by_key(&p.index(), |s| s.index())
            .is_ok()
    }

    /// Checks closure under commutation over all pairs.
    pub fn is_closed(&self) -> bool {
        self.strings.par_iter().all(|a| {
            self.strings.iter().all(|b| match a.commutator_unchecked(b) {
                None => true,
                Some(c) => self.contains(&c.image),
            })
        })
    }
}

pub fn lie_closure(gens: &GeneratorSet) -> Result<DlaBasis> {
    lie_closure_capped(gens, DEFAULT_CLOSURE_CAP)
}

/// Closure of the generator strings under pairwise commutation.
///
/// Each round only pairs the strings discovered in the previous round with
/// everything known so far.
pub fn lie_closure_capped(gens: &GeneratorSet, cap: usize) -> Result<DlaBasis> {
    let mut known: HashSet<PauliString> = gens.generators().iter().copied().collect();
    let mut all: Vec<PauliString> = gens.generators().to_vec();
    let mut frontier = all.clone();
    if all.len() > cap {
        return Err(Error::cap("Lie closure size", cap, all.len()));
    }
    while !frontier.is_empty() {
        let mut found: Vec<PauliString> = frontier
            .par_iter()
            .flat_map_iter(|a| {
                all.iter()
                    .filter_map(move |b| a.commutator_unchecked(b).map(|c| c.image))
            })
            .filter(|s| !known.contains(s))
            .collect();
        found.sort_unstable_by_key(|s| s.index());
        found.dedup();
        frontier = found;
        known.extend(frontier.iter().copied());
        all.extend(frontier.iter().copied());
        if all.len() > cap {
            return Err(Error::cap("Lie closure size", cap, all.len()));
        }
    }
    all.sort_unstable_by_key(|s| s.index());
    Ok(DlaBasis { strings: all })
}

/// Pauli strings commuting with every generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliSymmetries {
    /// GF(2) nullspace basis (identity excluded).
    pub basis: Vec<PauliString>,
    /// All `2^k` symmetries including the identity, sorted by index, when
    /// `2^k` is within the enumeration cap.
    pub all: Option<Vec<PauliString>>,
}

impl PauliSymmetries {
    pub fn count(&self) -> u64 {
        1u64 << self.basis.len()
    }
}

pub fn pauli_linear_symmetries(gens: &GeneratorSet) -> PauliSymmetries {
    pauli_linear_symmetries_capped(gens, DEFAULT_SYMMETRY_ENUM_CAP)
}

/// Nullspace of the symplectic-product system by Gaussian elimination.
///
/// Unknowns are the `2n` bits `(x_0..x_{n-1}, z_0..z_{n-1})` of `L`; the
/// constraint for generator `g` reads `<L.x, g.z> + <L.z, g.x> = 0 mod 2`.
pub fn pauli_linear_symmetries_capped(gens: &GeneratorSet, enum_cap: usize) -> PauliSymmetries {
    let n = gens.num_qubits();
    let width = 2 * n;
    let mut rows: Vec<u64> = gens
        .generators()
        .iter()
        .map(|g| g.z_mask() as u64 | ((g.x_mask() as u64) << n))
        .collect();

    // Reduced row echelon form.
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let bit = 1u64 << col;
        let Some(k) = (r..rows.len()).find(|&k| rows[k] & bit != 0) else {
            continue;
        };
        rows.swap(r, k);
        for k in 0..rows.len() {
            if k != r && rows[k] & bit != 0 {
                rows[k] ^= rows[r];
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }

    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut v = 1u64 << free;
        for (i, &pc) in pivots.iter().enumerate() {
            if rows[i] & (1u64 << free) != 0 {
                v |= 1u64 << pc;
            }
        }
        let m = (1u64 << n) - 1;
        let x = (v & m) as u32;
        let z = ((v >> n) & m) as u32;
        basis.push(PauliString::from_masks(n, x, z).expect("masks within n"));
    }
    basis.sort_unstable_by_key(|s| s.index());

    let all = (basis.len() < 63 && (1usize << basis.len()) <= enum_cap).then(|| {
        let mut all: Vec<PauliString> = (0..1u64 << basis.len())
            .map(|sel| {
                basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (sel >> i) & 1 == 1)
                    .fold(PauliString::identity(n), |acc, (_, b)| acc.mul_unchecked(b).0)
            })
            .collect();
        all.sort_unstable_by_key(|s| s.index());
        all
    });
    PauliSymmetries { basis, all }
}

/// Preset model families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Matchgate,
    Universal,
    XyBx,
    IsingB,
    Orthogonal,
    Symplectic,
}

impl Model {
    pub const ALL: [Model; 6] = [
        Model::Matchgate,
        Model::Universal,
        Model::XyBx,
        Model::IsingB,
        Model::Orthogonal,
        Model::Symplectic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::Matchgate => "matchgate",
            Model::Universal => "universal",
            Model::XyBx => "xy_bx",
            Model::IsingB => "ising_b",
            Model::Orthogonal => "orthogonal",
            Model::Symplectic => "symplectic",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == name)
            .ok_or_else(|| Error::Config(format!("unknown model {name:?}")))
    }

    pub fn min_qubits(self) -> usize {
        2
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Two-site term `a` on site `i` and `b` on site `i + 1` (1-based).
fn pair(n: usize, i: usize, a: char, b: char) -> PauliString {
    let mut s = vec!['I'; n];
    s[i - 1] = a;
    s[i] = b;
    s.into_iter().collect::<String>().parse().expect("valid pair")
}

pub fn model_preset(model: Model, n: usize) -> Result<GeneratorSet> {
    if n < model.min_qubits() {
        return Err(Error::Config(format!(
            "model {model} needs n >= {}, got {n}",
            model.min_qubits()
        )));
    }
    if n > crate::pauli::MAX_QUBITS {
        return Err(Error::Config(format!("n = {n} exceeds 32 qubits")));
    }
    let single = |op: char| (1..=n).map(move |i| PauliString::single(n, i, op));
    let pairs = |a: char, b: char| (1..n).map(move |i| pair(n, i, a, b));
    let gens: Vec<PauliString> = match model {
        Model::Matchgate => single('Z').chain(pairs('X', 'X')).collect(),
        Model::Universal => single('X')
            .chain(single('Y'))
            .chain(pairs('Z', 'Z'))
            .collect(),
        Model::XyBx => pairs('X', 'X')
            .chain(pairs('Y', 'Y'))
            .chain(single('X'))
            .collect(),
        Model::IsingB => {
            let mut g: Vec<_> = single('X').collect();
            for i in 1..n {
                g.push(pair(n, i, 'X', 'X'));
                g.push(pair(n, i, 'X', 'Y'));
                g.push(pair(n, i, 'X', 'Z'));
                g.push(PauliString::single(n, i + 1, 'Y'));
                g.push(PauliString::single(n, i + 1, 'Z'));
            }
            g
        }
        Model::Orthogonal => pairs('X', 'Y')
            .chain(pairs('Y', 'X'))
            .chain(pairs('Y', 'Z'))
            .chain(pairs('Z', 'Y'))
            .collect(),
        // X_1 Y_2 anticommutes with the symplectic form iY_1 and would
        // close to su(2^n); it is left out.
        Model::Symplectic => single('Y')
            .chain(pairs('X', 'Y').skip(1))
            .chain(pairs('Y', 'X'))
            .chain([PauliString::single(n, 1, 'X'), pair(n, 1, 'Z', 'Z')])
            .collect(),
    };
    GeneratorSet::new(gens)
}

pub fn model_by_name(name: &str, n: usize) -> Result<GeneratorSet> {
    model_preset(Model::from_name(name)?, n)
}

/// Anticommutation graph on generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrustrationGraph {
    pub adjacency: Vec<Vec<usize>>,
}

impl FrustrationGraph {
    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_degree_regular(&self) -> bool {
        let d = self.degrees();
        d.windows(2).all(|w| w[0] == w[1])
    }
}

pub fn frustration_graph(gens: &GeneratorSet) -> FrustrationGraph {
    let g = gens.generators();
    let adjacency = (0..g.len())
        .map(|a| {
            (0..g.len())
                .filter(|&b| b != a && !g[a].commutes_with(&g[b]))
                .collect()
        })
        .collect();
    FrustrationGraph { adjacency }
}
