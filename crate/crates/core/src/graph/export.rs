//! DOT, JSON and CSV renderings of a commutator graph.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CommutatorGraph, ComponentStats};
use crate::pauli::PauliString;

pub const MEMBERS_SAMPLE: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
    Csv,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            "csv" => Ok(ExportFormat::Csv),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentRecord {
    pub id: u32,
    pub size: u64,
    pub isolated: bool,
    pub members_sample: Vec<PauliString>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diameter: Option<u32>,
}

/// The JSON export document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSummary {
    pub n: usize,
    pub generators: Vec<PauliString>,
    pub weight_cap: Option<usize>,
    pub components: Vec<ComponentRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_count: Option<u64>,
}

impl GraphSummary {
    pub fn from_graph(graph: &CommutatorGraph, stats: &ComponentStats, with_edges: bool) -> Self {
        let members = graph.members_by_component();
        let components = members
            .iter()
            .enumerate()
            .map(|(id, m)| ComponentRecord {
                id: id as u32,
                size: graph.component_sizes()[id],
                isolated: m.len() == 1,
                members_sample: m.iter().take(MEMBERS_SAMPLE).copied().collect(),
                diameter: stats.diameters.as_ref().and_then(|d| d[id]),
            })
            .collect();
        GraphSummary {
            n: graph.num_qubits(),
            generators: graph.generators().generators().to_vec(),
            weight_cap: graph.weight_cap(),
            components,
            edge_count: with_edges.then(|| graph.edge_count()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("graph summary: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    pub fn stats(&self) -> ComponentStats {
        let mut size_histogram = BTreeMap::new();
        for c in &self.components {
            *size_histogram.entry(c.size).or_insert(0) += 1;
        }
        let diameters = self
            .components
            .iter()
            .any(|c| c.diameter.is_some())
            .then(|| self.components.iter().map(|c| c.diameter).collect());
        ComponentStats {
            count: self.components.len(),
            isolated_count: self.components.iter().filter(|c| c.isolated).count(),
            size_histogram,
            diameters,
        }
    }
}

pub fn to_dot(graph: &CommutatorGraph) -> Result<String> {
    let edges = graph.adjacency().ok_or_else(|| {
        Error::Contract(
            "DOT export needs materialized adjacency; call materialize_adjacency first".into(),
        )
    })?;
    let n = graph.num_qubits();
    let name = |i: u32| PauliString::from_index(n, i as u64).to_string();
    let mut out = String::from("graph commutator {\n");
    for (id, m) in graph.members_by_component().iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{id} {{");
        let _ = writeln!(
            out,
            "    label=\"C{id} (size {})\";",
            graph.component_sizes()[id]
        );
        for p in m {
            let _ = writeln!(out, "    \"{p}\";");
        }
        for &(a, b) in &edges[id] {
            let _ = writeln!(out, "    \"{}\" -- \"{}\";", name(a), name(b));
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    Ok(out)
}

pub fn to_csv(summary: &GraphSummary) -> String {
    let mut out = String::from("id,size,isolated,representative,diameter\n");
    for c in &summary.components {
        let rep = c.members_sample.first().map(|p| p.to_string()).unwrap_or_default();
        let diam = c.diameter.map(|d| d.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{},{}", c.id, c.size, c.isolated, rep, diam);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dla::{model_preset, GeneratorSet, Model};

    #[test]
    fn single_qubit_dot() {
        let gens = GeneratorSet::parse(&["Z"]).unwrap();
        let mut g = CommutatorGraph::build_full(&gens, None).unwrap();
        assert!(to_dot(&g).is_err());
        g.materialize_adjacency(100).unwrap();
        let dot = to_dot(&g).unwrap();
        assert_eq!(dot.matches("subgraph").count(), 3);
        assert!(dot.contains("\"X\" -- \"Y\";"));
        let members: Vec<_> = g
            .members_by_component()
            .iter()
            .map(|m| m.iter().map(|p| p.to_string()).collect::<Vec<_>>())
            .collect();
        assert_eq!(members, [vec!["I"], vec!["Z"], vec!["X", "Y"]]);
    }

    #[test]
    fn matchgate_json_sizes_and_round_trip() {
        let g = CommutatorGraph::build_full(&model_preset(Model::Matchgate, 2).unwrap(), None)
            .unwrap();
        let stats = g.stats(Some(1000));
        let summary = GraphSummary::from_graph(&g, &stats, true);
        let mut sizes: Vec<_> = summary.components.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 1, 4, 4, 6]);
        let back = GraphSummary::from_json(&summary.to_json()).unwrap();
        assert_eq!(back, summary);
        assert_eq!(back.stats(), stats);
    }

    #[test]
    fn csv_has_row_per_component() {
        let g = CommutatorGraph::build_full(&model_preset(Model::Universal, 2).unwrap(), None)
            .unwrap();
        let s = GraphSummary::from_graph(&g, &g.stats(None), false);
        let csv = to_csv(&s);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().nth(1).unwrap().starts_with("0,1,true,II,"));
    }
}
