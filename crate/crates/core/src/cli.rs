//! Command-line front end. `main` parses arguments and maps errors to exit
//! codes; everything else lives here so it can be tested in-process.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::config::{PartialConfig, RunConfig, SamplerKind};
use crate::dla::{lie_closure, pauli_linear_symmetries, GeneratorSet, DEFAULT_SYMMETRY_ENUM_CAP};
use crate::dynamics::{
    build_liouvillian, graph_complexity, krylov_complexity, lanczos, trajectory, EvolveMethod,
};
use crate::error::{Error, Result};
use crate::graph::export::{to_csv, to_dot, GraphSummary};
use crate::graph::{component_of, CommutatorGraph, DEFAULT_COMPONENT_CAP};
use crate::matchgate::{all_pairs_average, component_diameter, corner_average_gc};
use crate::metrics::{
    avg_otoc, four_point_avg, frame_potential_2, spread_expectation, symcounting_check,
};
use crate::pauli::PauliString;
use crate::random::{random_hamiltonian, trial_rng};
use crate::rational::{big_to_f64, to_f64, Display as R};
use crate::sampler::{
    monte_carlo_four_point, monte_carlo_frame_potential, monte_carlo_otoc, monte_carlo_spread,
};

#[derive(Debug, Parser)]
#[command(name = "commgraph", about = "Commutator graphs of Pauli generator sets")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct GlobalArgs {
    /// Preset: matchgate, universal, xy_bx, ising_b, orthogonal, symplectic.
    #[arg(long, global = true)]
    pub model: Option<String>,
    /// JSON model file {"n": .., "generators": [..], "coefficients": [..]?}.
    #[arg(long, global = true)]
    pub model_file: Option<PathBuf>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub weight_cap: Option<usize>,
    /// Circuit sampler layers (default 50 x #generators).
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// circuit or hamiltonian.
    #[arg(long, global = true)]
    pub sampler: Option<SamplerKind>,
    #[arg(long, global = true)]
    pub t_max: Option<f64>,
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    /// json, csv or dot.
    #[arg(long, global = true)]
    pub format: Option<String>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// TOML file with any of the above keys (flags take precedence).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the full graph and export statistics.
    Graph {
        /// Compute per-component diameters for components up to this size.
        #[arg(long)]
        diameters: Option<u64>,
        /// Edge budget for DOT export.
        #[arg(long, default_value_t = 1_000_000)]
        max_edges: u64,
    },
    /// Exact chaos diagnostics, optionally with Monte-Carlo columns.
    Metrics {
        #[command(subcommand)]
        which: MetricsCommand,
    },
    /// Trajectory CSV of graph and Krylov complexity.
    Evolve {
        #[arg(short = 'p', long = "pauli")]
        p: String,
        #[arg(long, value_enum, default_value_t = Method::Adaptive)]
        method: Method,
    },
    /// Lanczos coefficients b_n.
    Krylov {
        #[arg(short = 'p', long = "pauli")]
        p: String,
    },
    /// Majorana-picture table: kappa, size, diameter, corner average, A.
    Matchgate,
}

#[derive(Debug, Subcommand)]
pub enum MetricsCommand {
    /// k = 2 frame potential.
    Frame {
        #[arg(long)]
        mc: bool,
    },
    /// Averaged OTOC; without -V, one row per component representative.
    Otoc {
        #[arg(short = 'V')]
        v: Option<String>,
        #[arg(short = 'W')]
        w: String,
        #[arg(long)]
        mc: bool,
    },
    /// Averaged tr[P U Q U^dag R U S U^dag].
    FourPoint {
        #[arg(short = 'P')]
        p: String,
        #[arg(short = 'Q')]
        q: String,
        #[arg(short = 'R')]
        r: String,
        #[arg(short = 'S')]
        s: String,
        #[arg(long)]
        mc: bool,
    },
    /// Averaged |<W, U V U^dag>|^2.
    Spread {
        #[arg(short = 'V')]
        v: String,
        #[arg(short = 'W')]
        w: String,
        #[arg(long)]
        mc: bool,
    },
    /// Counting symmetry between components; all representative pairs by default.
    Symcheck {
        #[arg(short = 'V')]
        v: Option<String>,
        #[arg(short = 'W')]
        w: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Method {
    Adaptive,
    Dense,
    Taylor,
}

impl GlobalArgs {
    fn partial(&self) -> PartialConfig {
        PartialConfig {
            model: self.model.clone(),
            model_file: self.model_file.clone(),
            n: self.n,
            seed: self.seed,
            weight_cap: self.weight_cap,
            depth: self.depth,
            trials: self.trials,
            sampler: self.sampler,
            distribution: None,
            t_max: self.t_max,
            steps: self.steps,
            format: self.format.clone(),
            threads: self.threads,
            ode_tol: None,
            lanczos_tol: None,
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        <Method as ValueEnum>::from_str(s, true).map_err(Error::Config)
    }
}

fn parse_pauli(s: &str, n: usize) -> Result<PauliString> {
    let p: PauliString = s.parse()?;
    if p.num_qubits() != n {
        return Err(Error::Config(format!("{s} has {} qubits, model has {n}", p.num_qubits())));
    }
    Ok(p)
}

fn default_format(cmd: &Command) -> &'static str {
    match cmd {
        Command::Graph { .. } | Command::Metrics { .. } => "json",
        _ => "csv",
    }
}

/// Resolved configuration plus the rendered output.
pub struct Output {
    pub config: RunConfig,
    pub text: String,
}

pub fn resolve(cli: &Cli) -> Result<(RunConfig, GeneratorSet)> {
    let file = match &cli.global.config {
        Some(path) => PartialConfig::from_file(path)?,
        None => PartialConfig::default(),
    };
    let (cfg, gens) = RunConfig::resolve(cli.global.partial().over(file), default_format(&cli.command))?;
    let allowed: &[&str] = match cli.command {
        Command::Graph { .. } => &["json", "csv", "dot"],
        _ => &["json", "csv"],
    };
    if !allowed.contains(&cfg.format.as_str()) {
        return Err(Error::Config(format!(
            "format {:?} not available here (use one of {allowed:?})",
            cfg.format
        )));
    }
    Ok((cfg, gens))
}

pub fn run(cli: &Cli) -> Result<Output> {
    let (cfg, gens) = resolve(cli)?;
    let text = match &cli.command {
        Command::Graph {
            diameters,
            max_edges,
        } => graph_cmd(&cfg, &gens, *diameters, *max_edges)?,
        Command::Metrics { which } => metrics_cmd(&cfg, &gens, which)?,
        Command::Evolve { p, method } => evolve_cmd(&cfg, &gens, p, *method)?,
        Command::Krylov { p } => krylov_cmd(&cfg, &gens, p)?,
        Command::Matchgate => matchgate_cmd(&cfg)?,
    };
    Ok(Output { config: cfg, text })
}

fn json_doc<T: Serialize>(cfg: &RunConfig, result: &T) -> String {
    let doc = json!({ "config": cfg, "result": result });
    serde_json::to_string_pretty(&doc).expect("serializes") + "\n"
}

fn csv_header(cfg: &RunConfig) -> String {
    format!("# config: {}\n", cfg.to_json())
}

/// `rows` as CSV under the config comment, or a JSON array of objects.
fn table(cfg: &RunConfig, columns: &[&str], rows: &[Vec<String>]) -> String {
    if cfg.format == "json" {
        let objs: Vec<serde_json::Map<String, serde_json::Value>> = rows
            .iter()
            .map(|r| {
                columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.to_string(), serde_json::Value::String(v.clone())))
                    .collect()
            })
            .collect();
        return json_doc(cfg, &objs);
    }
    let mut out = csv_header(cfg);
    out.push_str(&columns.join(","));
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

fn build_graph(cfg: &RunConfig, gens: &GeneratorSet) -> Result<CommutatorGraph> {
    CommutatorGraph::build_full(gens, cfg.weight_cap)
}

fn graph_cmd(cfg: &RunConfig, gens: &GeneratorSet, diameters: Option<u64>, max_edges: u64) -> Result<String> {
    let mut graph = build_graph(cfg, gens)?;
    let stats = graph.stats(diameters);
    match cfg.format.as_str() {
        "dot" => {
            graph.materialize_adjacency(max_edges)?;
            Ok(format!("// config: {}\n{}", cfg.to_json(), to_dot(&graph)?))
        }
        "csv" => {
            let summary = GraphSummary::from_graph(&graph, &stats, false);
            Ok(csv_header(cfg) + &to_csv(&summary))
        }
        _ => {
            let summary = GraphSummary::from_graph(&graph, &stats, true);
            let dla = lie_closure(gens).map(|b| b.dimension()).ok();
            let extra = json!({
                "component_count": stats.count,
                "isolated_count": stats.isolated_count,
                "size_histogram": stats.size_histogram,
                "dla_dimension": dla,
                "pauli_symmetries": pauli_linear_symmetries(gens).count(),
            });
            Ok(json_doc(cfg, &json!({ "summary": summary, "stats": extra })))
        }
    }
}

fn mc_columns(est: Option<&crate::sampler::MonteCarloEstimate>, trials: usize) -> Vec<String> {
    match est {
        Some(e) => vec![
            format!("{:.12}", e.mean),
            format!("{:.12}", e.std),
            trials.to_string(),
        ],
        None => vec![String::new(), String::new(), String::new()],
    }
}

const MC_COLUMNS: [&str; 3] = ["mc_mean", "mc_std", "trials"];

fn metrics_cmd(cfg: &RunConfig, gens: &GeneratorSet, which: &MetricsCommand) -> Result<String> {
    let graph = build_graph(cfg, gens)?;
    let n = gens.num_qubits();
    let sc = cfg.sampler_config();
    match which {
        MetricsCommand::Frame { mc } => {
            let f = frame_potential_2(&graph)?;
            let est = mc.then(|| monte_carlo_frame_potential(gens, &sc)).transpose()?;
            let mut row = vec![
                f.value.to_string(),
                f.isolated.to_string(),
                f.components.to_string(),
                f.pauli_symmetries.to_string(),
                f.hypothesis_holds.to_string(),
            ];
            row.extend(mc_columns(est.as_ref(), cfg.trials));
            let mut cols = vec!["frame_potential", "isolated", "components", "pauli_symmetries", "hypothesis_holds"];
            cols.extend(MC_COLUMNS);
            Ok(table(cfg, &cols, &[row]))
        }
        MetricsCommand::Otoc { v, w, mc } => {
            let w = parse_pauli(w, n)?;
            let vs: Vec<(usize, PauliString)> = match v {
                Some(v) => {
                    let v = parse_pauli(v, n)?;
                    let label = graph
                        .label(&v)
                        .ok_or_else(|| Error::Contract(format!("{v} removed by the weight cap")))?;
                    vec![(label as usize, v)]
                }
                None => graph.representatives().iter().copied().enumerate().collect(),
            };
            let mut rows = Vec::new();
            for (id, v) in vs {
                let r = avg_otoc(&v, &w, &graph)?;
                let est = mc.then(|| monte_carlo_otoc(&v, &w, gens, &sc)).transpose()?;
                let mut row = vec![
                    id.to_string(),
                    v.to_string(),
                    R(&r.value).to_string(),
                    format!("{:.12}", to_f64(&r.value)),
                    r.sides_agree.to_string(),
                ];
                row.extend(mc_columns(est.as_ref(), cfg.trials));
                rows.push(row);
            }
            let mut cols = vec!["component_id", "v", "analytic_value", "analytic_float", "sides_agree"];
            cols.extend(MC_COLUMNS);
            Ok(table(cfg, &cols, &rows))
        }
        MetricsCommand::FourPoint { p, q, r, s, mc } => {
            let [p, q, r, s] = [p, q, r, s].map(|x| parse_pauli(x, n));
            let (p, q, r, s) = (p?, q?, r?, s?);
            let found = pauli_linear_symmetries(gens);
            let count = found.count() as usize;
            let syms = found
                .all
                .ok_or_else(|| Error::cap("Pauli symmetries to enumerate", DEFAULT_SYMMETRY_ENUM_CAP, count))?;
            let value = four_point_avg(&p, &q, &r, &s, &graph, &syms)?;
            let est = mc
                .then(|| monte_carlo_four_point(&p, &q, &r, &s, gens, &sc))
                .transpose()?;
            let mut row = vec![value.to_string()];
            match est {
                Some((re, im)) => row.extend([
                    format!("{:.12}", re.mean),
                    format!("{:.12}", re.std),
                    format!("{:.12}", im.mean),
                    format!("{:.12}", im.std),
                    cfg.trials.to_string(),
                ]),
                None => row.extend(std::iter::repeat_n(String::new(), 5)),
            }
            Ok(table(
                cfg,
                &["analytic_value", "mc_re_mean", "mc_re_std", "mc_im_mean", "mc_im_std", "trials"],
                &[row],
            ))
        }
        MetricsCommand::Spread { v, w, mc } => {
            let (v, w) = (parse_pauli(v, n)?, parse_pauli(w, n)?);
            let value = spread_expectation(&v, &w, &graph)?;
            let est = mc.then(|| monte_carlo_spread(&v, &w, gens, &sc)).transpose()?;
            let mut row = vec![R(&value).to_string(), format!("{:.12}", to_f64(&value))];
            row.extend(mc_columns(est.as_ref(), cfg.trials));
            let mut cols = vec!["analytic_value", "analytic_float"];
            cols.extend(MC_COLUMNS);
            Ok(table(cfg, &cols, &[row]))
        }
        MetricsCommand::Symcheck { v, w } => {
            let pairs: Vec<(PauliString, PauliString)> = match (v, w) {
                (Some(v), Some(w)) => vec![(parse_pauli(v, n)?, parse_pauli(w, n)?)],
                (None, None) => {
                    let reps = graph.representatives();
                    reps.iter()
                        .flat_map(|a| reps.iter().map(move |b| (*a, *b)))
                        .collect()
                }
                _ => return Err(Error::Config("give both -V and -W, or neither".into())),
            };
            let rows = pairs
                .iter()
                .map(|(v, w)| {
                    Ok(vec![v.to_string(), w.to_string(), symcounting_check(v, w, &graph)?.to_string()])
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(table(cfg, &["v", "w", "holds"], &rows))
        }
    }
}

fn with_coefficients(cfg: &RunConfig, gens: &GeneratorSet) -> Result<GeneratorSet> {
    match gens.coefficients() {
        Some(_) => Ok(gens.clone()),
        None => {
            let c = random_hamiltonian(gens, &mut trial_rng(cfg.seed, 0), &cfg.distribution);
            gens.clone().with_coefficients(c)
        }
    }
}

fn times(cfg: &RunConfig) -> Vec<f64> {
    if cfg.t_max == 0.0 || cfg.steps == 0 {
        return vec![0.0];
    }
    (0..=cfg.steps)
        .map(|k| cfg.t_max * k as f64 / cfg.steps as f64)
        .collect()
}

fn evolve_cmd(cfg: &RunConfig, gens: &GeneratorSet, p: &str, method: Method) -> Result<String> {
    let p = parse_pauli(p, gens.num_qubits())?;
    let gens = with_coefficients(cfg, gens)?;
    let comp = Arc::new(component_of(&p, &gens, cfg.weight_cap, DEFAULT_COMPONENT_CAP)?);
    let l = build_liouvillian(&gens, comp.clone())?;
    let method = match method {
        Method::Adaptive => EvolveMethod::Adaptive { tol: cfg.ode_tol },
        Method::Dense => EvolveMethod::Dense,
        Method::Taylor => EvolveMethod::Taylor,
    };
    let ts = times(cfg);
    let ops = trajectory(&l, &p, &ts, method)?;
    let dist = comp.shortest_paths_from(&p)?;
    let chain = lanczos(&l, &p, cfg.lanczos_tol)?;
    let rows: Vec<Vec<String>> = ts
        .iter()
        .zip(&ops)
        .map(|(t, op)| {
            let g = graph_complexity(op, &dist);
            let k = krylov_complexity(&chain, op);
            vec![
                format!("{t:.6}"),
                format!("{g:.12}"),
                format!("{:.12}", k.complexity),
                format!("{:.3e}", op.norm_drift()),
            ]
        })
        .collect();
    Ok(table(cfg, &["t", "graph_complexity", "krylov_complexity", "norm_drift"], &rows))
}

fn krylov_cmd(cfg: &RunConfig, gens: &GeneratorSet, p: &str) -> Result<String> {
    let p = parse_pauli(p, gens.num_qubits())?;
    let gens = with_coefficients(cfg, gens)?;
    let comp = Arc::new(component_of(&p, &gens, cfg.weight_cap, DEFAULT_COMPONENT_CAP)?);
    let l = build_liouvillian(&gens, comp)?;
    let chain = lanczos(&l, &p, cfg.lanczos_tol)?;
    let rows: Vec<Vec<String>> = chain
        .b
        .iter()
        .enumerate()
        .map(|(i, b)| vec![(i + 1).to_string(), format!("{b:.12}")])
        .collect();
    Ok(table(cfg, &["n", "b_n"], &rows))
}

fn matchgate_cmd(cfg: &RunConfig) -> Result<String> {
    let n = cfg.n;
    let mut rows = Vec::new();
    for kappa in 0..=2 * n {
        let a = all_pairs_average(n, kappa)?;
        let mut a_text = String::new();
        let _ = write!(a_text, "{a}");
        rows.push(vec![
            kappa.to_string(),
            num_integer::binomial(2 * n as u128, kappa as u128).to_string(),
            component_diameter(n, kappa).to_string(),
            R(&corner_average_gc(n, kappa)).to_string(),
            a_text,
            format!("{:.12}", big_to_f64(&a)),
        ]);
    }
    Ok(table(
        cfg,
        &["kappa", "size", "diameter", "corner_avg", "A", "A_float"],
        &rows,
    ))
}
