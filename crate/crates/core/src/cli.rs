//! Command implementations behind the `hyperspec` binary.
//!
//! Every command writes one document (JSON, CSV or a rounded human table) and
//! maps its outcome to an exit code: 0 success, 1 a verification check
//! failed, 2 bad input, 3 a computation budget ran out.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauge::{certificate_report, default_moduli};
use crate::graphs::{LoopedGraph, VertexSubset};
use crate::hypergraphs::generalized_power;
use crate::io::{hypergraph_to_json, read_edge_list, read_hypergraph};
use crate::kind::Kind;
use crate::linalg::{eig_complex_dense, power_iteration_nonneg, spectral_radius, PerronConfig};
use crate::reduction::{
    h_spectrum_power, lambda_max_L, reduced_matrix, rho_power, special_k2mod4_matrix, spectrum_power, PhaseAssignment,
    SpectrumConfig,
};
use crate::tensors::{nqz_power_iteration, NqzConfig, TensorOperator};

#[derive(Debug, Parser)]
#[command(name = "hyperspec", version, about = "Spectra of tensors of generalized power hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub parallel: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// rho(L) = rho(Q) exactly when 4 divides k.
    EqualRadius,
    /// For k = 2 mod 4 the uniform-phase gap to rho(Q) shrinks with k.
    LargeKGap,
    /// Tensor power iteration on the power matches the base graph matrices.
    RadiusTransfer,
    /// Largest H-eigenvalue of L equals lambda_max(L(G)).
    LambdaMax,
    /// Bipartite base graphs: lambda_max(L) = rho(L) = rho(Q).
    BipartiteChain,
    /// Random sign flips of phases leave reduced spectra unchanged.
    SignClasses,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build G^{k,s} from an edge list and emit hypergraph JSON.
    Power {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Half-edge size; defaults to k/2.
        #[arg(long)]
        s: Option<usize>,
    },
    /// Spectrum (or H-spectrum) of a tensor of G^{k,k/2}.
    Spectrum {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "L")]
        kind: Kind,
        /// Only H-eigenvalues.
        #[arg(long)]
        h_only: bool,
        #[command(flatten)]
        limits: Limits,
        /// Deduplication tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Run a numerical check for a list or range of k.
    Verify {
        graph: PathBuf,
        /// Comma list (4,8,12) or inclusive range of even values (4..12).
        #[arg(long)]
        k: String,
        #[arg(long, value_enum)]
        check: Check,
        #[command(flatten)]
        limits: Limits,
        /// Equality tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for root-of-unity similarity certificates of a hypergraph.
    Certificate {
        hypergraph: PathBuf,
        /// Comma list of even moduli; defaults to 2, k, 2k.
        #[arg(long)]
        moduli: Option<String>,
    },
    /// Perron eigenpair of A or Q of a hypergraph by tensor power iteration.
    Perron {
        hypergraph: PathBuf,
        #[arg(long, default_value = "Q")]
        kind: Kind,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Limits {
    /// Maximum number of reduced matrices evaluated.
    #[arg(long, env = "HYPERSPEC_BUDGET", default_value_t = 1_000_000)]
    pub budget: usize,
    /// Largest connected subset enumerated.
    #[arg(long, default_value_t = 8)]
    pub max_subset: usize,
}

impl Limits {
    fn config(&self, tol: f64) -> Result<SpectrumConfig> {
        if self.budget == 0 {
            return Err(Error::InvalidParameter("budget must be positive".into()));
        }
        Ok(SpectrumConfig { max_subset: self.max_subset, budget: self.budget, dedup_tol: tol, ..Default::default() })
    }
}

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
    BudgetExhausted,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::VerificationFailed => 1,
            Outcome::BudgetExhausted => 3,
        }
    }
}

/// Exit code for an error.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::NoConvergence(_) => 3,
        _ => 2,
    }
}

/// Parses `4,8,12` or `4..12` (all even values in the inclusive range).
pub fn parse_k_list(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("bad k list {text:?}"));
    if let Some((a, b)) = text.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        let ks: Vec<usize> = (a..=b).filter(|k| k % 2 == 0).collect();
        return if ks.is_empty() { Err(bad()) } else { Ok(ks) };
    }
    text.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

fn parse_moduli(text: &str) -> Result<Vec<u64>> {
    let mut m: Vec<u64> = text
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad modulus {t:?}"))))
        .collect::<Result<_>>()?;
    m.sort_unstable();
    m.dedup();
    Ok(m)
}

/// Rounds to 7 significant digits.
pub fn sig7(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let a = x.abs();
    if !(1e-4..1e7).contains(&a) {
        return format!("{x:.6e}");
    }
    let digits = (6 - a.log10().floor() as i64).max(0) as usize;
    format!("{x:.digits$}")
}

fn complex_pretty(z: Complex64) -> String {
    if z.im.abs() <= 1e-12 * z.norm().max(1.0) {
        sig7(z.re)
    } else {
        format!("{}{}{}i", sig7(z.re), if z.im < 0.0 { "-" } else { "+" }, sig7(z.im.abs()))
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// One row of a verification table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub k: usize,
    pub values: BTreeMap<String, f64>,
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub check: String,
    pub rows: Vec<VerifyRow>,
    pub complete: bool,
    pub pass: bool,
}

fn check_name(check: Check) -> String {
    check.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn require_non_bipartite(g: &LoopedGraph) -> Result<()> {
    if g.is_bipartite()? {
        return Err(Error::InvalidParameter("this check requires non-bipartite graph".into()));
    }
    Ok(())
}

const STRICT_MARGIN: f64 = 1e-6;

/// Runs one verification check over `ks`.
pub fn run_verify(
    g: &LoopedGraph,
    ks: &[usize],
    check: Check,
    config: &SpectrumConfig,
    tol: f64,
    seed: u64,
) -> Result<VerifyReport> {
    let mut rows = Vec::new();
    let mut complete = true;
    let row = |k: usize, values: &[(&str, f64)], margin: f64, pass: bool| VerifyRow {
        k,
        values: values.iter().map(|&(n, v)| (n.to_string(), v)).collect(),
        margin,
        pass,
    };
    match check {
        Check::EqualRadius => {
            require_non_bipartite(g)?;
            for &k in ks {
                let lmax = lambda_max_L(g, k)?;
                let rl = rho_power(g, k, Kind::Laplacian, config)?;
                let rq = rho_power(g, k, Kind::Signless, config)?;
                complete &= rl.complete && rq.complete;
                let diff = rq.value - rl.value;
                let pass = if k % 4 == 0 {
                    diff.abs() <= tol && rl.value - lmax >= STRICT_MARGIN
                } else {
                    diff >= STRICT_MARGIN
                };
                rows.push(row(k, &[("lambda_max_L", lmax), ("rho_L", rl.value), ("rho_Q", rq.value)], diff, pass));
            }
        }
        Check::LargeKGap => {
            require_non_bipartite(g)?;
            let rho_q = power_iteration_nonneg(&g.signless_laplacian_matrix(), &PerronConfig::default())?.value;
            let mut previous = f64::INFINITY;
            for &k in ks {
                let lmax = lambda_max_L(g, k)?;
                let rho = spectral_radius(&special_k2mod4_matrix(g, k)?, &config.eig)?;
                let gap = rho_q - rho;
                let pass = gap < previous && gap >= 0.0 && rho - lmax >= STRICT_MARGIN;
                previous = gap;
                rows.push(row(k, &[("lambda_max_L", lmax), ("rho_uniform_phase", rho), ("rho_Q", rho_q)], gap, pass));
            }
        }
        Check::RadiusTransfer => {
            let q = power_iteration_nonneg(&g.signless_laplacian_matrix(), &PerronConfig::default())?.value;
            let a = power_iteration_nonneg(&g.adjacency_matrix(), &PerronConfig::default())?.value;
            for &k in ks {
                let p = generalized_power(g, k, k / 2)?;
                let nq =
                    nqz_power_iteration(&TensorOperator::new(p.hypergraph(), Kind::Signless), &NqzConfig::default())?;
                let na =
                    nqz_power_iteration(&TensorOperator::new(p.hypergraph(), Kind::Adjacency), &NqzConfig::default())?;
                let margin = (nq.value - q).abs().max((na.value - a).abs());
                rows.push(row(
                    k,
                    &[("tensor_rho_Q", nq.value), ("matrix_rho_Q", q), ("tensor_rho_A", na.value), ("matrix_rho_A", a)],
                    margin,
                    margin <= tol.max(1e-7),
                ));
            }
        }
        Check::LambdaMax => {
            for &k in ks {
                let lmax = lambda_max_L(g, k)?;
                let h = h_spectrum_power(g, k, Kind::Laplacian, config)?;
                complete &= h.complete;
                let top = h.spectrum.real_values(tol).into_iter().fold(f64::NEG_INFINITY, f64::max);
                let margin = (top - lmax).abs();
                rows.push(row(k, &[("lambda_max_L", lmax), ("max_h_eigenvalue", top)], margin, margin <= tol));
            }
        }
        Check::BipartiteChain => {
            if !g.is_bipartite()? {
                return Err(Error::InvalidParameter("this check requires bipartite graph".into()));
            }
            for &k in ks {
                let lmax = lambda_max_L(g, k)?;
                let rl = rho_power(g, k, Kind::Laplacian, config)?;
                let rq = rho_power(g, k, Kind::Signless, config)?;
                complete &= rl.complete && rq.complete;
                let margin = (lmax - rl.value).abs().max((rl.value - rq.value).abs());
                rows.push(row(
                    k,
                    &[("lambda_max_L", lmax), ("rho_L", rl.value), ("rho_Q", rq.value)],
                    margin,
                    margin <= tol,
                ));
            }
        }
        Check::SignClasses => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = g.vertex_count();
            let all = VertexSubset::full(n);
            if !g.induces_connected(&all) {
                return Err(Error::Disconnected);
            }
            for &k in ks {
                if k < 4 || k % 2 == 1 {
                    return Err(Error::InvalidParameter(format!("k must be even and at least 4, got {k}")));
                }
                let mut worst = 0.0f64;
                for _ in 0..16 {
                    let ell: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
                    let flipped: Vec<usize> =
                        ell.iter().map(|&l| if rng.gen_bool(0.5) { (l + k / 2) % k } else { l }).collect();
                    let kind = Kind::ALL[rng.gen_range(0..3)];
                    let a = eig_complex_dense(
                        &reduced_matrix(g, k, &all, &PhaseAssignment::new(k, ell)?, kind)?,
                        &config.eig,
                    )?;
                    let b = eig_complex_dense(
                        &reduced_matrix(g, k, &all, &PhaseAssignment::new(k, flipped)?, kind)?,
                        &config.eig,
                    )?;
                    let one_way = |x: &[Complex64], y: &[Complex64]| {
                        x.iter()
                            .map(|z| y.iter().map(|w| (z - w).norm()).fold(f64::INFINITY, f64::min))
                            .fold(0.0, f64::max)
                    };
                    let (va, vb) = (a.values(), b.values());
                    worst = worst.max(one_way(&va, &vb)).max(one_way(&vb, &va));
                }
                rows.push(row(k, &[("max_distance", worst)], worst, worst <= 1e-9));
            }
        }
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(VerifyReport { check: check_name(check), rows, complete, pass })
}

fn single_radius(g: &LoopedGraph, k: usize, kind: Kind, config: &SpectrumConfig) -> Result<f64> {
    Ok(rho_power(g, k, kind, config)?.value)
}

/// Executes one parsed command and returns its rendered output.
pub fn execute(command: &Command, format: Format) -> Result<(String, Outcome)> {
    match command {
        Command::Power { graph, k, s } => {
            let g = read_edge_list(graph)?;
            let s = match s {
                Some(s) => *s,
                None if k % 2 == 1 => return Err(Error::InvalidParameter("k must be even for s=k/2".into())),
                None => k / 2,
            };
            if 2 * s == *k && k % 2 == 1 {
                return Err(Error::InvalidParameter("k must be even for s=k/2".into()));
            }
            let p = generalized_power(&g, *k, s)?;
            let text = match format {
                Format::Json => format!("{}\n", hypergraph_to_json(p.hypergraph(), Some(p.half_edges()))?),
                Format::Csv => {
                    let mut out = String::new();
                    for e in p.hypergraph().edges() {
                        let cells: Vec<String> = e.iter().map(usize::to_string).collect();
                        writeln!(out, "{}", cells.join(",")).expect("writing to a String");
                    }
                    out
                }
                Format::Pretty => format!(
                    "G^{{{},{}}}: {} vertices, {} edges, rank {}\n",
                    k,
                    s,
                    p.hypergraph().vertex_count(),
                    p.hypergraph().edges().len(),
                    k
                ),
            };
            Ok((text, Outcome::Success))
        }
        Command::Spectrum { graph, k, kind, h_only, limits, tol } => {
            let g = read_edge_list(graph)?;
            let config = limits.config(*tol)?;
            let result = if *h_only {
                h_spectrum_power(&g, *k, *kind, &config)?
            } else {
                spectrum_power(&g, *k, *kind, &config)?
            };
            let report = result.report();
            let text = match format {
                Format::Json => to_json(&report)?,
                Format::Csv => {
                    let mut out = String::from("re,im,subset,phase\n");
                    for (v, w) in report.values.iter().zip(&report.witnesses) {
                        let join = |xs: &[usize]| xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
                        writeln!(out, "{},{},{},{}", v.re, v.im, join(w.subset.members()), join(w.phase.phases()))
                            .expect("writing to a String");
                    }
                    out
                }
                Format::Pretty => {
                    let mut out = format!(
                        "{} spectrum of {}(G^{{{k},{}}}): {} values{}\n",
                        if *h_only { "H-" } else { "full" },
                        kind,
                        k / 2,
                        report.values.len(),
                        if report.complete { "" } else { " (partial: lower bound only)" }
                    );
                    for v in &report.values {
                        writeln!(out, "  {}", complex_pretty(*v)).expect("writing to a String");
                    }
                    if !*h_only {
                        let rl = single_radius(&g, *k, Kind::Laplacian, &config)?;
                        let rq = single_radius(&g, *k, Kind::Signless, &config)?;
                        let relation = if (rl - rq).abs() <= *tol {
                            "="
                        } else if rl < rq {
                            "<"
                        } else {
                            ">"
                        };
                        writeln!(out, "rho(L) = {} {relation} rho(Q) = {}", sig7(rl), sig7(rq))
                            .expect("writing to a String");
                    }
                    out
                }
            };
            let outcome = if report.complete { Outcome::Success } else { Outcome::BudgetExhausted };
            Ok((text, outcome))
        }
        Command::Verify { graph, k, check, limits, tol, seed } => {
            let g = read_edge_list(graph)?;
            let ks = parse_k_list(k)?;
            let report = run_verify(&g, &ks, *check, &limits.config(1e-8)?, *tol, *seed)?;
            let text = match format {
                Format::Json => to_json(&report)?,
                Format::Csv => {
                    let mut out = String::from("k");
                    if let Some(first) = report.rows.first() {
                        for name in first.values.keys() {
                            write!(out, ",{name}").expect("writing to a String");
                        }
                    }
                    out.push_str(",margin,pass\n");
                    for r in &report.rows {
                        write!(out, "{}", r.k).expect("writing to a String");
                        for v in r.values.values() {
                            write!(out, ",{v}").expect("writing to a String");
                        }
                        writeln!(out, ",{},{}", r.margin, r.pass).expect("writing to a String");
                    }
                    out
                }
                Format::Pretty => {
                    let mut out = format!("check {}\n", report.check);
                    for r in &report.rows {
                        let cells: Vec<String> = r.values.iter().map(|(n, v)| format!("{n}={}", sig7(*v))).collect();
                        writeln!(
                            out,
                            "  k={:<3} {}  margin={}  {}",
                            r.k,
                            cells.join("  "),
                            sig7(r.margin),
                            if r.pass { "PASS" } else { "FAIL" }
                        )
                        .expect("writing to a String");
                    }
                    writeln!(out, "{}", if report.pass { "all rows pass" } else { "some rows fail" })
                        .expect("writing to a String");
                    out
                }
            };
            let outcome = if !report.pass {
                Outcome::VerificationFailed
            } else if !report.complete {
                Outcome::BudgetExhausted
            } else {
                Outcome::Success
            };
            Ok((text, outcome))
        }
        Command::Certificate { hypergraph, moduli } => {
            let (h, _) = read_hypergraph(hypergraph)?;
            let moduli = match moduli {
                Some(m) => parse_moduli(m)?,
                None => default_moduli(h.rank()),
            };
            let report = certificate_report(&h, &moduli)?;
            let text = match format {
                Format::Json => to_json(&report)?,
                Format::Csv => {
                    let mut out = String::from("modulus,solvable,phases\n");
                    for (m, v) in &report.moduli {
                        let phases = v
                            .gauge
                            .as_ref()
                            .map(|g| g.phases().iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
                            .unwrap_or_default();
                        writeln!(out, "{m},{},{phases}", v.solvable).expect("writing to a String");
                    }
                    out
                }
                Format::Pretty => {
                    let mut out = String::new();
                    for (m, v) in &report.moduli {
                        writeln!(out, "m={m:<4} {}", if v.solvable { "certificate found" } else { "none" })
                            .expect("writing to a String");
                    }
                    writeln!(out, "odd-bipartite: {}", report.odd_bipartite).expect("writing to a String");
                    writeln!(out, "{}", report.summary()).expect("writing to a String");
                    out
                }
            };
            Ok((text, Outcome::Success))
        }
        Command::Perron { hypergraph, kind, tol } => {
            let (h, _) = read_hypergraph(hypergraph)?;
            let config = NqzConfig { residual_tol: *tol, ..NqzConfig::default() };
            let result = nqz_power_iteration(&TensorOperator::new(&h, *kind), &config)?;
            let text = match format {
                Format::Json => to_json(&result.to_eigenpair())?,
                Format::Csv => {
                    let mut out = String::from("vertex,value\n");
                    for (v, x) in result.vector.iter().enumerate() {
                        writeln!(out, "{v},{x}").expect("writing to a String");
                    }
                    out
                }
                Format::Pretty => format!(
                    "rho({kind}) = {}  residual {:.1e}  after {} iterations\n",
                    sig7(result.value),
                    result.residual,
                    result.iterations
                ),
            };
            Ok((text, Outcome::Success))
        }
    }
}

/// Runs a parsed invocation, honoring `--parallel` and `--out`, and returns
/// the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let work = || execute(&cli.command, cli.common.format);
    let result = match cli.common.parallel {
        Some(0) => Err(Error::InvalidParameter("--parallel must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(work),
            Err(e) => Err(Error::InvalidParameter(e.to_string())),
        },
        None => work(),
    };
    match result {
        Ok((text, outcome)) => {
            let written = match &cli.common.out {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 2;
            }
            outcome.code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    }
}
