use clap::{Parser, Subcommand};
use qmc_graph::{parse_graph6, WeightedGraph};
use qmc_pipeline::{
    default_tol, run_algorithm_on_graph, run_certificates, run_verification, AlgorithmRun,
    CertificateKind, CertifyMethod, PipelineConfig,
};
use qmc_ratio::ThetaSpec;
use qmc_round::{Alg1Params, Alg2Params, Alg3Params, RoundingAlgorithm};
use qmc_sdp::{edge_values, solve_sdp};
use std::path::PathBuf;
use std::process::ExitCode;

/// Quantum Max-Cut toolkit: census verification, relaxation solves,
/// rounding algorithms and numeric certificates.
#[derive(Parser)]
#[command(name = "qmc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the census bound on graphs from graph6 streams.
    Verify {
        /// Odd vertex count of the census (3..=13).
        #[arg(long)]
        s: usize,
        /// One or more graph6 files.
        #[arg(long, required = true, num_args = 1..)]
        g6: Vec<PathBuf>,
        /// Worker threads for the certification stage.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Output directory for the JSON summary and CSV log.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip eigensolves via the incremental bound when it already
        /// certifies the target.
        #[arg(long)]
        skip_bound: bool,
        /// Certify with level-2 relaxation values instead of eigensolves.
        #[arg(long)]
        sdp_k2: bool,
        /// Force the stable-set discard stage on or off.
        #[arg(long)]
        stable_set: Option<bool>,
        /// Force the vertex-cover discard stage on or off.
        #[arg(long)]
        tau: Option<bool>,
    },
    /// Run a rounding algorithm on one graph.
    Solve {
        /// Graph file: JSON {"n":…, "edges":[[i,j,w],…]} or a graph6 line.
        #[arg(long)]
        graph: PathBuf,
        /// Algorithm: 1 (product/matching), 2 (triangle-free), 3 (bipartite).
        #[arg(long)]
        alg: u8,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Rotation profile, e.g. linear:0.367.
        #[arg(long, default_value = "linear:0.367")]
        theta: String,
        #[arg(long, default_value_t = 0.876)]
        h_max: f64,
        #[arg(long, default_value_t = 0.4)]
        theta_star: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Number of independent seeds to run.
        #[arg(long, default_value_t = 1)]
        seeds: usize,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a certificate suite; exits nonzero on failure.
    Certify {
        /// table2 | triangle-free | bipartite | sdp-invariants
        suite: String,
        /// Emit CSV artifacts (guarantee table, zeta curve) here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Solve the moment relaxation of one graph and report edge values.
    Sdp {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Include the full moment matrix in the report.
        #[arg(long)]
        dump: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<bool, Box<dyn std::error::Error>> {
    let tol = default_tol();
    match cli.command {
        Command::Verify {
            s,
            g6,
            workers,
            out,
            skip_bound,
            sdp_k2,
            stable_set,
            tau,
        } => {
            let mut config = PipelineConfig::new(s, g6);
            config.workers = workers;
            config.use_skip_bound = skip_bound;
            config.stable_set_discard = stable_set;
            config.tau_discard = tau;
            config.tol = tol;
            config.method = if sdp_k2 {
                CertifyMethod::SdpLevel2
            } else {
                CertifyMethod::ExactEig
            };
            config.out_dir = out;
            let report = run_verification(&config)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            println!(
                "s = {}: {} records, {} survivors, max c = {:.9} (target {}), certified: {}",
                report.s,
                report.counts.total,
                report.counts.survivors,
                report.max_c,
                report.target,
                report.certified
            );
            Ok(report.certified)
        }
        Command::Solve {
            graph,
            alg,
            k,
            theta,
            h_max,
            theta_star,
            seed,
            seeds,
            out,
        } => {
            let graph = load_graph(&graph)?;
            let theta = ThetaSpec::parse(&theta)?;
            let algorithm = match alg {
                1 => RoundingAlgorithm::MatchingProduct(Alg1Params { k, tol }),
                2 => RoundingAlgorithm::TriangleFree(Alg2Params { k, tol, theta }),
                3 => RoundingAlgorithm::Bipartite(Alg3Params {
                    theta,
                    h_max,
                    theta_star,
                    k,
                    tol,
                }),
                other => return Err(format!("unknown algorithm {other}").into()),
            };
            let report = run_algorithm_on_graph(&graph, AlgorithmRun { algorithm, seed, seeds })?;
            emit(out, &serde_json::to_string_pretty(&report)?)?;
            Ok(true)
        }
        Command::Certify { suite, csv } => {
            let kind = CertificateKind::parse(&suite)
                .ok_or_else(|| format!("unknown suite {suite}"))?;
            let report = run_certificates(kind, csv.as_deref())?;
            for line in &report.checks {
                println!(
                    "[{}] {}: {}",
                    if line.passed { "pass" } else { "FAIL" },
                    line.name,
                    line.detail
                );
            }
            println!(
                "suite {}: {}",
                report.suite,
                if report.passed { "pass" } else { "FAIL" }
            );
            Ok(report.passed)
        }
        Command::Sdp { graph, k, dump, out } => {
            let graph = load_graph(&graph)?;
            let sol = solve_sdp(&graph, k, tol)?;
            let vals = edge_values(&sol, &graph)?;
            let mut report = serde_json::json!({
                "n": graph.n(),
                "k": sol.k(),
                "basis_size": sol.basis().len(),
                "objective": sol.objective(),
                "relative_gap": sol.gap(),
                "iterations": sol.iterations(),
                "edges": graph.edges().iter().zip(0..).map(|(&(i, j, w), e): (&(usize, usize, f64), usize)| {
                    serde_json::json!({
                        "i": i, "j": j, "w": w,
                        "g": vals.g[e], "h": vals.h[e], "h_plus": vals.h_plus[e],
                    })
                }).collect::<Vec<_>>(),
                "c": sol.objective() / 2.0 - graph.num_edges() as f64,
            });
            if dump {
                let m = sol.moment_matrix();
                let words: Vec<String> =
                    sol.basis().words().iter().map(|w| w.to_string()).collect();
                let matrix: Vec<Vec<f64>> = (0..m.nrows())
                    .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
                    .collect();
                report["basis"] = serde_json::json!(words);
                report["moment_matrix"] = serde_json::json!(matrix);
            }
            emit(out, &serde_json::to_string_pretty(&report)?)?;
            Ok(true)
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<WeightedGraph, Box<dyn std::error::Error>> {
    let data = std::fs::read(path)?;
    if path.extension().is_some_and(|e| e == "g6") {
        return Ok(parse_graph6(&data)?);
    }
    match serde_json::from_slice::<WeightedGraph>(&data) {
        Ok(g) => Ok(g),
        Err(_) => Ok(parse_graph6(&data)?),
    }
}

fn emit(out: Option<PathBuf>, text: &str) -> Result<(), Box<dyn std::error::Error>> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}
