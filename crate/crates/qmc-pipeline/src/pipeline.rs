use crate::error::PipelineError;
use qmc_graph::{
    encode_graph6, lemma7_filter, parse_graph6_stream, stable_set_property_ok,
    vertex_cover_number, FilterOutcome, FilterReason, WeightedGraph,
};
use qmc_pauli::{lambda_max, lambda_max_upper_from_delta};
use qmc_sdp::c_value;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

/// How survivors are certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertifyMethod {
    /// Exact eigensolves, optionally skipping via the incremental bound.
    ExactEig,
    /// Level-2 relaxation values (certifies the level-2 statement, as the
    /// original verification did on the small censuses).
    SdpLevel2,
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Odd vertex count of the census, 3..=13.
    pub s: usize,
    pub g6_paths: Vec<PathBuf>,
    /// Worker threads for the certification stage (0 = rayon default).
    pub workers: usize,
    /// Use the incremental eigenvalue bound to skip solves.
    pub use_skip_bound: bool,
    /// Discard graphs failing the two-element stable-set neighborhood
    /// property (sound at any order; the long census enables it).
    pub stable_set_discard: Option<bool>,
    /// Discard graphs whose vertex cover number already certifies the
    /// bound (sound at any order; the long census enables it).
    pub tau_discard: Option<bool>,
    pub method: CertifyMethod,
    /// Output directory for the JSON summary and per-graph CSV log.
    pub out_dir: Option<PathBuf>,
    /// Recompute an exact value on every Nth skipped graph and verify the
    /// bound dominates it.
    pub spot_check_every: usize,
    pub tol: f64,
}

impl PipelineConfig {
    pub fn new(s: usize, g6_paths: Vec<PathBuf>) -> Self {
        PipelineConfig {
            s,
            g6_paths,
            workers: 0,
            use_skip_bound: false,
            stable_set_discard: None,
            tau_discard: None,
            method: CertifyMethod::ExactEig,
            out_dir: None,
            spot_check_every: 25,
            tol: 1e-7,
        }
    }

    fn stable_set_on(&self) -> bool {
        self.stable_set_discard.unwrap_or(self.s >= 13)
    }

    fn tau_on(&self) -> bool {
        self.tau_discard.unwrap_or(self.s >= 13)
    }
}

/// Per-stage record counts; the stages sum to the input count.
#[derive(Debug, Clone, Default, Serialize)]
pub struct StageCounts {
    pub total: usize,
    pub too_few_edges: usize,
    pub degree_out_of_range: usize,
    pub bipartite: usize,
    pub has_triangle: usize,
    pub not_biconnected: usize,
    pub stable_set_discarded: usize,
    pub tau_discarded: usize,
    pub survivors: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    TooFewEdges,
    DegreeOutOfRange,
    Bipartite,
    HasTriangle,
    NotBiconnected,
    StableSetDiscard,
    TauDiscard,
}

impl Verdict {
    fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::TooFewEdges => "too_few_edges",
            Verdict::DegreeOutOfRange => "degree_out_of_range",
            Verdict::Bipartite => "bipartite",
            Verdict::HasTriangle => "has_triangle",
            Verdict::NotBiconnected => "not_biconnected",
            Verdict::StableSetDiscard => "stable_set_discard",
            Verdict::TauDiscard => "tau_discard",
        }
    }

    fn parse(text: &str) -> Option<Verdict> {
        Some(match text {
            "pass" => Verdict::Pass,
            "too_few_edges" => Verdict::TooFewEdges,
            "degree_out_of_range" => Verdict::DegreeOutOfRange,
            "bipartite" => Verdict::Bipartite,
            "has_triangle" => Verdict::HasTriangle,
            "not_biconnected" => Verdict::NotBiconnected,
            "stable_set_discard" => Verdict::StableSetDiscard,
            "tau_discard" => Verdict::TauDiscard,
            _ => return None,
        })
    }
}

/// One processed census record.
#[derive(Debug, Clone, Serialize)]
pub struct GraphRecord {
    pub index: usize,
    pub graph6: String,
    pub verdict: Verdict,
    /// `exact`, `bound` (skipped via the incremental bound) or `none`.
    pub lambda_source: &'static str,
    /// Exact `c` for exact solves; an upper bound for skipped records.
    pub c: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub s: usize,
    pub target: f64,
    pub counts: StageCounts,
    /// Maximum exact `c` over survivors, with its graph.
    pub max_c: f64,
    pub argmax_graph6: String,
    /// True iff every survivor was certified at or below the target.
    pub certified: bool,
    pub exact_solves: usize,
    pub skipped_by_bound: usize,
    pub spot_checks: usize,
    pub resumed_rows: usize,
    pub filter_secs: f64,
    pub certify_secs: f64,
}

/// Runs the census verification: filter every input graph, apply the
/// configured discards, certify each survivor's relaxation constant
/// against `floor(s/2)`, and write the JSON summary and CSV log.
pub fn run_verification(config: &PipelineConfig) -> Result<PipelineReport, PipelineError> {
    if config.s < 3 || config.s % 2 == 0 || config.s > 13 {
        return Err(PipelineError::Config(format!(
            "census order must be odd and in 3..=13, got {}",
            config.s
        )));
    }
    let target = (config.s / 2) as f64;

    // Resume support: previously logged rows are kept as-is.
    let csv_path = config.out_dir.as_ref().map(|d| d.join(format!("s{}.csv", config.s)));
    let mut resumed: HashMap<usize, GraphRecord> = HashMap::new();
    if let Some(path) = &csv_path {
        if path.exists() {
            let text = std::fs::read_to_string(path)
                .map_err(|e| PipelineError::io(path.display().to_string(), e))?;
            for line in text.lines().skip(1) {
                if let Some(rec) = parse_csv_row(line) {
                    resumed.insert(rec.index, rec);
                }
            }
        }
    }
    let resumed_rows = resumed.len();

    // Stage 1: filters, cheap and sequential.
    let filter_start = Instant::now();
    let mut rows: Vec<GraphRecord> = Vec::new();
    let mut survivors: Vec<(usize, WeightedGraph)> = Vec::new();
    let mut index = 0usize;
    for path in &config.g6_paths {
        let data = std::fs::read(path)
            .map_err(|e| PipelineError::io(path.display().to_string(), e))?;
        for parsed in parse_graph6_stream(&data) {
            let graph = parsed.map_err(|source| PipelineError::Stream { index, source })?;
            if graph.n() != config.s {
                return Err(PipelineError::Config(format!(
                    "record {index} has {} vertices, expected {}",
                    graph.n(),
                    config.s
                )));
            }
            if let Some(prev) = resumed.get(&index) {
                if prev.verdict == Verdict::Pass && prev.c.is_none() {
                    // Logged as a survivor but not yet certified: redo.
                    survivors.push((index, graph));
                } else {
                    rows.push(prev.clone());
                }
                index += 1;
                continue;
            }
            let graph6 = encode_graph6(&graph)?;
            let verdict = match lemma7_filter(&graph)? {
                FilterOutcome::Pass => {
                    if config.stable_set_on() && !stable_set_property_ok(&graph, 2) {
                        Verdict::StableSetDiscard
                    } else if config.tau_on()
                        && vertex_cover_number(&graph)? <= config.s / 2
                    {
                        Verdict::TauDiscard
                    } else {
                        Verdict::Pass
                    }
                }
                FilterOutcome::Fail(reason) => match reason {
                    FilterReason::TooFewEdges => Verdict::TooFewEdges,
                    FilterReason::DegreeOutOfRange => Verdict::DegreeOutOfRange,
                    FilterReason::Bipartite => Verdict::Bipartite,
                    FilterReason::HasTriangle => Verdict::HasTriangle,
                    FilterReason::NotBiconnected => Verdict::NotBiconnected,
                    FilterReason::StableSetTooSmallNeighborhood => Verdict::StableSetDiscard,
                },
            };
            if verdict == Verdict::Pass {
                survivors.push((index, graph));
            } else {
                rows.push(GraphRecord {
                    index,
                    graph6,
                    verdict,
                    lambda_source: "none",
                    c: None,
                });
            }
            index += 1;
        }
    }
    let filter_secs = filter_start.elapsed().as_secs_f64();

    // Stage 2: certify survivors. The chunk size is fixed so the skip
    // pattern of the incremental bound does not depend on the worker
    // count, only on the stream order.
    let certify_start = Instant::now();
    let chunk_results: Vec<(Vec<GraphRecord>, usize)> = {
        const CHUNK: usize = 64;
        let work =
            |chunk: &[(usize, WeightedGraph)]| -> Result<(Vec<GraphRecord>, usize), PipelineError> {
                certify_chunk(chunk, config, target)
            };
        let run = || -> Result<Vec<(Vec<GraphRecord>, usize)>, PipelineError> {
            survivors
                .par_chunks(CHUNK)
                .map(work)
                .collect::<Result<Vec<_>, _>>()
        };
        if config.workers > 0 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(config.workers)
                .build()
                .map_err(|e| PipelineError::Config(e.to_string()))?;
            pool.install(run)?
        } else {
            run()?
        }
    };
    let mut spot_checks_done = 0usize;
    for (chunk, spots) in chunk_results {
        rows.extend(chunk);
        spot_checks_done += spots;
    }
    let certify_secs = certify_start.elapsed().as_secs_f64();

    // Merge keyed by index for a deterministic report.
    rows.sort_by_key(|r| r.index);

    let mut counts = StageCounts {
        total: rows.len(),
        ..Default::default()
    };
    let mut max_c = f64::NEG_INFINITY;
    let mut argmax = String::new();
    let mut certified = true;
    let mut exact_solves = 0usize;
    let mut skipped = 0usize;
    for rec in &rows {
        match rec.verdict {
            Verdict::Pass => counts.survivors += 1,
            Verdict::TooFewEdges => counts.too_few_edges += 1,
            Verdict::DegreeOutOfRange => counts.degree_out_of_range += 1,
            Verdict::Bipartite => counts.bipartite += 1,
            Verdict::HasTriangle => counts.has_triangle += 1,
            Verdict::NotBiconnected => counts.not_biconnected += 1,
            Verdict::StableSetDiscard => counts.stable_set_discarded += 1,
            Verdict::TauDiscard => counts.tau_discarded += 1,
        }
        if rec.verdict == Verdict::Pass {
            match rec.lambda_source {
                "exact" => {
                    exact_solves += 1;
                    let c = rec.c.expect("exact rows carry c");
                    if c > max_c {
                        max_c = c;
                        argmax = rec.graph6.clone();
                    }
                    if c > target + config.tol {
                        certified = false;
                    }
                }
                "bound" => {
                    skipped += 1;
                    if rec.c.expect("bound rows carry the bound") > target + config.tol {
                        certified = false;
                    }
                }
                _ => certified = false,
            }
        }
    }

    let report = PipelineReport {
        s: config.s,
        target,
        counts,
        max_c,
        argmax_graph6: argmax,
        certified,
        exact_solves,
        skipped_by_bound: skipped,
        spot_checks: spot_checks_done,
        resumed_rows,
        filter_secs,
        certify_secs,
    };

    if let Some(dir) = &config.out_dir {
        std::fs::create_dir_all(dir).map_err(|e| PipelineError::io(dir.display().to_string(), e))?;
        let csv_path = csv_path.expect("out dir implies csv path");
        let mut file = std::io::BufWriter::new(
            std::fs::File::create(&csv_path)
                .map_err(|e| PipelineError::io(csv_path.display().to_string(), e))?,
        );
        writeln!(file, "index,graph6,verdict,lambda_source,c")
            .map_err(|e| PipelineError::io(csv_path.display().to_string(), e))?;
        for rec in &rows {
            writeln!(
                file,
                "{},{},{},{},{}",
                rec.index,
                rec.graph6,
                rec.verdict.as_str(),
                rec.lambda_source,
                rec.c.map_or(String::new(), |c| format!("{c:.12}"))
            )
            .map_err(|e| PipelineError::io(csv_path.display().to_string(), e))?;
        }
        let json_path = dir.join(format!("s{}.json", config.s));
        std::fs::write(&json_path, serde_json::to_string_pretty(&report)?)
            .map_err(|e| PipelineError::io(json_path.display().to_string(), e))?;
    }
    Ok(report)
}

/// Certify one chunk of consecutive survivors, threading the incremental
/// eigenvalue bound through the chunk.
fn certify_chunk(
    chunk: &[(usize, WeightedGraph)],
    config: &PipelineConfig,
    target: f64,
) -> Result<(Vec<GraphRecord>, usize), PipelineError> {
    let mut out = Vec::with_capacity(chunk.len());
    // Previous graph's edge set and eigenvalue upper bound (exact or chained).
    let mut prev: Option<(Vec<(usize, usize)>, f64)> = None;
    let mut skips_seen = 0usize;
    let mut spot_checks = 0usize;
    for (index, graph) in chunk {
        let graph6 = encode_graph6(graph)?;
        let edges: Vec<(usize, usize)> = graph.edges().iter().map(|&(i, j, _)| (i, j)).collect();
        let m = graph.num_edges() as f64;

        if config.method == CertifyMethod::SdpLevel2 {
            let c = c_value(graph, 2, config.tol)?;
            out.push(GraphRecord {
                index: *index,
                graph6,
                verdict: Verdict::Pass,
                lambda_source: "exact",
                c: Some(c),
            });
            continue;
        }

        let mut bound_ok = None;
        if config.use_skip_bound {
            if let Some((prev_edges, prev_lambda)) = &prev {
                let added: Vec<(usize, usize, f64)> = edges
                    .iter()
                    .filter(|e| !prev_edges.contains(e))
                    .map(|&(i, j)| (i, j, 1.0))
                    .collect();
                let bound = lambda_max_upper_from_delta(*prev_lambda, &added);
                if bound / 2.0 - m <= target + config.tol {
                    bound_ok = Some(bound);
                }
            }
        }
        if let Some(bound) = bound_ok {
            skips_seen += 1;
            if config.spot_check_every > 0 && skips_seen % config.spot_check_every == 0 {
                spot_checks += 1;
                let exact = lambda_max(graph)?;
                if bound < exact - 1e-9 {
                    return Err(PipelineError::UnsoundBound {
                        index: *index,
                        bound,
                        exact,
                    });
                }
            }
            out.push(GraphRecord {
                index: *index,
                graph6,
                verdict: Verdict::Pass,
                lambda_source: "bound",
                c: Some(bound / 2.0 - m),
            });
            prev = Some((edges, bound));
        } else {
            let lambda = lambda_max(graph)?;
            out.push(GraphRecord {
                index: *index,
                graph6,
                verdict: Verdict::Pass,
                lambda_source: "exact",
                c: Some(lambda / 2.0 - m),
            });
            prev = Some((edges, lambda));
        }
    }
    Ok((out, spot_checks))
}

fn parse_csv_row(line: &str) -> Option<GraphRecord> {
    let mut parts = line.split(',');
    let index = parts.next()?.parse().ok()?;
    let graph6 = parts.next()?.to_string();
    let verdict = Verdict::parse(parts.next()?)?;
    let lambda_source = match parts.next()? {
        "exact" => "exact",
        "bound" => "bound",
        _ => "none",
    };
    let c_text = parts.next()?;
    let c = if c_text.is_empty() {
        None
    } else {
        Some(c_text.parse().ok()?)
    };
    Some(GraphRecord {
        index,
        graph6,
        verdict,
        lambda_source,
        c,
    })
}
