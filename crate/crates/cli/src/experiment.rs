//! Running an experiment: generate, run, check against the oracle, fit.

use clique_algos::{k_dominating_set, k_independent_set_direct, k_independent_set_via_ds, k_vertex_cover, AlgoConfig, AlgoOutcome};
use clique_core::{Graph, NodeId};
use clique_oracle::{generate, has_dominating_set, has_independent_set, has_vertex_cover, is_cover, is_dominating, is_independent, GeneratorSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Algorithm, CliError, ExperimentConfig, ExponentFit, Report, REPORT_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    /// The oracle was out of range; only the round ceiling was checked.
    Unverified,
    Mismatch,
    BoundViolation,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub n: usize,
    pub rep: usize,
    /// Generator seed of this row: the config seed plus `rep`.
    pub seed_rep: u64,
    pub rounds: usize,
    pub total_bits: u64,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub found: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ceiling: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// The round ceiling checked for each row, if the algorithm has one:
/// `c k n^(1 - 1/k)` for the partition searches and `k + 2` for vertex cover.
pub fn round_ceiling(algorithm: Algorithm, n: usize, k: usize, c: f64) -> Option<f64> {
    match algorithm {
        Algorithm::Kds | Algorithm::Kis => Some(c * k as f64 * (n as f64).powf(1.0 - 1.0 / k as f64)),
        Algorithm::Kvc => Some((k + 2) as f64),
        Algorithm::KisViaDs => None,
    }
}

pub fn run_algorithm(algorithm: Algorithm, g: &Graph, k: usize, cfg: &AlgoConfig) -> Result<AlgoOutcome, CliError> {
    let f = match algorithm {
        Algorithm::Kds => k_dominating_set,
        Algorithm::Kis => k_independent_set_direct,
        Algorithm::KisViaDs => k_independent_set_via_ds,
        Algorithm::Kvc => k_vertex_cover,
    };
    Ok(f(g, k, cfg)?)
}

/// `Some(true)` if the answer agrees with the oracle and any returned set is
/// a valid witness, `None` when the oracle is out of range.
pub fn check_against_oracle(algorithm: Algorithm, g: &Graph, k: usize, set: Option<&[NodeId]>) -> Option<bool> {
    let oracle = match algorithm {
        Algorithm::Kds => has_dominating_set(g, k),
        Algorithm::Kis | Algorithm::KisViaDs => has_independent_set(g, k),
        Algorithm::Kvc => has_vertex_cover(g, k),
    };
    let expected = oracle.ok()?.is_some();
    let valid = match set {
        None => true,
        Some(s) => match algorithm {
            Algorithm::Kds => s.len() <= k && is_dominating(g, s),
            Algorithm::Kis | Algorithm::KisViaDs => s.len() == k && is_independent(g, s),
            Algorithm::Kvc => s.len() <= k && is_cover(g, s),
        },
    };
    Some(expected == set.is_some() && valid)
}

fn run_row(cfg: &ExperimentConfig, n: usize, rep: usize) -> Result<Row, CliError> {
    let seed_rep = cfg.seed.wrapping_add(rep as u64);
    let g = generate(&GeneratorSpec::new(cfg.generator, n, seed_rep))?;
    let algo_cfg = AlgoConfig { max_rounds: cfg.max_rounds, ..AlgoConfig::default() };
    let ceiling = round_ceiling(cfg.algorithm, n, cfg.k, cfg.round_constant);
    let mut row = Row {
        n,
        rep,
        seed_rep,
        rounds: 0,
        total_bits: 0,
        verdict: Verdict::Error,
        found: None,
        ceiling,
        error: None,
    };
    let outcome = match run_algorithm(cfg.algorithm, &g, cfg.k, &algo_cfg) {
        Ok(o) => o,
        Err(CliError::Config(m)) => return Err(CliError::Config(format!("n = {n}: {m}"))),
        Err(e) => {
            row.error = Some(e.to_string());
            return Ok(row);
        }
    };
    row.rounds = outcome.report.rounds;
    row.total_bits = outcome.report.total_bits;
    row.found = Some(outcome.set.is_some());
    let members = outcome.set.as_ref().map(|s| s.members.as_slice());
    row.verdict = match check_against_oracle(cfg.algorithm, &g, cfg.k, members) {
        Some(false) => Verdict::Mismatch,
        _ if ceiling.is_some_and(|c| row.rounds as f64 > c) => Verdict::BoundViolation,
        Some(true) => Verdict::Pass,
        None => Verdict::Unverified,
    };
    Ok(row)
}

/// Runs every `(n, repetition)` pair. Rows may run in parallel but are
/// reported in `(n, repetition)` order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize)> = cfg
        .schedule
        .iter()
        .flat_map(|&n| (0..cfg.repetitions).map(move |r| (n, r)))
        .collect();
    let mut rows = jobs
        .par_iter()
        .map(|&(n, r)| run_row(cfg, n, r))
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by_key(|r| (r.n, r.rep));
    let mut points: Vec<(usize, f64)> = Vec::new();
    for r in rows.iter().filter(|r| r.verdict != Verdict::Error) {
        match points.last_mut() {
            Some(p) if p.0 == r.n => p.1 = p.1.max(r.rounds as f64),
            _ => points.push((r.n, r.rounds as f64)),
        }
    }
    Ok(Report {
        version: REPORT_VERSION,
        config: cfg.clone(),
        rows,
        fit: ExponentFit::fit(&points),
    })
}
