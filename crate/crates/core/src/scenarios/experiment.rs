use std::collections::BTreeMap;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{mixture_sample_set, Scenario};
use crate::error::{Error, Result};
use crate::estimators::Estimator;
use crate::metrics::levy_distance;

/// Grid size for the sampled binormal ROC; grid error in the Lévy distance is at
/// most half a step (`2.5e-4`).
pub const TRUE_ROC_GRID: usize = 2001;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub scenario: String,
    pub n0: usize,
    pub n1: usize,
    pub replications: usize,
    pub seed: u64,
    pub estimators: Vec<Estimator>,
}

impl ExperimentConfig {
    pub fn binormal(n0: usize, n1: usize, replications: usize, seed: u64, estimators: &[Estimator]) -> Self {
        Self {
            scenario: "binormal".into(),
            n0,
            n1,
            replications,
            seed,
            estimators: estimators.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.replications == 0 {
            problems.push("replications: must be at least 1".to_string());
        }
        if self.n0 + self.n1 == 0 {
            problems.push("n0 + n1: must be at least 1".to_string());
        }
        if self.estimators.is_empty() {
            problems.push("estimators: must list at least one of E, CE, ML".to_string());
        }
        for e in &self.estimators {
            if e.needs_both_labels() && (self.n0 == 0 || self.n1 == 0) {
                problems.push(format!(
                    "estimators: {e} needs n0 >= 1 and n1 >= 1 (got n0 = {}, n1 = {})",
                    self.n0, self.n1
                ));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(problems))
        }
    }

    /// Parses and validates a JSON config object, reporting every missing or
    /// malformed field at once.
    pub fn from_json(value: &Value) -> Result<Self> {
        let Some(obj) = value.as_object() else {
            return Err(Error::Config(vec!["config must be a JSON object".into()]));
        };
        let mut problems = Vec::new();
        const KNOWN: [&str; 6] = ["scenario", "n0", "n1", "replications", "seed", "estimators"];
        for key in obj.keys().filter(|k| !KNOWN.contains(&k.as_str())) {
            problems.push(format!("{key}: unknown field"));
        }
        let mut count = |key: &str| -> Option<u64> {
            match obj.get(key) {
                None => {
                    problems.push(format!("{key}: missing"));
                    None
                }
                Some(v) => v.as_u64().or_else(|| {
                    problems.push(format!("{key}: expected a nonnegative integer, got {v}"));
                    None
                }),
            }
        };
        let n0 = count("n0");
        let n1 = count("n1");
        let replications = count("replications");
        let seed = count("seed");

        let scenario = match obj.get("scenario") {
            None => {
                problems.push("scenario: missing".into());
                None
            }
            Some(Value::String(s)) if s == "binormal" => Some(s.clone()),
            Some(v) => {
                problems.push(format!("scenario: expected \"binormal\", got {v}"));
                None
            }
        };
        let estimators = match obj.get("estimators") {
            None => {
                problems.push("estimators: missing".into());
                None
            }
            Some(Value::Array(items)) => {
                let mut out = Vec::new();
                for item in items {
                    match item.as_str().map(str::parse::<Estimator>) {
                        Some(Ok(e)) if !out.contains(&e) => out.push(e),
                        Some(Ok(_)) => {}
                        _ => problems.push(format!("estimators: invalid entry {item}")),
                    }
                }
                Some(out)
            }
            Some(v) => {
                problems.push(format!("estimators: expected an array, got {v}"));
                None
            }
        };
        match (scenario, n0, n1, replications, seed, estimators) {
            (Some(scenario), Some(n0), Some(n1), Some(replications), Some(seed), Some(estimators))
                if problems.is_empty() =>
            {
                let cfg = Self {
                    scenario,
                    n0: n0 as usize,
                    n1: n1 as usize,
                    replications: replications as usize,
                    seed,
                    estimators,
                };
                cfg.validate()?;
                Ok(cfg)
            }
            _ => Err(Error::Config(problems)),
        }
    }
}

/// The sample-size grid used for the default study: balanced, unbalanced and
/// one-sided regimes. One-sided configs run only the ML estimator.
pub fn default_config_set(seed: u64, replications: usize) -> Vec<ExperimentConfig> {
    [(50, 50), (200, 200), (100, 10), (100, 2), (100, 0)]
        .into_iter()
        .map(|(n0, n1)| {
            let estimators: &[Estimator] = if n0 == 0 || n1 == 0 {
                &[Estimator::MaximumLikelihood]
            } else {
                &Estimator::ALL
            };
            ExperimentConfig::binormal(n0, n1, replications, seed, estimators)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimatorSummary {
    pub mean_levy: f64,
    /// Sample standard deviation over replications divided by `sqrt(N)`.
    pub stderr: f64,
    pub n_reps: usize,
    #[serde(skip)]
    pub distances: Vec<f64>,
}

impl EstimatorSummary {
    fn from_distances(distances: Vec<f64>) -> Self {
        let n = distances.len();
        let mean = distances.iter().sum::<f64>() / n as f64;
        let stderr = if n > 1 {
            let var = distances.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        Self {
            mean_levy: mean,
            stderr,
            n_reps: n,
            distances,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub scenario: String,
    pub n0: usize,
    pub n1: usize,
    pub replications: usize,
    pub seed: u64,
    pub estimators: BTreeMap<Estimator, EstimatorSummary>,
}

impl ExperimentReport {
    pub fn summary(&self, e: Estimator) -> Option<&EstimatorSummary> {
        self.estimators.get(&e)
    }

    /// Per-replication distances as `rep,estimator,levy` rows.
    pub fn write_reps_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "rep,estimator,levy")?;
        for (e, s) in &self.estimators {
            for (rep, d) in s.distances.iter().enumerate() {
                writeln!(out, "{rep},{e},{}", crate::io::format_sig(*d, 17))?;
            }
        }
        Ok(())
    }
}

/// RNG for replication `rep`: ChaCha8 seeded with `seed + rep` (wrapping).
pub fn replication_rng(seed: u64, rep: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(rep as u64))
}

/// Runs a config against its named scenario.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    match config.scenario.as_str() {
        "binormal" => run_experiment_on(&Scenario::Binormal, config),
        other => Err(Error::Config(vec![format!("scenario: unknown id {other:?}")])),
    }
}

/// Runs `config.replications` independent replications in parallel. Each
/// replication has its own RNG stream, so the report does not depend on thread
/// scheduling.
pub fn run_experiment_on(scenario: &Scenario, config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let truth = scenario.true_roc();
    let per_rep: Vec<Vec<f64>> = (0..config.replications)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replication_rng(config.seed, rep);
            let samples = mixture_sample_set(scenario, config.n0, config.n1, &mut rng);
            config
                .estimators
                .iter()
                .map(|e| e.fit_curve(&samples).map(|c| levy_distance(&truth, &c)))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;

    let estimators = config
        .estimators
        .iter()
        .enumerate()
        .map(|(k, &e)| {
            let d = per_rep.iter().map(|row| row[k]).collect();
            (e, EstimatorSummary::from_distances(d))
        })
        .collect();
    Ok(ExperimentReport {
        scenario: scenario.id().into(),
        n0: config.n0,
        n1: config.n1,
        replications: config.replications,
        seed: config.seed,
        estimators,
    })
}
