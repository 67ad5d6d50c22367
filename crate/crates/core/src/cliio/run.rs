use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::suites::{self, Outcome};
use crate::error::{Error, Result};
use crate::gen::GenConfig;
use crate::linalg::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub p: u64,
    pub window: (i32, i32),
    pub max_dim: usize,
    pub suites: Vec<String>,
    /// Replay a single trial index instead of `0..trials`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub only_trial: Option<usize>,
}

impl SuiteConfig {
    pub fn new(suites: &[&str], seed: u64, trials: usize, p: u64) -> Self {
        SuiteConfig {
            seed,
            trials,
            p,
            window: (-3, 3),
            max_dim: 6,
            suites: suites.iter().map(|s| s.to_string()).collect(),
            only_trial: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        FieldSpec::new(self.p)?;
        if self.window.0 > self.window.1 {
            return Err(Error::Parse(format!(
                "empty window {}:{}",
                self.window.0, self.window.1
            )));
        }
        if self.max_dim == 0 {
            return Err(Error::Parse("max-dim must be at least 1".into()));
        }
        for s in &self.suites {
            if !suites::NAMES.contains(&s.as_str()) {
                return Err(Error::Parse(format!(
                    "unknown suite \"{s}\"; known: {}",
                    suites::NAMES.join(", ")
                )));
            }
        }
        Ok(())
    }

    pub fn gen_config(&self) -> GenConfig {
        GenConfig::new(self.p, self.window.0, self.window.1, self.max_dim)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub suite: String,
    pub seed: u64,
    /// `None` for the fixed (engineered) cases of a suite.
    pub trial: Option<usize>,
    pub case: Option<String>,
    pub reason: String,
    pub counterexample: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub fixed_passed: usize,
    pub fixed_failed: usize,
    pub failures: Vec<FailureRecord>,
    pub millis: u128,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.fixed_failed == 0
    }
}

// wall time is not part of the result
impl PartialEq for SuiteReport {
    fn eq(&self, o: &Self) -> bool {
        (
            &self.name,
            self.trials,
            self.passed,
            self.failed,
            self.fixed_passed,
            self.fixed_failed,
            &self.failures,
        ) == (
            &o.name,
            o.trials,
            o.passed,
            o.failed,
            o.fixed_passed,
            o.fixed_failed,
            &o.failures,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: SuiteConfig,
    pub suites: Vec<SuiteReport>,
}

impl RunReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteReport::ok)
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// The generator for one trial: keyed by the seed and suite, one stream per
/// trial, so results do not depend on scheduling.
pub fn trial_rng(seed: u64, suite: &str, trial: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&fnv1a(suite).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(trial as u64);
    rng
}

fn run_suite(cfg: &SuiteConfig, name: &str) -> SuiteReport {
    let start = Instant::now();
    let gen = cfg.gen_config();
    let indices: Vec<usize> = match cfg.only_trial {
        Some(k) => vec![k],
        None => (0..cfg.trials).collect(),
    };
    let outcomes: Vec<(usize, Outcome)> = indices
        .par_iter()
        .map(|&t| (t, suites::run_trial(name, &gen, &mut trial_rng(cfg.seed, name, t))))
        .collect();
    let mut report = SuiteReport {
        name: name.to_string(),
        trials: indices.len(),
        passed: 0,
        failed: 0,
        fixed_passed: 0,
        fixed_failed: 0,
        failures: Vec::new(),
        millis: 0,
    };
    for (t, o) in outcomes {
        match o {
            Ok(()) => report.passed += 1,
            Err(f) => {
                report.failed += 1;
                report.failures.push(FailureRecord {
                    suite: name.to_string(),
                    seed: cfg.seed,
                    trial: Some(t),
                    case: None,
                    reason: f.reason,
                    counterexample: f.instance,
                });
            }
        }
    }
    // engineered cases run with every non-empty run, but not on replay
    if !indices.is_empty() && cfg.only_trial.is_none() {
        for (case, o) in suites::run_fixed(name, &gen) {
            match o {
                Ok(()) => report.fixed_passed += 1,
                Err(f) => {
                    report.fixed_failed += 1;
                    report.failures.push(FailureRecord {
                        suite: name.to_string(),
                        seed: cfg.seed,
                        trial: None,
                        case: Some(case),
                        reason: f.reason,
                        counterexample: f.instance,
                    });
                }
            }
        }
    }
    report.millis = start.elapsed().as_millis();
    report
}

pub fn run_suites(cfg: &SuiteConfig) -> Result<RunReport> {
    cfg.validate()?;
    let suites = cfg.suites.iter().map(|s| run_suite(cfg, s)).collect();
    Ok(RunReport {
        config: cfg.clone(),
        suites,
    })
}

/// Writes one JSON file per failure into `dir` and returns the paths.
pub fn persist_counterexamples(report: &RunReport, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for s in &report.suites {
        for f in &s.failures {
            std::fs::create_dir_all(dir)?;
            let tag = match (&f.trial, &f.case) {
                (Some(t), _) => format!("trial{t}"),
                (None, Some(c)) => format!(
                    "case-{}",
                    c.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>()
                ),
                _ => "unknown".into(),
            };
            let path = dir.join(format!("{}-p{}-seed{}-{tag}.json", f.suite, report.config.p, f.seed));
            let mut text = serde_json::to_string_pretty(f).expect("failure records serialize");
            text.push('\n');
            std::fs::write(&path, text)?;
            out.push(path);
        }
    }
    Ok(out)
}
