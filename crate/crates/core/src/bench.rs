//! Benchmark harness: run the repair loop over a corpus for every
//! (provider, strategy) pair and aggregate per-cell score ranges, failure
//! counts, explanation frequencies, and equivalence pass rates.
//!
//! With mock providers the whole run is deterministic, so report renderings
//! are byte-identical across runs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::llm::{provider_with_offset, repair_loop, DriverError, ProviderConfig, Strategy};
use crate::qiskit::parse_qiskit;
use crate::quality::explain;

/// One benchmarked endpoint: a display label plus its connection settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProviderEntry {
    pub label: String,
    #[serde(flatten)]
    pub config: ProviderConfig,
}

fn default_strategies() -> Vec<Strategy> {
    vec![Strategy::ZeroShot, Strategy::OneShot]
}
fn default_trials() -> usize {
    5
}
fn default_max_rounds() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    /// Qiskit-dialect source files; all must parse before anything runs.
    pub corpus: Vec<PathBuf>,
    pub providers: Vec<ProviderEntry>,
    #[serde(default = "default_strategies")]
    pub strategies: Vec<Strategy>,
    #[serde(default = "default_trials")]
    pub trials_per_cell: usize,
    /// Starting offset into each mock provider's scripted responses.
    #[serde(default)]
    pub seed: i64,
    /// Repair rounds per trial. One round makes each trial a single
    /// generation, which is what score ranges across trials are about.
    #[serde(default = "default_max_rounds")]
    pub max_rounds: usize,
}

impl BenchConfig {
    /// Load from a JSON file, resolving relative corpus paths and relative
    /// `mock:` directories against the config file's directory.
    pub fn load(path: &Path) -> Result<BenchConfig, BenchError> {
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::Config {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        let mut config: BenchConfig =
            serde_json::from_str(&text).map_err(|e| BenchError::Config {
                path: path.to_path_buf(),
                message: e.to_string(),
            })?;
        let base = path.parent().unwrap_or(Path::new("."));
        for entry in &mut config.corpus {
            if entry.is_relative() {
                let joined = base.join(&*entry);
                *entry = joined;
            }
        }
        for provider in &mut config.providers {
            if let Some(dir) = provider.config.base_url.strip_prefix("mock:") {
                let dir = Path::new(dir);
                if dir.is_relative() {
                    provider.config.base_url = format!("mock:{}", base.join(dir).display());
                }
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.corpus.is_empty() {
            return Err(BenchError::Invalid("corpus must not be empty".to_string()));
        }
        if self.providers.is_empty() {
            return Err(BenchError::Invalid(
                "at least one provider is required".to_string(),
            ));
        }
        if self.trials_per_cell == 0 {
            return Err(BenchError::Invalid(
                "trials_per_cell must be at least 1".to_string(),
            ));
        }
        if self.strategies.is_empty() {
            return Err(BenchError::Invalid(
                "at least one strategy is required".to_string(),
            ));
        }
        Ok(())
    }
}

/// Aggregated results for one (provider, strategy) cell across the whole
/// corpus. Score bounds are absent when every trial failed to produce code.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchCell {
    pub provider_label: String,
    pub strategy: Strategy,
    pub score_min: Option<f64>,
    pub score_max: Option<f64>,
    pub trials: usize,
    pub failures: usize,
    pub top_explanations: Vec<String>,
    pub equivalence_pass_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub cells: Vec<BenchCell>,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("cannot load config {path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error("invalid benchmark config: {0}")]
    Invalid(String),
    #[error("corpus file {path} does not parse: {message}")]
    CorpusParse { path: PathBuf, message: String },
    #[error("cannot read corpus file {path}: {message}")]
    CorpusRead { path: PathBuf, message: String },
}

const FAILURE_EXPLANATION: &str = "no extractable code";

enum TrialOutcome {
    Scored {
        score: f64,
        equivalent: bool,
        explanation: String,
    },
    Failed(String),
}

/// Run every cell of the benchmark. Corpus files are parsed up front;
/// per-trial provider errors are recorded in the affected cell and never
/// abort the run.
pub fn run_benchmark(config: &BenchConfig) -> Result<BenchReport, BenchError> {
    config.validate()?;
    let mut corpus_sources = Vec::new();
    for path in &config.corpus {
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::CorpusRead {
            path: path.clone(),
            message: e.to_string(),
        })?;
        let parsed = parse_qiskit(&text);
        if parsed.ir.is_none() {
            let message = parsed
                .diagnostics
                .errors
                .iter()
                .map(|d| format!("line {}: {}", d.line, d.message))
                .collect::<Vec<_>>()
                .join("; ");
            return Err(BenchError::CorpusParse {
                path: path.clone(),
                message: if message.is_empty() {
                    "no circuit found".to_string()
                } else {
                    message
                },
            });
        }
        corpus_sources.push(text);
    }

    let mut cells = Vec::new();
    for entry in &config.providers {
        let provider =
            provider_with_offset(&entry.config, config.seed.rem_euclid(1 << 16) as usize)
                .map_err(|e| e.to_string());
        for &strategy in &config.strategies {
            let mut outcomes = Vec::new();
            for source in &corpus_sources {
                for _ in 0..config.trials_per_cell {
                    outcomes.push(run_trial(
                        provider.as_deref(),
                        source,
                        strategy,
                        config.max_rounds,
                    ));
                }
            }
            cells.push(aggregate_cell(entry.label.clone(), strategy, outcomes));
        }
    }
    cells.sort_by(|a, b| {
        a.provider_label
            .cmp(&b.provider_label)
            .then(a.strategy.cmp(&b.strategy))
    });
    Ok(BenchReport { cells })
}

fn run_trial(
    provider: Result<&dyn crate::llm::ChatProvider, &String>,
    source: &str,
    strategy: Strategy,
    max_rounds: usize,
) -> TrialOutcome {
    let provider = match provider {
        Ok(p) => p,
        Err(message) => return TrialOutcome::Failed(format!("provider error: {message}")),
    };
    match repair_loop(provider, source, strategy, None, max_rounds) {
        Ok(log) => {
            let best = log.best_attempt();
            match &best.quality {
                Some(quality) => TrialOutcome::Scored {
                    score: quality.score,
                    equivalent: best.equivalence.as_ref().is_some_and(|v| v.equivalent),
                    explanation: explain(quality),
                },
                None => TrialOutcome::Failed(FAILURE_EXPLANATION.to_string()),
            }
        }
        Err(DriverError::EmptyResponse) => TrialOutcome::Failed(FAILURE_EXPLANATION.to_string()),
        Err(e) => TrialOutcome::Failed(format!("provider error: {e}")),
    }
}

fn aggregate_cell(
    provider_label: String,
    strategy: Strategy,
    outcomes: Vec<TrialOutcome>,
) -> BenchCell {
    let trials = outcomes.len();
    let mut score_min: Option<f64> = None;
    let mut score_max: Option<f64> = None;
    let mut failures = 0;
    let mut passed = 0;
    let mut explanation_counts: Vec<(String, usize)> = Vec::new();
    let mut note = |text: String| {
        if text.is_empty() {
            return;
        }
        match explanation_counts.iter_mut().find(|(t, _)| *t == text) {
            Some((_, n)) => *n += 1,
            None => explanation_counts.push((text, 1)),
        }
    };
    for outcome in outcomes {
        match outcome {
            TrialOutcome::Scored {
                score,
                equivalent,
                explanation,
            } => {
                score_min = Some(score_min.map_or(score, |m: f64| m.min(score)));
                score_max = Some(score_max.map_or(score, |m: f64| m.max(score)));
                if equivalent {
                    passed += 1;
                }
                note(explanation);
            }
            TrialOutcome::Failed(reason) => {
                failures += 1;
                note(reason);
            }
        }
    }
    explanation_counts.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    BenchCell {
        provider_label,
        strategy,
        score_min,
        score_max,
        trials,
        failures,
        top_explanations: explanation_counts.into_iter().map(|(t, _)| t).collect(),
        equivalence_pass_rate: if trials == 0 {
            0.0
        } else {
            passed as f64 / trials as f64
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Csv,
    Json,
}

impl BenchCell {
    /// "min–max", a single value when the bounds agree, or "Failed" when no
    /// trial produced code.
    pub fn quality_value(&self) -> String {
        match (self.score_min, self.score_max) {
            (Some(lo), Some(hi)) if lo == hi => format!("{lo}"),
            (Some(lo), Some(hi)) => format!("{lo}\u{2013}{hi}"),
            _ => "Failed".to_string(),
        }
    }

    fn explanation_text(&self) -> &str {
        match self.top_explanations.first() {
            Some(text) => text,
            None => "--",
        }
    }
}

/// Render the report. The table mirrors the familiar four-column layout;
/// csv and json carry every cell field.
pub fn render_report(report: &BenchReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Table => render_table(report),
        ReportFormat::Csv => render_csv(report),
        ReportFormat::Json => {
            let mut text = serde_json::to_string_pretty(report).expect("report serializes");
            text.push('\n');
            text
        }
    }
}

fn render_table(report: &BenchReport) -> String {
    let header = [
        "LLM",
        "# Shots",
        "Code Quality Value",
        "Low-Performance Explanation",
    ];
    let rows: Vec<[String; 4]> = report
        .cells
        .iter()
        .map(|cell| {
            [
                cell.provider_label.clone(),
                cell.strategy.to_string(),
                cell.quality_value(),
                cell.explanation_text().to_string(),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.chars().count());
        }
    }

    let mut out = String::new();
    let emit_row = |cells: &[String; 4], out: &mut String| {
        for (i, (cell, width)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                out.push_str(" | ");
            }
            if i + 1 == cells.len() {
                out.push_str(cell); // last column unpadded
            } else {
                let _ = write!(out, "{cell:<width$}", width = *width);
            }
        }
        out.push('\n');
    };
    let header_row: [String; 4] = header.map(String::from);
    emit_row(&header_row, &mut out);
    let mut rule = String::new();
    for (i, width) in widths.iter().enumerate() {
        if i > 0 {
            rule.push_str("-+-");
        }
        rule.push_str(&"-".repeat(*width));
    }
    out.push_str(&rule);
    out.push('\n');
    for row in &rows {
        emit_row(row, &mut out);
    }
    out
}

fn render_csv(report: &BenchReport) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "provider_label",
            "strategy",
            "score_min",
            "score_max",
            "trials",
            "failures",
            "equivalence_pass_rate",
            "top_explanations",
        ])
        .expect("csv header");
    for cell in &report.cells {
        writer
            .write_record([
                cell.provider_label.clone(),
                cell.strategy.to_string(),
                cell.score_min.map(|v| v.to_string()).unwrap_or_default(),
                cell.score_max.map(|v| v.to_string()).unwrap_or_default(),
                cell.trials.to_string(),
                cell.failures.to_string(),
                cell.equivalence_pass_rate.to_string(),
                cell.top_explanations.join("; "),
            ])
            .expect("csv record");
    }
    String::from_utf8(writer.into_inner().expect("csv flush")).expect("csv is utf-8")
}
