//! `qbridge`: transpile circuits between the Qiskit and Cirq dialects,
//! verify functional equivalence, score Cirq code quality, drive an LLM
//! transpiler with a repair loop, and run benchmark sweeps.
//!
//! Exit codes: 0 success, 1 verification/score failure, 2 usage error,
//! 3 provider error.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qbridge_core::bench::{render_report, run_benchmark, BenchConfig, BenchError, ReportFormat};
use qbridge_core::llm::{
    provider_from_config, repair_loop, DriverError, ProviderConfig, RepairLog, Strategy,
};
use qbridge_core::quality::{explain, score};
use qbridge_core::sim::{equivalent, outcome_distribution, ComparisonMode};
use qbridge_core::{emit_cirq, emit_qiskit, parse_cirq, parse_qiskit, CircuitIr, Diagnostics};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PROVIDER: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qbridge",
    version,
    about = "Transpile quantum circuits between the Qiskit and Cirq dialects"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Dialect {
    Qiskit,
    Cirq,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Zero,
    One,
}

impl From<StrategyArg> for Strategy {
    fn from(value: StrategyArg) -> Self {
        match value {
            StrategyArg::Zero => Strategy::ZeroShot,
            StrategyArg::One => Strategy::OneShot,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

impl From<FormatArg> for ReportFormat {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Table => ReportFormat::Table,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Rule-based transpilation to standard output
    Transpile {
        #[arg(long = "from", value_name = "DIALECT", value_enum)]
        source_dialect: Dialect,
        #[arg(long = "to", value_name = "DIALECT", value_enum)]
        target_dialect: Dialect,
        /// Append simulator statements to Cirq output
        #[arg(long)]
        simulate: bool,
        /// Repetition count for the emitted run call
        #[arg(long, default_value_t = 1000)]
        repetitions: u64,
        /// Source file, or `-` for standard input
        file: PathBuf,
    },
    /// Check two circuit files for functional equivalence (exit 0/1)
    Verify {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Score a Cirq file with the code quality metric
    Score {
        file: PathBuf,
        /// Emit the breakdown as JSON
        #[arg(long)]
        json: bool,
    },
    /// Transpile via an LLM endpoint with the diagnose-and-retry loop
    LlmTranspile {
        /// Provider config (JSON)
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 3)]
        max_rounds: usize,
        /// Extra mapping notes to include in the prompt
        #[arg(long)]
        mapping_notes: Option<String>,
        /// Qiskit source file, or `-` for standard input
        file: PathBuf,
    },
    /// Run a benchmark sweep and write the report
    Bench {
        /// Benchmark config (JSON)
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        format: FormatArg,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| fail(EXIT_FAILURE, format!("cannot read standard input: {e}")))?;
        return Ok(text);
    }
    std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_FAILURE, format!("cannot read {}: {e}", path.display())))
}

fn print_diagnostics(label: &str, diagnostics: &Diagnostics) {
    for d in &diagnostics.errors {
        eprintln!("{label}: error: line {}: {}: {}", d.line, d.code, d.message);
    }
    for d in &diagnostics.warnings {
        eprintln!(
            "{label}: warning: line {}: {}: {}",
            d.line, d.code, d.message
        );
    }
}

fn parse_dialect(label: &str, dialect: Dialect, text: &str) -> Result<CircuitIr, Failure> {
    let (ir, diagnostics) = match dialect {
        Dialect::Qiskit => {
            let parsed = parse_qiskit(text);
            (parsed.ir, parsed.diagnostics)
        }
        Dialect::Cirq => {
            let parsed = parse_cirq(text);
            (parsed.ir, parsed.diagnostics)
        }
    };
    match ir {
        Some(ir) => {
            print_diagnostics(
                label,
                &Diagnostics {
                    errors: Vec::new(),
                    warnings: diagnostics.warnings,
                },
            );
            Ok(ir)
        }
        None => {
            print_diagnostics(label, &diagnostics);
            Err(fail(
                EXIT_FAILURE,
                format!("{label} does not parse as a circuit"),
            ))
        }
    }
}

/// Parse a file in whichever dialect it matches, trying the likelier one
/// first.
fn parse_sniffed(label: &str, text: &str) -> Result<CircuitIr, Failure> {
    let order = if text.contains("cirq") {
        [Dialect::Cirq, Dialect::Qiskit]
    } else {
        [Dialect::Qiskit, Dialect::Cirq]
    };
    let first_try = match order[0] {
        Dialect::Cirq => parse_cirq(text).ir,
        Dialect::Qiskit => parse_qiskit(text).ir,
    };
    if let Some(ir) = first_try {
        return Ok(ir);
    }
    let second_try = match order[1] {
        Dialect::Cirq => parse_cirq(text).ir,
        Dialect::Qiskit => parse_qiskit(text).ir,
    };
    if let Some(ir) = second_try {
        return Ok(ir);
    }
    // Report diagnostics for the dialect the file resembles most.
    parse_dialect(label, order[0], text)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Transpile {
            source_dialect,
            target_dialect,
            simulate,
            repetitions,
            file,
        } => {
            if source_dialect == target_dialect {
                return Err(fail(EXIT_USAGE, "--from and --to must differ"));
            }
            if simulate && target_dialect != Dialect::Cirq {
                return Err(fail(EXIT_USAGE, "--simulate only applies to Cirq output"));
            }
            let text = read_input(&file)?;
            let ir = parse_dialect("input", source_dialect, &text)?;
            let output = match target_dialect {
                Dialect::Cirq => emit_cirq(&ir, simulate, repetitions),
                Dialect::Qiskit => emit_qiskit(&ir),
            }
            .map_err(|e| fail(EXIT_FAILURE, e.to_string()))?;
            print!("{output}");
            Ok(0)
        }
        Command::Verify {
            file_a,
            file_b,
            tol,
        } => {
            if tol <= 0.0 {
                return Err(fail(EXIT_USAGE, "--tol must be positive"));
            }
            let text_a = read_input(&file_a)?;
            let text_b = read_input(&file_b)?;
            let ir_a = parse_sniffed(&file_a.display().to_string(), &text_a)?;
            let ir_b = parse_sniffed(&file_b.display().to_string(), &text_b)?;
            let verdict =
                equivalent(&ir_a, &ir_b, tol).map_err(|e| fail(EXIT_FAILURE, e.to_string()))?;
            println!("mode: {}", verdict.mode);
            println!("max deviation: {}", verdict.max_deviation);
            println!("equivalent: {}", verdict.equivalent);
            match verdict.mode {
                ComparisonMode::Unitary => {
                    if let Some(phase) = verdict.global_phase {
                        println!("global phase: {phase} rad");
                    }
                }
                ComparisonMode::Distribution => {
                    for (name, ir) in [("a", &ir_a), ("b", &ir_b)] {
                        if let Ok(dist) = outcome_distribution(ir) {
                            let entries: Vec<String> = dist
                                .iter()
                                .map(|(k, v)| format!("\"{k}\": {}", format_probability(*v)))
                                .collect();
                            println!("distribution {name}: {{{}}}", entries.join(", "));
                        }
                    }
                }
            }
            Ok(if verdict.equivalent { 0 } else { EXIT_FAILURE })
        }
        Command::Score { file, json } => {
            let text = read_input(&file)?;
            let quality = score(&text);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&quality)
                        .map_err(|e| fail(EXIT_FAILURE, e.to_string()))?
                );
            } else {
                let patterns: Vec<&str> = quality
                    .patterns_present
                    .iter()
                    .map(|p| p.display())
                    .collect();
                println!(
                    "patterns present: {} ({}/{})",
                    if patterns.is_empty() {
                        "(none)".to_string()
                    } else {
                        patterns.join(", ")
                    },
                    quality.patterns_present.count(),
                    quality.patterns_expected
                );
                println!("warnings: {}", quality.warning_count);
                println!("errors: {}", quality.error_count);
                println!("base: {}", quality.base);
                println!("penalty: {}", quality.penalty);
                println!("score: {}", quality.score);
                let explanation = explain(&quality);
                println!(
                    "explanation: {}",
                    if explanation.is_empty() {
                        "--"
                    } else {
                        &explanation
                    }
                );
            }
            Ok(if quality.score == 1.0 {
                0
            } else {
                EXIT_FAILURE
            })
        }
        Command::LlmTranspile {
            config,
            strategy,
            max_rounds,
            mapping_notes,
            file,
        } => {
            let config_text = std::fs::read_to_string(&config)
                .map_err(|e| fail(EXIT_USAGE, format!("cannot read {}: {e}", config.display())))?;
            let provider_config: ProviderConfig = serde_json::from_str(&config_text)
                .map_err(|e| fail(EXIT_USAGE, format!("invalid provider config: {e}")))?;
            let provider_config = resolve_mock_dir(provider_config, &config);
            let provider = provider_from_config(&provider_config)
                .map_err(|e| fail(EXIT_PROVIDER, e.to_string()))?;
            let source = read_input(&file)?;
            let log = repair_loop(
                provider.as_ref(),
                &source,
                strategy.into(),
                mapping_notes.as_deref(),
                max_rounds,
            )
            .map_err(|e| match e {
                DriverError::InvalidSource(msg) => fail(EXIT_FAILURE, msg),
                other => fail(EXIT_PROVIDER, other.to_string()),
            })?;
            log_attempts(&log);
            match &log.best_attempt().extracted_code {
                Some(code) => {
                    print!("{code}");
                    if !code.ends_with('\n') {
                        println!();
                    }
                    Ok(if log.best_attempt().passed() {
                        0
                    } else {
                        EXIT_FAILURE
                    })
                }
                None => {
                    eprintln!("no extractable code in any attempt");
                    Ok(EXIT_FAILURE)
                }
            }
        }
        Command::Bench {
            config,
            out,
            format,
        } => {
            let bench_config = BenchConfig::load(&config).map_err(|e| match e {
                BenchError::Config { .. } | BenchError::Invalid(_) => {
                    fail(EXIT_USAGE, e.to_string())
                }
                other => fail(EXIT_FAILURE, other.to_string()),
            })?;
            let report =
                run_benchmark(&bench_config).map_err(|e| fail(EXIT_FAILURE, e.to_string()))?;
            let rendered = render_report(&report, format.into());
            std::fs::write(&out, &rendered)
                .map_err(|e| fail(EXIT_FAILURE, format!("cannot write {}: {e}", out.display())))?;
            eprintln!("report written to {}", out.display());
            Ok(0)
        }
    }
}

/// Probabilities are exact in the library; for display they are rounded at
/// the simulator's 1e-10 tolerance so Bell reads 0.5, not 0.500...01.
fn format_probability(p: f64) -> String {
    let text = format!("{p:.10}");
    let text = text.trim_end_matches('0').trim_end_matches('.');
    if text.is_empty() {
        "0".to_string()
    } else {
        text.to_string()
    }
}

/// Relative `mock:` directories in a provider config are resolved against
/// the config file's directory, matching the benchmark loader.
fn resolve_mock_dir(mut config: ProviderConfig, config_path: &Path) -> ProviderConfig {
    if let Some(dir) = config.base_url.strip_prefix("mock:") {
        let dir = Path::new(dir);
        if dir.is_relative() {
            let base = config_path.parent().unwrap_or(Path::new("."));
            config.base_url = format!("mock:{}", base.join(dir).display());
        }
    }
    config
}

fn log_attempts(log: &RepairLog) {
    for attempt in &log.attempts {
        let score_text = attempt
            .quality
            .as_ref()
            .map_or("no code".to_string(), |q| format!("score {}", q.score));
        let equivalence_text = match &attempt.equivalence {
            Some(v) if v.equivalent => "equivalent".to_string(),
            Some(v) => format!("not equivalent ({} deviation {})", v.mode, v.max_deviation),
            None => "equivalence unchecked".to_string(),
        };
        eprintln!("round {}: {score_text}, {equivalence_text}", attempt.round);
        if let Some(quality) = &attempt.quality {
            let explanation = explain(quality);
            if !explanation.is_empty() {
                eprintln!("  explanation: {explanation}");
            }
        }
    }
    eprintln!("best attempt: round {}", log.best_attempt().round);
}
