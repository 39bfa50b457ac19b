//! Chat-completion driver: prompt construction, code extraction, and the
//! diagnose-and-retry repair loop.
//!
//! Any endpoint speaking the common chat-completions JSON shape works; a
//! file-backed mock provider (`base_url` of the form `mock:<dir>`) replays
//! scripted responses so the whole pipeline runs deterministically offline.
//! Generated code is never executed — evaluation is parse and simulate only.

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cirq::parse_cirq;
use crate::codegen::{emit_cirq, emit_qiskit};
use crate::corpus::bell_ir;
use crate::ir::CircuitIr;
use crate::qiskit::{annotate, parse_qiskit};
use crate::quality::{explain, score, QualityScore};
use crate::sim::{equivalent, EquivalenceVerdict, DEFAULT_TOLERANCE};

/// Fixed system message for every request.
pub const SYSTEM_PROMPT: &str = "You are a transpiler between quantum SDKs; output only code.";

/// Task line opening every user message.
pub const TASK_LINE: &str = "Convert the following Qiskit code into its equivalent in Cirq.";

/// Mapping notes included by default in one-shot prompts.
pub const DEFAULT_MAPPING_NOTES: &str = "\
Mapping instructions:
- Qubit initialization: declare `q = cirq.LineQubit.range(n)` and reference qubits as `q[i]`.
- Gate translations: qc.h(i) -> cirq.H(q[i]); x/y/z/s/t likewise; qc.sdg(i) -> cirq.S(q[i])**-1;
  qc.tdg(i) -> cirq.T(q[i])**-1; qc.cx(a, b) -> cirq.CNOT(q[a], q[b]); qc.cz -> cirq.CZ;
  qc.swap -> cirq.SWAP; qc.ccx -> cirq.CCX; qc.rx(t, i) -> cirq.rx(t)(q[i]) (ry, rz likewise).
- Measurements: qc.measure(i, j) -> cirq.measure(q[i], key=\"cj\").
- Build the circuit with `circuit = cirq.Circuit()` and `circuit.append(...)`, keeping gate order.
- Finish with `simulator = cirq.Simulator()` and `simulator.run(circuit, repetitions=1000)`.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    #[serde(alias = "zero")]
    ZeroShot,
    #[serde(alias = "one")]
    OneShot,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::ZeroShot => f.write_str("Zero-Shot"),
            Strategy::OneShot => f.write_str("One-Shot"),
        }
    }
}

/// A fully built prompt. The exemplar pair is present exactly for one-shot
/// prompts.
#[derive(Debug, Clone, PartialEq)]
pub struct PromptBundle {
    pub strategy: Strategy,
    pub system_text: String,
    pub user_text: String,
    pub exemplar: Option<(String, String)>,
}

fn default_temperature() -> f64 {
    0.2
}
fn default_max_tokens() -> u32 {
    1024
}
fn default_timeout() -> u64 {
    30
}
fn default_max_retries() -> u32 {
    2
}

/// Connection settings for one model endpoint. The API key itself lives
/// only in the environment variable named by `api_key_env` and is never
/// stored or logged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProviderConfig {
    /// `https://host[/v1]` for live endpoints, or `mock:<directory>` for a
    /// directory of numbered response files.
    pub base_url: String,
    #[serde(default)]
    pub model_name: String,
    #[serde(default = "default_temperature")]
    pub temperature: f64,
    #[serde(default = "default_max_tokens")]
    pub max_tokens: u32,
    /// Request timeout in seconds.
    #[serde(default = "default_timeout")]
    pub timeout: u64,
    #[serde(default = "default_max_retries")]
    pub max_retries: u32,
    #[serde(default)]
    pub api_key_env: String,
}

/// One round of the loop: the raw model output and everything measured
/// about it. `quality` is present exactly when code could be extracted;
/// `equivalence` additionally requires the code to parse into a circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct TranspileAttempt {
    pub round: usize,
    pub raw_response: String,
    pub extracted_code: Option<String>,
    pub quality: Option<QualityScore>,
    pub equivalence: Option<EquivalenceVerdict>,
}

impl TranspileAttempt {
    /// Score for ranking attempts; absent code ranks below everything.
    fn rank(&self) -> (f64, bool) {
        (
            self.quality.as_ref().map_or(-1.0, |q| q.score),
            self.equivalence.as_ref().is_some_and(|v| v.equivalent),
        )
    }

    pub fn passed(&self) -> bool {
        let (score, equivalent) = self.rank();
        score == 1.0 && equivalent
    }
}

/// All attempts of one repair loop, in round order.
#[derive(Debug, Clone, PartialEq)]
pub struct RepairLog {
    pub attempts: Vec<TranspileAttempt>,
    /// Index of the best attempt: highest score, equivalence as tie-break,
    /// earliest round after that.
    pub best: usize,
}

impl RepairLog {
    pub fn best_attempt(&self) -> &TranspileAttempt {
        &self.attempts[self.best]
    }
}

#[derive(Debug, Error)]
pub enum DriverError {
    #[error("provider unreachable: {0}")]
    ProviderUnreachable(String),
    #[error("provider rejected the request (HTTP {status}): {body}")]
    ProviderRejected { status: u16, body: String },
    #[error("provider returned an empty response")]
    EmptyResponse,
    #[error("source does not parse in the qiskit dialect: {0}")]
    InvalidSource(String),
}

/// Build the zero- or one-shot prompt for a Qiskit source file. The source
/// must parse cleanly; the annotated form is what the model sees.
pub fn build_prompt(
    source: &str,
    strategy: Strategy,
    mapping_notes: Option<&str>,
) -> Result<PromptBundle, DriverError> {
    let ir = parse_source(source)?;
    let annotated = annotate(source, &ir);

    let exemplar = match strategy {
        Strategy::ZeroShot => None,
        Strategy::OneShot => {
            let bell = bell_ir();
            Some((
                emit_qiskit(&bell).expect("bell emits"),
                emit_cirq(&bell, true, 1000).expect("bell emits"),
            ))
        }
    };

    let mut user_text = String::from(TASK_LINE);
    user_text.push('\n');
    if let Some((ex_qiskit, ex_cirq)) = &exemplar {
        user_text.push_str("\nExample Qiskit input:\n\n");
        user_text.push_str(ex_qiskit);
        user_text.push_str("\nExample Cirq output:\n\n");
        user_text.push_str(ex_cirq);
    }
    let notes = match (mapping_notes, strategy) {
        (Some(custom), _) => Some(custom),
        (None, Strategy::OneShot) => Some(DEFAULT_MAPPING_NOTES),
        (None, Strategy::ZeroShot) => None,
    };
    if let Some(notes) = notes {
        user_text.push('\n');
        user_text.push_str(notes.trim_end());
        user_text.push('\n');
    }
    user_text.push_str("\nQiskit code to convert:\n\n");
    user_text.push_str(&annotated);
    if !user_text.ends_with('\n') {
        user_text.push('\n');
    }

    Ok(PromptBundle {
        strategy,
        system_text: SYSTEM_PROMPT.to_string(),
        user_text,
        exemplar,
    })
}

fn parse_source(source: &str) -> Result<CircuitIr, DriverError> {
    let parsed = parse_qiskit(source);
    match parsed.ir {
        Some(ir) => Ok(ir),
        None => {
            let details = parsed
                .diagnostics
                .errors
                .iter()
                .map(|d| format!("line {}: {}", d.line, d.message))
                .collect::<Vec<_>>()
                .join("; ");
            Err(DriverError::InvalidSource(if details.is_empty() {
                "no circuit found".to_string()
            } else {
                details
            }))
        }
    }
}

/// Pull candidate code out of a raw model response: the first fenced code
/// block if any, else the whole response when it contains at least one
/// recognizable Cirq-dialect statement, else nothing.
pub fn extract_code(raw_response: &str) -> Option<String> {
    let mut in_fence = false;
    let mut block = String::new();
    for line in raw_response.lines() {
        if line.trim_start().starts_with("```") {
            if in_fence {
                return Some(block);
            }
            in_fence = true;
            continue;
        }
        if in_fence {
            block.push_str(line);
            block.push('\n');
        }
    }
    if in_fence {
        // Unterminated fence: take what was opened.
        return Some(block);
    }
    let trimmed = raw_response.trim();
    if trimmed.is_empty() {
        return None;
    }
    (parse_cirq(trimmed).recognized_statements > 0).then(|| trimmed.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct ChatMessage {
    pub role: &'static str,
    pub content: String,
}

impl ChatMessage {
    pub fn system(content: impl Into<String>) -> Self {
        ChatMessage {
            role: "system",
            content: content.into(),
        }
    }

    pub fn user(content: impl Into<String>) -> Self {
        ChatMessage {
            role: "user",
            content: content.into(),
        }
    }

    pub fn assistant(content: impl Into<String>) -> Self {
        ChatMessage {
            role: "assistant",
            content: content.into(),
        }
    }
}

/// A chat-completion backend: one message list in, one response text out.
pub trait ChatProvider: Send + Sync {
    fn complete(&self, messages: &[ChatMessage]) -> Result<String, DriverError>;
}

/// Build a provider from its config. `mock:<dir>` selects the file-backed
/// mock; anything else is treated as an HTTP chat-completions endpoint.
pub fn provider_from_config(config: &ProviderConfig) -> Result<Box<dyn ChatProvider>, DriverError> {
    provider_with_offset(config, 0)
}

/// Same as [`provider_from_config`] with a starting offset into the mock
/// response sequence (live endpoints ignore it). The benchmark harness uses
/// the offset to realize its seed.
pub fn provider_with_offset(
    config: &ProviderConfig,
    offset: usize,
) -> Result<Box<dyn ChatProvider>, DriverError> {
    match config.base_url.strip_prefix("mock:") {
        Some(dir) => Ok(Box::new(MockProvider::from_dir(Path::new(dir), offset)?)),
        None => Ok(Box::new(HttpProvider::new(config.clone())?)),
    }
}

/// Replays a directory of scripted responses in filename order, wrapping
/// around when exhausted.
pub struct MockProvider {
    responses: Vec<String>,
    next: AtomicUsize,
}

impl MockProvider {
    pub fn from_dir(dir: &Path, offset: usize) -> Result<Self, DriverError> {
        let mut files: Vec<_> = std::fs::read_dir(dir)
            .map_err(|e| DriverError::ProviderUnreachable(format!("{}: {e}", dir.display())))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.is_file())
            .collect();
        files.sort();
        let responses: Vec<String> = files
            .iter()
            .map(std::fs::read_to_string)
            .collect::<Result<_, _>>()
            .map_err(|e| DriverError::ProviderUnreachable(format!("{}: {e}", dir.display())))?;
        if responses.is_empty() {
            return Err(DriverError::ProviderUnreachable(format!(
                "{}: no scripted responses",
                dir.display()
            )));
        }
        let start = offset % responses.len();
        Ok(MockProvider {
            responses,
            next: AtomicUsize::new(start),
        })
    }
}

impl ChatProvider for MockProvider {
    fn complete(&self, _messages: &[ChatMessage]) -> Result<String, DriverError> {
        let idx = self.next.fetch_add(1, Ordering::SeqCst);
        Ok(self.responses[idx % self.responses.len()].clone())
    }
}

#[derive(Serialize)]
struct ChatRequest<'a> {
    model: &'a str,
    messages: &'a [ChatMessage],
    temperature: f64,
    max_tokens: u32,
}

#[derive(Deserialize)]
struct ChatResponse {
    choices: Vec<ChatChoice>,
}

#[derive(Deserialize)]
struct ChatChoice {
    message: ChatChoiceMessage,
}

#[derive(Deserialize)]
struct ChatChoiceMessage {
    content: Option<String>,
}

/// Blocking client for any OpenAI-compatible chat-completions endpoint.
pub struct HttpProvider {
    config: ProviderConfig,
    client: reqwest::blocking::Client,
}

impl HttpProvider {
    pub fn new(config: ProviderConfig) -> Result<Self, DriverError> {
        if config.model_name.is_empty() {
            return Err(DriverError::ProviderUnreachable(
                "model_name is required for HTTP providers".to_string(),
            ));
        }
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(config.timeout))
            .build()
            .map_err(|e| DriverError::ProviderUnreachable(e.to_string()))?;
        Ok(HttpProvider { config, client })
    }

    fn endpoint(&self) -> String {
        format!(
            "{}/chat/completions",
            self.config.base_url.trim_end_matches('/')
        )
    }

    fn send_once(&self, messages: &[ChatMessage]) -> Result<String, DriverError> {
        let body = ChatRequest {
            model: &self.config.model_name,
            messages,
            temperature: self.config.temperature,
            max_tokens: self.config.max_tokens,
        };
        let mut request = self.client.post(self.endpoint()).json(&body);
        if !self.config.api_key_env.is_empty() {
            if let Ok(key) = std::env::var(&self.config.api_key_env) {
                if !key.is_empty() {
                    request = request.bearer_auth(key);
                }
            }
        }
        let response = request
            .send()
            .map_err(|e| DriverError::ProviderUnreachable(e.to_string()))?;
        let status = response.status();
        if !status.is_success() {
            let body = response.text().unwrap_or_default();
            return Err(DriverError::ProviderRejected {
                status: status.as_u16(),
                body: body.chars().take(512).collect(),
            });
        }
        let parsed: ChatResponse = response
            .json()
            .map_err(|e| DriverError::ProviderUnreachable(format!("malformed response: {e}")))?;
        parsed
            .choices
            .into_iter()
            .next()
            .and_then(|c| c.message.content)
            .filter(|c| !c.trim().is_empty())
            .ok_or(DriverError::EmptyResponse)
    }
}

impl ChatProvider for HttpProvider {
    fn complete(&self, messages: &[ChatMessage]) -> Result<String, DriverError> {
        let mut delay = Duration::from_millis(100);
        let mut last_error = None;
        for attempt in 0..=self.config.max_retries {
            match self.send_once(messages) {
                Ok(text) => return Ok(text),
                // Transport failures and throttling/server errors are
                // retried; other rejections surface immediately.
                Err(err @ DriverError::ProviderUnreachable(_)) => last_error = Some(err),
                Err(DriverError::ProviderRejected { status, body })
                    if status == 429 || status >= 500 =>
                {
                    last_error = Some(DriverError::ProviderRejected { status, body });
                }
                Err(other) => return Err(other),
            }
            if attempt < self.config.max_retries {
                std::thread::sleep(delay);
                delay *= 2;
            }
        }
        Err(last_error.expect("at least one attempt ran"))
    }
}

/// One generation round: send the prompt, extract code, score it.
pub fn transpile_llm(
    provider: &dyn ChatProvider,
    bundle: &PromptBundle,
) -> Result<TranspileAttempt, DriverError> {
    let messages = [
        ChatMessage::system(bundle.system_text.clone()),
        ChatMessage::user(bundle.user_text.clone()),
    ];
    let raw = provider.complete(&messages)?;
    if raw.trim().is_empty() {
        return Err(DriverError::EmptyResponse);
    }
    Ok(attempt_from_response(1, raw, None))
}

fn attempt_from_response(
    round: usize,
    raw_response: String,
    reference: Option<&CircuitIr>,
) -> TranspileAttempt {
    let extracted_code = extract_code(&raw_response);
    let quality = extracted_code.as_deref().map(score);
    let equivalence = match (reference, &extracted_code) {
        (Some(reference), Some(code)) => parse_cirq(code)
            .ir
            .and_then(|candidate| equivalent(reference, &candidate, DEFAULT_TOLERANCE).ok()),
        _ => None,
    };
    TranspileAttempt {
        round,
        raw_response,
        extracted_code,
        quality,
        equivalence,
    }
}

fn feedback_message(attempt: &TranspileAttempt) -> String {
    let mut text = String::from("The previous answer is not acceptable yet.\n");
    match (&attempt.extracted_code, &attempt.quality) {
        (Some(_), Some(quality)) => {
            text.push_str(&format!(
                "Quality score: {} ({}/{} patterns, {} warning(s), {} error(s)).\n",
                quality.score,
                quality.patterns_present.count(),
                quality.patterns_expected,
                quality.warning_count,
                quality.error_count,
            ));
            let explanation = explain(quality);
            if !explanation.is_empty() {
                text.push_str(&format!("Issues: {explanation}.\n"));
            }
            match &attempt.equivalence {
                Some(v) if v.equivalent => {}
                Some(v) => {
                    text.push_str(&format!(
                        "The circuit does not behave like the source program ({} deviation {}).\n",
                        v.mode, v.max_deviation
                    ));
                }
                None => {
                    text.push_str(
                        "The code could not be checked for functional equivalence because it does not parse into a circuit.\n",
                    );
                }
            }
        }
        _ => {
            text.push_str("No code could be extracted from the response.\n");
        }
    }
    text.push_str("Respond with the corrected Cirq code only.");
    text
}

/// Generate, evaluate, and re-prompt with diagnostics until the attempt
/// scores 1.0 and matches the rule-based transpilation, or `max_rounds` is
/// exhausted. Returns every attempt in order; provider errors propagate.
pub fn repair_loop(
    provider: &dyn ChatProvider,
    source: &str,
    strategy: Strategy,
    mapping_notes: Option<&str>,
    max_rounds: usize,
) -> Result<RepairLog, DriverError> {
    let max_rounds = max_rounds.max(1);
    let source_ir = parse_source(source)?;
    // The comparison target is the rule-based emission fed back through the
    // Cirq frontend, so both sides of the check live in the same dialect.
    let reference = parse_cirq(&emit_cirq(&source_ir, false, 0).expect("emission is total"))
        .ir
        .expect("rule-based emission re-parses");

    let bundle = build_prompt(source, strategy, mapping_notes)?;
    let mut messages = vec![
        ChatMessage::system(bundle.system_text.clone()),
        ChatMessage::user(bundle.user_text.clone()),
    ];

    let mut attempts: Vec<TranspileAttempt> = Vec::new();
    for round in 1..=max_rounds {
        let raw = provider.complete(&messages)?;
        if raw.trim().is_empty() {
            return Err(DriverError::EmptyResponse);
        }
        let attempt = attempt_from_response(round, raw, Some(&reference));
        let done = attempt.passed();
        attempts.push(attempt);
        if done || round == max_rounds {
            break;
        }
        let last = attempts.last().expect("just pushed");
        messages.push(ChatMessage::assistant(last.raw_response.clone()));
        messages.push(ChatMessage::user(feedback_message(last)));
    }

    let best = attempts
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| {
            let (sa, ea) = a.rank();
            let (sb, eb) = b.rank();
            sa.total_cmp(&sb).then(ea.cmp(&eb)).then(ib.cmp(ia)) // earlier round wins ties
        })
        .map(|(i, _)| i)
        .expect("at least one attempt");
    Ok(RepairLog { attempts, best })
}
