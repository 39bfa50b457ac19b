//! Frontend for the supported Cirq dialect.
//!
//! Besides producing [`CircuitIr`], this parser detects the five expected
//! pattern categories the quality metric rewards. Pattern detection is
//! statement-level on purpose: a generation with one broken line still gets
//! credit for the structure it clearly has, which is what makes partially
//! wrong output scoreable.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::diagnostics::{DiagCode, Diagnostics};
use crate::ir::{CircuitIr, GateKind, GateOp, IrError};
use crate::lex::{
    block_opener, identifiers, is_identifier, match_assignment, match_call, match_index,
    parse_angle, parse_index, split_args, split_statements, statement_shaped, Statement,
};

/// The five rewarded Cirq construct categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PatternCategory {
    CircuitCreation,
    QubitInitialization,
    GateOperations,
    MeasurementOperations,
    Simulation,
}

impl PatternCategory {
    pub const ALL: [PatternCategory; 5] = [
        PatternCategory::CircuitCreation,
        PatternCategory::QubitInitialization,
        PatternCategory::GateOperations,
        PatternCategory::MeasurementOperations,
        PatternCategory::Simulation,
    ];

    /// Label used in report explanations.
    pub fn display(self) -> &'static str {
        match self {
            PatternCategory::CircuitCreation => "Circuit creation",
            PatternCategory::QubitInitialization => "Qubit initialization",
            PatternCategory::GateOperations => "Basic gates",
            PatternCategory::MeasurementOperations => "Measurement operations",
            PatternCategory::Simulation => "Simulation",
        }
    }
}

/// Set of pattern categories recognized in a source text.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DetectedPatterns {
    present: BTreeSet<PatternCategory>,
}

impl DetectedPatterns {
    pub fn insert(&mut self, pattern: PatternCategory) {
        self.present.insert(pattern);
    }

    pub fn contains(&self, pattern: PatternCategory) -> bool {
        self.present.contains(&pattern)
    }

    pub fn count(&self) -> usize {
        self.present.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = PatternCategory> + '_ {
        self.present.iter().copied()
    }

    /// Absent categories, in canonical order.
    pub fn missing(&self) -> Vec<PatternCategory> {
        PatternCategory::ALL
            .iter()
            .copied()
            .filter(|p| !self.present.contains(p))
            .collect()
    }

    pub fn is_subset(&self, other: &DetectedPatterns) -> bool {
        self.present.is_subset(&other.present)
    }
}

/// Result of [`parse_cirq`]. Patterns are computed even when errors prevent
/// IR construction. `recognized_statements` counts statements that matched a
/// dialect form at all, which the LLM driver uses to tell bare code from
/// prose.
#[derive(Debug, Clone, PartialEq)]
pub struct CirqParse {
    pub ir: Option<CircuitIr>,
    pub diagnostics: Diagnostics,
    pub patterns: DetectedPatterns,
    pub recognized_statements: usize,
}

#[derive(Debug, Clone, Copy)]
enum QubitBinding {
    Range(usize),
    Single(usize),
}

enum GateExpr {
    Op(GateOp),
    Invalid {
        kind: Option<GateKind>,
        code: DiagCode,
        message: String,
    },
    NotGate,
}

struct Parser {
    diags: Diagnostics,
    patterns: DetectedPatterns,
    recognized: usize,
    qubits: HashMap<String, QubitBinding>,
    /// Gate expressions bound to a name and appended later.
    op_bindings: HashMap<String, String>,
    circuit_var: Option<String>,
    sim_vars: HashSet<String>,
    sim_constructed: bool,
    run_called: bool,
    imports: Vec<(String, usize)>,
    /// Bindings from recognized statements (run results, named operations):
    /// warned only when unused.
    recognized_bindings: Vec<(String, usize)>,
    /// Bindings from unrecognized statements: unused-variable when dead,
    /// skipped-statement when referenced.
    loose_bindings: Vec<(String, usize)>,
    uses: Vec<HashSet<String>>,
    /// Highest qubit index + 1 referenced through direct LineQubit values.
    max_qubit: usize,
    /// Largest LineQubit.range declaration.
    range_max: usize,
    ops: Vec<(usize, GateOp)>,
    skip_indent: Option<usize>,
}

impl Parser {
    fn new() -> Self {
        Parser {
            diags: Diagnostics::default(),
            patterns: DetectedPatterns::default(),
            recognized: 0,
            qubits: HashMap::new(),
            op_bindings: HashMap::new(),
            circuit_var: None,
            sim_vars: HashSet::new(),
            sim_constructed: false,
            run_called: false,
            imports: Vec::new(),
            recognized_bindings: Vec::new(),
            loose_bindings: Vec::new(),
            uses: Vec::new(),
            max_qubit: 0,
            range_max: 0,
            ops: Vec::new(),
            skip_indent: None,
        }
    }

    fn use_all(&mut self, text: &str) {
        self.uses
            .push(identifiers(text).into_iter().map(String::from).collect());
    }

    fn statement(&mut self, stmt: &Statement) {
        if let Some(skip) = self.skip_indent {
            if stmt.indent > skip {
                return;
            }
            self.skip_indent = None;
        }

        if block_opener(&stmt.text) {
            self.diags.error(
                DiagCode::UnsupportedConstruct,
                stmt.line,
                format!(
                    "control flow and definitions are not supported: `{}`",
                    stmt.text
                ),
            );
            self.skip_indent = Some(stmt.indent);
            return;
        }

        if stmt.indent > 0 {
            self.diags
                .error(DiagCode::SyntaxError, stmt.line, "unexpected indentation");
            return;
        }

        if let Some(rest) = stmt.text.strip_prefix("import ") {
            self.import_statement(rest, stmt.line);
            return;
        }
        if let Some(rest) = stmt.text.strip_prefix("from ") {
            self.import_from_statement(rest, stmt.line);
            return;
        }

        if let Some((name, rhs)) = match_assignment(&stmt.text) {
            self.assignment(name, rhs, stmt.line);
            return;
        }

        self.expression_statement(&stmt.text, stmt.line);
    }

    fn import_statement(&mut self, rest: &str, line: usize) {
        self.recognized += 1;
        for item in split_args(rest) {
            let mut parts = item.split_whitespace();
            let module = parts.next().unwrap_or("");
            let bound = match (parts.next(), parts.next(), parts.next()) {
                (Some("as"), Some(alias), None) if is_identifier(alias) => alias,
                (None, None, None) => module.split('.').next().unwrap_or(""),
                _ => {
                    self.diags
                        .error(DiagCode::SyntaxError, line, "malformed import");
                    continue;
                }
            };
            if module.split('.').all(is_identifier) && !bound.is_empty() {
                self.imports.push((bound.to_string(), line));
            } else {
                self.diags
                    .error(DiagCode::SyntaxError, line, "malformed import");
            }
        }
    }

    fn import_from_statement(&mut self, rest: &str, line: usize) {
        self.recognized += 1;
        let Some((module, names)) = rest.split_once(" import ") else {
            self.diags
                .error(DiagCode::SyntaxError, line, "malformed import");
            return;
        };
        if !module.trim().split('.').all(is_identifier) {
            self.diags
                .error(DiagCode::SyntaxError, line, "malformed import");
            return;
        }
        for item in split_args(names) {
            let mut parts = item.split_whitespace();
            let bound = match (parts.next(), parts.next(), parts.next(), parts.next()) {
                (Some(name), None, None, None) => name,
                (Some(_), Some("as"), Some(alias), None) => alias,
                _ => {
                    self.diags
                        .error(DiagCode::SyntaxError, line, "malformed import");
                    continue;
                }
            };
            if is_identifier(bound) {
                self.imports.push((bound.to_string(), line));
            } else {
                self.diags
                    .error(DiagCode::SyntaxError, line, "malformed import");
            }
        }
    }

    fn assignment(&mut self, name: &str, rhs: &str, line: usize) {
        self.use_all(rhs);
        let Some((path, args, suffix)) = match_call(rhs) else {
            self.loose_bindings.push((name.to_string(), line));
            return;
        };

        match (path, suffix) {
            ("cirq.LineQubit.range", "") => {
                self.recognized += 1;
                self.patterns.insert(PatternCategory::QubitInitialization);
                match parse_index(args) {
                    Some(n) => {
                        self.range_max = self.range_max.max(n);
                        self.qubits.insert(name.to_string(), QubitBinding::Range(n));
                    }
                    None => self.diags.error(
                        DiagCode::SyntaxError,
                        line,
                        "LineQubit.range takes one nonnegative integer",
                    ),
                }
                return;
            }
            ("cirq.LineQubit", "") => {
                self.recognized += 1;
                self.patterns.insert(PatternCategory::QubitInitialization);
                match parse_index(args) {
                    Some(i) => {
                        self.max_qubit = self.max_qubit.max(i + 1);
                        self.qubits
                            .insert(name.to_string(), QubitBinding::Single(i));
                    }
                    None => self.diags.error(
                        DiagCode::SyntaxError,
                        line,
                        "LineQubit takes one nonnegative integer",
                    ),
                }
                return;
            }
            ("cirq.GridQubit", "") | ("cirq.NamedQubit", "") => {
                self.recognized += 1;
                self.patterns.insert(PatternCategory::QubitInitialization);
                self.diags.error(
                    DiagCode::UnsupportedConstruct,
                    line,
                    format!("{path} qubits cannot be represented; use LineQubit"),
                );
                return;
            }
            ("cirq.Circuit", "") => {
                self.recognized += 1;
                self.circuit_statement(Some(name), args, line);
                return;
            }
            ("cirq.Simulator", "") => {
                self.recognized += 1;
                self.sim_constructed = true;
                self.sim_vars.insert(name.to_string());
                self.recognized_bindings.push((name.to_string(), line));
                return;
            }
            ("cirq.Simulator", chained) => {
                self.chained_run(chained, line);
                self.recognized_bindings.push((name.to_string(), line));
                return;
            }
            _ => {}
        }

        // result = simulator.run(...)
        if suffix.is_empty() {
            let mut segments = path.split('.');
            if let (Some(base), Some(method), None) =
                (segments.next(), segments.next(), segments.next())
            {
                if matches!(method, "run" | "simulate") && self.sim_vars.contains(base) {
                    self.recognized += 1;
                    self.run_called = true;
                    self.recognized_bindings.push((name.to_string(), line));
                    return;
                }
            }
        }

        // A gate expression bound to a name, appended later.
        match self.parse_gate_expr(rhs) {
            GateExpr::Op(_) | GateExpr::Invalid { kind: Some(_), .. } => {
                self.op_bindings.insert(name.to_string(), rhs.to_string());
                self.recognized_bindings.push((name.to_string(), line));
            }
            _ => self.loose_bindings.push((name.to_string(), line)),
        }
    }

    /// `.run(...)` / `.simulate(...)` chained onto a simulator constructor.
    /// The construction itself is always recognized.
    fn chained_run(&mut self, suffix: &str, line: usize) {
        self.sim_constructed = true;
        if let Some(rest) = suffix.strip_prefix('.') {
            if let Some((method, _, trailing)) = match_call(rest) {
                if matches!(method, "run" | "simulate") && trailing.is_empty() {
                    self.recognized += 1;
                    self.run_called = true;
                    return;
                }
            }
        }
        self.diags.error(
            DiagCode::SyntaxError,
            line,
            "unsupported chained expression on cirq.Simulator()",
        );
    }

    fn circuit_statement(&mut self, name: Option<&str>, args: &str, line: usize) {
        if self.circuit_var.is_some() {
            self.diags.error(
                DiagCode::UnsupportedConstruct,
                line,
                "only one circuit per source file is supported",
            );
            return;
        }
        self.patterns.insert(PatternCategory::CircuitCreation);
        match name {
            Some(n) => self.circuit_var = Some(n.to_string()),
            None => {
                // A circuit constructed without a binding can never be run,
                // but the pattern is still credited.
                self.diags.warning(
                    DiagCode::SkippedStatement,
                    line,
                    "circuit is not bound to a name",
                );
            }
        }
        let inner = args.trim();
        let inner = inner
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .unwrap_or(inner);
        for item in split_args(inner) {
            self.append_item(item, line);
        }
    }

    fn expression_statement(&mut self, text: &str, line: usize) {
        let Some((path, args, suffix)) = match_call(text) else {
            self.use_all(text);
            if statement_shaped(text) {
                self.diags.warning(
                    DiagCode::SkippedStatement,
                    line,
                    format!("statement outside the supported dialect was skipped: `{text}`"),
                );
            } else {
                self.diags.error(
                    DiagCode::SyntaxError,
                    line,
                    format!("unparseable statement: `{text}`"),
                );
            }
            return;
        };
        self.use_all(text);

        if path == "cirq.Circuit" && suffix.is_empty() {
            self.recognized += 1;
            self.circuit_statement(None, args, line);
            return;
        }
        if path == "cirq.Simulator" {
            if suffix.is_empty() {
                self.recognized += 1;
                self.sim_constructed = true;
            } else {
                self.chained_run(suffix, line);
            }
            return;
        }

        // A bare gate expression creates an operation without appending it.
        match self.parse_gate_expr(text) {
            GateExpr::Op(op) => {
                self.recognized += 1;
                self.credit_gate(op.kind);
                self.diags.warning(
                    DiagCode::SkippedStatement,
                    line,
                    "operation is not appended to any circuit",
                );
                return;
            }
            GateExpr::Invalid {
                kind,
                code,
                message,
            } => {
                self.recognized += 1;
                if let Some(kind) = kind {
                    self.credit_gate(kind);
                }
                self.diags.error(code, line, message);
                return;
            }
            GateExpr::NotGate => {}
        }

        let mut segments = path.split('.');
        let (base, method, rest) = (
            segments.next().unwrap_or(""),
            segments.next(),
            segments.next(),
        );
        let is_circuit = self.circuit_var.as_deref() == Some(base);
        match method {
            Some("append") if rest.is_none() && suffix.is_empty() => {
                if is_circuit {
                    self.recognized += 1;
                    let inner = args.trim();
                    let inner = inner
                        .strip_prefix('[')
                        .and_then(|s| s.strip_suffix(']'))
                        .unwrap_or(inner);
                    for item in split_args(inner) {
                        self.append_item(item, line);
                    }
                } else {
                    self.diags.error(
                        DiagCode::UndefinedName,
                        line,
                        format!("`{base}` is not a circuit"),
                    );
                }
            }
            Some(m @ ("run" | "simulate")) if rest.is_none() && suffix.is_empty() => {
                if self.sim_vars.contains(base) {
                    self.recognized += 1;
                    self.run_called = true;
                } else if is_circuit || !self.is_bound(base) {
                    self.diags.error(
                        DiagCode::UndefinedName,
                        line,
                        format!("`{base}` is not a simulator"),
                    );
                } else {
                    self.diags.warning(
                        DiagCode::SkippedStatement,
                        line,
                        format!("`{base}.{m}` is outside the supported dialect"),
                    );
                }
            }
            Some(other) if is_circuit => {
                self.diags.error(
                    DiagCode::UnknownGate,
                    line,
                    format!("unknown circuit method `{other}`"),
                );
            }
            _ => {
                self.diags.warning(
                    DiagCode::SkippedStatement,
                    line,
                    format!("statement outside the supported dialect was skipped: `{text}`"),
                );
            }
        }
    }

    fn is_bound(&self, name: &str) -> bool {
        self.imports.iter().any(|(n, _)| n == name)
            || self.qubits.contains_key(name)
            || self.sim_vars.contains(name)
            || self.op_bindings.contains_key(name)
            || self.loose_bindings.iter().any(|(n, _)| n == name)
            || self.recognized_bindings.iter().any(|(n, _)| n == name)
            || self.circuit_var.as_deref() == Some(name)
    }

    /// One element of an `append(...)` argument list or `Circuit([...])`
    /// constructor list: a gate expression or a name bound to one.
    fn append_item(&mut self, item: &str, line: usize) {
        if item.is_empty() {
            return;
        }
        // Keyword arguments such as insertion strategies are ignored.
        if let Some((kw, _)) = item.split_once('=') {
            if is_identifier(kw.trim()) && !item.contains("==") {
                return;
            }
        }
        let resolved;
        let expr = if is_identifier(item) {
            match self.op_bindings.get(item) {
                Some(rhs) => {
                    resolved = rhs.clone();
                    resolved.as_str()
                }
                None => {
                    self.diags.error(
                        DiagCode::UndefinedName,
                        line,
                        format!("`{item}` is not a known operation"),
                    );
                    return;
                }
            }
        } else {
            item
        };
        match self.parse_gate_expr(expr) {
            GateExpr::Op(op) => {
                self.credit_gate(op.kind);
                self.ops.push((line, op));
            }
            GateExpr::Invalid {
                kind,
                code,
                message,
            } => {
                if let Some(kind) = kind {
                    self.credit_gate(kind);
                }
                self.diags.error(code, line, message);
            }
            GateExpr::NotGate => {
                self.diags.error(
                    DiagCode::SyntaxError,
                    line,
                    format!("`{expr}` is not a gate expression"),
                );
            }
        }
    }

    fn credit_gate(&mut self, kind: GateKind) {
        if kind == GateKind::Measure {
            self.patterns.insert(PatternCategory::MeasurementOperations);
        } else {
            self.patterns.insert(PatternCategory::GateOperations);
        }
    }

    fn parse_gate_expr(&mut self, expr: &str) -> GateExpr {
        let Some((path, args, suffix)) = match_call(expr) else {
            return GateExpr::NotGate;
        };
        let Some(tail) = path.strip_prefix("cirq.") else {
            return GateExpr::NotGate;
        };
        let suffix_compact: String = suffix.chars().filter(|c| !c.is_whitespace()).collect();

        let invalid = |kind: Option<GateKind>, code: DiagCode, message: String| GateExpr::Invalid {
            kind,
            code,
            message,
        };

        let plain = |kind: GateKind| kind;
        let kind = match tail {
            "H" => Some(plain(GateKind::H)),
            "X" => Some(plain(GateKind::X)),
            "Y" => Some(plain(GateKind::Y)),
            "Z" => Some(plain(GateKind::Z)),
            "S" => Some(plain(GateKind::S)),
            "T" => Some(plain(GateKind::T)),
            "CNOT" => Some(plain(GateKind::Cnot)),
            "CZ" => Some(plain(GateKind::Cz)),
            "SWAP" => Some(plain(GateKind::Swap)),
            "CCX" | "TOFFOLI" => Some(plain(GateKind::Ccx)),
            _ => None,
        };

        if let Some(mut kind) = kind {
            match suffix_compact.as_str() {
                "" => {}
                "**-1" => match kind {
                    GateKind::S => kind = GateKind::Sdg,
                    GateKind::T => kind = GateKind::Tdg,
                    other => {
                        return invalid(
                            Some(other),
                            DiagCode::UnknownGate,
                            format!("inverse of cirq.{tail} is not supported"),
                        );
                    }
                },
                _ => {
                    return invalid(
                        Some(kind),
                        DiagCode::SyntaxError,
                        format!("unsupported trailing expression `{suffix}`"),
                    );
                }
            }
            let expected = kind.arity().expect("fixed-arity gate");
            let arg_list = split_args(args);
            if arg_list.len() != expected {
                return invalid(
                    Some(kind),
                    DiagCode::ArityMismatch,
                    format!(
                        "cirq.{tail} takes {expected} qubit(s), got {}",
                        arg_list.len()
                    ),
                );
            }
            let mut qubits = Vec::with_capacity(expected);
            for arg in arg_list {
                match self.resolve_qubit(arg) {
                    Ok(q) => qubits.push(q),
                    Err((code, message)) => return invalid(Some(kind), code, message),
                }
            }
            return GateExpr::Op(GateOp {
                kind,
                qubits,
                angle: None,
                clbits: None,
            });
        }

        match tail {
            "rx" | "ry" | "rz" => {
                let kind = match tail {
                    "rx" => GateKind::Rx,
                    "ry" => GateKind::Ry,
                    _ => GateKind::Rz,
                };
                let Some(angle) = parse_angle(args) else {
                    return invalid(
                        Some(kind),
                        DiagCode::SyntaxError,
                        format!("cannot parse angle expression `{args}`"),
                    );
                };
                let Some(qubit_args) = suffix_compact
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                else {
                    return invalid(
                        Some(kind),
                        DiagCode::SyntaxError,
                        format!("cirq.{tail}(...) must be applied to a qubit"),
                    );
                };
                match self.resolve_qubit(qubit_args) {
                    Ok(q) => GateExpr::Op(GateOp::rotation(kind, q, angle)),
                    Err((code, message)) => invalid(Some(kind), code, message),
                }
            }
            "measure" => {
                let arg_list = split_args(args);
                if !suffix_compact.is_empty() {
                    return invalid(
                        Some(GateKind::Measure),
                        DiagCode::SyntaxError,
                        format!("unsupported trailing expression `{suffix}`"),
                    );
                }
                let mut qubits = Vec::new();
                let mut key: Option<String> = None;
                for arg in arg_list {
                    if let Some(value) = arg.strip_prefix("key") {
                        let value = value.trim_start();
                        if let Some(value) = value.strip_prefix('=') {
                            match string_literal(value.trim()) {
                                Some(k) => {
                                    key = Some(k);
                                    continue;
                                }
                                None => {
                                    return invalid(
                                        Some(GateKind::Measure),
                                        DiagCode::SyntaxError,
                                        "measurement key must be a string literal".to_string(),
                                    );
                                }
                            }
                        }
                    }
                    if key.is_some() {
                        return invalid(
                            Some(GateKind::Measure),
                            DiagCode::SyntaxError,
                            "qubit arguments must precede the key".to_string(),
                        );
                    }
                    match self.resolve_qubit(arg) {
                        Ok(q) => qubits.push(q),
                        Err((code, message)) => {
                            return invalid(Some(GateKind::Measure), code, message);
                        }
                    }
                }
                if qubits.is_empty() {
                    return invalid(
                        Some(GateKind::Measure),
                        DiagCode::ArityMismatch,
                        "measure takes at least one qubit".to_string(),
                    );
                }
                let clbits = measure_clbits(&qubits, key.as_deref());
                GateExpr::Op(GateOp::measure_many(qubits, clbits))
            }
            "LineQubit" | "GridQubit" | "NamedQubit" => GateExpr::NotGate,
            other => invalid(
                None,
                DiagCode::UnknownGate,
                format!("cirq.{other} is not a supported gate"),
            ),
        }
    }

    fn resolve_qubit(&mut self, arg: &str) -> Result<usize, (DiagCode, String)> {
        let arg = arg.trim();
        if let Some((name, index)) = match_index(arg) {
            return match self.qubits.get(name) {
                Some(QubitBinding::Range(n)) => {
                    let Some(i) = parse_index(index) else {
                        return Err((
                            DiagCode::SyntaxError,
                            format!("cannot parse qubit index `{index}`"),
                        ));
                    };
                    if i < *n {
                        Ok(i)
                    } else {
                        Err((
                            DiagCode::IndexOutOfRange,
                            format!("qubit index {i} out of range for `{name}` of length {n}"),
                        ))
                    }
                }
                Some(QubitBinding::Single(_)) => Err((
                    DiagCode::SyntaxError,
                    format!("`{name}` is a single qubit and cannot be indexed"),
                )),
                None => Err((DiagCode::UndefinedName, format!("`{name}` is not defined"))),
            };
        }
        if is_identifier(arg) {
            return match self.qubits.get(arg) {
                Some(QubitBinding::Single(i)) => Ok(*i),
                Some(QubitBinding::Range(_)) => Err((
                    DiagCode::SyntaxError,
                    format!("`{arg}` is a qubit list; expected a single qubit"),
                )),
                None => Err((DiagCode::UndefinedName, format!("`{arg}` is not defined"))),
            };
        }
        if let Some((path, args, suffix)) = match_call(arg) {
            if path == "cirq.LineQubit" && suffix.is_empty() {
                return match parse_index(args) {
                    Some(i) => {
                        self.max_qubit = self.max_qubit.max(i + 1);
                        Ok(i)
                    }
                    None => Err((
                        DiagCode::SyntaxError,
                        "LineQubit takes one nonnegative integer".to_string(),
                    )),
                };
            }
            if matches!(path, "cirq.GridQubit" | "cirq.NamedQubit") {
                return Err((
                    DiagCode::UnsupportedConstruct,
                    format!("{path} qubits cannot be represented; use LineQubit"),
                ));
            }
        }
        Err((
            DiagCode::SyntaxError,
            format!("cannot parse qubit reference `{arg}`"),
        ))
    }

    fn finish(mut self) -> CirqParse {
        if self.sim_constructed && self.run_called {
            self.patterns.insert(PatternCategory::Simulation);
        }

        let used: HashSet<&String> = self.uses.iter().flatten().collect();
        for (name, line) in &self.imports {
            if !used.contains(name) {
                self.diags.warning(
                    DiagCode::UnusedImport,
                    *line,
                    format!("imported name `{name}` is never used"),
                );
            }
        }
        for (name, line) in &self.recognized_bindings {
            if !used.contains(name) {
                self.diags.warning(
                    DiagCode::UnusedVariable,
                    *line,
                    format!("`{name}` is assigned but never used"),
                );
            }
        }
        for (name, line) in &self.loose_bindings {
            if used.contains(name) {
                self.diags.warning(
                    DiagCode::SkippedStatement,
                    *line,
                    format!("assignment to `{name}` is outside the supported dialect"),
                );
            } else {
                self.diags.warning(
                    DiagCode::UnusedVariable,
                    *line,
                    format!("`{name}` is assigned but never used"),
                );
            }
        }

        let num_qubits = self.range_max.max(self.max_qubit);
        let num_clbits = self
            .ops
            .iter()
            .flat_map(|(_, op)| op.clbits.iter().flatten())
            .max()
            .map_or(0, |&c| c + 1);
        let mut circuit = CircuitIr::new(num_qubits, num_clbits);
        for (line, op) in self.ops {
            if let Err(err) = circuit.push(op) {
                let code = match err {
                    IrError::IndexOutOfRange { .. } => DiagCode::IndexOutOfRange,
                    _ => DiagCode::ArityMismatch,
                };
                self.diags.error(code, line, err.to_string());
            }
        }

        self.diags.sort();
        let ir = if self.diags.has_errors() || self.circuit_var.is_none() {
            None
        } else {
            Some(circuit)
        };
        CirqParse {
            ir,
            diagnostics: self.diags,
            patterns: self.patterns,
            recognized_statements: self.recognized,
        }
    }
}

/// Strip a quoted string literal.
fn string_literal(s: &str) -> Option<String> {
    let bytes = s.as_bytes();
    if bytes.len() >= 2
        && (bytes[0] == b'"' || bytes[0] == b'\'')
        && bytes[bytes.len() - 1] == bytes[0]
    {
        Some(s[1..s.len() - 1].to_string())
    } else {
        None
    }
}

/// Key-to-clbit mapping: a single qubit measured with key `c<j>` lands on
/// clbit `j`; any other shape (grouped measures, foreign keys, no key) lands
/// on clbits `0..k` in operand order.
fn measure_clbits(qubits: &[usize], key: Option<&str>) -> Vec<usize> {
    if qubits.len() == 1 {
        if let Some(rest) = key.and_then(|k| k.strip_prefix('c')) {
            if let Some(j) = parse_index(rest) {
                return vec![j];
            }
        }
    }
    (0..qubits.len()).collect()
}

/// Parse Cirq-dialect source text.
pub fn parse_cirq(source: &str) -> CirqParse {
    let (statements, split_errors) = split_statements(source);
    let mut parser = Parser::new();
    for (line, message) in split_errors {
        parser.diags.error(DiagCode::SyntaxError, line, message);
    }
    for stmt in &statements {
        parser.statement(stmt);
    }
    parser.finish()
}
