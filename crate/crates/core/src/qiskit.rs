//! Frontend for the supported Qiskit dialect.
//!
//! The dialect is a line-oriented statement grammar, not full host-language
//! parsing: imports, one `NAME = QuantumCircuit(INT[, INT])` binding, and
//! method-call statements on that binding. Nothing is ever executed.

use std::collections::HashSet;

use crate::diagnostics::{DiagCode, Diagnostics};
use crate::ir::{CircuitIr, GateKind, GateOp, IrError};
use crate::lex::{
    block_opener, identifiers, is_identifier, match_assignment, match_call, parse_angle,
    parse_index, split_args, split_statements, statement_shaped, Statement,
};

/// Result of [`parse_qiskit`]: the circuit when the source is clean, plus
/// everything found along the way.
#[derive(Debug, Clone, PartialEq)]
pub struct QiskitParse {
    pub ir: Option<CircuitIr>,
    pub diagnostics: Diagnostics,
}

const GATE_METHODS: [&str; 15] = [
    "h", "x", "y", "z", "s", "sdg", "t", "tdg", "rx", "ry", "rz", "cx", "cz", "swap", "ccx",
];

/// Circuit methods that are harmless and merely skipped.
const SKIPPABLE_METHODS: [&str; 2] = ["draw", "depth"];

struct Parser {
    diags: Diagnostics,
    circuit: Option<(String, CircuitIr)>,
    /// Imported names with the line of the import.
    imports: Vec<(String, usize)>,
    /// Assignments outside the dialect: name, line, and whether the name is
    /// ever referenced afterwards decides the warning emitted.
    loose_bindings: Vec<(String, usize)>,
    /// Per-statement identifier sets counted as uses.
    uses: Vec<HashSet<String>>,
    /// Indentation of an unsupported block opener whose body is skipped.
    skip_indent: Option<usize>,
}

impl Parser {
    fn new() -> Self {
        Parser {
            diags: Diagnostics::default(),
            circuit: None,
            imports: Vec::new(),
            loose_bindings: Vec::new(),
            uses: Vec::new(),
            skip_indent: None,
        }
    }

    fn use_all(&mut self, text: &str) {
        self.uses
            .push(identifiers(text).into_iter().map(String::from).collect());
    }

    fn is_bound(&self, name: &str) -> bool {
        self.imports.iter().any(|(n, _)| n == name)
            || self.loose_bindings.iter().any(|(n, _)| n == name)
            || self.circuit.as_ref().is_some_and(|(v, _)| v == name)
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

        if let Some((path, args, suffix)) = match_call(&stmt.text) {
            if suffix.is_empty() {
                self.call_statement(&stmt.text, path, args, stmt.line);
                return;
            }
        }

        if statement_shaped(&stmt.text) {
            self.use_all(&stmt.text);
            self.diags.warning(
                DiagCode::SkippedStatement,
                stmt.line,
                format!(
                    "statement outside the supported dialect was skipped: `{}`",
                    stmt.text
                ),
            );
        } else {
            self.diags.error(
                DiagCode::SyntaxError,
                stmt.line,
                format!("unparseable statement: `{}`", stmt.text),
            );
        }
    }

    fn import_statement(&mut self, rest: &str, line: usize) {
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
        if let Some((path, args, suffix)) = match_call(rhs) {
            if suffix.is_empty() && path.split('.').next_back() == Some("QuantumCircuit") {
                self.use_all(rhs);
                self.circuit_binding(name, args, line);
                return;
            }
            // A circuit-method call assigned to a name behaves like the bare
            // call; the binding itself is incidental.
            let cvar = self.circuit.as_ref().map(|(v, _)| v.clone());
            if let Some(cvar) = cvar {
                if let Some(method) = path.strip_prefix(&format!("{cvar}.")) {
                    if suffix.is_empty() && is_identifier(method) {
                        self.use_all(rhs);
                        self.circuit_method(method, args, line);
                        return;
                    }
                }
            }
        }
        self.use_all(rhs);
        self.loose_bindings.push((name.to_string(), line));
    }

    fn circuit_binding(&mut self, name: &str, args: &str, line: usize) {
        if self.circuit.is_some() {
            self.diags.error(
                DiagCode::UnsupportedConstruct,
                line,
                "only one circuit per source file is supported",
            );
            return;
        }
        let args = split_args(args);
        let sizes: Option<Vec<usize>> = args.iter().map(|a| parse_index(a)).collect();
        match sizes.as_deref() {
            Some([q]) => self.circuit = Some((name.to_string(), CircuitIr::new(*q, 0))),
            Some([q, c]) => self.circuit = Some((name.to_string(), CircuitIr::new(*q, *c))),
            _ => self.diags.error(
                DiagCode::SyntaxError,
                line,
                "QuantumCircuit takes one or two nonnegative integer sizes",
            ),
        }
    }

    fn call_statement(&mut self, text: &str, path: &str, args: &str, line: usize) {
        let mut segments = path.split('.');
        let (base, method) = (segments.next().unwrap_or(""), segments.next());
        let is_circuit = self.circuit.as_ref().is_some_and(|(v, _)| v == base);
        match method {
            Some(method) if segments.next().is_none() => {
                if is_circuit {
                    self.use_all(text);
                    self.circuit_method(method, args, line);
                } else if GATE_METHODS.contains(&method) && !self.is_bound(base) {
                    self.use_all(text);
                    self.diags.error(
                        DiagCode::UndefinedName,
                        line,
                        format!("`{base}` is not defined"),
                    );
                } else {
                    self.use_all(text);
                    self.diags.warning(
                        DiagCode::SkippedStatement,
                        line,
                        format!("statement outside the supported dialect was skipped: `{text}`"),
                    );
                }
            }
            _ => {
                self.use_all(text);
                self.diags.warning(
                    DiagCode::SkippedStatement,
                    line,
                    format!("statement outside the supported dialect was skipped: `{text}`"),
                );
            }
        }
    }

    fn circuit_method(&mut self, method: &str, args: &str, line: usize) {
        let args = split_args(args);
        let op = match method {
            "h" | "x" | "y" | "z" | "s" | "sdg" | "t" | "tdg" => {
                let kind = match method {
                    "h" => GateKind::H,
                    "x" => GateKind::X,
                    "y" => GateKind::Y,
                    "z" => GateKind::Z,
                    "s" => GateKind::S,
                    "sdg" => GateKind::Sdg,
                    "t" => GateKind::T,
                    _ => GateKind::Tdg,
                };
                let Some(qubits) = self.int_args(&args, 1, method, line) else {
                    return;
                };
                GateOp::single(kind, qubits[0])
            }
            "rx" | "ry" | "rz" => {
                let kind = match method {
                    "rx" => GateKind::Rx,
                    "ry" => GateKind::Ry,
                    _ => GateKind::Rz,
                };
                if args.len() != 2 {
                    self.diags.error(
                        DiagCode::ArityMismatch,
                        line,
                        format!(
                            "{method} takes an angle and a qubit, got {} argument(s)",
                            args.len()
                        ),
                    );
                    return;
                }
                let Some(angle) = parse_angle(args[0]) else {
                    self.diags.error(
                        DiagCode::SyntaxError,
                        line,
                        format!("cannot parse angle expression `{}`", args[0]),
                    );
                    return;
                };
                let Some(q) = parse_index(args[1]) else {
                    self.diags.error(
                        DiagCode::SyntaxError,
                        line,
                        format!("expected a qubit index, got `{}`", args[1]),
                    );
                    return;
                };
                GateOp::rotation(kind, q, angle)
            }
            "cx" | "cz" | "swap" => {
                let kind = match method {
                    "cx" => GateKind::Cnot,
                    "cz" => GateKind::Cz,
                    _ => GateKind::Swap,
                };
                let Some(q) = self.int_args(&args, 2, method, line) else {
                    return;
                };
                GateOp {
                    kind,
                    qubits: q,
                    angle: None,
                    clbits: None,
                }
            }
            "ccx" => {
                let Some(q) = self.int_args(&args, 3, method, line) else {
                    return;
                };
                GateOp::ccx(q[0], q[1], q[2])
            }
            "measure" => {
                let Some(q) = self.int_args(&args, 2, method, line) else {
                    return;
                };
                GateOp::measure(q[0], q[1])
            }
            "measure_all" => {
                if !args.is_empty() {
                    self.diags.error(
                        DiagCode::ArityMismatch,
                        line,
                        "measure_all takes no arguments",
                    );
                    return;
                }
                let circuit = &mut self.circuit.as_mut().unwrap().1;
                let n = circuit.num_qubits();
                circuit.grow_clbits(n);
                for q in 0..n {
                    circuit
                        .push(GateOp::measure(q, q))
                        .expect("per-qubit measure is always valid here");
                }
                return;
            }
            "barrier" => {
                self.diags.warning(
                    DiagCode::BarrierNote,
                    line,
                    "barrier has no effect on simulation or equivalence",
                );
                let circuit = &mut self.circuit.as_mut().unwrap().1;
                let qubits = if args.is_empty() {
                    (0..circuit.num_qubits()).collect()
                } else {
                    match args
                        .iter()
                        .map(|a| parse_index(a))
                        .collect::<Option<Vec<_>>>()
                    {
                        Some(q) => q,
                        None => {
                            self.diags.error(
                                DiagCode::SyntaxError,
                                line,
                                "barrier takes qubit indices",
                            );
                            return;
                        }
                    }
                };
                if qubits.is_empty() {
                    return; // barrier on an empty register is a no-op
                }
                self.push_op(GateOp::barrier(qubits), line);
                return;
            }
            m if SKIPPABLE_METHODS.contains(&m) => {
                self.diags.warning(
                    DiagCode::SkippedStatement,
                    line,
                    format!("`{m}` has no circuit semantics and was skipped"),
                );
                return;
            }
            other => {
                self.diags.error(
                    DiagCode::UnknownGate,
                    line,
                    format!("unknown circuit method `{other}`"),
                );
                return;
            }
        };
        self.push_op(op, line);
    }

    fn int_args(
        &mut self,
        args: &[&str],
        n: usize,
        method: &str,
        line: usize,
    ) -> Option<Vec<usize>> {
        if args.len() != n {
            self.diags.error(
                DiagCode::ArityMismatch,
                line,
                format!("{method} takes {n} qubit argument(s), got {}", args.len()),
            );
            return None;
        }
        match args.iter().map(|a| parse_index(a)).collect() {
            Some(v) => Some(v),
            None => {
                self.diags.error(
                    DiagCode::SyntaxError,
                    line,
                    format!("{method} takes nonnegative integer indices"),
                );
                None
            }
        }
    }

    fn push_op(&mut self, op: GateOp, line: usize) {
        let circuit = &mut self.circuit.as_mut().unwrap().1;
        if let Err(err) = circuit.push(op) {
            let code = match err {
                IrError::IndexOutOfRange { .. } => DiagCode::IndexOutOfRange,
                IrError::MissingAngle { .. } | IrError::UnexpectedAngle { .. } => {
                    DiagCode::SyntaxError
                }
                _ => DiagCode::ArityMismatch,
            };
            self.diags.error(code, line, err.to_string());
        }
    }

    fn finish(mut self) -> QiskitParse {
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
        self.diags.sort();
        let ir = if self.diags.has_errors() {
            None
        } else {
            self.circuit.map(|(_, c)| c)
        };
        QiskitParse {
            ir,
            diagnostics: self.diags,
        }
    }
}

/// Parse Qiskit-dialect source. The circuit is present exactly when a
/// `QuantumCircuit` binding was found and no errors occurred; warnings never
/// suppress it.
pub fn parse_qiskit(source: &str) -> QiskitParse {
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

/// Prepend the "input specification" comment block: register sizes, gate
/// census, and the measurement map of the parsed circuit.
pub fn annotate(source: &str, ir: &CircuitIr) -> String {
    let census = ir.census();
    let gates = if census.is_empty() {
        "(none)".to_string()
    } else {
        census
            .iter()
            .map(|(kind, n)| format!("{kind}:{n}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let pairs = ir.measure_pairs();
    let measurements = if pairs.is_empty() {
        "(none)".to_string()
    } else {
        pairs
            .iter()
            .map(|(q, c)| format!("q{q} -> c{c}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "# --- input specification ---\n\
         # qubits: {}\n\
         # clbits: {}\n\
         # gates: {}\n\
         # measurements: {}\n\
         # ---------------------------\n\n{}",
        ir.num_qubits(),
        ir.num_clbits(),
        gates,
        measurements,
        source
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::ir_equal;

    const BELL: &str = "from qiskit import QuantumCircuit\n\n\
        qc = QuantumCircuit(2, 2)\n\
        qc.h(0)\n\
        qc.cx(0, 1)\n\
        qc.measure(0, 0)\n\
        qc.measure(1, 1)\n";

    fn bell_ir() -> CircuitIr {
        CircuitIr::new(2, 2)
            .with_op(GateOp::h(0))
            .unwrap()
            .with_op(GateOp::cnot(0, 1))
            .unwrap()
            .with_op(GateOp::measure(0, 0))
            .unwrap()
            .with_op(GateOp::measure(1, 1))
            .unwrap()
    }

    #[test]
    fn bell_parses_clean() {
        let parsed = parse_qiskit(BELL);
        assert_eq!(parsed.diagnostics.error_count(), 0);
        assert_eq!(parsed.diagnostics.warning_count(), 0);
        assert!(ir_equal(&parsed.ir.unwrap(), &bell_ir()));
    }

    #[test]
    fn out_of_range_qubit_reports_error_and_absent_ir() {
        let parsed = parse_qiskit("qc = QuantumCircuit(1)\nqc.h(3)\n");
        assert!(parsed.ir.is_none());
        assert_eq!(parsed.diagnostics.error_count(), 1);
        assert_eq!(parsed.diagnostics.errors[0].code, DiagCode::IndexOutOfRange);
        assert_eq!(parsed.diagnostics.errors[0].line, 2);
    }

    #[test]
    fn unused_import_is_one_warning() {
        let src = BELL.replace(
            "from qiskit import QuantumCircuit",
            "from qiskit import QuantumCircuit, transpile",
        );
        let parsed = parse_qiskit(&src);
        assert_eq!(parsed.diagnostics.error_count(), 0);
        assert_eq!(parsed.diagnostics.warning_count(), 1);
        let w = &parsed.diagnostics.warnings[0];
        assert_eq!(w.code, DiagCode::UnusedImport);
        assert!(w.message.contains("transpile"));
        assert!(parsed.ir.is_some());
    }

    #[test]
    fn measure_all_grows_classical_register() {
        let parsed = parse_qiskit("qc = QuantumCircuit(3)\nqc.h(0)\nqc.measure_all()\n");
        let ir = parsed.ir.unwrap();
        assert_eq!(ir.num_clbits(), 3);
        assert_eq!(ir.measure_pairs(), vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn second_circuit_is_unsupported() {
        let parsed = parse_qiskit("qc = QuantumCircuit(1)\nqc2 = QuantumCircuit(1)\n");
        assert!(parsed.ir.is_none());
        assert_eq!(
            parsed.diagnostics.errors[0].code,
            DiagCode::UnsupportedConstruct
        );
    }

    #[test]
    fn loops_are_unsupported_and_bodies_skipped() {
        let parsed =
            parse_qiskit("qc = QuantumCircuit(2)\nfor i in range(2):\n    qc.h(i)\nqc.x(0)\n");
        assert!(parsed.ir.is_none());
        assert_eq!(parsed.diagnostics.error_count(), 1);
        assert_eq!(
            parsed.diagnostics.errors[0].code,
            DiagCode::UnsupportedConstruct
        );
    }

    #[test]
    fn unknown_method_is_an_error_but_noise_is_a_warning() {
        let parsed = parse_qiskit("qc = QuantumCircuit(1)\nqc.reset(0)\n");
        assert_eq!(parsed.diagnostics.errors[0].code, DiagCode::UnknownGate);

        let parsed = parse_qiskit("qc = QuantumCircuit(1)\nqc.h(0)\nprint(qc)\nqc.draw()\n");
        assert_eq!(parsed.diagnostics.error_count(), 0);
        assert_eq!(parsed.diagnostics.warning_count(), 2);
        assert!(parsed.ir.is_some());
    }

    #[test]
    fn undefined_circuit_name_is_an_error() {
        let parsed = parse_qiskit("qc.h(0)\n");
        assert_eq!(parsed.diagnostics.errors[0].code, DiagCode::UndefinedName);
    }

    #[test]
    fn broken_statements_report_at_least_one_error_each_and_no_partial_ir() {
        let parsed = parse_qiskit("qc = QuantumCircuit(2, 2)\nqc.h()\n= 3\nqc.foo(0)\nqc.x(0)\n");
        assert!(parsed.diagnostics.error_count() >= 3);
        assert!(parsed.ir.is_none());

        // An unterminated call also surfaces as a syntax error.
        let dangling = parse_qiskit("qc = QuantumCircuit(2, 2)\nqc.h(\n");
        assert!(dangling.diagnostics.error_count() >= 1);
        assert!(dangling.ir.is_none());
    }

    #[test]
    fn rotation_angles_resolve_pi() {
        let parsed =
            parse_qiskit("qc = QuantumCircuit(1)\nqc.rx(pi / 2, 0)\nqc.rz(-3 * pi / 4, 0)\n");
        let ir = parsed.ir.unwrap();
        assert_eq!(ir.ops()[0].angle, Some(std::f64::consts::PI / 2.0));
        assert_eq!(ir.ops()[1].angle, Some(-3.0 * std::f64::consts::PI / 4.0));
    }

    #[test]
    fn barrier_records_op_and_warns() {
        let parsed = parse_qiskit("qc = QuantumCircuit(2)\nqc.barrier()\nqc.barrier(0)\n");
        let warnings = &parsed.diagnostics.warnings;
        assert_eq!(
            warnings
                .iter()
                .filter(|w| w.code == DiagCode::BarrierNote)
                .count(),
            2
        );
        let ir = parsed.ir.unwrap();
        assert_eq!(ir.ops().len(), 2);
        assert_eq!(ir.ops()[0].qubits, vec![0, 1]);
        assert_eq!(ir.ops()[1].qubits, vec![0]);
    }

    #[test]
    fn unused_variable_vs_skipped_assignment() {
        let parsed = parse_qiskit(
            "qc = QuantumCircuit(1)\nshots = 100\nbackend = get_backend()\nrun(qc, backend)\n",
        );
        assert_eq!(parsed.diagnostics.error_count(), 0);
        let codes: Vec<DiagCode> = parsed.diagnostics.warnings.iter().map(|w| w.code).collect();
        // `shots` never used -> unused variable; `backend` used by run(...) ->
        // skipped statement; run(...) itself -> skipped statement.
        assert_eq!(
            codes,
            vec![
                DiagCode::UnusedVariable,
                DiagCode::SkippedStatement,
                DiagCode::SkippedStatement
            ]
        );
    }

    #[test]
    fn parsing_is_deterministic() {
        let a = parse_qiskit(BELL);
        let b = parse_qiskit(BELL);
        assert_eq!(a, b);
    }

    #[test]
    fn annotate_census_for_bell() {
        let parsed = parse_qiskit(BELL);
        let annotated = annotate(BELL, parsed.ir.as_ref().unwrap());
        assert!(annotated.contains("# qubits: 2"));
        assert!(annotated.contains("# clbits: 2"));
        assert!(annotated.contains("# gates: H:1, CNOT:1, Measure:2"));
        assert!(annotated.contains("# measurements: q0 -> c0, q1 -> c1"));
        assert!(annotated.ends_with(BELL));
    }

    #[test]
    fn annotate_empty_census() {
        let annotated = annotate("", &CircuitIr::new(0, 0));
        assert!(annotated.contains("# qubits: 0"));
        assert!(annotated.contains("# clbits: 0"));
        assert!(annotated.contains("# gates: (none)"));
        assert!(annotated.contains("# measurements: (none)"));
    }

    #[test]
    fn annotate_ghz_census() {
        let src = "qc = QuantumCircuit(3, 3)\nqc.h(0)\nqc.cx(0, 1)\nqc.cx(1, 2)\n\
                   qc.measure(0, 0)\nqc.measure(1, 1)\nqc.measure(2, 2)\n";
        let parsed = parse_qiskit(src);
        let annotated = annotate(src, parsed.ir.as_ref().unwrap());
        assert!(annotated.contains("# gates: H:1, CNOT:2, Measure:3"));
    }
}
