//! Rule-based code generation from [`CircuitIr`] back to either dialect.
//!
//! Output is deterministic byte-for-byte, ends with exactly one newline, and
//! round-trips through the matching frontend to an [`ir_equal`] circuit.
//! Variable names are fixed (`q`, `circuit`, `simulator` on the Cirq side,
//! `qc` on the Qiskit side) so golden tests stay stable.
//!
//! [`ir_equal`]: crate::ir::ir_equal

use std::fmt::Write;

use thiserror::Error;

use crate::ir::{CircuitIr, GateKind};
use crate::lex::pi_fraction_value;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmitError {
    /// Reserved for IR ops a target dialect cannot express; unreachable with
    /// the current gate set.
    #[error("{kind} has no {dialect} dialect form")]
    UnsupportedOp {
        kind: GateKind,
        dialect: &'static str,
    },
}

/// Denominators tried when rendering an angle as a fraction of pi.
const PI_DENOMINATORS: [u64; 6] = [1, 2, 3, 4, 6, 8];

/// `Some((k, m))` when `angle` is within 1e-12 of `k * pi / m` for a small
/// denominator, smallest denominator first.
fn pi_fraction(angle: f64) -> Option<(i64, u64)> {
    for m in PI_DENOMINATORS {
        let k = (angle * m as f64 / std::f64::consts::PI).round();
        if k.abs() > 1e6 {
            continue;
        }
        let k = k as i64;
        if (angle - pi_fraction_value(k, m)).abs() <= 1e-12 {
            return Some((k, m));
        }
    }
    None
}

/// Render an angle: symbolic when it is a clean fraction of pi, otherwise a
/// decimal with enough digits to round-trip exactly. Returns the text and
/// whether the pi constant was used.
fn render_angle(angle: f64, pi_name: &str) -> (String, bool) {
    match pi_fraction(angle) {
        Some((0, _)) => ("0.0".to_string(), false),
        Some((k, m)) => {
            let mut s = String::new();
            if k < 0 {
                s.push('-');
            }
            if k.abs() != 1 {
                write!(s, "{} * ", k.abs()).unwrap();
            }
            s.push_str(pi_name);
            if m != 1 {
                write!(s, " / {m}").unwrap();
            }
            (s, true)
        }
        None => (format!("{:.16e}", angle), false),
    }
}

/// Emit Cirq-dialect text. With `include_simulation`, a simulator
/// construction and a run call with the given repetition count are appended,
/// which is what gives the output full pattern coverage.
pub fn emit_cirq(
    ir: &CircuitIr,
    include_simulation: bool,
    repetitions: u64,
) -> Result<String, EmitError> {
    let mut body = String::new();
    let mut uses_pi = false;

    if ir.num_qubits() > 0 {
        let _ = writeln!(body, "q = cirq.LineQubit.range({})", ir.num_qubits());
    }
    body.push_str("circuit = cirq.Circuit()\n");

    for op in ir.ops() {
        match op.kind {
            GateKind::H | GateKind::X | GateKind::Y | GateKind::Z | GateKind::S | GateKind::T => {
                let _ = writeln!(
                    body,
                    "circuit.append(cirq.{}(q[{}]))",
                    op.kind.name(),
                    op.qubits[0]
                );
            }
            GateKind::Sdg => {
                let _ = writeln!(body, "circuit.append(cirq.S(q[{}])**-1)", op.qubits[0]);
            }
            GateKind::Tdg => {
                let _ = writeln!(body, "circuit.append(cirq.T(q[{}])**-1)", op.qubits[0]);
            }
            GateKind::Rx | GateKind::Ry | GateKind::Rz => {
                let name = match op.kind {
                    GateKind::Rx => "rx",
                    GateKind::Ry => "ry",
                    _ => "rz",
                };
                let (angle, symbolic) =
                    render_angle(op.angle.expect("rotation carries an angle"), "np.pi");
                uses_pi |= symbolic;
                let _ = writeln!(
                    body,
                    "circuit.append(cirq.{name}({angle})(q[{}]))",
                    op.qubits[0]
                );
            }
            GateKind::Cnot | GateKind::Cz | GateKind::Swap => {
                let name = match op.kind {
                    GateKind::Cnot => "CNOT",
                    GateKind::Cz => "CZ",
                    _ => "SWAP",
                };
                let _ = writeln!(
                    body,
                    "circuit.append(cirq.{name}(q[{}], q[{}]))",
                    op.qubits[0], op.qubits[1]
                );
            }
            GateKind::Ccx => {
                let _ = writeln!(
                    body,
                    "circuit.append(cirq.CCX(q[{}], q[{}], q[{}]))",
                    op.qubits[0], op.qubits[1], op.qubits[2]
                );
            }
            GateKind::Measure => {
                let clbits = op.clbits.as_deref().unwrap_or(&[]);
                for (&q, &c) in op.qubits.iter().zip(clbits) {
                    let _ = writeln!(body, "circuit.append(cirq.measure(q[{q}], key=\"c{c}\"))");
                }
            }
            GateKind::Barrier => {
                // No Cirq equivalent; preserved as a comment.
                let qubits: Vec<String> = op.qubits.iter().map(|q| format!("q{q}")).collect();
                let _ = writeln!(body, "# barrier: {}", qubits.join(", "));
            }
        }
    }

    let mut out = String::from("import cirq\n");
    if uses_pi {
        out.push_str("import numpy as np\n");
    }
    out.push('\n');
    out.push_str(&body);
    if include_simulation {
        out.push_str("\nsimulator = cirq.Simulator()\n");
        let _ = writeln!(out, "simulator.run(circuit, repetitions={repetitions})");
    }
    Ok(out)
}

/// Emit Qiskit-dialect text.
pub fn emit_qiskit(ir: &CircuitIr) -> Result<String, EmitError> {
    let mut body = String::new();
    let mut uses_pi = false;

    let _ = writeln!(
        body,
        "qc = QuantumCircuit({}, {})",
        ir.num_qubits(),
        ir.num_clbits()
    );

    for op in ir.ops() {
        match op.kind {
            GateKind::H
            | GateKind::X
            | GateKind::Y
            | GateKind::Z
            | GateKind::S
            | GateKind::Sdg
            | GateKind::T
            | GateKind::Tdg => {
                let _ = writeln!(
                    body,
                    "qc.{}({})",
                    op.kind.name().to_lowercase(),
                    op.qubits[0]
                );
            }
            GateKind::Rx | GateKind::Ry | GateKind::Rz => {
                let name = op.kind.name().to_lowercase();
                let (angle, symbolic) =
                    render_angle(op.angle.expect("rotation carries an angle"), "pi");
                uses_pi |= symbolic;
                let _ = writeln!(body, "qc.{name}({angle}, {})", op.qubits[0]);
            }
            GateKind::Cnot => {
                let _ = writeln!(body, "qc.cx({}, {})", op.qubits[0], op.qubits[1]);
            }
            GateKind::Cz => {
                let _ = writeln!(body, "qc.cz({}, {})", op.qubits[0], op.qubits[1]);
            }
            GateKind::Swap => {
                let _ = writeln!(body, "qc.swap({}, {})", op.qubits[0], op.qubits[1]);
            }
            GateKind::Ccx => {
                let _ = writeln!(
                    body,
                    "qc.ccx({}, {}, {})",
                    op.qubits[0], op.qubits[1], op.qubits[2]
                );
            }
            GateKind::Measure => {
                let clbits = op.clbits.as_deref().unwrap_or(&[]);
                for (&q, &c) in op.qubits.iter().zip(clbits) {
                    let _ = writeln!(body, "qc.measure({q}, {c})");
                }
            }
            GateKind::Barrier => {
                let qubits: Vec<String> = op.qubits.iter().map(usize::to_string).collect();
                let _ = writeln!(body, "qc.barrier({})", qubits.join(", "));
            }
        }
    }

    let mut out = String::from("from qiskit import QuantumCircuit\n");
    if uses_pi {
        out.push_str("from math import pi\n");
    }
    out.push('\n');
    out.push_str(&body);
    Ok(out)
}
