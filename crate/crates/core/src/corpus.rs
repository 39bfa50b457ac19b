//! Built-in reference circuits.
//!
//! These back the one-shot prompt exemplar, the tests, and the shipped
//! `corpus/` source files. The controlled-phase rotations in the QFT are
//! spelled out as CNOT/Rz sequences because the gate set has no native
//! controlled-phase.

use crate::ir::{CircuitIr, GateOp};
use crate::lex::pi_fraction_value;

/// Two-qubit Bell pair: H, CNOT, measure both.
pub fn bell_ir() -> CircuitIr {
    let mut c = CircuitIr::new(2, 2);
    for op in [
        GateOp::h(0),
        GateOp::cnot(0, 1),
        GateOp::measure(0, 0),
        GateOp::measure(1, 1),
    ] {
        c.push(op).expect("bell circuit is valid");
    }
    c
}

/// n-qubit GHZ chain with full measurement.
pub fn ghz_ir(n: usize) -> CircuitIr {
    let mut c = CircuitIr::new(n, n);
    if n > 0 {
        c.push(GateOp::h(0)).expect("valid");
    }
    for q in 0..n.saturating_sub(1) {
        c.push(GateOp::cnot(q, q + 1)).expect("valid");
    }
    for q in 0..n {
        c.push(GateOp::measure(q, q)).expect("valid");
    }
    c
}

/// Superdense coding of the message "11": encode on the shared Bell pair,
/// decode, measure. The outcome is deterministic.
pub fn superdense_ir() -> CircuitIr {
    let mut c = CircuitIr::new(2, 2);
    for op in [
        GateOp::h(0),
        GateOp::cnot(0, 1),
        GateOp::z(0),
        GateOp::x(0),
        GateOp::cnot(0, 1),
        GateOp::h(0),
        GateOp::measure(0, 0),
        GateOp::measure(1, 1),
    ] {
        c.push(op).expect("superdense circuit is valid");
    }
    c
}

/// Controlled phase of `theta` from `control` onto `target`, as the standard
/// CNOT/Rz sandwich (equal to the controlled-phase gate up to global phase).
fn controlled_phase(
    c: &mut CircuitIr,
    theta_num: i64,
    theta_den: u64,
    control: usize,
    target: usize,
) {
    let half = pi_fraction_value(theta_num, theta_den * 2);
    c.push(GateOp::cnot(control, target)).expect("valid");
    c.push(GateOp::rz(target, -half)).expect("valid");
    c.push(GateOp::cnot(control, target)).expect("valid");
    c.push(GateOp::rz(target, half)).expect("valid");
    c.push(GateOp::rz(control, half)).expect("valid");
}

/// Three-qubit quantum Fourier transform without the final swaps.
pub fn qft3_ir() -> CircuitIr {
    let mut c = CircuitIr::new(3, 3);
    c.push(GateOp::h(0)).expect("valid");
    controlled_phase(&mut c, 1, 2, 1, 0); // pi/2
    controlled_phase(&mut c, 1, 4, 2, 0); // pi/4
    c.push(GateOp::h(1)).expect("valid");
    controlled_phase(&mut c, 1, 2, 2, 1); // pi/2
    c.push(GateOp::h(2)).expect("valid");
    for q in 0..3 {
        c.push(GateOp::measure(q, q)).expect("valid");
    }
    c
}
