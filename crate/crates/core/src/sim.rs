//! Statevector simulation and the functional-equivalence oracle.
//!
//! Bit ordering is fixed throughout: qubit 0 is the least-significant bit of
//! a basis-state index, and classical-bit strings print clbit 0 leftmost.
//! The two source ecosystems disagree on printing conventions, so pinning
//! one here is what makes cross-dialect comparison meaningful.
//!
//! Distributions are exact (no sampling), which keeps every check
//! deterministic.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use thiserror::Error;

use crate::ir::{CircuitIr, GateKind, GateOp};

/// Default tolerance for both comparison modes.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

const MAX_STATEVECTOR_QUBITS: usize = 20;
const MAX_UNITARY_QUBITS: usize = 10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("circuit contains measurement ops")]
    MeasurementPresent,
    #[error("{got} qubits exceed the {limit}-qubit limit for this operation")]
    TooManyQubits { limit: usize, got: usize },
    #[error("qubit {qubit} is used after being measured")]
    NonTerminalMeasurement { qubit: usize },
    #[error("circuits have different qubit counts ({a} vs {b})")]
    QubitCountMismatch { a: usize, b: usize },
}

/// A pure state over `num_qubits` qubits: 2^n complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    fn zero_state(num_qubits: usize) -> Self {
        let mut amps = vec![Complex64::ZERO; 1 << num_qubits];
        amps[0] = Complex64::ONE;
        Statevector { num_qubits, amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// 2x2 matrix of the single-qubit gate kinds.
fn single_qubit_matrix(kind: GateKind, angle: Option<f64>) -> [[Complex64; 2]; 2] {
    let i = Complex64::I;
    let one = Complex64::ONE;
    let zero = Complex64::ZERO;
    match kind {
        GateKind::H => {
            let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
            [[h, h], [h, -h]]
        }
        GateKind::X => [[zero, one], [one, zero]],
        GateKind::Y => [[zero, -i], [i, zero]],
        GateKind::Z => [[one, zero], [zero, -one]],
        GateKind::S => [[one, zero], [zero, i]],
        GateKind::Sdg => [[one, zero], [zero, -i]],
        GateKind::T => [
            [one, zero],
            [
                zero,
                Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
            ],
        ],
        GateKind::Tdg => [
            [one, zero],
            [
                zero,
                Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
            ],
        ],
        // Rotation convention: R(theta) = exp(-i * theta * P / 2).
        GateKind::Rx => {
            let t = angle.expect("rotation angle") / 2.0;
            let (c, s) = (Complex64::new(t.cos(), 0.0), -i * t.sin());
            [[c, s], [s, c]]
        }
        GateKind::Ry => {
            let t = angle.expect("rotation angle") / 2.0;
            let (c, s) = (Complex64::new(t.cos(), 0.0), Complex64::new(t.sin(), 0.0));
            [[c, -s], [s, c]]
        }
        GateKind::Rz => {
            let t = angle.expect("rotation angle") / 2.0;
            [
                [Complex64::from_polar(1.0, -t), zero],
                [zero, Complex64::from_polar(1.0, t)],
            ]
        }
        other => unreachable!("{other} is not a single-qubit gate"),
    }
}

/// Apply one gate in place. Barriers are inert; measurements must have been
/// rejected or stripped by the caller.
fn apply_op(amps: &mut [Complex64], op: &GateOp) {
    match op.kind {
        GateKind::Barrier => {}
        GateKind::Measure => unreachable!("measurement reached the gate applier"),
        GateKind::Cnot => {
            let (c, t) = (1usize << op.qubits[0], 1usize << op.qubits[1]);
            for idx in 0..amps.len() {
                if idx & c != 0 && idx & t == 0 {
                    amps.swap(idx, idx | t);
                }
            }
        }
        GateKind::Cz => {
            let (a, b) = (1usize << op.qubits[0], 1usize << op.qubits[1]);
            for (idx, amp) in amps.iter_mut().enumerate() {
                if idx & a != 0 && idx & b != 0 {
                    *amp = -*amp;
                }
            }
        }
        GateKind::Swap => {
            let (a, b) = (1usize << op.qubits[0], 1usize << op.qubits[1]);
            for idx in 0..amps.len() {
                if idx & a != 0 && idx & b == 0 {
                    amps.swap(idx, idx ^ a ^ b);
                }
            }
        }
        GateKind::Ccx => {
            let (c1, c2, t) = (
                1usize << op.qubits[0],
                1usize << op.qubits[1],
                1usize << op.qubits[2],
            );
            for idx in 0..amps.len() {
                if idx & c1 != 0 && idx & c2 != 0 && idx & t == 0 {
                    amps.swap(idx, idx | t);
                }
            }
        }
        _ => {
            let m = single_qubit_matrix(op.kind, op.angle);
            let t = 1usize << op.qubits[0];
            for idx in 0..amps.len() {
                if idx & t == 0 {
                    let (lo, hi) = (amps[idx], amps[idx | t]);
                    amps[idx] = m[0][0] * lo + m[0][1] * hi;
                    amps[idx | t] = m[1][0] * lo + m[1][1] * hi;
                }
            }
        }
    }
}

fn check_qubit_limit(ir: &CircuitIr, limit: usize) -> Result<(), SimError> {
    if ir.num_qubits() > limit {
        return Err(SimError::TooManyQubits {
            limit,
            got: ir.num_qubits(),
        });
    }
    Ok(())
}

/// The state reached from |0...0> by applying every gate in order.
/// Measurements are rejected; use [`outcome_distribution`] for measured
/// circuits.
pub fn statevector(ir: &CircuitIr) -> Result<Statevector, SimError> {
    check_qubit_limit(ir, MAX_STATEVECTOR_QUBITS)?;
    if ir.has_measurements() {
        return Err(SimError::MeasurementPresent);
    }
    let mut state = Statevector::zero_state(ir.num_qubits());
    for op in ir.ops() {
        apply_op(&mut state.amps, op);
    }
    Ok(state)
}

/// The full 2^n x 2^n unitary of a measurement-free circuit, built by
/// applying the circuit to every basis state. Row-major: `u[row][col]`.
pub fn unitary(ir: &CircuitIr) -> Result<Vec<Vec<Complex64>>, SimError> {
    check_qubit_limit(ir, MAX_UNITARY_QUBITS)?;
    if ir.has_measurements() {
        return Err(SimError::MeasurementPresent);
    }
    let dim = 1usize << ir.num_qubits();
    let mut u = vec![vec![Complex64::ZERO; dim]; dim];
    let mut column = vec![Complex64::ZERO; dim];
    for j in 0..dim {
        column.fill(Complex64::ZERO);
        column[j] = Complex64::ONE;
        for op in ir.ops() {
            apply_op(&mut column, op);
        }
        for (row, amp) in column.iter().enumerate() {
            u[row][j] = *amp;
        }
    }
    Ok(u)
}

/// Measurement pairs of the normalized circuit, after checking that every
/// measured qubit is terminal: no gate touches it afterwards (re-measuring
/// is allowed and deterministic).
fn terminal_measure_pairs(normalized: &CircuitIr) -> Result<Vec<(usize, usize)>, SimError> {
    let mut measured: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    for op in normalized.ops() {
        match op.kind {
            GateKind::Measure => {
                let clbits = op.clbits.as_deref().unwrap_or(&[]);
                for (&q, &c) in op.qubits.iter().zip(clbits) {
                    measured.push(q);
                    pairs.push((q, c));
                }
            }
            _ => {
                for &q in &op.qubits {
                    if measured.contains(&q) {
                        return Err(SimError::NonTerminalMeasurement { qubit: q });
                    }
                }
            }
        }
    }
    Ok(pairs)
}

/// Exact outcome probabilities over the classical register, keyed by bit
/// string (clbit 0 leftmost). Unmeasured clbits read 0; zero-probability
/// outcomes are omitted.
pub fn outcome_distribution(ir: &CircuitIr) -> Result<BTreeMap<String, f64>, SimError> {
    check_qubit_limit(ir, MAX_STATEVECTOR_QUBITS)?;
    let normalized = ir.normalized();
    let pairs = terminal_measure_pairs(&normalized)?;

    let mut gates_only = CircuitIr::new(ir.num_qubits(), ir.num_clbits());
    for op in normalized.ops() {
        if op.kind != GateKind::Measure {
            gates_only.push(op.clone()).expect("op was already valid");
        }
    }
    let state = statevector(&gates_only)?;

    let mut dist: BTreeMap<String, f64> = BTreeMap::new();
    for (idx, amp) in state.amplitudes().iter().enumerate() {
        let p = amp.norm_sqr();
        if p == 0.0 {
            continue;
        }
        let mut bits = vec![b'0'; ir.num_clbits()];
        for &(q, c) in &pairs {
            bits[c] = if idx >> q & 1 == 1 { b'1' } else { b'0' };
        }
        let key = String::from_utf8(bits).expect("ascii bits");
        *dist.entry(key).or_insert(0.0) += p;
    }
    Ok(dist)
}

/// How two circuits were compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparisonMode {
    Unitary,
    Distribution,
}

impl std::fmt::Display for ComparisonMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComparisonMode::Unitary => f.write_str("Unitary"),
            ComparisonMode::Distribution => f.write_str("Distribution"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub mode: ComparisonMode,
    /// Unitary mode: max entrywise deviation after removing global phase.
    /// Distribution mode: total variation distance. Infinite when the
    /// measurement layouts are structurally incomparable.
    pub max_deviation: f64,
    /// The global phase removed before comparing, in Unitary mode.
    pub global_phase: Option<f64>,
}

/// Decide whether two circuits behave the same, up to `tol`.
///
/// Measurement-free pairs of at most 10 qubits are compared as unitaries
/// with the global phase quotiented out (phase fixed at the
/// largest-magnitude entry of the first unitary). Everything else is
/// compared by exact outcome distribution, which requires identical
/// measurement layouts.
pub fn equivalent(a: &CircuitIr, b: &CircuitIr, tol: f64) -> Result<EquivalenceVerdict, SimError> {
    if a.num_qubits() != b.num_qubits() {
        return Err(SimError::QubitCountMismatch {
            a: a.num_qubits(),
            b: b.num_qubits(),
        });
    }
    let unmeasured = !a.has_measurements() && !b.has_measurements();
    if unmeasured && a.num_qubits() <= MAX_UNITARY_QUBITS {
        let (ua, ub) = (unitary(&a.normalized())?, unitary(&b.normalized())?);
        let (mut best_row, mut best_col, mut best_mag) = (0, 0, -1.0);
        for (r, row) in ua.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                if entry.norm() > best_mag {
                    (best_row, best_col, best_mag) = (r, c, entry.norm());
                }
            }
        }
        let anchor_a = ua[best_row][best_col];
        let anchor_b = ub[best_row][best_col];
        let phase_factor = if anchor_b.norm() > 0.0 {
            let f = anchor_a / anchor_a.norm() * (anchor_b / anchor_b.norm()).conj();
            f / f.norm()
        } else {
            Complex64::ONE
        };
        let mut max_deviation: f64 = 0.0;
        for (row_a, row_b) in ua.iter().zip(&ub) {
            for (ea, eb) in row_a.iter().zip(row_b) {
                max_deviation = max_deviation.max((ea - phase_factor * eb).norm());
            }
        }
        return Ok(EquivalenceVerdict {
            equivalent: max_deviation <= tol,
            mode: ComparisonMode::Unitary,
            max_deviation,
            global_phase: Some(phase_factor.arg()),
        });
    }

    // Distribution mode. The measurement layouts must agree, otherwise the
    // distributions are not over the same bits and the pair is not
    // comparable (reported as infinitely far apart).
    let mut pairs_a = terminal_measure_pairs(&a.normalized())?;
    let mut pairs_b = terminal_measure_pairs(&b.normalized())?;
    pairs_a.sort_unstable();
    pairs_a.dedup();
    pairs_b.sort_unstable();
    pairs_b.dedup();
    if pairs_a != pairs_b || a.num_clbits() != b.num_clbits() {
        return Ok(EquivalenceVerdict {
            equivalent: false,
            mode: ComparisonMode::Distribution,
            max_deviation: f64::INFINITY,
            global_phase: None,
        });
    }

    let dist_a = outcome_distribution(a)?;
    let dist_b = outcome_distribution(b)?;
    let keys: std::collections::BTreeSet<&String> = dist_a.keys().chain(dist_b.keys()).collect();
    let l1: f64 = keys
        .into_iter()
        .map(|k| (dist_a.get(k).unwrap_or(&0.0) - dist_b.get(k).unwrap_or(&0.0)).abs())
        .sum();
    let tvd = l1 / 2.0;
    Ok(EquivalenceVerdict {
        equivalent: tvd <= tol,
        mode: ComparisonMode::Distribution,
        max_deviation: tvd,
        global_phase: None,
    })
}
