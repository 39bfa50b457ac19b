//! Dialect-neutral circuit representation.
//!
//! A [`CircuitIr`] is an ordered list of [`GateOp`]s over a qubit register and
//! a classical-bit register of fixed sizes. Both frontends produce it, both
//! code generators consume it, and the simulator executes it. Values are
//! plain data: build one, then treat it as immutable and share freely.

use std::fmt;

use thiserror::Error;

/// Absolute tolerance used when comparing rotation angles.
pub const ANGLE_TOLERANCE: f64 = 1e-12;

/// The gate vocabulary shared by both dialects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Rx,
    Ry,
    Rz,
    Cnot,
    Cz,
    Swap,
    Ccx,
    Measure,
    Barrier,
}

impl GateKind {
    pub const ALL: [GateKind; 17] = [
        GateKind::H,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Rx,
        GateKind::Ry,
        GateKind::Rz,
        GateKind::Cnot,
        GateKind::Cz,
        GateKind::Swap,
        GateKind::Ccx,
        GateKind::Measure,
        GateKind::Barrier,
    ];

    /// Exact qubit operand count, or `None` for the variadic ops
    /// (Measure and Barrier accept one or more qubits).
    pub fn arity(self) -> Option<usize> {
        match self {
            GateKind::H
            | GateKind::X
            | GateKind::Y
            | GateKind::Z
            | GateKind::S
            | GateKind::Sdg
            | GateKind::T
            | GateKind::Tdg
            | GateKind::Rx
            | GateKind::Ry
            | GateKind::Rz => Some(1),
            GateKind::Cnot | GateKind::Cz | GateKind::Swap => Some(2),
            GateKind::Ccx => Some(3),
            GateKind::Measure | GateKind::Barrier => None,
        }
    }

    pub fn is_rotation(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Ry | GateKind::Rz)
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::S => "S",
            GateKind::Sdg => "Sdg",
            GateKind::T => "T",
            GateKind::Tdg => "Tdg",
            GateKind::Rx => "Rx",
            GateKind::Ry => "Ry",
            GateKind::Rz => "Rz",
            GateKind::Cnot => "CNOT",
            GateKind::Cz => "CZ",
            GateKind::Swap => "SWAP",
            GateKind::Ccx => "CCX",
            GateKind::Measure => "Measure",
            GateKind::Barrier => "Barrier",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which register an index refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Register {
    Qubit,
    Clbit,
}

impl fmt::Display for Register {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Register::Qubit => f.write_str("qubit"),
            Register::Clbit => f.write_str("clbit"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IrError {
    #[error("{register} index {index} out of range (register size {size})")]
    IndexOutOfRange {
        register: Register,
        index: usize,
        size: usize,
    },
    #[error("{kind} expects {expected} qubit operand(s), got {got}")]
    ArityMismatch {
        kind: GateKind,
        expected: usize,
        got: usize,
    },
    #[error("duplicate {register} operand {index}")]
    DuplicateOperand { register: Register, index: usize },
    #[error("{kind} requires a rotation angle")]
    MissingAngle { kind: GateKind },
    #[error("{kind} angle must be finite")]
    NonFiniteAngle { kind: GateKind },
    #[error("{kind} does not take an angle")]
    UnexpectedAngle { kind: GateKind },
    #[error("Measure requires classical-bit targets")]
    MissingClbits,
    #[error("{kind} does not take classical-bit targets")]
    UnexpectedClbits { kind: GateKind },
    #[error("Measure maps {qubits} qubit(s) onto {clbits} classical bit(s)")]
    ClbitCountMismatch { qubits: usize, clbits: usize },
}

/// One instruction: a gate kind, its qubit operands, an optional rotation
/// angle in radians, and (for Measure) the classical bits written.
#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub angle: Option<f64>,
    pub clbits: Option<Vec<usize>>,
}

impl GateOp {
    pub fn single(kind: GateKind, qubit: usize) -> Self {
        GateOp {
            kind,
            qubits: vec![qubit],
            angle: None,
            clbits: None,
        }
    }

    pub fn h(qubit: usize) -> Self {
        Self::single(GateKind::H, qubit)
    }

    pub fn x(qubit: usize) -> Self {
        Self::single(GateKind::X, qubit)
    }

    pub fn y(qubit: usize) -> Self {
        Self::single(GateKind::Y, qubit)
    }

    pub fn z(qubit: usize) -> Self {
        Self::single(GateKind::Z, qubit)
    }

    pub fn s(qubit: usize) -> Self {
        Self::single(GateKind::S, qubit)
    }

    pub fn sdg(qubit: usize) -> Self {
        Self::single(GateKind::Sdg, qubit)
    }

    pub fn t(qubit: usize) -> Self {
        Self::single(GateKind::T, qubit)
    }

    pub fn tdg(qubit: usize) -> Self {
        Self::single(GateKind::Tdg, qubit)
    }

    pub fn rotation(kind: GateKind, qubit: usize, angle: f64) -> Self {
        GateOp {
            kind,
            qubits: vec![qubit],
            angle: Some(angle),
            clbits: None,
        }
    }

    pub fn rx(qubit: usize, angle: f64) -> Self {
        Self::rotation(GateKind::Rx, qubit, angle)
    }

    pub fn ry(qubit: usize, angle: f64) -> Self {
        Self::rotation(GateKind::Ry, qubit, angle)
    }

    pub fn rz(qubit: usize, angle: f64) -> Self {
        Self::rotation(GateKind::Rz, qubit, angle)
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        GateOp {
            kind: GateKind::Cnot,
            qubits: vec![control, target],
            angle: None,
            clbits: None,
        }
    }

    pub fn cz(a: usize, b: usize) -> Self {
        GateOp {
            kind: GateKind::Cz,
            qubits: vec![a, b],
            angle: None,
            clbits: None,
        }
    }

    pub fn swap(a: usize, b: usize) -> Self {
        GateOp {
            kind: GateKind::Swap,
            qubits: vec![a, b],
            angle: None,
            clbits: None,
        }
    }

    pub fn ccx(control_a: usize, control_b: usize, target: usize) -> Self {
        GateOp {
            kind: GateKind::Ccx,
            qubits: vec![control_a, control_b, target],
            angle: None,
            clbits: None,
        }
    }

    pub fn measure(qubit: usize, clbit: usize) -> Self {
        GateOp {
            kind: GateKind::Measure,
            qubits: vec![qubit],
            angle: None,
            clbits: Some(vec![clbit]),
        }
    }

    pub fn measure_many(qubits: Vec<usize>, clbits: Vec<usize>) -> Self {
        GateOp {
            kind: GateKind::Measure,
            qubits,
            angle: None,
            clbits: Some(clbits),
        }
    }

    pub fn barrier(qubits: Vec<usize>) -> Self {
        GateOp {
            kind: GateKind::Barrier,
            qubits,
            angle: None,
            clbits: None,
        }
    }

    /// Structural validity, independent of any register sizes: operand
    /// count matches the kind, operands are distinct, the angle is present
    /// exactly for rotations, and clbits exactly for Measure.
    pub fn validate(&self) -> Result<(), IrError> {
        match self.kind.arity() {
            Some(n) if self.qubits.len() != n => {
                return Err(IrError::ArityMismatch {
                    kind: self.kind,
                    expected: n,
                    got: self.qubits.len(),
                });
            }
            None if self.qubits.is_empty() => {
                return Err(IrError::ArityMismatch {
                    kind: self.kind,
                    expected: 1,
                    got: 0,
                });
            }
            _ => {}
        }
        for (i, q) in self.qubits.iter().enumerate() {
            if self.qubits[..i].contains(q) {
                return Err(IrError::DuplicateOperand {
                    register: Register::Qubit,
                    index: *q,
                });
            }
        }
        if self.kind.is_rotation() {
            match self.angle {
                None => return Err(IrError::MissingAngle { kind: self.kind }),
                Some(a) if !a.is_finite() => {
                    return Err(IrError::NonFiniteAngle { kind: self.kind });
                }
                _ => {}
            }
        } else if self.angle.is_some() {
            return Err(IrError::UnexpectedAngle { kind: self.kind });
        }
        if self.kind == GateKind::Measure {
            let clbits = self.clbits.as_ref().ok_or(IrError::MissingClbits)?;
            if clbits.len() != self.qubits.len() {
                return Err(IrError::ClbitCountMismatch {
                    qubits: self.qubits.len(),
                    clbits: clbits.len(),
                });
            }
            for (i, c) in clbits.iter().enumerate() {
                if clbits[..i].contains(c) {
                    return Err(IrError::DuplicateOperand {
                        register: Register::Clbit,
                        index: *c,
                    });
                }
            }
        } else if self.clbits.is_some() {
            return Err(IrError::UnexpectedClbits { kind: self.kind });
        }
        Ok(())
    }
}

/// A circuit: register sizes plus the ordered op list. Every op is checked
/// on insertion, so a constructed value always satisfies the invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitIr {
    num_qubits: usize,
    num_clbits: usize,
    ops: Vec<GateOp>,
}

impl CircuitIr {
    pub fn new(num_qubits: usize, num_clbits: usize) -> Self {
        CircuitIr {
            num_qubits,
            num_clbits,
            ops: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_clbits(&self) -> usize {
        self.num_clbits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Extend the classical register. Only grows; used by the frontends for
    /// constructs that implicitly add classical bits.
    pub(crate) fn grow_clbits(&mut self, min_size: usize) {
        self.num_clbits = self.num_clbits.max(min_size);
    }

    /// Validate `op` against this circuit's registers and append it.
    pub fn push(&mut self, op: GateOp) -> Result<(), IrError> {
        op.validate()?;
        for &q in &op.qubits {
            if q >= self.num_qubits {
                return Err(IrError::IndexOutOfRange {
                    register: Register::Qubit,
                    index: q,
                    size: self.num_qubits,
                });
            }
        }
        if let Some(clbits) = &op.clbits {
            for &c in clbits {
                if c >= self.num_clbits {
                    return Err(IrError::IndexOutOfRange {
                        register: Register::Clbit,
                        index: c,
                        size: self.num_clbits,
                    });
                }
            }
        }
        self.ops.push(op);
        Ok(())
    }

    /// Builder-style [`push`](Self::push).
    pub fn with_op(mut self, op: GateOp) -> Result<Self, IrError> {
        self.push(op)?;
        Ok(self)
    }

    pub fn has_measurements(&self) -> bool {
        self.ops.iter().any(|op| op.kind == GateKind::Measure)
    }

    /// All qubit-to-clbit measurement pairs in op order, expanding
    /// multi-qubit measurements.
    pub fn measure_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for op in &self.ops {
            if op.kind == GateKind::Measure {
                let clbits = op.clbits.as_deref().unwrap_or(&[]);
                for (&q, &c) in op.qubits.iter().zip(clbits) {
                    pairs.push((q, c));
                }
            }
        }
        pairs
    }

    /// Canonical form used for comparison: barriers dropped, multi-qubit
    /// measurements expanded one per qubit in operand order.
    pub fn normalized(&self) -> CircuitIr {
        let mut out = CircuitIr::new(self.num_qubits, self.num_clbits);
        for op in &self.ops {
            match op.kind {
                GateKind::Barrier => {}
                GateKind::Measure => {
                    let clbits = op.clbits.as_deref().unwrap_or(&[]);
                    for (&q, &c) in op.qubits.iter().zip(clbits) {
                        out.ops.push(GateOp::measure(q, c));
                    }
                }
                _ => out.ops.push(op.clone()),
            }
        }
        out
    }

    /// Count of ops per gate kind, in [`GateKind::ALL`] order, zero counts
    /// omitted.
    pub fn census(&self) -> Vec<(GateKind, usize)> {
        GateKind::ALL
            .iter()
            .filter_map(|&kind| {
                let n = self.ops.iter().filter(|op| op.kind == kind).count();
                (n > 0).then_some((kind, n))
            })
            .collect()
    }
}

fn op_equal(a: &GateOp, b: &GateOp) -> bool {
    if a.kind != b.kind || a.qubits != b.qubits || a.clbits != b.clbits {
        return false;
    }
    match (a.angle, b.angle) {
        (None, None) => true,
        (Some(x), Some(y)) => (x - y).abs() <= ANGLE_TOLERANCE,
        _ => false,
    }
}

/// Semantic equality: register sizes match and the normalized op sequences
/// match, with angles compared at [`ANGLE_TOLERANCE`].
pub fn ir_equal(a: &CircuitIr, b: &CircuitIr) -> bool {
    if a.num_qubits != b.num_qubits || a.num_clbits != b.num_clbits {
        return false;
    }
    let (a, b) = (a.normalized(), b.normalized());
    a.ops.len() == b.ops.len() && a.ops.iter().zip(&b.ops).all(|(x, y)| op_equal(x, y))
}
