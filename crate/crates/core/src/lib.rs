//! Transpilation between a Qiskit dialect and a Cirq dialect.
//!
//! The crate is organized around a dialect-neutral circuit representation
//! ([`CircuitIr`]): the frontends ([`qiskit`], [`cirq`]) parse source text into
//! it, [`codegen`] prints it back out in either dialect, and [`sim`] decides
//! whether two circuits behave the same. On top of that sit the Cirq code
//! quality metric ([`quality`]), a chat-completion driver with a
//! diagnose-and-retry loop ([`llm`]), and a benchmark harness ([`bench`]).

pub mod bench;
pub mod cirq;
pub mod codegen;
pub mod corpus;
pub mod diagnostics;
pub mod ir;
mod lex;
pub mod llm;
pub mod qiskit;
pub mod quality;
pub mod sim;

pub use cirq::{parse_cirq, CirqParse, DetectedPatterns, PatternCategory};
pub use codegen::{emit_cirq, emit_qiskit, EmitError};
pub use diagnostics::{DiagCode, Diagnostic, Diagnostics};
pub use ir::{ir_equal, CircuitIr, GateKind, GateOp, IrError};
pub use qiskit::{annotate, parse_qiskit, QiskitParse};
pub use quality::{explain, score, QualityScore};
pub use sim::{
    equivalent, outcome_distribution, statevector, unitary, ComparisonMode, EquivalenceVerdict,
    SimError, Statevector,
};
