//! Python bindings for the qbridge transpiler.
//!
//! Exposes the circuit model, both dialect frontends, the code generators,
//! the statevector simulator, and the quality metric. Build with
//! `cargo build -p qbridge-py --release` and import the resulting shared
//! library as the `qbridge` module (see `python/smoke_test.py`).

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use qbridge_core::cirq::parse_cirq;
use qbridge_core::codegen::{emit_cirq, emit_qiskit};
use qbridge_core::diagnostics::Diagnostics;
use qbridge_core::ir::{ir_equal, CircuitIr, GateOp};
use qbridge_core::qiskit::{annotate as annotate_core, parse_qiskit};
use qbridge_core::quality;
use qbridge_core::sim;

fn value_error<E: std::fmt::Display>(err: E) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// A dialect-neutral quantum circuit.
#[pyclass(name = "Circuit", skip_from_py_object)]
#[derive(Clone)]
struct PyCircuit {
    inner: CircuitIr,
}

impl PyCircuit {
    fn push(&mut self, op: GateOp) -> PyResult<()> {
        self.inner.push(op).map_err(value_error)
    }
}

#[pymethods]
impl PyCircuit {
    #[new]
    #[pyo3(signature = (num_qubits, num_clbits = 0))]
    fn new(num_qubits: usize, num_clbits: usize) -> Self {
        PyCircuit {
            inner: CircuitIr::new(num_qubits, num_clbits),
        }
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.inner.num_qubits()
    }

    #[getter]
    fn num_clbits(&self) -> usize {
        self.inner.num_clbits()
    }

    fn __len__(&self) -> usize {
        self.inner.ops().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Circuit(num_qubits={}, num_clbits={}, ops={})",
            self.inner.num_qubits(),
            self.inner.num_clbits(),
            self.inner.ops().len()
        )
    }

    fn h(&mut self, qubit: usize) -> PyResult<()> {
        self.push(GateOp::h(qubit))
    }

    fn x(&mut self, qubit: usize) -> PyResult<()> {
        self.push(GateOp::x(qubit))
    }

    fn y(&mut self, qubit: usize) -> PyResult<()> {
        self.push(GateOp::y(qubit))
    }

    fn z(&mut self, qubit: usize) -> PyResult<()> {
        self.push(GateOp::z(qubit))
    }

    fn s(&mut self, qubit: usize) -> PyResult<()> {
        self.push(GateOp::s(qubit))
    }

    fn sdg(&mut self, qubit: usize) -> PyResult<()> {
        self.push(GateOp::sdg(qubit))
    }

    fn t(&mut self, qubit: usize) -> PyResult<()> {
        self.push(GateOp::t(qubit))
    }

    fn tdg(&mut self, qubit: usize) -> PyResult<()> {
        self.push(GateOp::tdg(qubit))
    }

    fn rx(&mut self, qubit: usize, angle: f64) -> PyResult<()> {
        self.push(GateOp::rx(qubit, angle))
    }

    fn ry(&mut self, qubit: usize, angle: f64) -> PyResult<()> {
        self.push(GateOp::ry(qubit, angle))
    }

    fn rz(&mut self, qubit: usize, angle: f64) -> PyResult<()> {
        self.push(GateOp::rz(qubit, angle))
    }

    fn cnot(&mut self, control: usize, target: usize) -> PyResult<()> {
        self.push(GateOp::cnot(control, target))
    }

    fn cz(&mut self, a: usize, b: usize) -> PyResult<()> {
        self.push(GateOp::cz(a, b))
    }

    fn swap(&mut self, a: usize, b: usize) -> PyResult<()> {
        self.push(GateOp::swap(a, b))
    }

    fn ccx(&mut self, control_a: usize, control_b: usize, target: usize) -> PyResult<()> {
        self.push(GateOp::ccx(control_a, control_b, target))
    }

    fn measure(&mut self, qubit: usize, clbit: usize) -> PyResult<()> {
        self.push(GateOp::measure(qubit, clbit))
    }

    #[pyo3(signature = (*qubits))]
    fn barrier(&mut self, qubits: Vec<usize>) -> PyResult<()> {
        self.push(GateOp::barrier(qubits))
    }

    /// Semantic equality: barriers ignored, grouped measurements expanded,
    /// angles compared with a small tolerance.
    fn equals(&self, other: &PyCircuit) -> bool {
        ir_equal(&self.inner, &other.inner)
    }

    #[pyo3(signature = (include_simulation = false, repetitions = 1000))]
    fn to_cirq(&self, include_simulation: bool, repetitions: u64) -> PyResult<String> {
        emit_cirq(&self.inner, include_simulation, repetitions).map_err(value_error)
    }

    fn to_qiskit(&self) -> PyResult<String> {
        emit_qiskit(&self.inner).map_err(value_error)
    }
}

fn diagnostics_dict<'py>(
    py: Python<'py>,
    diagnostics: &Diagnostics,
) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    for (key, list) in [
        ("errors", &diagnostics.errors),
        ("warnings", &diagnostics.warnings),
    ] {
        let entries = PyList::empty(py);
        for d in list {
            let entry = PyDict::new(py);
            entry.set_item("code", d.code.to_string())?;
            entry.set_item("message", &d.message)?;
            entry.set_item("line", d.line)?;
            entries.append(entry)?;
        }
        dict.set_item(key, entries)?;
    }
    Ok(dict)
}

/// Parse Qiskit-dialect text. Returns `(circuit_or_None, diagnostics)`.
#[pyfunction(name = "parse_qiskit")]
fn py_parse_qiskit<'py>(
    py: Python<'py>,
    source: &str,
) -> PyResult<(Option<PyCircuit>, Bound<'py, PyDict>)> {
    let parsed = parse_qiskit(source);
    Ok((
        parsed.ir.map(|inner| PyCircuit { inner }),
        diagnostics_dict(py, &parsed.diagnostics)?,
    ))
}

/// Parse Cirq-dialect text. Returns
/// `(circuit_or_None, diagnostics, patterns)` where `patterns` is the list
/// of detected pattern category names.
#[pyfunction(name = "parse_cirq")]
fn py_parse_cirq<'py>(
    py: Python<'py>,
    source: &str,
) -> PyResult<(Option<PyCircuit>, Bound<'py, PyDict>, Vec<String>)> {
    let parsed = parse_cirq(source);
    let patterns = parsed.patterns.iter().map(|p| format!("{p:?}")).collect();
    Ok((
        parsed.ir.map(|inner| PyCircuit { inner }),
        diagnostics_dict(py, &parsed.diagnostics)?,
        patterns,
    ))
}

/// Prepend the input-specification comment block to a Qiskit source.
#[pyfunction]
fn annotate(source: &str) -> PyResult<String> {
    let parsed = parse_qiskit(source);
    match parsed.ir {
        Some(ir) => Ok(annotate_core(source, &ir)),
        None => Err(PyValueError::new_err(
            "source does not parse in the qiskit dialect",
        )),
    }
}

/// Rule-based transpilation between dialect names ("qiskit", "cirq").
#[pyfunction(signature = (source, from_dialect, to_dialect, simulate = false, repetitions = 1000))]
fn transpile(
    source: &str,
    from_dialect: &str,
    to_dialect: &str,
    simulate: bool,
    repetitions: u64,
) -> PyResult<String> {
    let ir = match from_dialect {
        "qiskit" => parse_qiskit(source).ir,
        "cirq" => parse_cirq(source).ir,
        other => return Err(PyValueError::new_err(format!("unknown dialect: {other}"))),
    }
    .ok_or_else(|| PyValueError::new_err("source does not parse as a circuit"))?;
    match to_dialect {
        "cirq" => emit_cirq(&ir, simulate, repetitions).map_err(value_error),
        "qiskit" => emit_qiskit(&ir).map_err(value_error),
        other => Err(PyValueError::new_err(format!("unknown dialect: {other}"))),
    }
}

/// Statevector amplitudes (qubit 0 is the least-significant bit).
#[pyfunction]
fn statevector(circuit: &PyCircuit) -> PyResult<Vec<Complex64>> {
    Ok(sim::statevector(&circuit.inner)
        .map_err(value_error)?
        .amplitudes()
        .to_vec())
}

/// Full unitary as a nested list, row-major.
#[pyfunction]
fn unitary(circuit: &PyCircuit) -> PyResult<Vec<Vec<Complex64>>> {
    sim::unitary(&circuit.inner).map_err(value_error)
}

/// Exact outcome probabilities keyed by classical-bit string.
#[pyfunction]
fn outcome_distribution(circuit: &PyCircuit) -> PyResult<std::collections::BTreeMap<String, f64>> {
    sim::outcome_distribution(&circuit.inner).map_err(value_error)
}

/// Equivalence verdict as a dict with keys `equivalent`, `mode`,
/// `max_deviation`, and `global_phase`.
#[pyfunction(signature = (a, b, tol = 1e-9))]
fn equivalent<'py>(
    py: Python<'py>,
    a: &PyCircuit,
    b: &PyCircuit,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let verdict = sim::equivalent(&a.inner, &b.inner, tol).map_err(value_error)?;
    let dict = PyDict::new(py);
    dict.set_item("equivalent", verdict.equivalent)?;
    dict.set_item("mode", verdict.mode.to_string())?;
    dict.set_item("max_deviation", verdict.max_deviation)?;
    dict.set_item("global_phase", verdict.global_phase)?;
    Ok(dict)
}

/// Quality score breakdown plus its explanation text.
#[pyfunction(name = "score")]
fn py_score<'py>(py: Python<'py>, source: &str) -> PyResult<Bound<'py, PyDict>> {
    let quality = quality::score(source);
    let json = serde_json::to_value(&quality).map_err(value_error)?;
    let dict = PyDict::new(py);
    if let serde_json::Value::Object(fields) = json {
        for (key, value) in fields {
            match value {
                serde_json::Value::Number(n) if n.is_u64() => {
                    dict.set_item(key, n.as_u64())?;
                }
                serde_json::Value::Number(n) => {
                    dict.set_item(key, n.as_f64())?;
                }
                serde_json::Value::Array(items) => {
                    let names: Vec<String> = items
                        .iter()
                        .filter_map(|v| v.as_str().map(String::from))
                        .collect();
                    dict.set_item(key, names)?;
                }
                other => {
                    dict.set_item(key, other.to_string())?;
                }
            }
        }
    }
    dict.set_item("explanation", quality::explain(&quality))?;
    Ok(dict)
}

#[pymodule]
fn qbridge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCircuit>()?;
    m.add_function(wrap_pyfunction!(py_parse_qiskit, m)?)?;
    m.add_function(wrap_pyfunction!(py_parse_cirq, m)?)?;
    m.add_function(wrap_pyfunction!(annotate, m)?)?;
    m.add_function(wrap_pyfunction!(transpile, m)?)?;
    m.add_function(wrap_pyfunction!(statevector, m)?)?;
    m.add_function(wrap_pyfunction!(unitary, m)?)?;
    m.add_function(wrap_pyfunction!(outcome_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(py_score, m)?)?;
    Ok(())
}
