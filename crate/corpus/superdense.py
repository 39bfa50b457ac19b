# Superdense coding of the two-bit message "11": prepare a shared Bell
# pair, encode both bits on qubit 0, decode, measure. The outcome is
# deterministic.
from qiskit import QuantumCircuit

qc = QuantumCircuit(2, 2)
qc.h(0)
qc.cx(0, 1)
qc.z(0)
qc.x(0)
qc.cx(0, 1)
qc.h(0)
qc.measure(0, 0)
qc.measure(1, 1)
