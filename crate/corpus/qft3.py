# Three-qubit quantum Fourier transform without the final swaps. Each
# controlled phase is spelled out as a CNOT/Rz sandwich (equivalent up to
# global phase).
from qiskit import QuantumCircuit
from math import pi

qc = QuantumCircuit(3, 3)
qc.h(0)
# controlled phase pi/2 from qubit 1 onto qubit 0
qc.cx(1, 0)
qc.rz(-pi / 4, 0)
qc.cx(1, 0)
qc.rz(pi / 4, 0)
qc.rz(pi / 4, 1)
# controlled phase pi/4 from qubit 2 onto qubit 0
qc.cx(2, 0)
qc.rz(-pi / 8, 0)
qc.cx(2, 0)
qc.rz(pi / 8, 0)
qc.rz(pi / 8, 2)
qc.h(1)
# controlled phase pi/2 from qubit 2 onto qubit 1
qc.cx(2, 1)
qc.rz(-pi / 4, 1)
qc.cx(2, 1)
qc.rz(pi / 4, 1)
qc.rz(pi / 4, 2)
qc.h(2)
qc.measure(0, 0)
qc.measure(1, 1)
qc.measure(2, 2)
