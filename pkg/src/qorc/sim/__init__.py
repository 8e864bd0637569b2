"""Stabilizer and statevector simulators with a shared noise model.

The stabilizer kernels have two interchangeable implementations (numba JIT
and pure numpy) selected by the QORC_NUMBA environment variable; both are
bit-identical given the same seed. KERNEL_BACKEND names the active one.
"""

from .compile import KERNEL_BACKEND, NoiseModel
from .dist import OutcomeDistribution, fidelity, total_variation
from .stabilizer import sim_clifford, sim_clifford_noisy
from .statevector import (
    MAX_STATEVECTOR_QUBITS,
    sim_statevector,
    sim_statevector_noisy,
    statevector,
)

__all__ = [
    "KERNEL_BACKEND",
    "MAX_STATEVECTOR_QUBITS",
    "NoiseModel",
    "OutcomeDistribution",
    "fidelity",
    "sim_clifford",
    "sim_clifford_noisy",
    "sim_statevector",
    "sim_statevector_noisy",
    "statevector",
    "total_variation",
]
