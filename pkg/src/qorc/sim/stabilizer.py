"""Public stabilizer simulation entry points."""

from __future__ import annotations

from ..circuit import Circuit, is_clifford
from ..errors import NotCliffordError
from .compile import NoiseModel, compile_program, run_program
from .dist import OutcomeDistribution


def sim_clifford_noisy(c: Circuit, nm: NoiseModel, shots: int, seed) -> OutcomeDistribution:
    """Sample a Clifford circuit under stochastic Pauli + readout-flip noise.

    Trajectory-exact: each shot corresponds to one realization of every
    noise event and measurement coin.
    """
    if not is_clifford(c):
        raise NotCliffordError("circuit contains non-Clifford gates")
    if shots < 0:
        raise ValueError("shots must be non-negative")
    prog = compile_program(c, nm)
    return run_program(prog, shots, seed)


def sim_clifford(c: Circuit, shots: int, seed) -> OutcomeDistribution:
    """Noiseless Clifford sampling; the zero-noise limit of sim_clifford_noisy."""
    return sim_clifford_noisy(c, NoiseModel.zero(), shots, seed)
