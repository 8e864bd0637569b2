"""Dense statevector simulation for oracle evaluation (<= 14 qubits)."""

from __future__ import annotations

import math

import numpy as np

from ..circuit import Circuit, Gate
from ..errors import TooManyQubitsError
from .compile import NoiseModel
from .dist import OutcomeDistribution

MAX_STATEVECTOR_QUBITS = 14

_SQ2 = 1.0 / math.sqrt(2.0)

_H = np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)
_SDG = _S.conj().T
_T = np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=complex)
_TDG = _T.conj().T

_PAULI_1Q = (_X, _Y, _Z)


def _rz(t):
    return np.array([[np.exp(-0.5j * t), 0], [0, np.exp(0.5j * t)]], dtype=complex)


def _rx(t):
    c, s = math.cos(t / 2), math.sin(t / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def _ry(t):
    c, s = math.cos(t / 2), math.sin(t / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _u3(theta, phi, lam):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ],
        dtype=complex,
    )


_CX = np.eye(4, dtype=complex)
_CX[2:, 2:] = _X  # control = first operand, big-endian axis order
_SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)
_CCX = np.eye(8, dtype=complex)
_CCX[6:, 6:] = _X


def _gate_matrix(g: Gate) -> np.ndarray:
    k = g.kind
    if k == "h":
        return _H
    if k == "x":
        return _X
    if k == "y":
        return _Y
    if k == "z":
        return _Z
    if k == "s":
        return _S
    if k == "sdg":
        return _SDG
    if k == "t":
        return _T
    if k == "tdg":
        return _TDG
    if k in ("rz", "u1"):
        return _rz(g.params[0]) if k == "rz" else np.diag([1.0, np.exp(1j * g.params[0])])
    if k == "rx":
        return _rx(g.params[0])
    if k == "ry":
        return _ry(g.params[0])
    if k == "u2":
        return _u3(math.pi / 2, *g.params)
    if k == "u3":
        return _u3(*g.params)
    if k == "cx":
        return _CX
    if k == "swap":
        return _SWAP
    if k == "ccx":
        return _CCX
    raise ValueError(f"no unitary for gate {k!r}")


def _apply(psi: np.ndarray, mat: np.ndarray, qubits: tuple[int, ...]) -> np.ndarray:
    k = len(qubits)
    op = mat.reshape((2,) * (2 * k))
    psi = np.tensordot(op, psi, axes=(tuple(range(k, 2 * k)), qubits))
    return np.moveaxis(psi, tuple(range(k)), qubits)


def _apply_reset(psi: np.ndarray, q: int, rng) -> np.ndarray:
    p0 = float(np.sum(np.abs(np.take(psi, 0, axis=q)) ** 2))
    proj = np.zeros_like(psi)
    if rng.random() < p0:
        idx = [slice(None)] * psi.ndim
        idx[q] = 0
        proj[tuple(idx)] = np.take(psi, 0, axis=q)
        norm = math.sqrt(p0)
    else:
        idx = [slice(None)] * psi.ndim
        idx[q] = 0
        proj[tuple(idx)] = np.take(psi, 1, axis=q)
        norm = math.sqrt(max(1.0 - p0, 1e-300))
    return proj / norm


def statevector(c: Circuit, rng=None) -> np.ndarray:
    """Final state as a (2,)*n tensor, qubit 0 on axis 0. Measures ignored.

    Resets collapse stochastically and need an rng; purely unitary circuits
    are rng-free and deterministic.
    """
    if c.num_qubits > MAX_STATEVECTOR_QUBITS:
        raise TooManyQubitsError(f"{c.num_qubits} qubits exceeds statevector cap")
    psi = np.zeros((2,) * c.num_qubits, dtype=complex)
    psi[(0,) * c.num_qubits] = 1.0
    for g in c.gates:
        if g.kind == "barrier":
            continue
        if g.kind == "reset":
            if rng is None:
                rng = np.random.default_rng(0)
            psi = _apply_reset(psi, g.qubits[0], rng)
        else:
            psi = _apply(psi, _gate_matrix(g), g.qubits)
    return psi


def _sample_counts(psi: np.ndarray, measures, num_clbits, shots, rng, p_read=None):
    n = psi.ndim
    probs = np.abs(psi.reshape(-1)) ** 2
    probs = probs / probs.sum()
    draws = rng.choice(probs.size, size=shots, p=probs)
    counts: dict[str, int] = {}
    flips = {}
    if p_read:
        for q, cb in measures:
            pr = p_read.get(q, 0.0)
            if pr > 0.0:
                flips[cb] = rng.random(shots) < pr
    for i, d in enumerate(draws):
        bits = ["0"] * num_clbits
        for q, cb in measures:
            bit = (int(d) >> (n - 1 - q)) & 1  # axis 0 is the most significant
            if cb in flips and flips[cb][i]:
                bit ^= 1
            bits[num_clbits - 1 - cb] = "1" if bit else "0"
        key = "".join(bits)
        counts[key] = counts.get(key, 0) + 1
    return counts


def sim_statevector(c: Circuit, shots: int, seed) -> OutcomeDistribution:
    """Exact unitary evolution with terminal measurement sampling."""
    if c.num_qubits > MAX_STATEVECTOR_QUBITS:
        raise TooManyQubitsError(f"{c.num_qubits} qubits exceeds statevector cap")
    rng = np.random.default_rng(seed)
    has_reset = any(g.kind == "reset" for g in c.gates)
    if not c.measures:
        return OutcomeDistribution(shots, {"": shots} if shots else {})
    if not has_reset:
        psi = statevector(c)
        counts = _sample_counts(psi, c.measures, c.num_clbits, shots, rng)
        return OutcomeDistribution(shots, counts)
    # resets collapse mid-circuit: sample trajectories
    counts: dict[str, int] = {}
    T = min(shots, 256)
    per = [shots // T + (1 if i < shots % T else 0) for i in range(T)]
    for block in per:
        psi = statevector(c, rng)
        for k, v in _sample_counts(psi, c.measures, c.num_clbits, block, rng).items():
            counts[k] = counts.get(k, 0) + v
    return OutcomeDistribution(shots, counts)


def sim_statevector_noisy(c: Circuit, nm: NoiseModel, shots: int, seed) -> OutcomeDistribution:
    """Pauli-trajectory noise in the statevector simulator.

    Uses min(shots, 256) noise trajectories, each contributing an equal share
    of the shots, so fidelity semantics match the stabilizer path.
    """
    if c.num_qubits > MAX_STATEVECTOR_QUBITS:
        raise TooManyQubitsError(f"{c.num_qubits} qubits exceeds statevector cap")
    rng = np.random.default_rng(seed)
    if not c.measures:
        return OutcomeDistribution(shots, {"": shots} if shots else {})
    counts: dict[str, int] = {}
    T = min(shots, 256)
    per = [shots // T + (1 if i < shots % T else 0) for i in range(T)]
    for block in per:
        psi = np.zeros((2,) * c.num_qubits, dtype=complex)
        psi[(0,) * c.num_qubits] = 1.0
        for g in c.gates:
            if g.kind == "barrier":
                continue
            if g.kind == "reset":
                psi = _apply_reset(psi, g.qubits[0], rng)
                continue
            psi = _apply(psi, _gate_matrix(g), g.qubits)
            if len(g.qubits) == 1:
                p = nm.p1.get(g.qubits[0], 0.0)
                if p > 0.0 and rng.random() < p:
                    psi = _apply(psi, _PAULI_1Q[rng.integers(3)], g.qubits)
            elif len(g.qubits) == 2:
                edge = tuple(sorted(g.qubits))
                p = nm.p2.get(edge, 0.0)
                reps = 3 if g.kind == "swap" else 1
                for _ in range(reps):
                    if p > 0.0 and rng.random() < p:
                        pat = int(rng.integers(1, 16))
                        for bit, q in ((pat & 3, g.qubits[0]), ((pat >> 2) & 3, g.qubits[1])):
                            if bit:
                                psi = _apply(psi, _PAULI_1Q[bit - 1], (q,))
        for k, v in _sample_counts(
            psi, c.measures, c.num_clbits, block, rng, nm.p_read
        ).items():
            counts[k] = counts.get(k, 0) + v
    return OutcomeDistribution(shots, counts)
