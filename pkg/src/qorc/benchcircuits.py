"""Benchmark circuits for the fidelity experiment.

bv, rep and hsp are standard textbook constructions at the stated sizes;
circ and circ2 are seeded random circuits produced by the documented
procedures below, so every run sees identical benchmark files.
"""

from __future__ import annotations

import numpy as np

from .circuit import Circuit, Gate

_CIRC_SEED = 20240711
_CIRC2_SEED = 20240712


def bv(secret: str = "1111111111") -> Circuit:
    """Bernstein-Vazirani with an ancilla on the last qubit."""
    n = len(secret)
    g = []
    g += [Gate("h", (q,)) for q in range(n)]
    g += [Gate("x", (n,)), Gate("h", (n,))]
    g += [Gate("cx", (q, n)) for q, bit in enumerate(secret) if bit == "1"]
    g += [Gate("h", (q,)) for q in range(n)]
    return Circuit(n + 1, tuple(g), tuple((q, q) for q in range(n)))


def rep(n: int = 5) -> Circuit:
    """Repetition-code encoder: fan a |+> state out over n qubits."""
    g = [Gate("h", (0,))] + [Gate("cx", (0, q)) for q in range(1, n)]
    return Circuit(n, tuple(g), tuple((q, q) for q in range(n)))


def hsp(n: int = 4) -> Circuit:
    """Simon-style hidden-subgroup circuit on n=2k qubits, secret 11."""
    k = n // 2
    g = [Gate("h", (q,)) for q in range(k)]
    g += [Gate("cx", (q, k + q)) for q in range(k)]
    g.append(Gate("cx", (0, n - 1)))  # secret-string mixing
    g += [Gate("h", (q,)) for q in range(k)]
    return Circuit(n, tuple(g), tuple((q, q) for q in range(n)))


def grover(n: int = 3, iterations: int = 2) -> Circuit:
    """Grover search marking |111>, two iterations (optimal for 3 qubits)."""
    g = [Gate("h", (q,)) for q in range(n)]
    for _ in range(iterations):
        # oracle: phase-flip |111>
        g += [Gate("h", (2,)), Gate("ccx", (0, 1, 2)), Gate("h", (2,))]
        # diffusion
        g += [Gate("h", (q,)) for q in range(n)]
        g += [Gate("x", (q,)) for q in range(n)]
        g += [Gate("h", (2,)), Gate("ccx", (0, 1, 2)), Gate("h", (2,))]
        g += [Gate("x", (q,)) for q in range(n)]
        g += [Gate("h", (q,)) for q in range(n)]
    return Circuit(n, tuple(g), tuple((q, q) for q in range(n)))


def circ() -> Circuit:
    """Random 7-qubit circuit, 40 gates, mixing Clifford and t/rz rotations."""
    rng = np.random.default_rng(_CIRC_SEED)
    n, g = 7, []
    kinds_1q = ("h", "s", "x", "t", "rz")
    for _ in range(40):
        if rng.random() < 0.35:
            a, b = rng.choice(n, 2, replace=False)
            g.append(Gate("cx", (int(a), int(b))))
        else:
            kind = kinds_1q[rng.integers(len(kinds_1q))]
            q = int(rng.integers(n))
            params = (float(rng.uniform(0.1, 3.0)),) if kind == "rz" else ()
            g.append(Gate(kind, (q,), params))
    return Circuit(n, tuple(g), tuple((q, q) for q in range(n)))


def circ2() -> Circuit:
    """Random 8-qubit Clifford circuit with exactly 12 CX gates."""
    rng = np.random.default_rng(_CIRC2_SEED)
    n, g = 8, []
    kinds_1q = ("h", "s", "sdg", "x", "z")
    cx_left = 12
    total = 36
    for i in range(total):
        remaining = total - i
        if cx_left and (remaining == cx_left or rng.random() < cx_left / remaining):
            a, b = rng.choice(n, 2, replace=False)
            g.append(Gate("cx", (int(a), int(b))))
            cx_left -= 1
        else:
            g.append(Gate(kinds_1q[rng.integers(len(kinds_1q))], (int(rng.integers(n)),)))
    return Circuit(n, tuple(g), tuple((q, q) for q in range(n)))


def benchmark_circuits() -> dict[str, Circuit]:
    return {
        "bv": bv(),
        "rep": rep(),
        "hsp": hsp(),
        "grover": grover(),
        "circ": circ(),
        "circ2": circ2(),
    }
