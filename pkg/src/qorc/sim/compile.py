"""Lowering circuits to stabilizer-kernel programs and sampling shots.

A circuit plus a NoiseModel compiles once into an opcode array plus a list
of random-variable groups (measurement coins, Pauli noise events, readout
flips). The structural pass runs once per circuit; per-shot work reduces to
sampling the variable vector and evaluating affine forms.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from ..circuit import ANGLE_TOL, HALF_PI, Circuit, Gate
from ..device import Backend
from ..errors import MissingEdgeRateError, NotCliffordError
from .dist import OutcomeDistribution

OP_H = 0
OP_S = 1
OP_SDG = 2
OP_X = 3
OP_Y = 4
OP_Z = 5
OP_CX = 6
OP_SWAP = 7
OP_RESET = 8
OP_MEASURE = 9

KIND_PAULI = 0
KIND_BERNOULLI = 1
KIND_COIN = 2

_OPCODE_1Q = {"h": OP_H, "s": OP_S, "sdg": OP_SDG, "x": OP_X, "y": OP_Y, "z": OP_Z}

CHUNK_SHOTS = 4096


def _select_kernels():
    flag = os.environ.get("QORC_NUMBA", "").strip().lower()
    if flag in ("0", "false", "off", "no"):
        from . import _tableau_numpy as mod

        return mod, "numpy"
    try:
        from . import _tableau_numba as mod

        return mod, "numba"
    except ImportError:
        if flag in ("1", "true", "on", "yes"):
            raise
        from . import _tableau_numpy as mod

        return mod, "numpy"


_KERNELS, KERNEL_BACKEND = _select_kernels()


@dataclass(frozen=True)
class NoiseModel:
    p1: dict[int, float] = field(default_factory=dict)
    p2: dict[tuple[int, int], float] = field(default_factory=dict)
    p_read: dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        for d in (self.p1, self.p2, self.p_read):
            for v in d.values():
                if not 0.0 <= v <= 1.0:
                    raise ValueError(f"noise probability {v} outside [0, 1]")

    @staticmethod
    def zero() -> "NoiseModel":
        return NoiseModel()

    @staticmethod
    def from_backend(b: Backend) -> "NoiseModel":
        return NoiseModel(
            p1=dict(b.err1q),
            p2={tuple(sorted(e)): p for e, p in b.err2q.items()},
            p_read=dict(b.readout_err),
        )

    def scaled(self, alpha: float) -> "NoiseModel":
        s = lambda d: {k: min(v * alpha, 1.0) for k, v in d.items()}
        return NoiseModel(s(self.p1), s(self.p2), s(self.p_read))


def _rz_steps_words(k: int, q: int) -> list[Gate]:
    return {0: [], 1: [Gate("s", (q,))], 2: [Gate("z", (q,))], 3: [Gate("sdg", (q,))]}[k % 4]


def _snapped_steps(angle: float, kind: str) -> int:
    x = angle / HALF_PI
    k = math.ceil(x - 0.5) if x >= 0 else math.floor(x + 0.5)
    if abs(angle - k * HALF_PI) > ANGLE_TOL:
        raise NotCliffordError(f"{kind} angle {angle} is not a multiple of pi/2")
    return k


def clifford_words(g: Gate) -> list[Gate]:
    """Rewrite a Clifford gate as {h,s,sdg,x,y,z,cx,swap} words (up to phase)."""
    kind = g.kind
    if kind in _OPCODE_1Q or kind in ("cx", "swap"):
        return [g]
    q = g.qubits[0]
    if kind in ("rz", "u1"):
        return _rz_steps_words(_snapped_steps(g.params[0], kind), q)
    if kind == "rx":
        inner = _rz_steps_words(_snapped_steps(g.params[0], kind), q)
        return [Gate("h", (q,)), *inner, Gate("h", (q,))] if inner else []
    if kind == "ry":
        inner = _rz_steps_words(_snapped_steps(g.params[0], kind), q)
        if not inner:
            return []
        return [Gate("sdg", (q,)), Gate("h", (q,)), *inner, Gate("h", (q,)), Gate("s", (q,))]
    if kind in ("u2", "u3"):
        if kind == "u2":
            theta, phi, lam = HALF_PI, g.params[0], g.params[1]
        else:
            theta, phi, lam = g.params
        words = _rz_steps_words(_snapped_steps(lam, kind), q)
        words += clifford_words(Gate("ry", (q,), (theta,)))
        words += _rz_steps_words(_snapped_steps(phi, kind), q)
        return words
    if kind in ("t", "tdg"):
        raise NotCliffordError(f"{kind} is not a Clifford gate")
    raise NotCliffordError(f"unsupported gate {kind!r} in stabilizer path")


@dataclass
class CompiledProgram:
    num_qubits: int
    ops: np.ndarray  # (n_ops, 5) int64: opcode, a, b, var0, var1
    g_start: np.ndarray
    g_kind: np.ndarray
    g_arity: np.ndarray
    g_prob: np.ndarray
    n_vars: int
    clbits: list[int]  # clbit index per measured outcome, in measure order
    num_clbits: int


def compile_program(c: Circuit, nm: NoiseModel) -> CompiledProgram:
    ops: list[tuple[int, int, int, int, int]] = []
    g_start: list[int] = []
    g_kind: list[int] = []
    g_arity: list[int] = []
    g_prob: list[float] = []
    nvars = 0

    def alloc_group(kind: int, arity: int, prob: float) -> int:
        nonlocal nvars
        start = nvars
        nvars += arity
        g_start.append(start)
        g_kind.append(kind)
        g_arity.append(arity)
        g_prob.append(prob)
        return start

    def pauli_group_2q(prob: float) -> int:
        return alloc_group(KIND_PAULI, 4, prob)

    for g in c.gates:
        if g.kind == "barrier":
            continue
        if g.kind == "reset":
            v = alloc_group(KIND_COIN, 1, 0.5)
            ops.append((OP_RESET, g.qubits[0], 0, v, -1))
            continue
        for w in clifford_words(g):
            if w.kind in _OPCODE_1Q:
                q = w.qubits[0]
                p = nm.p1.get(q, 0.0)
                v0 = alloc_group(KIND_PAULI, 2, p) if p > 0.0 else -1
                ops.append((_OPCODE_1Q[w.kind], q, 0, v0, -1))
            else:
                a, b = w.qubits
                edge = (a, b) if a < b else (b, a)
                if nm.p2 and edge not in nm.p2:
                    raise MissingEdgeRateError(f"no 2q error rate for edge {edge}")
                p = nm.p2.get(edge, 0.0)
                opc = OP_CX if w.kind == "cx" else OP_SWAP
                if p > 0.0:
                    v0 = pauli_group_2q(p)
                    if opc == OP_SWAP:
                        pauli_group_2q(p)
                        pauli_group_2q(p)
                else:
                    v0 = -1
                ops.append((opc, a, b, v0, -1))
    clbits = []
    for q, cb in c.measures:
        coin = alloc_group(KIND_COIN, 1, 0.5)
        pr = nm.p_read.get(q, 0.0)
        v1 = alloc_group(KIND_BERNOULLI, 1, pr) if pr > 0.0 else -1
        ops.append((OP_MEASURE, q, 0, coin, v1))
        clbits.append(cb)

    ops_arr = np.asarray(ops, dtype=np.int64).reshape(len(ops), 5)
    return CompiledProgram(
        num_qubits=c.num_qubits,
        ops=ops_arr,
        g_start=np.asarray(g_start, dtype=np.int64),
        g_kind=np.asarray(g_kind, dtype=np.int64),
        g_arity=np.asarray(g_arity, dtype=np.int64),
        g_prob=np.asarray(g_prob, dtype=np.float64),
        n_vars=nvars,
        clbits=clbits,
        num_clbits=c.num_clbits,
    )


def run_program(prog: CompiledProgram, shots: int, seed) -> OutcomeDistribution:
    m = len(prog.clbits)
    W = max((prog.n_vars + 63) // 64, 1)
    M = np.zeros((max(m, 1), W), np.uint64)
    mconst = np.zeros(max(m, 1), np.uint8)
    _KERNELS.compile_pass(prog.num_qubits, prog.ops, W, M, mconst)
    M = M[:m]
    mconst = mconst[:m]

    if m == 0:
        return OutcomeDistribution(shots, {"": shots} if shots else {})

    OW = (m + 63) // 64
    out = np.zeros((shots, OW), np.uint64)
    G = prog.g_start.shape[0]
    if G:
        rng = np.random.default_rng(seed)
        for lo in range(0, shots, CHUNK_SHOTS):
            hi = min(lo + CHUNK_SHOTS, shots)
            u_fire = rng.random((hi - lo, G))
            u_pat = rng.random((hi - lo, G))
            _KERNELS.sample_pass(
                M, mconst, prog.g_start, prog.g_kind, prog.g_arity, prog.g_prob,
                u_fire, u_pat, out[lo:hi],
            )
    else:
        for j in range(m):
            if mconst[j]:
                out[:, j >> 6] |= np.uint64(1) << np.uint64(j & 63)

    uniq, counts = np.unique(out, axis=0, return_counts=True)
    width = prog.num_clbits
    result: dict[str, int] = {}
    for row, n in zip(uniq, counts):
        bits = ["0"] * width
        for j, cb in enumerate(prog.clbits):
            if (int(row[j >> 6]) >> (j & 63)) & 1:
                bits[width - 1 - cb] = "1"
        result["".join(bits)] = int(n)
    return OutcomeDistribution(shots, result)
