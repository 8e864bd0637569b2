"""Backend scoring strategies. Lower score = better, everywhere."""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, TopologyGraph, cliffordize, decompose_3q, interaction_graph, topology_to_circuit
from .device import Backend
from .errors import InvalidEmbeddingError, TooFewQubitsError
from .sim import NoiseModel, fidelity, sim_clifford, sim_clifford_noisy
from .transpile import place, route, to_clifford_basis
from .vf2 import DEFAULT_LIMIT, DEFAULT_TIME_BUDGET_S, Embedding, vf2_embeddings

LAMBDA = 1e-3
DEFAULT_SCORING_SHOTS = 4096


@dataclass(frozen=True)
class Score:
    value: float
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (self.value >= 0.0 and self.value == self.value and self.value != float("inf")):
            raise ValueError(f"score value must be finite and nonnegative, got {self.value}")

    def to_json_dict(self) -> dict:
        return {"value": self.value, "detail": dict(sorted(self.detail.items()))}

    def tie_key(self) -> float:
        """Secondary ordering: prefer higher f_canary / lower embedding cost."""
        d = self.detail
        if "f_canary" in d:
            return -d["f_canary"]
        return d.get("best_cost", 0.0)


def derive_rng(job_seed: int, backend_id: str, k: int) -> np.random.Generator:
    """Deterministic per-(job, backend, stream) generator."""
    ss = np.random.SeedSequence(job_seed, spawn_key=(zlib.crc32(backend_id.encode()), k))
    return np.random.default_rng(ss)


def _error_product_cost(c: Circuit, b: Backend, phys=lambda q: q) -> float:
    """1 - product of per-gate and per-readout success probabilities."""
    prod = 1.0
    for g in c.gates:
        if g.kind in ("barrier", "reset"):
            continue
        if len(g.qubits) == 2:
            e = tuple(sorted((phys(g.qubits[0]), phys(g.qubits[1]))))
            prod *= 1.0 - b.err2q[e]
        else:
            prod *= 1.0 - b.err1q[phys(g.qubits[0])]
    for q, _ in c.measures:
        prod *= 1.0 - b.readout_err[phys(q)]
    return 1.0 - prod


def layout_cost(e: Embedding, pattern_circuit: Circuit, b: Backend) -> float:
    mapping = e.to_dict()
    ig = interaction_graph(pattern_circuit)
    for a, bb in ig.edge_list():
        pa, pb = mapping.get(a), mapping.get(bb)
        if pa is None or pb is None or not b.has_edge(pa, pb):
            raise InvalidEmbeddingError(
                f"interaction edge ({a}, {bb}) not mapped onto a coupling edge"
            )
    if len(set(mapping.values())) != len(mapping):
        raise InvalidEmbeddingError("embedding is not injective")
    return _error_product_cost(pattern_circuit, b, lambda q: mapping[q])


def topology_score(
    t: TopologyGraph,
    b: Backend,
    limit: int = DEFAULT_LIMIT,
    time_budget: float = DEFAULT_TIME_BUDGET_S,
) -> Score:
    pattern_circuit = topology_to_circuit(t)
    if t.num_nodes > b.num_qubits:
        penalty = float(t.num_nodes - b.num_qubits)
        return Score(1.0 + penalty, {"strategy": "topology", "infeasible": True})
    host = TopologyGraph.from_pairs(b.num_qubits, b.coupling)
    res = vf2_embeddings(t, host, limit=limit, time_budget=time_budget)
    if res.embeddings:
        best = min(layout_cost(e, pattern_circuit, b) for e in res.embeddings)
        return Score(
            best,
            {
                "strategy": "topology",
                "best_cost": best,
                "embeddings": len(res.embeddings),
                "truncated": res.truncated,
                "routed_fallback": False,
            },
        )
    mapped = route(pattern_circuit, place(pattern_circuit, b), b)
    cost = _error_product_cost(mapped.circuit, b)
    return Score(
        cost,
        {
            "strategy": "topology",
            "best_cost": cost,
            "embeddings": 0,
            "truncated": res.truncated,
            "routed_fallback": True,
        },
    )


def canary_fidelity(c: Circuit, b: Backend, shots: int, seed: int) -> float:
    """Fidelity of the Clifford canary run noisily on b vs its ideal output."""
    canary = cliffordize(decompose_3q(c))
    mapped = route(canary, place(canary, b), b)
    basis = to_clifford_basis(mapped.circuit)
    ideal = sim_clifford(canary, shots, derive_rng(seed, b.id, 0))
    noisy = sim_clifford_noisy(basis, NoiseModel.from_backend(b), shots, derive_rng(seed, b.id, 1))
    return fidelity(ideal, noisy)


def fidelity_score(
    c: Circuit,
    f_req: float,
    b: Backend,
    shots: int = DEFAULT_SCORING_SHOTS,
    seed: int = 0,
) -> Score:
    if not 0.0 < f_req <= 1.0:
        raise ValueError("f_req must be in (0, 1]")
    if c.num_qubits > b.num_qubits:
        raise TooFewQubitsError(
            f"circuit needs {c.num_qubits} qubits, backend has {b.num_qubits}"
        )
    f_canary = canary_fidelity(c, b, shots, seed)
    value = max(0.0, f_req - f_canary) + LAMBDA * (1.0 - f_canary)
    return Score(value, {"strategy": "fidelity", "f_canary": f_canary})
