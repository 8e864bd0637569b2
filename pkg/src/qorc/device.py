"""Simulated backend model, random fleet generation, node labels, registry."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidParamsError, SchemaError

MAX_DEGREE = 4

SETUP_QUBIT_COUNTS = (15, 20, 27, 35, 50, 60, 78, 85, 95, 100)
SETUP_EDGE_PROBS = (0.1, 0.15, 0.3, 0.45, 0.54, 0.67, 0.7, 0.78, 0.89, 0.98)
SETUP_ERR_RANGE = (0.01, 0.7)
SETUP_READOUT_CHOICES = (0.05, 0.15)
SETUP_T_CHOICES = (500e3, 100e3)  # microseconds
SETUP_READOUT_LEN_NS = 30.0
SETUP_BASIS_GATES = ("u1", "u2", "u3", "cx")

DEFAULT_CPU_MILLICORES = 4000
DEFAULT_MEM_MB = 8192

Edge = tuple[int, int]


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Backend:
    id: str
    num_qubits: int
    coupling: frozenset[Edge]
    err2q: dict[Edge, float]
    err1q: dict[int, float]
    readout_err: dict[int, float]
    readout_len_ns: dict[int, float]
    t1_us: dict[int, float]
    t2_us: dict[int, float]
    basis_gates: tuple[str, ...]

    def neighbors(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {q: [] for q in range(self.num_qubits)}
        for a, b in self.coupling:
            adj[a].append(b)
            adj[b].append(a)
        for lst in adj.values():
            lst.sort()
        return adj

    def has_edge(self, a: int, b: int) -> bool:
        return _edge(a, b) in self.coupling


@dataclass(frozen=True)
class Node:
    """A cluster node: one backend plus its classical capacity."""

    backend: Backend
    cpu_millicores: int = DEFAULT_CPU_MILLICORES
    mem_mb: int = DEFAULT_MEM_MB


@dataclass(frozen=True)
class NodeLabels:
    num_qubits: int
    avg_err2q: float
    avg_err1q: float
    avg_readout_err: float
    avg_t1_us: float
    avg_t2_us: float
    cpu_millicores: int
    mem_mb: int


@dataclass(frozen=True)
class GenParams:
    num_qubits: int
    edge_prob: float
    err2q_range: tuple[float, float] = SETUP_ERR_RANGE
    err1q_range: tuple[float, float] = SETUP_ERR_RANGE
    readout_choices: tuple[float, ...] = SETUP_READOUT_CHOICES
    t1_choices: tuple[float, ...] = SETUP_T_CHOICES
    t2_choices: tuple[float, ...] = SETUP_T_CHOICES
    readout_len_ns: float = SETUP_READOUT_LEN_NS
    basis_gates: tuple[str, ...] = SETUP_BASIS_GATES
    seed: int = 0
    id: str = ""

    def validate(self):
        if self.num_qubits < 2:
            raise InvalidParamsError("num_qubits must be >= 2")
        if not 0.0 <= self.edge_prob <= 1.0:
            raise InvalidParamsError("edge_prob must be a probability")
        for name, (lo, hi) in (("err2q_range", self.err2q_range), ("err1q_range", self.err1q_range)):
            if lo > hi or not (0.0 <= lo <= 1.0 and 0.0 <= hi <= 1.0):
                raise InvalidParamsError(f"{name} must be a nonempty subrange of [0, 1]")
        for name, choices in (
            ("readout_choices", self.readout_choices),
            ("t1_choices", self.t1_choices),
            ("t2_choices", self.t2_choices),
        ):
            if not choices:
                raise InvalidParamsError(f"{name} must be nonempty")


def generate_backend(p: GenParams) -> Backend:
    """Seed-deterministic random device.

    Coupling: visit qubit pairs in seeded-random order, keep each with
    probability edge_prob while both endpoints stay under degree 4, then
    bridge components until connected. Error rates: a per-device level is
    drawn from the range, individual edges/qubits jitter +-10% around it
    (clipped back into the range) so that device averages spread across the
    full range while edges within one device remain comparable.
    """
    p.validate()
    rng = np.random.default_rng(np.random.SeedSequence(p.seed))
    n = p.num_qubits

    degree = [0] * n
    edges: set[Edge] = set()
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    order = rng.permutation(len(pairs))
    coins = rng.random(len(pairs))
    for k, idx in enumerate(order):
        a, b = pairs[idx]
        if degree[a] < MAX_DEGREE and degree[b] < MAX_DEGREE and coins[k] < p.edge_prob:
            edges.add(_edge(a, b))
            degree[a] += 1
            degree[b] += 1

    # bridge components; respect the degree cap, relax only when unavoidable
    def components():
        seen = [False] * n
        comps = []
        for s in range(n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in range(n):
                    if not seen[v] and _edge(u, v) in edges:
                        seen[v] = True
                        stack.append(v)
            comps.append(sorted(comp))
        return comps

    comps = components()
    while len(comps) > 1:
        def pick(comp):
            under = [q for q in comp if degree[q] < MAX_DEGREE]
            pool = under if under else comp
            return min(pool, key=lambda q: (degree[q], q))

        a = pick(comps[0])
        b = pick(comps[1])
        edges.add(_edge(a, b))
        degree[a] += 1
        degree[b] += 1
        comps = components()

    def level_and_jitter(rng, lo, hi, count):
        level = rng.uniform(lo, hi)
        vals = level * rng.uniform(0.9, 1.1, size=count)
        return np.clip(vals, lo, hi)

    sorted_edges = sorted(edges)
    e2 = level_and_jitter(rng, *p.err2q_range, len(sorted_edges))
    e1 = level_and_jitter(rng, *p.err1q_range, n)
    readout = rng.choice(p.readout_choices, size=n)
    t1 = rng.choice(p.t1_choices, size=n)
    t2 = np.empty(n)
    for q in range(n):
        eligible = [v for v in p.t2_choices if v <= 2.0 * t1[q]]
        t2[q] = rng.choice(eligible) if eligible else 2.0 * t1[q]

    return Backend(
        id=p.id or f"backend-{p.seed}",
        num_qubits=n,
        coupling=frozenset(sorted_edges),
        err2q={e: float(v) for e, v in zip(sorted_edges, e2)},
        err1q={q: float(e1[q]) for q in range(n)},
        readout_err={q: float(readout[q]) for q in range(n)},
        readout_len_ns={q: float(p.readout_len_ns) for q in range(n)},
        t1_us={q: float(t1[q]) for q in range(n)},
        t2_us={q: float(t2[q]) for q in range(n)},
        basis_gates=tuple(p.basis_gates),
    )


def generate_fleet(seed: int) -> list[Node]:
    """The 10x10 setup-table fleet: qubit counts x edge probabilities."""
    ss = np.random.SeedSequence(seed)
    child_seeds = ss.generate_state(100, dtype=np.uint64)
    nodes = []
    i = 0
    for nq in SETUP_QUBIT_COUNTS:
        for ep in SETUP_EDGE_PROBS:
            params = GenParams(
                num_qubits=nq,
                edge_prob=ep,
                seed=int(child_seeds[i]),
                id=f"backend-{i:03d}-q{nq}-e{int(round(ep * 100)):02d}",
            )
            nodes.append(Node(backend=generate_backend(params)))
            i += 1
    return nodes


def labels_of(b: Backend, cpu: int = DEFAULT_CPU_MILLICORES, mem: int = DEFAULT_MEM_MB) -> NodeLabels:
    mean = lambda d: float(sum(d.values()) / len(d)) if d else 0.0
    return NodeLabels(
        num_qubits=b.num_qubits,
        avg_err2q=mean(b.err2q),
        avg_err1q=mean(b.err1q),
        avg_readout_err=mean(b.readout_err),
        avg_t1_us=mean(b.t1_us),
        avg_t2_us=mean(b.t2_us),
        cpu_millicores=cpu,
        mem_mb=mem,
    )


def node_labels(n: Node) -> NodeLabels:
    return labels_of(n.backend, n.cpu_millicores, n.mem_mb)


# ---------------------------------------------------------------------------
# registry persistence

_QUBIT_MAP_FIELDS = ("err1q", "readout_err", "readout_len_ns", "t1_us", "t2_us")


def _backend_to_json(node: Node) -> dict:
    b = node.backend
    doc = {
        "id": b.id,
        "num_qubits": b.num_qubits,
        "coupling": [list(e) for e in sorted(b.coupling)],
        "err2q": {f"{a}-{b2}": v for (a, b2), v in sorted(b.err2q.items())},
        "basis_gates": list(b.basis_gates),
        "cpu_millicores": node.cpu_millicores,
        "mem_mb": node.mem_mb,
    }
    for f in _QUBIT_MAP_FIELDS:
        doc[f] = {str(q): v for q, v in sorted(getattr(b, f).items())}
    return doc


def _check_prob(path, v):
    if not isinstance(v, (int, float)) or not 0.0 <= v <= 1.0:
        raise SchemaError(path, f"expected probability in [0, 1], got {v!r}")


def _backend_from_json(doc: dict, where: str) -> Node:
    try:
        bid = doc["id"]
        n = doc["num_qubits"]
        coupling = frozenset(_edge(int(a), int(b)) for a, b in doc["coupling"])
        err2q = {}
        for key, v in doc["err2q"].items():
            a, b = key.split("-")
            _check_prob(f"{where}.err2q.{key}", v)
            err2q[_edge(int(a), int(b))] = float(v)
        qmaps = {}
        for f in _QUBIT_MAP_FIELDS:
            qmaps[f] = {int(q): float(v) for q, v in doc[f].items()}
        basis = tuple(doc["basis_gates"])
        cpu = int(doc["cpu_millicores"])
        mem = int(doc["mem_mb"])
    except KeyError as e:
        raise SchemaError(f"{where}.{e.args[0]}", "missing field") from None

    for e in coupling:
        if e not in err2q:
            raise SchemaError(f"{where}.err2q.{e[0]}-{e[1]}", "missing rate for coupling edge")
    for q, v in qmaps["err1q"].items():
        _check_prob(f"{where}.err1q.{q}", v)
    for q, v in qmaps["readout_err"].items():
        _check_prob(f"{where}.readout_err.{q}", v)
    for q in range(n):
        for f in _QUBIT_MAP_FIELDS:
            if q not in qmaps[f]:
                raise SchemaError(f"{where}.{f}.{q}", "missing per-qubit entry")
        if qmaps["t2_us"][q] > 2.0 * qmaps["t1_us"][q] + 1e-9:
            raise SchemaError(f"{where}.t2_us.{q}", "t2 exceeds 2*t1")

    backend = Backend(
        id=bid,
        num_qubits=n,
        coupling=coupling,
        err2q=err2q,
        err1q=qmaps["err1q"],
        readout_err=qmaps["readout_err"],
        readout_len_ns=qmaps["readout_len_ns"],
        t1_us=qmaps["t1_us"],
        t2_us=qmaps["t2_us"],
        basis_gates=basis,
    )
    return Node(backend=backend, cpu_millicores=cpu, mem_mb=mem)


def registry_save(nodes: list[Node], path: str):
    doc = {"version": 1, "backends": [_backend_to_json(n) for n in nodes]}
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            json.dump(doc, f, indent=1)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def registry_load(path: str) -> list[Node]:
    with open(path) as f:
        doc = json.load(f)
    if not isinstance(doc, dict) or doc.get("version") != 1:
        raise SchemaError("version", "unsupported registry version")
    return [
        _backend_from_json(b, f"backends[{i}]") for i, b in enumerate(doc.get("backends", []))
    ]


def scale_errors(b: Backend, alpha: float) -> Backend:
    """Backend with every error rate multiplied by alpha (test/analysis aid)."""
    return replace(
        b,
        err2q={e: v * alpha for e, v in b.err2q.items()},
        err1q={q: v * alpha for q, v in b.err1q.items()},
        readout_err={q: v * alpha for q, v in b.readout_err.items()},
    )
