"""Minimal deterministic transpiler: placement, SWAP routing, basis translation.

Noise-awareness lives in the ranking costs, not here; the pipeline is a plain
greedy placer plus BFS shortest-path router so identical inputs always give
identical mapped circuits.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .circuit import Circuit, Gate, decompose_3q, interaction_graph, is_clifford
from .device import Backend
from .errors import NotCliffordError, TooFewQubitsError, Unsupported3QGateError
from .sim.compile import clifford_words

__all__ = [
    "Layout",
    "MappedCircuit",
    "decompose_3q",
    "place",
    "route",
    "to_clifford_basis",
    "transpile",
]


@dataclass(frozen=True)
class Layout:
    mapping: tuple[tuple[int, int], ...]  # (logical, physical) pairs, sorted by logical

    def __post_init__(self):
        phys = [p for _, p in self.mapping]
        if len(set(phys)) != len(phys):
            raise ValueError("layout is not injective")

    @staticmethod
    def from_dict(d: dict[int, int]) -> "Layout":
        return Layout(tuple(sorted(d.items())))

    def to_dict(self) -> dict[int, int]:
        return dict(self.mapping)

    def __getitem__(self, logical: int) -> int:
        return dict(self.mapping)[logical]


@dataclass(frozen=True)
class MappedCircuit:
    circuit: Circuit  # over physical indices
    layout: Layout
    final_layout: Layout
    backend_id: str


def _bfs_distances(adj: dict[int, list[int]], n: int, start: int) -> list[int]:
    INF = 1 << 30
    dist = [INF] * n
    dist[start] = 0
    dq = deque([start])
    while dq:
        u = dq.popleft()
        for v in adj[u]:
            if dist[v] > dist[u] + 1:
                dist[v] = dist[u] + 1
                dq.append(v)
    return dist


def _bfs_path(adj: dict[int, list[int]], src: int, dst: int) -> list[int]:
    """Shortest path src..dst; BFS visiting neighbors in ascending index order."""
    prev = {src: None}
    dq = deque([src])
    while dq:
        u = dq.popleft()
        if u == dst:
            path = []
            while u is not None:
                path.append(u)
                u = prev[u]
            return path[::-1]
        for v in adj[u]:
            if v not in prev:
                prev[v] = u
                dq.append(v)
    raise ValueError(f"no path between physical qubits {src} and {dst}")


def place(c: Circuit, b: Backend) -> Layout:
    """Greedy subgraph-seeking initial layout. Deterministic."""
    if c.num_qubits > b.num_qubits:
        raise TooFewQubitsError(
            f"circuit needs {c.num_qubits} qubits, backend has {b.num_qubits}"
        )
    ig = interaction_graph(c)
    adj: dict[int, set[int]] = {q: set() for q in range(c.num_qubits)}
    for a, bb in ig.edge_list():
        adj[a].add(bb)
        adj[bb].add(a)
    order = sorted(range(c.num_qubits), key=lambda q: (-len(adj[q]), q))

    badj = b.neighbors()
    dists = [_bfs_distances(badj, b.num_qubits, p) for p in range(b.num_qubits)]
    mapping: dict[int, int] = {}
    used: set[int] = set()
    for logical in order:
        if not mapping:
            best = min(range(b.num_qubits), key=lambda p: (-len(badj[p]), p))
        else:
            partners = [mapping[x] for x in adj[logical] if x in mapping]
            best = min(
                (p for p in range(b.num_qubits) if p not in used),
                key=lambda p: (sum(dists[p][q] for q in partners), p),
            )
        mapping[logical] = best
        used.add(best)
    return Layout.from_dict(mapping)


def route(c: Circuit, l: Layout, b: Backend) -> MappedCircuit:
    """Insert SWAPs along BFS shortest paths until every 2q gate is on an edge."""
    log2phys = l.to_dict()
    phys2log: dict[int, int] = {p: q for q, p in log2phys.items()}
    badj = b.neighbors()

    def do_swap(u: int, v: int, out: list[Gate]):
        out.append(Gate("swap", (u, v)))
        lu, lv = phys2log.get(u), phys2log.get(v)
        if lu is not None:
            log2phys[lu] = v
        if lv is not None:
            log2phys[lv] = u
        phys2log[u], phys2log[v] = lv, lu
        if phys2log[u] is None:
            del phys2log[u]
        if phys2log[v] is None:
            del phys2log[v]

    out: list[Gate] = []
    for g in c.gates:
        if len(g.qubits) >= 3 and g.kind != "barrier":
            raise Unsupported3QGateError(f"{g.kind} must be decomposed before routing")
        if len(g.qubits) == 2 and g.kind != "barrier":
            pa, pb = log2phys[g.qubits[0]], log2phys[g.qubits[1]]
            if not b.has_edge(pa, pb):
                path = _bfs_path(badj, pa, pb)
                for v in path[1:-1]:
                    do_swap(pa, v, out)
                    pa = v
            out.append(Gate(g.kind, (pa, pb), g.params))
        else:
            out.append(Gate(g.kind, tuple(log2phys[q] for q in g.qubits), g.params))
    measures = tuple((log2phys[q], cb) for q, cb in c.measures)
    mapped = Circuit(b.num_qubits, tuple(out), measures)
    return MappedCircuit(mapped, l, Layout.from_dict(log2phys), b.id)


def to_clifford_basis(c: Circuit) -> Circuit:
    """Rewrite over {h, s, sdg, x, z, cx}; phase-equivalent."""
    if not is_clifford(c):
        raise NotCliffordError("circuit contains non-Clifford gates")
    out: list[Gate] = []
    for g in c.gates:
        if g.kind == "barrier":
            continue
        if g.kind == "reset":
            out.append(g)
            continue
        for w in clifford_words(g):
            if w.kind == "swap":
                a, b = w.qubits
                out.extend((Gate("cx", (a, b)), Gate("cx", (b, a)), Gate("cx", (a, b))))
            elif w.kind == "y":
                out.extend((Gate("z", w.qubits), Gate("x", w.qubits)))
            else:
                out.append(w)
    return Circuit(c.num_qubits, tuple(out), c.measures)


def transpile(c: Circuit, b: Backend) -> MappedCircuit:
    """decompose_3q, place, route."""
    c = decompose_3q(c)
    return route(c, place(c, b), b)
