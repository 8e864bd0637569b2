"""Circuit IR, Clifford classification, canary transformation, interaction graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import Unsupported3QGateError

HALF_PI = math.pi / 2.0

# gate name -> (number of angle params, number of qubits)
GATE_SIGNATURES = {
    "h": (0, 1),
    "x": (0, 1),
    "y": (0, 1),
    "z": (0, 1),
    "s": (0, 1),
    "sdg": (0, 1),
    "t": (0, 1),
    "tdg": (0, 1),
    "rz": (1, 1),
    "rx": (1, 1),
    "ry": (1, 1),
    "u1": (1, 1),
    "u2": (2, 1),
    "u3": (3, 1),
    "cx": (0, 2),
    "swap": (0, 2),
    "ccx": (0, 3),
    "reset": (0, 1),
}

CLIFFORD_FIXED = frozenset({"h", "x", "y", "z", "s", "sdg", "cx", "swap"})
# rotations where a multiple-of-pi/2 angle keeps the gate in the Clifford group
CLIFFORD_IF_SNAPPED = frozenset({"rz", "rx", "ry", "u1", "u2", "u3"})

ANGLE_TOL = 1e-9


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind != "barrier":
            nparams, nqubits = GATE_SIGNATURES[self.kind]
            if len(self.params) != nparams:
                raise ValueError(f"{self.kind} takes {nparams} params, got {len(self.params)}")
            if len(self.qubits) != nqubits:
                raise ValueError(f"{self.kind} acts on {nqubits} qubits, got {len(self.qubits)}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"duplicate qubit operands in {self.kind}{self.qubits}")


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = ()
    measures: tuple[tuple[int, int], ...] = ()  # (qubit, clbit) pairs

    def __post_init__(self):
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < self.num_qubits:
                    raise ValueError(f"gate qubit {q} out of range for {self.num_qubits} qubits")
        seen_clbits = set()
        for q, c in self.measures:
            if not 0 <= q < self.num_qubits:
                raise ValueError(f"measured qubit {q} out of range")
            if c in seen_clbits:
                raise ValueError(f"clbit {c} measured twice")
            seen_clbits.add(c)

    @property
    def num_clbits(self) -> int:
        return max((c for _, c in self.measures), default=-1) + 1


@dataclass(frozen=True)
class TopologyGraph:
    num_nodes: int
    edges: frozenset[frozenset[int]] = field(default_factory=frozenset)

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 2:
                raise ValueError("edges must join two distinct nodes")
            for v in e:
                if not 0 <= v < self.num_nodes:
                    raise ValueError(f"edge node {v} out of range")

    @staticmethod
    def from_pairs(num_nodes: int, pairs) -> "TopologyGraph":
        return TopologyGraph(num_nodes, frozenset(frozenset(p) for p in pairs))

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges as sorted (lo, hi) pairs in lexicographic order."""
        return sorted(tuple(sorted(e)) for e in self.edges)

    def to_json_dict(self) -> dict:
        return {"nodes": self.num_nodes, "edges": [list(e) for e in self.edge_list()]}

    @staticmethod
    def from_json_dict(d: dict) -> "TopologyGraph":
        return TopologyGraph.from_pairs(d["nodes"], d["edges"])


def _snap_steps(angle: float) -> int:
    """Nearest multiple of pi/2 in step units; exact ties round toward 0."""
    x = angle / HALF_PI
    if x >= 0:
        return math.ceil(x - 0.5)
    return math.floor(x + 0.5)


def _is_half_pi_multiple(angle: float) -> bool:
    return abs(angle - _snap_steps(angle) * HALF_PI) <= ANGLE_TOL


def is_clifford(c: Circuit) -> bool:
    """True iff every gate is Clifford (rotations count when snapped to pi/2 grid)."""
    for g in c.gates:
        if g.kind in CLIFFORD_FIXED or g.kind in ("barrier", "reset"):
            continue
        if g.kind in CLIFFORD_IF_SNAPPED:
            if all(_is_half_pi_multiple(a) for a in g.params):
                continue
            return False
        return False  # t, tdg, ccx
    return True


def decompose_ccx(a: int, b: int, c: int) -> list[Gate]:
    """Standard 6-CX Toffoli decomposition over {h, t, tdg, cx}."""
    g = lambda kind, *qs: Gate(kind, qs)
    return [
        g("h", c),
        g("cx", b, c),
        g("tdg", c),
        g("cx", a, c),
        g("t", c),
        g("cx", b, c),
        g("tdg", c),
        g("cx", a, c),
        g("t", b),
        g("t", c),
        g("h", c),
        g("cx", a, b),
        g("t", a),
        g("tdg", b),
        g("cx", a, b),
    ]


def decompose_3q(c: Circuit) -> Circuit:
    """Replace every ccx with its standard decomposition; reject other 3q gates."""
    out = []
    for g in c.gates:
        if len(g.qubits) >= 3 and g.kind != "barrier":
            if g.kind != "ccx":
                raise Unsupported3QGateError(g.kind)
            out.extend(decompose_ccx(*g.qubits))
        else:
            out.append(g)
    return Circuit(c.num_qubits, tuple(out), c.measures)


def cliffordize(c: Circuit) -> Circuit:
    """Clifford canary: snap rotation angles to the pi/2 grid, keep structure.

    2-qubit gates and measurements are preserved verbatim; ccx is decomposed
    first, then its t/tdg snap away. Gates snapping to identity are elided.
    """
    c = decompose_3q(c)
    out = []
    for g in c.gates:
        if g.kind in CLIFFORD_FIXED or g.kind in ("barrier", "reset"):
            out.append(g)
        elif g.kind in ("t", "tdg"):
            continue  # pi/4 rotation snaps to 0: elided
        elif g.kind in CLIFFORD_IF_SNAPPED:
            snapped = tuple(_snap_steps(a) * HALF_PI for a in g.params)
            if g.kind in ("rz", "rx", "ry", "u1") and snapped[0] == 0.0:
                continue
            if g.kind == "u3" and snapped == (0.0, 0.0, 0.0):
                continue
            out.append(Gate(g.kind, g.qubits, snapped))
        else:  # pragma: no cover - signature table is exhaustive
            raise AssertionError(f"unhandled gate {g.kind}")
    return Circuit(c.num_qubits, tuple(out), c.measures)


def interaction_graph(c: Circuit) -> TopologyGraph:
    """Pairwise-interaction graph; 3-qubit gates contribute all three pairs."""
    edges = set()
    for g in c.gates:
        if g.kind == "barrier":
            continue
        qs = g.qubits
        for i in range(len(qs)):
            for j in range(i + 1, len(qs)):
                edges.add(frozenset((qs[i], qs[j])))
    return TopologyGraph(c.num_qubits, frozenset(edges))


def topology_to_circuit(t: TopologyGraph) -> Circuit:
    """One CX per edge (lexicographic order, low index controls), measure all."""
    gates = tuple(Gate("cx", (a, b)) for a, b in t.edge_list())
    measures = tuple((q, q) for q in range(t.num_nodes))
    return Circuit(t.num_nodes, gates, measures)


def touched_qubits(c: Circuit) -> list[int]:
    """Qubits acted on by any gate or measure, ascending."""
    qs = set()
    for g in c.gates:
        qs.update(g.qubits)
    qs.update(q for q, _ in c.measures)
    return sorted(qs)


def compact(c: Circuit) -> tuple[Circuit, dict[int, int]]:
    """Relabel onto the touched qubits only. Returns (circuit, old->new map)."""
    touched = touched_qubits(c)
    remap = {old: new for new, old in enumerate(touched)}
    gates = tuple(Gate(g.kind, tuple(remap[q] for q in g.qubits), g.params) for g in c.gates)
    measures = tuple((remap[q], cb) for q, cb in c.measures)
    return Circuit(max(len(touched), 1), gates, measures), remap
