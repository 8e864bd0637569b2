import math

import numpy as np
import pytest

from qorc.circuit import (
    Circuit,
    Gate,
    TopologyGraph,
    cliffordize,
    compact,
    decompose_3q,
    decompose_ccx,
    interaction_graph,
    is_clifford,
    topology_to_circuit,
    touched_qubits,
)
from qorc.sim.statevector import statevector


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("rz", (0,))  # missing param
    with pytest.raises(ValueError):
        Gate("h", (0, 1))  # wrong arity
    with pytest.raises(ValueError):
        Gate("cx", (1, 1))  # duplicate operand
    with pytest.raises(KeyError):
        Gate("frob", (0,))


def test_circuit_validation():
    with pytest.raises(ValueError):
        Circuit(2, (Gate("h", (5,)),))
    with pytest.raises(ValueError):
        Circuit(2, (), ((0, 0), (1, 0)))  # clbit measured twice
    c = Circuit(3, (), ((0, 0), (2, 4)))
    assert c.num_clbits == 5
    assert Circuit(1).num_clbits == 0


def test_is_clifford():
    assert is_clifford(Circuit(2, (Gate("h", (0,)), Gate("cx", (0, 1)))))
    assert is_clifford(Circuit(1, (Gate("rz", (0,), (math.pi / 2,)),)))
    assert is_clifford(Circuit(1, (Gate("rz", (0,), (-3 * math.pi,)),)))
    assert not is_clifford(Circuit(1, (Gate("t", (0,)),)))
    assert not is_clifford(Circuit(1, (Gate("rz", (0,), (0.3,)),)))
    assert not is_clifford(Circuit(3, (Gate("ccx", (0, 1, 2)),)))
    assert is_clifford(Circuit(1, (Gate("reset", (0,)), Gate("barrier", (0,)))))
    assert is_clifford(Circuit(1, (Gate("u3", (0,), (math.pi, 0.0, math.pi / 2)),)))
    assert not is_clifford(Circuit(1, (Gate("u3", (0,), (math.pi, 0.4, math.pi / 2)),)))


def test_cliffordize_drops_t_and_snaps():
    c = Circuit(
        2,
        (
            Gate("t", (0,)),
            Gate("rz", (0,), (math.pi / 2 + 1e-12,)),
            Gate("rz", (1,), (0.1,)),  # snaps to 0: elided
            Gate("cx", (0, 1)),
        ),
        ((0, 0),),
    )
    out = cliffordize(c)
    assert [g.kind for g in out.gates] == ["rz", "cx"]
    assert out.gates[0].params[0] == pytest.approx(math.pi / 2)
    assert out.measures == c.measures
    assert is_clifford(out)


def test_cliffordize_preserves_two_qubit_structure():
    c = Circuit(3, (Gate("ccx", (0, 1, 2)), Gate("swap", (0, 2))))
    out = cliffordize(c)
    assert sum(g.kind == "cx" for g in out.gates) == 6  # the ccx decomposition's
    assert sum(g.kind == "swap" for g in out.gates) == 1
    assert not any(g.kind in ("t", "tdg", "ccx") for g in out.gates)


def _state_of_gates(n, gates):
    return statevector(Circuit(n, tuple(gates)))


def test_decompose_ccx_is_toffoli():
    want = statevector(Circuit(3, (Gate("h", (0,)), Gate("h", (1,)), Gate("ccx", (0, 1, 2)))))
    got = _state_of_gates(3, [Gate("h", (0,)), Gate("h", (1,))] + decompose_ccx(0, 1, 2))
    overlap = abs(np.vdot(want.ravel(), got.ravel()))
    assert overlap == pytest.approx(1.0, abs=1e-12)


def test_decompose_3q():
    ok = decompose_3q(Circuit(3, (Gate("ccx", (0, 1, 2)),)))
    assert all(len(g.qubits) <= 2 for g in ok.gates)
    # wide barriers pass through untouched
    c = Circuit(3, (Gate("barrier", (0, 1, 2)),))
    assert decompose_3q(c) == c


def test_interaction_graph_and_topology_circuit():
    c = Circuit(4, (Gate("cx", (2, 0)), Gate("h", (3,)), Gate("ccx", (0, 1, 2))))
    ig = interaction_graph(c)
    assert ig.edge_list() == [(0, 1), (0, 2), (1, 2)]
    tc = topology_to_circuit(ig)
    assert [g.qubits for g in tc.gates] == [(0, 1), (0, 2), (1, 2)]
    assert tc.measures == tuple((q, q) for q in range(4))


def test_topology_graph_json_round_trip():
    t = TopologyGraph.from_pairs(4, [(1, 0), (2, 3)])
    d = t.to_json_dict()
    assert d == {"nodes": 4, "edges": [[0, 1], [2, 3]]}
    assert TopologyGraph.from_json_dict(d) == t
    with pytest.raises(ValueError):
        TopologyGraph.from_pairs(2, [(0, 5)])
    with pytest.raises(ValueError):
        TopologyGraph.from_pairs(2, [(1, 1)])


def test_compact_relabels_touched_qubits():
    c = Circuit(6, (Gate("cx", (1, 4)), Gate("h", (4,))), ((4, 0),))
    assert touched_qubits(c) == [1, 4]
    small, remap = compact(c)
    assert remap == {1: 0, 4: 1}
    assert small.num_qubits == 2
    assert small.gates == (Gate("cx", (0, 1)), Gate("h", (1,)))
    assert small.measures == ((1, 0),)
    empty, _ = compact(Circuit(3))
    assert empty.num_qubits == 1
