import numpy as np
import pytest

from conftest import make_backend, random_clifford_circuit
from qorc.circuit import Circuit, Gate
from qorc.errors import NotCliffordError, TooFewQubitsError, Unsupported3QGateError
from qorc.sim import sim_clifford, total_variation
from qorc.sim.statevector import statevector
from qorc.transpile import Layout, place, route, to_clifford_basis, transpile

LINE5 = [(i, i + 1) for i in range(4)]


def test_layout_invariants():
    l = Layout.from_dict({0: 2, 1: 0})
    assert l[0] == 2 and l.to_dict() == {0: 2, 1: 0}
    with pytest.raises(ValueError):
        Layout(((0, 1), (1, 1)))


def test_place_injective_and_deterministic():
    b = make_backend(5, LINE5)
    c = Circuit(3, (Gate("cx", (0, 1)), Gate("cx", (1, 2))))
    l1, l2 = place(c, b), place(c, b)
    assert l1 == l2
    phys = set(l1.to_dict().values())
    assert len(phys) == 3 and phys <= set(range(5))


def test_place_too_few_qubits():
    with pytest.raises(TooFewQubitsError):
        place(Circuit(6), make_backend(5, LINE5))


def test_route_puts_all_2q_gates_on_edges():
    b = make_backend(5, LINE5)
    # a degree-3 star cannot embed in a line, so routing must insert swaps
    c = Circuit(5, (Gate("cx", (0, 1)), Gate("cx", (0, 2)), Gate("cx", (0, 3))),
                tuple((q, q) for q in range(5)))
    mc = transpile(c, b)
    for g in mc.circuit.gates:
        if len(g.qubits) == 2 and g.kind != "barrier":
            assert b.has_edge(*g.qubits), g
    assert any(g.kind == "swap" for g in mc.circuit.gates)
    # final layout tracks the moves and stays injective
    fl = mc.final_layout.to_dict()
    assert sorted(fl) == [0, 1, 2, 3, 4]
    assert len(set(fl.values())) == 5


def test_route_rejects_undecomposed_3q():
    b = make_backend(4, [(0, 1), (1, 2), (2, 3)])
    c = Circuit(3, (Gate("ccx", (0, 1, 2)),))
    with pytest.raises(Unsupported3QGateError):
        route(c, place(Circuit(3), b), b)


def _routed_matches_original(c, b):
    """Statevector equivalence up to the final layout permutation."""
    mc = transpile(c, b)
    n, m = c.num_qubits, b.num_qubits
    ideal = statevector(Circuit(c.num_qubits, c.gates))
    routed = statevector(Circuit(m, mc.circuit.gates))
    fl = mc.final_layout.to_dict()
    # axis j of the permuted tensor = physical position of logical j
    phys_of_logical = [fl[q] for q in range(n)]
    rest = [p for p in range(m) if p not in set(phys_of_logical)]
    perm = phys_of_logical + rest
    routed_t = np.transpose(routed, perm).ravel()
    full = np.zeros((2,) * m, dtype=complex)
    full[(...,) + (0,) * (m - n)] = ideal
    overlap = abs(np.vdot(full.ravel(), routed_t))
    return overlap


def test_route_semantics_statevector():
    rng = np.random.default_rng(2024)
    b = make_backend(6, [(i, i + 1) for i in range(5)])
    for _ in range(15):
        c = random_clifford_circuit(4, 12, rng, measures=())
        assert _routed_matches_original(c, b) == pytest.approx(1.0, abs=1e-9)


def test_route_measures_follow_layout():
    b = make_backend(5, LINE5)
    c = Circuit(5, (Gate("x", (0,)), Gate("cx", (0, 4))), ((0, 0), (4, 1)))
    mc = transpile(c, b)
    d = sim_clifford(mc.circuit, 200, 0)
    assert d.counts == {"11": 200}  # cx(0,4) fires because qubit 0 is |1>


def test_to_clifford_basis_equivalence():
    rng = np.random.default_rng(7)
    for _ in range(8):
        c = random_clifford_circuit(3, 10, rng)
        basis = to_clifford_basis(c)
        assert {g.kind for g in basis.gates} <= {"h", "s", "sdg", "x", "z", "cx", "reset"}
        a = sim_clifford(c, 20_000, 3)
        bdist = sim_clifford(basis, 20_000, 3)
        assert total_variation(a, bdist) < 0.03


def test_to_clifford_basis_rejects_non_clifford():
    with pytest.raises(NotCliffordError):
        to_clifford_basis(Circuit(1, (Gate("t", (0,)),)))
