import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bell, random_clifford_circuit
from qorc.circuit import Circuit, Gate
from qorc.errors import (
    EmptyDistributionError,
    MissingEdgeRateError,
    NotCliffordError,
    TooManyQubitsError,
)
from qorc.sim import (
    NoiseModel,
    OutcomeDistribution,
    fidelity,
    sim_clifford,
    sim_clifford_noisy,
    sim_statevector,
    sim_statevector_noisy,
    statevector,
    total_variation,
)

SHOTS = 20_000


# ---------------------------------------------------------------------------
# distributions

def test_outcome_distribution_invariants():
    d = OutcomeDistribution(10, {"00": 4, "11": 6})
    assert d.probabilities() == {"00": 0.4, "11": 0.6}
    assert d.to_json_dict() == {"00": 4, "11": 6}
    with pytest.raises(ValueError):
        OutcomeDistribution(10, {"0": 3})


def test_fidelity_and_tv():
    a = OutcomeDistribution(4, {"0": 2, "1": 2})
    b = OutcomeDistribution(4, {"0": 2, "1": 2})
    c = OutcomeDistribution(4, {"0": 4})
    assert fidelity(a, b) == pytest.approx(1.0)
    assert fidelity(a, c) == pytest.approx(0.5)
    assert total_variation(a, c) == pytest.approx(0.5)
    assert total_variation(a, b) == 0.0
    with pytest.raises(EmptyDistributionError):
        fidelity(OutcomeDistribution(0, {}), a)


# ---------------------------------------------------------------------------
# ideal stabilizer simulation

def test_bell_ideal():
    d = sim_clifford(bell(), SHOTS, 7)
    assert set(d.counts) == {"00", "11"}
    assert abs(d.counts["00"] / SHOTS - 0.5) < 0.02


def test_deterministic_outcomes():
    c = Circuit(2, (Gate("x", (0,)),), ((0, 0), (1, 1)))
    d = sim_clifford(c, 100, 0)
    assert d.counts == {"01": 100}  # clbit 0 is the rightmost character


def test_clbit_width_uses_max_clbit():
    c = Circuit(1, (Gate("x", (0,)),), ((0, 3),))
    d = sim_clifford(c, 10, 0)
    assert d.counts == {"1000": 10}


def test_reset_clears_qubit():
    c = Circuit(
        1, (Gate("h", (0,)), Gate("reset", (0,)), Gate("x", (0,))), ((0, 0),)
    )
    assert sim_clifford(c, 500, 3).counts == {"1": 500}


def test_measure_then_remeasure_consistent():
    # measuring an entangled pair twice into different clbits must agree
    c = Circuit(
        2,
        (Gate("h", (0,)), Gate("cx", (0, 1))),
        ((0, 0), (1, 1)),
    )
    d = sim_clifford(c, 2000, 11)
    assert set(d.counts) <= {"00", "11"}


def test_not_clifford_rejected():
    c = Circuit(1, (Gate("t", (0,)),), ((0, 0),))
    with pytest.raises(NotCliffordError):
        sim_clifford(c, 10, 0)
    with pytest.raises(ValueError):
        sim_clifford(bell(), -1, 0)


def test_zero_shots():
    assert sim_clifford(bell(), 0, 0).counts == {}


def test_missing_edge_rate():
    nm = NoiseModel(p1={}, p2={(5, 6): 0.1}, p_read={})
    with pytest.raises(MissingEdgeRateError):
        sim_clifford_noisy(bell(), nm, 10, 0)
    # empty p2 means "no 2q noise anywhere", not an error
    sim_clifford_noisy(bell(), NoiseModel.zero(), 10, 0)


def test_snapped_rotations_match_discrete_gates():
    k = math.pi / 2
    pairs = [
        (Gate("rz", (0,), (k,)), Gate("s", (0,))),
        (Gate("rz", (0,), (-k,)), Gate("sdg", (0,))),
        (Gate("rx", (0,), (2 * k,)), Gate("x", (0,))),
        (Gate("ry", (0,), (2 * k,)), Gate("y", (0,))),
        (Gate("u1", (0,), (2 * k,)), Gate("z", (0,))),
    ]
    for rot, fixed in pairs:
        pre = (Gate("h", (0,)),)
        a = statevector(Circuit(1, pre + (rot,)))
        b = statevector(Circuit(1, pre + (fixed,)))
        assert abs(np.vdot(a.ravel(), b.ravel())) == pytest.approx(1.0, abs=1e-12), rot
        sa = sim_clifford(Circuit(1, pre + (rot,), ((0, 0),)), 4000, 5)
        sb = sim_clifford(Circuit(1, pre + (fixed,), ((0, 0),)), 4000, 5)
        assert total_variation(sa, sb) < 0.05, rot


# ---------------------------------------------------------------------------
# noise analytics ([DERIVED] closed forms)

def test_single_qubit_x_noise_analytic():
    # p1 = 0.5 on one X gate: with prob 1/2 a uniform Pauli in {X,Y,Z} follows;
    # X,Y flip the Z-basis outcome, Z does not => P("1") = 1 - 0.5*(2/3) = 2/3
    c = Circuit(1, (Gate("x", (0,)),), ((0, 0),))
    nm = NoiseModel(p1={0: 0.5}, p2={}, p_read={})
    d = sim_clifford_noisy(c, nm, 100_000, 13)
    assert d.counts["1"] / d.shots == pytest.approx(2.0 / 3.0, abs=0.006)


def test_bell_cx_noise_analytic():
    # 8 of the 15 2q Pauli errors after CX move weight off {00, 11};
    # Hellinger fidelity to the ideal Bell distribution = 1 - (8/15) eps
    eps = 0.3
    nm = NoiseModel(p1={}, p2={(0, 1): eps}, p_read={})
    ideal = sim_clifford(bell(), 100_000, 1)
    noisy = sim_clifford_noisy(bell(), nm, 100_000, 2)
    assert fidelity(ideal, noisy) == pytest.approx(1 - 8 * eps / 15, abs=0.01)


def test_readout_flip_analytic():
    c = Circuit(1, (), ((0, 0),))
    nm = NoiseModel(p1={}, p2={}, p_read={0: 0.25})
    d = sim_clifford_noisy(c, nm, 100_000, 17)
    assert d.counts["1"] / d.shots == pytest.approx(0.25, abs=0.006)


def test_swap_noise_is_three_cx_applications():
    # at eps -> saturation this only checks the channel fires three times:
    # survival probability of the joint no-error event is (1-eps)^3
    eps = 0.2
    c = Circuit(2, (Gate("swap", (0, 1)),), ((0, 0), (1, 1)))
    nm = NoiseModel(p1={}, p2={(0, 1): eps}, p_read={})
    d = sim_clifford_noisy(c, nm, 200_000, 23)
    # outcome stays 00 iff the combined Pauli has no X component on either
    # qubit; for the uniform 2q Pauli channel that happens w.p. 1/4 + 3/4*(...)
    p00 = d.counts.get("00", 0) / d.shots
    # Monte-Carlo against an independent trajectory model: each of the three
    # applications draws a uniform non-identity 2q Pauli with prob eps, and a
    # qubit's outcome flips iff its accumulated X-component is odd
    rng = np.random.default_rng(5)
    n = 200_000
    flip_a = np.zeros(n, dtype=bool)
    flip_b = np.zeros(n, dtype=bool)
    for _ in range(3):
        fire = rng.random(n) < eps
        pat = rng.integers(1, 16, size=n)
        flip_a ^= fire & (((pat >> 3) & 1) > 0)
        flip_b ^= fire & (((pat >> 1) & 1) > 0)
    expect = float(np.mean(~flip_a & ~flip_b))
    assert p00 == pytest.approx(expect, abs=0.01)


# ---------------------------------------------------------------------------
# statevector cross-checks

def test_statevector_bell():
    v = statevector(bell()).ravel()
    assert abs(v[0]) == pytest.approx(1 / math.sqrt(2))
    assert abs(v[3]) == pytest.approx(1 / math.sqrt(2))


def test_statevector_cap():
    with pytest.raises(TooManyQubitsError):
        statevector(Circuit(15))
    with pytest.raises(TooManyQubitsError):
        sim_statevector(Circuit(15, (), ((0, 0),)), 10, 0)


def test_statevector_ccx():
    c = Circuit(3, (Gate("x", (0,)), Gate("x", (1,)), Gate("ccx", (0, 1, 2))),
                tuple((q, q) for q in range(3)))
    assert sim_statevector(c, 50, 0).counts == {"111": 50}


def test_stabilizer_matches_statevector_small():
    rng = np.random.default_rng(42)
    for _ in range(10):
        n = int(rng.integers(1, 5))
        c = random_clifford_circuit(n, 15, rng)
        a = sim_clifford(c, SHOTS, 1)
        b = sim_statevector(c, SHOTS, 1)
        assert total_variation(a, b) < 0.035, c


def test_statevector_noisy_limit_matches_stabilizer():
    eps = 0.15
    nm = NoiseModel(p1={0: 0.05}, p2={(0, 1): eps}, p_read={1: 0.1})
    a = sim_clifford_noisy(bell(), nm, 100_000, 3)
    b = sim_statevector_noisy(bell(), nm, 100_000, 3)
    assert total_variation(a, b) < 0.02


def test_statevector_reset_trajectories():
    c = Circuit(2, (Gate("h", (0,)), Gate("cx", (0, 1)), Gate("reset", (0,))),
                ((0, 0), (1, 1)))
    d = sim_statevector(c, 4000, 9)
    assert set(d.counts) <= {"00", "10"}
    assert abs(d.counts.get("10", 0) / 4000 - 0.5) < 0.05


# ---------------------------------------------------------------------------
# kernel backend equivalence

def test_numpy_and_numba_kernels_identical():
    from qorc.sim import _tableau_numba, _tableau_numpy
    from qorc.sim.compile import compile_program

    rng = np.random.default_rng(77)
    c = random_clifford_circuit(6, 40, rng)
    nm = NoiseModel(
        p1={q: 0.02 for q in range(6)},
        p2={(a, b): 0.05 for a in range(6) for b in range(a + 1, 6)},
        p_read={q: 0.03 for q in range(6)},
    )
    prog = compile_program(c, nm)
    W = max((prog.n_vars + 63) // 64, 1)
    results = {}
    for name, mod in (("numba", _tableau_numba), ("numpy", _tableau_numpy)):
        M = np.zeros((len(prog.clbits), W), dtype=np.uint64)
        mconst = np.zeros(len(prog.clbits), dtype=np.uint8)
        mod.compile_pass(prog.num_qubits, prog.ops, W, M, mconst)
        results[name] = (M, mconst)
    assert np.array_equal(results["numba"][0], results["numpy"][0])
    assert np.array_equal(results["numba"][1], results["numpy"][1])


def test_kernel_env_flag_selects_backend():
    from qorc.sim import KERNEL_BACKEND

    assert KERNEL_BACKEND in ("numba", "numpy")


# ---------------------------------------------------------------------------
# property: stabilizer vs statevector agree on random Clifford circuits

@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 4), st.integers(0, 20))
def test_property_stabilizer_vs_statevector(seed, n, n_gates):
    rng = np.random.default_rng(seed)
    c = random_clifford_circuit(n, n_gates, rng)
    a = sim_clifford(c, 8000, 1)
    b = sim_statevector(c, 8000, 1)
    assert total_variation(a, b) < 0.06
