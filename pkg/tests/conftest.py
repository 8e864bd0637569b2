import numpy as np
import pytest

from qorc.circuit import Circuit, Gate
from qorc.device import Backend


def make_backend(
    n,
    edges,
    err2q=0.1,
    err1q=0.01,
    readout=0.05,
    bid="test-backend",
):
    e2 = {tuple(sorted(e)): err2q for e in edges}
    return Backend(
        id=bid,
        num_qubits=n,
        coupling=frozenset(e2),
        err2q=e2,
        err1q={q: err1q for q in range(n)},
        readout_err={q: readout for q in range(n)},
        readout_len_ns={q: 30.0 for q in range(n)},
        t1_us={q: 500e3 for q in range(n)},
        t2_us={q: 500e3 for q in range(n)},
        basis_gates=("u1", "u2", "u3", "cx"),
    )


def random_clifford_circuit(n, n_gates, rng, measures="all"):
    kinds = ("h", "s", "sdg", "x", "y", "z")
    gates = []
    for _ in range(n_gates):
        if n >= 2 and rng.random() < 0.35:
            a, b = rng.choice(n, 2, replace=False)
            kind = "cx" if rng.random() < 0.8 else "swap"
            gates.append(Gate(kind, (int(a), int(b))))
        else:
            gates.append(Gate(kinds[rng.integers(len(kinds))], (int(rng.integers(n)),)))
    meas = tuple((q, q) for q in range(n)) if measures == "all" else tuple(measures)
    return Circuit(n, tuple(gates), meas)


@pytest.fixture(scope="session")
def fleet14():
    from qorc.device import generate_fleet

    return generate_fleet(14)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def bell():
    return Circuit(2, (Gate("h", (0,)), Gate("cx", (0, 1))), ((0, 0), (1, 1)))
