import dataclasses

import pytest

from qorc.device import (
    GenParams,
    MAX_DEGREE,
    SETUP_ERR_RANGE,
    generate_backend,
    labels_of,
    node_labels,
    registry_load,
    registry_save,
    scale_errors,
)
from qorc.errors import InvalidParamsError, SchemaError


def _connected(b):
    adj = b.neighbors()
    seen = {0}
    stack = [0]
    while stack:
        for v in adj[stack.pop()]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == b.num_qubits


@pytest.mark.parametrize("seed,ep", [(0, 0.0), (1, 0.1), (2, 0.5), (3, 0.98)])
def test_generate_backend_invariants(seed, ep):
    b = generate_backend(GenParams(num_qubits=12, edge_prob=ep, seed=seed))
    assert _connected(b)
    deg = {q: len(v) for q, v in b.neighbors().items()}
    # the degree cap may only be exceeded by forced component bridging
    assert max(deg.values()) <= MAX_DEGREE + 1
    lo, hi = SETUP_ERR_RANGE
    assert all(lo <= v <= hi for v in b.err2q.values())
    assert all(lo <= v <= hi for v in b.err1q.values())
    assert all(v in (0.05, 0.15) for v in b.readout_err.values())
    for q in range(b.num_qubits):
        assert b.t2_us[q] <= 2.0 * b.t1_us[q]
    assert set(b.err2q) == set(b.coupling)
    assert all(a < bb for a, bb in b.coupling)


def test_generate_backend_deterministic():
    p = GenParams(num_qubits=10, edge_prob=0.4, seed=99)
    assert generate_backend(p) == generate_backend(p)
    assert generate_backend(p) != generate_backend(dataclasses.replace(p, seed=100))


def test_gen_params_validation():
    with pytest.raises(InvalidParamsError):
        GenParams(num_qubits=1, edge_prob=0.5).validate()
    with pytest.raises(InvalidParamsError):
        GenParams(num_qubits=4, edge_prob=1.5).validate()
    with pytest.raises(InvalidParamsError):
        GenParams(num_qubits=4, edge_prob=0.5, err2q_range=(0.7, 0.1)).validate()
    with pytest.raises(InvalidParamsError):
        GenParams(num_qubits=4, edge_prob=0.5, readout_choices=()).validate()


def test_fleet_shape(fleet14):
    assert len(fleet14) == 100
    ids = [n.backend.id for n in fleet14]
    assert len(set(ids)) == 100
    assert ids[0] == "backend-000-q15-e10"
    assert ids[-1] == "backend-099-q100-e98"
    sizes = sorted({n.backend.num_qubits for n in fleet14})
    assert sizes == [15, 20, 27, 35, 50, 60, 78, 85, 95, 100]


def test_registry_round_trip(fleet14, tmp_path):
    path = str(tmp_path / "registry.json")
    registry_save(fleet14[:7], path)
    again = registry_load(path)
    assert again == fleet14[:7]
    # byte-identical on re-save
    registry_save(again, str(tmp_path / "registry2.json"))
    a = (tmp_path / "registry.json").read_bytes()
    b = (tmp_path / "registry2.json").read_bytes()
    assert a == b


def test_registry_schema_errors(fleet14, tmp_path):
    import json

    path = tmp_path / "reg.json"
    registry_save(fleet14[:1], str(path))
    doc = json.loads(path.read_text())

    bad = json.loads(json.dumps(doc))
    bad["version"] = 2
    path.write_text(json.dumps(bad))
    with pytest.raises(SchemaError):
        registry_load(str(path))

    bad = json.loads(json.dumps(doc))
    first_edge = next(iter(bad["backends"][0]["err2q"]))
    bad["backends"][0]["err2q"][first_edge] = 1.5
    path.write_text(json.dumps(bad))
    with pytest.raises(SchemaError, match="err2q"):
        registry_load(str(path))

    bad = json.loads(json.dumps(doc))
    del bad["backends"][0]["t1_us"]["0"]
    path.write_text(json.dumps(bad))
    with pytest.raises(SchemaError, match="t1_us"):
        registry_load(str(path))

    bad = json.loads(json.dumps(doc))
    del bad["backends"][0]["id"]
    path.write_text(json.dumps(bad))
    with pytest.raises(SchemaError, match="id"):
        registry_load(str(path))


def test_labels(fleet14):
    n = fleet14[3]
    lab = node_labels(n)
    b = n.backend
    assert lab.num_qubits == b.num_qubits
    assert lab.avg_err2q == pytest.approx(sum(b.err2q.values()) / len(b.err2q))
    assert lab.avg_readout_err == pytest.approx(
        sum(b.readout_err.values()) / b.num_qubits
    )
    assert lab.cpu_millicores == n.cpu_millicores


def test_scale_errors(fleet14):
    b = fleet14[0].backend
    s = scale_errors(b, 0.5)
    assert s.coupling == b.coupling
    for e in b.err2q:
        assert s.err2q[e] == pytest.approx(0.5 * b.err2q[e])
    assert labels_of(s).avg_err1q == pytest.approx(0.5 * labels_of(b).avg_err1q)
