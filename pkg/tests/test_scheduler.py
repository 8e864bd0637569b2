import json

import pytest

from conftest import make_backend
from qorc.circuit import TopologyGraph
from qorc.device import Node
from qorc.errors import NoCandidatesError, QueueFullError, ValidationError
from qorc.scheduler import (
    CANARY_WARNING,
    LOG_FRAME,
    LOG_FRAME_END,
    QUEUE_CAPACITY,
    Constraints,
    FidelityStrategy,
    JobSpec,
    Scheduler,
    TopologyStrategy,
    filter_backends,
    rank,
    record_from_json,
    select,
    spec_from_json,
)

BELL_QASM = (
    'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\ncreg c[2];\n'
    "h q[0];\ncx q[0],q[1];\nmeasure q[0] -> c[0];\nmeasure q[1] -> c[1];\n"
)

T_QASM = (
    "OPENQASM 2.0;\nqreg q[2];\ncreg c[2];\nh q[0];\nt q[0];\ncx q[0],q[1];\n"
    "measure q[0] -> c[0];\nmeasure q[1] -> c[1];\n"
)


def small_fleet():
    return [
        Node(make_backend(3, [(0, 1), (1, 2)], err2q=0.05, err1q=0.01, readout=0.05, bid="dev-a")),
        Node(make_backend(4, [(0, 1), (1, 2), (2, 3)], err2q=0.3, err1q=0.05, readout=0.15, bid="dev-b")),
        Node(make_backend(2, [(0, 1)], err2q=0.01, err1q=0.001, readout=0.05, bid="dev-c")),
    ]


def bell_spec(**kw):
    defaults = dict(
        name="bell", image_name="img", num_qubits=2, cpu_millicores=100, mem_mb=128,
        strategy=FidelityStrategy(0.9, BELL_QASM),
    )
    defaults.update(kw)
    return JobSpec(**defaults)


# ---------------------------------------------------------------------------
# specs

def test_spec_validation():
    with pytest.raises(ValidationError, match="name"):
        bell_spec(name="").validate()
    with pytest.raises(ValidationError, match="num_qubits"):
        bell_spec(num_qubits=0).validate()
    with pytest.raises(ValidationError, match="strategy.target"):
        bell_spec(strategy=FidelityStrategy(0.0, BELL_QASM)).validate()
    with pytest.raises(ValidationError, match="strategy.qasm"):
        bell_spec(strategy=FidelityStrategy(0.9, "not qasm")).validate()
    bell_spec().validate()


def test_spec_json_round_trip():
    spec = bell_spec(constraints=Constraints(max_avg_err2q=0.4), seed=3)
    doc = spec.to_json_dict()
    assert spec_from_json(json.loads(json.dumps(doc))) == spec

    tspec = bell_spec(strategy=TopologyStrategy(TopologyGraph.from_pairs(3, [(0, 1)])))
    assert spec_from_json(tspec.to_json_dict()) == tspec


def test_spec_from_json_field_errors():
    base = bell_spec().to_json_dict()

    doc = dict(base)
    del doc["image_name"]
    with pytest.raises(ValidationError) as e:
        spec_from_json(doc)
    assert e.value.field == "image_name"

    doc = dict(base, num_qubits="two")
    with pytest.raises(ValidationError) as e:
        spec_from_json(doc)
    assert e.value.field == "num_qubits"

    doc = dict(base, strategy={"type": "nope"})
    with pytest.raises(ValidationError) as e:
        spec_from_json(doc)
    assert e.value.field == "strategy.type"

    doc = dict(base, constraints={"max_wibble": 1})
    with pytest.raises(ValidationError) as e:
        spec_from_json(doc)
    assert e.value.field == "constraints.max_wibble"


# ---------------------------------------------------------------------------
# filter / rank / select

def test_filter_backends_qubits_and_capacity():
    fleet = small_fleet()
    assert filter_backends(bell_spec(), fleet) == ["dev-a", "dev-b", "dev-c"]
    assert filter_backends(bell_spec(num_qubits=4), fleet) == ["dev-b"]
    assert filter_backends(bell_spec(cpu_millicores=10 ** 9), fleet) == []


def test_filter_backends_constraints():
    fleet = small_fleet()
    spec = bell_spec(constraints=Constraints(max_avg_err2q=0.1))
    assert filter_backends(spec, fleet) == ["dev-a", "dev-c"]
    spec = bell_spec(constraints=Constraints(max_avg_readout_err=0.1))
    assert filter_backends(spec, fleet) == ["dev-a", "dev-c"]
    spec = bell_spec(constraints=Constraints(min_avg_t1_us=1e9))
    assert filter_backends(spec, fleet) == []


def test_rank_captures_failures():
    from qorc.ranking import Score

    def score_fn(bid):
        if bid == "bad":
            raise RuntimeError("boom")
        return Score(0.1, {"f_canary": 0.9})

    table = rank(bell_spec(), ["good", "bad"], score_fn)
    assert table["good"]["value"] == 0.1
    assert table["bad"]["failed"] is True
    assert "RuntimeError" in table["bad"]["error"]


def test_select_tie_breaking():
    table = {
        "b": {"value": 0.1, "detail": {"f_canary": 0.9}},
        "a": {"value": 0.1, "detail": {"f_canary": 0.9}},
        "c": {"value": 0.1, "detail": {"f_canary": 0.95}},
        "z": {"value": 0.05, "detail": {}, "failed": True},
    }
    assert select(table) == "c"  # higher canary wins ties on value
    del table["c"]
    assert select(table) == "a"  # then lexicographic id
    with pytest.raises(NoCandidatesError):
        select({"z": {"failed": True, "error": "x"}})


# ---------------------------------------------------------------------------
# execution

def test_execute_clifford_logs_framed_counts():
    sched = Scheduler(small_fleet(), exec_shots=512)
    rid = sched.submit(bell_spec())
    rec = sched.process_next()
    assert rec.id == rid
    assert rec.state == "Completed"
    assert rec.decision == "dev-c"
    lines = rec.logs.splitlines()
    i = lines.index(LOG_FRAME)
    assert lines[i + 2] == LOG_FRAME_END
    counts = eval(lines[i + 1])
    assert sum(counts.values()) == 512
    assert set(counts) <= {"00", "01", "10", "11"}


def test_execute_non_clifford_uses_statevector():
    sched = Scheduler(small_fleet(), exec_shots=256)
    sched.submit(bell_spec(strategy=FidelityStrategy(0.5, T_QASM)))
    rec = sched.process_next()
    assert rec.state == "Completed"
    assert CANARY_WARNING not in rec.logs
    counts = eval(rec.logs.splitlines()[-2])
    assert sum(counts.values()) == 256


def test_execute_topology_strategy():
    sched = Scheduler(small_fleet(), exec_shots=128)
    spec = bell_spec(strategy=TopologyStrategy(TopologyGraph.from_pairs(2, [(0, 1)])))
    sched.submit(spec)
    rec = sched.process_next()
    assert rec.state == "Completed"
    assert LOG_FRAME in rec.logs


def test_unschedulable_when_filter_empty():
    sched = Scheduler(small_fleet())
    sched.submit(bell_spec(num_qubits=99))
    rec = sched.process_next()
    assert rec.state == "Unschedulable"
    assert rec.logs.strip() == "no backend passed the filter"


def test_queue_capacity():
    sched = Scheduler(small_fleet())
    for _ in range(QUEUE_CAPACITY):
        sched.submit(bell_spec())
    with pytest.raises(QueueFullError):
        sched.submit(bell_spec())
    assert sched.queue_depth() == QUEUE_CAPACITY


def test_job_ids_sequential():
    sched = Scheduler(small_fleet())
    assert sched.submit(bell_spec()) == "job-000001"
    assert sched.submit(bell_spec()) == "job-000002"


def test_record_json_round_trip():
    sched = Scheduler(small_fleet(), exec_shots=64)
    sched.submit(bell_spec())
    rec = sched.process_next()
    doc = json.loads(json.dumps(rec.to_json_dict()))
    again = record_from_json(doc)
    assert again.to_json_dict() == rec.to_json_dict()


def test_journal_persistence(tmp_path):
    d = str(tmp_path / "data")
    sched = Scheduler(small_fleet(), data_dir=d, exec_shots=128)
    sched.submit(bell_spec())
    sched.submit(bell_spec(name="bell2"))
    done = sched.drain()
    assert [r.state for r in done] == ["Completed", "Completed"]

    # a restarted scheduler reproduces the records exactly
    sched2 = Scheduler(small_fleet(), data_dir=d)
    assert [r.to_json_dict() for r in sched2.records()] == [
        r.to_json_dict() for r in sched.records()
    ]
    # and continues the id sequence
    assert sched2.submit(bell_spec(name="bell3")) == "job-000003"


def test_journal_requeues_unfinished(tmp_path):
    d = str(tmp_path / "data")
    sched = Scheduler(small_fleet(), data_dir=d)
    sched.submit(bell_spec())  # never processed
    sched2 = Scheduler(small_fleet(), data_dir=d, exec_shots=64)
    assert sched2.queue_depth() == 1
    rec = sched2.process_next()
    assert rec.state == "Completed"


def test_execution_deterministic_given_seed():
    a = Scheduler(small_fleet(), exec_shots=512)
    b = Scheduler(small_fleet(), exec_shots=512)
    a.submit(bell_spec(seed=5))
    b.submit(bell_spec(seed=5))
    ra, rb = a.process_next(), b.process_next()
    assert ra.logs == rb.logs
    assert ra.score_table == rb.score_table
