"""Filter-then-rank scheduler: job specs, lifecycle, FIFO queue, execution."""

from __future__ import annotations

import json
import os
import threading
import time
from collections import deque
from dataclasses import dataclass, field

from .circuit import Circuit, TopologyGraph, cliffordize, compact, is_clifford, topology_to_circuit
from .device import Node, node_labels
from .errors import NoCandidatesError, QueueFullError, ValidationError
from .qasm import emit_qasm, parse_qasm
from .ranking import (
    DEFAULT_SCORING_SHOTS,
    Score,
    derive_rng,
    fidelity_score,
    topology_score,
)
from .sim import (
    MAX_STATEVECTOR_QUBITS,
    NoiseModel,
    sim_clifford_noisy,
    sim_statevector_noisy,
)
from .transpile import transpile

QUEUE_CAPACITY = 1024
DEFAULT_EXEC_SHOTS = 4096

STATES = (
    "Submitted",
    "Filtered",
    "Ranked",
    "Scheduled",
    "Running",
    "Completed",
    "Failed",
    "Unschedulable",
)

CONSTRAINT_FIELDS = (
    "max_avg_err2q",
    "max_avg_err1q",
    "max_avg_readout_err",
    "min_avg_t1_us",
    "min_avg_t2_us",
)

LOG_FRAME = "########## Noisy Simulation ##########"
LOG_FRAME_END = "##########"
CANARY_WARNING = "CANARY-SUBSTITUTE"


@dataclass(frozen=True)
class Constraints:
    max_avg_err2q: float | None = None
    max_avg_err1q: float | None = None
    max_avg_readout_err: float | None = None
    min_avg_t1_us: float | None = None
    min_avg_t2_us: float | None = None

    def to_json_dict(self) -> dict:
        return {k: getattr(self, k) for k in CONSTRAINT_FIELDS if getattr(self, k) is not None}


@dataclass(frozen=True)
class FidelityStrategy:
    target: float
    qasm: str

    def circuit(self) -> Circuit:
        return parse_qasm(self.qasm)

    def to_json_dict(self) -> dict:
        return {"type": "fidelity", "target": self.target, "qasm": self.qasm}


@dataclass(frozen=True)
class TopologyStrategy:
    graph: TopologyGraph

    def to_json_dict(self) -> dict:
        return {"type": "topology", "graph": self.graph.to_json_dict()}


@dataclass(frozen=True)
class JobSpec:
    name: str
    image_name: str
    num_qubits: int
    cpu_millicores: int
    mem_mb: int
    strategy: FidelityStrategy | TopologyStrategy
    constraints: Constraints = Constraints()
    seed: int = 0

    def validate(self):
        if not self.name:
            raise ValidationError("name", "must be nonempty")
        if self.num_qubits < 1:
            raise ValidationError("num_qubits", "must be >= 1")
        if self.cpu_millicores <= 0:
            raise ValidationError("cpu_millicores", "must be > 0")
        if self.mem_mb <= 0:
            raise ValidationError("mem_mb", "must be > 0")
        if isinstance(self.strategy, FidelityStrategy):
            if not 0.0 < self.strategy.target <= 1.0:
                raise ValidationError("strategy.target", "must be in (0, 1]")
            try:
                self.strategy.circuit()
            except Exception as exc:
                raise ValidationError("strategy.qasm", str(exc))

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "image_name": self.image_name,
            "num_qubits": self.num_qubits,
            "cpu_millicores": self.cpu_millicores,
            "mem_mb": self.mem_mb,
            "constraints": self.constraints.to_json_dict(),
            "strategy": self.strategy.to_json_dict(),
            "seed": self.seed,
        }


def spec_from_json(doc: dict) -> JobSpec:
    def need(key, typ, path=None):
        path = path or key
        if key not in doc:
            raise ValidationError(path, "missing required field")
        v = doc[key]
        if typ is int and isinstance(v, bool) or not isinstance(v, typ):
            raise ValidationError(path, f"expected {typ.__name__}")
        return v

    strat_doc = need("strategy", dict)
    stype = strat_doc.get("type")
    if stype == "fidelity":
        if "target" not in strat_doc or not isinstance(strat_doc["target"], (int, float)):
            raise ValidationError("strategy.target", "missing or non-numeric")
        if not isinstance(strat_doc.get("qasm"), str):
            raise ValidationError("strategy.qasm", "missing qasm text")
        strategy = FidelityStrategy(float(strat_doc["target"]), strat_doc["qasm"])
    elif stype == "topology":
        gdoc = strat_doc.get("graph")
        if not isinstance(gdoc, dict) or "nodes" not in gdoc or "edges" not in gdoc:
            raise ValidationError("strategy.graph", "missing nodes/edges")
        try:
            strategy = TopologyStrategy(TopologyGraph.from_json_dict(gdoc))
        except (ValueError, TypeError) as exc:
            raise ValidationError("strategy.graph", str(exc))
    else:
        raise ValidationError("strategy.type", "must be 'fidelity' or 'topology'")

    cdoc = doc.get("constraints") or {}
    if not isinstance(cdoc, dict):
        raise ValidationError("constraints", "expected object")
    for k in cdoc:
        if k not in CONSTRAINT_FIELDS:
            raise ValidationError(f"constraints.{k}", "unknown constraint")
        if not isinstance(cdoc[k], (int, float)):
            raise ValidationError(f"constraints.{k}", "expected number")
    spec = JobSpec(
        name=need("name", str),
        image_name=need("image_name", str),
        num_qubits=need("num_qubits", int),
        cpu_millicores=need("cpu_millicores", int),
        mem_mb=need("mem_mb", int),
        strategy=strategy,
        constraints=Constraints(**{k: float(v) for k, v in cdoc.items()}),
        seed=int(doc.get("seed", 0)),
    )
    spec.validate()
    return spec


@dataclass(frozen=True)
class JobPackage:
    """Inert packaging manifest persisted with the job (never executed)."""

    image_name: str
    qasm: str
    runner: str
    requirements: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "image_name": self.image_name,
            "qasm": self.qasm,
            "runner": self.runner,
            "requirements": list(self.requirements),
        }


@dataclass
class JobRecord:
    id: str
    spec: JobSpec
    state: str = "Submitted"
    score_table: dict[str, dict] = field(default_factory=dict)
    decision: str | None = None
    logs: str = ""
    timestamps: dict[str, float] = field(default_factory=dict)
    package: JobPackage | None = None

    def transition(self, state: str):
        assert state in STATES
        self.state = state
        self.timestamps[state] = time.time()

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "spec": self.spec.to_json_dict(),
            "state": self.state,
            "score_table": self.score_table,
            "decision": self.decision,
            "logs": self.logs,
            "timestamps": self.timestamps,
            "package": self.package.to_json_dict() if self.package else None,
        }


def record_from_json(doc: dict) -> JobRecord:
    pkg = doc.get("package")
    return JobRecord(
        id=doc["id"],
        spec=spec_from_json(doc["spec"]),
        state=doc["state"],
        score_table=doc.get("score_table", {}),
        decision=doc.get("decision"),
        logs=doc.get("logs", ""),
        timestamps=doc.get("timestamps", {}),
        package=JobPackage(
            pkg["image_name"], pkg["qasm"], pkg["runner"], tuple(pkg["requirements"])
        )
        if pkg
        else None,
    )


def filter_backends(spec: JobSpec, fleet: list[Node]) -> list[str]:
    """Backend ids fit for the job, in fleet order."""
    out = []
    c = spec.constraints
    for node in fleet:
        lab = node_labels(node)
        if lab.num_qubits < spec.num_qubits:
            continue
        if node.cpu_millicores < spec.cpu_millicores or node.mem_mb < spec.mem_mb:
            continue
        if c.max_avg_err2q is not None and lab.avg_err2q > c.max_avg_err2q:
            continue
        if c.max_avg_err1q is not None and lab.avg_err1q > c.max_avg_err1q:
            continue
        if c.max_avg_readout_err is not None and lab.avg_readout_err > c.max_avg_readout_err:
            continue
        if c.min_avg_t1_us is not None and lab.avg_t1_us < c.min_avg_t1_us:
            continue
        if c.min_avg_t2_us is not None and lab.avg_t2_us < c.min_avg_t2_us:
            continue
        out.append(node.backend.id)
    return out


def score_backend(spec: JobSpec, node: Node, shots: int = DEFAULT_SCORING_SHOTS) -> Score:
    if isinstance(spec.strategy, FidelityStrategy):
        return fidelity_score(
            spec.strategy.circuit(), spec.strategy.target, node.backend, shots, spec.seed
        )
    return topology_score(spec.strategy.graph, node.backend)


def rank(spec: JobSpec, filtered_ids: list[str], score_fn) -> dict[str, dict]:
    """One serialized Score (or Failed entry) per filtered backend id."""
    table: dict[str, dict] = {}
    for bid in filtered_ids:
        try:
            table[bid] = score_fn(bid).to_json_dict()
        except Exception as exc:
            table[bid] = {"failed": True, "error": f"{type(exc).__name__}: {exc}"}
    return table


def select(score_table: dict[str, dict]) -> str:
    """Argmin by value; ties by strategy detail, then lexicographic id."""
    candidates = [
        (entry["value"], _tie_key(entry.get("detail", {})), bid)
        for bid, entry in score_table.items()
        if not entry.get("failed")
    ]
    if not candidates:
        raise NoCandidatesError("no successfully scored backend")
    return min(candidates)[2]


def _tie_key(detail: dict) -> float:
    if "f_canary" in detail:
        return -detail["f_canary"]
    return detail.get("best_cost", 0.0)


def _remap_noise(nm: NoiseModel, remap: dict[int, int]) -> NoiseModel:
    return NoiseModel(
        p1={remap[q]: v for q, v in nm.p1.items() if q in remap},
        p2={
            (remap[a], remap[b]) if remap[a] < remap[b] else (remap[b], remap[a]): v
            for (a, b), v in nm.p2.items()
            if a in remap and b in remap
        },
        p_read={remap[q]: v for q, v in nm.p_read.items() if q in remap},
    )


def execute(record: JobRecord, node: Node, shots: int = DEFAULT_EXEC_SHOTS) -> JobRecord:
    """Transpile, simulate with backend noise, append the framed counts log."""
    assert record.state == "Scheduled"
    spec = record.spec
    b = node.backend
    record.transition("Running")
    lines = [f"job {record.id} ({spec.name}) running on {b.id}"]
    try:
        if isinstance(spec.strategy, FidelityStrategy):
            logical = spec.strategy.circuit()
        else:
            logical = topology_to_circuit(spec.strategy.graph)
        mapped = transpile(logical, b)
        nm = NoiseModel.from_backend(b)
        rng = derive_rng(spec.seed, b.id, 2)
        if is_clifford(mapped.circuit):
            dist = sim_clifford_noisy(mapped.circuit, nm, shots, rng)
        else:
            small, remap = compact(mapped.circuit)
            if small.num_qubits <= MAX_STATEVECTOR_QUBITS:
                dist = sim_statevector_noisy(small, _remap_noise(nm, remap), shots, rng)
            else:
                lines.append(
                    f"{CANARY_WARNING}: non-Clifford circuit exceeds the statevector "
                    "cap; executing the Clifford canary instead"
                )
                dist = sim_clifford_noisy(cliffordize(mapped.circuit), nm, shots, rng)
        lines.append(LOG_FRAME)
        lines.append(repr(dist.to_json_dict()))
        lines.append(LOG_FRAME_END)
        record.logs = "\n".join(lines) + "\n"
        record.transition("Completed")
    except Exception as exc:
        lines.append(f"execution failed: {type(exc).__name__}: {exc}")
        record.logs = "\n".join(lines) + "\n"
        record.transition("Failed")
    return record


class Scheduler:
    """FIFO queue plus the single drain loop; optionally journaled to disk."""

    def __init__(self, fleet: list[Node], data_dir: str | None = None,
                 scoring_shots: int = DEFAULT_SCORING_SHOTS,
                 exec_shots: int = DEFAULT_EXEC_SHOTS):
        self.fleet = list(fleet)
        self._by_id = {n.backend.id: n for n in self.fleet}
        self.scoring_shots = scoring_shots
        self.exec_shots = exec_shots
        self._queue: deque[str] = deque()
        self._records: dict[str, JobRecord] = {}
        self._lock = threading.Lock()
        self._counter = 0
        self._journal_path = None
        if data_dir is not None:
            os.makedirs(data_dir, exist_ok=True)
            self._journal_path = os.path.join(data_dir, "jobs.jsonl")
            self._load_journal()

    # -- persistence --------------------------------------------------------

    def _load_journal(self):
        if not os.path.exists(self._journal_path):
            return
        with open(self._journal_path, encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if not line:
                    continue
                rec = record_from_json(json.loads(line))
                self._records[rec.id] = rec
                num = int(rec.id.split("-")[-1])
                self._counter = max(self._counter, num)
        # anything not finished when the process died goes back in the queue
        for rid in sorted(self._records, key=lambda r: int(r.split("-")[-1])):
            if self._records[rid].state in ("Submitted",):
                self._queue.append(rid)

    def _journal(self, rec: JobRecord):
        if self._journal_path is None:
            return
        with open(self._journal_path, "a", encoding="utf-8") as f:
            f.write(json.dumps(rec.to_json_dict(), sort_keys=True) + "\n")

    # -- queue ---------------------------------------------------------------

    def submit(self, spec: JobSpec) -> str:
        spec.validate()
        with self._lock:
            if len(self._queue) >= QUEUE_CAPACITY:
                raise QueueFullError(f"queue at capacity {QUEUE_CAPACITY}")
            self._counter += 1
            rid = f"job-{self._counter:06d}"
            qasm = spec.strategy.qasm if isinstance(spec.strategy, FidelityStrategy) else emit_qasm(
                topology_to_circuit(spec.strategy.graph)
            ).text
            rec = JobRecord(
                id=rid,
                spec=spec,
                package=JobPackage(
                    image_name=spec.image_name,
                    qasm=qasm,
                    runner="load backend parameters, transpile the QASM payload, "
                    "run the transpiled circuit under the backend noise model",
                    requirements=("numpy",),
                ),
            )
            rec.transition("Submitted")
            self._records[rid] = rec
            self._queue.append(rid)
        self._journal(rec)
        return rid

    def get(self, job_id: str) -> JobRecord | None:
        return self._records.get(job_id)

    def records(self) -> list[JobRecord]:
        return [self._records[k] for k in sorted(self._records)]

    def queue_depth(self) -> int:
        return len(self._queue)

    def running_job(self) -> str | None:
        for rec in self._records.values():
            if rec.state == "Running":
                return rec.id
        return None

    # -- drain loop ----------------------------------------------------------

    def process_next(self) -> JobRecord | None:
        """Run one queued job through filter, rank, select, execute."""
        with self._lock:
            if not self._queue:
                return None
            rid = self._queue.popleft()
        rec = self._records[rid]
        spec = rec.spec

        filtered = filter_backends(spec, self.fleet)
        rec.transition("Filtered")
        if not filtered:
            rec.logs = "no backend passed the filter\n"
            rec.transition("Unschedulable")
            self._journal(rec)
            return rec

        rec.score_table = rank(
            spec, filtered, lambda bid: score_backend(spec, self._by_id[bid], self.scoring_shots)
        )
        rec.transition("Ranked")
        try:
            rec.decision = select(rec.score_table)
        except NoCandidatesError:
            rec.logs = "every candidate backend failed scoring\n"
            rec.transition("Unschedulable")
            self._journal(rec)
            return rec
        rec.transition("Scheduled")
        execute(rec, self._by_id[rec.decision], self.exec_shots)
        self._journal(rec)
        return rec

    def drain(self) -> list[JobRecord]:
        out = []
        while True:
            rec = self.process_next()
            if rec is None:
                return out
            out.append(rec)
