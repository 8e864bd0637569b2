"""Command-line interface: admin commands and experiment reproductions."""

from __future__ import annotations

import json
import sys

import click
import httpx

from .device import generate_fleet, registry_load, registry_save
from .benchcircuits import benchmark_circuits
from .experiments import (
    DEFAULT_REPEATS,
    DEFAULT_SWEEP,
    DEFAULT_TRIALS,
    exp_default_topologies,
    exp_fidelity,
    exp_filter_sweep,
    exp_topology_choice,
)

DEFAULT_URL = "http://127.0.0.1:8000"


def _api_fail(resp: httpx.Response):
    try:
        body = resp.json()
        code = body.get("code", "ApiError")
        message = body.get("message", "")
    except Exception:
        code, message = "ApiError", resp.text
    click.echo(f"{code}: {message}", err=True)
    sys.exit(1)


def _load_fleet(path: str):
    return registry_load(path)


def _emit_report(report: dict, table_lines: list[str]):
    for line in table_lines:
        click.echo(line)
    click.echo("JSON:")
    click.echo(json.dumps(report, sort_keys=True, indent=2))


@click.group()
def main():
    """qorc: schedule quantum circuits onto a simulated backend fleet."""


@main.command("gen-fleet")
@click.option("--seed", type=int, default=7, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def gen_fleet(seed, out):
    """Generate the 100-backend fleet registry."""
    fleet = generate_fleet(seed)
    registry_save(fleet, out)
    click.echo(f"wrote {len(fleet)} backends to {out}")


@main.command()
@click.option("--listen", default="127.0.0.1:8000", show_default=True)
@click.option("--data-dir", type=click.Path(file_okay=False), default=None)
@click.option("--fleet", "fleet_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--seed", type=int, default=7, show_default=True,
              help="fleet generation seed when --fleet is not given")
def serve(listen, data_dir, fleet_path, seed):
    """Run the HTTP service (master + meta server)."""
    from .scheduler import Scheduler
    from .service import serve as _serve

    fleet = _load_fleet(fleet_path) if fleet_path else generate_fleet(seed)
    host, _, port = listen.rpartition(":")
    if not host or not port.isdigit():
        raise click.UsageError("--listen must look like host:port")
    _serve(Scheduler(fleet, data_dir=data_dir), host, int(port))


@main.command()
@click.argument("jobfile", type=click.Path(exists=True, dir_okay=False))
@click.option("--qasm", "qasm_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="QASM file injected into a fidelity strategy")
@click.option("--url", default=DEFAULT_URL, show_default=True)
def submit(jobfile, qasm_path, url):
    """Submit a JobSpec JSON file."""
    with open(jobfile, encoding="utf-8") as f:
        doc = json.load(f)
    if qasm_path is not None:
        with open(qasm_path, encoding="utf-8") as f:
            doc.setdefault("strategy", {})["qasm"] = f.read()
    resp = httpx.post(f"{url}/jobs", json=doc)
    if resp.status_code != 201:
        _api_fail(resp)
    click.echo(resp.json()["job_id"])


@main.command()
@click.argument("job_id")
@click.option("--url", default=DEFAULT_URL, show_default=True)
def status(job_id, url):
    """Print a job record."""
    resp = httpx.get(f"{url}/jobs/{job_id}")
    if resp.status_code != 200:
        _api_fail(resp)
    doc = resp.json()
    click.echo(f"{doc['id']}: {doc['state']}" + (f" on {doc['decision']}" if doc.get("decision") else ""))
    click.echo(json.dumps(doc, sort_keys=True, indent=2))


@main.command()
@click.argument("job_id")
@click.option("--url", default=DEFAULT_URL, show_default=True)
def logs(job_id, url):
    """Print job logs (available once the job has finished)."""
    resp = httpx.get(f"{url}/jobs/{job_id}/logs")
    if resp.status_code != 200:
        _api_fail(resp)
    click.echo(resp.text, nl=False)


@main.group()
def exp():
    """Experiment reproductions (in-process, seed-deterministic)."""


@exp.command("default-topologies")
@click.option("--fleet", "fleet_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--trials", type=int, default=DEFAULT_TRIALS, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def exp_default_topologies_cmd(fleet_path, trials, seed):
    """Topology scheduling vs a uniform-random pick, per default topology."""
    report = exp_default_topologies(_load_fleet(fleet_path), trials=trials, seed=seed)
    lines = [f"{'topology':16s} {'sched score':>12s} {'avg decrease':>13s} {'wins':>9s}"]
    for name, d in sorted(report["topologies"].items()):
        lines.append(
            f"{name:16s} {d['scheduler_score']:12.4f} {d['avg_decrease']:13.4f} "
            f"{d['wins']:>4d}/{trials}"
        )
    _emit_report(report, lines)


@exp.command("fidelity")
@click.option("--fleet", "fleet_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--circuits", default="bv,circ,circ2,grover,hsp,rep", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--shots", type=int, default=4096, show_default=True)
def exp_fidelity_cmd(fleet_path, circuits, seed, shots):
    """Random vs scheduler vs oracle fidelity over the benchmark circuits."""
    all_circuits = benchmark_circuits()
    names = [n.strip() for n in circuits.split(",") if n.strip()]
    unknown = [n for n in names if n not in all_circuits]
    if unknown:
        raise click.UsageError(f"unknown circuits: {', '.join(unknown)}")
    selected = {n: all_circuits[n] for n in names}
    report = exp_fidelity(_load_fleet(fleet_path), selected, seed=seed, shots=shots)
    lines = [f"{'circuit':8s} {'random':>8s} {'sched':>8s} {'oracle':>8s} {'median':>8s} backends(sched/oracle)"]
    for name, d in sorted(report["circuits"].items()):
        fmt = lambda v: f"{v:8.4f}" if v is not None else "     n/a"
        lines.append(
            f"{name:8s} {fmt(d['random_fidelity'])} {fmt(d['scheduler_fidelity'])} "
            f"{fmt(d['oracle_fidelity'])} {fmt(d['fleet_median_fidelity'])} "
            f"{d['scheduler_backend']}/{d['oracle_backend']}"
        )
    _emit_report(report, lines)


@exp.command("topology-choice")
@click.option("--repeats", type=int, default=DEFAULT_REPEATS, show_default=True)
def exp_topology_choice_cmd(repeats):
    """Tree/ring/line 3-device registry; user topology = the tree."""
    report = exp_topology_choice(repeats=repeats)
    lines = [f"{'device':12s} {'chosen':>7s} {'score':>8s}"]
    for bid in sorted(report["scores"]):
        lines.append(
            f"{bid:12s} {report['chosen'].get(bid, 0):>7d} {report['scores'][bid]:8.4f}"
        )
    _emit_report(report, lines)


@exp.command("filter-sweep")
@click.option("--fleet", "fleet_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--thresholds", default=None,
              help="comma-separated max_avg_err2q values (default: 11 points, 0.07..0.70)")
def exp_filter_sweep_cmd(fleet_path, thresholds):
    """Filtered-device counts for a max_avg_err2q sweep."""
    if thresholds is not None:
        try:
            ths = [float(t) for t in thresholds.split(",") if t.strip()]
        except ValueError:
            raise click.UsageError("--thresholds must be comma-separated numbers")
        if not ths:
            raise click.UsageError("--thresholds must be nonempty")
    else:
        ths = list(DEFAULT_SWEEP)
    report = exp_filter_sweep(_load_fleet(fleet_path), ths)
    lines = [f"{'threshold':>10s} {'devices':>8s}"]
    for th, n in zip(report["thresholds"], report["counts"]):
        lines.append(f"{th:10.3f} {n:8d}")
    _emit_report(report, lines)


if __name__ == "__main__":
    main()
