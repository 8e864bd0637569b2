"""Benchmark the numba and numpy stabilizer kernels on the same program.

Usage: python3 benchmarks/bench_kernels.py [--qubits N] [--gates G] [--shots S]
"""

import argparse
import time

import numpy as np

from qorc.circuit import Circuit, Gate
from qorc.sim import NoiseModel
from qorc.sim import _tableau_numba, _tableau_numpy
from qorc.sim.compile import compile_program


def random_clifford_circuit(n, gates, seed):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(gates):
        k = rng.integers(0, 3)
        if k == 2:
            a, b = rng.choice(n, 2, replace=False)
            out.append(Gate("cx", (int(a), int(b))))
        else:
            out.append(Gate(("h", "s")[k], (int(rng.integers(n)),)))
    return Circuit(n, tuple(out), tuple((q, q) for q in range(n)))


def bench(kernels, prog, shots, seed):
    m = len(prog.clbits)
    W = max((prog.n_vars + 63) // 64, 1)
    M = np.zeros((max(m, 1), W), np.uint64)
    mconst = np.zeros(max(m, 1), np.uint8)

    t0 = time.perf_counter()
    kernels.compile_pass(prog.num_qubits, prog.ops, W, M, mconst)
    t_compile = time.perf_counter() - t0

    rng = np.random.default_rng(seed)
    G = prog.g_start.shape[0]
    u_fire = rng.random((shots, G))
    u_pat = rng.random((shots, G))
    out = np.zeros((shots, (m + 63) // 64), np.uint64)
    t0 = time.perf_counter()
    kernels.sample_pass(M[:m], mconst[:m], prog.g_start, prog.g_kind,
                        prog.g_arity, prog.g_prob, u_fire, u_pat, out)
    t_sample = time.perf_counter() - t0
    return t_compile, t_sample, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--qubits", type=int, default=50)
    ap.add_argument("--gates", type=int, default=500)
    ap.add_argument("--shots", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    c = random_clifford_circuit(args.qubits, args.gates, args.seed)
    nm = NoiseModel(
        p1={q: 0.01 for q in range(args.qubits)},
        p2={(i, j): 0.05 for i in range(args.qubits) for j in range(i + 1, args.qubits)},
        p_read={q: 0.02 for q in range(args.qubits)},
    )
    prog = compile_program(c, nm)
    print(f"{args.qubits} qubits, {args.gates} gates, {prog.n_vars} noise/coin "
          f"variables, {args.shots} shots")

    # warm up the JIT before timing
    bench(_tableau_numba, prog, 64, args.seed)

    results = {}
    for name, mod in (("numba", _tableau_numba), ("numpy", _tableau_numpy)):
        tc, ts, out = bench(mod, prog, args.shots, args.seed)
        results[name] = out
        print(f"{name:6s} compile {tc * 1e3:8.1f} ms   "
              f"sample {ts * 1e3:8.1f} ms   ({args.shots / ts:,.0f} shots/s)")
    same = np.array_equal(results["numba"], results["numpy"])
    print("outputs identical:", same)


if __name__ == "__main__":
    main()
