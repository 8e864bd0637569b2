"""Numba kernels for the symbolic stabilizer pass and shot sampling.

The tableau holds 2n+1 rows (n destabilizers, n stabilizers, one scratch
row). Signs are affine functions over GF(2) of the symbolic variables
(measurement coins, injected Pauli noise components, readout flips), stored
as a constant bit plus a packed uint64 bit-vector per row. Gates and
measurements only ever XOR signs, so one structural pass yields, for every
measured clbit, an affine form that sampling evaluates per shot.
"""

import numpy as np
from numba import njit

OP_H = 0
OP_S = 1
OP_SDG = 2
OP_X = 3
OP_Y = 4
OP_Z = 5
OP_CX = 6
OP_SWAP = 7
OP_RESET = 8
OP_MEASURE = 9

KIND_PAULI = 0
KIND_BERNOULLI = 1
KIND_COIN = 2


@njit(cache=True)
def _set_bit(vec, row, var):
    vec[row, var >> 6] ^= np.uint64(1) << np.uint64(var & 63)


@njit(cache=True)
def _rowsum(x, z, sc, sv, h, i, n, W):
    # row h := row i * row h; phase guaranteed real
    g = 0
    for q in range(n):
        x1 = x[i, q]
        z1 = z[i, q]
        x2 = x[h, q]
        z2 = z[h, q]
        if x1 == 1:
            if z1 == 1:
                g += z2 - x2
            else:
                g += z2 * (2 * x2 - 1)
        elif z1 == 1:
            g += x2 * (1 - 2 * z2)
        x[h, q] ^= x1
        z[h, q] ^= z1
    g += 2 * sc[h] + 2 * sc[i]
    sc[h] = np.uint8((g % 4) // 2)
    for w in range(W):
        sv[h, w] ^= sv[i, w]


@njit(cache=True)
def _measure_affine(x, z, sc, sv, q, n, W, coin_var, out_vec, project):
    """Measure qubit q; outcome affine form written into out_vec (W words).

    Returns the constant bit. When the outcome is random the state is
    projected and the fresh coin becomes the outcome.
    """
    rows = 2 * n
    p = -1
    for r in range(n, rows):
        if x[r, q] == 1:
            p = r
            break
    for w in range(W):
        out_vec[w] = np.uint64(0)
    if p >= 0:
        for r in range(rows):
            if r != p and x[r, q] == 1:
                _rowsum(x, z, sc, sv, r, p, n, W)
        if project:
            d = p - n
            for c in range(n):
                x[d, c] = x[p, c]
                z[d, c] = z[p, c]
                x[p, c] = 0
                z[p, c] = 0
            z[p, q] = 1
            sc[d] = sc[p]
            sc[p] = 0
            for w in range(W):
                sv[d, w] = sv[p, w]
                sv[p, w] = np.uint64(0)
            sv[p, coin_var >> 6] = np.uint64(1) << np.uint64(coin_var & 63)
        out_vec[coin_var >> 6] = np.uint64(1) << np.uint64(coin_var & 63)
        return np.uint8(0)
    # deterministic: accumulate into the scratch row
    s = rows
    for c in range(n):
        x[s, c] = 0
        z[s, c] = 0
    sc[s] = 0
    for w in range(W):
        sv[s, w] = np.uint64(0)
    for i in range(n):
        if x[i, q] == 1:
            _rowsum(x, z, sc, sv, s, i + n, n, W)
    for w in range(W):
        out_vec[w] = sv[s, w]
    return sc[s]


@njit(cache=True)
def _inject_pauli_component(x, z, sv, n, q, var, flip_on_x):
    """Sign flips for one Pauli component: Z-part flips rows with x=1,
    X-part flips rows with z=1."""
    rows = 2 * n
    word = var >> 6
    bit = np.uint64(1) << np.uint64(var & 63)
    if flip_on_x:
        for r in range(rows):
            if x[r, q] == 1:
                sv[r, word] ^= bit
    else:
        for r in range(rows):
            if z[r, q] == 1:
                sv[r, word] ^= bit


@njit(cache=True)
def _inject_2q(x, z, sv, n, a, b, v0):
    _inject_pauli_component(x, z, sv, n, a, v0, False)  # X on a
    _inject_pauli_component(x, z, sv, n, a, v0 + 1, True)  # Z on a
    _inject_pauli_component(x, z, sv, n, b, v0 + 2, False)  # X on b
    _inject_pauli_component(x, z, sv, n, b, v0 + 3, True)  # Z on b


@njit(cache=True)
def compile_pass(n, ops, W, M, mconst):
    """Run the symbolic pass; fills outcome rows M (n_meas, W) and mconst."""
    rows = 2 * n + 1
    x = np.zeros((rows, n), np.uint8)
    z = np.zeros((rows, n), np.uint8)
    sc = np.zeros(rows, np.uint8)
    sv = np.zeros((rows, W), np.uint64)
    for i in range(n):
        x[i, i] = 1
        z[n + i, i] = 1
    scratch = np.zeros(W, np.uint64)
    mi = 0
    for t in range(ops.shape[0]):
        op = ops[t, 0]
        a = ops[t, 1]
        b = ops[t, 2]
        v0 = ops[t, 3]
        v1 = ops[t, 4]
        if op == OP_H:
            for r in range(rows - 1):
                sc[r] ^= x[r, a] & z[r, a]
                tmp = x[r, a]
                x[r, a] = z[r, a]
                z[r, a] = tmp
        elif op == OP_S:
            for r in range(rows - 1):
                sc[r] ^= x[r, a] & z[r, a]
                z[r, a] ^= x[r, a]
        elif op == OP_SDG:
            for r in range(rows - 1):
                sc[r] ^= x[r, a] & (z[r, a] ^ 1)
                z[r, a] ^= x[r, a]
        elif op == OP_X:
            for r in range(rows - 1):
                sc[r] ^= z[r, a]
        elif op == OP_Y:
            for r in range(rows - 1):
                sc[r] ^= x[r, a] ^ z[r, a]
        elif op == OP_Z:
            for r in range(rows - 1):
                sc[r] ^= x[r, a]
        elif op == OP_CX:
            for r in range(rows - 1):
                sc[r] ^= x[r, a] & z[r, b] & (x[r, b] ^ z[r, a] ^ 1)
                x[r, b] ^= x[r, a]
                z[r, a] ^= z[r, b]
        elif op == OP_SWAP:
            for r in range(rows - 1):
                tmp = x[r, a]
                x[r, a] = x[r, b]
                x[r, b] = tmp
                tmp = z[r, a]
                z[r, a] = z[r, b]
                z[r, b] = tmp
        elif op == OP_RESET:
            const = _measure_affine(x, z, sc, sv, a, n, W, v0, scratch, True)
            # conditional X on the affine outcome returns the qubit to |0>
            for r in range(2 * n):
                if z[r, a] == 1:
                    sc[r] ^= const
                    for w in range(W):
                        sv[r, w] ^= scratch[w]
        elif op == OP_MEASURE:
            const = _measure_affine(x, z, sc, sv, a, n, W, v0, scratch, True)
            for w in range(W):
                M[mi, w] = scratch[w]
            mconst[mi] = const
            if v1 >= 0:
                _set_bit(M, mi, v1)
            mi += 1
        # Pauli noise after the gate
        if v0 >= 0:
            if op <= OP_Z:
                _inject_pauli_component(x, z, sv, n, a, v0, False)
                _inject_pauli_component(x, z, sv, n, a, v0 + 1, True)
            elif op == OP_CX:
                _inject_2q(x, z, sv, n, a, b, v0)
            elif op == OP_SWAP:
                _inject_2q(x, z, sv, n, a, b, v0)
                _inject_2q(x, z, sv, n, a, b, v0 + 4)
                _inject_2q(x, z, sv, n, a, b, v0 + 8)
    return mi


@njit(cache=True)
def sample_pass(M, mconst, g_start, g_kind, g_arity, g_prob, u_fire, u_pat, out):
    shots = u_fire.shape[0]
    G = g_start.shape[0]
    m = M.shape[0]
    W = M.shape[1]
    acc = np.zeros(W, np.uint64)
    for s in range(shots):
        for w in range(W):
            acc[w] = np.uint64(0)
        for g in range(G):
            k = g_kind[g]
            if k == KIND_COIN:
                if u_fire[s, g] < 0.5:
                    acc[g_start[g] >> 6] ^= np.uint64(1) << np.uint64(g_start[g] & 63)
            elif k == KIND_BERNOULLI:
                if u_fire[s, g] < g_prob[g]:
                    acc[g_start[g] >> 6] ^= np.uint64(1) << np.uint64(g_start[g] & 63)
            else:
                if u_fire[s, g] < g_prob[g]:
                    nchoices = (1 << g_arity[g]) - 1
                    pat = 1 + int(u_pat[s, g] * nchoices)
                    if pat > nchoices:
                        pat = nchoices
                    for bi in range(g_arity[g]):
                        if (pat >> bi) & 1:
                            v = g_start[g] + bi
                            acc[v >> 6] ^= np.uint64(1) << np.uint64(v & 63)
        for j in range(m):
            fold = np.uint64(0)
            for w in range(W):
                fold ^= M[j, w] & acc[w]
            fold ^= fold >> np.uint64(32)
            fold ^= fold >> np.uint64(16)
            fold ^= fold >> np.uint64(8)
            fold ^= fold >> np.uint64(4)
            fold ^= fold >> np.uint64(2)
            fold ^= fold >> np.uint64(1)
            bit = (np.uint8(fold & np.uint64(1))) ^ mconst[j]
            if bit:
                out[s, j >> 6] ^= np.uint64(1) << np.uint64(j & 63)
