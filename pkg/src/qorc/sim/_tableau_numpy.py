"""Pure-numpy fallback for the stabilizer kernels.

Mirrors _tableau_numba exactly: same opcodes, same variable layout, same
arithmetic, so both backends produce bit-identical outcome matrices and,
given the same uniforms, bit-identical samples. Gate updates vectorize over
tableau rows; sampling vectorizes over shots.
"""

import numpy as np

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

_ONE = np.uint64(1)


def _rowsum(x, z, sc, sv, h, i):
    x1 = x[i].astype(np.int64)
    z1 = z[i].astype(np.int64)
    x2 = x[h].astype(np.int64)
    z2 = z[h].astype(np.int64)
    g = np.where(
        x1 == 1,
        np.where(z1 == 1, z2 - x2, z2 * (2 * x2 - 1)),
        np.where(z1 == 1, x2 * (1 - 2 * z2), 0),
    )
    total = int(g.sum()) + 2 * int(sc[h]) + 2 * int(sc[i])
    sc[h] = np.uint8((total % 4) // 2)
    x[h] ^= x[i]
    z[h] ^= z[i]
    sv[h] ^= sv[i]


def _measure_affine(x, z, sc, sv, q, n, W, coin_var, out_vec, project):
    rows = 2 * n
    out_vec[:] = 0
    stab = np.nonzero(x[n:rows, q])[0]
    if stab.size:
        p = n + int(stab[0])
        for r in np.nonzero(x[:rows, q])[0]:
            if r != p:
                _rowsum(x, z, sc, sv, int(r), p)
        if project:
            d = p - n
            x[d] = x[p]
            z[d] = z[p]
            x[p] = 0
            z[p] = 0
            z[p, q] = 1
            sc[d] = sc[p]
            sc[p] = 0
            sv[d] = sv[p]
            sv[p] = 0
            sv[p, coin_var >> 6] = _ONE << np.uint64(coin_var & 63)
        out_vec[coin_var >> 6] = _ONE << np.uint64(coin_var & 63)
        return np.uint8(0)
    s = rows
    x[s] = 0
    z[s] = 0
    sc[s] = 0
    sv[s] = 0
    for i in np.nonzero(x[:n, q])[0]:
        _rowsum(x, z, sc, sv, s, int(i) + n)
    out_vec[:] = sv[s]
    return sc[s]


def _inject_pauli_component(x, z, sv, n, q, var, flip_on_x):
    rows = 2 * n
    bit = _ONE << np.uint64(var & 63)
    mask = (x[:rows, q] == 1) if flip_on_x else (z[:rows, q] == 1)
    sv[:rows, var >> 6][mask] ^= bit


def _inject_2q(x, z, sv, n, a, b, v0):
    _inject_pauli_component(x, z, sv, n, a, v0, False)
    _inject_pauli_component(x, z, sv, n, a, v0 + 1, True)
    _inject_pauli_component(x, z, sv, n, b, v0 + 2, False)
    _inject_pauli_component(x, z, sv, n, b, v0 + 3, True)


def compile_pass(n, ops, W, M, mconst):
    rows = 2 * n + 1
    x = np.zeros((rows, n), np.uint8)
    z = np.zeros((rows, n), np.uint8)
    sc = np.zeros(rows, np.uint8)
    sv = np.zeros((rows, W), np.uint64)
    idx = np.arange(n)
    x[idx, idx] = 1
    z[n + idx, idx] = 1
    scratch = np.zeros(W, np.uint64)
    R = slice(0, 2 * n)
    mi = 0
    for t in range(ops.shape[0]):
        op, a, b, v0, v1 = (int(v) for v in ops[t])
        if op == OP_H:
            sc[R] ^= x[R, a] & z[R, a]
            xa = x[R, a].copy()
            x[R, a] = z[R, a]
            z[R, a] = xa
        elif op == OP_S:
            sc[R] ^= x[R, a] & z[R, a]
            z[R, a] ^= x[R, a]
        elif op == OP_SDG:
            sc[R] ^= x[R, a] & (z[R, a] ^ 1)
            z[R, a] ^= x[R, a]
        elif op == OP_X:
            sc[R] ^= z[R, a]
        elif op == OP_Y:
            sc[R] ^= x[R, a] ^ z[R, a]
        elif op == OP_Z:
            sc[R] ^= x[R, a]
        elif op == OP_CX:
            sc[R] ^= x[R, a] & z[R, b] & (x[R, b] ^ z[R, a] ^ 1)
            x[R, b] ^= x[R, a]
            z[R, a] ^= z[R, b]
        elif op == OP_SWAP:
            xa = x[R, a].copy()
            x[R, a] = x[R, b]
            x[R, b] = xa
            za = z[R, a].copy()
            z[R, a] = z[R, b]
            z[R, b] = za
        elif op == OP_RESET:
            const = _measure_affine(x, z, sc, sv, a, n, W, v0, scratch, True)
            mask = z[R, a] == 1
            sc[R][mask] ^= const
            sv[R][mask] ^= scratch
        elif op == OP_MEASURE:
            const = _measure_affine(x, z, sc, sv, a, n, W, v0, scratch, True)
            M[mi] = scratch
            mconst[mi] = const
            if v1 >= 0:
                M[mi, v1 >> 6] ^= _ONE << np.uint64(v1 & 63)
            mi += 1
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


def sample_pass(M, mconst, g_start, g_kind, g_arity, g_prob, u_fire, u_pat, out):
    shots = u_fire.shape[0]
    G = g_start.shape[0]
    m, W = M.shape
    acc = np.zeros((shots, W), np.uint64)
    for g in range(G):
        start = int(g_start[g])
        word = start >> 6
        bit = _ONE << np.uint64(start & 63)
        kind = int(g_kind[g])
        if kind == KIND_COIN:
            fired = u_fire[:, g] < 0.5
            acc[fired, word] ^= bit
        elif kind == KIND_BERNOULLI:
            fired = u_fire[:, g] < g_prob[g]
            acc[fired, word] ^= bit
        else:
            fired = u_fire[:, g] < g_prob[g]
            arity = int(g_arity[g])
            nchoices = (1 << arity) - 1
            pat = 1 + (u_pat[:, g] * nchoices).astype(np.int64)
            np.minimum(pat, nchoices, out=pat)
            for bi in range(arity):
                hit = fired & (((pat >> bi) & 1) == 1)
                v = start + bi
                acc[hit, v >> 6] ^= _ONE << np.uint64(v & 63)
    for j in range(m):
        fold = np.bitwise_xor.reduce(acc & M[j], axis=1)
        for s in (32, 16, 8, 4, 2, 1):
            fold ^= fold >> np.uint64(s)
        bit = (fold & _ONE) ^ np.uint64(mconst[j])
        out[:, j >> 6] ^= bit << np.uint64(j & 63)
