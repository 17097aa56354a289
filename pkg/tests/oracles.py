"""Independent floating-point oracles written straight from the definitions.

Nothing here imports the package's tensor machinery: products are explicit
index sums over complex numpy arrays, so agreement with the exact engine is
evidence from a second route.
"""

from __future__ import annotations

import itertools

import numpy as np

W = np.exp(2j * np.pi / 3)
WB = np.conj(W)
R2 = np.sqrt(2.0)


def cubic_product(X, Y, Z, pairing="A", conj=False):
    """(X.Y.Z)_{ijk} = sum_{p,r,s} X_{ijp} mu(Y_{rsp}) Z_{sigma(r,s) k} by explicit loops."""
    n = X.shape[0]
    Yc = np.conj(Y) if conj else Y
    out = np.zeros((n, n, n), dtype=complex)
    for i, j, k, p, r, s in itertools.product(range(n), repeat=6):
        a, b = (s, r) if pairing == "A" else (r, s)
        out[i, j, k] += X[i, j, p] * Yc[r, s, p] * Z[a, b, k]
    return out


def g_basis():
    """G1..G8 of order 2 as complex 2x2x2 arrays (1-based entries from the figures)."""
    def cube(entries):
        X = np.zeros((2, 2, 2), dtype=complex)
        for (i, j, k), v in entries.items():
            X[i - 1, j - 1, k - 1] = v
        return X

    F1 = cube({(1, 1, 1): 1, (2, 2, 1): -1, (1, 2, 2): -1, (2, 1, 2): -1})
    F2 = cube({(1, 2, 1): -1, (2, 1, 1): -1, (1, 1, 2): -1, (2, 2, 2): 1})
    c = -1j * R2 / 4
    return [
        c * F1,
        c * F2,
        cube({(1, 2, 1): -1j, (2, 1, 1): -0.5j}),
        cube({(1, 2, 1): -1, (2, 1, 1): 0.5}),
        cube({(1, 2, 2): -1j, (2, 1, 2): -0.5j}),
        cube({(1, 2, 2): -1, (2, 1, 2): 0.5}),
        cube({(1, 1, 1): 1}),
        cube({(2, 2, 2): 1}),
    ]


def omega_bracket(prod, s, u, v):
    return (prod(s, u, v) + W * prod(u, v, s) + WB * prod(v, s, u)
            + prod(v, u, s) + WB * prod(u, s, v) + W * prod(s, v, u))


def reduced_bracket(prod, s, u, v):
    return prod(v, s, u) + W * prod(s, u, v) + WB * prod(u, v, s)


def ga15_residual(br, v1, v2, v3, v4, v5):
    """Cyclic sum over shifts of [[u,v,w],x,y] + [[u,x,v],y,w] + [[u,y,x],w,v] + [[u,w,y],v,x]."""
    vs = [v1, v2, v3, v4, v5]
    total = 0
    for k in range(5):
        u, v, w, x, y = (vs[(j + k) % 5] for j in range(5))
        total = total + (br(br(u, v, w), x, y) + br(br(u, x, v), y, w)
                         + br(br(u, y, x), w, v) + br(br(u, w, y), v, x))
    return total


def tensor_product(P):
    """Product from a dense complex tensor P[m, i, j, k] (explicit sum)."""
    def prod(x, y, z):
        return np.einsum("mijk,i,j,k->m", P, x, y, z)

    return prod


def coords_in(basis, x):
    """Least-squares coordinates of x in a list of arrays (flattened)."""
    B = np.stack([b.ravel() for b in basis], axis=1)
    c, *_ = np.linalg.lstsq(B, x.ravel(), rcond=None)
    return c
