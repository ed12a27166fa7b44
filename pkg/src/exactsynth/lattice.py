"""Exact LLL reduction and Fincke-Pohst enumeration for positive definite forms.

Both routines work on an integer Gram matrix and return integer coordinate
vectors.  Everything is exact: the Gram-Schmidt data is kept as fractions and
the enumeration bounds are checked with rational arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, gcd, sqrt


def _gso(G):
    """Gram-Schmidt coefficients ``mu`` and squared lengths ``r`` from a Gram matrix."""
    n = len(G)
    mu = [[Fraction(0)] * n for _ in range(n)]
    r = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            s = Fraction(G[i][j])
            for k in range(j):
                s -= mu[j][k] * mu[i][k] * r[k]
            mu[i][j] = s / r[j]
        s = Fraction(G[i][i])
        for k in range(i):
            s -= mu[i][k] * mu[i][k] * r[k]
        r[i] = s
    return mu, r


def lll_gram(G, delta=Fraction(3, 4)):
    """LLL-reduce the lattice with integer Gram matrix ``G``.

    Returns ``(U, G')`` where the rows of ``U`` are the reduced basis in the
    original coordinates and ``G' = U G U^T``.
    """
    n = len(G)
    G = [list(map(int, row)) for row in G]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def sub_row(k, j, q):
        # b_k <- b_k - q b_j
        Uk, Uj = U[k], U[j]
        for t in range(n):
            Uk[t] -= q * Uj[t]
        Gkj, Gjj, Gkk = G[k][j], G[j][j], G[k][k]
        for t in range(n):
            if t != k:
                G[k][t] -= q * G[j][t]
                G[t][k] = G[k][t]
        G[k][k] = Gkk - 2 * q * Gkj + q * q * Gjj

    def swap(k):
        U[k], U[k - 1] = U[k - 1], U[k]
        G[k], G[k - 1] = G[k - 1], G[k]
        for row in G:
            row[k], row[k - 1] = row[k - 1], row[k]

    k = 1
    while k < n:
        mu, r = _gso(G)
        for j in range(k - 1, -1, -1):
            m = mu[k][j]
            if abs(m) > Fraction(1, 2):
                q = floor(m + Fraction(1, 2))
                sub_row(k, j, q)
                mu, r = _gso(G)
        if r[k] >= (delta - mu[k][k - 1] ** 2) * r[k - 1]:
            k += 1
        else:
            swap(k)
            k = max(k - 1, 1)
    return U, G


def _cholesky(G):
    """Coefficients ``q`` with Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2."""
    n = len(G)
    q = [[Fraction(G[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _int_range(center, radius_sq, qii):
    """Integers ``x`` with ``qii * (x - center)^2 <= radius_sq``."""
    if radius_sq < 0:
        return range(0)
    span = sqrt(float(radius_sq / qii)) if radius_sq else 0.0
    c = float(center)
    lo = int(floor(c - span)) - 1
    hi = int(floor(c + span)) + 1
    while qii * (lo - center) ** 2 > radius_sq and lo <= hi:
        lo += 1
    while qii * (hi - center) ** 2 > radius_sq and hi >= lo:
        hi -= 1
    while qii * (lo - 1 - center) ** 2 <= radius_sq:
        lo -= 1
    while qii * (hi + 1 - center) ** 2 <= radius_sq:
        hi += 1
    return range(lo, hi + 1)


def fincke_pohst(G, bound):
    """All integer vectors ``x`` with ``x G x^T <= bound``, for positive definite ``G``."""
    n = len(G)
    bound = Fraction(bound)
    if bound < 0:
        return []
    q = _cholesky(G)
    out = []
    x = [0] * n

    def rec(i, remaining):
        center = Fraction(0)
        for j in range(i + 1, n):
            center -= q[i][j] * x[j]
        for xi in _int_range(center, remaining, q[i][i]):
            t = q[i][i] * (xi - center) ** 2
            x[i] = xi
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, remaining - t)
        x[i] = 0

    rec(n - 1, bound)
    return out


def short_vectors(G, bound, reduce=True):
    """Fincke-Pohst on an LLL-reduced basis; vectors in the original coordinates."""
    n = len(G)
    if not reduce:
        return fincke_pohst(G, bound)
    U, Gr = lll_gram(G)
    out = []
    for y in fincke_pohst(Gr, bound):
        out.append(tuple(sum(y[i] * U[i][t] for i in range(n)) for t in range(n)))
    return out


def integer_gram(G):
    """Scale a rational Gram matrix to an integer one; returns ``(Gi, scale)``."""
    den = 1
    for row in G:
        for v in row:
            v = Fraction(v)
            den = den * v.denominator // gcd(den, v.denominator)
    return [[int(Fraction(v) * den) for v in row] for row in G], den
