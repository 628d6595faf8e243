"""Exact positive-semidefiniteness via pivoted LDL^T over the rationals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def as_matrix(q: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in q]


def is_symmetric(q: Matrix) -> bool:
    n = len(q)
    return all(len(row) == n for row in q) and all(
        q[i][j] == q[j][i] for i in range(n) for j in range(i)
    )


@dataclass
class LDL:
    """``P Q P^T = L D L^T`` with ``perm`` listing original indices in pivot order."""

    perm: list[int]
    lower: Matrix
    diag: list[Fraction]


def ldl_decompose(q: Sequence[Sequence]) -> LDL | None:
    """Symmetric-pivoted LDL^T; None when ``q`` is not PSD.

    At each step the largest remaining diagonal entry is the pivot.  A negative
    diagonal means indefinite.  If every remaining diagonal is zero the rest
    must vanish identically, otherwise some 2x2 block [[0, b], [b, 0]] is
    indefinite.
    """
    a = as_matrix(q)
    if not is_symmetric(a):
        raise ValueError("matrix is not symmetric")
    n = len(a)
    idx = list(range(n))
    lower = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    diag: list[Fraction] = []
    for step in range(n):
        rest = idx[step:]
        if any(a[i][i] < 0 for i in rest):
            return None
        p = max(rest, key=lambda i: a[i][i])
        if a[p][p] == 0:
            if any(a[i][j] != 0 for i in rest for j in rest):
                return None
            diag.extend(Fraction(0) for _ in rest)
            break
        pos = idx.index(p)
        idx[step], idx[pos] = idx[pos], idx[step]
        # keep already computed multipliers aligned with the new pivot order
        for t in range(step):
            lower[step][t], lower[pos][t] = lower[pos][t], lower[step][t]
        d = a[p][p]
        diag.append(d)
        for r in range(step + 1, n):
            i = idx[r]
            lower[r][step] = a[i][p] / d
        for r in range(step + 1, n):
            i = idx[r]
            li = a[i][p] / d
            if li == 0:
                continue
            for s in range(step + 1, n):
                j = idx[s]
                a[i][j] -= li * a[p][j]
    return LDL(idx, lower, diag)


def psd_check_exact(q: Sequence[Sequence]) -> bool:
    return ldl_decompose(q) is not None


def reconstruct(f: LDL) -> Matrix:
    """Rebuild the original matrix from its factorization (for testing)."""
    n = len(f.diag)
    pq = [[sum(f.lower[i][t] * f.diag[t] * f.lower[j][t] for t in range(n)) for j in range(n)] for i in range(n)]
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[f.perm[i]][f.perm[j]] = pq[i][j]
    return out
