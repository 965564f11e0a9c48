"""Exact linear algebra over the rationals (dense Gaussian elimination)."""

from __future__ import annotations

from fractions import Fraction


def rref(m: list[list[Fraction]]) -> list[int]:
    """Reduce m to reduced row echelon form in place; return pivot columns."""
    if not m:
        return []
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """One solution of a x = b, or None if the system is infeasible.

    Free variables are set to zero, so the answer is deterministic.
    """
    if not a:
        return []
    cols = len(a[0])
    aug = [row[:] + [rhs] for row, rhs in zip(a, b)]
    pivots = rref(aug)
    if cols in pivots:  # pivot in the rhs column: inconsistent
        return None
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = aug[r][cols]
    return x


def nullspace(a: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the kernel of a (list of column vectors)."""
    if not a:
        return []
    cols = len(a[0])
    m = [row[:] for row in a]
    pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * cols
        v[free] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -m[r][free]
        basis.append(v)
    return basis
