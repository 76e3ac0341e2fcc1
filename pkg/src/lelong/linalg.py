"""Row reduction over Q(i), with a tolerance-based path for numeric matrices.

Matrices are lists of rows.  A matrix is treated as numeric as soon as one
entry is not an exact Gaussian rational; numeric entries are promoted to
``mpmath.mpc`` at the working precision of :mod:`lelong.field`.
"""
from __future__ import annotations

import mpmath

from fractions import Fraction

from .field import precision, ONE, ZERO, GaussianRational, _mk, is_exact, qi, to_mp, tolerance

_FZERO = Fraction(0)


def is_exact_matrix(rows) -> bool:
    return all(is_exact(x) for row in rows for x in row)


def _prepare(rows):
    if is_exact_matrix(rows):
        return [[qi(x) for x in row] for row in rows], True
    return [[to_mp(x) for x in row] for row in rows], False


def row_reduce(rows, ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(rref_rows, pivot_columns, exact)``.  The exact path pivots on
    the first nonzero entry; the numeric path uses partial pivoting and a
    tolerance scaled by the largest entry.
    """
    if not rows:
        return [], [], True
    m, exact = _prepare(rows)
    ncols = len(m[0]) if ncols is None else ncols
    if exact:
        return _rref_exact(m, ncols) + (True,)
    with mpmath.workprec(precision()):
        return _rref_numeric(m, ncols) + (False,)


def _rref_exact(m, ncols):
    real = all(not x.im for row in m for x in row)
    if real:
        # plain Fractions avoid the Q(i) wrapper overhead on the common path
        m = [[x.re for x in row] for row in m]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        inv = 1 / piv if real else piv.inverse()
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    if real:
        m = [[_mk(x, _FZERO) for x in row] for row in m]
    return m, pivots


def _rref_numeric(m, ncols):
    scale = max((abs(x) for row in m for x in row), default=mpmath.mpf(0))
    tol = tolerance(scale)
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        p = max(range(r, nrows), key=lambda i: abs(m[i][c]), default=None)
        if p is None or abs(m[p][c]) <= tol:
            for i in range(r, nrows):
                m[i][c] = mpmath.mpc(0)
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows) -> int:
    return len(row_reduce(rows)[1])


def nullspace(rows, ncols: int):
    """Basis of ``{x : rows @ x = 0}``, one vector per free column.

    Vectors are normalized so the free coordinate equals 1; deterministic for
    a given input.
    """
    if not rows:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    red, pivots, exact = row_reduce(rows, ncols)
    zero, one = (ZERO, ONE) if exact else (mpmath.mpc(0), mpmath.mpc(1))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def det(rows):
    """Exact determinant by elimination (square exact matrices)."""
    m = [[qi(x) for x in row] for row in rows]
    n = len(m)
    result = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        piv = m[c][c]
        result = result * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def inverse(rows):
    n = len(rows)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(rows)]
    red, pivots, exact = row_reduce(aug, 2 * n)
    if pivots[:n] != list(range(n)) or not exact and len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]


def mat_vec(m, v):
    return [sum((a * b for a, b in zip(row, v)), ZERO) for row in m]


def mat_mul(a, b):
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in cols] for row in a]


def identity(n: int):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def as_exact_vector(v) -> list[GaussianRational]:
    return [qi(x) for x in v]
