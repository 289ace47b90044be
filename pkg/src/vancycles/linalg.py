"""Exact Gaussian elimination over any field whose elements support + - * / and == 0.

Used with Fraction entries and with elements of a quadratic extension.
"""
from __future__ import annotations

from fractions import Fraction


def _is_zero(x) -> bool:
    return x == 0


def rref(rows, ncols: int | None = None):
    """Reduced row echelon form.  Returns (rows, pivot_columns); input is not modified."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not _is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c] if not isinstance(m[r][c], int) else Fraction(1, m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    rows = list(rows)
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows, ncols: int):
    """Basis of {x : rows . x = 0} as a list of vectors."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    zero, one = Fraction(0), Fraction(1)
    if red:
        sample = red[0][0]
        zero = sample - sample
        one = zero + 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def span_dimension(vectors) -> int:
    return rank(vectors)


def intersection_dimension(a, b) -> int:
    """dim(span a  cap  span b) = dim a + dim b - dim(a + b)."""
    a, b = list(a), list(b)
    return rank(a) + rank(b) - rank(a + b)


def intersection_basis(a, b, ncols: int):
    """A basis of span(a) cap span(b), vectors of length ncols."""
    a = [list(v) for v in rref(a, ncols)[0]] if a else []
    b = [list(v) for v in rref(b, ncols)[0]] if b else []
    if not a or not b:
        return []
    # solve sum x_i a_i - sum y_j b_j = 0
    cols = len(a) + len(b)
    rows = [[a[i][k] for i in range(len(a))] + [-b[j][k] for j in range(len(b))]
            for k in range(ncols)]
    out = []
    for sol in nullspace(rows, cols):
        vec = [sum((sol[i] * a[i][k] for i in range(len(a))), Fraction(0)) for k in range(ncols)]
        out.append(vec)
    return rref(out, ncols)[0] if out else []


def determinant(m):
    """Determinant by elimination (entries from a field)."""
    m = [list(r) for r in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if not _is_zero(m[i][c])), None)
        if piv is None:
            return det * 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if not _is_zero(m[i][c]):
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det
