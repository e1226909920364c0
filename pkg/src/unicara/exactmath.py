"""Exact scalars, vectors and dense linear algebra.

Python ``int`` is the arbitrary-precision integer and ``fractions.Fraction`` the
exact rational (always in lowest terms, positive denominator).  Vectors are
tuples, matrices are tuples of row tuples.  Nothing in this package ever
touches a float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import UsageError

Rat = Fraction
Vector = tuple
Matrix = tuple


def rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise UsageError("floating point values are not accepted")
    return Fraction(x)


def rat_vector(v: Iterable) -> tuple:
    return tuple(rat(x) for x in v)


def int_vector(v: Iterable) -> tuple:
    out = []
    for x in v:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise UsageError(f"non-integer entry {x}")
            x = x.numerator
        elif isinstance(x, bool) or not isinstance(x, int):
            raise UsageError(f"non-integer entry {x!r}")
        out.append(int(x))
    return tuple(out)


def int_matrix(rows: Iterable[Iterable]) -> tuple:
    m = tuple(int_vector(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise UsageError("ragged matrix")
    return m


def is_integral(v: Iterable) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int) -> tuple:
    return (0,) * n


def ncols(M: Sequence[Sequence], default: int = 0) -> int:
    return len(M[0]) if M else default


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise UsageError(f"dimension mismatch: {len(u)} vs {len(v)}")
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def mat_vec(M: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in M)


def vadd(u: Sequence, v: Sequence) -> tuple:
    if len(u) != len(v):
        raise UsageError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> tuple:
    if len(u) != len(v):
        raise UsageError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vscale(s, v: Sequence) -> tuple:
    return tuple(s * x for x in v)


def transpose(M: Sequence[Sequence], n_cols: Optional[int] = None) -> tuple:
    if not M:
        return tuple(() for _ in range(n_cols or 0))
    return tuple(zip(*M))


def _reduce(M: Sequence[Sequence], n_cols: int, rhs: Optional[Sequence] = None):
    """Gauss-Jordan elimination to reduced row echelon form.

    Pivots on the first nonzero entry in each column (no magnitude pivoting).
    Returns ``(rows, pivot_cols)`` where ``rows`` are the reduced rows, each
    carrying the transformed right-hand side as a final entry when ``rhs`` is
    given.
    """
    width = n_cols + (1 if rhs is not None else 0)
    rows = []
    for i, r in enumerate(M):
        if len(r) != n_cols:
            raise UsageError("ragged matrix")
        row = [Fraction(x) for x in r]
        if rhs is not None:
            row.append(Fraction(rhs[i]))
        rows.append(row)
    pivots = []
    top = 0
    for col in range(n_cols):
        piv = next((i for i in range(top, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        prow = rows[top]
        inv = 1 / prow[col]
        if inv != 1:
            for k in range(col, width):
                if prow[k]:
                    prow[k] *= inv
        for i, row in enumerate(rows):
            f = row[col]
            if i != top and f:
                for k in range(col, width):
                    if prow[k]:
                        row[k] -= f * prow[k]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows, pivots


def rank(M: Sequence[Sequence], n_cols: Optional[int] = None) -> int:
    if n_cols is None:
        n_cols = ncols(M)
    return len(_reduce(M, n_cols)[1])


def solve_linear_system(M: Sequence[Sequence], rhs: Sequence, n_cols: Optional[int] = None):
    """Return one exact solution ``x`` of ``Mx = rhs`` or ``None`` if inconsistent.

    Free variables are set to zero.  ``n_cols`` must be given when ``M`` has no
    rows.
    """
    if len(M) != len(rhs):
        raise UsageError(f"{len(M)} rows but {len(rhs)} right-hand side entries")
    if n_cols is None:
        if not M:
            raise UsageError("n_cols is required for an empty matrix")
        n_cols = len(M[0])
    rows, pivots = _reduce(M, n_cols, rhs)
    for row in rows[len(pivots):]:
        if row[n_cols]:
            return None
    x = [Fraction(0)] * n_cols
    for row, col in zip(rows, pivots):
        x[col] = row[n_cols]
    return tuple(x)


def null_space_vector(M: Sequence[Sequence], n_cols: Optional[int] = None):
    """Return a nonzero ``v`` with ``Mv = 0``, or ``None`` if ``M`` has full column rank."""
    if n_cols is None:
        if not M:
            raise UsageError("n_cols is required for an empty matrix")
        n_cols = len(M[0])
    rows, pivots = _reduce(M, n_cols)
    pivot_set = set(pivots)
    free = next((c for c in range(n_cols) if c not in pivot_set), None)
    if free is None:
        return None
    v = [Fraction(0)] * n_cols
    v[free] = Fraction(1)
    for row, col in zip(rows, pivots):
        v[col] = -row[free]
    return tuple(v)


def determinant(M: Sequence[Sequence]) -> int:
    """Integer determinant by Bareiss fraction-free elimination."""
    n = len(M)
    if n == 0:
        return 1
    a = [list(r) for r in M]
    if any(len(r) != n for r in a):
        raise UsageError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# JSON scalars: integers as decimal strings, rationals as "p/q".

def int_to_str(x: int) -> str:
    return str(int(x))


def parse_int(s) -> int:
    if isinstance(s, bool):
        raise UsageError(f"expected an integer, got {s!r}")
    if isinstance(s, int):
        return s
    if isinstance(s, str):
        t = s.strip()
        body = t[1:] if t[:1] in "+-" else t
        if body.isdigit():
            return int(t)
    raise UsageError(f"expected an integer string, got {s!r}")


def rat_to_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if isinstance(s, str):
        p, sep, q = s.strip().partition("/")
        num = parse_int(p)
        den = parse_int(q) if sep else 1
        if den == 0:
            raise UsageError("zero denominator")
        return Fraction(num, den)
    raise UsageError(f"expected a rational string, got {s!r}")
