"""Integer H-polyhedra ``{x : Ax <= b}`` and the operations the monoid solver needs.

Equalities are always stored as pairs of opposite inequalities; the LP engine
only ever sees ``Ax <= b``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import IntegralityViolation, UsageError
from .exactmath import determinant, dot, int_matrix, int_vector, mat_vec, rat_vector
from .lp import lp_feasible_point, lp_optimize


@dataclass(frozen=True, init=False)
class HPolyhedron:
    A: tuple
    b: tuple
    dim: int

    def __init__(self, A, b, dim: Optional[int] = None):
        A = int_matrix(A)
        b = int_vector(b)
        if len(A) != len(b):
            raise UsageError(f"A has {len(A)} rows but b has {len(b)} entries")
        if dim is None:
            if not A:
                raise UsageError("dim is required for a polyhedron with no rows")
            dim = len(A[0])
        if A and len(A[0]) != dim:
            raise UsageError(f"A has {len(A[0])} columns, expected {dim}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "dim", dim)

    @classmethod
    def from_system(cls, dim, le=((), ()), eq=((), ()), lower=None, upper=None):
        """Build from ``A_le x <= b_le``, ``A_eq x = b_eq`` and optional bounds.

        ``lower``/``upper`` entries may be ``None`` for a missing bound.
        """
        A, b = [list(r) for r in le[0]], list(le[1])
        for row, rhs in zip(*eq):
            A.append(list(row))
            b.append(rhs)
            A.append([-v for v in row])
            b.append(-rhs)
        for j in range(dim):
            if upper is not None and upper[j] is not None:
                A.append([1 if k == j else 0 for k in range(dim)])
                b.append(upper[j])
            if lower is not None and lower[j] is not None:
                A.append([-1 if k == j else 0 for k in range(dim)])
                b.append(-lower[j])
        return cls(A, b, dim)

    def with_rows(self, rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> "HPolyhedron":
        return HPolyhedron(self.A + tuple(tuple(r) for r in rows), self.b + tuple(rhs), self.dim)

    @property
    def description_complexity(self) -> int:
        # informational only; never used for control flow
        return max([1] + [abs(v) for row in self.A for v in row] + [abs(v) for v in self.b])

    def to_json(self) -> dict:
        return {"A": [[str(v) for v in row] for row in self.A], "b": [str(v) for v in self.b]}


@dataclass(frozen=True)
class RaySegment:
    """``{lam * a : alpha <= lam <= beta, lam >= 0}``; ``beta is None`` means +infinity."""

    empty: bool
    alpha: Fraction = Fraction(0)
    beta: Optional[Fraction] = None


EMPTY_SEGMENT = RaySegment(True)


def separate(P: HPolyhedron, x: Sequence) -> Optional[int]:
    """Index of the first row violated by ``x``, or ``None`` if ``x`` is in P.

    The violated row ``h`` separates strictly: ``h.y <= b_i < h.x`` for all y in P.
    """
    if len(x) != P.dim:
        raise UsageError(f"point has dimension {len(x)}, polyhedron has {P.dim}")
    for i, (row, b_i) in enumerate(zip(P.A, P.b)):
        if dot(row, x) > b_i:
            return i
    return None


def contains(P: HPolyhedron, x: Sequence) -> bool:
    return separate(P, x) is None


def clip_ray(P: HPolyhedron, a: Sequence[int]) -> RaySegment:
    if len(a) != P.dim:
        raise UsageError(f"ray has dimension {len(a)}, polyhedron has {P.dim}")
    if not any(a):
        raise UsageError("cannot clip the ray of the zero vector")
    alpha = Fraction(0)
    beta = None
    for g, b_i in zip(mat_vec(P.A, a), P.b):
        if g == 0:
            if b_i < 0:
                return EMPTY_SEGMENT
        elif g > 0:
            q = Fraction(b_i, g)
            if beta is None or q < beta:
                beta = q
        else:
            q = Fraction(b_i, g)
            if q > alpha:
                alpha = q
    if beta is not None and alpha > beta:
        return EMPTY_SEGMENT
    return RaySegment(False, alpha, beta)


def choose_scale(seg: RaySegment) -> Optional[int]:
    """Smallest positive integer ``n`` with ``alpha <= 1/n <= beta``."""
    if seg.empty:
        return None
    if seg.beta is None:
        n = 1
    else:
        if seg.beta <= 0:
            return None
        n = max(1, math.ceil(1 / seg.beta))
    if Fraction(1, n) < seg.alpha:
        return None
    return n


def find_integer_point(P: HPolyhedron, witness: Sequence) -> tuple:
    """An integer point of ``P``, assuming the description is totally unimodular.

    If ``P`` is pointed, walk from ``witness`` to a vertex (integral for a TU
    system with integer ``b``).  Otherwise fix coordinates one at a time to
    exact LP bounds.  Any fractional value raises ``IntegralityViolation``.
    """
    from .caratheodory import NotPointed, walk_to_vertex

    witness = rat_vector(witness)
    if not contains(P, witness):
        raise UsageError("witness is not in the polyhedron")
    try:
        v, _ = walk_to_vertex(P, witness)
    except NotPointed:
        z = _fix_variables(P, witness)
    else:
        if any(x.denominator != 1 for x in v):
            raise IntegralityViolation(f"fractional vertex {tuple(str(x) for x in v)}")
        z = tuple(int(x) for x in v)
    if not contains(P, z):
        raise IntegralityViolation("integer point fails containment")
    return z


def _fix_variables(P: HPolyhedron, witness: Sequence) -> tuple:
    d = P.dim
    cur, w = P, witness
    for j in range(d):
        e = tuple(1 if k == j else 0 for k in range(d))
        lo = lp_optimize(cur, e, "min")
        if lo.status == "infeasible":
            raise IntegralityViolation("system became infeasible while fixing coordinates")
        if lo.optimal:
            if lo.value.denominator != 1:
                raise IntegralityViolation(f"fractional lower bound {lo.value} for x_{j}")
            t = lo.value.numerator
        else:
            hi = lp_optimize(cur, e, "max")
            if hi.optimal and hi.value.denominator != 1:
                raise IntegralityViolation(f"fractional upper bound {hi.value} for x_{j}")
            t = math.floor(w[j])
        neg = tuple(-v for v in e)
        cur = cur.with_rows([e, neg], [t, -t])
        w = lp_feasible_point(cur)
        if w is None:
            raise IntegralityViolation(f"no point with x_{j} = {t}")
    return tuple(int(x) for x in w)


def is_bounded(P: HPolyhedron) -> bool:
    """True when ``P`` is empty or a polytope."""
    d = P.dim
    up, down = set(), set()
    for row in P.A:
        nz = [j for j, v in enumerate(row) if v]
        if len(nz) == 1:
            (up if row[nz[0]] > 0 else down).add(nz[0])
    if len(up) == d and len(down) == d:
        return True
    if lp_feasible_point(P) is None:
        return True
    for j in range(d):
        e = tuple(1 if k == j else 0 for k in range(d))
        for sense, have in (("max", up), ("min", down)):
            if j in have:
                continue
            if lp_optimize(P, e, sense).status == "unbounded":
                return False
    return True


@dataclass(frozen=True)
class TUReport:
    status: str  # "certified_tu" | "certified_not_tu" | "unknown"
    rows: Optional[tuple] = None
    cols: Optional[tuple] = None
    det: Optional[int] = None
    work: int = 0

    def submatrix(self, A) -> Optional[tuple]:
        if self.rows is None:
            return None
        return tuple(tuple(A[i][j] for j in self.cols) for i in self.rows)


def is_tu(A, work_cap: int = 1_000_000) -> TUReport:
    """Total-unimodularity check by exhaustive subdeterminant enumeration."""
    A = int_matrix(A)
    r = len(A)
    c = len(A[0]) if A else 0
    work = 0
    for k in range(1, min(r, c) + 1):
        for rows in itertools.combinations(range(r), k):
            for cols in itertools.combinations(range(c), k):
                work += 1
                if work > work_cap:
                    return TUReport("unknown", work=work - 1)
                det = determinant([[A[i][j] for j in cols] for i in rows])
                if det not in (-1, 0, 1):
                    return TUReport("certified_not_tu", rows, cols, det, work)
    return TUReport("certified_tu", work=work)
