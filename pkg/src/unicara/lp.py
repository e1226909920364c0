"""Exact rational simplex over ``{x : Ax <= b}`` with free variables.

Tableau layout: free structural columns ``x`` (d), one nonnegative slack per
row, phase-one artificials.  Every ``x_j`` is pivoted into the basis before
phase one and never leaves, so when ``A`` has full column rank the optimum
reported is a basic solution, i.e. a vertex with ``d`` independent tight rows.
Bland's least-index rule is used in both phases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import UsageError
from .exactmath import dot, rank

MAX_PIVOTS = 100_000


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    value: Optional[Fraction] = None
    point: Optional[tuple] = None
    tight_rows: Optional[tuple] = None
    basic: bool = False
    ray: Optional[tuple] = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class _Tableau:
    def __init__(self, A, b, d):
        self.d = d
        self.m = len(A)
        self.pivots = 0
        # rows: [x_1..x_d | s_1..s_m | rhs]
        self.rows = []
        for i, (a_row, b_i) in enumerate(zip(A, b)):
            row = [Fraction(v) for v in a_row]
            row.extend(Fraction(1 if k == i else 0) for k in range(self.m))
            row.append(Fraction(b_i))
            self.rows.append(row)
        self.basis = [d + i for i in range(self.m)]
        self.free_rows: set[int] = set()

    @property
    def width(self):
        return len(self.rows[0]) - 1 if self.rows else self.d + self.m

    def pivot(self, r, c, extra=()):
        self.pivots += 1
        if self.pivots > MAX_PIVOTS:
            raise RuntimeError("simplex pivot watchdog tripped")
        prow = self.rows[r]
        p = prow[c]
        if p != 1:
            prow = [v / p for v in prow]
            self.rows[r] = prow
        nz = [k for k, v in enumerate(prow) if v]
        for row in list(self.rows) + list(extra):
            if row is prow:
                continue
            f = row[c]
            if f:
                for k in nz:
                    row[k] -= f * prow[k]
        self.basis[r] = c

    def add_artificials(self, rows_needing):
        """Append one artificial column per listed row (rows negated first)."""
        q = len(rows_needing)
        for i, row in enumerate(self.rows):
            rhs = row.pop()
            row.extend([Fraction(0)] * q)
            row.append(rhs)
        for k, i in enumerate(rows_needing):
            row = self.rows[i]
            for j in range(len(row)):
                if row[j]:
                    row[j] = -row[j]
            row[self.d + self.m + k] = Fraction(1)
            self.basis[i] = self.d + self.m + k
        return q

    def objective_row(self, cost):
        """Reduced-cost row for minimizing ``cost`` (last entry: -objective value)."""
        obj = list(cost) + [Fraction(0)]
        for i, row in enumerate(self.rows):
            cb = cost[self.basis[i]]
            if cb:
                for k, v in enumerate(row):
                    if v:
                        obj[k] -= cb * v
        return obj

    def run(self, obj, allowed):
        """Minimize with Bland's rule over entering columns in ``allowed``.

        Returns ``None`` at optimality or the unbounded entering column.
        """
        while True:
            enter = next((j for j in allowed if obj[j] < 0), None)
            if enter is None:
                return None
            leave = None
            best = None
            for i, row in enumerate(self.rows):
                if i in self.free_rows:
                    continue
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                return enter
            self.pivot(leave, enter, extra=(obj,))


def _check(P, c=None):
    d = P.dim
    if c is not None and len(c) != d:
        raise UsageError(f"objective has dimension {len(c)}, polyhedron has {d}")
    return d


def _phase_one(P):
    """Build a feasible canonical tableau or return ``None`` if P is empty."""
    d = P.dim
    t = _Tableau(P.A, P.b, d)
    # pivot the free variables in
    used = set()
    x_basic_row = {}
    for j in range(d):
        r = next((i for i, row in enumerate(t.rows) if i not in used and row[j]), None)
        if r is None:
            continue
        t.pivot(r, j)
        used.add(r)
        x_basic_row[j] = r
    t.free_rows = used
    need = [i for i, row in enumerate(t.rows) if i not in used and row[-1] < 0]
    q = t.add_artificials(need) if need else 0
    if q:
        base = d + t.m
        cost = [Fraction(0)] * (base + q)
        for k in range(q):
            cost[base + k] = Fraction(1)
        obj = t.objective_row(cost)
        allowed = list(range(d, base + q))
        t.run(obj, allowed)
        if obj[-1] != 0:
            return None
        # drive remaining artificials out at zero level
        drop = []
        for i in range(len(t.rows)):
            if t.basis[i] >= base:
                row = t.rows[i]
                c = next((j for j in range(d, base) if row[j] and j not in t.basis), None)
                if c is None:
                    drop.append(i)
                else:
                    t.pivot(i, c)
        if drop:
            keep = [i for i in range(len(t.rows)) if i not in drop]
            remap = {old: new for new, old in enumerate(keep)}
            t.rows = [t.rows[i] for i in keep]
            t.basis = [t.basis[i] for i in keep]
            t.free_rows = {remap[i] for i in t.free_rows}
            x_basic_row = {j: remap[r] for j, r in x_basic_row.items()}
        for row in t.rows:
            rhs = row[-1]
            del row[base:]
            row.append(rhs)
    t.x_basic_row = x_basic_row
    return t


def _point(t, d):
    x = [Fraction(0)] * d
    for j, r in t.x_basic_row.items():
        x[j] = t.rows[r][-1]
    return tuple(x)


def _tight(P, x):
    return tuple(i for i, (row, b_i) in enumerate(zip(P.A, P.b)) if dot(row, x) == b_i)


def lp_feasible_point(P) -> Optional[tuple]:
    """Return some point of ``P`` exactly, or ``None`` when ``P`` is empty."""
    _check(P)
    t = _phase_one(P)
    if t is None:
        return None
    return _point(t, P.dim)


def lp_optimize(P, c, sense: str = "max") -> LPResult:
    """Optimize ``c.x`` over ``P``.

    ``basic`` is true exactly when the reported point has ``d`` linearly
    independent tight rows; it is always true for pointed ``P``.
    """
    d = _check(P, c)
    if sense not in ("max", "min"):
        raise UsageError(f"sense must be 'max' or 'min', not {sense!r}")
    t = _phase_one(P)
    if t is None:
        return LPResult("infeasible")
    sgn = -1 if sense == "max" else 1
    width = t.width
    cost = [Fraction(0)] * width
    for j in range(d):
        cost[j] = sgn * Fraction(c[j])
    obj = t.objective_row(cost)
    # a free column that could not be pivoted in spans a lineality direction
    for j in range(d):
        if j in t.x_basic_row or obj[j] == 0:
            continue
        v = [Fraction(0)] * d
        v[j] = Fraction(1)
        for jj, r in t.x_basic_row.items():
            v[jj] = -t.rows[r][j]
        if obj[j] > 0:
            v = [-e for e in v]
        return LPResult("unbounded", point=_point(t, d), ray=tuple(v), pivots=t.pivots)
    enter = t.run(obj, list(range(d, width)))
    x = _point(t, d)
    if enter is not None:
        ray = [Fraction(0)] * d
        for j, r in t.x_basic_row.items():
            ray[j] = -t.rows[r][enter]
        return LPResult("unbounded", point=x, ray=tuple(ray), pivots=t.pivots)
    tight = _tight(P, x)
    basic = rank([P.A[i] for i in tight], d) == d if tight else d == 0
    return LPResult(
        "optimal",
        value=dot(c, x) if d else Fraction(0),
        point=x,
        tight_rows=tight,
        basic=basic,
        pivots=t.pivots,
    )


def infeasibility_witness(P) -> Optional[tuple]:
    """Row indices of an infeasible subsystem of ``P`` (``None`` if P is nonempty).

    Solves the alternative system ``y >= 0, yA = 0, yb = -1`` and returns the
    support of a basic solution.
    """
    from .polyhedron import HPolyhedron

    if lp_feasible_point(P) is not None:
        return None
    m, d = len(P.A), P.dim
    rows, rhs = [], []
    for j in range(d):
        col = [P.A[i][j] for i in range(m)]
        rows.append(col)
        rhs.append(0)
        rows.append([-v for v in col])
        rhs.append(0)
    rows.append(list(P.b))
    rhs.append(-1)
    rows.append([-v for v in P.b])
    rhs.append(1)
    for i in range(m):
        rows.append([-1 if k == i else 0 for k in range(m)])
        rhs.append(0)
    alt = HPolyhedron(rows, rhs, dim=m)
    res = lp_optimize(alt, (0,) * m, "min")
    assert res.optimal, "Farkas alternative must be feasible"
    y = res.point
    assert all(v >= 0 for v in y)
    return tuple(i for i, v in enumerate(y) if v)
