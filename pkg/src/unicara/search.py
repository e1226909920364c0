"""Exact depth-first search for bounded integer solutions of ``Ex = f``.

Backend for the compressed table and compressed n-fold problems.  Each node
propagates interval bounds through every equation (integer rounding), and wide
domains are first tightened to their exact LP range, which is sound because the
set of LP-feasible values of one coordinate is an interval.  The search is
exhaustive, so ``None`` is a proof of infeasibility; running past the node cap
raises ``CapExceeded`` instead.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

from .errors import CapExceeded, UsageError
from .exactmath import dot
from .lp import lp_optimize
from .polyhedron import HPolyhedron

DEFAULT_CAP = 200_000
LP_WIDTH = 16
_PROPAGATION_ROUNDS = 200


class _Search:
    def __init__(self, E, f, cap):
        self.E = [tuple(r) for r in E]
        self.f = list(f)
        self.rows = [[(j, a) for j, a in enumerate(r) if a] for r in self.E]
        self.cap = cap
        self.nodes = 0

    def propagate(self, lo, hi) -> bool:
        for _ in range(_PROPAGATION_ROUNDS):
            changed = False
            for row, rhs in zip(self.rows, self.f):
                smin = sum(a * (lo[j] if a > 0 else hi[j]) for j, a in row)
                smax = sum(a * (hi[j] if a > 0 else lo[j]) for j, a in row)
                if smin > rhs or smax < rhs:
                    return False
                for j, a in row:
                    cmin = a * (lo[j] if a > 0 else hi[j])
                    cmax = a * (hi[j] if a > 0 else lo[j])
                    # a * x_j lies in [rhs - (smax - cmax), rhs - (smin - cmin)]
                    t_lo = rhs - (smax - cmax)
                    t_hi = rhs - (smin - cmin)
                    if a > 0:
                        nlo, nhi = -((-t_lo) // a), t_hi // a
                    else:
                        nlo, nhi = -((-t_hi) // a), t_lo // a
                    if nlo > lo[j]:
                        lo[j] = nlo
                        changed = True
                    if nhi < hi[j]:
                        hi[j] = nhi
                        changed = True
                    if lo[j] > hi[j]:
                        return False
                    smin = sum(a2 * (lo[k] if a2 > 0 else hi[k]) for k, a2 in row)
                    smax = sum(a2 * (hi[k] if a2 > 0 else lo[k]) for k, a2 in row)
            if not changed:
                return True
        return True

    def lp_range(self, lo, hi, j):
        P = HPolyhedron.from_system(len(lo), eq=(self.E, self.f), lower=lo, upper=hi)
        e = tuple(1 if k == j else 0 for k in range(len(lo)))
        rmin = lp_optimize(P, e, "min")
        if rmin.status == "infeasible":
            return None
        rmax = lp_optimize(P, e, "max")
        return math.ceil(rmin.value), math.floor(rmax.value)

    def dfs(self, lo, hi):
        self.nodes += 1
        if self.nodes > self.cap:
            raise CapExceeded(f"integer search exceeded {self.cap} nodes")
        if not self.propagate(lo, hi):
            return None
        free = [j for j in range(len(lo)) if lo[j] < hi[j]]
        if not free:
            x = tuple(lo)
            if all(dot(r, x) == rhs for r, rhs in zip(self.E, self.f)):
                return x
            return None
        j = min(free, key=lambda k: (hi[k] - lo[k], k))
        if hi[j] - lo[j] > LP_WIDTH:
            rng = self.lp_range(lo, hi, j)
            if rng is None or rng[0] > rng[1]:
                return None
            lo[j], hi[j] = max(lo[j], rng[0]), min(hi[j], rng[1])
        for v in range(lo[j], hi[j] + 1):
            nlo, nhi = list(lo), list(hi)
            nlo[j] = nhi[j] = v
            sol = self.dfs(nlo, nhi)
            if sol is not None:
                return sol
        return None


def bounded_integer_solution(
    E: Sequence[Sequence[int]],
    f: Sequence[int],
    lower: Sequence[int],
    upper: Sequence[int],
    cap: int = DEFAULT_CAP,
) -> Optional[tuple]:
    """An integer ``x`` with ``Ex = f`` and ``lower <= x <= upper``, or ``None``."""
    n = len(lower)
    if len(upper) != n or any(len(r) != n for r in E) or len(E) != len(f):
        raise UsageError("inconsistent dimensions in integer search")
    lo, hi = [int(v) for v in lower], [int(v) for v in upper]
    if any(a > b for a, b in zip(lo, hi)):
        return None
    return _Search(E, f, cap).dfs(lo, hi)
