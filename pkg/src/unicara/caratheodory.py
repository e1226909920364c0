"""Convex decomposition of a point of a polytope into at most ``d + 1`` vertices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import UnicaraError, UnsupportedUnboundedInput, UsageError
from .exactmath import dot, null_space_vector, rank, rat_vector, vadd, vscale, vsub
from .polyhedron import HPolyhedron, contains, is_bounded


class NotPointed(UnicaraError):
    """A face of the polyhedron contains a line."""


@dataclass(frozen=True)
class ConvexCombination:
    vertices: tuple
    lambdas: tuple
    recession: tuple

    def point(self) -> tuple:
        d = len(self.recession)
        p = tuple(Fraction(v) for v in self.recession)
        for lam, v in zip(self.lambdas, self.vertices):
            p = vadd(p, vscale(lam, v))
        assert len(p) == d
        return p


def tight_rows(P: HPolyhedron, x: Sequence) -> tuple:
    return tuple(i for i, (row, b_i) in enumerate(zip(P.A, P.b)) if dot(row, x) == b_i)


def is_vertex(P: HPolyhedron, x: Sequence) -> bool:
    if not contains(P, x):
        return False
    T = [P.A[i] for i in tight_rows(P, x)]
    return rank(T, P.dim) == P.dim if T else P.dim == 0


def walk_to_vertex(P: HPolyhedron, x: Sequence):
    """Move from ``x`` inside P to a vertex of the minimal face containing ``x``.

    Each step follows a kernel direction of the tight rows to the boundary, so
    the tight-row rank grows by at least one per step.  Returns
    ``(vertex, tight_row_indices)``.  Raises ``NotPointed`` when a kernel
    direction is unbounded both ways.
    """
    d = P.dim
    p = tuple(Fraction(v) for v in x)
    slack = [b_i - dot(row, p) for row, b_i in zip(P.A, P.b)]
    tight = [i for i, s in enumerate(slack) if s == 0]
    while True:
        v = null_space_vector([P.A[i] for i in tight], d)
        if v is None:
            return p, tuple(tight)
        step = None
        for sign in (1, -1):
            u = v if sign == 1 else tuple(-e for e in v)
            best = None
            g_all = []
            for i, row in enumerate(P.A):
                g = dot(row, u) if slack[i] else 0
                g_all.append(g)
                if g > 0:
                    r = slack[i] / g
                    if best is None or r < best:
                        best = r
            if best is not None:
                step = (u, best, g_all)
                break
        if step is None:
            raise NotPointed("polyhedron face contains a line")
        u, sigma, g_all = step
        p = vadd(p, vscale(sigma, u))
        for i, g in enumerate(g_all):
            if g:
                slack[i] -= sigma * g
                if slack[i] == 0:
                    tight.append(i)
        tight.sort()


def decompose_point(P: HPolyhedron, x: Sequence, check_bounded: bool = True) -> ConvexCombination:
    """Write ``x`` in the polytope ``P`` as a convex combination of vertices.

    Repeatedly takes a vertex ``v`` of the minimal face of the current point
    ``p`` and pushes ``p`` away from ``v`` to the boundary, which drops it to a
    strictly smaller face.
    """
    x = rat_vector(x)
    if not contains(P, x):
        raise UsageError("point is not in the polyhedron")
    if check_bounded and not is_bounded(P):
        raise UnsupportedUnboundedInput("decompose_point requires a bounded polyhedron")
    d = P.dim
    weights: dict[tuple, Fraction] = {}
    order = []
    mu = Fraction(1)
    p = x
    while True:
        try:
            v, _ = walk_to_vertex(P, p)
        except NotPointed:
            raise UnsupportedUnboundedInput("polyhedron contains a line") from None
        if v == p:
            _add(weights, order, v, mu)
            break
        u = vsub(p, v)
        sigma = None
        for row, b_i in zip(P.A, P.b):
            g = dot(row, u)
            if g > 0:
                r = (b_i - dot(row, p)) / g
                if sigma is None or r < sigma:
                    sigma = r
        if sigma is None:
            raise UnsupportedUnboundedInput("ray leaves the polyhedron unbounded")
        _add(weights, order, v, mu * sigma / (1 + sigma))
        mu = mu / (1 + sigma)
        p = vadd(p, vscale(sigma, u))
    vertices = tuple(order)
    lambdas = tuple(weights[v] for v in order)
    assert len(vertices) <= d + 1
    return ConvexCombination(vertices, lambdas, (Fraction(0),) * d)


def _add(weights, order, v, lam):
    if v in weights:
        weights[v] += lam
    else:
        weights[v] = lam
        order.append(v)
