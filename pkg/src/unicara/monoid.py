"""Monoid membership and decomposition over totally unimodular lattice sets.

For ``S = {x in Z^d : Ax <= b}`` with ``A`` totally unimodular and ``b``
integer, ``a`` lies in the monoid generated by ``S`` exactly when ``a/n`` is in
``P = {Ax <= b}`` for some positive integer ``n``.  The decomposition is
produced without ever iterating ``n`` times: a convex decomposition of
``a/n`` into vertices supplies all but at most ``d`` of the summands, and the
remaining few are split off one integer point at a time.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .caratheodory import decompose_point
from .errors import IntegralityViolation, UsageError
from .exactmath import int_matrix, int_vector, mat_vec, vadd, vscale, vsub
from .lp import lp_feasible_point, lp_optimize
from .polyhedron import (
    HPolyhedron,
    RaySegment,
    choose_scale,
    clip_ray,
    contains,
    find_integer_point,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonoidCertificate:
    """``target = sum(mult * point for mult, point in terms)``.

    ``preimages`` is set for projected monoids: ``points[k] = L @ preimages[k]``.
    ``scale`` and ``residual_count`` record the integer ``n`` with ``target/n``
    in P and how many summands had to be split off individually.
    """

    terms: tuple
    target: tuple
    preimages: Optional[tuple] = None
    scale: Optional[int] = None
    residual_count: int = 0

    @property
    def total(self) -> int:
        return sum(m for m, _ in self.terms)

    @property
    def points(self) -> tuple:
        return tuple(x for _, x in self.terms)

    def combination(self) -> tuple:
        acc = (0,) * len(self.target)
        for m, x in self.terms:
            acc = vadd(acc, vscale(m, x))
        return acc

    def to_json(self) -> dict:
        out = []
        for k, (m, x) in enumerate(self.terms):
            term = {"lambda": str(m), "x": [str(v) for v in x]}
            if self.preimages is not None:
                term["y"] = [str(v) for v in self.preimages[k]]
            out.append(term)
        return {"status": "member", "terms": out}


@dataclass(frozen=True)
class NotInMonoid:
    reason: str = ""

    def to_json(self) -> dict:
        return {"status": "not_in_monoid", "reason": self.reason}


def _merge(terms, preimages=None):
    merged: dict[tuple, int] = {}
    pre: dict[tuple, tuple] = {}
    for k, (m, x) in enumerate(terms):
        if m == 0:
            continue
        merged[x] = merged.get(x, 0) + m
        if preimages is not None:
            pre.setdefault(x, preimages[k])
    keys = sorted(merged)
    out = tuple((merged[x], x) for x in keys)
    return out, (tuple(pre[x] for x in keys) if preimages is not None else None)


def _as_int_point(v) -> tuple:
    if any(Fraction(x).denominator != 1 for x in v):
        raise IntegralityViolation(f"fractional point {tuple(str(x) for x in v)}")
    return tuple(int(x) for x in v)


def baum_trotter_decompose(P: HPolyhedron, n: int, a: Sequence[int]) -> list:
    """Split ``a`` in ``nP`` into ``n`` integer points of ``P``.

    Each round finds an integer ``x`` with ``Ax <= b`` and
    ``A(a - x) <= (n - 1) b``, seeded by ``a/n``; the rest is handled with
    ``n - 1``.  ``n`` is expected to be small (it is unary work).
    """
    a = int_vector(a)
    if n < 1:
        raise UsageError("n must be positive")
    if len(a) != P.dim:
        raise UsageError(f"target has dimension {len(a)}, polyhedron has {P.dim}")
    if not contains(P, [Fraction(v, n) for v in a]):
        raise UsageError("a/n is not in P")
    found = []
    cur, k = a, n
    neg = tuple(tuple(-v for v in row) for row in P.A)
    while k > 1:
        Acur = mat_vec(P.A, cur)
        rhs = tuple((k - 1) * b_i - g for b_i, g in zip(P.b, Acur))
        system = HPolyhedron(P.A + neg, P.b + rhs, P.dim)
        x = find_integer_point(system, [Fraction(v, k) for v in cur])
        found.append(x)
        cur = vsub(cur, x)
        k -= 1
    found.append(cur)
    for x in found:
        if not contains(P, x):
            raise IntegralityViolation("split point left the polyhedron")
    found.reverse()
    return found


def decompose_multiple(P: HPolyhedron, n: int, a: Sequence[int], check_bounded: bool = True) -> MonoidCertificate:
    """Certificate for ``a`` as a sum of exactly ``n`` integer points of the polytope P.

    ``n`` may be astronomically large; the work is polynomial in its bit length.
    """
    a = int_vector(a)
    if n < 1:
        raise UsageError("n must be positive")
    point = tuple(Fraction(v, n) for v in a)
    comb = decompose_point(P, point, check_bounded=check_bounded)
    vertices = [_as_int_point(v) for v in comb.vertices]
    floors = [math.floor(n * lam) for lam in comb.lambdas]
    nbar = n - sum(floors)
    abar = a
    for f, v in zip(floors, vertices):
        abar = vsub(abar, vscale(f, v))
    if nbar == 0:
        terms = list(zip(floors, vertices))
    else:
        if not 1 <= nbar <= P.dim:
            raise AssertionError(f"residual count {nbar} outside [1, {P.dim}]")
        log.debug("splitting residual of %d summands", nbar)
        rest = baum_trotter_decompose(P, nbar, abar)
        terms = [(f, v) for f, v in zip(floors, vertices) if f] + [(1, z) for z in rest]
    merged, _ = _merge(terms)
    cert = MonoidCertificate(merged, a, scale=n, residual_count=nbar)
    assert cert.combination() == a and cert.total == n
    return cert


def _sign_box(a):
    rows, rhs = [], []
    d = len(a)
    for i, v in enumerate(a):
        s = 1 if v >= 0 else -1
        e = [0] * d
        e[i] = -s
        rows.append(e)
        rhs.append(0)
        e = [0] * d
        e[i] = s
        rows.append(e)
        rhs.append(abs(v))
    return rows, rhs


def monoid_decompose(A, b, a):
    """Decide ``a`` in mon({x in Z^d : Ax <= b}) and decompose it.

    Returns a ``MonoidCertificate`` (with no terms when ``a = 0``) or a
    ``NotInMonoid`` verdict.
    """
    a = int_vector(a)
    P = HPolyhedron(A, b, dim=len(a))
    if not any(a):
        return MonoidCertificate((), a, scale=None)
    n = choose_scale(clip_ray(P, a))
    if n is None:
        return NotInMonoid("no positive integer n with a/n in P")
    rows, rhs = _sign_box(a)
    Q = P.with_rows(rows, rhs)
    cert = decompose_multiple(Q, n, a, check_bounded=False)
    for x in cert.points:
        if not contains(P, x):
            raise IntegralityViolation("support point outside P")
    return cert


def _projection_segment(L, A, b, a) -> RaySegment:
    """Exact ``{lam >= 0 : exists y, Ay <= b, Ly = lam a}`` as a segment."""
    c = len(A[0]) if A else len(L[0])
    rows, rhs = [], []
    for row, b_i in zip(A, b):
        rows.append(list(row) + [0])
        rhs.append(b_i)
    for row, a_i in zip(L, a):
        rows.append(list(row) + [-a_i])
        rhs.append(0)
        rows.append([-v for v in row] + [a_i])
        rhs.append(0)
    rows.append([0] * c + [-1])
    rhs.append(0)
    aug = HPolyhedron(rows, rhs, c + 1)
    obj = (0,) * c + (1,)
    lo = lp_optimize(aug, obj, "min")
    if lo.status == "infeasible":
        return RaySegment(True)
    hi = lp_optimize(aug, obj, "max")
    beta = hi.value if hi.optimal else None
    return RaySegment(False, lo.value, beta)


def monoid_decompose_projection(L, A, b, a):
    """Monoid decomposition over ``P = {Ly : Ay <= b}`` with ``[A; L]`` totally unimodular.

    Support points are returned as ``x = L z`` together with their preimages ``z``.
    """
    L = int_matrix(L)
    A = int_matrix(A)
    b = int_vector(b)
    a = int_vector(a)
    if len(L) != len(a):
        raise UsageError(f"L has {len(L)} rows but a has {len(a)} entries")
    c = len(L[0]) if L else (len(A[0]) if A else 0)
    if A and len(A[0]) != c:
        raise UsageError("A and L must have the same number of columns")
    if not any(a):
        return MonoidCertificate((), a)
    n = choose_scale(_projection_segment(L, A, b, a))
    if n is None:
        return NotInMonoid("no positive integer n with a/n in the projection")
    system = HPolyhedron.from_system(
        c,
        le=(A, [n * b_i for b_i in b]),
        eq=(L, a),
    )
    witness = lp_feasible_point(system)
    if witness is None:
        raise AssertionError("scaled lifting system unexpectedly empty")
    z = find_integer_point(system, witness)
    lifted = monoid_decompose(A, b, z)
    if isinstance(lifted, NotInMonoid):
        raise IntegralityViolation("lifted point not decomposable; [A; L] is not totally unimodular")
    terms = [(m, mat_vec(L, y)) for m, y in lifted.terms]
    merged, pre = _merge(terms, [y for _, y in lifted.terms])
    cert = MonoidCertificate(merged, a, preimages=pre, scale=n, residual_count=lifted.residual_count)
    assert cert.combination() == a
    return cert


def check_certificate(cert: MonoidCertificate, A, b, L=None) -> None:
    """Raise ``AssertionError`` unless ``cert`` is a valid decomposition."""
    P = HPolyhedron(A, b, dim=len(L[0]) if L else len(cert.target)) if (A or L) else None
    assert cert.combination() == tuple(cert.target), "target sum mismatch"
    for k, (m, x) in enumerate(cert.terms):
        assert isinstance(m, int) and m >= 1, f"bad multiplicity {m}"
        if L is None:
            assert P is None or contains(P, x), f"support point {x} violates the system"
        else:
            y = cert.preimages[k]
            assert tuple(mat_vec(L, y)) == tuple(x), "preimage does not project to point"
            assert contains(P, y), f"preimage {y} violates the system"
