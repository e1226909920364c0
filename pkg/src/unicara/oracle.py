"""Brute-force reference oracles for desk-scale instances.

Deliberately independent of the solver modules: plain integer loops, no LP,
no linear algebra.  Every oracle refuses (``OracleRefused``) rather than
truncate when its state space exceeds the cap.
"""

from __future__ import annotations

import itertools
from typing import Optional, Sequence

from .errors import CapExceeded

DEFAULT_CAP = 2_000_000


class OracleRefused(CapExceeded):
    pass


def enumerate_lattice_points(A, b, lower: Sequence[int], upper: Sequence[int], cap: int = DEFAULT_CAP) -> list:
    """All integer ``x`` with ``Ax <= b`` and ``lower <= x <= upper``, by exhaustive scan."""
    volume = 1
    for lo, hi in zip(lower, upper):
        volume *= max(0, hi - lo + 1)
    if volume > cap:
        raise OracleRefused(f"box volume {volume} exceeds cap {cap}")
    out = []
    ranges = [range(lo, hi + 1) for lo, hi in zip(lower, upper)]
    for x in itertools.product(*ranges):
        if all(sum(r * v for r, v in zip(row, x)) <= bi for row, bi in zip(A, b)):
            out.append(tuple(x))
    return out


def sign_box(a: Sequence[int]):
    lower = [min(0, v) for v in a]
    upper = [max(0, v) for v in a]
    return lower, upper


def brute_monoid_member(points: Sequence[Sequence[int]], a: Sequence[int], cap: int = DEFAULT_CAP):
    """Decide ``a`` in the monoid of ``points`` restricted to the sign box of ``a``.

    Returns ``(True, witness)`` with ``witness`` a list of ``(count, point)`` or
    ``(False, None)``.  Points outside the sign box of ``a`` are ignored.
    """
    a = tuple(a)
    if not any(a):
        return True, []
    size = 1
    for v in a:
        size *= abs(v) + 1
    if size > cap:
        raise OracleRefused(f"state space {size} exceeds cap {cap}")
    lower, upper = sign_box(a)
    gens = sorted({
        tuple(p) for p in points
        if any(p) and all(lo <= v <= hi for lo, v, hi in zip(lower, p, upper))
    })
    # generators inside the sign box only shrink |r|_1, and any decomposition of a
    # nonzero residual r uses a generator that is nonzero where r first is
    by_coord = [[g for g in gens if g[i]] for i in range(len(a))]
    dead = set()
    path = []

    def fits(g, r):
        return all((0 <= x <= y) if y >= 0 else (y <= x <= 0) for x, y in zip(g, r))

    def go(r):
        i = next((k for k, v in enumerate(r) if v), None)
        if i is None:
            return True
        if r in dead:
            return False
        if len(dead) > cap:
            raise OracleRefused(f"more than {cap} dead states")
        for g in by_coord[i]:
            if fits(g, r):
                path.append(g)
                if go(tuple(y - x for x, y in zip(g, r))):
                    return True
                path.pop()
        dead.add(r)
        return False

    if not go(a):
        return False, None
    counts: dict = {}
    for g in path:
        counts[g] = counts.get(g, 0) + 1
    return True, sorted((c, g) for g, c in counts.items())


def _layers(l: int, m: int, u: Sequence[int], v: Sequence[int], cap: int) -> list:
    """All nonnegative integer ``l x m`` matrices with column sums ``u`` and row sums ``v``."""
    out = []
    col = list(u)

    def rows(i, acc):
        if len(out) > cap:
            raise OracleRefused("too many layers")
        if i == l:
            if all(c == 0 for c in col):
                out.append(tuple(acc))
            return
        for row in _compositions(v[i], col):
            for j in range(m):
                col[j] -= row[j]
            rows(i + 1, acc + [row])
            for j in range(m):
                col[j] += row[j]

    if sum(u) == sum(v):
        rows(0, [])
    return out


def _compositions(total: int, caps: Sequence[int]):
    """Tuples ``r`` with ``0 <= r_j <= caps_j`` summing to ``total``."""
    if not caps:
        if total == 0:
            yield ()
        return
    rest = sum(caps[1:])
    for x in range(max(0, total - rest), min(total, caps[0]) + 1):
        for tail in _compositions(total - x, caps[1:]):
            yield (x,) + tail


def brute_table_search(l: int, m: int, layer_sums, w, cap: int = DEFAULT_CAP):
    """Explicit ``l x m x n`` table with per-layer sums ``layer_sums[k] = (u, v)``.

    ``w`` is the ``l x m`` vertical-sum matrix.  Returns the list of ``n``
    layers (each a tuple of row tuples) or ``None``.
    """
    n = len(layer_sums)
    cache = {}
    options = []
    for u, v in layer_sums:
        key = (tuple(u), tuple(v))
        if key not in cache:
            cache[key] = _layers(l, m, key[0], key[1], cap)
        options.append(cache[key])
    dead = set()
    steps = [0]

    def go(k, resid):
        steps[0] += 1
        if steps[0] > cap:
            raise OracleRefused("table search exceeded cap")
        if k == n:
            return [] if all(x == 0 for r in resid for x in r) else None
        state = (k, resid)
        if state in dead:
            return None
        for layer in options[k]:
            nr = tuple(
                tuple(resid[i][j] - layer[i][j] for j in range(m)) for i in range(l)
            )
            if any(x < 0 for r in nr for x in r):
                continue
            tail = go(k + 1, nr)
            if tail is not None:
                return [layer] + tail
        dead.add(state)
        return None

    return go(0, tuple(tuple(r) for r in w))


def brute_flow_search(l: int, m: int, supplies, consumers, cap: int = DEFAULT_CAP):
    """Explicit multicommodity flow to each listed consumer, or ``None``.

    ``consumers`` is a list of ``(c, cap)`` pairs, one per consumer; the
    result gives ``flow[k][i]`` per consumer.
    """
    cache = {}

    def patterns(c, caps):
        key = (tuple(c), tuple(caps))
        if key in cache:
            return cache[key]
        out = []

        def rec(k, room, acc):
            if len(out) > cap:
                raise OracleRefused("too many flow patterns")
            if k == l:
                out.append(tuple(acc))
                return
            for row in _compositions(c[k], room):
                rec(k + 1, [r - x for r, x in zip(room, row)], acc + [row])

        rec(0, list(caps), [])
        cache[key] = out
        return out

    options = [patterns(c, caps) for c, caps in consumers]
    dead = set()
    steps = [0]

    def go(j, resid):
        steps[0] += 1
        if steps[0] > cap:
            raise OracleRefused("flow search exceeded cap")
        if j == len(options):
            return [] if all(x == 0 for r in resid for x in r) else None
        if (j, resid) in dead:
            return None
        for pat in options[j]:
            nr = tuple(tuple(resid[k][i] - pat[k][i] for i in range(m)) for k in range(l))
            if any(x < 0 for r in nr for x in r):
                continue
            tail = go(j + 1, nr)
            if tail is not None:
                return [pat] + tail
        dead.add((j, resid))
        return None

    return go(0, tuple(tuple(r) for r in supplies))
