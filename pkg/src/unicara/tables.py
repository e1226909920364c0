"""Huge three-way ``l x m x n`` tables with typed layers.

A layer is an ``l x m`` nonnegative integer matrix, flattened row-major:
cell ``(i, j)`` is coordinate ``i * m + j``.  Layer constraints use the
bipartite incidence matrix whose first ``m`` rows are column sums and whose
next ``l`` rows are row sums, so the right-hand side is ``(u, v)``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import UsageError
from .exactmath import int_vector, mat_vec, parse_int
from .monoid import MonoidCertificate, decompose_multiple
from .polyhedron import HPolyhedron
from .search import DEFAULT_CAP, bounded_integer_solution


@dataclass(frozen=True)
class Infeasible:
    reason: str = ""

    def to_json(self) -> dict:
        return {"status": "infeasible", "reason": self.reason}


@dataclass(frozen=True)
class LayerType:
    u: tuple  # m column sums
    v: tuple  # l row sums
    count: int

    def __post_init__(self):
        object.__setattr__(self, "u", int_vector(self.u))
        object.__setattr__(self, "v", int_vector(self.v))
        if any(x < 0 for x in self.u + self.v):
            raise UsageError("layer sums must be nonnegative")
        if self.count < 1:
            raise UsageError("layer type count must be positive")


@dataclass(frozen=True)
class HugeTableInstance:
    l: int
    m: int
    types: tuple
    w: tuple  # l x m vertical sums

    def __post_init__(self):
        if self.l < 1 or self.m < 1:
            raise UsageError("table sides must be positive")
        if not self.types:
            raise UsageError("at least one layer type is required")
        object.__setattr__(self, "types", tuple(self.types))
        w = tuple(int_vector(r) for r in self.w)
        if len(w) != self.l or any(len(r) != self.m for r in w):
            raise UsageError("w must be an l x m matrix")
        if any(x < 0 for r in w for x in r):
            raise UsageError("vertical sums must be nonnegative")
        object.__setattr__(self, "w", w)
        for k, t in enumerate(self.types):
            if len(t.u) != self.m or len(t.v) != self.l:
                raise UsageError(f"type {k}: u needs {self.m} entries and v needs {self.l}")

    @property
    def n(self) -> int:
        return sum(t.count for t in self.types)

    @classmethod
    def from_json(cls, data: dict) -> "HugeTableInstance":
        try:
            types = [
                LayerType(
                    [parse_int(x) for x in t["u"]],
                    [parse_int(x) for x in t["v"]],
                    parse_int(t["count"]),
                )
                for t in data["types"]
            ]
            return cls(
                parse_int(data["l"]),
                parse_int(data["m"]),
                types,
                [[parse_int(x) for x in r] for r in data["w"]],
            )
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed table instance: {exc}") from None

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "m": self.m,
            "types": [
                {"u": [str(x) for x in t.u], "v": [str(x) for x in t.v], "count": str(t.count)}
                for t in self.types
            ],
            "w": [[str(x) for x in r] for r in self.w],
        }


@dataclass(frozen=True)
class HugeTableSolution:
    instance: HugeTableInstance
    certificates: tuple  # per type, support points are flattened layers
    compressed: tuple  # per type, flattened l x m block sum y^k

    def layer(self, flat) -> list:
        m = self.instance.m
        return [list(flat[i * m:(i + 1) * m]) for i in range(self.instance.l)]

    def to_json(self) -> dict:
        out = []
        for t, cert in zip(self.instance.types, self.certificates):
            out.append({
                "count": str(t.count),
                "terms": [
                    {"lambda": str(mult), "layer": [[str(x) for x in r] for r in self.layer(z)]}
                    for mult, z in cert.terms
                ],
            })
        return {
            "status": "feasible",
            "types": out,
            "compressed": [[[str(x) for x in r] for r in self.layer(y)] for y in self.compressed],
        }


def bipartite_incidence(l: int, m: int) -> tuple:
    """``(l + m) x lm`` vertex-edge incidence matrix of ``K_{l,m}``."""
    if l < 1 or m < 1:
        raise UsageError("l and m must be positive")
    rows = []
    for j in range(m):
        rows.append(tuple(1 if c % m == j else 0 for c in range(l * m)))
    for i in range(l):
        rows.append(tuple(1 if c // m == i else 0 for c in range(l * m)))
    return tuple(rows)


def transportation_polytope(l: int, m: int, u: Sequence[int], v: Sequence[int]) -> HPolyhedron:
    """``{z >= 0 : column sums u, row sums v}`` with redundant cell caps ``min(u_j, v_i)``."""
    A = bipartite_incidence(l, m)
    upper = [min(u[c % m], v[c // m]) for c in range(l * m)]
    return HPolyhedron.from_system(
        l * m, eq=(A, tuple(u) + tuple(v)), lower=[0] * (l * m), upper=upper
    )


def layer_ok(l: int, m: int, z: Sequence[int], u: Sequence[int], v: Sequence[int]) -> bool:
    if any(x < 0 for x in z):
        return False
    return mat_vec(bipartite_incidence(l, m), z) == tuple(u) + tuple(v)


def _verify_type(l, m, cert: MonoidCertificate, u, v, n, target):
    if cert.total != n:
        raise AssertionError(f"layer multiplicities sum to {cert.total}, expected {n}")
    if cert.combination() != tuple(target):
        raise AssertionError("layer certificate does not sum to its vertical sums")
    for z in cert.points:
        if not layer_ok(l, m, z, u, v):
            raise AssertionError(f"layer {z} violates its row or column sums")


def _symmetric_certificate(l, m, n, u, v, w_flat):
    A = bipartite_incidence(l, m)
    b = tuple(u) + tuple(v)
    if mat_vec(A, w_flat) != tuple(n * x for x in b):
        return None
    if not any(b):
        if any(w_flat):
            return None
        cert = MonoidCertificate(((n, (0,) * (l * m)),), tuple(w_flat), scale=n)
    else:
        cert = decompose_multiple(transportation_polytope(l, m, u, v), n, w_flat)
    _verify_type(l, m, cert, u, v, n, w_flat)
    return cert


def solve_symmetric_table(l: int, m: int, n: int, u, v, w):
    """Huge ``l x m x n`` table whose layers all have column sums ``u``, row sums ``v``."""
    if n < 1:
        raise UsageError("n must be positive")
    inst = HugeTableInstance(l, m, [LayerType(u, v, n)], w)
    w_flat = tuple(x for r in inst.w for x in r)
    cert = _symmetric_certificate(l, m, n, inst.types[0].u, inst.types[0].v, w_flat)
    if cert is None:
        return Infeasible("vertical sums inconsistent with n times the layer sums")
    return HugeTableSolution(inst, (cert,), (w_flat,))


def solve_compressed_table(l, m, col_sums, row_sums, w, cap: int = DEFAULT_CAP):
    """Nonnegative integer ``l x m x t`` table with the given three sum families.

    ``col_sums[k][j]``, ``row_sums[k][i]`` and ``w[i][j]``.  Returns the ``t``
    flattened layers, or ``None`` when no table exists.
    """
    t = len(col_sums)
    if len(row_sums) != t or t < 1:
        raise UsageError("need matching, nonempty column and row sum families")
    lm = l * m
    nvar = lm * t
    E, f = [], []

    def var(i, j, k):
        return k * lm + i * m + j

    for k in range(t):
        for j in range(m):
            row = [0] * nvar
            for i in range(l):
                row[var(i, j, k)] = 1
            E.append(row)
            f.append(col_sums[k][j])
        for i in range(l):
            row = [0] * nvar
            for j in range(m):
                row[var(i, j, k)] = 1
            E.append(row)
            f.append(row_sums[k][i])
    for i in range(l):
        for j in range(m):
            row = [0] * nvar
            for k in range(t):
                row[var(i, j, k)] = 1
            E.append(row)
            f.append(w[i][j])
    upper = [
        min(w[i][j], col_sums[k][j], row_sums[k][i])
        for k in range(t) for i in range(l) for j in range(m)
    ]
    if any(x < 0 for x in upper):
        return None
    y = bounded_integer_solution(E, f, [0] * nvar, upper, cap)
    if y is None:
        return None
    return tuple(tuple(y[k * lm:(k + 1) * lm]) for k in range(t))


def solve_huge_table(instance: HugeTableInstance, cap: int = DEFAULT_CAP, workers: Optional[int] = None):
    """Solve a huge typed table: compressed table first, then one monoid problem per type."""
    l, m = instance.l, instance.m
    types = instance.types
    y = solve_compressed_table(
        l, m,
        [[t.count * x for x in t.u] for t in types],
        [[t.count * x for x in t.v] for t in types],
        instance.w,
        cap,
    )
    if y is None:
        return Infeasible("compressed l x m x t table has no solution")

    def one(k):
        t = types[k]
        cert = _symmetric_certificate(l, m, t.count, t.u, t.v, y[k])
        if cert is None:
            raise AssertionError("compressed block does not match its layer sums")
        return cert

    if workers and workers > 1 and len(types) > 1:
        with ThreadPoolExecutor(workers) as ex:
            certs = tuple(ex.map(one, range(len(types))))
    else:
        certs = tuple(one(k) for k in range(len(types)))
    return HugeTableSolution(instance, certs, y)


def expand_certificate(solution: HugeTableSolution, limit: int) -> list:
    """Materialize the explicit list of ``n`` layers (type blocks in order).

    Refuses when ``n > limit``.  All three line-sum families are re-checked.
    """
    inst = solution.instance
    n = inst.n
    if n > limit:
        raise UsageError(f"n = {n} exceeds the expansion limit {limit}")
    layers = []
    for t, cert in zip(inst.types, solution.certificates):
        block = []
        for mult, z in cert.terms:
            block.extend([solution.layer(z)] * mult)
        if len(block) != t.count:
            raise AssertionError("type block has the wrong number of layers")
        for layer in block:
            for j in range(inst.m):
                assert sum(layer[i][j] for i in range(inst.l)) == t.u[j]
            for i in range(inst.l):
                assert sum(layer[i]) == t.v[i]
        layers.extend(block)
    for i in range(inst.l):
        for j in range(inst.m):
            assert sum(layer[i][j] for layer in layers) == inst.w[i][j]
    return layers
