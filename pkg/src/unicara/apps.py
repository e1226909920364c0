"""Huge multicommodity flows and huge totally unimodular n-fold programs.

Flows are encoded as huge tables: rows are the ``l`` commodities plus one
slack commodity, columns are the ``m`` suppliers, and each consumer is a layer.
A consumer of type ``r`` has row sums ``(c^1_r, ..., c^l_r, slack_r)`` and
column sums ``(u_{1,r}, ..., u_{m,r})``, i.e. the capacity to each supplier is
met exactly once slack flow is counted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import UsageError
from .exactmath import int_matrix, int_vector, mat_vec, parse_int, vadd, vscale
from .lp import lp_feasible_point
from .monoid import decompose_multiple
from .polyhedron import HPolyhedron
from .search import DEFAULT_CAP, bounded_integer_solution
from .tables import (
    HugeTableInstance,
    HugeTableSolution,
    Infeasible,
    LayerType,
    bipartite_incidence,
)


@dataclass(frozen=True)
class ConsumerType:
    c: tuple  # consumption per commodity (l)
    cap: tuple  # capacity from each supplier (m)
    count: int


@dataclass(frozen=True)
class FlowInstance:
    l: int
    m: int
    supplies: tuple  # supplies[k][i]: commodity k from supplier i
    types: tuple

    def __post_init__(self):
        s = int_matrix(self.supplies)
        if len(s) != self.l or any(len(r) != self.m for r in s):
            raise UsageError("supplies must be an l x m matrix")
        types = tuple(
            ConsumerType(int_vector(t.c), int_vector(t.cap), int(t.count)) for t in self.types
        )
        if not types:
            raise UsageError("at least one consumer type is required")
        for t in types:
            if len(t.c) != self.l or len(t.cap) != self.m:
                raise UsageError("consumer type has wrong dimensions")
            if t.count < 1:
                raise UsageError("consumer counts must be positive")
            if any(x < 0 for x in t.c + t.cap):
                raise UsageError("consumptions and capacities must be nonnegative")
        if any(x < 0 for r in s for x in r):
            raise UsageError("supplies must be nonnegative")
        object.__setattr__(self, "supplies", s)
        object.__setattr__(self, "types", types)

    @classmethod
    def from_json(cls, data: dict) -> "FlowInstance":
        try:
            return cls(
                parse_int(data["l"]),
                parse_int(data["m"]),
                [[parse_int(x) for x in r] for r in data["supplies"]],
                [
                    ConsumerType(
                        tuple(parse_int(x) for x in t["c"]),
                        tuple(parse_int(x) for x in t["cap"]),
                        parse_int(t["count"]),
                    )
                    for t in data["types"]
                ],
            )
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed flow instance: {exc}") from None

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "m": self.m,
            "supplies": [[str(x) for x in r] for r in self.supplies],
            "types": [
                {"c": [str(x) for x in t.c], "cap": [str(x) for x in t.cap], "count": str(t.count)}
                for t in self.types
            ],
        }


@dataclass(frozen=True)
class FlowSolution:
    """Per consumer type: ``(multiplicity, flow)`` with ``flow[k][i]`` from supplier ``i``."""

    instance: FlowInstance
    patterns: tuple

    def to_json(self) -> dict:
        return {
            "status": "feasible",
            "types": [
                {
                    "count": str(t.count),
                    "patterns": [
                        {"lambda": str(mult), "flow": [[str(x) for x in r] for r in flow]}
                        for mult, flow in pats
                    ],
                }
                for t, pats in zip(self.instance.types, self.patterns)
            ],
        }


def encode_flow(f: FlowInstance):
    l, m = f.l, f.m
    types = []
    for t in f.types:
        slack = sum(t.cap) - sum(t.c)
        if slack < 0:
            return Infeasible("consumption exceeds total capacity for a consumer type")
        types.append(LayerType(t.cap, tuple(t.c) + (slack,), t.count))
    slack_row = []
    for i in range(m):
        s = sum(t.count * t.cap[i] for t in f.types) - sum(f.supplies[k][i] for k in range(l))
        if s < 0:
            return Infeasible(f"supplier {i} supplies more than its total capacity")
        slack_row.append(s)
    w = [list(r) for r in f.supplies] + [slack_row]
    return HugeTableInstance(l + 1, m, types, w)


def check_flow(f: FlowInstance, sol: FlowSolution) -> None:
    """Raise ``AssertionError`` unless every flow constraint holds exactly."""
    l, m = f.l, f.m
    shipped = [[0] * m for _ in range(l)]
    for t, pats in zip(f.types, sol.patterns):
        assert sum(mult for mult, _ in pats) == t.count, "consumer count mismatch"
        for mult, flow in pats:
            assert mult >= 1
            for k in range(l):
                assert all(x >= 0 for x in flow[k]), "negative flow"
                assert sum(flow[k]) == t.c[k], "consumption not met"
            for i in range(m):
                assert sum(flow[k][i] for k in range(l)) <= t.cap[i], "capacity exceeded"
            for k in range(l):
                for i in range(m):
                    shipped[k][i] += mult * flow[k][i]
    assert [list(r) for r in f.supplies] == shipped, "supplies not met"


def decode_flow(f: FlowInstance, sol: HugeTableSolution) -> FlowSolution:
    l = f.l
    patterns = []
    for cert in sol.certificates:
        pats = []
        for mult, z in cert.terms:
            layer = sol.layer(z)
            pats.append((mult, tuple(tuple(layer[k]) for k in range(l))))
        patterns.append(tuple(pats))
    out = FlowSolution(f, tuple(patterns))
    try:
        check_flow(f, out)
    except AssertionError as exc:
        raise RuntimeError(f"decoded flow certificate is corrupt: {exc}") from None
    return out


def solve_huge_flow(f: FlowInstance, cap: int = DEFAULT_CAP):
    from .tables import solve_huge_table

    inst = encode_flow(f)
    if isinstance(inst, Infeasible):
        return inst
    sol = solve_huge_table(inst, cap)
    if isinstance(sol, Infeasible):
        return sol
    return decode_flow(f, sol)


@dataclass(frozen=True)
class BrickType:
    b: tuple
    lo: tuple
    hi: tuple
    count: int


@dataclass(frozen=True)
class NFoldInstance:
    A: tuple
    types: tuple
    b0: tuple

    def __post_init__(self):
        A = int_matrix(self.A)
        if not A:
            raise UsageError("A must have at least one row")
        c, d = len(A), len(A[0])
        types = []
        for t in self.types:
            bt = BrickType(int_vector(t.b), int_vector(t.lo), int_vector(t.hi), int(t.count))
            if len(bt.b) != c or len(bt.lo) != d or len(bt.hi) != d:
                raise UsageError("brick type has wrong dimensions")
            if any(x > y for x, y in zip(bt.lo, bt.hi)):
                raise UsageError("brick lower bound exceeds upper bound")
            if bt.count < 1:
                raise UsageError("brick counts must be positive")
            types.append(bt)
        if not types:
            raise UsageError("at least one brick type is required")
        b0 = int_vector(self.b0)
        if len(b0) != d:
            raise UsageError("b0 must have d entries")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "types", tuple(types))
        object.__setattr__(self, "b0", b0)

    @property
    def d(self) -> int:
        return len(self.A[0])

    def brick_polytope(self, k: int) -> HPolyhedron:
        t = self.types[k]
        return HPolyhedron.from_system(self.d, eq=(self.A, t.b), lower=t.lo, upper=t.hi)

    @classmethod
    def from_json(cls, data: dict) -> "NFoldInstance":
        try:
            return cls(
                [[parse_int(x) for x in r] for r in data["A"]],
                [
                    BrickType(
                        tuple(parse_int(x) for x in t["b"]),
                        tuple(parse_int(x) for x in t["lo"]),
                        tuple(parse_int(x) for x in t["hi"]),
                        parse_int(t["count"]),
                    )
                    for t in data["types"]
                ],
                [parse_int(x) for x in data["b0"]],
            )
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed n-fold instance: {exc}") from None

    def to_json(self) -> dict:
        return {
            "A": [[str(x) for x in r] for r in self.A],
            "types": [
                {
                    "b": [str(x) for x in t.b],
                    "lo": [str(x) for x in t.lo],
                    "hi": [str(x) for x in t.hi],
                    "count": str(t.count),
                }
                for t in self.types
            ],
            "b0": [str(x) for x in self.b0],
        }


@dataclass(frozen=True)
class NFoldSolution:
    instance: NFoldInstance
    certificates: tuple
    compressed: tuple

    def to_json(self) -> dict:
        return {
            "status": "feasible",
            "types": [
                {
                    "count": str(t.count),
                    "terms": [{"lambda": str(mult), "x": [str(v) for v in x]} for mult, x in cert.terms],
                }
                for t, cert in zip(self.instance.types, self.certificates)
            ],
            "compressed": [[str(v) for v in y] for y in self.compressed],
        }


def solve_compressed_nfold(inst: NFoldInstance, cap: int = DEFAULT_CAP):
    """Integer ``y^1..y^t`` with ``A y^k = n_k b^k``, ``n_k lo^k <= y^k <= n_k hi^k``, ``sum y^k = b0``."""
    A, d, t = inst.A, inst.d, len(inst.types)
    nvar = d * t
    E, f = [], []
    for k, bt in enumerate(inst.types):
        for row, b_i in zip(A, bt.b):
            e = [0] * nvar
            e[k * d:(k + 1) * d] = row
            E.append(e)
            f.append(bt.count * b_i)
    for j in range(d):
        e = [0] * nvar
        for k in range(t):
            e[k * d + j] = 1
        E.append(e)
        f.append(inst.b0[j])
    lower = [bt.count * x for bt in inst.types for x in bt.lo]
    upper = [bt.count * x for bt in inst.types for x in bt.hi]
    y = bounded_integer_solution(E, f, lower, upper, cap)
    if y is None:
        return None
    return tuple(tuple(y[k * d:(k + 1) * d]) for k in range(t))


def check_nfold(inst: NFoldInstance, sol: NFoldSolution) -> None:
    total = (0,) * inst.d
    for bt, cert in zip(inst.types, sol.certificates):
        assert cert.total == bt.count, "brick multiplicities do not sum to the type count"
        for mult, x in cert.terms:
            assert mult >= 1
            assert mat_vec(inst.A, x) == bt.b, f"brick {x} violates Ax = b"
            assert all(lo <= v <= hi for lo, v, hi in zip(bt.lo, x, bt.hi)), f"brick {x} out of bounds"
            total = vadd(total, vscale(mult, x))
    assert total == inst.b0, "bricks do not sum to b0"


def solve_huge_nfold(inst: NFoldInstance, cap: int = DEFAULT_CAP):
    """Huge n-fold feasibility with ``A`` asserted totally unimodular."""
    for k in range(len(inst.types)):
        if lp_feasible_point(inst.brick_polytope(k)) is None:
            return Infeasible(f"brick type {k} admits no brick")
    y = solve_compressed_nfold(inst, cap)
    if y is None:
        return Infeasible("compressed problem has no integer solution")
    certs = tuple(
        decompose_multiple(inst.brick_polytope(k), bt.count, y[k], check_bounded=False)
        for k, bt in enumerate(inst.types)
    )
    sol = NFoldSolution(inst, certs, y)
    check_nfold(inst, sol)
    return sol


def table_as_nfold(inst: HugeTableInstance) -> NFoldInstance:
    """The same table problem with layers as bricks of the bipartite incidence matrix."""
    l, m = inst.l, inst.m
    A = bipartite_incidence(l, m)
    types = [
        BrickType(
            tuple(t.u) + tuple(t.v),
            (0,) * (l * m),
            tuple(min(t.u[c % m], t.v[c // m]) for c in range(l * m)),
            t.count,
        )
        for t in inst.types
    ]
    return NFoldInstance(A, types, tuple(x for r in inst.w for x in r))
