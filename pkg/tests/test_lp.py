import itertools
import random
from fractions import Fraction

import pytest
import sympy

from unicara.errors import UsageError
from unicara.exactmath import dot, mat_vec, rank
from unicara.lp import MAX_PIVOTS, infeasibility_witness, lp_feasible_point, lp_optimize
from unicara.polyhedron import HPolyhedron, contains

from tu_gen import boxed, random_tu


def brute_vertices(A, b, d):
    """All vertices by solving every d x d row subsystem with sympy."""
    out = set()
    for rows in itertools.combinations(range(len(A)), d):
        M = sympy.Matrix([A[i] for i in rows])
        if M.det() == 0:
            continue
        sol = M.LUsolve(sympy.Matrix([b[i] for i in rows]))
        x = tuple(Fraction(int(v.p), int(v.q)) for v in sol)
        if all(dot(r, x) <= bi for r, bi in zip(A, b)):
            out.add(x)
    return out


def test_interval_max():
    res = lp_optimize(HPolyhedron([[1], [-1]], [2, 0]), (1,), "max")
    assert res.optimal and res.value == 2 and res.point == (2,)


def test_singleton_min():
    res = lp_optimize(HPolyhedron([[1], [-1]], [2, -2]), (1,), "min")
    assert res.value == 2 and res.point == (2,)


def test_simplex_triangle():
    P = HPolyhedron([[1, 1], [-1, 0], [0, -1]], [1, 0, 0])
    res = lp_optimize(P, (1, 1), "max")
    assert res.value == 1 and res.point in {(1, 0), (0, 1)}
    assert res.basic and rank([P.A[i] for i in res.tight_rows], 2) == 2


def test_unbounded_reports_ray():
    P = HPolyhedron([[-1, 0], [0, -1]], [0, 0])
    res = lp_optimize(P, (1, 2), "max")
    assert res.status == "unbounded"
    assert contains(P, res.point)
    assert dot((1, 2), res.ray) > 0
    assert all(v <= 0 for v in mat_vec(P.A, res.ray))


def test_lineality_unbounded():
    # x2 is free and appears nowhere
    P = HPolyhedron([[1, 0], [-1, 0]], [1, 0])
    res = lp_optimize(P, (0, 1), "min")
    assert res.status == "unbounded" and res.ray[1] < 0 and res.ray[0] == 0


def test_non_pointed_optimum_flagged():
    P = HPolyhedron([[1, 0], [-1, 0]], [1, 0])
    res = lp_optimize(P, (1, 0), "max")
    assert res.optimal and res.value == 1 and not res.basic


def test_infeasible_and_witness():
    P = HPolyhedron([[1], [-1], [1]], [0, -1, 5])
    assert lp_optimize(P, (1,)).status == "infeasible"
    assert lp_feasible_point(P) is None
    rows = infeasibility_witness(P)
    assert set(rows) == {0, 1}
    sub = HPolyhedron([P.A[i] for i in rows], [P.b[i] for i in rows])
    assert lp_feasible_point(sub) is None


def test_feasible_point_examples():
    x = lp_feasible_point(HPolyhedron([[1], [-1]], [1, 0]))
    assert 0 <= x[0] <= 1
    sq = HPolyhedron.from_system(2, lower=[0, 0], upper=[1, 1])
    assert contains(sq, lp_feasible_point(sq))


def test_dimension_mismatch():
    with pytest.raises(UsageError):
        lp_optimize(HPolyhedron([[1]], [1]), (1, 2))


@pytest.mark.parametrize("seed", range(60))
def test_matches_vertex_enumeration(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 4)
    rows = rng.randint(0, 8 - 2 * d) if 8 - 2 * d > 0 else 0
    A = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(rows)]
    b = [rng.randint(-2, 5) for _ in range(rows)]
    A, b = boxed(A, b, d, -2, 2)
    P = HPolyhedron(A, b)
    c = tuple(rng.randint(-3, 3) for _ in range(d))
    verts = brute_vertices(A, b, d)
    for sense in ("max", "min"):
        res = lp_optimize(P, c, sense)
        if not verts:
            assert res.status == "infeasible"
            continue
        best = (max if sense == "max" else min)(dot(c, v) for v in verts)
        assert res.optimal and res.value == best
        assert res.point in verts and res.basic
        assert res.pivots < MAX_PIVOTS


@pytest.mark.parametrize("seed", range(40))
def test_tu_basic_solutions_integral(seed):
    rng = random.Random(1000 + seed)
    A, d = random_tu(rng)
    b = [rng.randint(-6, 6) for _ in A]
    A, b = boxed(A, b, d, -5, 5)
    P = HPolyhedron(A, b)
    c = tuple(rng.randint(-3, 3) for _ in range(d))
    res = lp_optimize(P, c, rng.choice(["max", "min"]))
    if res.optimal:
        assert res.basic
        assert all(v.denominator == 1 for v in res.point)


def test_degenerate_cycling_example_terminates():
    # Beale's classic cycling LP, as <= constraints with x >= 0
    A = [
        [Fraction(1, 4), -8, -1, 9],
        [Fraction(1, 2), -12, Fraction(-1, 2), 3],
        [0, 0, 1, 0],
    ]
    A = [[int(v * 4) for v in r] for r in A]
    b = [0, 0, 4]
    A += [[-1 if j == k else 0 for j in range(4)] for k in range(4)]
    b += [0] * 4
    res = lp_optimize(HPolyhedron(A, b), (Fraction(3, 4), -20, Fraction(1, 2), -6), "max")
    assert res.optimal and res.value == Fraction(5, 4)
    assert res.pivots < 100
