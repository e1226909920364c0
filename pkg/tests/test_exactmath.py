from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from unicara.errors import UsageError
from unicara.exactmath import (
    determinant,
    identity,
    mat_vec,
    null_space_vector,
    parse_int,
    parse_rat,
    rank,
    rat_to_str,
    solve_linear_system,
)

small = st.integers(-4, 4)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=0, max_size=max_rows).map(
            lambda rows: (rows, c)
        )
    )


def test_solve_identity():
    assert solve_linear_system(identity(2), (3, 5)) == (3, 5)


def test_solve_inconsistent():
    assert solve_linear_system([[1, 1], [1, 1]], (1, 2)) is None


def test_solve_diagonal():
    x = solve_linear_system([[2, 0], [0, 4]], (1, 1))
    assert x == (Fraction(1, 2), Fraction(1, 4))
    assert mat_vec([[2, 0], [0, 4]], x) == (1, 1)


def test_solve_dimension_mismatch():
    with pytest.raises(UsageError):
        solve_linear_system([[1, 0]], (1, 2))


def test_null_space_examples():
    assert null_space_vector(identity(3)) is None
    v = null_space_vector([[1, 1]])
    assert any(v) and v[0] + v[1] == 0
    v = null_space_vector([], 2)
    assert len(v) == 2 and any(v)


@settings(max_examples=150, deadline=None)
@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_matches_sympy(mc, rhs_pool):
    M, c = mc
    rhs = rhs_pool[: len(M)]
    if len(rhs) < len(M):
        return
    x = solve_linear_system(M, rhs, c)
    if M:
        consistent = sympy.Matrix(M).rank() == sympy.Matrix([r + [b] for r, b in zip(M, rhs)]).rank()
    else:
        consistent = True
    assert (x is not None) == consistent
    if x is not None:
        assert mat_vec(M, x) == tuple(rhs) if M else True


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_null_space_iff_rank_deficient(mc):
    M, c = mc
    r = sympy.Matrix(M).rank() if M else 0
    assert rank(M, c) == r
    v = null_space_vector(M, c)
    assert (v is None) == (r == c)
    if v is not None:
        assert any(v)
        assert all(x == 0 for x in mat_vec(M, v))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_sympy(M):
    assert determinant(M) == sympy.Matrix(M).det()


def test_determinism():
    M = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
    assert solve_linear_system(M, (1, 2, 3)) == solve_linear_system(M, (1, 2, 3))


def test_json_scalars():
    huge = 10**40 + 7
    assert parse_int(str(huge)) == huge
    assert parse_int("-12") == -12
    assert rat_to_str(Fraction(-3, 6)) == "-1/2"
    assert parse_rat("6/4") == Fraction(3, 2)
    for bad in ("1.5", "abc", True, None, "1/0"):
        with pytest.raises(UsageError):
            parse_rat(bad) if isinstance(bad, str) and "/" in bad else parse_int(bad)
