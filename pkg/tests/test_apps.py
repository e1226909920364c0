import random

import pytest

from unicara.apps import (
    BrickType,
    ConsumerType,
    FlowInstance,
    NFoldInstance,
    check_flow,
    encode_flow,
    solve_huge_flow,
    solve_huge_nfold,
    table_as_nfold,
)
from unicara.errors import UsageError
from unicara.oracle import brute_flow_search
from unicara.tables import HugeTableInstance, Infeasible, LayerType, solve_huge_table
from unicara.verify import verify_certificate

from tu_gen import layer_sums, random_layer


def test_encode_zero_instance():
    f = FlowInstance(1, 1, [[0]], [ConsumerType((0,), (0,), 2)])
    inst = encode_flow(f)
    assert inst.w == ((0,), (0,)) or [list(r) for r in inst.w] == [[0], [0]]
    sol = solve_huge_flow(f)
    assert sol.patterns == (((2, ((0,),)),),)


def test_encode_slack_values():
    f = FlowInstance(1, 1, [[3]], [ConsumerType((1,), (2,), 3)])
    inst = encode_flow(f)
    (t,) = inst.types
    assert t.v == (1, 1) and t.u == (2,) and t.count == 3
    assert [list(r) for r in inst.w] == [[3], [3]]
    sol = solve_huge_flow(f)
    check_flow(f, sol)
    assert sol.patterns == (((3, ((1,),)),),)


def test_negative_slack_infeasible():
    f = FlowInstance(1, 1, [[3]], [ConsumerType((3,), (2,), 1)])
    assert isinstance(encode_flow(f), Infeasible)
    f = FlowInstance(1, 1, [[7]], [ConsumerType((1,), (2,), 3)])
    assert isinstance(solve_huge_flow(f), Infeasible)


def test_flow_validation():
    with pytest.raises(UsageError):
        FlowInstance(1, 2, [[1]], [ConsumerType((1,), (1, 1), 1)])
    with pytest.raises(UsageError):
        FlowInstance(1, 1, [[1]], [ConsumerType((1,), (1,), 0)])


def test_flow_json_and_verify():
    f = FlowInstance(2, 2, [[2, 1], [1, 2]], [ConsumerType((1, 1), (1, 1), 3)])
    sol = solve_huge_flow(f)
    check_flow(f, sol)
    assert FlowInstance.from_json(f.to_json()) == f
    assert verify_certificate(f.to_json(), sol.to_json()) == []


@pytest.mark.parametrize("seed", range(25))
def test_flow_agrees_with_brute(seed):
    rng = random.Random(seed)
    l, m = rng.randint(1, 2), rng.randint(1, 2)
    types = [
        ConsumerType(tuple(rng.randint(0, 2) for _ in range(l)),
                     tuple(rng.randint(0, 2) for _ in range(m)), rng.randint(1, 2))
        for _ in range(rng.randint(1, 2))
    ]
    supplies = [[rng.randint(0, 3) for _ in range(m)] for _ in range(l)]
    f = FlowInstance(l, m, supplies, types)
    consumers = [(t.c, t.cap) for t in types for _ in range(t.count)]
    brute = brute_flow_search(l, m, supplies, consumers)
    sol = solve_huge_flow(f)
    assert (brute is None) == isinstance(sol, Infeasible)
    if brute is not None:
        check_flow(f, sol)


def test_nfold_example():
    inst = NFoldInstance([[1]], [BrickType((2,), (2,), (2,), 4)], (8,))
    sol = solve_huge_nfold(inst)
    assert sol.certificates[0].terms == ((4, (2,)),)
    assert verify_certificate(inst.to_json(), sol.to_json()) == []


def test_nfold_infeasible():
    inst = NFoldInstance([[1]], [BrickType((2,), (2,), (2,), 4)], (7,))
    assert isinstance(solve_huge_nfold(inst), Infeasible)
    # brick set empty
    inst = NFoldInstance([[1]], [BrickType((5,), (0,), (2,), 1)], (5,))
    assert isinstance(solve_huge_nfold(inst), Infeasible)


def test_nfold_zero_rhs_brick():
    inst = NFoldInstance([[1, 1]], [BrickType((0,), (-1, -1), (1, 1), 5)], (2, -2))
    sol = solve_huge_nfold(inst)
    cert = sol.certificates[0]
    assert cert.total == 5 and all(x[0] + x[1] == 0 for _, x in cert.terms)
    assert verify_certificate(inst.to_json(), sol.to_json()) == []


def test_nfold_json_roundtrip():
    inst = NFoldInstance([[1, 1]], [BrickType((1,), (0, 0), (1, 1), 10**15)], (10**15 - 3, 3))
    assert NFoldInstance.from_json(inst.to_json()) == inst
    sol = solve_huge_nfold(inst)
    assert dict((x, m) for m, x in sol.certificates[0].terms) == {(1, 0): 10**15 - 3, (0, 1): 3}


@pytest.mark.parametrize("seed", range(15))
def test_table_as_nfold_agrees(seed):
    rng = random.Random(1000 + seed)
    l, m = rng.randint(1, 3), rng.randint(1, 3)
    types, w = [], [[0] * m for _ in range(l)]
    for _ in range(rng.randint(1, 2)):
        z = random_layer(rng, l, m)
        c = rng.randint(1, 4)
        types.append(LayerType(*layer_sums(z), c))
        for i in range(l):
            for j in range(m):
                w[i][j] += c * z[i][j]
    if rng.random() < 0.3:
        w[0][0] += 1
    inst = HugeTableInstance(l, m, types, w)
    t_sol = solve_huge_table(inst)
    n_inst = table_as_nfold(inst)
    n_sol = solve_huge_nfold(n_inst)
    assert isinstance(t_sol, Infeasible) == isinstance(n_sol, Infeasible)
    if not isinstance(n_sol, Infeasible):
        assert verify_certificate(n_inst.to_json(), n_sol.to_json()) == []
        assert verify_certificate(inst.to_json(), t_sol.to_json()) == []
