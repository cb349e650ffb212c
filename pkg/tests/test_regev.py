import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2rank import TENGELY
from g2rank.jacobian import BadPrime, JacobianGroup
from g2rank.regev import (
    CostLedger,
    GeneratorSet,
    RegevError,
    RelationVector,
    build_table,
    cost_report,
    find_relation,
    ledger_minimum,
    lift_and_reduce,
    model_cost,
    msm_naive,
    msm_pippenger,
    msm_table,
    random_generators,
)

J101 = JacobianGroup.mod_p(TENGELY, 101)


def gens(d, seed=0):
    return random_generators(J101, d, random.Random(seed))


def reference(gs, z):
    J = gs.group
    acc = J.identity()
    for zi, g in zip(z, gs.gens):
        acc = J.add(acc, J.mul(zi, g))
    return acc


def test_trivial_scalars():
    gs = gens(3)
    R, led = msm_naive(gs, [0, 0, 0])
    assert J101.is_identity(R) and led.total == 0
    assert msm_naive(gs, [1, 0, 0])[0] == gs.gens[0]
    assert J101.is_identity(msm_pippenger(gs, [0, 0, 0])[0])
    assert J101.is_identity(msm_table(gs, [0, 0, 0])[0])


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10 ** 6), st.integers(1, 40))
def test_three_methods_agree(d, seed, bits):
    rng = random.Random(seed)
    gs = gens(d, seed)
    z = [rng.getrandbits(bits) for _ in range(d)]
    ref = reference(gs, z)
    assert msm_naive(gs, z)[0] == ref
    assert msm_pippenger(gs, z)[0] == ref
    assert msm_pippenger(gs, z, window=3)[0] == ref
    assert msm_table(gs, z)[0] == ref


def test_errors():
    gs = gens(2)
    with pytest.raises(RegevError, match="length mismatch"):
        msm_naive(gs, [1])
    with pytest.raises(RegevError):
        msm_naive(gs, [1, -1])
    with pytest.raises(RegevError, match="guard"):
        msm_pippenger(gs, [1, 1], window=21)
    with pytest.raises(RegevError):
        GeneratorSet(J101, [J101.identity()])


def test_table_precomputation_is_separate():
    gs = gens(4)
    led = CostLedger()
    table = build_table(gs, led)
    assert led.table_entries == 16 and led.precomp_additions == 11 and led.total == 0
    _, q = msm_table(gs, [5, 9, 3, 12], table)
    assert q.precomp_additions == 0 and q.total <= 2 * 4


def test_model_cost():
    assert model_cost(256, 1) == 257
    assert model_cost(256, 16) == 32
    assert model_cost(10, 3) == 3 + 4


def test_cost_report_columns():
    rows = cost_report(64, [1, 2, 4], J101, seed=1)
    assert [r["d"] for r in rows] == [1, 2, 4]
    for r in rows:
        assert r["model_cost"] == r["d"] + -(-64 // r["d"])
        assert r["total"] == r["additions"] + r["doublings"]
    assert ledger_minimum(rows)["total"] == min(r["total"] for r in rows)


def test_lift_and_reduce():
    JQ = JacobianGroup.over_Q(TENGELY)
    gs = lift_and_reduce(TENGELY, [JQ.infinity_class_point()], 101)
    assert not J101.is_identity(gs.gens[0])
    with pytest.raises(BadPrime):
        lift_and_reduce(TENGELY, [JQ.infinity_class_point()], 3)


def test_find_relation():
    gs = gens(3, 5)
    rel = find_relation(gs, 4)
    if rel is not None:
        assert rel.in_lattice(gs) and any(rel.z)
    assert RelationVector((0, 0, 0)).in_lattice(gs)
