import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2rank import TENGELY, U11_WITNESS
from g2rank.algebra import AlgebraError, Poly, discriminant, is_square, is_squarefree, primes_up_to
from g2rank.jacobian import group_order, is_good_prime
from g2rank.models import (
    BoxSpec,
    ModelError,
    WeierstrassModel,
    count_box,
    enumerate_box,
    height,
    infinity_class,
    quadratic_twist,
    validate,
)


def brute_valid(f, h=(0, 0, 0, 0)):
    g = Poly(WeierstrassModel(tuple(f), h).g_coeffs)
    return g.degree >= 5 and discriminant(g) != 0


def test_integer_predicates_examples():
    assert is_square(9) == 3
    assert is_square(8) is None
    assert is_square(0) == 0
    assert is_squarefree(30) and not is_squarefree(12) and is_squarefree(17)
    with pytest.raises(AlgebraError):
        is_squarefree(0)
    assert primes_up_to(10) == [2, 3, 5, 7]
    assert primes_up_to(2) == [2]
    assert len(primes_up_to(30)) == 10


def test_validate_examples():
    assert validate(TENGELY).valid
    assert discriminant(TENGELY.g()) != 0
    bad = validate(WeierstrassModel.from_leading((1, 0, 0, 0, 0, 0, 0)))
    assert not bad.valid and bad.reason == "discriminant zero"
    assert validate(WeierstrassModel((17, 0, 0, 0, 0, 1, 0))).valid


def test_infinity_class_examples():
    ic = infinity_class(TENGELY)
    assert ic.kind == "two_rational" and ic.c_root == 2
    m = WeierstrassModel.from_leading((2, 0, 0, 0, 0, 0, 1), (0, 0, 0, 1))
    assert m.c == 9 and infinity_class(m).c_root == 3
    assert infinity_class(WeierstrassModel((17, 0, 0, 0, 0, 1, 0))).kind == "one_point"
    assert infinity_class(WeierstrassModel.from_leading((2, 0, 0, 0, 0, 0, 1))).kind == "two_conjugate"


def test_height_examples():
    assert height(TENGELY).h1 == 120
    assert height(WeierstrassModel((0, 0, 0, 0, 0, 1, 0)), "H2").h2 == 1.0
    assert height(WeierstrassModel((-3, 0, 0, 0, 0, 0, 3))).h1 == 3
    with pytest.raises(ModelError):
        height(TENGELY, "H2")


def test_h2_uses_twenty_over_k():
    # c2 = 2 (k=2) against c5 = 5 (k=5): 2^10 = 1024 vs 5^4 = 625
    m = WeierstrassModel((5, 0, 0, 2, 0, 1, 0))
    hv = height(m, "H2")
    assert hv.h2_index == 2 and hv.h2 == pytest.approx(1024.0)


def test_c1_x1_count_matches_brute_force():
    box = BoxSpec("C1", 1, h_filter=(0, 0, 0, 0))
    brute = sum(brute_valid(f) for f in itertools.product((-1, 0, 1), repeat=7))
    assert count_box(box) == brute == 1680


def test_u11_x1_count_matches_brute_force():
    brute = sum(brute_valid((1,) + mid + (1,)) for mid in itertools.product((-1, 0, 1), repeat=5))
    assert count_box(BoxSpec("U11", 1)) == brute


def test_s1square_leading_coefficients_square():
    box = BoxSpec("S1Square", 1)
    models = list(enumerate_box(box))
    assert models
    assert all(infinity_class(m).kind == "two_rational" for m in models)
    # the S1 box restricted to square c gives the same set
    s1 = [m for m in enumerate_box(BoxSpec("S1", 1)) if m.f[6] != 0 and infinity_class(m).kind == "two_rational"]
    assert {m.key() for m in s1} == {m.key() for m in models}


def test_enumeration_is_ordered_and_unique():
    box = BoxSpec("S1", 1)
    keys = [m.key() for m in enumerate_box(box)]
    assert keys == sorted(keys)
    assert len(keys) == len(set(keys))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 300))
def test_resume_after_any_key_gives_the_tail(i):
    box = BoxSpec("U11", 1)
    full = [m.key() for m in enumerate_box(box)]
    k = full[i % len(full)]
    tail = [m.key() for m in enumerate_box(box, start_after=k)]
    assert tail == full[full.index(k) + 1:]


def test_box_contains_its_models():
    box = BoxSpec("U11", 2)
    assert box.contains(U11_WITNESS) is False  # coefficient 10 is outside X = 2
    assert BoxSpec("U11", 10).contains(U11_WITNESS)
    for m in itertools.islice(enumerate_box(box), 50):
        assert box.contains(m)


def test_boxspec_json_round_trip_and_errors():
    for b in (BoxSpec("S1", 4, h_filter=(1, 0, 0, 1)), BoxSpec("S2", 2, 3), BoxSpec("C2", 100)):
        assert BoxSpec.from_json(b.to_json()) == b
    with pytest.raises(ModelError):
        BoxSpec("S2", 3)
    with pytest.raises(ModelError):
        BoxSpec("Q9", 3)
    with pytest.raises(ModelError):
        BoxSpec("C1", 0)


def test_model_json_round_trip():
    m = WeierstrassModel.from_leading((3, -1, 4, 1, -5, 9, 2), (1, 0, 1, 1), provenance="x")
    assert WeierstrassModel.from_json(m.to_json()) == m


def test_twist_by_one_is_identity():
    assert quadratic_twist(TENGELY, 1).f == TENGELY.f


def test_twist_errors():
    with pytest.raises(ModelError):
        quadratic_twist(TENGELY, 4)
    with pytest.raises(ModelError):
        quadratic_twist(TENGELY, 0)
    with pytest.raises(ModelError):
        quadratic_twist(WeierstrassModel.from_leading((1, 0, 0, 0, 0, 0, 1), (1, 0, 0, 0)), 2)


@pytest.mark.parametrize("d", [-1, 2, -3, 5, 6])
def test_twist_twice_restores_counts(d):
    # twisting by d twice gives y^2 = d^2 f, isomorphic to y^2 = f
    m = quadratic_twist(quadratic_twist(TENGELY, d), d)
    for p in primes_up_to(40):
        if p > 2 and d % p and is_good_prime(TENGELY.g_coeffs, p):
            assert group_order(m.g_coeffs, p) == group_order(TENGELY.g_coeffs, p)


@pytest.mark.parametrize("d", [-1, 2, 3])
def test_twist_changes_frobenius_sign(d):
    # #C^(d)(F_p) + #C(F_p) = 2(p + 1) when d is a non-residue mod p
    from g2rank.algebra import legendre
    from g2rank.jacobian import count_points_curve

    tw = quadratic_twist(TENGELY, d)
    for p in (5, 7, 11, 13, 17, 19):
        if d % p and is_good_prime(TENGELY.g_coeffs, p) and legendre(d, p) == -1:
            assert count_points_curve(tw.g_coeffs, p) + count_points_curve(TENGELY.g_coeffs, p) == 2 * (p + 1)
