import copy
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2rank import TENGELY, U11_WITNESS
from g2rank.algebra import QQ, Poly
from g2rank.certify import (
    U11_POINT,
    CertificationError,
    RankCertificate,
    TorsionBound,
    Undecided,
    certify_alpha,
    certify_pair,
    classify,
    exact_multiple,
    relations_mod,
    torsion_scan,
    verify,
)
from g2rank.experiments import SamplingPlan
from g2rank.jacobian import InfinityNotRational, JacobianGroup, MumfordDivisor, embed_model_point
from g2rank.models import BoxSpec, WeierstrassModel, enumerate_box

X6P1 = WeierstrassModel.from_leading((1, 0, 0, 0, 0, 0, 1))


def test_tengely_nontorsion_and_reverifies():
    cert = certify_alpha(TENGELY)
    assert cert.kind == "NonTorsion"
    assert verify(cert)
    assert verify(RankCertificate.from_json(cert.to_json()))


def test_x6_plus_1_torsion_of_order_3():
    cert = certify_alpha(X6P1, [5, 7])
    assert cert.kind == "TorsionOfOrder" and cert.n == 3
    J = JacobianGroup.over_Q(X6P1)
    a = J.infinity_class_point()
    assert J.is_identity(J.mul(3, a)) and not J.is_identity(a)
    assert verify(cert)


def test_infinity_not_rational():
    with pytest.raises(InfinityNotRational, match="infinity not rational"):
        certify_alpha(WeierstrassModel.from_leading((2, 0, 0, 0, 0, 1, 1)))


def test_no_good_prime_or_bad_prime():
    with pytest.raises(CertificationError):
        certify_alpha(TENGELY, [])
    with pytest.raises(CertificationError, match="bad prime"):
        certify_alpha(TENGELY, [2])


def test_coefficient_guard_raises_undecided():
    J = JacobianGroup.over_Q(TENGELY)
    with pytest.raises(Undecided):
        exact_multiple(J, J.infinity_class_point(), 50, bit_guard=8)


def test_u11_witness_independent_and_generator_identity():
    cert = certify_pair(U11_WITNESS, 20)
    assert cert.kind == "IndependentUpTo" and cert.B == 20
    assert verify(cert)
    J = JacobianGroup.over_Q(U11_WITNESS)
    beta = embed_model_point(J, U11_WITNESS, *U11_POINT)
    G1 = MumfordDivisor(Poly([0, 0, 1], QQ), Poly([-2, -2], QQ), 0)
    assert J.is_valid(G1)
    assert J.sub(G1, J.mul(2, beta)) == J.infinity_class_point()


def test_relation_found_on_small_u11_curves():
    m = WeierstrassModel.from_leading((1, 0, 0, 1, 1, -1, 1))
    cert = certify_pair(m, 5)
    assert cert.kind == "RelationFound"
    mm, nn = cert.relation
    J = JacobianGroup.over_Q(m)
    a, b = J.infinity_class_point(), embed_model_point(J, m, *U11_POINT)
    assert J.is_identity(J.add(J.mul(mm, a), J.mul(nn, b)))
    assert verify(cert)


def test_empty_bound_and_non_u11():
    with pytest.raises(CertificationError, match="empty bound"):
        certify_pair(U11_WITNESS, 0)
    with pytest.raises(CertificationError):
        certify_pair(TENGELY, 3)


def test_relations_mod_are_relations():
    Jp = JacobianGroup.mod_p(U11_WITNESS, 13)
    a, b = Jp.infinity_class_point(), embed_model_point(Jp, U11_WITNESS, *U11_POINT)
    rels = relations_mod(Jp, a, b, 6)
    brute = {(m, n) for m, n in itertools.product(range(-6, 7), repeat=2)
             if (m, n) != (0, 0) and Jp.is_identity(Jp.add(Jp.mul(m, a), Jp.mul(n, b)))}
    assert rels == brute


def tamper(cert, fn):
    c = copy.deepcopy(cert)
    fn(c)
    return c


def test_tampered_certificates_are_rejected():
    nt = certify_alpha(TENGELY)
    assert not verify(tamper(nt, lambda c: c.evidence[0].update(order=c.evidence[0]["order"] + 1)))
    assert not verify(tamper(nt, lambda c: setattr(c, "kind", "TorsionOfOrder")))
    tor = certify_alpha(X6P1, [5, 7])
    assert not verify(tamper(tor, lambda c: setattr(c, "n", 6)))
    assert not verify(tamper(tor, lambda c: setattr(c, "kind", "NonTorsion")))
    ind = certify_pair(U11_WITNESS, 4)
    assert not verify(tamper(ind, lambda c: setattr(c, "kind", "RelationFound")))
    assert not verify(tamper(ind, lambda c: setattr(c, "curve", TENGELY)))


def test_torsion_bound():
    assert TorsionBound(1).B == 1
    assert TorsionBound(120).B == 92


SMALL_SQUARE = [m for m in enumerate_box(BoxSpec("S1Square", 2, h_filter=(0, 0, 0, 0)))]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(SMALL_SQUARE) - 1))
def test_certificates_are_sound_on_random_models(i):
    m = SMALL_SQUARE[i]
    try:
        cert = certify_alpha(m)
    except Undecided:
        return
    assert verify(cert)
    J = JacobianGroup.over_Q(m)
    a = J.infinity_class_point()
    if cert.kind == "TorsionOfOrder":
        assert J.is_identity(exact_multiple(J, a, cert.n))
    else:
        # non-torsion alpha never dies within the torsion bound
        for k in range(1, 13):
            assert not J.is_identity(J.mul(k, a))


def test_torsion_scan_and_classify():
    res = torsion_scan(BoxSpec("U11", 1), plan=SamplingPlan("uniform", 40, 1))
    assert res["total"] == 40
    assert res["torsion"] + res["nontorsion"] + res["undecided"] == 40
    assert classify(X6P1) == "torsion"
    assert classify(TENGELY) == "nontorsion"
    with pytest.raises(CertificationError):
        torsion_scan(BoxSpec("C1", 1))
