from __future__ import annotations

import pytest
from mpmath import mpf, workprec

import oracles
from qpi import identities as ids
from qpi.hypterm import parse
from qpi.qseries import product_spec_series


@pytest.mark.parametrize("name", sorted(ids.REGISTRY))
def test_registered_identity_holds(name):
    rep = ids.verify_identity(ids.get(name), 60)
    assert rep.passed
    assert rep.matching


def test_registered_bauer_form_fails_at_degree_one():
    rep = ids.verify_identity(ids.get("bauer_q"), 60)
    assert rep.candidates == {"registered": 1, "denominator_q2q2": None}
    assert rep.matching == ["denominator_q2q2"]
    w = rep.witness()
    assert w["first_mismatch"] == 1
    assert w["candidates"]["registered"] == "mismatch at q^1"


def test_bauer_candidates_against_direct_evaluation():
    # an independent check of which right-hand side is the true one
    with workprec(200):
        q = mpf(3) / 10
        lhs = oracles.bauer_sum(q)
        assert abs(lhs - oracles.bauer_q2q2_product(q)) < mpf(10) ** -50
        assert abs(lhs - oracles.bauer_registered_product(q)) > mpf(10) ** -2


def test_a1_series_against_direct_evaluation():
    lhs = ids.truncated_lhs(ids.get("a1"), 80)
    rhs = product_spec_series(ids.get("a1").rhs, 80)
    with workprec(400):
        q = mpf(1) / 10
        direct = oracles.a1_sum(q)
        assert abs(oracles.series_value(lhs.coeffs(), q) - direct) < mpf(10) ** -75
        assert abs(oracles.series_value(rhs.coeffs(), q) - oracles.a1_product(q)) < mpf(10) ** -75


def test_perturbed_summand_is_caught():
    spec = ids.get("a1")
    wrong = ids.IdentitySpec("a1_wrong", parse(str(spec.summand).replace("[6n+1]", "[6n+2]")), spec.rhs)
    rep = ids.verify_identity(wrong, 30)
    assert not rep.passed
    assert rep.first_mismatch is not None and rep.lhs_coeff != rep.rhs_coeff


def test_registry_errors():
    with pytest.raises(KeyError):
        ids.get("nosuch")
    with pytest.raises(ValueError):
        ids.verify_identity(ids.get("a1"), 0)
    with pytest.raises(ValueError):
        ids.truncated_lhs(ids.get("a1"), -1)
