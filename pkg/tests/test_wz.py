from __future__ import annotations

import pytest

from qpi import identities as ids
from qpi import wz
from qpi.hypterm import eval_ratfunc, parse

FAM1 = wz.FAMILIES["wz_q1_family"]
FAM2 = wz.FAMILIES["wz_q3_family"]


def test_relation_sides_agree_on_a_cell():
    lhs, rhs = wz.relation_sides(FAM1.base, 2, 3)
    assert lhs == rhs


@pytest.mark.parametrize("family", ["wz_q1_family", "wz_q3_family"])
def test_explicit_first_pair_satisfies_relation(family):
    assert wz.check_relation(wz.FAMILIES[family].explicit[0], 6, 0, 6).passed


def test_tilde_swaps_conventions_and_is_an_involution():
    t = FAM1.shifted.tilde()
    assert t.convention is wz.Convention.STANDARD
    assert t.tilde() == FAM1.shifted


def test_wrong_convention_fails():
    swapped = wz.WZPair(FAM1.shifted.F, FAM1.shifted.G, wz.Convention.STANDARD)
    assert not wz.check_relation(swapped, 4, -4, 4).passed


@pytest.mark.parametrize("which", ["F", "G"])
def test_mutations_are_detected(which):
    p = FAM1.base
    F = wz.perturb(p.F) if which == "F" else p.F
    G = wz.perturb(p.G) if which == "G" else p.G
    rep = wz.check_relation(wz.WZPair(F, G, p.convention), 6, 0, 6)
    assert not rep.passed
    assert set(rep.failure) >= {"n", "k"}


def test_every_atom_of_an_iterate_matters():
    p = FAM1.explicit[1]
    assert len(p.F.atoms) > 1
    for i in range(len(p.F.atoms)):
        assert not wz.check_relation(wz.WZPair(wz.perturb(p.F, i), p.G), 4, 0, 4).passed


def test_iterates_conform_to_closed_forms():
    cells = wz.grid(4, 0, 4)
    for fam, depth in ((FAM1, 3), (FAM2, 2)):
        for got, want in list(zip(fam.iterates(depth), fam.explicit))[1:]:
            assert wz.check_conformance(got.F, want.F, cells).passed
            assert wz.check_conformance(got.G, want.G, cells).passed


def test_iterate_is_a_wz_pair():
    assert wz.check_relation(wz.guillera_iterate(FAM2.base), 5, 0, 5).passed


def test_conformance_reports_a_difference():
    rep = wz.check_conformance(FAM1.explicit[1].F, FAM1.explicit[2].F, wz.grid(2, 0, 2))
    assert not rep.passed


@pytest.mark.parametrize("m", range(1, 6))
def test_partial_sums(m):
    assert wz.check_partial_sum(wz.A1_PAIR, m).passed


def test_partial_sum_guards():
    with pytest.raises(ValueError):
        wz.check_partial_sum(wz.A1_PAIR, 0)
    with pytest.raises(ValueError):
        wz.check_partial_sum(FAM1.base, 2)
    wrong = parse(str(wz.A1_PARTIAL_SUM_REINDEXED).replace("1 *", "2 *", 1))
    rep = wz.check_partial_sum(wz.A1_PAIR, 3, wrong)
    assert not rep.passed and rep.failure["form"] == "reindexed"


def test_k_independence_and_its_negative():
    F = FAM1.explicit[0].F
    assert wz.check_k_independence(F, ids.get("a1").rhs, [0, 2], 20).passed
    bad = wz.check_k_independence(F, ids.get("a11").rhs, [0], 20)
    assert not bad.passed and bad.failure["k"] == 0
    with pytest.raises(ValueError):
        wz.check_k_independence(F, ids.get("a1").rhs, [-1], 20)


def test_sum_invariance_negative():
    rep = wz.check_sum_invariance([FAM1.explicit[0].F], ids.get("a11").rhs, 20)
    assert not rep.passed


def test_qinv_chain_needs_the_inversion():
    f2 = wz.guillera_iterate(FAM2.base).F
    assert wz.check_qinv_chain(f2, ids.get("q3").summand, 6).passed
    assert not wz.check_qinv_chain(f2, ids.get("q3").summand, 6, at_inverse=False).passed


def test_grid_and_witness_truncation():
    assert len(wz.grid(2, -1, 1)) == 9
    long = wz.CheckReport(False, 1, dict(value=wz._short("x" * 1000)))
    assert len(long.witness()["failure"]["value"]) <= 160


def test_guillera_iterate_matches_definition():
    p = FAM1.base
    it = wz.guillera_iterate(p)
    for n in range(3):
        for k in range(3):
            assert eval_ratfunc(it.F, n, k) == eval_ratfunc(p.F, n, n + k) + eval_ratfunc(p.G, n + 1, n + k)
            assert eval_ratfunc(it.G, n, k) == eval_ratfunc(p.G, n, n + k)
