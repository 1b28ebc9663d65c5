from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dmlattice import poincare as pc
from dmlattice.cxgeom import proj_equal
from dmlattice.moves import evaluate_word
from dmlattice.params import CollapseCase

from conftest import ROWS, gens_for, params_for

F = Fraction
FULL_D = [pk for pk in ROWS if params_for(*pk).collapse_case is CollapseCase.FULL_D]


def test_word_round_trip():
    w = pc.parse_word("R1^-1*P^-1*R2*P")
    assert w == (("R1", -1), ("P", -1), ("R2", 1), ("P", 1))
    assert pc.word_text(w) == "R1^-1*P^-1*R2*P"


@given(st.lists(st.tuples(st.sampled_from(["J", "P", "R1", "R2", "K"]), st.sampled_from([1, -1])), min_size=1, max_size=8))
def test_word_text_parses_back(word):
    word = tuple(word)
    assert pc.parse_word(pc.word_text(word)) == word


def test_side_pairing_of_r1():
    rep = {s.name: s for s in pc.side_pairing_report(params_for(8, 3), gens_for(8, 3))}
    r1 = rep["R1"]
    assert set(r1.bijection) == {f"z{i}" for i in (1, 3, 4, 6, 7, 9, 10, 11)}
    assert set(r1.bijection.values()) == {f"z{i}" for i in (1, 3, 5, 6, 8, 12, 13, 14)}
    assert r1.bijection["z4"] == "z5"
    assert all(s.ok for s in rep.values())


def test_side_pairings(row):
    for s in pc.side_pairing_report(params_for(*row), gens_for(*row)):
        assert s.ok, s.name


def test_cycles(row):
    cycles = pc.cycle_table(params_for(*row), gens_for(*row))
    assert [c.row for c in cycles] == list(range(1, 10))
    for c in cycles:
        assert c.ok(), (c.row, c.steps)
        if c.status != "absent":
            assert c.word_matches and c.ridges_match


def test_cycle_relations():
    c = pc.cycle_table(params_for(7, 3), gens_for(7, 3))
    assert c[0].m == 3 and c[0].relation_residual < 1e-9
    assert c[8].m == 14 and c[8].relation_residual < 1e-9
    g = gens_for(8, 3)
    assert proj_equal((g.p**24).matrix, np.eye(3))


@pytest.mark.parametrize("word", ["R1^-1*P^-1*R2*P", "R1^-1*J^-1*R2*J", "R2*P^-1*R1"])
def test_trivial_cycles_are_identities(word, row):
    T = evaluate_word(pc.parse_word(word), gens_for(*row))
    assert proj_equal(T.matrix, np.eye(3))


def test_collapsed_ridge_is_absent():
    c = pc.cycle_table(params_for(3, 6), gens_for(3, 6))
    assert c[6].status == "absent"


@pytest.mark.parametrize("pk, value", [((10, 5), F(1, 10)), ((6, 6), F(1, 12)), ((7, 3), F(61, 882)), ((3, 6), F(-1, 9))])
def test_euler_values(pk, value):
    e = pc.euler_characteristic(params_for(*pk))
    assert e.orbit_sum == value and e.closed_form == value


def test_euler_18_3():
    p, t = F(18), F(2, 9)
    want = (p * p + 12 * p - 60) / (16 * p * p) - t * t / 4
    e = pc.euler_characteristic(params_for(18, 3))
    assert want == F(13, 162)
    assert e.orbit_sum == want == e.symmetric_form


def test_euler_agrees(row):
    q = params_for(*row)
    e = pc.euler_characteristic(q)
    assert e.agree
    if q.symmetric:
        p = q.p.as_fraction()
        assert e.orbit_sum == 2 * (p - 5) / (p * p)


def test_presentation_7_3():
    pres = pc.presentation(params_for(7, 3))
    assert pres.kind == "generic"
    assert [r.power for r in pres.active_relators[:6]] == [3, 42, 7, 7, 3, 42]


def test_presentation_3_6_omits_l():
    texts = [r.text for r in pc.presentation(params_for(3, 6)).active_relators]
    assert not any("R2*R1*J" in t for t in texts)
    assert "(P^-1*J)^6" in texts


def test_presentation_10_5_coset():
    pres = pc.presentation(params_for(10, 5))
    assert pres.kind == "coset"
    texts = [r.text for r in pres.active_relators]
    assert "(K^-1*R1)^15" in texts and "K^4" in texts
    assert pres.abbreviations[0][0] == "S1"
    assert "FreeGroup" in pres.gap_text()


def test_presentation_verifies(row):
    q = params_for(*row)
    g = gens_for(*row)
    for kind in ([None, False] if q.symmetric else [None]):
        for text, res, ok in pc.verify_presentation(pc.presentation(q, kind), g):
            assert ok, (text, res)


def test_coset_needs_symmetry():
    with pytest.raises(ValueError):
        pc.presentation(params_for(7, 3), coset=True)


def test_literal_coset_word_is_not_identity(symmetric_row):
    assert pc.literal_coset_relator_residual(gens_for(*symmetric_row)) > 1e-3


def test_relator_json():
    r = pc.presentation(params_for(7, 3)).relators[6]
    assert r.to_json()["text"] == "R2 = P*R1*P^-1"
    assert r.gap == "R2*(P*R1*P^-1)^-1"


def test_orbit_orders():
    q = params_for(7, 3)
    table = pc.orbit_table(q)
    first = table[0]
    assert first.members == ("z1", "z2") and first.order == q.k * q.p
    jr1 = next(e for e in table if e.stabiliser == "<J*R1>")
    assert set(jr1.members) == {"g7,11", "g9,12", "g8,14"}
    assert jr1.order == 2 * q.k
    assert all(e.order == 1 for e in table if e.dimension == 3)


@pytest.mark.parametrize("pk", FULL_D, ids=str)
def test_computed_orbits(pk):
    q = params_for(*pk)
    got = pc.computed_orbits(q, gens_for(*pk))
    for d in (0, 1, 2):
        want = {frozenset(e.members) for e in pc.orbit_table(q) if e.dimension == d}
        assert got[d] == want


def test_stabilisers(row):
    for s in pc.stabiliser_checks(params_for(*row), gens_for(*row)):
        assert s.status != "fail", s


def test_half_integer_stabilisers_are_informational():
    checks = {s.word: s for s in pc.stabiliser_checks(params_for(7, F(7, 2)), gens_for(7, F(7, 2)))}
    assert checks["J*R1"].status == "informational"
    assert checks["J*R1"].order == 14
