import pytest
from conftest import w

from soficmaps.core.errors import NotConjugateError
from soficmaps.periodic import (
    conjugate,
    enumerate_primitive_words,
    has_point_of_period,
    is_periodic_word,
    least_periods,
    max_period_R,
    orbits,
    overlap_u,
    period_invariants,
    period_obstruction,
    periodic_point_condition,
    periodic_point_report,
)
from soficmaps.syntactic import semigroup


def _words(shift, k):
    return {p.a for p in enumerate_primitive_words(shift, k)}


def test_primitive_words(gm, full2, ne3):
    assert _words(gm, 3) == {w("0"), w("01"), w("10"), w("001"), w("010"), w("100")}
    assert _words(full2, 2) == {w("0"), w("1"), w("01"), w("10")}
    assert _words(ne3, 1) == set()


def test_primitive_words_are_length_lex_ordered(gm):
    words = [p.a for p in enumerate_primitive_words(gm, 3)]
    assert words == sorted(words, key=lambda a: (len(a), a))


def test_overlap_word():
    assert conjugate(w("01"), w("10"))
    assert overlap_u(w("01"), w("10")) == w("0")
    assert overlap_u(w("001"), w("010")) == w("0")
    assert overlap_u(w("01"), w("01")) == w("01")
    with pytest.raises(NotConjugateError):
        overlap_u(w("01"), w("00"))


def test_overlap_word_keeps_the_periodic_point():
    a, b = w("001"), w("100")
    u = overlap_u(a, b)
    assert "".join(a * 3 + u + b * 3) in "".join(a * 12)


def test_gm_period_invariants(gm):
    assert period_invariants(gm, w("0")) == period_invariants(gm, w("01"))
    inv = period_invariants(gm, w("0"))
    assert (inv.R, inv.Q) == (1, 1)


def test_periodic_words(gm, even):
    assert is_periodic_word(gm, w("01"))
    assert not is_periodic_word(gm, w("1"))
    assert is_periodic_word(even, w("1"))
    assert not is_periodic_word(even, w("01"))


def test_orbits_group_rotations(gm):
    grouped = orbits(enumerate_primitive_words(gm, 3))
    assert sorted(grouped) == [w("0"), w("001"), w("01")]
    assert {p.a for p in grouped[w("001")]} == {w("001"), w("010"), w("100")}


def test_periodic_point_condition(full2, gm, ne3):
    assert periodic_point_condition(full2, gm)
    assert not periodic_point_condition(gm, ne3)
    assert period_obstruction(gm, ne3) == 1
    assert periodic_point_condition(ne3, ne3)


def test_points_of_each_period(ne3, even):
    assert not has_point_of_period(ne3, 1)
    assert has_point_of_period(ne3, 2)
    assert has_point_of_period(ne3, 3)
    assert least_periods(even, 4) == [1, 3, 4]


def test_report_lists_orbits_with_invariants(gm):
    report = periodic_point_report(gm, 2)
    assert [row["representative"] for row in report] == ["0", "01"]
    assert report[1]["orbit"] == ["01", "10"]
    assert all(row["R"] >= 1 and row["Q"] >= 1 for row in report)


def test_max_period_R(gm, ne3):
    assert max_period_R(gm, 4) == 1
    assert max_period_R(ne3, 1) is None


def _power_classes(shift, a, n):
    sg = semigroup(shift)
    return [None] + [sg.word_class(a * m) for m in range(1, n + 1)]


@pytest.mark.parametrize("name", ["gm", "even", "full2", "ne3"])
def test_period_invariants_match_power_sequences(request, name):
    shift = request.getfixturevalue(name)
    for p in enumerate_primitive_words(shift, 4):
        powers = _power_classes(shift, p.a, 48)
        R = next(r for r in range(1, 13) if all(powers[m + r] == powers[m] for m in range(24, 36)))
        Q = next(q for q in range(1, 24) if powers[q * R] == powers[(q + 1) * R])
        inv = period_invariants(shift, p.a)
        assert (inv.R, inv.Q) == (R, Q), p.a
