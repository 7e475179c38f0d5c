import pytest
from conftest import gm_scan, w
from hypothesis import given, settings
from hypothesis import strategies as st

from soficmaps.core.errors import InadmissibleWordError, PreconditionError
from soficmaps.pumping import (
    PumpIndices,
    escape_bound_holds,
    h_circ,
    in_Bk,
    in_Bk_delta,
    psi_k,
    psi_k_delta,
    psi_trace,
    pump_indices,
)
from soficmaps.shift import admissible_blocks
from soficmaps.syntactic import semigroup

gm_words = st.text(alphabet="01", min_size=7, max_size=16).filter(gm_scan)


def test_long_word_threshold(gm, full2):
    assert in_Bk(gm, w("0000000"), 1)
    assert not in_Bk(gm, w("000000"), 1)
    assert in_Bk(full2, w("0000"), 1)
    assert not in_Bk(gm, w("0000000"), 2)


def test_inadmissible_words_are_rejected(gm):
    with pytest.raises(InadmissibleWordError):
        in_Bk(gm, w("0110000"), 1)


def test_pump_indices(gm, full2):
    assert pump_indices(gm, w("0101010"), 1) == PumpIndices(2, 4, 2)
    assert pump_indices(full2, w("00000"), 1) == PumpIndices(2, 3, 3)
    assert pump_indices(gm, w("01000010"), 1) == PumpIndices(3, 4, 3)
    with pytest.raises(PreconditionError):
        pump_indices(gm, w("010"), 1)


def test_psi_without_window_is_refused(full2):
    delta = semigroup(full2).shannon.cyclic[0]
    assert in_Bk_delta(full2, w("00000"), 1, delta) is None
    with pytest.raises(PreconditionError):
        psi_k_delta(full2, w("00000"), 1, delta)


@settings(max_examples=60, deadline=None)
@given(gm_words)
def test_psi_preserves_length_and_class(gm, text):
    sg = semigroup(gm)
    image = psi_k(gm, w(text), 1)
    assert len(image) == len(text)
    assert sg.word_class(image) == sg.word_class(w(text))


@settings(max_examples=60, deadline=None)
@given(gm_words)
def test_psi_leaves_no_window(gm, text):
    image, steps = psi_trace(gm, w(text), 1)
    for d in semigroup(gm).shannon.cyclic:
        assert in_Bk_delta(gm, image, 1, d) is None
    if not steps:
        assert image == w(text)


def test_escape_bound(full2):
    assert escape_bound_holds(full2, w("00000"), 1)


def test_psi_is_idempotent(gm):
    once = psi_k(gm, w("0" * 14 + "10"), 1)
    assert psi_k(gm, once, 1) == once


def test_h_circ(full2, gm):
    assert h_circ(full2, 1) == 1
    assert h_circ(gm, 1) <= h_circ(gm, 2)
    assert h_circ(full2, 3) == 3


def test_pump_repeat_stays_within_the_class_count(gm, even):
    for shift in (gm, even):
        V = semigroup(shift).V
        for b in admissible_blocks(shift, V + 5):
            pump = pump_indices(shift, b, 1)
            assert 1 < pump.I < pump.I_prime <= V + 2
            assert pump.pumped_length(1) <= len(b)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["gm", "even"])
def test_psi_on_every_long_word(request, name):
    shift = request.getfixturevalue(name)
    sg = semigroup(shift)
    for n in range(sg.V + 3, 15):
        for b in admissible_blocks(shift, n):
            image = psi_k(shift, b, 1)
            assert len(image) == n
            assert sg.word_class(image) == sg.word_class(b)
            for d in sg.shannon.cyclic:
                assert in_Bk_delta(shift, image, 1, d) is None
            assert escape_bound_holds(shift, image, 1)
            assert psi_k(shift, image, 1) == image
