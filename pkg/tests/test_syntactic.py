import itertools

import numpy as np
import pytest
from conftest import gm_scan, w
from hypothesis import given, settings
from hypothesis import strategies as st

from soficmaps.core.errors import (
    InadmissibleWordError,
    NotInLambdaError,
    NotSynchronizingError,
    UnknownSymbolError,
)
from soficmaps.shift import admissible_blocks
from soficmaps.syntactic import (
    context_class,
    cycle_word,
    derived_shift,
    gamma_expression_admissible,
    is_synchronizing,
    semigroup,
    synchronizing_classes,
)


def _contexts_agree(u: str, v: str, n: int = 5) -> bool:
    for i, j in itertools.product(range(n + 1), repeat=2):
        for left in itertools.product("01", repeat=i):
            for right in itertools.product("01", repeat=j):
                a = "".join(left) + u + "".join(right)
                b = "".join(left) + v + "".join(right)
                if gm_scan(a) != gm_scan(b):
                    return False
    return True


def test_gm_context_classes(gm):
    assert context_class(gm, w("0")) == context_class(gm, w("010"))
    assert context_class(gm, w("0")) != context_class(gm, w("10"))
    assert context_class(gm, w("11")).is_zero


def test_semigroup_sizes(gm, full2, even):
    assert semigroup(full2).V == 1
    assert semigroup(gm).V == 4
    sg = semigroup(even)
    assert sg.V == len(sg.admissible_ids)


short_words = st.text(alphabet="01", min_size=1, max_size=5)


@settings(max_examples=60, deadline=None)
@given(short_words, short_words)
def test_gm_classes_agree_with_brute_force_contexts(gm, u, v):
    same = context_class(gm, tuple(u)) == context_class(gm, tuple(v))
    assert same == _contexts_agree(u, v)


def test_gm_shannon_graph(gm):
    sg = semigroup(gm)
    data = sg.shannon
    zero_class = sg.word_class(w("0"))
    one_class = sg.word_class(w("1"))
    assert data.r(zero_class) == 1 and data.q(zero_class) == 0
    assert data.r(one_class) == 2 and data.q(one_class) == 1
    assert data.lambdas[one_class].first(4) == [2, 3, 4, 5]
    assert not data.lambdas[one_class].contains(1)
    assert data.V_circ == 4


def test_full2_single_cyclic_class(full2):
    data = semigroup(full2).shannon
    (d,) = data.cyclic
    assert (data.r(d), data.q(d)) == (1, 0)


def test_synchronizing_words(gm, even):
    assert is_synchronizing(gm, w("0"))
    assert is_synchronizing(even, w("0"))
    assert not is_synchronizing(even, w("1"))
    with pytest.raises(InadmissibleWordError):
        is_synchronizing(gm, w("11"))


def test_synchronizing_classes(gm, even, full2):
    assert len(synchronizing_classes(gm)) == 4
    assert len(synchronizing_classes(full2)) == 1
    for c in synchronizing_classes(even):
        assert "0" in c.representative


def test_gamma_expressions(gm, even):
    sg = semigroup(gm)
    zero, one = sg.word_class(w("0")), sg.word_class(w("1"))
    assert gamma_expression_admissible(gm, zero, w("1"), zero)
    assert not gamma_expression_admissible(gm, one, w("1"), zero)
    e0 = semigroup(even).word_class(w("0"))
    assert gamma_expression_admissible(even, e0, w("11"), e0)


def test_derived_shifts(gm, even, full2):
    assert derived_shift(gm).is_empty
    assert derived_shift(full2).is_empty
    d = derived_shift(even).shift
    assert not d.is_empty
    assert d.is_finite
    assert d.language_automaton.accepts(w("1111"))
    assert not d.language_automaton.accepts(w("0"))


def test_cycle_words(gm, full2):
    sg = semigroup(gm)
    one = sg.word_class(w("1"))
    assert cycle_word(gm, one, 2) == w("01")
    with pytest.raises(NotInLambdaError):
        cycle_word(gm, one, 1)
    (d,) = semigroup(full2).shannon.cyclic
    assert cycle_word(full2, d, 3) == w("000")


def test_gamma_expressions_check_their_inputs(gm, even):
    sg = semigroup(gm)
    zero = sg.word_class(w("0"))
    with pytest.raises(UnknownSymbolError):
        gamma_expression_admissible(gm, zero, w("2"), zero)
    with pytest.raises(NotSynchronizingError):
        gamma_expression_admissible(gm, sg.zero, w("0"), zero)
    sge = semigroup(even)
    one = sge.word_class(w("1"))
    with pytest.raises(NotSynchronizingError) as err:
        gamma_expression_admissible(even, one, w("0"), sge.word_class(w("0")))
    assert err.value.kind == "non-synchronizing class"


@pytest.mark.parametrize("name", ["gm", "even", "full2", "ne3"])
def test_semigroup_product_is_associative(request, name):
    m = semigroup(request.getfixturevalue(name)).mult
    n = m.shape[0]
    left = m[m]
    right = m[np.arange(n)[:, None, None], m[None, :, :]]
    assert np.array_equal(left, right)


@pytest.mark.parametrize("name", ["gm", "even", "full2", "ne3"])
def test_return_lengths_match_closed_walks(request, name):
    shift = request.getfixturevalue(name)
    sg = semigroup(shift)
    blocks = {n: [sg.word_class(u) for u in admissible_blocks(shift, n)] for n in range(1, 11)}
    for d in sg.admissible_ids:
        walks = {n for n, classes in blocks.items() if any(sg.mul(d, u) == d for u in classes)}
        lam = sg.shannon.lambdas.get(d)
        if lam is None:
            assert not walks
        else:
            assert {n for n in range(1, 11) if lam.contains(n)} == walks
