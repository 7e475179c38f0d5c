import dataclasses
import itertools

import pytest
from conftest import w

from soficmaps.asymptotic import enumerate_A_circ
from soficmaps.core.config import AppConfig
from soficmaps.core.errors import (
    EntropyPreconditionError,
    InternalInvariantError,
    PeriodicPointPreconditionError,
    PreconditionError,
)
from soficmaps.decision import constants, decide_factor, decide_homomorphism, omega_sets
from soficmaps.decision.candidates import (
    enumerate_periodic_maps,
    reduce_phase,
    validate_periodic_map,
)
from soficmaps.decision import factor, homomorphism
from soficmaps.decision.chains import ChainBuilder, PlusTerm, in_remainder_range, remainder_set
from soficmaps.decision.factor import check_flanked_chain_condition, derive_flank_maps
from soficmaps.decision.homomorphism import (
    check_chain_condition,
    invariant_cache,
    reconcile,
    search_caps,
    truncation_warnings,
    with_candidate_bounds,
)
from soficmaps.decision.verdict import (
    FAILS,
    HOLDS,
    NO,
    RESOURCE_EXCEEDED,
    YES,
    CheckResult,
    Verdict,
)
from soficmaps.oracle import induced_pair
from soficmaps.shift import BlockMap
from soficmaps.syntactic import semigroup


@pytest.fixture(scope="module")
def full2_gm(full2, gm):
    return constants(full2, gm, 2)


def test_constants(full2_gm):
    assert full2_gm.T_circ == 1
    assert full2_gm.H == 5
    assert full2_gm.T == 1
    assert full2_gm.h_used == 2
    assert full2_gm.truncated


def test_candidate_bounds(full2_gm):
    bounded = full2_gm.for_candidate(1, 1, 1)
    assert bounded.K_bound == 2
    assert bounded.N_bound == 4
    assert full2_gm.K_bound is None


def test_remainder_set(full2_gm):
    assert remainder_set(0, 0, [], 2, 1, full2_gm) == {0}
    assert remainder_set(0, 1, [], 1, 2, full2_gm) == {1}
    assert remainder_set(0, 0, [PlusTerm(1, 1, 1, 0, 0)], 1, 2, full2_gm) == {0, 1}


def test_remainder_set_ranges(full2_gm):
    with pytest.raises(PreconditionError):
        remainder_set(11, 0, [], 1, 1, full2_gm)
    with pytest.raises(PreconditionError):
        remainder_set(0, 3, [], 1, 1, full2_gm)
    with pytest.raises(PreconditionError):
        remainder_set(0, 2, [], 1, 1, full2_gm)
    with pytest.raises(PreconditionError):
        remainder_set(0, -2, [], 1, 1, full2_gm)
    assert remainder_set(0, -1, [], 1, 1, full2_gm) == {0}
    with pytest.raises(PreconditionError):
        remainder_set(0, 0, [PlusTerm(1, 1, 2, 2, 0)], 1, 1, full2_gm)


@pytest.mark.parametrize(
    "args, expected",
    [
        ((0, 1, 1, 3, 2), 0),
        ((5, 1, 1, 3, 2), 2),
        ((-5, 1, 1, 3, 2), -2),
        ((5, 3, 1, 3, 2), -1),
        ((-4, 3, 1, 3, 2), -1),
    ],
)
def test_reduce_phase(args, expected):
    t = reduce_phase(*args)
    assert t == expected
    assert abs(t) <= args[3]


def test_periodic_maps_full2_to_gm(full2, gm):
    maps = list(enumerate_periodic_maps(full2, gm, 1))
    assert [m.lookup for m in maps] == [{w("0"): w("0"), w("1"): w("0")}]
    assert validate_periodic_map(maps[0], full2, gm, 1) == []


def test_omega_sets(gm, even):
    sg = semigroup(gm)
    minus, plus = omega_sets(gm, 1)
    assert (sg.word_class(w("0")), w("0")) in minus
    assert (sg.word_class(w("1")), w("0")) in minus
    assert (w("0"), sg.word_class(w("1"))) in plus
    sge = semigroup(even)
    minus, _ = omega_sets(even, 1)
    assert (sge.word_class(w("0")), w("1")) in minus
    assert all(g != sge.word_class(w("1")) for g, _ in minus)


@pytest.mark.slow
def test_induced_pair_of_the_identity_passes(gm, config):
    identity = BlockMap.from_mapping(0, {w("0"): "0", w("1"): "1"})
    consts = constants(gm, gm, config.h_cap)
    source = enumerate_A_circ(gm, consts.h_used, config.c_cap)
    phi, psi = induced_pair(identity, gm, gm, consts, source)
    bounded = with_candidate_bounds(consts, gm, phi, psi)
    assert check_chain_condition(gm, gm, phi, psi, bounded, config).status == HOLDS


def test_period_obstruction_answers_no(gm, ne3, config):
    verdict = decide_homomorphism(gm, ne3, config)
    assert verdict.answer == NO
    assert verdict.certificate == "period-1 obstruction"
    assert verdict.exit_code == 0


def test_homomorphism_into_the_full_shift(gm, full2, config):
    verdict = decide_homomorphism(gm, full2, config.with_overrides({"candidate_budget": 256}))
    assert verdict.answer == YES
    assert "phi_circ" in verdict.witness
    assert verdict.witness["cross_check"]["block_map"]["L"] == 0


@pytest.mark.slow
def test_homomorphism_full2_to_gm(full2, gm, config):
    verdict = decide_homomorphism(full2, gm, config.with_overrides({"candidate_budget": 256}))
    assert verdict.answer == YES
    assert verdict.witness["cross_check"]["block_map"]["L"] == 1
    assert verdict.caps_used["n_cap"] == config.n_cap


def test_factor_of_itself(gm, config):
    verdict = decide_factor(gm, gm, config)
    assert verdict.answer == YES
    assert any("equal entropy" in note for note in verdict.truncation_warnings)


@pytest.mark.slow
def test_full2_factors_onto_gm(full2, gm, config):
    verdict = decide_factor(full2, gm, config)
    assert verdict.answer == YES
    assert "flanks" in verdict.witness
    assert verdict.witness["cross_check"]["criterion"] == "surjective"


def test_factor_preconditions(gm, full2, ne3, config):
    with pytest.raises(PeriodicPointPreconditionError):
        decide_factor(gm, ne3, config)
    with pytest.raises(EntropyPreconditionError):
        decide_factor(gm, full2, config)


@pytest.mark.slow
@pytest.mark.parametrize("c_cap", [0, 1, 2])
def test_verdict_is_stable_in_the_middle_word_cap(gm, full2, config, c_cap):
    overrides = {"c_cap": c_cap, "candidate_budget": 256}
    verdict = decide_homomorphism(gm, full2, config.with_overrides(overrides))
    assert verdict.answer == YES
    assert verdict.caps_used["c_cap"] == c_cap


@pytest.mark.parametrize("target", [(2, 3), (3, 2), (1, 4)])
def test_remainder_set_matches_direct_counts(full2_gm, target):
    length, R = target
    terms = [PlusTerm(2, 1, 2, 1, 1), PlusTerm(1, 2, 3, 0, 0)]
    l, s, overlap = 3, 1, 1
    span = length * R
    base = s + l - overlap + 2 * (full2_gm.H + full2_gm.T) * span
    base += sum(t.length * (t.Q * t.R + t.R_k) + t.overlap for t in terms)
    direct = set()
    for free in itertools.product(range(2 * span), repeat=len(terms)):
        total = base + sum(t.length * t.R * j for t, j in zip(terms, free))
        direct.add((total // length) % R)
    assert remainder_set(l, s, terms, length, R, full2_gm, overlap) == direct


def test_remainder_range_is_strict_in_s(full2_gm):
    T, H = full2_gm.T, full2_gm.H
    assert in_remainder_range(2 * H, 2 * T - 1, full2_gm)
    assert not in_remainder_range(0, 2 * T, full2_gm)
    assert not in_remainder_range(0, -2 * T, full2_gm)
    assert not in_remainder_range(2 * H + 1, 0, full2_gm)


@pytest.fixture
def inclusion_pair(gm, full2, config):
    inclusion = BlockMap.from_mapping(0, {w("0"): "0", w("1"): "1"})
    consts = constants(gm, full2, config.h_cap)
    source = enumerate_A_circ(gm, consts.h_used, config.c_cap)
    phi, psi = induced_pair(inclusion, gm, full2, consts, source)
    return phi, psi, with_candidate_bounds(consts, full2, phi, psi)


def test_induced_pair_of_the_inclusion_holds(gm, full2, config, inclusion_pair):
    phi, psi, bounded = inclusion_pair
    check = check_chain_condition(gm, full2, phi, psi, bounded, config)
    assert check.status == HOLDS
    assert check.tuples_checked > 0


@pytest.mark.slow
def test_induced_pair_of_the_ten_detector_holds(full2, gm, config, ten_detector):
    consts = constants(full2, gm, config.h_cap)
    source = enumerate_A_circ(full2, consts.h_used, config.c_cap)
    phi, psi = induced_pair(ten_detector, full2, gm, consts, source)
    bounded = with_candidate_bounds(consts, gm, phi, psi)
    assert check_chain_condition(full2, gm, phi, psi, bounded, config).status == HOLDS


@pytest.mark.slow
def test_flanked_condition_of_the_ten_detector_holds(full2, gm, config, ten_detector):
    consts = constants(full2, gm, config.h_cap)
    source = enumerate_A_circ(full2, consts.h_used, config.c_cap)
    phi, psi = induced_pair(ten_detector, full2, gm, consts, source)
    bounded = with_candidate_bounds(consts, gm, phi, psi)
    minus, plus = omega_sets(full2, consts.h_used)
    flanks, _ = derive_flank_maps(ten_detector, gm, minus, plus)
    check = check_flanked_chain_condition(full2, gm, phi, psi, flanks, bounded, config)
    assert check.status == HOLDS


@pytest.mark.slow
@pytest.mark.parametrize("pair", [("gm", "full2"), ("full2", "gm")])
def test_candidate_search_finds_a_passing_pair(request, config, pair):
    x, xbar = (request.getfixturevalue(name) for name in pair)
    config = config.with_overrides({"candidate_budget": 256})
    consts = constants(x, xbar, config.h_cap)
    source = enumerate_A_circ(x, consts.h_used, config.c_cap)
    verdict = homomorphism._search_candidates(x, xbar, consts, source, config)
    assert verdict.answer == YES
    assert verdict.witness["check"]["status"] == HOLDS


def test_failing_search_is_not_overruled_by_the_oracle(gm, full2, config, monkeypatch):
    def fails(*args, **kwargs):
        return CheckResult(FAILS, 1, witness={"reason": "forced"})

    monkeypatch.setattr(homomorphism, "check_chain_condition", fails)
    verdict = decide_homomorphism(gm, full2, config)
    assert verdict.answer == RESOURCE_EXCEEDED
    assert verdict.exit_code == 2
    assert verdict.witness["cross_check"]["block_map"]["L"] == 0
    assert any(n.startswith("consistency:") for n in verdict.truncation_warnings)


def test_an_exact_no_contradicted_by_a_block_map_is_an_internal_error():
    with pytest.raises(InternalInvariantError):
        reconcile(Verdict(NO), {"found": True, "window": 0}, None)


def test_a_failing_induced_pair_makes_a_yes_inexact():
    verdict = reconcile(Verdict(YES), {"found": True, "window": 1}, False)
    assert verdict.answer == YES
    assert not verdict.exact
    assert verdict.exit_code == 2


def test_answers_without_a_cross_check_map_are_kept():
    verdict = reconcile(Verdict(NO, exact=False), {"found": False, "max_window": 1}, None)
    assert verdict.answer == NO
    assert verdict.witness["cross_check"]["found"] is False


def test_factor_answer_comes_from_the_candidate_search(full2, gm, config, monkeypatch):
    def fails(*args, **kwargs):
        return CheckResult(FAILS, 1, witness={"reason": "forced"})

    monkeypatch.setattr(factor, "check_flanked_chain_condition", fails)
    config = config.with_overrides({"h_cap": 1, "candidate_budget": 5000})
    verdict = decide_factor(full2, gm, config.with_overrides({"oracle_cross_check": False}))
    assert verdict.answer == NO
    assert "cross_check" not in (verdict.witness or {})
    assert verdict.exit_code == 2
    checked = decide_factor(full2, gm, config)
    assert checked.answer == RESOURCE_EXCEEDED
    assert checked.witness["cross_check"]["criterion"] == "surjective"


def test_search_caps_are_clipped_to_the_bounds(full2_gm):
    bounded = full2_gm.for_candidate(1, 1, 1)
    cfg = AppConfig(k_cap=5, n_cap=9, c_cap=10_000, psi_require_fixed_point=True)
    caps = search_caps(cfg, bounded)
    assert (caps.k, caps.n, caps.c) == (2, 4, full2_gm.C_bound)
    assert search_caps(cfg, bounded, n_extra=1).n == 5
    loose = search_caps(cfg.with_overrides({"psi_require_fixed_point": False}), bounded)
    assert loose.c == 10_000


def test_covering_caps_leave_no_truncation_warning(full2_gm):
    complete = dataclasses.replace(full2_gm.for_candidate(1, 1, 1), h_used=full2_gm.H)
    cfg = AppConfig(k_cap=5, n_cap=9, c_cap=10_000, psi_require_fixed_point=True)
    assert truncation_warnings(cfg, complete, search_caps(cfg, complete)) == []
    short = cfg.with_overrides({"n_cap": 3})
    notes = truncation_warnings(short, complete, search_caps(short, complete))
    assert notes == ["n_cap 3 below N = 4"]
    unfixed = cfg.with_overrides({"psi_require_fixed_point": False})
    assert truncation_warnings(unfixed, complete, search_caps(unfixed, complete))


def test_default_caps_give_an_inexact_answer(gm, full2, config):
    verdict = decide_homomorphism(gm, full2, config.with_overrides({"candidate_budget": 256}))
    assert verdict.truncation_warnings
    assert not verdict.exact
    assert verdict.exit_code == 2
    assert verdict.caps_used["n_searched"] <= config.n_cap


def test_chain_bound_limits_the_search(gm, full2, config, inclusion_pair):
    phi, psi, bounded = inclusion_pair
    clipped = check_chain_condition(
        gm, full2, phi, psi, dataclasses.replace(bounded, N_bound=1), config
    )
    one = check_chain_condition(
        gm, full2, phi, psi, dataclasses.replace(bounded, N_bound=5),
        config.with_overrides({"n_cap": 1}),
    )
    assert clipped.status == one.status
    assert clipped.tuples_checked == one.tuples_checked


def test_chains_grow_monotonically_with_the_caps(gm, inclusion_pair):
    _, psi, _ = inclusion_pair
    inv = invariant_cache(gm)
    builder = ChainBuilder(psi.domain, psi.excluded, inv, 1)
    short, longer = list(builder.chains(1)), list(builder.chains(2))
    assert longer[: len(short)] == short
    narrow = set(ChainBuilder(psi.domain, psi.excluded, inv, 0).chains(2))
    assert narrow <= set(longer)
