"""
Existence of homomorphisms with infinite image.

A candidate pair (φ∘, Ψ) passes when every chain of source triples that is
admissible with arbitrarily long flanking periods has admissible images for
every residue its period counts allow. Chains are enumerated up to the
configured caps clipped to the bounds K and N, and the answer records which
caps were searched and whether they reached the bounds.
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass
from typing import Optional

from .. import oracle
from ..asymptotic import AsymptoticTriple, enumerate_A_circ
from ..core.config import AppConfig
from ..core.errors import InternalInvariantError, NotConjugateError, PreconditionError
from ..core.words import Word
from ..periodic import PeriodInvariants, overlap_u, period_invariants, period_obstruction
from ..scheduler import WorkerPool
from ..shift import SoficShift
from ..syntactic import SyntacticSemigroup, semigroup
from .candidates import (
    AccompanyingMap,
    PeriodicMapCandidate,
    enumerate_accompanying,
    enumerate_periodic_maps,
    image_period_R,
    validate_accompanying,
)
from .chains import Block, ChainBuilder, ChainTuple, Invariants, block_word, plus_terms
from .chains import in_remainder_range, remainder_set
from .constants import DecisionConstants, constants
from .verdict import FAILS, HOLDS, NO, RESOURCE_EXCEEDED, YES, CheckResult, Verdict

logger = logging.getLogger(__name__)


def invariant_cache(shift: SoficShift) -> Invariants:
    memo: dict[Word, PeriodInvariants] = {}

    def lookup(a: Word) -> PeriodInvariants:
        if a not in memo:
            memo[a] = period_invariants(shift, a)
        return memo[a]

    return lookup


def stable_class(sg: SyntacticSemigroup, a: Word, invariants: Invariants) -> int:
    inv = invariants(a)
    return sg.power(sg.word_class(a), inv.Q * inv.R)


def _classes(sg: SyntacticSemigroup, *words: Word) -> list[int]:
    return [sg.word_class(w) for w in words if w]


def chain_middle(chain: ChainTuple, invariants: Invariants) -> Word:
    """c^(0)(0) followed by every block word up to the closing segment."""
    blocks = chain.blocks
    word = blocks[0][0].c
    for n in range(chain.N):
        nxt = blocks[n + 1][0]
        word += block_word(blocks[n], nxt.a_minus, nxt.c, invariants)
    return word


def source_admissible(sg: SyntacticSemigroup, chain: ChainTuple, invariants: Invariants) -> bool:
    left = stable_class(sg, chain.blocks[0][0].a_minus, invariants)
    right = stable_class(sg, chain.blocks[-1][0].a_plus, invariants)
    return sg.mul(left, *_classes(sg, chain_middle(chain, invariants)), right) != sg.zero


def _block_c_length(blocks: tuple[Block, ...], n: int) -> int:
    """Σ_k ℓ(c^(k+1)(n)), the last one being c^(0)(n+1)."""
    block = blocks[n]
    return sum(len(seg.c) for seg in block[1:]) + len(blocks[n + 1][0].c)


def target_options(
    sgb: SyntacticSemigroup,
    blocks: tuple[Block, ...],
    images: list[tuple[AsymptoticTriple, int]],
    consts: DecisionConstants,
    inv_x: Invariants,
    inv_xbar: Invariants,
) -> list[list[tuple[int, int]]] | dict | None:
    """Per block n < N, the (residue, class) choices of its target word.

    Returns a failure record when a target overlap is undefined, and None when
    some block lies outside the range |l| <= 2H, |s| < 2T on which remainder
    sets are defined; such a tuple imposes no constraint.
    """
    per_block = []
    for n in range(len(blocks) - 1):
        (dst, t_n), (nxt, t_next) = images[n], images[n + 1]
        try:
            u_bar = overlap_u(dst.a_plus, nxt.a_minus)
        except NotConjugateError:
            return {"n": n, "reason": "undefined target overlap"}
        terms = plus_terms(blocks[n], blocks[n + 1][0].a_minus, inv_x)
        l = _block_c_length(blocks, n) - len(nxt.c)
        if not in_remainder_range(l, t_next - t_n, consts):
            return None
        inv = inv_xbar(dst.a_plus)
        try:
            residues = remainder_set(
                l, t_next - t_n, terms, len(dst.a_plus), inv.R, consts, len(u_bar)
            )
        except PreconditionError as e:
            return {"n": n, "reason": f"remainder set undefined: {e}"}
        options = []
        for r in sorted(residues):
            word = dst.a_plus * (inv.Q * inv.R + r) + u_bar + nxt.c
            options.append((r, sgb.word_class(word)))
        per_block.append(options)
    return per_block


def first_inadmissible(
    sgb: SyntacticSemigroup,
    per_block: list[list[tuple[int, int]]],
    left: Optional[int] = None,
    right: Optional[int] = None,
) -> Optional[list[int]]:
    """Residue vector of the first target combination that is inadmissible."""
    for combo in itertools.product(*per_block):
        ids = [c for _, c in combo]
        if left is not None:
            ids.insert(0, left)
        if right is not None:
            ids.append(right)
        if not ids:
            continue
        if sgb.mul(*ids) == sgb.zero:
            return [r for r, _ in combo]
    return None


def budget_exhausted(config: AppConfig, deadline: Optional[float], checked: int) -> Optional[str]:
    if checked >= config.tuple_budget:
        return f"tuple budget {config.tuple_budget} exhausted"
    if deadline is not None and time.monotonic() > deadline:
        return f"time budget of {config.budget_ms} ms exhausted"
    return None


@dataclass(frozen=True)
class SearchCaps:
    """Excluded segments per block, blocks per chain and middle word length
    actually searched: each config cap clipped to its bound."""

    k: int
    n: int
    c: int


def search_caps(config: AppConfig, consts: DecisionConstants, n_extra: int = 0) -> SearchCaps:
    k, n, c = config.k_cap, config.n_cap, config.c_cap
    if consts.K_bound is not None:
        k = min(k, consts.K_bound)
    if consts.N_bound is not None:
        n = min(n, consts.N_bound + n_extra)
    if config.psi_require_fixed_point and consts.C_bound is not None:
        c = min(c, consts.C_bound)
    return SearchCaps(k, n, c)


def outside_range_note(count: int) -> list[str]:
    return [f"{count} tuples outside the remainder range"] if count else []


def check_chain_condition(
    x: SoficShift,
    xbar: SoficShift,
    phi: PeriodicMapCandidate,
    psi: AccompanyingMap,
    consts: DecisionConstants,
    config: AppConfig,
) -> CheckResult:
    sg, sgb = semigroup(x), semigroup(xbar)
    inv_x, inv_xbar = invariant_cache(x), invariant_cache(xbar)
    caps = search_caps(config, consts)
    builder = ChainBuilder(psi.domain, psi.excluded, inv_x, caps.k)
    checked = 0
    outside = 0
    deadline = config.deadline()
    for chain in builder.chains(caps.n):
        stop = budget_exhausted(config, deadline, checked)
        if stop:
            return CheckResult(RESOURCE_EXCEEDED, checked, warnings=[stop])
        checked += 1
        if not source_admissible(sg, chain, inv_x):
            continue
        images = [psi(block[0].triple) for block in chain.blocks]
        per_block = target_options(sgb, chain.blocks, images, consts, inv_x, inv_xbar)
        if per_block is None:
            outside += 1
            continue
        if isinstance(per_block, dict):
            return CheckResult(FAILS, checked, witness={"tuple": chain.to_json_dict(), **per_block})
        bad = first_inadmissible(sgb, per_block)
        if bad is not None:
            witness = {
                "tuple": chain.to_json_dict(),
                "residues": bad,
                "reason": "target word inadmissible",
            }
            return CheckResult(FAILS, checked, witness=witness)
    logger.info(f"chain condition holds on {checked} tuples")
    return CheckResult(HOLDS, checked, warnings=outside_range_note(outside))


def caps_used(config: AppConfig, consts: DecisionConstants, caps: SearchCaps) -> dict:
    return {
        "h": consts.h_used,
        "k_cap": config.k_cap,
        "n_cap": config.n_cap,
        "c_cap": config.c_cap,
        "k_searched": caps.k,
        "n_searched": caps.n,
        "c_searched": caps.c,
        "tuple_budget": config.tuple_budget,
        "candidate_budget": config.candidate_budget,
        "budget_ms": config.budget_ms,
    }


def truncation_warnings(
    config: AppConfig, consts: DecisionConstants, caps: SearchCaps, n_extra: int = 0
) -> list[str]:
    """Every way the searched caps fall short of the bounds; empty means exact.

    K and N are only checked once a candidate has attached them.
    """
    out = []
    if consts.truncated:
        out.append(f"period words limited to length {consts.h_used} < H = {consts.H}")
    if not config.psi_require_fixed_point:
        out.append(
            f"middle words limited to length {caps.c}; escaping middle words have "
            "no length bound unless ψ must fix them"
        )
    elif consts.C_bound is not None and caps.c < consts.C_bound:
        out.append(f"middle words limited to length {caps.c} < C = {consts.C_bound}")
    if consts.K_bound is not None and caps.k < consts.K_bound:
        out.append(f"k_cap {caps.k} below K = {consts.K_bound}")
    if consts.N_bound is not None and caps.n < consts.N_bound + n_extra:
        out.append(f"n_cap {caps.n} below N = {consts.N_bound + n_extra}")
    return out


def with_candidate_bounds(
    consts: DecisionConstants,
    xbar: SoficShift,
    phi: PeriodicMapCandidate,
    psi: AccompanyingMap,
) -> DecisionConstants:
    return consts.for_candidate(image_period_R(xbar, phi), len(psi.excluded), len(psi.domain))


def pair_witness(phi: PeriodicMapCandidate, psi: AccompanyingMap, check: CheckResult) -> dict:
    return {
        "phi_circ": phi.to_json_dict(),
        "psi": psi.to_json_dict(),
        "check": check.to_json_dict(),
    }


def reconcile(verdict: Verdict, cross: dict, passes: Optional[bool]) -> Verdict:
    """Fold a block map found by the oracle into a search verdict.

    ``passes`` is whether the data the map induces satisfies the search's
    condition (None when that was not evaluated). A map contradicting an exact
    NO is an internal error; against an inexact NO the verdict becomes
    RESOURCE_EXCEEDED.
    """
    verdict.witness = {**(verdict.witness or {}), "cross_check": cross}
    if not cross.get("found"):
        return verdict
    window = cross["window"]
    if verdict.answer == NO:
        if verdict.exact:
            raise InternalInvariantError(
                f"window-{window} block map contradicts an exact negative answer"
            )
        verdict.answer = RESOURCE_EXCEEDED
        verdict.truncation_warnings.append(
            f"consistency: a window-{window} block map exists but no candidate passed"
        )
    elif verdict.answer == YES and passes is False:
        verdict.exact = False
        verdict.truncation_warnings.append(
            f"consistency: the data induced by the window-{window} map fails the check"
        )
    return verdict


def _cross_check(
    x: SoficShift,
    xbar: SoficShift,
    consts: DecisionConstants,
    source: list[AsymptoticTriple],
    config: AppConfig,
    verdict: Verdict,
) -> Verdict:
    for L in range(config.oracle_max_window + 1):
        res = oracle.search_homomorphisms(x, xbar, L, "infinite_image", config, limit=1)
        if res.found:
            break
    else:
        return reconcile(verdict, {"found": False, "max_window": config.oracle_max_window}, None)
    code = res.found[0]
    phi, psi = oracle.induced_pair(code, x, xbar, consts, source)
    bounded = with_candidate_bounds(consts, xbar, phi, psi)
    check = check_chain_condition(x, xbar, phi, psi, bounded, config)
    problems = validate_accompanying(phi, psi, x, xbar, bounded, source)
    cross = {
        "found": True,
        "window": L,
        "block_map": code.to_json_dict(),
        **pair_witness(phi, psi, check),
    }
    if problems:
        cross["irregular"] = problems[:5]
    passes = None if problems or check.status == RESOURCE_EXCEEDED else check.holds
    return reconcile(verdict, cross, passes)


def decide_homomorphism(
    x: SoficShift, xbar: SoficShift, config: Optional[AppConfig] = None
) -> Verdict:
    """Is there a homomorphism X -> X̄ with infinite image?"""
    config = config or AppConfig.from_env()
    consts = constants(x, xbar, config.h_cap)
    caps = search_caps(config, consts)
    obstruction = period_obstruction(x, xbar)
    if obstruction is not None:
        return Verdict(
            NO, consts.to_json_dict(), caps_used(config, consts, caps),
            certificate=f"period-{obstruction} obstruction",
        )
    source = enumerate_A_circ(
        x, consts.h_used, caps.c, require_fixed_point=config.psi_require_fixed_point
    )
    verdict = _search_candidates(x, xbar, consts, source, config)
    if config.oracle_cross_check:
        verdict = _cross_check(x, xbar, consts, source, config, verdict)
    return verdict


def _search_candidates(
    x: SoficShift,
    xbar: SoficShift,
    consts: DecisionConstants,
    source: list[AsymptoticTriple],
    config: AppConfig,
) -> Verdict:
    caps = search_caps(config, consts)
    targets = enumerate_A_circ(
        xbar, consts.h_used, caps.c, require_fixed_point=config.psi_require_fixed_point
    )
    pairs: list[tuple[PeriodicMapCandidate, AccompanyingMap]] = []
    complete = True
    for phi in enumerate_periodic_maps(x, xbar, consts.h_used):
        for psi in enumerate_accompanying(phi, consts, source, targets):
            if not psi.domain:
                continue
            if len(pairs) >= config.candidate_budget:
                complete = False
                break
            pairs.append((phi, psi))
        if not complete:
            break
    logger.info(f"checking {len(pairs)} candidate pairs (complete={complete})")

    def run(pair):
        phi, psi = pair
        bounded = with_candidate_bounds(consts, xbar, phi, psi)
        return pair, bounded, check_chain_condition(x, xbar, phi, psi, bounded, config)

    pool = WorkerPool({"check": run}, n_workers=config.threads)
    results = pool.map("check", pairs, stop_when=lambda r: r[2].holds)
    warnings = truncation_warnings(config, consts, caps)
    for item in results:
        if item is None:
            continue
        (phi, psi), bounded, check = item
        if check.holds:
            bounded_caps = search_caps(config, bounded)
            found = truncation_warnings(config, bounded, bounded_caps)
            return Verdict(
                YES, bounded.to_json_dict(), caps_used(config, bounded, bounded_caps),
                witness=pair_witness(phi, psi, check),
                truncation_warnings=found, exact=not found,
            )
        if check.status == RESOURCE_EXCEEDED:
            complete = False
            warnings.extend(check.warnings)
    if not complete:
        warnings.append(f"candidate frontier: {len(pairs)} pairs checked")
        return Verdict(
            RESOURCE_EXCEEDED, consts.to_json_dict(), caps_used(config, consts, caps),
            truncation_warnings=warnings,
        )
    return Verdict(
        NO, consts.to_json_dict(), caps_used(config, consts, caps),
        certificate="no accompanied periodic map passes the chain condition",
        truncation_warnings=warnings, exact=not warnings,
    )
