"""
Existence of surjective homomorphisms between transitive sofic shifts.

Chains are flanked on both sides by a synchronizing context class paired with
a period word, and the flanks are carried over to X̄ by the maps Ψ^- and Ψ^+.
Candidates (φ∘, Ψ, Ψ^-, Ψ^+) are searched like the pairs of the homomorphism
question; a block map found by the oracle is only used as a cross-check.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Optional

from .. import oracle
from ..asymptotic import AsymptoticTriple, enumerate_A_circ
from ..core.config import AppConfig
from ..core.errors import (
    AperiodicityPreconditionError,
    EntropyPreconditionError,
    NotTransitiveError,
    PeriodicPointPreconditionError,
)
from ..core.words import EMPTY, Word, format_word, least_rotation, primitive_root
from ..periodic import enumerate_primitive_words, period_obstruction
from ..scheduler import WorkerPool
from ..shift import BlockMap, SoficShift, apply_block_map, entropy
from ..syntactic import SyntacticSemigroup, gamma_expression_admissible, semigroup
from .candidates import (
    AccompanyingMap,
    PeriodicMapCandidate,
    enumerate_accompanying,
    enumerate_periodic_maps,
)
from .chains import Block, ChainBuilder, ChainTuple, Invariants, Segment
from .constants import DecisionConstants, constants
from .homomorphism import (
    budget_exhausted,
    caps_used,
    chain_middle,
    first_inadmissible,
    invariant_cache,
    outside_range_note,
    pair_witness,
    reconcile,
    search_caps,
    stable_class,
    target_options,
    truncation_warnings,
    with_candidate_bounds,
)
from .verdict import FAILS, HOLDS, NO, RESOURCE_EXCEEDED, YES, CheckResult, Verdict

logger = logging.getLogger(__name__)

OmegaMinus = list[tuple[int, Word]]
OmegaPlus = list[tuple[Word, int]]


def omega_sets(x: SoficShift, h: int) -> tuple[OmegaMinus, OmegaPlus]:
    """(Ω^-, Ω^+) restricted to period words of length <= h.

    (γ, a) is in Ω^- when γ is synchronizing and γ·[a^m] is non-zero for every m;
    a^m stabilizes, so the stable power decides it.
    """
    sg = semigroup(x)
    inv = invariant_cache(x)
    sync = [i for i in sg.admissible_ids if sg.is_synchronizing_id(i)]
    minus: OmegaMinus = []
    plus: OmegaPlus = []
    for p in enumerate_primitive_words(x, h):
        e = stable_class(sg, p.a, inv)
        for g in sync:
            if sg.mul(g, e) != sg.zero:
                minus.append((g, p.a))
            if sg.mul(e, g) != sg.zero:
                plus.append((p.a, g))
    logger.info(f"Ω sets of {x.name} up to length {h}: {len(minus)} left, {len(plus)} right")
    return minus, plus


@dataclass
class FlankMaps:
    """Ψ^- and Ψ^+ as explicit tables; pairs without an image are left out."""

    minus: dict[tuple[int, Word], int]
    plus: dict[tuple[Word, int], int]

    def to_json_dict(self) -> dict:
        return {
            "minus": [
                {"gamma": g, "a": format_word(a), "image": v} for (g, a), v in self.minus.items()
            ],
            "plus": [
                {"a": format_word(a), "gamma": g, "image": v} for (a, g), v in self.plus.items()
            ],
        }


def _sync_power(xbar: SoficShift, a: Word) -> Optional[int]:
    """Class of the least synchronizing power of ``a`` in X̄, if any."""
    sg = semigroup(xbar)
    e = sg.word_class(a)
    for cls in sg.powers(e):
        if sg.is_synchronizing_id(cls):
            return cls
    return None


def derive_flank_maps(
    code: BlockMap, xbar: SoficShift, minus: OmegaMinus, plus: OmegaPlus
) -> tuple[FlankMaps, list[str]]:
    """Ψ^± induced by a block map: a flank (γ, a) goes to the class of the least
    synchronizing power of the image period word."""
    images: dict[Word, Optional[int]] = {}
    warnings: list[str] = []

    def image(a: Word) -> Optional[int]:
        if a not in images:
            images[a] = _sync_power(xbar, primitive_root(code.apply_periodic(a)))
            if images[a] is None:
                warnings.append(f"image of {format_word(a)}^∞ has no synchronizing power")
        return images[a]

    maps = FlankMaps({}, {})
    for g, a in minus:
        v = image(a)
        if v is not None:
            maps.minus[(g, a)] = v
    for a, g in plus:
        v = image(a)
        if v is not None:
            maps.plus[(a, g)] = v
    return maps, warnings


def factor_chains(
    builder: ChainBuilder,
    minus: OmegaMinus,
    plus: OmegaPlus,
    invariants: Invariants,
    n_cap: int,
) -> Iterator[tuple[int, int, ChainTuple]]:
    """(γ_-, γ_+, chain) with N = 1..n_cap blocks.

    Block 0 opens on a pseudo-segment carrying a(+); the chain is closed by a
    segment whose left period word is a(-) and whose middle word is empty.
    """
    closing: dict[Word, list[tuple[Word, int]]] = {}
    for a, g in plus:
        closing.setdefault(least_rotation(a), []).append((a, g))

    def rest(n_total: int, gm: int, acc: tuple[Block, ...]) -> Iterator:
        orbit = least_rotation(acc[-1][-1].a_plus)
        if len(acc) == n_total:
            for a, gp in closing.get(orbit, []):
                yield gm, gp, ChainTuple(acc + ((Segment(a, EMPTY, a),),))
            return
        for block in builder.blocks(orbit):
            yield from rest(n_total, gm, acc + (block,))

    for n_total in range(1, n_cap + 1):
        for gm, a_plus in minus:
            for r in range(invariants(a_plus).R):
                for first in builder.extend((Segment(EMPTY, EMPTY, a_plus, r),)):
                    yield from rest(n_total, gm, (first,))


def check_factor_preconditions(
    x: SoficShift, xbar: SoficShift, config: AppConfig, *, strict: bool = True
) -> bool:
    """Raise on a violated precondition; return True when the entropies coincide
    within tolerance (only possible with ``strict=False``)."""
    if not x.transitive:
        raise NotTransitiveError(f"{x.name} is not topologically transitive")
    if not (xbar.transitive and xbar.aperiodic):
        raise AperiodicityPreconditionError(f"{xbar.name} is not transitive and aperiodic")
    p = period_obstruction(x, xbar)
    if p is not None:
        raise PeriodicPointPreconditionError(
            f"{x.name} has a point of least period {p}; no divisor of {p} is a "
            f"least period in {xbar.name}"
        )
    h, hb = entropy(x), entropy(xbar)
    if h < hb - config.entropy_tol or (strict and h <= hb + config.entropy_tol):
        raise EntropyPreconditionError(
            f"entropy of {x.name} ({h:.9f}) does not exceed entropy of {xbar.name} ({hb:.9f})"
        )
    return abs(h - hb) <= config.entropy_tol


def check_flanked_chain_condition(
    x: SoficShift,
    xbar: SoficShift,
    phi: PeriodicMapCandidate,
    psi: AccompanyingMap,
    flanks: FlankMaps,
    consts: DecisionConstants,
    config: AppConfig,
) -> CheckResult:
    check_factor_preconditions(x, xbar, config)
    sg_bar = semigroup(xbar)
    inv_x, inv_xbar = invariant_cache(x), invariant_cache(xbar)
    minus, plus = omega_sets(x, consts.h_used)
    caps = search_caps(config, consts, n_extra=1)
    builder = ChainBuilder(psi.domain, psi.excluded, inv_x, caps.k)
    checked = 0
    skipped = 0
    outside = 0
    deadline = config.deadline()
    for gm, gp, chain in factor_chains(builder, minus, plus, inv_x, caps.n):
        stop = budget_exhausted(config, deadline, checked)
        if stop:
            return CheckResult(RESOURCE_EXCEEDED, checked, warnings=[stop])
        checked += 1
        if not gamma_expression_admissible(x, gm, chain_middle(chain, inv_x), gp):
            continue
        a_plus, a_minus = chain.blocks[0][0].a_plus, chain.blocks[-1][0].a_minus
        left, right = flanks.minus.get((gm, a_plus)), flanks.plus.get((a_minus, gp))
        if left is None or right is None:
            skipped += 1
            continue
        first_image = phi.image(a_plus)
        last_image = phi.image(a_minus)
        images = [(AsymptoticTriple(EMPTY, EMPTY, first_image), 0)]
        images += [psi(block[0].triple) for block in chain.blocks[1:-1]]
        images.append((AsymptoticTriple(last_image, EMPTY, last_image), 0))
        per_block = target_options(sg_bar, chain.blocks, images, consts, inv_x, inv_xbar)
        if per_block is None:
            outside += 1
            continue
        witness = {"tuple": chain.to_json_dict(), "gamma_minus": gm, "gamma_plus": gp}
        if isinstance(per_block, dict):
            return CheckResult(FAILS, checked, witness={**witness, **per_block})
        bad = first_inadmissible(sg_bar, per_block, left, right)
        if bad is not None:
            witness.update(residues=bad, reason="flanked target expression inadmissible")
            return CheckResult(FAILS, checked, witness=witness)
    warnings = [f"{skipped} tuples skipped: flank without an image"] if skipped else []
    logger.info(f"flanked chain condition holds on {checked} tuples")
    return CheckResult(HOLDS, checked, warnings=warnings + outside_range_note(outside))


def _flank_options(
    sg_bar: SyntacticSemigroup, sync: list[int], stable: int, derived: Optional[int], left: bool
) -> list[int]:
    """Synchronizing classes of X̄ that do not annihilate the stable image class;
    the class a block map would induce comes first."""
    out = []
    for g in sync:
        product = sg_bar.mul(g, stable) if left else sg_bar.mul(stable, g)
        if product != sg_bar.zero:
            out.append(g)
    if derived in out:
        out.remove(derived)
        out.insert(0, derived)
    return out


def enumerate_flank_maps(
    phi: PeriodicMapCandidate, xbar: SoficShift, minus: OmegaMinus, plus: OmegaPlus
) -> Iterator[FlankMaps]:
    """Every table Ψ^-, Ψ^+ into the synchronizing classes of X̄ compatible with
    φ∘; the table induced by φ∘ alone comes first."""
    sg_bar = semigroup(xbar)
    inv_bar = invariant_cache(xbar)
    sync = [i for i in sg_bar.admissible_ids if sg_bar.is_synchronizing_id(i)]
    keys: list[tuple[bool, tuple]] = [(True, k) for k in minus] + [(False, k) for k in plus]
    options = []
    for left, key in keys:
        a = key[1] if left else key[0]
        image = phi.image(a)
        stable = stable_class(sg_bar, image, inv_bar)
        derived = _sync_power(xbar, primitive_root(image))
        opts = _flank_options(sg_bar, sync, stable, derived, left)
        if not opts:
            logger.debug(f"flank {key} has no compatible image; no flank maps")
            return
        options.append(opts)
    for choice in itertools.product(*options):
        maps = FlankMaps({}, {})
        for (left, key), g in zip(keys, choice):
            (maps.minus if left else maps.plus)[key] = g
        yield maps


def _search_factor_candidates(
    x: SoficShift,
    xbar: SoficShift,
    consts: DecisionConstants,
    source: list[AsymptoticTriple],
    config: AppConfig,
) -> Verdict:
    caps = search_caps(config, consts, n_extra=1)
    targets = enumerate_A_circ(
        xbar, consts.h_used, caps.c, require_fixed_point=config.psi_require_fixed_point
    )
    minus, plus = omega_sets(x, consts.h_used)
    candidates: list[tuple[PeriodicMapCandidate, AccompanyingMap, FlankMaps]] = []
    complete = True
    for phi in enumerate_periodic_maps(x, xbar, consts.h_used):
        for psi in enumerate_accompanying(phi, consts, source, targets):
            for flanks in enumerate_flank_maps(phi, xbar, minus, plus):
                if len(candidates) >= config.candidate_budget:
                    complete = False
                    break
                candidates.append((phi, psi, flanks))
            if not complete:
                break
        if not complete:
            break
    logger.info(f"checking {len(candidates)} flanked candidates (complete={complete})")

    def run(candidate):
        phi, psi, flanks = candidate
        bounded = with_candidate_bounds(consts, xbar, phi, psi)
        check = check_flanked_chain_condition(x, xbar, phi, psi, flanks, bounded, config)
        return candidate, bounded, check

    pool = WorkerPool({"check": run}, n_workers=config.threads)
    results = pool.map("check", candidates, stop_when=lambda r: r[2].holds)
    warnings = truncation_warnings(config, consts, caps, n_extra=1)
    for item in results:
        if item is None:
            continue
        (phi, psi, flanks), bounded, check = item
        if check.holds:
            bounded_caps = search_caps(config, bounded, n_extra=1)
            found = truncation_warnings(config, bounded, bounded_caps, n_extra=1)
            witness = {**pair_witness(phi, psi, check), "flanks": flanks.to_json_dict()}
            return Verdict(
                YES, bounded.to_json_dict(), caps_used(config, bounded, bounded_caps),
                witness=witness, truncation_warnings=found, exact=not found,
            )
        if check.status == RESOURCE_EXCEEDED:
            complete = False
            warnings.extend(check.warnings)
    if not complete:
        warnings.append(f"candidate frontier: {len(candidates)} flanked candidates checked")
        return Verdict(
            RESOURCE_EXCEEDED, consts.to_json_dict(), caps_used(config, consts, caps),
            truncation_warnings=warnings,
        )
    return Verdict(
        NO, consts.to_json_dict(), caps_used(config, consts, caps),
        certificate="no flanked candidate passes the flanked chain condition",
        truncation_warnings=warnings, exact=not warnings,
    )


def _oracle_factor(
    x: SoficShift, xbar: SoficShift, config: AppConfig
) -> tuple[Optional[BlockMap], str, int, list[str]]:
    """First map onto X̄, else first map meeting X̄ - ∂X̄, over growing windows."""
    notes = []
    for want in ("surjective", "meets_nonderived"):
        for L in range(config.oracle_max_window + 1):
            res = oracle.search_homomorphisms(x, xbar, L, want, config, limit=1)
            if res.found:
                return res.found[0], want, L, notes
            if not res.exhausted:
                notes.append(f"window {L} ({want}) search stopped after {res.nodes} nodes")
    return None, "", -1, notes


def _cross_check_factor(
    x: SoficShift,
    xbar: SoficShift,
    consts: DecisionConstants,
    source: list[AsymptoticTriple],
    config: AppConfig,
    verdict: Verdict,
) -> Verdict:
    code, criterion, L, notes = _oracle_factor(x, xbar, config)
    if code is None:
        cross = {"found": False, "max_window": config.oracle_max_window, "notes": notes}
        return reconcile(verdict, cross, None)
    cross = {"found": True, "window": L, "block_map": code.to_json_dict(), "criterion": criterion}
    image = apply_block_map(code, x, alphabet=xbar.alphabet)
    if image.is_finite:
        cross["note"] = "finite image; induced data not checked"
        return reconcile(verdict, cross, None)
    phi, psi = oracle.induced_pair(code, x, xbar, consts, source)
    bounded = with_candidate_bounds(consts, xbar, phi, psi)
    minus, plus = omega_sets(x, consts.h_used)
    flanks, flank_notes = derive_flank_maps(code, xbar, minus, plus)
    check = check_flanked_chain_condition(x, xbar, phi, psi, flanks, bounded, config)
    cross.update(
        meets_nonderived=oracle.image_meets_nonderived(image, xbar),
        flanks=flanks.to_json_dict(),
        **pair_witness(phi, psi, check),
    )
    if flank_notes:
        cross["notes"] = flank_notes[:5]
    passes = None if check.status == RESOURCE_EXCEEDED else check.holds
    return reconcile(verdict, cross, passes)


def _decide_equal_entropy(
    x: SoficShift, xbar: SoficShift, consts: DecisionConstants, config: AppConfig
) -> Verdict:
    """Equal entropies fall outside the flanked criterion; only a block map found
    by the oracle can answer, and never exactly."""
    logger.warning("entropies coincide: the flanked chain condition is not evaluated")
    caps = search_caps(config, consts, n_extra=1)
    code, criterion, L, notes = _oracle_factor(x, xbar, config)
    warnings = ["equal entropy: answer rests on the block-map search alone"] + notes
    if code is None or criterion != "surjective":
        warnings.append(f"no block map onto {xbar.name} up to window {config.oracle_max_window}")
        return Verdict(
            RESOURCE_EXCEEDED, consts.to_json_dict(), caps_used(config, consts, caps),
            truncation_warnings=warnings,
        )
    return Verdict(
        YES, consts.to_json_dict(), caps_used(config, consts, caps),
        witness={"block_map": code.to_json_dict(), "criterion": criterion, "window": L},
        truncation_warnings=warnings, exact=False,
    )


def decide_factor(
    x: SoficShift, xbar: SoficShift, config: Optional[AppConfig] = None
) -> Verdict:
    """Is there a homomorphism of X onto X̄?"""
    config = config or AppConfig.from_env()
    equal = check_factor_preconditions(x, xbar, config, strict=False)
    consts = constants(x, xbar, config.h_cap)
    if equal:
        return _decide_equal_entropy(x, xbar, consts, config)
    caps = search_caps(config, consts, n_extra=1)
    source = enumerate_A_circ(
        x, consts.h_used, caps.c, require_fixed_point=config.psi_require_fixed_point
    )
    verdict = _search_factor_candidates(x, xbar, consts, source, config)
    if config.oracle_cross_check:
        verdict = _cross_check_factor(x, xbar, consts, source, config, verdict)
    return verdict
