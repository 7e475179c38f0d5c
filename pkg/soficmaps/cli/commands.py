"""Verb handlers. Each returns the JSON report and the exit code."""

from __future__ import annotations

import argparse
import logging
import os
from typing import Any, Callable

from .. import oracle
from ..asymptotic import EventuallyPeriodicPoint, decompose, enumerate_A_circ
from ..core.config import AppConfig
from ..core.words import format_word, parse_word
from ..decision import constants, decide_factor, decide_homomorphism
from ..periodic import (
    least_periods,
    period_obstruction,
    periodic_point_report,
)
from ..presentation import load_presentation
from ..pumping import psi_trace
from ..shift import SoficShift, entropy
from ..syntactic import derived_shift, is_synchronizing, semigroup, synchronizing_classes

logger = logging.getLogger(__name__)

Report = tuple[dict[str, Any], int]
Handler = Callable[[argparse.Namespace, AppConfig], Report]


def load_shift(path: str) -> SoficShift:
    name = os.path.splitext(os.path.basename(path))[0]
    return SoficShift(load_presentation(path), name=name)


def _pair(args: argparse.Namespace) -> tuple[SoficShift, SoficShift]:
    return load_shift(args.source), load_shift(args.target)


def cmd_info(args: argparse.Namespace, config: AppConfig) -> Report:
    shift = load_shift(args.source)
    sg = semigroup(shift)
    report: dict[str, Any] = {
        "name": shift.name,
        "alphabet": list(shift.alphabet),
        "vertices": shift.presentation.n_vertices,
        "edges": len(shift.presentation.edges),
        "finite": shift.is_finite,
        "transitive": shift.transitive,
        "semigroup_size": sg.V,
        "V_circ": sg.shannon.V_circ,
        "synchronizing_classes": len(synchronizing_classes(shift)),
        "derived_empty": derived_shift(shift).is_empty,
    }
    if shift.transitive:
        report["period"] = shift.period
        report["aperiodic"] = shift.aperiodic
        report["entropy_nats"] = round(entropy(shift), 9)
    return report, 0


def cmd_entropy(args: argparse.Namespace, config: AppConfig) -> Report:
    return {"entropy_nats": round(entropy(load_shift(args.source)), 9)}, 0


def cmd_semigroup(args: argparse.Namespace, config: AppConfig) -> Report:
    return semigroup(load_shift(args.source)).to_json_dict(), 0


def cmd_periodic(args: argparse.Namespace, config: AppConfig) -> Report:
    shift = load_shift(args.source)
    report: dict[str, Any] = {
        "bound": args.bound,
        "least_periods": least_periods(shift, args.bound),
        "orbits": periodic_point_report(shift, args.bound),
    }
    if args.target:
        p = period_obstruction(shift, load_shift(args.target))
        report["periodic_point_condition"] = p is None
        report["obstruction"] = p
    return report, 0


def cmd_sync(args: argparse.Namespace, config: AppConfig) -> Report:
    shift = load_shift(args.source)
    if args.word is not None:
        word = parse_word(args.word, shift.alphabet)
        return {"word": format_word(word), "synchronizing": is_synchronizing(shift, word)}, 0
    return {"classes": [{"id": c.id, "class": str(c)} for c in synchronizing_classes(shift)]}, 0


def cmd_derived(args: argparse.Namespace, config: AppConfig) -> Report:
    derived = derived_shift(load_shift(args.source))
    return {"empty": derived.is_empty, "presentation": derived.presentation.to_json_dict()}, 0


def cmd_psi(args: argparse.Namespace, config: AppConfig) -> Report:
    shift = load_shift(args.source)
    word = parse_word(args.word, shift.alphabet)
    out, steps = psi_trace(shift, word, args.k)
    return {
        "input": format_word(word),
        "k": args.k,
        "output": format_word(out),
        "length_preserved": len(out) == len(word),
        "steps": steps,
    }, 0


def cmd_decompose(args: argparse.Namespace, config: AppConfig) -> Report:
    shift = load_shift(args.source)
    point = EventuallyPeriodicPoint(
        parse_word(args.left, shift.alphabet),
        parse_word(args.middle, shift.alphabet),
        parse_word(args.right, shift.alphabet),
        args.offset,
    )
    t, triple = decompose(shift, point)
    return {"t": t, "triple": triple.to_json_dict()}, 0


def cmd_triples(args: argparse.Namespace, config: AppConfig) -> Report:
    shift = load_shift(args.source)
    h = args.h or config.h_cap
    triples = enumerate_A_circ(
        shift, h, config.c_cap, require_fixed_point=config.psi_require_fixed_point
    )
    return {
        "H": h,
        "c_cap": config.c_cap,
        "count": len(triples),
        "triples": [t.to_json_dict() for t in triples],
    }, 0


def cmd_constants(args: argparse.Namespace, config: AppConfig) -> Report:
    x, xbar = _pair(args)
    return constants(x, xbar, config.h_cap).to_json_dict(), 0


def cmd_decide_hom(args: argparse.Namespace, config: AppConfig) -> Report:
    verdict = decide_homomorphism(*_pair(args), config)
    return verdict.to_json_dict(), verdict.exit_code


def cmd_decide_factor(args: argparse.Namespace, config: AppConfig) -> Report:
    verdict = decide_factor(*_pair(args), config)
    return verdict.to_json_dict(), verdict.exit_code


def cmd_oracle(args: argparse.Namespace, config: AppConfig) -> Report:
    x, xbar = _pair(args)
    result = oracle.search_homomorphisms(x, xbar, args.window, args.want, config, limit=args.limit)
    return result.to_json_dict(), 0 if result.exhausted or result.found else 2


HANDLERS: dict[str, Handler] = {
    "info": cmd_info,
    "entropy": cmd_entropy,
    "semigroup": cmd_semigroup,
    "periodic": cmd_periodic,
    "sync": cmd_sync,
    "derived": cmd_derived,
    "psi": cmd_psi,
    "decompose": cmd_decompose,
    "triples": cmd_triples,
    "constants": cmd_constants,
    "decide-hom": cmd_decide_hom,
    "decide-factor": cmd_decide_factor,
    "oracle": cmd_oracle,
}
