"""
Command-line front end.

Reports are JSON on standard output; logs go to standard error. Exit codes:
0 for definite answers, 1 for input errors, 2 when a search budget or a
truncation cap decided the outcome.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Optional, Sequence

from ..core.config import AppConfig
from ..core.errors import SoficError
from ..oracle import WANTS
from ..telemetry import configure_logging, console
from .commands import HANDLERS
from .schema import SCHEMA, SCHEMA_VERSION

logger = logging.getLogger(__name__)


class UsageError(SoficError, ValueError):
    kind = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(message)


def _add_pair(p: argparse.ArgumentParser) -> None:
    p.add_argument("source", help="presentation of X (JSON)")
    p.add_argument("target", help="presentation of X̄ (JSON)")


def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--h-cap", type=int, help="longest period word enumerated")
    p.add_argument("--k-cap", type=int, help="excluded segments per block")
    p.add_argument("--n-cap", type=int, help="blocks per chain")
    p.add_argument("--c-cap", type=int, help="longest middle word of a triple")
    p.add_argument("--tuple-budget", type=int, help="chain tuples checked per candidate")
    p.add_argument("--budget-ms", type=int, help="wall-clock budget of each search phase")
    p.add_argument(
        "--no-cross-check",
        dest="oracle_cross_check",
        action="store_const",
        const=False,
        help="skip the block-map cross-check of the answer",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="soficmaps", description="Homomorphisms between sofic shifts.")
    parser.add_argument("--config", help="YAML file with configuration overrides")
    parser.add_argument("--threads", type=int, help="worker threads")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--schema", action="store_true", help="print the report schema")
    sub = parser.add_subparsers(dest="verb", parser_class=_Parser)

    for verb, text in (
        ("info", "summary of one shift"),
        ("entropy", "topological entropy in nats"),
        ("semigroup", "syntactic semigroup and Shannon graph data"),
        ("derived", "the derived shift"),
    ):
        sub.add_parser(verb, help=text).add_argument("source")

    p = sub.add_parser("periodic", help="periodic points and the periodic point condition")
    p.add_argument("source")
    p.add_argument("target", nargs="?")
    p.add_argument("--bound", type=int, default=6)

    p = sub.add_parser("sync", help="synchronizing classes or one word")
    p.add_argument("source")
    p.add_argument("--word")

    p = sub.add_parser("psi", help="trace of the ψ_k normalizer")
    p.add_argument("source")
    p.add_argument("--word", required=True)
    p.add_argument("--k", type=int, default=1)

    p = sub.add_parser("decompose", help="canonical triple of an eventually periodic point")
    p.add_argument("source")
    p.add_argument("--left", required=True)
    p.add_argument("--middle", default="")
    p.add_argument("--right", required=True)
    p.add_argument("--offset", type=int, default=0)

    p = sub.add_parser("triples", help="asymptotic triples with escaping middle words")
    p.add_argument("source")
    p.add_argument("--h", type=int)
    p.add_argument("--c-cap", type=int)

    p = sub.add_parser("constants", help="search constants of a pair")
    _add_pair(p)
    p.add_argument("--h-cap", type=int)

    for verb, text in (
        ("decide-hom", "is there a homomorphism with infinite image"),
        ("decide-factor", "is there a homomorphism onto the target"),
    ):
        p = sub.add_parser(verb, help=text)
        _add_pair(p)
        _add_caps(p)

    p = sub.add_parser("oracle", help="block maps of a fixed window")
    _add_pair(p)
    p.add_argument("--window", type=int, default=1)
    p.add_argument("--want", choices=WANTS, default="any")
    p.add_argument("--limit", type=int)
    return parser


_OVERRIDES = (
    "threads",
    "log_level",
    "h_cap",
    "k_cap",
    "n_cap",
    "c_cap",
    "tuple_budget",
    "budget_ms",
    "oracle_cross_check",
)


def load_config(args: argparse.Namespace) -> AppConfig:
    base = AppConfig.from_yaml(args.config) if args.config else AppConfig.from_env()
    return base.with_overrides({k: getattr(args, k, None) for k in _OVERRIDES})


def emit(report: Any) -> None:
    sys.stdout.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    sys.stdout.flush()


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.schema:
            emit(SCHEMA)
            return 0
        if not args.verb:
            raise UsageError("a verb is required (see --help)")
        config = load_config(args)
        configure_logging(config.log_level)
        config.log_config(console() if config.log_level.upper() == "DEBUG" else None)
        report, code = HANDLERS[args.verb](args, config)
    except SoficError as e:
        emit({"error": e.kind, "message": str(e), "schema_version": SCHEMA_VERSION})
        return 1
    except ValueError as e:
        emit({"error": "invalid argument", "message": str(e), "schema_version": SCHEMA_VERSION})
        return 1
    report["schema_version"] = SCHEMA_VERSION
    emit(report)
    return code
