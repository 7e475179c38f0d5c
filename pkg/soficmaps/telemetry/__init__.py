"""Log rendering for the command line.

Standard output carries JSON reports only, so the handler writes to stderr.
"""

import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from ..core.errors import ConfigError

_console: Optional[Console] = None


def console() -> Console:
    global _console
    if _console is None:
        _console = Console(stderr=True)
    return _console


def configure_logging(level: str = "WARNING") -> logging.Logger:
    root = logging.getLogger("soficmaps")
    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        raise ConfigError(f"unknown log level {level!r}")
    root.setLevel(numeric)
    for h in list(root.handlers):
        if isinstance(h, RichHandler):
            root.removeHandler(h)
    handler = RichHandler(console=console(), show_path=False, rich_tracebacks=False)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    root.addHandler(handler)
    root.propagate = False
    return root
