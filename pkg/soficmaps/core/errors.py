"""
Error kinds raised across soficmaps.

Input problems derive from ValueError, broken internal invariants from
RuntimeError. Every class carries a stable ``kind`` used by the CLI reports.
"""


class SoficError(Exception):
    kind = "error"


class PresentationError(SoficError, ValueError):
    kind = "malformed presentation"


class UnknownSymbolError(PresentationError):
    kind = "unknown symbol"


class EmptyLanguageError(PresentationError):
    kind = "empty language"


class ConfigError(SoficError, ValueError):
    kind = "config"


class InadmissibleWordError(SoficError, ValueError):
    kind = "inadmissible word"


class NotTransitiveError(SoficError, ValueError):
    kind = "non-transitive input"


class FiniteShiftError(SoficError, ValueError):
    kind = "finite shift"


class NotInLambdaError(SoficError, ValueError):
    kind = "length not in cycle set"


class NotConjugateError(SoficError, ValueError):
    kind = "non-conjugate pair"


class PeriodicPointError(SoficError, ValueError):
    kind = "periodic input"


class WindowTooLargeError(SoficError, ValueError):
    kind = "window too large"


class BlockMapError(SoficError, ValueError):
    kind = "block map"


class PreconditionError(SoficError, ValueError):
    kind = "precondition"


class EntropyPreconditionError(PreconditionError):
    kind = "entropy precondition"


class PeriodicPointPreconditionError(PreconditionError):
    kind = "periodic point precondition"


class AperiodicityPreconditionError(PreconditionError):
    kind = "aperiodicity precondition"


class NotSynchronizingError(PreconditionError):
    kind = "non-synchronizing class"


class InternalInvariantError(SoficError, RuntimeError):
    kind = "internal invariant"
