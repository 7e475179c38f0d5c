# soficmaps.decision package
from .candidates import AccompanyingMap, PeriodicMapCandidate
from .constants import DecisionConstants, constants
from .factor import check_flanked_chain_condition, decide_factor, omega_sets
from .homomorphism import check_chain_condition, decide_homomorphism
from .verdict import CheckResult, Verdict

__all__ = [
    "AccompanyingMap",
    "CheckResult",
    "DecisionConstants",
    "PeriodicMapCandidate",
    "Verdict",
    "check_chain_condition",
    "check_flanked_chain_condition",
    "constants",
    "decide_factor",
    "decide_homomorphism",
    "omega_sets",
]
