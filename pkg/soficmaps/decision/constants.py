"""
Search constants of the existence criteria: T∘, H and T for the chain
condition and the tuple bounds K and N. Every constant is computed exactly; the period
length actually enumerated is min(H, h_cap) and the difference is reported.

C bounds the middle words of ψ-fixed triples: a ψ-fixed word a_-^{V+2}c with
c_1 != (a_-)_1 has its pumped prefix inside the a_- copies, so the escape bound
leaves at most H∘(X, ℓ(a_-)) symbols for c.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from typing import Optional

from ..core.errors import FiniteShiftError
from ..periodic import enumerate_primitive_words, max_period_R, period_invariants
from ..pumping import h_circ
from ..shift import SoficShift
from ..syntactic import semigroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecisionConstants:
    V: int
    V_bar: int
    V_circ: int
    H_circ: int
    T_circ: int
    H: int
    T: int
    rho: int
    h_used: int
    C_bound: Optional[int] = None
    rho_bar: Optional[int] = None
    nu: Optional[int] = None
    nu_phi: Optional[int] = None
    K_bound: Optional[int] = None
    N_bound: Optional[int] = None

    @property
    def truncated(self) -> bool:
        return self.h_used < self.H

    def for_candidate(self, rho_bar: int, nu: int, nu_phi: int) -> "DecisionConstants":
        """Attach ρ̄, ν, ν^φ∘ of one candidate and the bounds K and N they give."""
        K = (
            rho_bar
            * self.V_circ
            * nu
            * (self.V * nu + 1)
            * (self.rho * nu) ** (self.V_circ * nu)
        )
        N = self.V * self.V_bar * nu_phi
        return dataclasses.replace(
            self, rho_bar=rho_bar, nu=nu, nu_phi=nu_phi, K_bound=K, N_bound=N
        )

    def to_json_dict(self) -> dict:
        return dataclasses.asdict(self)


def _require_infinite(shift: SoficShift) -> None:
    if shift.is_empty or shift.is_finite:
        raise FiniteShiftError(f"{shift.name} is finite")


def constants(x: SoficShift, xbar: SoficShift, h_cap: int) -> DecisionConstants:
    _require_infinite(x)
    _require_infinite(xbar)
    x.fischer_cover  # raises NotTransitiveError
    sg, sgb = semigroup(x), semigroup(xbar)
    v_circ = sg.shannon.V_circ
    hc = h_circ(x, 1)
    t_circ = (max_period_R(xbar, v_circ) or 1) ** 2
    stretch = 0
    for p in enumerate_primitive_words(x, v_circ):
        stretch = max(stretch, period_invariants(x, p).Q * p.pi)
    H = sg.V + hc + 2 * t_circ + stretch
    T = (max_period_R(xbar, H) or 1) ** 2
    rho = max_period_R(x, H) or 1
    out = DecisionConstants(
        V=sg.V,
        V_bar=sgb.V,
        V_circ=v_circ,
        H_circ=hc,
        T_circ=t_circ,
        H=H,
        T=T,
        rho=rho,
        h_used=min(H, h_cap),
        C_bound=max(h_circ(x, min(H, h_cap)), h_circ(xbar, min(H, h_cap))),
    )
    logger.info(f"constants {x.name} -> {xbar.name}: H={H} T={T} T_circ={t_circ}")
    if out.truncated:
        logger.warning(f"period words truncated to length {out.h_used} (H = {H})")
    return out
