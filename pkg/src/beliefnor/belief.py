"""Dempster-Shafer algebra on the binary frame {T, F}.

Every mass function here lives on the four subsets of the frame. The empty set
never carries mass, so a mass function is fully described by ``m_T``, ``m_F``
and ``m_TF``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from .models import BeliefReport, ProbabilityInterval
from .validation import (
    MASS_TOLERANCE,
    InconsistentBeliefError,
    NegativeMassError,
    UnnormalizedMassError,
)


class Subset(str, Enum):
    """Subsets of the frame {T, F}."""

    EMPTY = "EMPTY"
    T = "T"
    F = "F"
    TF = "TF"

    @property
    def cardinality(self) -> int:
        return {"EMPTY": 0, "T": 1, "F": 1, "TF": 2}[self.value]

    def contains(self, other: "Subset") -> bool:
        """True when ``other`` is a subset of ``self``."""
        return other is Subset.EMPTY or self is Subset.TF or self is other

    def intersects(self, other: "Subset") -> bool:
        if Subset.EMPTY in (self, other):
            return False
        return self is Subset.TF or other is Subset.TF or self is other


# The three focal states a binary variable can take in an evidential network.
FOCAL_STATES: Tuple[Subset, Subset, Subset] = (Subset.T, Subset.F, Subset.TF)


def complement(a: Subset) -> Subset:
    return {
        Subset.EMPTY: Subset.TF,
        Subset.T: Subset.F,
        Subset.F: Subset.T,
        Subset.TF: Subset.EMPTY,
    }[a]


@dataclass(frozen=True)
class MassFunction:
    """Basic belief assignment over {T}, {F} and {T, F}."""

    m_T: float
    m_F: float
    m_TF: float

    @classmethod
    def vacuous(cls) -> "MassFunction":
        return cls(0.0, 0.0, 1.0)

    @classmethod
    def bayesian(cls, p: float) -> "MassFunction":
        return cls(p, 1.0 - p, 0.0)

    @classmethod
    def from_tuple(cls, values) -> "MassFunction":
        m_T, m_F, m_TF = values
        return cls(float(m_T), float(m_F), float(m_TF))

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.m_T, self.m_F, self.m_TF)

    def mass(self, a: Subset) -> float:
        if a is Subset.EMPTY:
            return 0.0
        return {Subset.T: self.m_T, Subset.F: self.m_F, Subset.TF: self.m_TF}[a]

    def is_bayesian(self) -> bool:
        return abs(self.m_TF) <= MASS_TOLERANCE

    def __str__(self) -> str:
        return f"(T={self.m_T:.4f}, F={self.m_F:.4f}, TF={self.m_TF:.4f})"


def validate(m: MassFunction) -> MassFunction:
    """Return ``m`` unchanged or raise the first violated invariant."""
    for component in ("m_T", "m_F", "m_TF"):
        value = getattr(m, component)
        if not math.isfinite(value) or value < 0:
            raise NegativeMassError(component, value)
    total = m.m_T + m.m_F + m.m_TF
    if not abs(total - 1.0) <= MASS_TOLERANCE:
        raise UnnormalizedMassError(total)
    return m


def bel(m: MassFunction, a: Subset) -> float:
    """Credibility: total mass on the non-empty subsets of ``a``."""
    return sum(m.mass(b) for b in FOCAL_STATES if a.contains(b))


def pl(m: MassFunction, a: Subset) -> float:
    """Plausibility: total mass on the subsets that intersect ``a``."""
    return sum(m.mass(b) for b in FOCAL_STATES if a.intersects(b))


def mass_from_bel(bel_T: float, bel_F: float) -> MassFunction:
    """Moebius inversion of a credibility function on the binary frame."""
    if bel_T < 0 or bel_F < 0:
        raise InconsistentBeliefError(f"belief values must be non-negative, got ({bel_T}, {bel_F})")
    if bel_T + bel_F > 1.0 + MASS_TOLERANCE:
        raise InconsistentBeliefError(
            f"Bel(T) + Bel(F) must not exceed 1, got {bel_T} + {bel_F} = {bel_T + bel_F}"
        )
    return MassFunction(bel_T, bel_F, max(0.0, 1.0 - bel_T - bel_F))


def mass_from_interval(p: ProbabilityInterval) -> MassFunction:
    """Mass function whose [Bel(T), Pl(T)] equals the interval."""
    return MassFunction(p.lower, 1.0 - p.upper, p.upper - p.lower)


def betp(m: MassFunction) -> Tuple[float, float]:
    """Pignistic probabilities (BetP(T), BetP(F))."""
    half = m.m_TF / 2.0
    betp_T = m.m_T + half
    return betp_T, 1.0 - betp_T


def belief_report(m: MassFunction) -> BeliefReport:
    betp_T, betp_F = betp(m)
    return BeliefReport(
        mass=m.as_tuple(),
        bel_T=bel(m, Subset.T),
        pl_T=pl(m, Subset.T),
        bel_F=bel(m, Subset.F),
        pl_F=pl(m, Subset.F),
        betp_T=betp_T,
        betp_F=betp_F,
    )
