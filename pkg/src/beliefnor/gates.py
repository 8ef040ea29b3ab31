"""Conditional mass tables for Noisy-OR, ImNOR and the Belief Noisy-OR family.

A BNOR table is built in two steps. Each parent X_i is first "flipped" into an
auxiliary variable X_i' whose mass depends on the parent's state, its link
interval and its ignorance mass eta_i. The child is then the set-valued OR of
the flipped variables, with the flip masses multiplied over every combination.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .belief import FOCAL_STATES, MassFunction, Subset, mass_from_interval, validate
from .models import FIXED_COEFFICIENTS, GateSpec, GateVariant, ProbabilityInterval
from .validation import NEGATIVE_SLACK, InvalidGateParametersError, NegativeMassError

logger = logging.getLogger(__name__)

Row = Tuple[Subset, ...]

STATE_INDEX: Dict[Subset, int] = {state: idx for idx, state in enumerate(FOCAL_STATES)}


@dataclass(frozen=True)
class ConditionalMassTable:
    """Child mass function for every tuple of parent states."""

    arity: int
    rows: Dict[Row, MassFunction] = field(default_factory=dict)
    label: str = ""

    def __getitem__(self, key: Row) -> MassFunction:
        return self.rows[tuple(key)]

    def __iter__(self) -> Iterator[Row]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def row(self, *states: Subset) -> MassFunction:
        return self.rows[tuple(states)]

    def items(self):
        return self.rows.items()

    @property
    def is_complete(self) -> bool:
        return len(self.rows) == 3**self.arity

    def check(self) -> None:
        """Validate every row; raises on the first invalid one."""
        for m in self.rows.values():
            validate(m)

    def as_array(self) -> np.ndarray:
        """Factor array with one 3-state axis per parent followed by the child axis."""
        if not self.is_complete:
            raise InvalidGateParametersError(
                f"table {self.label or '?'} has {len(self.rows)} of {3 ** self.arity} rows"
            )
        values = np.zeros((3,) * self.arity + (3,))
        for key, m in self.rows.items():
            values[tuple(STATE_INDEX[s] for s in key)] = m.as_tuple()
        return values


def parent_rows(arity: int, states: Sequence[Subset] = FOCAL_STATES) -> Iterator[Row]:
    return itertools.product(states, repeat=arity)


def set_or(a: Subset, b: Subset) -> Subset:
    """Set-valued Boolean OR: {x or y : x in a, y in b}."""
    if Subset.EMPTY in (a, b):
        raise InvalidGateParametersError("set_or is undefined on the empty set")
    if Subset.T in (a, b):
        return Subset.T
    if a is Subset.F and b is Subset.F:
        return Subset.F
    return Subset.TF


def set_and(a: Subset, b: Subset) -> Subset:
    """Set-valued Boolean AND: {x and y : x in a, y in b}."""
    if Subset.EMPTY in (a, b):
        raise InvalidGateParametersError("set_and is undefined on the empty set")
    if Subset.F in (a, b):
        return Subset.F
    if a is Subset.T and b is Subset.T:
        return Subset.T
    return Subset.TF


class LogicOp(str, Enum):
    AND = "and"
    OR = "or"


_LOGIC = {LogicOp.AND: set_and, LogicOp.OR: set_or}


def logic_table(op: LogicOp, arity: int) -> ConditionalMassTable:
    """Deterministic table: the child takes the set-valued AND/OR of its parents."""
    combine = _LOGIC[op]
    rows: Dict[Row, MassFunction] = {}
    for key in parent_rows(arity):
        result = reduce(combine, key)
        rows[key] = MassFunction(
            float(result is Subset.T), float(result is Subset.F), float(result is Subset.TF)
        )
    return ConditionalMassTable(arity=arity, rows=rows, label=op.value.upper())


def nor_cpt(link_probs: Sequence[float]) -> ConditionalMassTable:
    """Classic Noisy-OR table over {T, F} parent tuples."""
    for p in link_probs:
        if not 0.0 <= p <= 1.0:
            raise InvalidGateParametersError(f"link probability must lie in [0, 1], got {p}")
    rows: Dict[Row, MassFunction] = {}
    for key in parent_rows(len(link_probs), (Subset.T, Subset.F)):
        m_F = 1.0
        for p, state in zip(link_probs, key):
            if state is Subset.T:
                m_F *= 1.0 - p
        rows[key] = MassFunction(1.0 - m_F, m_F, 0.0)
    return ConditionalMassTable(arity=len(link_probs), rows=rows, label="NOR")


def imnor_table(spec: GateSpec) -> ConditionalMassTable:
    """Imprecise Noisy-OR; rows with an ignorant parent ignore its lower link bound."""
    if spec.variant is not GateVariant.IMNOR:
        raise InvalidGateParametersError(f"imnor_table needs the imnor variant, got {spec.variant.value}")
    rows: Dict[Row, MassFunction] = {}
    for key in parent_rows(spec.arity):
        no_true = 1.0
        false_bound = 1.0
        for link, state in zip(spec.links, key):
            if state is Subset.T:
                no_true *= 1.0 - link.lower
                false_bound *= 1.0 - link.upper
            elif state is Subset.TF:
                false_bound *= 1.0 - link.upper
        m_T = 1.0 - no_true
        remainder = 1.0 - m_T - false_bound
        if remainder < -NEGATIVE_SLACK:
            logger.warning("ImNOR row %s has negative ignorance mass %.6f", key, remainder)
            raise NegativeMassError("m_TF", remainder)
        rows[key] = MassFunction(m_T, false_bound, max(remainder, 0.0))
    return ConditionalMassTable(arity=spec.arity, rows=rows, label="ImNOR")


def _resolve_coefficient(variant: GateVariant, coefficient: Optional[float]) -> Optional[float]:
    if variant in FIXED_COEFFICIENTS:
        return FIXED_COEFFICIENTS[variant]
    if variant is GateVariant.OCBNOR:
        if coefficient is None or not 0.0 <= coefficient <= 1.0:
            raise InvalidGateParametersError(f"optimism coefficient must lie in [0, 1], got {coefficient}")
        return coefficient
    return None


def flip_distribution(
    variant: GateVariant,
    link: ProbabilityInterval,
    parent_state: Subset,
    eta: float,
    coefficient: Optional[float] = None,
) -> MassFunction:
    """Mass of the flipped parent X_i' given the parent state X_i."""
    if variant is GateVariant.IMNOR:
        raise InvalidGateParametersError("ImNOR is not built from per-parent flips")
    if parent_state is Subset.EMPTY:
        raise InvalidGateParametersError("parent state must be non-empty")
    if not 0.0 <= eta <= 1.0:
        raise InvalidGateParametersError(f"parent ignorance must lie in [0, 1], got {eta}")
    if parent_state is Subset.T:
        return mass_from_interval(link)
    if parent_state is Subset.F:
        return MassFunction(0.0, 1.0, 0.0)

    lam = _resolve_coefficient(variant, coefficient)
    if lam is None:
        # LC-BNOR, and plain NOR inside a network: ignorance stays ignorance.
        return MassFunction.vacuous()
    alpha = lam * link.lower
    beta = lam * (1.0 - link.upper) + (1.0 - lam - eta)
    gamma = lam * (link.upper - link.lower) + eta
    if beta < -NEGATIVE_SLACK:
        raise InvalidGateParametersError(
            f"{variant.label} with lambda={lam:g}, eta={eta:g}, p_U={link.upper:g} "
            f"gives negative flip mass beta={beta:.6f}"
        )
    return MassFunction(alpha, max(beta, 0.0), gamma)


def combine_disjunctive(masses: Iterable[MassFunction]) -> MassFunction:
    """Mass of the set-valued OR of independent variables."""
    dist = {Subset.T: 0.0, Subset.F: 1.0, Subset.TF: 0.0}
    for m in masses:
        folded = {Subset.T: 0.0, Subset.F: 0.0, Subset.TF: 0.0}
        for a, weight in dist.items():
            if weight == 0.0:
                continue
            for b in FOCAL_STATES:
                folded[set_or(a, b)] += weight * m.mass(b)
        dist = folded
    return MassFunction(dist[Subset.T], dist[Subset.F], dist[Subset.TF])


def bnor_table(spec: GateSpec) -> ConditionalMassTable:
    """Belief Noisy-OR table for LC, PBNOR, OBNOR, TBNOR, OCBNOR (and NOR with point links)."""
    if spec.variant is GateVariant.IMNOR:
        raise InvalidGateParametersError("use imnor_table for the imnor variant")
    if spec.variant is GateVariant.NOR and not all(link.is_degenerate for link in spec.links):
        raise InvalidGateParametersError("the nor variant needs point link probabilities")
    rows: Dict[Row, MassFunction] = {}
    for key in parent_rows(spec.arity):
        flips = [
            flip_distribution(spec.variant, link, state, eta, spec.coefficient)
            for link, state, eta in zip(spec.links, key, spec.parent_ignorance)
        ]
        rows[key] = combine_disjunctive(flips)
    table = ConditionalMassTable(arity=spec.arity, rows=rows, label=spec.variant.label)
    logger.debug("Built %s table with %d rows, eta=%s", table.label, len(rows), spec.parent_ignorance)
    return table


def build_table(spec: GateSpec) -> ConditionalMassTable:
    """Full 3^n table for any variant."""
    if spec.variant is GateVariant.IMNOR:
        return imnor_table(spec)
    return bnor_table(spec)


def sweep_link_lower(
    spec: GateSpec, index: int, lowers: Sequence[float], key: Row
) -> List[MassFunction]:
    """Row ``key`` of the gate table while parent ``index``'s lower link bound varies."""
    results: List[MassFunction] = []
    for lower in lowers:
        links = list(spec.links)
        links[index] = ProbabilityInterval(lower=lower, upper=links[index].upper)
        varied = spec.model_copy(update={"links": links})
        results.append(build_table(varied)[key])
    return results
