"""Domain errors and numeric tolerances shared across beliefnor modules."""
from __future__ import annotations

from typing import Iterable, List, Tuple

MASS_TOLERANCE = 1e-9
# Rounding noise allowed below zero before a derived mass counts as negative.
NEGATIVE_SLACK = 1e-12


class ValidationError(Exception):
    """Raised when a belief model, gate or network violates its invariants."""


class NegativeMassError(ValidationError):
    """A mass function has a component below zero."""

    def __init__(self, component: str, value: float):
        self.component = component
        self.value = value
        super().__init__(f"{component} must be a finite non-negative number, got {value!r}")


class UnnormalizedMassError(ValidationError):
    """Mass components do not sum to one."""

    def __init__(self, total: float):
        self.component = "sum"
        self.value = total
        super().__init__(f"masses must sum to 1 (tolerance {MASS_TOLERANCE}), got {total!r}")


class InconsistentBeliefError(ValidationError):
    """Bel(T) + Bel(F) exceeds one."""


class InvalidGateParametersError(ValidationError):
    """Gate parameters produce an invalid flip distribution."""


class CycleDetectedError(ValidationError):
    """A network that must be acyclic contains a directed cycle."""


class DanglingParentError(ValidationError):
    """A node references a parent that does not exist."""


class ArityMismatchError(ValidationError):
    """Gate arity differs from the number of declared parents."""


class UnreachableSinkError(ValidationError):
    """No directed path connects the source to the sink."""


class TooLargeError(ValidationError):
    """An enumeration oracle was asked for more than its budget."""


def check_probability(value: float, name: str) -> float:
    if not 0.0 <= value <= 1.0:
        raise ValidationError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def collect_row_errors(rows: Iterable[Tuple[Tuple[str, ...], float]]) -> Tuple[bool, List[str]]:
    """Check (row key, total mass) pairs and report every row that fails to normalize."""
    errors: List[str] = []
    for key, total in rows:
        if not abs(total - 1.0) <= MASS_TOLERANCE:
            errors.append(f"Row {','.join(key)}: masses sum to {total:.6f}")
    return (len(errors) == 0), errors
