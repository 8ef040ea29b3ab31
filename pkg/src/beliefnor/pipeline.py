"""Parameter sweeps over a reliability network with an event log."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional

import numpy as np

from .models import GateVariant, ReliabilityNetwork, ReliabilityReport
from .reliability import edge_intervals, evaluate, with_width
from .validation import ValidationError, check_probability

logger = logging.getLogger(__name__)


class SweepParameter(str, Enum):
    LAMBDA = "lambda"
    INTERVAL_WIDTH = "interval-width"


@dataclass
class SweepEvents:
    """In-memory event log with optional sinks."""

    events: List[Dict] = field(default_factory=list)
    sinks: List[Callable[[Dict], None]] = field(default_factory=list)

    def push(self, name: str, **payload):
        event_payload = {"event": name, **payload}
        self.events.append(event_payload)
        for sink in self.sinks:
            sink(event_payload)


@dataclass(frozen=True)
class SweepPoint:
    param: float
    report: ReliabilityReport


def sweep_values(start: float, stop: float, steps: int) -> List[float]:
    """``steps`` evenly spaced values from start to stop inclusive; one step gives [start]."""
    if steps < 1:
        raise ValidationError(f"steps must be at least 1, got {steps}")
    if steps == 1:
        return [float(start)]
    return [float(v) for v in np.linspace(start, stop, steps)]


def default_sweep_edge(rn: ReliabilityNetwork) -> str:
    """First edge with a non-degenerate interval, else the first edge."""
    for edge_id, interval in edge_intervals(rn).items():
        if not interval.is_degenerate:
            return edge_id
    return rn.edges[0].id


def run_sweep(
    rn: ReliabilityNetwork,
    parameter: SweepParameter,
    start: float,
    stop: float,
    steps: int,
    *,
    variant: Optional[GateVariant] = None,
    coefficient: Optional[float] = None,
    edge: Optional[str] = None,
    workers: int = 1,
    events: Optional[SweepEvents] = None,
) -> List[SweepPoint]:
    """Evaluate the network at every sweep value; results keep the sweep order."""
    parameter = SweepParameter(parameter)
    variant = GateVariant(variant) if variant is not None else None
    events = events or SweepEvents()
    values = sweep_values(start, stop, steps)

    if parameter is SweepParameter.LAMBDA:
        if variant not in (None, GateVariant.OCBNOR):
            raise ValidationError(f"a lambda sweep runs the oc variant, got {variant.value}")
        for value in values:
            check_probability(value, "lambda")
        variant = GateVariant.OCBNOR

        def point(value: float) -> SweepPoint:
            return SweepPoint(value, evaluate(rn, GateVariant.OCBNOR, value))

    else:
        for value in values:
            if value < 0:
                raise ValidationError(f"interval half width must be non-negative, got {value}")
        variant = variant or GateVariant.LC_BNOR
        if variant is GateVariant.OCBNOR and coefficient is None:
            raise ValidationError("the oc variant requires an optimism coefficient (lambda)")
        edge = edge or default_sweep_edge(rn)
        if edge not in {e.id for e in rn.edges}:
            raise ValidationError(f"unknown edge {edge}")

        def point(value: float) -> SweepPoint:
            return SweepPoint(value, evaluate(with_width(rn, edge, value), variant, coefficient))

    events.push(
        "sweep_started",
        parameter=parameter.value,
        variant=variant.value,
        edge=edge,
        steps=len(values),
    )
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(point, values))
    else:
        points = [point(value) for value in values]
    for idx, result in enumerate(points):
        events.push("sweep_point_completed", index=idx, param=result.param, mass=list(result.report.mass))
    events.push("sweep_completed", points=len(points))
    logger.info("Sweep over %s finished with %d points", parameter.value, len(points))
    return points
