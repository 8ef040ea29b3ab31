"""Two-terminal network reliability through Bayesian and Belief Noisy-OR models."""
from __future__ import annotations

import logging
import math
from typing import Dict, List, Optional, Sequence

import networkx as nx

from .belief import MassFunction, belief_report, mass_from_interval
from .enet import EvidentialNetwork, Node, build, marginal
from .gates import LogicOp
from .models import (
    FIXED_COEFFICIENTS,
    EdgeSpec,
    GateSpec,
    GateVariant,
    ProbabilityInterval,
    ReliabilityNetwork,
    ReliabilityReport,
)
from .validation import CycleDetectedError, UnreachableSinkError, ValidationError

logger = logging.getLogger(__name__)

# Column order of the side-by-side comparison tables.
COMPARISON_VARIANTS: Sequence[GateVariant] = (
    GateVariant.IMNOR,
    GateVariant.LC_BNOR,
    GateVariant.PBNOR,
    GateVariant.OBNOR,
    GateVariant.TBNOR,
    GateVariant.OCBNOR,
)

CONNECTED = MassFunction(1.0, 0.0, 0.0)
DISCONNECTED = MassFunction(0.0, 1.0, 0.0)


def connectivity_id(node: str) -> str:
    return f"N_{node}"


def edge_node_id(edge_id: str) -> str:
    return f"e_{edge_id}"


def edge_working_probability(rate: float, t: float) -> float:
    """Survival probability exp(-rate * t) of an edge over the mission time."""
    if rate < 0 or t < 0:
        raise ValidationError(f"failure rate and mission time must be non-negative, got {rate}, {t}")
    return math.exp(-rate * t)


def interval_for_edge(edge: EdgeSpec, mission_time: Optional[float]) -> ProbabilityInterval:
    """Explicit interval, then explicit probability, then exp(-rate * t)."""
    if edge.interval is not None:
        return edge.interval
    if edge.prob is not None:
        return ProbabilityInterval.point(edge.prob)
    return ProbabilityInterval.point(edge_working_probability(edge.rate, mission_time or 0.0))


def edge_intervals(rn: ReliabilityNetwork) -> Dict[str, ProbabilityInterval]:
    return {edge.id: interval_for_edge(edge, rn.mission_time) for edge in rn.edges}


def active_edges(rn: ReliabilityNetwork) -> List[EdgeSpec]:
    """Edges that can matter for reachability from the source (none may enter it)."""
    edges = [edge for edge in rn.edges if edge.to_node != rn.source]
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(rn.node_ids)
    graph.add_edges_from((edge.from_node, edge.to_node) for edge in edges)
    if not nx.is_directed_acyclic_graph(graph):
        cycle = [u for u, *_ in nx.find_cycle(graph)]
        raise CycleDetectedError(f"network contains a directed cycle through {' -> '.join(cycle)}")
    if not nx.has_path(graph, rn.source, rn.sink):
        raise UnreachableSinkError(f"no directed path from {rn.source} to {rn.sink}")
    return edges


def build_bn_model(rn: ReliabilityNetwork) -> EvidentialNetwork:
    """Bayesian translation: edges become root nodes, N_i is an OR of (N_j AND e_k)."""
    edges = active_edges(rn)
    intervals = edge_intervals(rn)
    nodes: List[Node] = []
    for edge in edges:
        nodes.append(Node(id=edge_node_id(edge.id), prior=mass_from_interval(intervals[edge.id])))
        nodes.append(
            Node(
                id=f"and_{edge.id}",
                parents=(connectivity_id(edge.from_node), edge_node_id(edge.id)),
                logic=LogicOp.AND,
            )
        )
    for name in rn.node_ids:
        incoming = [edge for edge in edges if edge.to_node == name]
        if name == rn.source:
            nodes.append(Node(id=connectivity_id(name), prior=CONNECTED))
        elif not incoming:
            nodes.append(Node(id=connectivity_id(name), prior=DISCONNECTED))
        else:
            gate = GateSpec(
                variant=GateVariant.NOR,
                links=[ProbabilityInterval.point(1.0)] * len(incoming),
            )
            nodes.append(
                Node(
                    id=connectivity_id(name),
                    gate=gate,
                    parents=tuple(f"and_{edge.id}" for edge in incoming),
                )
            )
    return build(nodes)


def build_bnor_model(
    rn: ReliabilityNetwork, variant: GateVariant, coefficient: Optional[float] = None
) -> EvidentialNetwork:
    """Belief Noisy-OR translation: edge intervals become the link intervals of N_i's gate."""
    edges = active_edges(rn)
    intervals = edge_intervals(rn)
    nodes: List[Node] = []
    for name in rn.node_ids:
        incoming = [edge for edge in edges if edge.to_node == name]
        if name == rn.source:
            nodes.append(Node(id=connectivity_id(name), prior=CONNECTED))
            continue
        if not incoming:
            nodes.append(Node(id=connectivity_id(name), prior=DISCONNECTED))
            continue
        senders = [edge.from_node for edge in incoming]
        if len(set(senders)) != len(senders):
            raise ValidationError(
                f"node {name} has parallel incoming edges; the BNOR model needs one edge per node pair"
            )
        gate = GateSpec(
            variant=variant,
            links=[intervals[edge.id] for edge in incoming],
            optimism=coefficient,
        )
        nodes.append(
            Node(
                id=connectivity_id(name),
                gate=gate,
                parents=tuple(connectivity_id(sender) for sender in senders),
            )
        )
    return build(nodes)


def _report(net: EvidentialNetwork, rn: ReliabilityNetwork, variant, coefficient) -> ReliabilityReport:
    summary = belief_report(marginal(net, connectivity_id(rn.sink)))
    result = ReliabilityReport(
        mass=summary.mass,
        bel_working=summary.bel_T,
        pl_working=summary.pl_T,
        betp_working=summary.betp_T,
        variant=variant,
        coefficient=coefficient,
    )
    logger.info("%s: m(S)=%s BetP(S=T)=%.6f", result.label, result.mass, result.betp_working)
    return result


def evaluate(
    rn: ReliabilityNetwork, variant: GateVariant, coefficient: Optional[float] = None
) -> ReliabilityReport:
    """Mass, Bel/Pl and BetP of the system state S under a gate variant."""
    if variant is GateVariant.OCBNOR and coefficient is None:
        raise ValidationError("the oc variant requires an optimism coefficient (lambda)")
    net = build_bnor_model(rn, variant, coefficient)
    resolved = FIXED_COEFFICIENTS.get(variant, coefficient if variant is GateVariant.OCBNOR else None)
    return _report(net, rn, variant, resolved)


def evaluate_bn(rn: ReliabilityNetwork) -> ReliabilityReport:
    """Same report from the Bayesian-network translation."""
    return _report(build_bn_model(rn), rn, GateVariant.NOR, None)


def compare(
    rn: ReliabilityNetwork,
    coefficient: float = 0.6,
    variants: Sequence[GateVariant] = COMPARISON_VARIANTS,
) -> List[ReliabilityReport]:
    return [evaluate(rn, variant, coefficient if variant is GateVariant.OCBNOR else None) for variant in variants]


def with_width(rn: ReliabilityNetwork, edge_id: str, half_width: float) -> ReliabilityNetwork:
    """Copy of ``rn`` with one edge's interval set to midpoint +/- half_width (clipped to [0, 1])."""
    if half_width < 0:
        raise ValidationError(f"half width must be non-negative, got {half_width}")
    edges = []
    found = False
    for edge in rn.edges:
        if edge.id == edge_id:
            found = True
            mid = interval_for_edge(edge, rn.mission_time).midpoint
            widened = ProbabilityInterval(lower=max(0.0, mid - half_width), upper=min(1.0, mid + half_width))
            edge = edge.model_copy(update={"interval": widened, "prob": None, "rate": None})
        edges.append(edge)
    if not found:
        raise ValidationError(f"unknown edge {edge_id}")
    return rn.model_copy(update={"edges": edges})
