"""Brute-force reference computations used to certify inference and reliability results."""
from __future__ import annotations

import itertools
import logging
from typing import Dict, Mapping, Optional

import networkx as nx

from .belief import FOCAL_STATES, MassFunction, Subset
from .enet import EvidentialNetwork
from .models import ReliabilityNetwork
from .validation import TooLargeError, ValidationError

logger = logging.getLogger(__name__)

NODE_BUDGET = 15
EDGE_BUDGET = 20


def joint_enumeration_marginal(
    net: EvidentialNetwork, target: str, max_nodes: int = NODE_BUDGET
) -> MassFunction:
    """Marginal of ``target`` by summing the joint product over every 3-state assignment."""
    if target not in net.nodes:
        raise ValidationError(f"unknown node {target}")
    if len(net.order) > max_nodes:
        raise TooLargeError(f"joint enumeration is limited to {max_nodes} nodes, network has {len(net.order)}")

    totals: Dict[Subset, float] = dict.fromkeys(FOCAL_STATES, 0.0)
    assignment: Dict[str, Subset] = {}
    order = net.order

    def visit(depth: int, weight: float) -> None:
        if depth == len(order):
            totals[assignment[target]] += weight
            return
        node_id = order[depth]
        node = net.nodes[node_id]
        if node.is_root:
            dist = node.prior
        else:
            dist = net.tables[node_id][tuple(assignment[parent] for parent in node.parents)]
        for state in FOCAL_STATES:
            mass = dist.mass(state)
            # zero-mass branches contribute nothing to any term of the sum
            if mass == 0.0:
                continue
            assignment[node_id] = state
            visit(depth + 1, weight * mass)
        assignment.pop(node_id, None)

    visit(0, 1.0)
    return MassFunction(totals[Subset.T], totals[Subset.F], totals[Subset.TF])


def point_probabilities(rn: ReliabilityNetwork) -> Dict[str, float]:
    """Working probability of each edge; intervals must be degenerate."""
    from .reliability import edge_intervals

    probs: Dict[str, float] = {}
    for edge_id, interval in edge_intervals(rn).items():
        if not interval.is_degenerate:
            raise ValidationError(
                f"edge {edge_id} has interval {interval}; world enumeration needs point probabilities"
            )
        probs[edge_id] = interval.lower
    return probs


def world_enumeration_reliability(
    rn: ReliabilityNetwork,
    edge_probs: Optional[Mapping[str, float]] = None,
    max_edges: int = EDGE_BUDGET,
) -> float:
    """Probability that the sink is reachable from the source over all 2^|E| edge states."""
    if len(rn.edges) > max_edges:
        raise TooLargeError(f"world enumeration is limited to {max_edges} edges, network has {len(rn.edges)}")
    probs = dict(edge_probs) if edge_probs is not None else point_probabilities(rn)
    edges = list(rn.edges)
    total = 0.0
    for states in itertools.product((True, False), repeat=len(edges)):
        weight = 1.0
        for edge, working in zip(edges, states):
            p = probs[edge.id]
            weight *= p if working else 1.0 - p
        if weight == 0.0:
            continue
        graph = nx.DiGraph()
        graph.add_nodes_from((rn.source, rn.sink))
        graph.add_edges_from((e.from_node, e.to_node) for e, working in zip(edges, states) if working)
        if nx.has_path(graph, rn.source, rn.sink):
            total += weight
    logger.debug("World enumeration over %d edges: %.12f", len(edges), total)
    return total
